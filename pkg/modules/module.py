###############################################################################
#
# Copyright 2019, University of Stuttgart: Institute for Natural Language Processing (IMS)
#
# This file is part of GeoForge.
# GeoForge is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3.
#
# GeoForge is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with GeoForge.  If not, see <https://www.gnu.org/licenses/>.
#
###############################################################################

""" This module provides the base class for modules as used in the reconstruction system. """

from utils.logger import GeoLogger


class Module(object):
    """
    Main base interface for all pipeline stages (skeleton building,
    synthesis, execution, inspection, correction), being the key for the
    toolkit flexibility: any stage can be swapped for another implementation
    (deterministic or agent backed) as long as it honours the kwargs contract.
    """
    def __init__(self, logger: GeoLogger = GeoLogger()):
        self.logger = logger

    def forward(self, system, **kwargs) -> dict:
        """
        The main functionality of the module should be implemented here.
        Through this method the module interacts with other ones.
        Therefore, the kwargs play a fundamental role by carrying
        the information exchanged.

        Args:
            system (ReconstructionSystem): The system this module is part of.
                                           Useful to access other modules and
                                           the iteration counter.
            **kwargs (dict): Dictionary of information passing across modules,
                             keys and values are defined according to the modules'
                             definition and interaction

        Returns:
            dict: entries to add to (or overwrite in) the kwargs
        """
        raise NotImplementedError

    def start_reconstruction(self, **kwargs): # pylint: disable=unused-argument
        """
        Procedure to be executed right after a reconstruction started.

        Args:
            **kwargs (dict): Dictionary of information passing across modules

        Returns:
            dict: entries to add to the kwargs
        """
        return {}

    def end_reconstruction(self, **kwargs): # pylint: disable=unused-argument
        """
        Procedure to be executed once the loop has stopped.

        Args:
            **kwargs (dict): the final kwargs of the reconstruction
        """
