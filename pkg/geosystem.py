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

from utils.logger import GeoLogger


class ReconstructionSystem(object):
    """This is the main reconstruction system, holding all modules and taking
    care of the data flow.

    Public methods:
    run_reconstruction -- runs the modules until one of them asks to stop

    Instance variables:
    modules -- a list of modules which will be called in the given order
    sequentially
    num_reconstructions -- number of finished reconstructions
    num_iterations -- iteration counter t of the running reconstruction
    """

    def __init__(self, *modules, logger: GeoLogger = GeoLogger()):
        self.logger = logger
        self.modules = modules

        self.num_reconstructions = 0
        self.num_iterations = 0

    def _start_reconstruction(self, kwargs: dict = None):
        kwargs = kwargs or {}
        self.logger.iteration("# RECONSTRUCTION {} STARTED #".format(self.num_reconstructions))
        for module in self.modules:
            kwargs = {**kwargs, **module.start_reconstruction(**kwargs)}
        return kwargs

    def _end_reconstruction(self, kwargs: dict):
        for module in self.modules:
            module.end_reconstruction(**kwargs)

    def run_reconstruction(self, max_iterations: int = -1, **kwargs) -> dict:
        """ Perform one complete reconstruction.

        Args:
            max_iterations (int): stop after the specified amount of iterations if > 0
            **kwargs: initial entries (observation, text, skeleton, program, ...)

        Returns:
            dict: the kwargs after the last iteration
        """
        kwargs = self._start_reconstruction(kwargs)

        self.num_iterations = 0
        while True:
            if self.num_iterations == max_iterations:
                self.logger.iteration("Maximum number of iterations reached, stopping.")
                break

            kwargs, stop = self._forward_iteration(kwargs)
            if stop:
                break

        self._end_reconstruction(kwargs)

        self.logger.iteration("# RECONSTRUCTION {} FINISHED #".format(self.num_reconstructions))
        self.num_reconstructions += 1
        return kwargs

    def _forward_iteration(self, kwargs):
        """ Forward one iteration of the loop. """
        self.logger.iteration("# ITERATION " + str(self.num_iterations) + " #")

        # call each module in the list
        for module in self.modules:
            kwargs = {**kwargs, **module.forward(self, **kwargs)}

        stop = bool(kwargs.get('stop', False))
        if not stop:
            self.num_iterations += 1

        return kwargs, stop
