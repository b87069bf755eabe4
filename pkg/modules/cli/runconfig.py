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

""" Layered run configuration: command-line flags over a config file over the
environment over the built-in defaults. """

from dataclasses import dataclass, field, fields
from enum import Enum
from typing import Dict, Mapping
import os

from modules.agents import AgentConfig
from modules.anchoring import AnchorConfig
from modules.dataset import DatasetConfig
from modules.evolution import LoopConfig
from modules.metrics import ObjectiveConfig
from modules.skeleton import SkeletonConfig
from modules.vep import InspectionConfig
from utils.exceptions import UsageError

SECTIONS = {
    'anchor': AnchorConfig,
    'skeleton': SkeletonConfig,
    'inspection': InspectionConfig,
    'objective': ObjectiveConfig,
    'loop': LoopConfig,
    'agent': AgentConfig,
    'dataset': DatasetConfig,
}

# fields filled from other sections
NESTED = {'objective', 'inspection', 'loop', 'skeleton', 'anchoring'}

TRUE_WORDS = ('1', 'true', 'yes', 'on')
FALSE_WORDS = ('0', 'false', 'no', 'off')


class ConfigError(UsageError):
    def __init__(self, key: str, reason: str):
        UsageError.__init__(self, '{}: {}'.format(key, reason), module='cli')
        self.key = key


def section_keys(section: str) -> Dict[str, object]:
    """ Maps every configurable key of a section to its default value. """
    cls = SECTIONS[section]
    defaults = cls()
    return {f.name: getattr(defaults, f.name) for f in fields(cls)
            if not (section in ('loop', 'dataset') and f.name in NESTED)}


def coerce(key: str, default, text: str):
    """ Converts a config file value to the type of the key's default. """
    text = text.strip()
    try:
        if isinstance(default, bool):
            if text.lower() in TRUE_WORDS:
                return True
            if text.lower() in FALSE_WORDS:
                return False
            raise ValueError(text)
        if isinstance(default, Enum):
            return type(default)(text)
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
        if isinstance(default, tuple):
            return tuple(float(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise ConfigError(key, 'invalid value "{}"'.format(text))
    return text


def read_config_file(path: str) -> Dict[str, Dict[str, object]]:
    """ Parses ``section.key = value`` lines; ``#`` starts a comment.

    Raises:
        ConfigError: unreadable file, malformed line or unknown key
    """
    try:
        with open(path, 'r', encoding='utf-8') as source:
            lines = source.read().splitlines()
    except OSError as err:
        raise ConfigError(path, err.strerror or str(err))
    values = {section: {} for section in SECTIONS}
    for line_no, line in enumerate(lines, start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError('{}:{}'.format(path, line_no), 'expected "section.key = value"')
        key, value = (part.strip() for part in line.split('=', 1))
        section, _, name = key.partition('.')
        if section not in SECTIONS or name not in section_keys(section):
            raise ConfigError(key, 'unknown configuration key')
        values[section][name] = coerce(key, section_keys(section)[name], value)
    return values


@dataclass(frozen=True)
class RunConfig:
    """ Every tunable of a run, one config object per module. """
    anchor: AnchorConfig = field(default_factory=AnchorConfig)
    skeleton: SkeletonConfig = field(default_factory=SkeletonConfig)
    inspection: InspectionConfig = field(default_factory=InspectionConfig)
    objective: ObjectiveConfig = field(default_factory=ObjectiveConfig)
    loop: LoopConfig = field(default_factory=LoopConfig)
    agent: AgentConfig = field(default_factory=AgentConfig)
    dataset: DatasetConfig = field(default_factory=DatasetConfig)

    @classmethod
    def load(cls, config_path: str = None, environ: Mapping[str, str] = None,
             overrides: Dict[str, Dict[str, object]] = None) -> 'RunConfig':
        """ Builds the configuration.

        Args:
            config_path (str): optional config file
            environ (Mapping[str, str]): environment, ``os.environ`` if omitted
            overrides (Dict[str, Dict[str, object]]): typed values from command
                line flags per section; ``None`` values are ignored
        """
        values = read_config_file(config_path) if config_path else \
            {section: {} for section in SECTIONS}
        for section, entries in (overrides or {}).items():
            for name, value in entries.items():
                if name not in section_keys(section):
                    raise ConfigError('{}.{}'.format(section, name), 'unknown configuration key')
                if value is not None:
                    values[section][name] = value
        environ = os.environ if environ is None else environ
        try:
            anchor = AnchorConfig(**values['anchor'])
            skeleton = SkeletonConfig(**values['skeleton'])
            inspection = InspectionConfig(**values['inspection'])
            objective = ObjectiveConfig(**values['objective'])
            loop = LoopConfig(objective=objective, inspection=inspection, **values['loop'])
            agent = AgentConfig.from_env(environ, **values['agent'])
            dataset = DatasetConfig(loop=loop, skeleton=skeleton, anchoring=anchor,
                                    **values['dataset'])
        except ValueError as err:
            raise ConfigError(config_path or 'flags', str(err))
        return cls(anchor, skeleton, inspection, objective, loop, agent, dataset)
