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

""" Prompt templates stored under resources/prompts, one per role. """

import os

from modules.agents.types import AgentRole

PROMPT_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__)))), 'resources', 'prompts')


def load_template(name: str, folder: str = PROMPT_DIR) -> str:
    """ Reads a template; lines starting with ``# version`` are dropped. """
    if isinstance(name, AgentRole):
        name = name.value
    with open(os.path.join(folder, name + '.txt'), 'r', encoding='utf-8') as template:
        lines = template.read().splitlines()
    return '\n'.join(line for line in lines if not line.startswith('# version')).strip() + '\n'


def fill(template: str, **values) -> str:
    """ Replaces ``{NAME}`` placeholders; other braces (JSON examples) stay as they are. """
    for key, value in values.items():
        template = template.replace('{' + key + '}', '' if value is None else str(value))
    return template


def render_prompt(role: AgentRole, folder: str = PROMPT_DIR, **values) -> str:
    values.setdefault('DSL_GUIDE', load_template('dsl', folder).strip())
    return fill(load_template(role, folder), **values)
