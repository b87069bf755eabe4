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

""" The remote agent roles: anchor verification, relation extraction, program
generation, program refinement and the visual judge. """

from typing import List
import io
import json

from modules.agents.gateway import AgentGateway
from modules.agents.parsing import AnchorReview, JudgeScores, parse_agent_program, \
    parse_anchor_review, parse_judge, parse_relations
from modules.agents.prompts import PROMPT_DIR, render_prompt
from modules.agents.types import AgentRequest, AgentRole
from modules.anchoring import Anchor, anchors_to_json
from modules.program import Program, serialize_program
from modules.renderer import Raster, render_overlay
from modules.skeleton import GeoSkeleton, Relation
from modules.vep import DiffReport


def png_bytes(raster: Raster) -> bytes:
    buffer = io.BytesIO()
    raster.to_image().save(buffer, format='PNG')
    return buffer.getvalue()


class AgentRoles(object):
    """ Binds every role to one gateway. Instances are what the skeleton
    builder, the synthesizer and the refiner accept as ``agent``. """

    def __init__(self, gateway: AgentGateway, prompt_dir: str = PROMPT_DIR):
        self.gateway = gateway
        self.prompt_dir = prompt_dir

    def ask(self, role: AgentRole, images=(), **values) -> str:
        prompt = render_prompt(role, self.prompt_dir, **values)
        request = AgentRequest(role, prompt, tuple(images),
                               max_tokens=self.gateway.cfg.max_tokens)
        return self.gateway.complete(request).text

    def review_anchors(self, anchors: List[Anchor], image: Raster) -> AnchorReview:
        reply = self.ask(AgentRole.Verify,
                         [png_bytes(image), png_bytes(render_overlay(image, anchors))],
                         ANCHORS_JSON=json.dumps(anchors_to_json(anchors), sort_keys=True))
        return parse_anchor_review(reply)

    def extract_relations(self, skeleton: GeoSkeleton, text: str) -> List[Relation]:
        reply = self.ask(AgentRole.Extract, SKELETON_JSON=skeleton.to_json(indent=1),
                         TEXT=text)
        return parse_relations(reply)

    def generate_program(self, skeleton: GeoSkeleton, text: str = None,
                         observation: Raster = None) -> Program:
        images = [png_bytes(observation)] if observation is not None else []
        width = observation.width if observation is not None else 1000
        height = observation.height if observation is not None else 1000
        reply = self.ask(AgentRole.Generate, images, SKELETON_JSON=skeleton.to_json(indent=1),
                         TEXT=text or '', WIDTH=width, HEIGHT=height)
        return parse_agent_program(reply)

    def refine_program(self, program: Program, report: DiffReport,
                       observation: Raster) -> Program:
        images = [png_bytes(observation)]
        if report.diff_image is not None:
            images.append(png_bytes(report.diff_image))
        reply = self.ask(AgentRole.Refine, images, DSL=serialize_program(program).rstrip(),
                          DIFF_JSON=report.to_json(indent=1))
        return parse_agent_program(reply)


def judge(gateway: AgentGateway, observation: Raster, reconstruction: Raster,
          prompt_dir: str = PROMPT_DIR) -> JudgeScores:
    """ Visual grading of a reconstruction; informative only. """
    reply = AgentRoles(gateway, prompt_dir).ask(AgentRole.Judge, [png_bytes(observation),
                                                                  png_bytes(reconstruction)])
    return parse_judge(reply)
