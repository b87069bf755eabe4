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

""" Reads program text (the line-oriented geometry DSL) into a Program.

Statements (one per line, whitespace separated, ``#`` starts a comment)::

    canvas W H
    defaults (width REAL | color INT INT INT | dash solid|dashed)+
    style    (width REAL | color INT INT INT | dash solid|dashed)+
    point NAME X Y
    segment ID P P
    circle ID P RADIUS
    arc ID P RADIUS START_DEG END_DEG
    polyline ID P P [P ...]
    label ID "TEXT" P [(DX,DY)]
    rightangle ID P ARM1_DEG ARM2_DEG SIZE
    tick ID P DIRECTION_DEG

A point operand ``P`` is ``(x,y)``, a declared name ``A`` or ``A:(x,y)``, which
declares ``A`` on first use. Names are resolved into coordinates while parsing.
"""

from dataclasses import replace
from typing import Dict, List, Tuple
import re

from modules.program.exceptions import ProgramSyntaxError, DuplicateId, DanglingReference
from modules.program.primitives import Point2D, Style, DashStyle, DEFAULT_STYLE, Primitive, \
    Program, PointMark, Segment, Circle, Arc, Polyline, Label, RightAngleMark, TickMark, \
    normalize_angle

_NUMBER = r'[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?'
_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TOKEN_RE = re.compile(r'"(?:[^"\\]|\\.)*"|[^\s"]+')
_NUMBER_RE = re.compile(r'^{}$'.format(_NUMBER))
_INT_RE = re.compile(r'^[-+]?\d+$')
_NAME_RE = re.compile(r'^{}$'.format(_NAME))
_POINT_RE = re.compile(r'^(?:({}):)?\(({}),({})\)$'.format(_NAME, _NUMBER, _NUMBER))
_PAIR_RE = re.compile(r'^\(({}),({})\)$'.format(_NUMBER, _NUMBER))
_QUOTE_RE = re.compile(r'(?<!\\)(?:\\\\)*"')
_UNESCAPES = {'n': '\n', 'r': '\r'}


class _Token:
    def __init__(self, text: str, column: int):
        self.text = text
        self.column = column


def _strip_comment(line: str) -> str:
    in_string = False
    escaped = False
    for idx, char in enumerate(line):
        if escaped:
            escaped = False
        elif char == '\\' and in_string:
            escaped = True
        elif char == '"':
            in_string = not in_string
        elif char == '#' and not in_string:
            return line[:idx]
    return line


def _tokenize(line: str, line_no: int) -> List[_Token]:
    content = _strip_comment(line)
    quotes = [match.end() - 1 for match in _QUOTE_RE.finditer(content)]
    if len(quotes) % 2:
        raise ProgramSyntaxError(line_no, quotes[-1] + 1, 'unterminated string')
    return [_Token(match.group(0), match.start() + 1) for match in _TOKEN_RE.finditer(content)]


class _ProgramReader:
    """ Consumes the statements of one program text. """

    def __init__(self):
        self.width = None
        self.height = None
        self.defaults = DEFAULT_STYLE
        self.style = DEFAULT_STYLE
        self.primitives: List[Primitive] = []
        self.ids = set()
        self.names: Dict[str, Point2D] = {}
        self.line_no = 0
        self.handlers = {
            'canvas': self._read_canvas,
            'defaults': self._read_defaults,
            'style': self._read_style,
            'point': self._read_point,
            'segment': self._read_segment,
            'circle': self._read_circle,
            'arc': self._read_arc,
            'polyline': self._read_polyline,
            'label': self._read_label,
            'rightangle': self._read_rightangle,
            'tick': self._read_tick,
        }

    def read(self, text: str) -> Program:
        for line_no, line in enumerate(text.splitlines(), start=1):
            self.line_no = line_no
            tokens = _tokenize(line, line_no)
            if not tokens:
                continue
            keyword = tokens[0]
            if keyword.text not in self.handlers:
                raise ProgramSyntaxError(line_no, keyword.column,
                                         'unknown statement "{}"'.format(keyword.text))
            if self.width is None and keyword.text != 'canvas':
                raise ProgramSyntaxError(line_no, keyword.column,
                                         'expected "canvas" as first statement')
            self.handlers[keyword.text](tokens)
        if self.width is None:
            raise ProgramSyntaxError(max(self.line_no, 1), 1, 'missing canvas statement')
        return Program(self.width, self.height, tuple(self.primitives), self.defaults)

    # ------------------------------------------------------------------ helpers

    def _error(self, token: _Token, message: str):
        return ProgramSyntaxError(self.line_no, token.column, message)

    def _expect_count(self, tokens: List[_Token], minimum: int, maximum: int = None):
        maximum = minimum if maximum is None else maximum
        if len(tokens) < minimum:
            last = tokens[-1]
            raise ProgramSyntaxError(self.line_no, last.column + len(last.text),
                                     'missing operand for "{}"'.format(tokens[0].text))
        if maximum >= 0 and len(tokens) > maximum:
            raise self._error(tokens[maximum], 'unexpected token "{}"'.format(
                tokens[maximum].text))

    def _number(self, token: _Token) -> float:
        if not _NUMBER_RE.match(token.text):
            raise self._error(token, 'expected a number, got "{}"'.format(token.text))
        return float(token.text)

    def _integer(self, token: _Token) -> int:
        if not _INT_RE.match(token.text):
            raise self._error(token, 'expected an integer, got "{}"'.format(token.text))
        return int(token.text)

    def _new_id(self, token: _Token) -> str:
        if not _NAME_RE.match(token.text):
            raise self._error(token, 'invalid id "{}"'.format(token.text))
        if token.text in self.ids:
            raise DuplicateId(token.text, self.line_no)
        return token.text

    def _bind_name(self, token: _Token, name: str, pos: Point2D):
        known = self.names.get(name)
        if known is not None and (abs(known.x - pos.x) > 1e-9 or abs(known.y - pos.y) > 1e-9):
            raise self._error(token, 'conflicting coordinates for "{}"'.format(name))
        self.names[name] = pos

    def _point(self, token: _Token) -> Point2D:
        match = _POINT_RE.match(token.text)
        if match:
            pos = Point2D(float(match.group(2)), float(match.group(3)))
            if match.group(1):
                self._bind_name(token, match.group(1), pos)
            return pos
        if _NAME_RE.match(token.text):
            if token.text not in self.names:
                raise DanglingReference(token.text, self.line_no)
            return self.names[token.text]
        raise self._error(token, 'expected a point, got "{}"'.format(token.text))

    def _pair(self, token: _Token) -> Point2D:
        match = _PAIR_RE.match(token.text)
        if not match:
            raise self._error(token, 'expected "(dx,dy)", got "{}"'.format(token.text))
        return Point2D(float(match.group(1)), float(match.group(2)))

    def _add(self, prim_id: str, shape):
        self.ids.add(prim_id)
        self.primitives.append(Primitive(prim_id, shape, self.style))

    def _style_attributes(self, tokens: List[_Token], base: Style) -> Style:
        if len(tokens) < 2:
            self._expect_count(tokens, 2)
        style = base
        idx = 1
        while idx < len(tokens):
            attribute = tokens[idx]
            if attribute.text == 'width' and idx + 1 < len(tokens):
                style = replace(style, stroke_width=self._number(tokens[idx + 1]))
                idx += 2
            elif attribute.text == 'color' and idx + 3 < len(tokens):
                style = replace(style, color=tuple(self._integer(tok)
                                                   for tok in tokens[idx + 1:idx + 4]))
                idx += 4
            elif attribute.text == 'dash' and idx + 1 < len(tokens):
                value = tokens[idx + 1]
                if value.text not in ('solid', 'dashed'):
                    raise self._error(value, 'dash must be "solid" or "dashed"')
                style = replace(style, dash=DashStyle(value.text))
                idx += 2
            else:
                raise self._error(attribute, 'invalid style attribute "{}"'.format(attribute.text))
        return style

    # --------------------------------------------------------------- statements

    def _read_canvas(self, tokens):
        if self.width is not None:
            raise self._error(tokens[0], 'canvas declared twice')
        self._expect_count(tokens, 3)
        self.width = self._integer(tokens[1])
        self.height = self._integer(tokens[2])
        if self.width < 1 or self.height < 1:
            raise self._error(tokens[1], 'canvas dimensions must be positive')

    def _read_defaults(self, tokens):
        if self.primitives:
            raise self._error(tokens[0], '"defaults" must precede all primitives')
        self.defaults = self._style_attributes(tokens, self.defaults)
        self.style = self.defaults

    def _read_style(self, tokens):
        self.style = self._style_attributes(tokens, self.style)

    def _read_point(self, tokens):
        self._expect_count(tokens, 4)
        prim_id = self._new_id(tokens[1])
        pos = Point2D(self._number(tokens[2]), self._number(tokens[3]))
        self._bind_name(tokens[1], prim_id, pos)
        self._add(prim_id, PointMark(pos))

    def _read_segment(self, tokens):
        self._expect_count(tokens, 4)
        prim_id = self._new_id(tokens[1])
        self._add(prim_id, Segment(self._point(tokens[2]), self._point(tokens[3])))

    def _read_circle(self, tokens):
        self._expect_count(tokens, 4)
        prim_id = self._new_id(tokens[1])
        self._add(prim_id, Circle(self._point(tokens[2]), self._number(tokens[3])))

    def _read_arc(self, tokens):
        self._expect_count(tokens, 6)
        prim_id = self._new_id(tokens[1])
        self._add(prim_id, Arc(self._point(tokens[2]), self._number(tokens[3]),
                               normalize_angle(self._number(tokens[4])),
                               normalize_angle(self._number(tokens[5]))))

    def _read_polyline(self, tokens):
        self._expect_count(tokens, 4, -1)
        prim_id = self._new_id(tokens[1])
        self._add(prim_id, Polyline(tuple(self._point(tok) for tok in tokens[2:])))

    def _read_label(self, tokens):
        self._expect_count(tokens, 4, 5)
        prim_id = self._new_id(tokens[1])
        text_token = tokens[2]
        if len(text_token.text) < 2 or not text_token.text.startswith('"') \
                or not text_token.text.endswith('"'):
            raise self._error(text_token, 'label text must be quoted')
        text = re.sub(r'\\(.)', lambda m: _UNESCAPES.get(m.group(1), m.group(1)),
                      text_token.text[1:-1])
        offset = self._pair(tokens[4]) if len(tokens) == 5 else Point2D(0.0, 0.0)
        self._add(prim_id, Label(text, self._point(tokens[3]), offset))

    def _read_rightangle(self, tokens):
        self._expect_count(tokens, 6)
        prim_id = self._new_id(tokens[1])
        self._add(prim_id, RightAngleMark(self._point(tokens[2]),
                                          normalize_angle(self._number(tokens[3])),
                                          normalize_angle(self._number(tokens[4])),
                                          self._number(tokens[5])))

    def _read_tick(self, tokens):
        self._expect_count(tokens, 4)
        prim_id = self._new_id(tokens[1])
        self._add(prim_id, TickMark(self._point(tokens[2]),
                                    normalize_angle(self._number(tokens[3]))))


def parse_program(text: str) -> Program:
    """ Parses program text into a Program.

    Args:
        text (str): program source in the geometry DSL

    Returns:
        Program: the parsed program with all point names resolved

    Raises:
        ProgramSyntaxError: the text violates the grammar
        DuplicateId: an id is declared twice
        DanglingReference: a point name is used before it is declared
    """
    return _ProgramReader().read(text)
