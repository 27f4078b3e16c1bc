"""
SVG drawings of band words.

Circle mode places strands 1..n counter-clockwise on a circle and draws each
letter a(t,s) as a chord labeled with its position in the word (dashed for
inverse letters).  Fence mode draws the strands as horizontal lines with one
vertical band per letter, read left to right.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .braid import BraidWord

# styling
CIRCLE_RADIUS = 120.0
CIRCLE_MARGIN = 40.0
DOT_RADIUS = 4.0
STROKE = 1.5
DASH = "6,4"
FENCE_STRAND_GAP = 40.0
FENCE_BAND_GAP = 30.0
FENCE_MARGIN = 30.0
FONT_SIZE = 11


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _document(width: float, height: float, body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def circle_svg(word: BraidWord) -> str:
    n = word.strands
    c = CIRCLE_RADIUS + CIRCLE_MARGIN
    pts = {}
    for i in range(1, n + 1):
        # strand 1 at the bottom, increasing counter-clockwise
        angle = -math.pi / 2 + 2 * math.pi * (i - 1) / n
        pts[i] = (c + CIRCLE_RADIUS * math.cos(angle), c - CIRCLE_RADIUS * math.sin(angle))
    body = [
        f'<circle class="boundary" cx="{_fmt(c)}" cy="{_fmt(c)}" r="{_fmt(CIRCLE_RADIUS)}" '
        f'fill="none" stroke="#bbbbbb" stroke-width="{_fmt(STROKE)}"/>'
    ]
    for pos, x in enumerate(word.letters, 1):
        (x1, y1), (x2, y2) = pts[x.upper], pts[x.lower]
        kind = "solid" if x.sign == 1 else "dashed"
        dash = "" if x.sign == 1 else f' stroke-dasharray="{DASH}"'
        body.append(
            f'<line class="chord {kind}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="black" '
            f'stroke-width="{_fmt(STROKE)}"{dash}/>'
        )
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        body.append(
            f'<text class="position" x="{_fmt(mx)}" y="{_fmt(my - 3)}" '
            f'font-size="{FONT_SIZE}" text-anchor="middle">{pos}</text>'
        )
    for i in range(1, n + 1):
        x, y = pts[i]
        body.append(f'<circle class="dot" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(DOT_RADIUS)}"/>')
        lx = c + (CIRCLE_RADIUS + 16) * (x - c) / CIRCLE_RADIUS
        ly = c + (CIRCLE_RADIUS + 16) * (y - c) / CIRCLE_RADIUS
        body.append(
            f'<text class="strand" x="{_fmt(lx)}" y="{_fmt(ly + 4)}" '
            f'font-size="{FONT_SIZE}" text-anchor="middle">{i}</text>'
        )
    return _document(2 * c, 2 * c, body)


def fence_svg(word: BraidWord) -> str:
    n = word.strands
    width = 2 * FENCE_MARGIN + FENCE_BAND_GAP * (len(word) + 1)
    height = 2 * FENCE_MARGIN + FENCE_STRAND_GAP * (n - 1)

    def y_of(i: int) -> float:
        # strand 1 at the bottom
        return FENCE_MARGIN + FENCE_STRAND_GAP * (n - i)

    body = []
    for i in range(1, n + 1):
        y = y_of(i)
        body.append(
            f'<line class="strand" x1="{_fmt(FENCE_MARGIN)}" y1="{_fmt(y)}" '
            f'x2="{_fmt(width - FENCE_MARGIN)}" y2="{_fmt(y)}" stroke="black" '
            f'stroke-width="{_fmt(STROKE)}"/>'
        )
    for pos, x in enumerate(word.letters, 1):
        bx = FENCE_MARGIN + FENCE_BAND_GAP * pos
        dash = "" if x.sign == 1 else f' stroke-dasharray="{DASH}"'
        kind = "positive" if x.sign == 1 else "negative"
        body.append(
            f'<line class="band {kind}" x1="{_fmt(bx)}" y1="{_fmt(y_of(x.upper))}" '
            f'x2="{_fmt(bx)}" y2="{_fmt(y_of(x.lower))}" stroke="black" '
            f'stroke-width="{_fmt(2 * STROKE)}"{dash}>'
            f"<title>{escape(str(x))}</title></line>"
        )
    return _document(width, height, body)


def render(word: BraidWord, mode: str = "circle") -> str:
    if mode == "circle":
        return circle_svg(word)
    if mode == "fence":
        return fence_svg(word)
    raise ValueError(f"unknown render mode {mode!r}")
