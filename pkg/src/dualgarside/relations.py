"""
Single applications of the Birman-Ko-Lee relations to adjacent letters.

* Commutation: consecutive letters whose chords do not meet may be swapped
  (any signs).
* Cup product: for r < s < t,  a(t,s) a(s,r) = a(t,r) a(t,s) = a(s,r) a(t,r);
  the inverted forms hold for inverse letters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .braid import BraidWord, Letter, letter


@dataclass(frozen=True)
class Move:
    kind: str         # "commute", "cup", "cancel", "insert", "shift"
    position: int     # 1-based index of the first affected letter
    result: BraidWord

    def describe(self) -> str:
        return f"{self.kind}@{self.position}"


def _triangle_patterns(x: Letter, y: Letter) -> list[tuple[Letter, Letter]] | None:
    """If x·y is one side-pair of a counter-clockwise triangle, all three equal pairs."""
    a, b = {x.lower, x.upper}, {y.lower, y.upper}
    shared = a & b
    if len(shared) != 1:
        return None
    r, s, t = sorted(a | b)
    n = x.strands
    pats = [
        (letter(t, s, n), letter(s, r, n)),
        (letter(t, r, n), letter(t, s, n)),
        (letter(s, r, n), letter(t, r, n)),
    ]
    if (x, y) in pats:
        return pats
    return None


def pair_rewrites(x: Letter, y: Letter) -> list[tuple[str, tuple[Letter, Letter]]]:
    """Every two-letter word equal to x·y by one relation application."""
    out = []
    if not x.generator.crosses(y.generator):
        if x != y:
            out.append(("commute", (y, x)))
        return out
    if x.sign == 1 and y.sign == 1:
        pats = _triangle_patterns(x, y)
        if pats:
            out.extend(("cup", p) for p in pats if p != (x, y))
    elif x.sign == -1 and y.sign == -1:
        # x y = (y^-1 x^-1)^-1
        pats = _triangle_patterns(y.inverse(), x.inverse())
        if pats:
            for p, q in pats:
                cand = (q.inverse(), p.inverse())
                if cand != (x, y):
                    out.append(("cup", cand))
    return out


def moves(word: BraidWord, positive_only: bool = False, cyclic: bool = False) -> Iterator[Move]:
    """All words one relation application away from ``word`` (plus cyclic shifts if asked)."""
    L = word.letters
    for i in range(len(L) - 1):
        x, y = L[i], L[i + 1]
        if positive_only and (x.sign != 1 or y.sign != 1):
            continue
        for kind, (p, q) in pair_rewrites(x, y):
            yield Move(kind, i + 1, BraidWord(word.strands, L[:i] + (p, q) + L[i + 2 :]))
    if cyclic and len(L) > 1:
        yield Move("shift", 1, BraidWord(word.strands, L[1:] + L[:1]))


def random_relation(word: BraidWord, rng: random.Random, max_length: int | None = None) -> BraidWord:
    """Apply one random relation (commutation, cup product, free cancellation/insertion)."""
    n = word.strands
    L = word.letters
    options: list[BraidWord] = [m.result for m in moves(word)]
    for i in range(len(L) - 1):
        if L[i] == L[i + 1].inverse():
            options.append(BraidWord(n, L[:i] + L[i + 2 :]))
    if max_length is None or len(L) + 2 <= max_length:
        t = rng.randint(2, n)
        s = rng.randint(1, t - 1)
        g = letter(t, s, n, rng.choice((1, -1)))
        i = rng.randint(0, len(L))
        options.append(BraidWord(n, L[:i] + (g, g.inverse()) + L[i:]))
    return rng.choice(options)
