"""
Words in the band generators of the braid group B_n.

A band generator a(t,s) joins strands s < t; strand s passes over the strands
strictly between them and crosses strand t positively.  The Artin generator
s_i is the band a(i+1,i).  Strands are numbered 1..n throughout.

Words are immutable; every operation returns a new word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BraidError, BraidSyntaxError, StrandMismatchError


@dataclass(frozen=True, order=True)
class BandGenerator:
    """The band a(upper, lower) with ``upper > lower``; the pair is sorted on construction."""

    upper: int
    lower: int
    strands: int

    def __post_init__(self):
        t, s = self.upper, self.lower
        if t < s:
            t, s = s, t
            object.__setattr__(self, "upper", t)
            object.__setattr__(self, "lower", s)
        if self.strands < 2:
            raise BraidError(f"need at least 2 strands, got {self.strands}")
        if s == t:
            raise BraidError(f"band a({t},{s}) joins a strand to itself")
        if s < 1 or t > self.strands:
            raise BraidError(f"band a({t},{s}) out of range for {self.strands} strands")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.upper, self.lower)

    @property
    def is_artin(self) -> bool:
        return self.upper - self.lower == 1

    def crosses(self, other: BandGenerator) -> bool:
        """True when the two chords of the circle presentation meet (share a vertex or interleave)."""
        a, b = self.lower, self.upper
        c, d = other.lower, other.upper
        if {a, b} & {c, d}:
            return True
        return (a < c < b) != (a < d < b)

    def __str__(self):
        return f"a({self.upper},{self.lower})"


@dataclass(frozen=True, order=True)
class Letter:
    generator: BandGenerator
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise BraidError(f"letter sign must be +1 or -1, got {self.sign}")

    @property
    def upper(self) -> int:
        return self.generator.upper

    @property
    def lower(self) -> int:
        return self.generator.lower

    @property
    def strands(self) -> int:
        return self.generator.strands

    def inverse(self) -> Letter:
        return Letter(self.generator, -self.sign)

    def __str__(self):
        return str(self.generator) + ("" if self.sign == 1 else "^-1")


def letter(t: int, s: int, n: int, sign: int = 1) -> Letter:
    return Letter(BandGenerator(t, s, n), sign)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 2:
            raise BraidError(f"need at least 2 strands, got {self.strands}")
        for x in self.letters:
            if x.strands != self.strands:
                raise StrandMismatchError(
                    f"letter {x} lives on {x.strands} strands, word on {self.strands}"
                )

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> BraidWord:
        """Build a word from ``(t, s)`` or ``(t, s, sign)`` tuples."""
        letters = []
        for p in pairs:
            sign = p[2] if len(p) > 2 else 1
            letters.append(letter(p[0], p[1], n, sign))
        return cls(n, tuple(letters))

    @classmethod
    def from_artin(cls, n: int, indices: Iterable[int]) -> BraidWord:
        """Word from signed Artin indices: ``i`` is s_i, ``-i`` its inverse."""
        letters = [letter(abs(i) + 1, abs(i), n, 1 if i > 0 else -1) for i in indices]
        return cls(n, tuple(letters))

    @classmethod
    def identity(cls, n: int) -> BraidWord:
        return cls(n, ())

    @classmethod
    def delta(cls, n: int, power: int = 1) -> BraidWord:
        """The dual Garside element a(n,n-1)...a(2,1), raised to ``power``."""
        one = tuple(letter(i + 1, i, n) for i in range(n - 1, 0, -1))
        if power >= 0:
            return cls(n, one * power)
        inv = tuple(x.inverse() for x in reversed(one))
        return cls(n, inv * (-power))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __add__(self, other: BraidWord) -> BraidWord:
        return concat(self, other)

    def is_positive(self) -> bool:
        return all(x.sign == 1 for x in self.letters)

    def pairs(self) -> list[tuple[int, int, int]]:
        return [(x.upper, x.lower, x.sign) for x in self.letters]

    def __str__(self):
        return format_word(self)


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..n}; ``images[i-1]`` is the image of i."""

    images: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> Permutation:
        img = list(range(1, n + 1))
        img[a - 1], img[b - 1] = b, a
        return cls(tuple(img))

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BraidError(f"{self.images} is not a permutation")

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        return Permutation(tuple(other.images[j - 1] for j in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles (fixed points included), each starting at its minimum, sorted by minimum."""
        seen = set()
        out = []
        for i in range(1, self.size + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))


# ---------------------------------------------------------------------------
# parsing and formatting

_TOKEN = re.compile(
    r"\s*(?:a\(\s*(?P<t>\d+)\s*,\s*(?P<s>\d+)\s*\)|s(?P<i>\d+))(?:\^(?P<pow>-?\d+))?"
)


def parse_word(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``a(t,s)`` / ``s<i>`` letters with optional ``^k`` (k >= 1) or ``^-1`` powers.

    Without ``strands`` the strand count is the largest index mentioned.
    """
    raw: list[tuple[int, int, int, int]] = []  # (t, s, sign, position)
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise BraidSyntaxError(f"unexpected {text[pos]!r}", pos)
        if m.group("i") is not None:
            i = int(m.group("i"))
            t, s = i + 1, i
            if i < 1:
                raise BraidSyntaxError("Artin index must be at least 1", m.start("i"))
        else:
            t, s = int(m.group("t")), int(m.group("s"))
            if t == s:
                raise BraidSyntaxError(f"band a({t},{s}) joins a strand to itself", m.start("t"))
            if min(t, s) < 1:
                raise BraidSyntaxError("strand indices start at 1", m.start("t"))
        power = 1
        if m.group("pow") is not None:
            power = int(m.group("pow"))
            if power == 0 or power < -1:
                raise BraidSyntaxError(f"unsupported power {power}", m.start("pow"))
        sign = -1 if power < 0 else 1
        for _ in range(abs(power)):
            raw.append((t, s, sign, m.start()))
        pos = m.end()
        if pos < len(text) and not text[pos].isspace() and text[pos] not in "as":
            raise BraidSyntaxError(f"unexpected {text[pos]!r}", pos)

    if strands is None:
        if not raw:
            raise BraidError("cannot infer the strand count of an empty word")
        strands = max(max(t, s) for t, s, _, _ in raw)
    for t, s, _, p in raw:
        if max(t, s) > strands:
            raise BraidSyntaxError(f"strand {max(t, s)} exceeds declared {strands}", p)
    return BraidWord(strands, tuple(letter(t, s, strands, sign) for t, s, sign, _ in raw))


def format_word(word: BraidWord, style: str = "band") -> str:
    """Render ``word`` as text; ``style`` is ``"band"`` or ``"artin-if-possible"``."""
    parts = []
    if style == "band":
        for x in word.letters:
            parts.append(str(x))
    elif style in ("artin", "artin-if-possible"):
        for x in word.letters:
            if not x.generator.is_artin:
                raise BraidError(f"{x.generator} is not an Artin generator")
            parts.append(f"s{x.lower}" + ("" if x.sign == 1 else "^-1"))
    else:
        raise ValueError(f"unknown style {style!r}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# word algebra


def _check_same(u: BraidWord, v: BraidWord):
    if u.strands != v.strands:
        raise StrandMismatchError(f"{u.strands} strands vs {v.strands} strands")


def concat(*words: BraidWord) -> BraidWord:
    if not words:
        raise ValueError("concat needs at least one word")
    for w in words[1:]:
        _check_same(words[0], w)
    return BraidWord(words[0].strands, tuple(x for w in words for x in w.letters))


def invert(word: BraidWord) -> BraidWord:
    return BraidWord(word.strands, tuple(x.inverse() for x in reversed(word.letters)))


def cyclic_shift(word: BraidWord, k: int = 1) -> BraidWord:
    """Move the first ``k`` letters to the end (a conjugation)."""
    if not word.letters:
        return word
    k %= len(word.letters)
    return BraidWord(word.strands, word.letters[k:] + word.letters[:k])


def conjugate(word: BraidWord, g: BraidWord) -> BraidWord:
    """g^-1 · word · g."""
    return concat(invert(g), word, g)


def subword(word: BraidWord, i: int, j: int) -> BraidWord:
    """Letters i..j inclusive, 1-based."""
    if not 1 <= i <= j <= len(word):
        raise IndexError(f"subword({i},{j}) out of range for length {len(word)}")
    return BraidWord(word.strands, word.letters[i - 1 : j])


def exponent_sum(word: BraidWord) -> int:
    return sum(x.sign for x in word.letters)


def band_to_artin(word: BraidWord) -> BraidWord:
    """Rewrite every band as s_{t-1}...s_{s+1} s_s^{±1} s_{s+1}^-1...s_{t-1}^-1."""
    n = word.strands
    out: list[Letter] = []
    for x in word.letters:
        t, s = x.upper, x.lower
        up = [letter(i + 1, i, n) for i in range(t - 1, s, -1)]
        out.extend(up)
        out.append(letter(s + 1, s, n, x.sign))
        out.extend(y.inverse() for y in reversed(up))
    return BraidWord(n, tuple(out))


def underlying_permutation(word: BraidWord) -> Permutation:
    """Each letter acts as the transposition of its two strands, composed in word order."""
    n = word.strands
    img = list(range(n + 1))  # img[i]: image of i so far
    pre = list(range(n + 1))  # pre[v]: the i with img[i] == v
    for x in word.letters:
        a, b = x.lower, x.upper
        ia, ib = pre[a], pre[b]
        img[ia], img[ib] = b, a
        pre[a], pre[b] = ib, ia
    return Permutation(tuple(img[1:]))


def tau(word: BraidWord, power: int = 1) -> BraidWord:
    """Conjugate by δ^power: every band a(t,s) becomes a(t+power, s+power), indices mod n.

    τ(w) = δ^-1 · w · δ.
    """
    n = word.strands
    out = []
    for x in word.letters:
        t = (x.upper - 1 + power) % n + 1
        s = (x.lower - 1 + power) % n + 1
        out.append(letter(t, s, n, x.sign))
    return BraidWord(n, tuple(out))
