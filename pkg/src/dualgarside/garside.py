"""
Dual Garside structure of B_n: canonical factors, normal form, word problem.

A canonical factor is a non-crossing partition of {1..n}.  A block
{q1 < q2 < ... < qr} is the polygon braid a(qr,q(r-1)) ... a(q2,q1); as a
permutation it is the increasing cycle q1 -> q2 -> ... -> qr -> q1.  Left and
right divisibility among factors are both refinement of partitions, so the
meet of two factors is their common refinement.

Every braid has a unique normal form δ^k A_1 ... A_m where no A_i is the
identity or δ and each pair (A_i, A_{i+1}) is left-weighted: no generator
that starts A_{i+1} can be absorbed into A_i.

Permutations are handled internally as 1-based image tuples composed left to
right (``_then(p, q)`` applies p first).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .braid import BandGenerator, BraidWord, Letter, letter
from .braid import tau as _tau_word
from .errors import BraidError, BudgetExhausted, StrandMismatchError

Perm = tuple[int, ...]


# ---------------------------------------------------------------------------
# permutation helpers


def _then(p: Perm, q: Perm) -> Perm:
    return tuple(q[j - 1] for j in p)


def _inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p, 1):
        out[j - 1] = i
    return tuple(out)


def _delta_perm(n: int) -> Perm:
    return tuple(i % n + 1 for i in range(1, n + 1))


def _blocks_to_perm(n: int, blocks: Iterable[Sequence[int]]) -> Perm:
    img = list(range(1, n + 1))
    for b in blocks:
        q = sorted(b)
        for a, c in zip(q, q[1:] + q[:1]):
            img[a - 1] = c
    return tuple(img)


def _perm_to_blocks(p: Perm) -> tuple[tuple[int, ...], ...] | None:
    """Blocks of p if every cycle is increasing, else None.  Crossing is not checked here."""
    seen = [False] * (len(p) + 1)
    blocks = []
    for i in range(1, len(p) + 1):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i - 1]
        while j != i:
            if j < cyc[-1]:
                return None
            cyc.append(j)
            seen[j] = True
            j = p[j - 1]
        blocks.append(tuple(cyc))
    return tuple(blocks)


def _crossing(blocks: Sequence[Sequence[int]]) -> bool:
    """Whether two blocks interleave (a < b < c < d, a,c in one block, b,d in another)."""
    big = [sorted(b) for b in blocks if len(b) > 1]
    for i, q in enumerate(big):
        for c in big[i + 1 :]:
            # regions cut out by q on the circle; c must stay inside one of them
            regions = set()
            for v in c:
                j = sum(1 for x in q if x < v)
                regions.add(0 if j == len(q) else j)
            if len(regions) > 1:
                return True
    return False


def _cycle_count(p: Perm) -> int:
    seen = [False] * (len(p) + 1)
    count = 0
    for i in range(1, len(p) + 1):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j - 1]
    return count


# ---------------------------------------------------------------------------
# canonical factors


class CanonicalFactor:
    """A dual simple braid, stored as a non-crossing partition of {1..n}.

    Instances are interned per (strands, partition), so equal factors are the
    same object and hashing is cheap.
    """

    __slots__ = ("strands", "blocks", "perm", "_hash", "__weakref__")

    _interned: dict[tuple[int, Perm], CanonicalFactor] = {}

    def __new__(cls, strands: int, blocks: Iterable[Iterable[int]]):
        groups = [tuple(sorted(set(b))) for b in blocks]
        covered = sorted(v for b in groups for v in b)
        if strands < 2:
            raise BraidError(f"need at least 2 strands, got {strands}")
        if len(covered) != len(set(covered)) or any(not 1 <= v <= strands for v in covered):
            raise BraidError(f"blocks {groups} are not disjoint subsets of 1..{strands}")
        if _crossing(groups):
            raise BraidError(f"blocks {groups} cross")
        return cls._from_perm(strands, _blocks_to_perm(strands, groups))

    @classmethod
    def _from_perm(cls, n: int, perm: Perm) -> CanonicalFactor:
        key = (n, perm)
        hit = cls._interned.get(key)
        if hit is not None:
            return hit
        blocks = _perm_to_blocks(perm)
        assert blocks is not None
        self = object.__new__(cls)
        self.strands = n
        self.blocks = blocks
        self.perm = perm
        self._hash = hash(key)
        cls._interned[key] = self
        return self

    @classmethod
    def from_perm(cls, n: int, perm: Perm) -> CanonicalFactor | None:
        """The factor realizing ``perm``, or None if ``perm`` is not a factor permutation."""
        blocks = _perm_to_blocks(perm)
        if blocks is None or _crossing(blocks):
            return None
        return cls._from_perm(n, tuple(perm))

    @classmethod
    def identity(cls, n: int) -> CanonicalFactor:
        return cls._from_perm(n, tuple(range(1, n + 1)))

    @classmethod
    def delta(cls, n: int) -> CanonicalFactor:
        return cls._from_perm(n, _delta_perm(n))

    def __reduce__(self):
        return (CanonicalFactor, (self.strands, self.blocks))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CanonicalFactor):
            return NotImplemented
        return self.strands == other.strands and self.perm == other.perm

    def __lt__(self, other: CanonicalFactor):
        return (self.strands, self.perm) < (other.strands, other.perm)

    @property
    def nontrivial_blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b for b in self.blocks if len(b) > 1)

    @property
    def length(self) -> int:
        """Number of band letters in any positive word for this factor."""
        return sum(len(b) - 1 for b in self.blocks)

    def is_identity(self) -> bool:
        return self.length == 0

    def is_delta(self) -> bool:
        return self.length == self.strands - 1

    def generators(self) -> list[BandGenerator]:
        """Generators dividing this factor (pairs inside one block), ordered by (t, s)."""
        out = [
            BandGenerator(t, s, self.strands)
            for b in self.blocks
            for i, s in enumerate(b)
            for t in b[i + 1 :]
        ]
        return sorted(out)

    def word(self) -> BraidWord:
        return polygon_word(self)

    def __str__(self):
        big = self.nontrivial_blocks
        if not big:
            return "{}"
        return "".join("{" + ",".join(map(str, b)) + "}" for b in big)

    def __repr__(self):
        return f"CanonicalFactor({self.strands}, {list(map(list, self.blocks))})"


def _check(a: CanonicalFactor, b: CanonicalFactor):
    if a.strands != b.strands:
        raise StrandMismatchError(f"{a.strands} strands vs {b.strands} strands")


def factor_of_generator(t: int, s: int, n: int) -> CanonicalFactor:
    g = BandGenerator(t, s, n)
    return CanonicalFactor(n, [(g.lower, g.upper)])


def factor_of_polygon(vertices: Iterable[int], n: int) -> CanonicalFactor:
    vs = set(vertices)
    if not vs:
        raise BraidError("a polygon needs at least one vertex")
    return CanonicalFactor(n, [vs])


def polygon_word(factor: CanonicalFactor) -> BraidWord:
    """a(qr,q(r-1)) ... a(q2,q1) for each block, blocks by increasing minimum."""
    n = factor.strands
    letters = []
    for b in factor.blocks:
        for i in range(len(b) - 1, 0, -1):
            letters.append(letter(b[i], b[i - 1], n))
    return BraidWord(n, tuple(letters))


def left_divides(b: CanonicalFactor, a: CanonicalFactor) -> bool:
    """Whether ``b`` left-divides ``a``: every block of b sits inside a block of a."""
    _check(a, b)
    return _refines(b.perm, a.perm)


def _refines(bp: Perm, ap: Perm) -> bool:
    owner = _owners(ap)
    for blk in _perm_to_blocks(bp):
        o = owner[blk[0]]
        if any(owner[v] != o for v in blk[1:]):
            return False
    return True


def _owners(p: Perm) -> list[int]:
    owner = [0] * (len(p) + 1)
    for i in range(1, len(p) + 1):
        if owner[i] == 0:
            j = i
            while owner[j] == 0:
                owner[j] = i
                j = p[j - 1]
    return owner


def right_divides(b: CanonicalFactor, a: CanonicalFactor) -> bool:
    # prefix and suffix orders agree on factors
    return left_divides(b, a)


@functools.lru_cache(maxsize=None)
def meet(a: CanonicalFactor, b: CanonicalFactor) -> CanonicalFactor:
    """Greatest common refinement (the lattice meet)."""
    _check(a, b)
    oa, ob = _owners(a.perm), _owners(b.perm)
    groups: dict[tuple[int, int], list[int]] = {}
    for v in range(1, a.strands + 1):
        groups.setdefault((oa[v], ob[v]), []).append(v)
    return CanonicalFactor._from_perm(a.strands, _blocks_to_perm(a.strands, groups.values()))


@functools.lru_cache(maxsize=None)
def complements(a: CanonicalFactor) -> tuple[CanonicalFactor, CanonicalFactor]:
    """(left, right) with left·a = δ and a·right = δ."""
    n = a.strands
    d = _delta_perm(n)
    ia = _inv(a.perm)
    right = CanonicalFactor._from_perm(n, _then(ia, d))
    left = CanonicalFactor._from_perm(n, _then(d, ia))
    return left, right


def left_complement(a: CanonicalFactor) -> CanonicalFactor:
    return complements(a)[0]


def right_complement(a: CanonicalFactor) -> CanonicalFactor:
    return complements(a)[1]


@functools.lru_cache(maxsize=None)
def factor_product_if_simple(a: CanonicalFactor, b: CanonicalFactor) -> CanonicalFactor | None:
    """a·b as a factor, or None when the product is not simple."""
    _check(a, b)
    p = _then(a.perm, b.perm)
    if a.strands - _cycle_count(p) != a.length + b.length:
        return None
    return CanonicalFactor.from_perm(a.strands, p)


def left_quotient(x: CanonicalFactor, b: CanonicalFactor) -> CanonicalFactor:
    """The factor c with x·c = b; requires x to divide b."""
    return CanonicalFactor._from_perm(b.strands, _then(_inv(x.perm), b.perm))


def right_quotient(b: CanonicalFactor, x: CanonicalFactor) -> CanonicalFactor:
    """The factor c with c·x = b; requires x to right-divide b."""
    return CanonicalFactor._from_perm(b.strands, _then(b.perm, _inv(x.perm)))


@functools.lru_cache(maxsize=None)
def tau_factor(a: CanonicalFactor, power: int = 1) -> CanonicalFactor:
    """δ^-power · a · δ^power: shift every vertex up by ``power`` mod n."""
    n = a.strands
    power %= n
    if power == 0:
        return a
    shift = [(v - 1 + power) % n + 1 for v in range(1, n + 1)]
    img = [0] * n
    for i in range(1, n + 1):
        img[shift[i - 1] - 1] = shift[a.perm[i - 1] - 1]
    return CanonicalFactor._from_perm(n, tuple(img))


@functools.lru_cache(maxsize=None)
def _slide(a: CanonicalFactor, b: CanonicalFactor) -> tuple[CanonicalFactor, CanonicalFactor] | None:
    """Left-weight the pair (a, b); None if it already is."""
    x = meet(right_complement(a), b)
    if x.is_identity():
        return None
    return factor_product_if_simple(a, x), left_quotient(x, b)


def is_left_weighted(a: CanonicalFactor, b: CanonicalFactor) -> bool:
    return _slide(a, b) is None


def all_factors(n: int) -> list[CanonicalFactor]:
    """Every canonical factor of B_n (Catalan(n) of them), sorted by permutation."""
    out = []

    def rec(v: int, blocks: list[list[int]]):
        if v > n:
            f = CanonicalFactor.from_perm(n, _blocks_to_perm(n, blocks))
            if f is not None:
                out.append(f)
            return
        blocks.append([v])
        rec(v + 1, blocks)
        blocks.pop()
        for b in blocks:
            b.append(v)
            rec(v + 1, blocks)
            b.pop()

    rec(1, [])
    return sorted(set(out))


# ---------------------------------------------------------------------------
# normal form


@dataclass(frozen=True)
class NormalForm:
    strands: int
    delta_power: int
    factors: tuple[CanonicalFactor, ...] = ()

    @property
    def infimum(self) -> int:
        return self.delta_power

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def supremum(self) -> int:
        return self.delta_power + len(self.factors)

    def to_word(self) -> BraidWord:
        n = self.strands
        letters = list(BraidWord.delta(n, self.delta_power).letters)
        for f in self.factors:
            letters.extend(polygon_word(f).letters)
        return BraidWord(n, tuple(letters))

    def positive_part(self) -> BraidWord:
        """A_1 ... A_m as letters."""
        letters = [x for f in self.factors for x in polygon_word(f).letters]
        return BraidWord(self.strands, tuple(letters))

    def __str__(self):
        return " | ".join([f"D^{self.delta_power}", *map(str, self.factors)])


def parse_normal_form(text: str, strands: int) -> NormalForm:
    """Inverse of ``str(NormalForm)``."""
    parts = [p.strip() for p in text.strip().split("|")]
    head = parts[0]
    if not head.startswith("D^"):
        raise BraidError(f"normal form must start with D^k, got {head!r}")
    try:
        k = int(head[2:])
    except ValueError:
        raise BraidError(f"bad delta power {head!r}") from None
    factors = []
    for p in parts[1:]:
        if not (p.startswith("{") and p.endswith("}")):
            raise BraidError(f"bad factor {p!r}")
        blocks = [
            [int(v) for v in chunk.split(",") if v.strip()]
            for chunk in p[1:-1].split("}{")
        ]
        factors.append(CanonicalFactor(strands, blocks))
    return NormalForm(strands, k, tuple(factors))


def _insert(nf: list[CanonicalFactor], f: CanonicalFactor):
    """Append f to a left-weighted list and restore left-weightedness by a backward pass."""
    nf.append(f)
    j = len(nf) - 2
    while j >= 0:
        s = _slide(nf[j], nf[j + 1])
        if s is None:
            break
        nf[j], nf[j + 1] = s
        j -= 1


def normalize_factors(n: int, delta_power: int, factors: Iterable[CanonicalFactor]) -> NormalForm:
    """Normal form of δ^delta_power · F_1 · F_2 · ... for arbitrary factors F_i."""
    seq: list[CanonicalFactor] = []
    for f in factors:
        _insert(seq, f)
    # the backward passes already leave every adjacent pair left-weighted; the sweep confirms it
    changed = True
    while changed:
        changed = False
        for j in range(len(seq) - 1):
            s = _slide(seq[j], seq[j + 1])
            if s is not None:
                seq[j], seq[j + 1] = s
                changed = True
    k = delta_power
    lo = 0
    while lo < len(seq) and seq[lo].is_delta():
        lo += 1
    hi = len(seq)
    while hi > lo and seq[hi - 1].is_identity():
        hi -= 1
    return NormalForm(n, k + lo, tuple(seq[lo:hi]))


def normal_form(word: BraidWord) -> NormalForm:
    n = word.strands
    # a^-1 = δ^-1 · L(a); every δ^-1 is pulled to the front, twisting the
    # factors it passes: X δ^-1 = δ^-1 τ^-1(X).
    raw: list[tuple[CanonicalFactor, int]] = []
    d = 0
    for x in word.letters:
        g = factor_of_generator(x.upper, x.lower, n)
        if x.sign == 1:
            raw.append((g, d))
        else:
            d += 1
            raw.append((left_complement(g), d))
    factors = (tau_factor(f, b - d) for f, b in raw)
    return normalize_factors(n, -d, factors)


def words_equal(u: BraidWord, v: BraidWord) -> bool:
    if u.strands != v.strands:
        raise StrandMismatchError(f"{u.strands} strands vs {v.strands} strands")
    return normal_form(u) == normal_form(v)


def infimum(word: BraidWord) -> int:
    return normal_form(word).delta_power


def canonical_length(word: BraidWord) -> int:
    return len(normal_form(word).factors)


def is_sqp_word(word: BraidWord) -> bool:
    return word.is_positive()


def is_sqp_braid(word: BraidWord) -> bool:
    return infimum(word) >= 0


def generator_word(g: BandGenerator, sign: int = 1) -> BraidWord:
    return BraidWord(g.strands, (Letter(g, sign),))


def all_generators(n: int) -> list[BandGenerator]:
    return [BandGenerator(t, s, n) for t in range(2, n + 1) for s in range(1, t)]


def starting_set(word: BraidWord) -> list[BandGenerator]:
    """Generators that begin some positive word for ``word``, ordered by (t, s)."""
    if not word.is_positive():
        raise BraidError("starting sets are defined for BKL-positive words")
    nf = normal_form(word)
    if nf.delta_power >= 1:
        return all_generators(word.strands)
    if not nf.factors:
        return []
    return nf.factors[0].generators()


def finishing_set(word: BraidWord) -> list[BandGenerator]:
    """Generators that end some positive word for ``word``, ordered by (t, s).

    Decided directly: s is in the set iff word · s^-1 is still positive.
    """
    if not word.is_positive():
        raise BraidError("finishing sets are defined for BKL-positive words")
    out = []
    for g in all_generators(word.strands):
        if infimum(word + generator_word(g, -1)) >= 0:
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# conjugation by δ and cycling


def tau(obj, power: int = 1):
    """Conjugation x -> δ^-power x δ^power on words, factors, or normal forms."""
    if isinstance(obj, CanonicalFactor):
        return tau_factor(obj, power)
    if isinstance(obj, NormalForm):
        return NormalForm(obj.strands, obj.delta_power, tuple(tau_factor(f, power) for f in obj.factors))
    if isinstance(obj, BraidWord):
        return _tau_word(obj, power)
    raise TypeError(f"cannot apply tau to {type(obj).__name__}")


def cycle_normal_form(nf: NormalForm) -> NormalForm:
    """Conjugate δ^k A_1 R to δ^k R τ^-k(A_1), moving the first factor to the back."""
    if not nf.factors:
        raise BraidError("cycling needs canonical length at least 1")
    k = nf.delta_power
    # δ^k A_1 = τ^-k(A_1) δ^k, so conjugating by τ^-k(A_1) gives δ^k R τ^-k(A_1)
    moved = tau_factor(nf.factors[0], -k)
    return normalize_factors(nf.strands, k, [*nf.factors[1:], moved])


def cycling(word: BraidWord) -> BraidWord:
    return cycle_normal_form(normal_form(word)).to_word()


@dataclass(frozen=True)
class SummitResult:
    infimum: int
    normal_form: NormalForm
    iterations: int

    @property
    def word(self) -> BraidWord:
        return self.normal_form.to_word()


def summit_infimum(word: BraidWord, budget: int = 1000) -> SummitResult:
    """Iterate cycling until the orbit repeats, keeping the best infimum seen.

    Cycling never lowers the infimum, and it increases it within the orbit
    whenever the conjugacy class allows, so a repeated normal form means the
    summit infimum has been reached.  Raises BudgetExhausted (with the best
    result so far) if ``budget`` cyclings pass without a repeat.
    """
    nf = normal_form(word)
    best = SummitResult(nf.delta_power, nf, 0)
    seen = {nf}
    current = nf
    for i in range(1, budget + 1):
        if not current.factors:
            return best
        current = cycle_normal_form(current)
        if current.delta_power > best.infimum:
            best = SummitResult(current.delta_power, current, i)
        if current in seen:
            return SummitResult(best.infimum, best.normal_form, i)
        seen.add(current)
    if not current.factors:
        return best
    raise BudgetExhausted(f"cycling did not close up within {budget} steps", best=best)
