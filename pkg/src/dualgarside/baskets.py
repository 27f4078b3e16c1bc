"""
Espaliers, T-bandwords, (+) Hopf-plumbed baskets and folding structures.

A basket is a disk with positive Hopf bands plumbed along chords; only the
chord endpoints (labels 1..2k in circular order) and the plumbing order
matter.  A braid of the form a(s_1,r_1) ... a(s_k,r_k) · δ bounds such a
basket with one chord per letter before δ, and conversely every basket is
realized on 2k strands with one endpoint per strand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .braid import BandGenerator, BraidWord, letter, tau
from .errors import BraidError, BudgetExhausted
from .fibering import DEFAULT_BREADTH, DEFAULT_DEPTH, delta_window, find_delta_subword
from .garside import normal_form, summit_infimum

FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# espaliers


def _chords_cross(e: tuple[int, int], f: tuple[int, int]) -> bool:
    a, b = e
    c, d = f
    return a < c < b < d or c < a < d < b


@dataclass(frozen=True)
class Espalier:
    vertices: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = self.vertices
        edges = frozenset(tuple(sorted(e)) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if n < 2:
            raise BraidError("an espalier needs at least 2 vertices")
        for u, v in edges:
            if u == v or not (1 <= u <= n and 1 <= v <= n):
                raise BraidError(f"bad edge {{{u},{v}}} on {n} vertices")
        if len(edges) != n - 1:
            raise BraidError(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for u, v in edges:
            a, b = find(u), find(v)
            if a == b:
                raise BraidError("edges contain a cycle")
            parent[a] = b
        ordered = sorted(edges)
        for i, e in enumerate(ordered):
            for f in ordered[i + 1 :]:
                if _chords_cross(e, f):
                    raise BraidError(f"edges {e} and {f} cross")

    def generator_set(self) -> list[BandGenerator]:
        return sorted(BandGenerator(v, u, self.vertices) for u, v in self.edges)

    def to_text(self) -> str:
        lines = [f"espalier {FORMAT_VERSION}", f"vertices {self.vertices}"]
        lines += [f"edge {u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Espalier:
        fields = _read_records(text, "espalier")
        n = None
        edges = []
        for key, vals in fields:
            if key == "vertices":
                n = int(vals[0])
            elif key == "edge":
                edges.append((int(vals[0]), int(vals[1])))
            else:
                raise BraidError(f"unknown espalier field {key!r}")
        if n is None:
            raise BraidError("espalier file lacks a vertices line")
        return cls(n, frozenset(edges))


def make_espalier(n: int, edges: Iterable[Iterable[int]]) -> Espalier:
    return Espalier(n, frozenset(tuple(e) for e in edges))


def y_espalier(n: int) -> Espalier:
    """Every vertex joined to vertex 1."""
    return make_espalier(n, [(1, i) for i in range(2, n + 1)])


def path_espalier(n: int) -> Espalier:
    """Vertex i joined to i+1; its generators are the Artin generators."""
    return make_espalier(n, [(i, i + 1) for i in range(1, n)])


def generator_set(T: Espalier) -> list[BandGenerator]:
    return T.generator_set()


@dataclass(frozen=True)
class BandwordClass:
    is_bandword: bool
    is_positive: bool
    is_homogeneous: bool
    is_strict: bool


def classify_bandword(word: BraidWord, T: Espalier) -> BandwordClass:
    if word.strands != T.vertices:
        return BandwordClass(False, False, False, False)
    gens = set(T.generator_set())
    signs: dict[BandGenerator, set[int]] = {}
    for x in word.letters:
        signs.setdefault(x.generator, set()).add(x.sign)
    if not set(signs) <= gens:
        return BandwordClass(False, False, False, False)
    positive = all(x.sign == 1 for x in word.letters)
    homogeneous = all(len(s) == 1 for s in signs.values())
    strict = homogeneous and set(signs) == gens
    return BandwordClass(True, positive, homogeneous, strict)


# ---------------------------------------------------------------------------
# baskets


@dataclass(frozen=True)
class Basket:
    """Chords on a disk whose boundary carries labels 1..2k; listed in plumbing order."""

    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        arcs = tuple(tuple(a) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        labels = [p for a in arcs for p in a]
        k = len(arcs)
        if any(len(a) != 2 or a[0] == a[1] for a in arcs):
            raise BraidError("each arc needs two distinct endpoints")
        if sorted(labels) != list(range(1, 2 * k + 1)):
            raise BraidError(f"endpoint labels must use each of 1..{2 * k} exactly once")

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def crossing_pattern(self) -> frozenset[tuple[int, int]]:
        """Pairs (i, j), i < j, of arc indices whose chords interleave."""
        chords = [tuple(sorted(a)) for a in self.arcs]
        return frozenset(
            (i, j)
            for i in range(len(chords))
            for j in range(i + 1, len(chords))
            if _chords_cross(chords[i], chords[j])
        )

    def to_text(self) -> str:
        lines = [f"basket {FORMAT_VERSION}", f"arc_count {self.arc_count}"]
        lines += [f"arc {a} {b}" for a, b in self.arcs]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Basket:
        count = None
        arcs = []
        for key, vals in _read_records(text, "basket"):
            if key == "arc_count":
                count = int(vals[0])
            elif key == "arc":
                arcs.append((int(vals[0]), int(vals[1])))
            else:
                raise BraidError(f"unknown basket field {key!r}")
        if count is not None and count != len(arcs):
            raise BraidError(f"arc_count says {count} but {len(arcs)} arcs are listed")
        return cls(tuple(arcs))


def _read_records(text: str, kind: str) -> list[tuple[str, list[str]]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            key, *vals = line.split()
            rows.append((key, vals))
    if not rows or rows[0][0] != kind:
        raise BraidError(f"not a {kind} file (missing '{kind} <version>' header)")
    version = int(rows[0][1][0]) if rows[0][1] else None
    if version != FORMAT_VERSION:
        raise BraidError(f"unsupported {kind} format version {version}")
    return rows[1:]


@dataclass(frozen=True)
class DeltaBasket:
    """A braid rewritten as a(s_1,r_1) ... a(s_k,r_k) · δ; ``pairs`` are the plumbing data."""

    strands: int
    pairs: tuple[tuple[int, int], ...]

    def word(self) -> BraidWord:
        n = self.strands
        return BraidWord(n, tuple(letter(s, r, n) for s, r in self.pairs)) + BraidWord.delta(n)

    def to_text(self) -> str:
        lines = [f"plumbing {FORMAT_VERSION}", f"strands {self.strands}"]
        lines += [f"pair {s} {r}" for s, r in self.pairs]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> DeltaBasket:
        n = None
        pairs = []
        for key, vals in _read_records(text, "plumbing"):
            if key == "strands":
                n = int(vals[0])
            elif key == "pair":
                s, r = int(vals[0]), int(vals[1])
                pairs.append((max(s, r), min(s, r)))
            else:
                raise BraidError(f"unknown plumbing field {key!r}")
        if n is None:
            raise BraidError("plumbing file lacks a strands line")
        for s, r in pairs:
            letter(s, r, n)  # validates the indices
        return cls(n, tuple(pairs))

    def crossing_pattern(self) -> frozenset[tuple[int, int]]:
        chords = [(r, s) for s, r in self.pairs]
        return frozenset(
            (i, j)
            for i in range(len(chords))
            for j in range(i + 1, len(chords))
            if _chords_cross(chords[i], chords[j])
        )


def braid_to_basket(word: BraidWord) -> DeltaBasket:
    """Rewrite a braid with infimum >= 1 as plumbing letters followed by a trailing δ.

    A positive word that already shows δ as a block u δ v becomes
    u τ^-1(v) δ; otherwise the normal form δ^k P is rewritten as
    τ^-k(P) δ^(k-1) δ.
    """
    n = word.strands
    if word.is_positive():
        pos = _last_delta_window(word)
        if pos is not None:
            u = word.letters[: pos - 1]
            v = BraidWord(n, word.letters[pos - 1 + n - 1 :])
            letters = u + tau(v, -1).letters
            return DeltaBasket(n, tuple((x.upper, x.lower) for x in letters))
    nf = normal_form(word)
    if nf.delta_power < 1:
        raise BraidError(f"infimum {nf.delta_power} < 1: the braid has no δ to plumb onto")
    k = nf.delta_power
    # δ^k P = τ^-k(P) δ^k
    body = tau(nf.positive_part(), -k) + BraidWord.delta(n, k - 1)
    return DeltaBasket(n, tuple((x.upper, x.lower) for x in body.letters))


def _last_delta_window(word: BraidWord) -> int | None:
    n = word.strands
    for start in range(len(word) - n + 2, 0, -1):
        window = BraidWord(n, word.letters[start - 1 : start - 1 + n - 1])
        if delta_window(window) == 1:
            return start
    return None


def basket_to_braid(basket: Basket) -> BraidWord:
    """The braid on 2k strands: one letter per arc (larger label first), then δ."""
    k = basket.arc_count
    if k == 0:
        raise BraidError("the empty basket is a disk; it has no strand count to realize")
    n = 2 * k
    letters = tuple(letter(max(a), min(a), n) for a in basket.arcs)
    return BraidWord(n, letters) + BraidWord.delta(n)


def basket_from_pairs(db: DeltaBasket) -> Basket | None:
    """The basket when ``db`` uses each strand exactly once as a chord endpoint."""
    labels = [v for p in db.pairs for v in p]
    if sorted(labels) != list(range(1, db.strands + 1)):
        return None
    return Basket(tuple((r, s) for s, r in db.pairs))


# ---------------------------------------------------------------------------
# folding structures


@dataclass(frozen=True)
class FoldingStructure:
    """Disks D_1..D_n and ordered arcs, arc j joining disks r(j) and s(j).

    ``positions`` optionally gives, per arc, the attachment position of each
    endpoint along its disk's attaching region (keyed by disk).  When absent,
    positions follow the construction: arc j sits at position -j, so later
    arcs attach before earlier ones.
    """

    disk_count: int
    arcs: tuple[tuple[int, int], ...]
    positions: tuple[dict[int, float], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        arcs = tuple(tuple(a) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        n = self.disk_count
        for j, (r, s) in enumerate(arcs, 1):
            if not (1 <= r <= n and 1 <= s <= n):
                raise BraidError(f"arc {j} names a disk outside 1..{n}")
            if r == s:
                raise BraidError(f"arc {j} has both endpoints on disk {r}")
        if self.positions is not None:
            if len(self.positions) != len(arcs):
                raise BraidError("need one position record per arc")
            last: dict[int, float] = {}
            for j, ((r, s), pos) in enumerate(zip(arcs, self.positions), 1):
                for d in (r, s):
                    if d not in pos:
                        raise BraidError(f"arc {j} lacks a position on disk {d}")
                    if d in last and not pos[d] < last[d]:
                        raise BraidError(
                            f"arc {j} attaches to disk {d} after an earlier arc"
                        )
                    last[d] = pos[d]

    def attachment_order(self) -> dict[int, list[int]]:
        """For each disk, the arcs touching it listed by decreasing attachment position."""
        out: dict[int, list[int]] = {d: [] for d in range(1, self.disk_count + 1)}
        for j, (r, s) in enumerate(self.arcs, 1):
            out[r].append(j)
            out[s].append(j)
        return out


def folding_to_braid(f: FoldingStructure) -> BraidWord:
    n = f.disk_count
    letters = tuple(letter(r, s, n) for r, s in f.arcs)
    return BraidWord(n, letters) + BraidWord.delta(n)


def braid_to_folding(word: BraidWord) -> FoldingStructure:
    db = braid_to_basket(word)
    return FoldingStructure(db.strands, db.pairs)


# ---------------------------------------------------------------------------
# positive braids


class DeltaFormError(BraidError):
    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class DeltaForm:
    word: BraidWord
    stage: str
    infimum: int


def positive_artin_to_delta_form(
    word: BraidWord,
    cycling_cap: int = 1000,
    depth: int = DEFAULT_DEPTH,
    breadth: int = DEFAULT_BREADTH,
) -> DeltaForm:
    """Find a conjugate of a non-split positive Artin braid whose normal form has δ.

    Stage one cycles the normal form; stage two searches positive relation
    moves and cyclic shifts for a contiguous δ.  Both keep the strand count,
    so the closure is unchanged.
    """
    n = word.strands
    if not word.is_positive() or any(not x.generator.is_artin for x in word.letters):
        raise BraidError("expected a positive word in the Artin generators")
    present = {x.lower for x in word.letters}
    missing = [i for i in range(1, n) if i not in present]
    if missing:
        raise BraidError(f"s{missing[0]} does not occur: the closure is split")

    diagnostics: dict = {"strands": n, "length": len(word)}
    try:
        summit = summit_infimum(word, cycling_cap)
        diagnostics["cycling"] = {"infimum": summit.infimum, "iterations": summit.iterations}
        if summit.infimum >= 1:
            return DeltaForm(summit.word, "cycling", summit.infimum)
    except BudgetExhausted as exc:
        diagnostics["cycling"] = {"budget_exhausted": True, "best": exc.best.infimum}

    try:
        found = find_delta_subword(word, depth, breadth, cyclic=True)
    except BudgetExhausted as exc:
        diagnostics["search"] = {"budget_exhausted": True, **exc.diagnostics}
        raise BudgetExhausted("no δ-form found within budgets", diagnostics=diagnostics) from exc
    diagnostics["search"] = {"explored": found.explored, "exhaustive": found.exhaustive}
    if found.found:
        w = found.final
        return DeltaForm(w, "search", normal_form(w).delta_power)
    raise DeltaFormError("no conjugate on this strand count contains δ", diagnostics)
