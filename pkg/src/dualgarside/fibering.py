"""
Fiberedness certificates for braids whose normal form starts with a positive δ-power.

For β = δ^k P with P positive and k >= 1: pick s in S(P), write P = s P' and
the last δ as P'' s, so β = δ^(k-1) P'' (s s) P'.  Deleting one letter of
the square s s gives δ^k P'; a square deletion preserves whether the
complementary sutured manifold is a product, so after |P| steps we reach
δ^k, whose closure is fibered.  A certificate records each expansion and
deletion so it can be re-checked independently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .braid import BandGenerator, BraidWord, Letter, concat, letter, parse_word
from .errors import BraidError, BudgetExhausted, SplitClosureError
from .garside import (
    _delta_perm,
    factor_of_generator,
    generator_word,
    left_complement,
    normal_form,
    polygon_word,
    right_quotient,
    starting_set,
    words_equal,
)
from .relations import moves

DEFAULT_DEPTH = 64
DEFAULT_BREADTH = 100_000


def cancel_square(word: BraidWord, position: int) -> BraidWord:
    """Drop one letter of the identical positive pair at ``position``, ``position+1`` (1-based)."""
    if not 1 <= position < len(word):
        raise IndexError(f"no letter pair at position {position} in a word of length {len(word)}")
    x, y = word.letters[position - 1], word.letters[position]
    if x != y or x.sign != 1:
        raise BraidError(f"letters {x} {y} at position {position} are not a positive square")
    return BraidWord(word.strands, word.letters[:position] + word.letters[position + 1 :])


@dataclass(frozen=True)
class CertificateStep:
    expansion: BraidWord
    position: int
    reduced: BraidWord


@dataclass(frozen=True)
class FiberednessCertificate:
    original: BraidWord
    steps: tuple[CertificateStep, ...]
    terminal: BraidWord
    delta_power_at_end: int

    def to_text(self) -> str:
        lines = [f"ORIGINAL {self.original.strands} {self.original}".rstrip()]
        for st in self.steps:
            lines.append(f"EXPAND {st.expansion} @{st.position} -> {st.reduced}")
        lines.append(f"TERMINAL D^{self.delta_power_at_end}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> FiberednessCertificate:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("ORIGINAL "):
            raise BraidError("certificate must begin with an ORIGINAL line")
        head = lines[0].split(None, 2)
        if len(head) < 2:
            raise BraidError("ORIGINAL line needs a strand count")
        n = int(head[1])
        original = parse_word(head[2] if len(head) > 2 else "", n)
        if not lines[-1].startswith("TERMINAL D^"):
            raise BraidError("certificate must end with a TERMINAL line")
        k = int(lines[-1][len("TERMINAL D^") :])
        steps = []
        for ln in lines[1:-1]:
            if not ln.startswith("EXPAND "):
                raise BraidError(f"unexpected certificate line {ln!r}")
            body = ln[len("EXPAND ") :]
            left, _, right = body.partition(" -> ")
            exp_text, _, pos_text = left.rpartition("@")
            steps.append(
                CertificateStep(parse_word(exp_text, n), int(pos_text), parse_word(right, n))
            )
        return cls(original, tuple(steps), BraidWord.delta(n, k), k)


def fiberedness_certificate(word: BraidWord) -> FiberednessCertificate | None:
    """Certificate that the closure of ``word`` is fibered, or None when the infimum is <= 0.

    None means the criterion does not apply; it says nothing about fiberedness.
    """
    n = word.strands
    nf = normal_form(word)
    k = nf.delta_power
    if k < 1:
        return None
    head = BraidWord.delta(n, k - 1)
    rest = nf.positive_part()
    steps = []
    while len(rest):
        s = starting_set(rest)[0]
        s_word = generator_word(s)
        tail = normal_form(generator_word(s, -1) + rest)
        assert tail.delta_power >= 0
        tail_word = tail.to_word()
        front = polygon_word(left_complement(factor_of_generator(s.upper, s.lower, n)))
        expansion = concat(head, front, s_word, s_word, tail_word)
        pos = len(head) + len(front) + 1
        steps.append(CertificateStep(expansion, pos, cancel_square(expansion, pos)))
        rest = tail_word
    return FiberednessCertificate(word, tuple(steps), BraidWord.delta(n, k), k)


def verify_certificate(cert: FiberednessCertificate) -> bool:
    """Re-check every claim in ``cert`` from scratch."""
    if cert.delta_power_at_end < 1:
        return False
    n = cert.original.strands
    prev = cert.original
    for st in cert.steps:
        if st.expansion.strands != n or st.reduced.strands != n:
            return False
        if not words_equal(st.expansion, prev):
            return False
        try:
            if cancel_square(st.expansion, st.position) != st.reduced:
                return False
        except (BraidError, IndexError):
            return False
        prev = st.reduced
    if cert.terminal.strands != n or not words_equal(cert.terminal, prev):
        return False
    return words_equal(cert.terminal, BraidWord.delta(n, cert.delta_power_at_end))


# ---------------------------------------------------------------------------
# containing δ


@dataclass(frozen=True)
class DeltaWitness:
    """Indices (1-based) satisfying the Y_n-bandword δ-containment conditions."""

    k: int
    L: int
    P: int
    U: int
    Q: dict[int, int] = field(hash=False)


def check_delta_witness(r: list[int] | tuple[int, ...], n: int, w: DeltaWitness) -> bool:
    """Check the three witness conditions literally."""
    M = len(r)
    R = lambda i: r[i - 1]  # noqa: E731
    if not (1 <= w.k < n and 1 <= w.L <= w.P <= w.U <= M):
        return False
    if (R(w.L), R(w.P), R(w.U)) != (1, w.k, n):
        return False
    for i in range(1, w.k + 1):
        q = w.Q.get(i)
        if q is None or not (w.L <= q <= w.P) or R(q) != i:
            return False
        if any(R(T) <= R(q) for T in range(q + 1, w.P + 1)):
            return False
    for i in range(w.k, n + 1):
        q = w.Q.get(i)
        if q is None or not (w.P <= q <= w.U) or R(q) != i:
            return False
        if any(R(T) >= R(q) for T in range(w.P, q)):
            return False
    return True


def yn_delta_criterion(r, n: int) -> DeltaWitness | None:
    """Search for a δ-containment witness for the Y_n-bandword a(r_1,1) ... a(r_M,1).

    The value 1 stands for the empty letter a(1,1).  Candidates are tried
    with k descending, then L, P, U ascending; Q(k) is P, Q(i) for i < k is
    the last occurrence of i in [L, P], and Q(i) for i > k the first
    occurrence of i in [P, U] (any other choice would only fail sooner).
    """
    r = tuple(r)
    if any(not 1 <= v <= n for v in r):
        raise BraidError(f"sequence values must lie in 1..{n}")
    M = len(r)
    for k in range(n - 1, 0, -1):
        for L in range(1, M + 1):
            if r[L - 1] != 1:
                continue
            for P in range(L, M + 1):
                if r[P - 1] != k:
                    continue
                low = _lower_half(r, k, L, P)
                if low is None:
                    continue
                for U in range(P, M + 1):
                    if r[U - 1] != n:
                        continue
                    high = _upper_half(r, k, n, P, U)
                    if high is None:
                        continue
                    w = DeltaWitness(k, L, P, U, {**low, **high, k: P})
                    if check_delta_witness(r, n, w):
                        return w
    return None


def _lower_half(r, k, L, P):
    Q = {}
    for i in range(1, k):
        q = next((j for j in range(P, L - 1, -1) if r[j - 1] == i), None)
        if q is None or any(r[T - 1] <= i for T in range(q + 1, P + 1)):
            return None
        Q[i] = q
    return Q


def _upper_half(r, k, n, P, U):
    Q = {}
    for i in range(k + 1, n + 1):
        q = next((j for j in range(P, U + 1) if r[j - 1] == i), None)
        if q is None or any(r[T - 1] >= i for T in range(P, q)):
            return None
        Q[i] = q
    return Q


def yn_bandword(r, n: int) -> BraidWord:
    """The positive Y_n-bandword a(r_1,1)...a(r_M,1), skipping the empty letters r_i = 1."""
    return BraidWord(n, tuple(letter(v, 1, n) for v in r if v != 1))


def delta_window(word: BraidWord) -> int | None:
    """1-based start of the first n-1 consecutive positive letters forming δ, if any."""
    n = word.strands
    L = word.letters
    target = _delta_perm(n)
    for i in range(len(L) - n + 2):
        window = L[i : i + n - 1]
        if any(x.sign != 1 for x in window):
            continue
        # n-1 letters whose transpositions compose to the n-cycle: a reduced word for δ
        img = list(range(n + 1))
        pre = list(range(n + 1))
        for x in window:
            a, b = x.lower, x.upper
            ia, ib = pre[a], pre[b]
            img[ia], img[ib] = b, a
            pre[a], pre[b] = ib, ia
        if tuple(img[1:]) == target:
            return i + 1
    return None


@dataclass(frozen=True)
class DeltaSearch:
    """Outcome of a δ-subword search.

    ``trace`` lists (move, resulting word) from ``start``; it is empty when
    ``start`` already contains δ and None when the search proved absence.
    """

    start: BraidWord
    trace: tuple[tuple[str, BraidWord], ...] | None
    explored: int
    window: int | None = None

    @property
    def found(self) -> bool:
        return self.trace is not None

    @property
    def exhaustive(self) -> bool:
        """True when absence was proved by emptying the frontier."""
        return self.trace is None

    @property
    def final(self) -> BraidWord | None:
        if self.trace is None:
            return None
        return self.trace[-1][1] if self.trace else self.start


def find_delta_subword(
    word: BraidWord,
    depth_budget: int = DEFAULT_DEPTH,
    breadth_budget: int = DEFAULT_BREADTH,
    cyclic: bool = False,
) -> DeltaSearch:
    """Breadth-first search over positive relation moves for a word with δ as a contiguous block.

    Moves are commutations and cup-product replacements, plus cyclic shifts
    when ``cyclic`` is set.  Absence is only claimed when the frontier
    empties; running out of depth or breadth raises BudgetExhausted.
    """
    if not word.is_positive():
        raise BraidError("find_delta_subword needs a BKL-positive word")
    pos = delta_window(word)
    if pos is not None:
        return DeltaSearch(word, (), 1, pos)
    parent: dict[tuple, tuple[tuple | None, str]] = {word.letters: (None, "")}
    frontier = deque([(word, 0)])
    truncated = False
    while frontier:
        w, depth = frontier.popleft()
        if depth >= depth_budget:
            truncated = True
            continue
        for mv in moves(w, positive_only=True, cyclic=cyclic):
            key = mv.result.letters
            if key in parent:
                continue
            parent[key] = (w.letters, mv.describe())
            pos = delta_window(mv.result)
            if pos is not None:
                trace = _trace(parent, key, word)
                _check_trace(word, trace)
                return DeltaSearch(word, trace, len(parent), pos)
            if len(parent) >= breadth_budget:
                raise BudgetExhausted(
                    f"explored {len(parent)} words without finding δ",
                    diagnostics={"explored": len(parent), "depth": depth},
                )
            frontier.append((mv.result, depth + 1))
    if truncated:
        raise BudgetExhausted(
            f"depth budget {depth_budget} reached", diagnostics={"explored": len(parent)}
        )
    return DeltaSearch(word, None, len(parent))


def _trace(parent, key, start):
    out = []
    while key != start.letters:
        prev, how = parent[key]
        out.append((how, BraidWord(start.strands, key)))
        key = prev
    return tuple(reversed(out))


def _check_trace(start, trace):
    prev = start
    for how, w in trace:
        if how.startswith("shift"):
            if w.letters != prev.letters[1:] + prev.letters[:1]:
                raise AssertionError(f"bad cyclic shift in trace: {how}")
        elif not words_equal(prev, w):
            raise AssertionError(f"trace step {how} changed the braid")
        prev = w


# ---------------------------------------------------------------------------
# adding crossings


def _chain(n: int, hi: int, lo: int) -> list[Letter]:
    """a(hi, hi-1) a(hi-1, hi-2) ... a(lo+1, lo), indices mod n, walking down from hi to lo."""
    out = []
    v = hi
    while (v - lo) % n != 0:
        w = (v - 2) % n + 1
        out.append(letter(v, w, n))
        v = w
    return out


def delta_through(s: int, r: int, n: int) -> tuple[list[Letter], list[Letter]]:
    """Chains (before, after) with before · a(s,r) · after = δ.

    before walks down from r-1 to s, after from s to r+1 (all mod n).
    """
    before = _chain(n, (r - 2) % n + 1, s)
    after = _chain(n, s, r % n + 1)
    return before, after


def add_fibering_crossings(
    word: BraidWord, require_nonsplit: bool = True
) -> tuple[BraidWord, list[BandGenerator]]:
    """Insert at most n-2 positive letters so that the normal form gains a δ.

    With normal form A_1 ... A_m and a(s,r) ending A_m, the result is
    A_1 ... A_(m-1) P (chain) a(s,r) (chain) where P a(s,r) = A_m and the
    chains complete a(s,r) to δ.  A strand touched by no letter violates the
    non-split hypothesis and raises SplitClosureError unless
    ``require_nonsplit`` is False.
    """
    n = word.strands
    if not word.is_positive():
        raise BraidError("add_fibering_crossings needs a BKL-positive word")
    used = {v for x in word.letters for v in (x.lower, x.upper)}
    missing = sorted(set(range(1, n + 1)) - used)
    if missing and require_nonsplit:
        raise SplitClosureError(f"strands {missing} are not touched by any letter")
    nf = normal_form(word)
    if nf.delta_power >= 1:
        return word, []
    if not nf.factors:
        raise BraidError("the identity braid has no last factor to complete")
    last = nf.factors[-1]
    g = last.generators()[0]
    s, r = g.upper, g.lower
    p = right_quotient(last, factor_of_generator(s, r, n))
    before, after = delta_through(s, r, n)
    letters = [x for f in nf.factors[:-1] for x in polygon_word(f).letters]
    letters += polygon_word(p).letters
    letters += before + [letter(s, r, n)] + after
    added = [x.generator for x in before + after]
    return BraidWord(n, tuple(letters)), added
