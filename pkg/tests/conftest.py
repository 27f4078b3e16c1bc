"""Shared strategies and independent oracles.

The oracles deliberately avoid the library's Garside code:

* ``burau_matrix`` evaluates the unreduced Burau representation with sympy
  from a hand-written Artin expansion of band letters.  It is faithful for
  n <= 3, so matrix equality decides the word problem there.
* ``positive_class`` enumerates every positive word equal to a given one by
  breadth-first closure under the monoid relations, written out here from
  scratch.  Positive words are equal in the group iff they lie in one class.
* ``alexander_oracle`` gets the Alexander polynomial from the characteristic
  polynomial of the unreduced Burau matrix.
"""

from __future__ import annotations

import random
from functools import lru_cache

import pytest
import sympy
from hypothesis import settings, strategies as st

from dualgarside.braid import BraidWord, letter

T = sympy.Symbol("t")

settings.register_profile("default", deadline=None)
settings.load_profile("default")


# ---------------------------------------------------------------------------
# random words


def random_word(rng: random.Random, n: int, length: int, positive: bool = False) -> BraidWord:
    out = []
    for _ in range(length):
        t = rng.randint(2, n)
        s = rng.randint(1, t - 1)
        sign = 1 if positive else rng.choice((1, -1))
        out.append(letter(t, s, n, sign))
    return BraidWord(n, tuple(out))


@st.composite
def words(draw, min_n=2, max_n=5, max_len=8, positive=False, n=None):
    n = n if n is not None else draw(st.integers(min_n, max_n))
    pairs = st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1])
    sign = st.just(1) if positive else st.sampled_from((1, -1))
    letters = draw(st.lists(st.tuples(pairs, sign), max_size=max_len))
    return BraidWord(n, tuple(letter(max(p), min(p), n, e) for p, e in letters))


@st.composite
def word_pairs(draw, max_n=5, max_len=6, positive=False):
    n = draw(st.integers(2, max_n))
    return (
        draw(words(n=n, max_len=max_len, positive=positive)),
        draw(words(n=n, max_len=max_len, positive=positive)),
    )


# ---------------------------------------------------------------------------
# Burau oracle


def _sigma(n: int, i: int, sign: int) -> sympy.Matrix:
    M = sympy.eye(n)
    block = sympy.Matrix([[1 - T, T], [1, 0]])
    if sign < 0:
        block = block.inv()
    M[i - 1 : i + 1, i - 1 : i + 1] = block
    return M


def artin_expansion(t: int, s: int, sign: int) -> list[tuple[int, int]]:
    """a(t,s) = (s_{t-1} ... s_{s+1}) s_s (s_{s+1}^-1 ... s_{t-1}^-1)."""
    down = [(i, 1) for i in range(t - 1, s, -1)]
    word = down + [(s, 1)] + [(i, -1) for i, _ in reversed(down)]
    if sign < 0:
        word = [(i, -e) for i, e in reversed(word)]
    return word


def burau_matrix(word: BraidWord) -> sympy.Matrix:
    n = word.strands
    M = sympy.eye(n)
    for x in word.letters:
        for i, e in artin_expansion(x.upper, x.lower, x.sign):
            M = M * _sigma(n, i, e)
    return M.applyfunc(sympy.cancel)


def burau_equal(u: BraidWord, v: BraidWord) -> bool:
    diff = burau_matrix(u) - burau_matrix(v)
    return all(sympy.cancel(e) == 0 for e in diff)


def alexander_oracle(word: BraidWord) -> sympy.Expr:
    """det(I - reduced Burau) / (1 + t + ... + t^(n-1)), via the unreduced characteristic polynomial."""
    n = word.strands
    x = sympy.Symbol("x")
    B = burau_matrix(word)
    char = sympy.factor((x * sympy.eye(n) - B).det())
    reduced = sympy.cancel(char / (x - 1))
    value = sympy.cancel(reduced.subs(x, 1) * (-1) ** (n - 1))
    return sympy.cancel(value / sum(T**k for k in range(n)))


def sympy_to_terms(expr) -> dict[int, int]:
    """Laurent polynomial in t as {exponent: coefficient}; fails if not a Laurent polynomial."""
    expr = sympy.cancel(sympy.together(expr))
    num, den = sympy.fraction(expr)
    den = sympy.Poly(den, T)
    assert len(den.terms()) == 1, f"not a Laurent polynomial: {expr}"
    (dexp,), dcoef = den.terms()[0]
    terms = {}
    for (e,), c in sympy.Poly(num, T).terms():
        q = sympy.Rational(c, dcoef)
        assert q.is_integer
        terms[e - dexp] = int(q)
    return terms


def normalize_terms(terms: dict[int, int]) -> dict[int, int]:
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        return {}
    low = min(terms)
    sign = 1 if terms[max(terms)] > 0 else -1
    return {e - low: sign * c for e, c in terms.items()}


# ---------------------------------------------------------------------------
# positive class oracle


def _monoid_neighbours(key: tuple[tuple[int, int], ...]):
    """Words one relation away, on (t, s) pairs with t > s."""
    for i in range(len(key) - 1):
        (a, b), (c, d) = key[i], key[i + 1]
        A, B = {a, b}, {c, d}
        if not (A & B) and not (b < d < a < c or d < b < c < a):
            yield key[:i] + (key[i + 1], key[i]) + key[i + 2 :]
        elif len(A & B) == 1:
            r, s, t = sorted(A | B)
            triple = [((t, s), (s, r)), ((t, r), (t, s)), ((s, r), (t, r))]
            if (key[i], key[i + 1]) in triple:
                for p in triple:
                    if p != (key[i], key[i + 1]):
                        yield key[:i] + p + key[i + 2 :]


@lru_cache(maxsize=4096)
def _class_of(key: tuple[tuple[int, int], ...]) -> frozenset:
    seen = {key}
    stack = [key]
    while stack:
        w = stack.pop()
        for v in _monoid_neighbours(w):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


def positive_class(word: BraidWord) -> frozenset:
    assert word.is_positive()
    return _class_of(tuple((x.upper, x.lower) for x in word.letters))


def delta_key(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, i - 1) for i in range(n, 1, -1))


def oracle_infimum(word: BraidWord) -> int:
    """Largest k such that some equal positive word starts with k copies of the δ word."""
    n = word.strands
    cls = positive_class(word)
    d = delta_key(n)
    k = 0
    while any(w[: (k + 1) * (n - 1)] == d * (k + 1) for w in cls):
        k += 1
    return k


@pytest.fixture
def rng():
    return random.Random(20260914)


# ---------------------------------------------------------------------------
# acceptance report


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok, seconds = results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s) {title}")
