"""
Closure statistics and the Alexander polynomial.

The Alexander polynomial is computed from the reduced Burau matrices of the
Artin expansion, using

    Δ(t) ≐ (1 - t) / (1 - t^n) · det(I - ψ(β)).

It never touches the Garside code, so it can serve as an independent check
on fiberedness certificates.  All arithmetic is exact over the integers.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .braid import BraidWord, band_to_artin, underlying_permutation


class LaurentPolynomial:
    """Integer Laurent polynomial in t, stored as {exponent: coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[e] = acc.get(e, 0) + c
        self.terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def constant(cls, c: int) -> LaurentPolynomial:
        return cls({0: c})

    @classmethod
    def monomial(cls, c: int, e: int) -> LaurentPolynomial:
        return cls({e: c})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], low: int = 0) -> LaurentPolynomial:
        return cls({low + i: c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def low(self) -> int:
        return min(self.terms)

    def high(self) -> int:
        return max(self.terms)

    def span(self) -> int:
        """Difference between the top and bottom exponents (0 for the zero polynomial)."""
        return self.high() - self.low() if self.terms else 0

    def leading(self) -> int:
        return self.terms[self.high()] if self.terms else 0

    def coefficients(self) -> list[int]:
        """Coefficient list from the lowest to the highest exponent."""
        if not self.terms:
            return []
        lo = self.low()
        return [self.terms.get(e, 0) for e in range(lo, self.high() + 1)]

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1 or abs(next(iter(self.terms.values()))) != 1:
                raise ValueError("only unit monomials invert over the integers")
            (e, c), = self.terms.items()
            return LaurentPolynomial({e * k: c ** -k})
        out = LaurentPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by t^k."""
        return LaurentPolynomial({e + k: c for e, c in self.terms.items()})

    def substitute_inverse(self) -> LaurentPolynomial:
        """t -> 1/t."""
        return LaurentPolynomial({-e: c for e, c in self.terms.items()})

    def evaluate(self, x: int):
        from fractions import Fraction

        return sum(c * Fraction(x) ** e for e, c in self.terms.items())

    def exact_divide(self, other: LaurentPolynomial) -> LaurentPolynomial:
        """Quotient q with q·other == self; raises ArithmeticError if none exists in Z[t, 1/t]."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial()
        rem = dict(self.terms)
        dlo, dhi = other.low(), other.high()
        lead = other.terms[dhi]
        q: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top - dhi < self.low() - dlo:
                raise ArithmeticError("not exactly divisible")
            c, r = divmod(rem[top], lead)
            if r:
                raise ArithmeticError("not exactly divisible")
            e = top - dhi
            q[e] = c
            for de, dc in other.terms.items():
                k = de + e
                rem[k] = rem.get(k, 0) - c * dc
                if rem[k] == 0:
                    del rem[k]
        return LaurentPolynomial(q)

    def normalized(self) -> LaurentPolynomial:
        """Representative of the class up to ±t^k: lowest exponent 0, positive leading coefficient."""
        if not self.terms:
            return self
        out = self.shift(-self.low())
        return -out if out.leading() < 0 else out

    def equal_up_to_units(self, other: LaurentPolynomial) -> bool:
        return self.normalized() == _lift(other).normalized()

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({self})"


_TERM = re.compile(r"^(?:(\d+)\*?)?(t(?:\^(-?\d+))?)?$")


def parse_polynomial(text: str) -> LaurentPolynomial:
    """Inverse of ``str(LaurentPolynomial)``."""
    text = text.strip()
    if text == "0":
        return LaurentPolynomial()
    tokens = text.replace("- ", "-").replace("+ ", "+").split()
    terms = []
    for tok in tokens:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        m = _TERM.match(tok)
        if not m or not tok:
            raise ValueError(f"bad polynomial term {tok!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        if m.group(2):
            e = int(m.group(3)) if m.group(3) else 1
        else:
            e = 0
        terms.append((e, sign * coeff))
    return LaurentPolynomial(terms)


def _lift(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial.constant(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a Laurent polynomial")


T = LaurentPolynomial.monomial(1, 1)
ZERO = LaurentPolynomial()
ONE = LaurentPolynomial.constant(1)

Matrix = list[list[LaurentPolynomial]]


def _identity(m: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    m = len(a)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = ZERO
            for k in range(m):
                if a[i][k].terms and b[k][j].terms:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def _burau_generator(n: int, i: int, sign: int) -> Matrix:
    """Reduced Burau image of s_i^sign, size (n-1) x (n-1)."""
    m = n - 1
    M = _identity(m)
    k = i - 1  # row of s_i
    tinv = LaurentPolynomial.monomial(1, -1)
    if sign == 1:
        M[k][k] = LaurentPolynomial.monomial(-1, 1)
        if k > 0:
            M[k][k - 1] = T
        if k < m - 1:
            M[k][k + 1] = ONE
    else:
        M[k][k] = LaurentPolynomial.monomial(-1, -1)
        if k > 0:
            M[k][k - 1] = ONE
        if k < m - 1:
            M[k][k + 1] = tinv
    return M


def reduced_burau(word: BraidWord) -> Matrix:
    """Product of reduced Burau matrices of the Artin expansion, in word order."""
    n = word.strands
    M = _identity(n - 1)
    for x in band_to_artin(word).letters:
        M = _apply_generator(M, x.lower, x.sign, n)
    return M


def _apply_generator(M: Matrix, i: int, sign: int, n: int) -> Matrix:
    # right-multiplying by the generator matrix only mixes column i-1 with its neighbours
    G = _burau_generator(n, i, sign)
    m = n - 1
    k = i - 1
    cols = [c for c in (k - 1, k, k + 1) if 0 <= c < m]
    out = [row[:] for row in M]
    for r in range(m):
        for c in cols:
            acc = ZERO
            for j in cols:
                if M[r][j].terms and G[j][c].terms:
                    acc = acc + M[r][j] * G[j][c]
            out[r][c] = acc
    return out


def determinant(M: Matrix) -> LaurentPolynomial:
    """Fraction-free (Bareiss) determinant over Z[t, 1/t]."""
    m = len(M)
    if m == 0:
        return ONE
    A = [row[:] for row in M]
    sign = 1
    prev = ONE
    for k in range(m - 1):
        if A[k][k].is_zero():
            swap = next((r for r in range(k + 1, m) if not A[r][k].is_zero()), None)
            if swap is None:
                return ZERO
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_divide(prev)
        prev = A[k][k]
    return A[m - 1][m - 1] * sign


def alexander_polynomial(word: BraidWord) -> LaurentPolynomial:
    """Single-variable Alexander polynomial of the closure, normalized up to ±t^k."""
    n = word.strands
    M = reduced_burau(word)
    I_minus = [
        [(ONE if i == j else ZERO) - M[i][j] for j in range(n - 1)] for i in range(n - 1)
    ]
    det = determinant(I_minus)
    cyclotomic = LaurentPolynomial({e: 1 for e in range(n)})  # (1 - t^n) / (1 - t)
    return det.exact_divide(cyclotomic).normalized()


# ---------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class ClosureSummary:
    strands: int
    letter_count: int
    components: int
    surface_components: int
    euler_characteristic: int
    first_betti: int
    genus: int

    def to_text(self) -> str:
        return "\n".join(
            f"{k}: {getattr(self, k)}"
            for k in (
                "strands",
                "letter_count",
                "components",
                "surface_components",
                "euler_characteristic",
                "first_betti",
                "genus",
            )
        ) + "\n"


def _band_graph_components(word: BraidWord) -> list[set[int]]:
    parent = list(range(word.strands + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x in word.letters:
        a, b = find(x.lower), find(x.upper)
        if a != b:
            parent[a] = b
    groups: dict[int, set[int]] = {}
    for v in range(1, word.strands + 1):
        groups.setdefault(find(v), set()).add(v)
    return sorted(groups.values(), key=min)


def closure_summary(word: BraidWord) -> ClosureSummary:
    """Counts for the closure and its Bennequin surface (one disk per strand, one band per letter).

    ``genus`` sums the genera of the surface pieces: a piece with Euler
    characteristic χ and b boundary circles has genus (2 - χ - b) / 2.
    """
    n, c = word.strands, len(word)
    cycles = underlying_permutation(word).cycles()
    pieces = _band_graph_components(word)
    chi = n - c
    genus = 0
    for piece in pieces:
        bands = sum(1 for x in word.letters if x.lower in piece)
        boundary = sum(1 for cyc in cycles if cyc[0] in piece)
        genus += (2 - (len(piece) - bands) - boundary) // 2
    return ClosureSummary(n, c, len(cycles), len(pieces), chi, len(pieces) - chi, genus)


@dataclass(frozen=True)
class GenusBound:
    first_betti: int
    is_minimal_genus_claim: bool


def bennequin_genus_bound(word: BraidWord) -> GenusBound:
    """First Betti number of the Bennequin surface; minimal genus is claimed for positive words only."""
    return GenusBound(closure_summary(word).first_betti, word.is_positive())


class MonicVerdict(enum.Enum):
    NOT_FIBERED = "NotFibered"
    INCONCLUSIVE = "Inconclusive"


def monic_obstruction(word: BraidWord) -> MonicVerdict:
    """A non-zero, non-monic Alexander polynomial rules out a fibration."""
    delta = alexander_polynomial(word)
    if delta.is_zero() or abs(delta.leading()) == 1:
        return MonicVerdict.INCONCLUSIVE
    return MonicVerdict.NOT_FIBERED
