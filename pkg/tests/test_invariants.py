from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import alexander_oracle, normalize_terms, random_word, sympy_to_terms, words
from dualgarside.braid import BraidWord, conjugate, cyclic_shift, parse_word
from dualgarside.garside import normal_form
from dualgarside.invariants import (
    LaurentPolynomial,
    MonicVerdict,
    alexander_polynomial,
    bennequin_genus_bound,
    closure_summary,
    determinant,
    monic_obstruction,
    parse_polynomial,
    reduced_burau,
)
from dualgarside.relations import random_relation

P = LaurentPolynomial


@st.composite
def laurent(draw):
    low = draw(st.integers(-4, 4))
    coeffs = draw(st.lists(st.integers(-5, 5), max_size=5))
    return P.from_coefficients(coeffs, low)


class TestLaurent:
    def test_str(self):
        assert str(P.from_coefficients([1, -1, 1])) == "1 - t + t^2"
        assert str(P.monomial(2, 3)) == "2*t^3"
        assert str(P()) == "0"
        assert str(P({-1: 1})) == "t^-1"

    @given(laurent())
    def test_parse_round_trip(self, p):
        assert parse_polynomial(str(p)) == p

    @given(laurent(), laurent(), laurent())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - a == P()

    @given(laurent(), st.integers(-3, 3))
    def test_evaluate_is_a_homomorphism(self, a, x):
        if x == 0:
            return
        assert (a * a).evaluate(x) == a.evaluate(x) ** 2
        assert (a.substitute_inverse()).evaluate(x) == a.evaluate(Fraction(1, x))

    @given(laurent(), laurent())
    def test_exact_divide(self, a, b):
        if b.is_zero():
            return
        assert (a * b).exact_divide(b) == a

    def test_inexact_divide_raises(self):
        with pytest.raises(ArithmeticError):
            P.from_coefficients([1, 0, 1]).exact_divide(P.from_coefficients([1, 1]))

    def test_units(self):
        p = P.from_coefficients([1, -3, 1])
        assert (-p.shift(5)).equal_up_to_units(p)
        assert (-p.shift(5)).normalized() == p

    def test_negative_power(self):
        assert P.monomial(1, 2) ** -2 == P.monomial(1, -4)


class TestBurau:
    def test_shape(self):
        M = reduced_burau(parse_word("s1 s2 s3", 4))
        assert len(M) == 3 and all(len(row) == 3 for row in M)

    def test_inverse(self):
        w = parse_word("s1 s2^-1 s3 s1", 4)
        from dualgarside.braid import invert

        M = reduced_burau(w + invert(w))
        assert all(M[i][j] == (P.constant(1) if i == j else P()) for i in range(3) for j in range(3))

    def test_determinant_of_diagonal(self):
        t = P.monomial(1, 1)
        assert determinant([[t, P()], [P(), t]]) == t * t


class TestAlexander:
    @pytest.mark.parametrize(
        "text,n,expected",
        [
            ("", 2, "0"),
            ("s1", 2, "1"),
            ("s1^3", 2, "1 - t + t^2"),
            ("s1^5", 2, "1 - t + t^2 - t^3 + t^4"),
            ("s1 s2^-1 s1 s2^-1", 3, "1 - 3*t + t^2"),
            ("s1 s1 s2 s2", 3, "1 - 2*t + t^2"),
        ],
    )
    def test_known(self, text, n, expected):
        assert str(alexander_polynomial(parse_word(text, n))) == expected

    @settings(max_examples=40)
    @given(words(max_n=4, max_len=5))
    def test_against_characteristic_polynomial_oracle(self, w):
        ours = alexander_polynomial(w)
        theirs = normalize_terms(sympy_to_terms(alexander_oracle(w)))
        candidates = {P(theirs).normalized(), P(theirs).substitute_inverse().normalized()}
        assert ours in candidates

    @given(words(max_n=5, max_len=8), st.data())
    def test_conjugation_and_shift(self, w, data):
        ref = alexander_polynomial(w)
        k = data.draw(st.integers(0, 10))
        assert alexander_polynomial(cyclic_shift(w, k)).equal_up_to_units(ref)
        g = data.draw(words(n=w.strands, max_len=4))
        assert alexander_polynomial(conjugate(w, g)).equal_up_to_units(ref)

    @given(words(max_n=5, max_len=8))
    def test_relations(self, w):
        rng = random.Random(7)
        v = w
        for _ in range(5):
            v = random_relation(v, rng)
        assert alexander_polynomial(v) == alexander_polynomial(w)
        assert alexander_polynomial(normal_form(w).to_word()) == alexander_polynomial(w)

    def test_knot_symmetry(self, rng):
        checked = 0
        while checked < 100:
            w = random_word(rng, rng.randint(2, 5), rng.randint(1, 10))
            if closure_summary(w).components != 1:
                continue
            checked += 1
            d = alexander_polynomial(w)
            assert d.substitute_inverse().equal_up_to_units(d)
            assert abs(d.evaluate(1)) == 1


class TestClosureSummary:
    def test_delta(self):
        s = closure_summary(BraidWord.delta(3))
        assert (s.components, s.euler_characteristic, s.surface_components, s.first_betti) == (1, 1, 1, 0)

    def test_four_letter_six_strand_word(self):
        s = closure_summary(parse_word("a(6,1) a(6,3) a(5,1) a(5,2)", 6))
        assert (s.components, s.euler_characteristic, s.surface_components, s.first_betti) == (2, 2, 2, 0)

    def test_trefoil(self):
        s = closure_summary(parse_word("s1^3", 2))
        assert (s.components, s.euler_characteristic, s.first_betti, s.genus) == (1, -1, 2, 1)

    def test_beta3(self):
        s = closure_summary(parse_word("a(3,1) a(4,2) a(3,1) a(4,2)", 4))
        assert (s.components, s.euler_characteristic) == (4, 0)

    def test_text(self):
        text = closure_summary(parse_word("s1^3", 2)).to_text()
        assert "first_betti: 2" in text.splitlines()

    @given(words(max_n=7, max_len=12))
    def test_euler_characteristic(self, w):
        s = closure_summary(w)
        assert s.euler_characteristic == w.strands - len(w)
        assert s.first_betti == s.surface_components - s.euler_characteristic

    @given(words(max_n=6, max_len=10))
    def test_invariant_under_moves(self, w):
        from dualgarside.relations import moves

        s = closure_summary(w)
        for mv in moves(w):
            t = closure_summary(mv.result)
            assert (t.components, t.euler_characteristic) == (s.components, s.euler_characteristic)

    @given(words(max_n=6, max_len=10, positive=True))
    def test_square_cancellation(self, w):
        from dualgarside.fibering import cancel_square

        for i in range(1, len(w)):
            if w.letters[i - 1] == w.letters[i]:
                v = cancel_square(w, i)
                a, b = closure_summary(w), closure_summary(v)
                # dropping one letter of a square changes the permutation by a transposition
                assert abs(b.components - a.components) == 1
                assert b.euler_characteristic == a.euler_characteristic + 1

    @given(words(max_n=6, max_len=10))
    def test_genus_of_knots(self, w):
        s = closure_summary(w)
        if s.components == 1 and s.surface_components == 1:
            assert 2 * s.genus == 1 - s.euler_characteristic


class TestGenusBoundAndMonic:
    def test_bound(self):
        assert bennequin_genus_bound(parse_word("s1^3", 2)).first_betti == 2
        assert bennequin_genus_bound(parse_word("s1^3", 2)).is_minimal_genus_claim
        assert not bennequin_genus_bound(parse_word("s1 s2^-1", 3)).is_minimal_genus_claim
        b = bennequin_genus_bound(BraidWord.identity(3))
        assert (b.first_betti, b.is_minimal_genus_claim) == (0, True)

    def test_monic(self):
        assert monic_obstruction(parse_word("s1^3", 2)) is MonicVerdict.INCONCLUSIVE
        assert monic_obstruction(parse_word("s1^5", 2)) is MonicVerdict.INCONCLUSIVE
        assert monic_obstruction(BraidWord.identity(2)) is MonicVerdict.INCONCLUSIVE

    def test_finds_non_monic(self, rng):
        """Search short positive band words for a closure with leading coefficient 2."""
        for _ in range(5000):
            n = rng.randint(3, 5)
            w = random_word(rng, n, rng.randint(2, 8), positive=True)
            d = alexander_polynomial(w)
            if not d.is_zero() and abs(d.leading()) == 2:
                assert monic_obstruction(w) is MonicVerdict.NOT_FIBERED
                assert normal_form(w).delta_power == 0
                return
        pytest.fail("no word with leading coefficient 2 found")


@settings(max_examples=150)
@given(st.integers(2, 5), st.integers(1, 2), st.data())
def test_fibered_knots_have_monic_alexander_of_full_span(n, k, data):
    from dualgarside.fibering import fiberedness_certificate, verify_certificate

    p = data.draw(words(n=n, max_len=8, positive=True))
    w = BraidWord.delta(n, k) + p
    s = closure_summary(w)
    if s.components != 1:
        return
    assert verify_certificate(fiberedness_certificate(w))
    d = alexander_polynomial(w)
    assert abs(d.leading()) == 1
    assert d.span() == s.first_betti
