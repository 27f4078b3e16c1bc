from __future__ import annotations

import dataclasses
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import oracle_infimum, random_word, words
from dualgarside.braid import BraidWord, exponent_sum, letter, parse_word
from dualgarside.errors import BraidError, BudgetExhausted, SplitClosureError
from dualgarside.fibering import (
    CertificateStep,
    DeltaWitness,
    FiberednessCertificate,
    add_fibering_crossings,
    cancel_square,
    check_delta_witness,
    delta_through,
    delta_window,
    fiberedness_certificate,
    find_delta_subword,
    verify_certificate,
    yn_bandword,
    yn_delta_criterion,
)
from dualgarside.garside import infimum, normal_form, words_equal


class TestCancelSquare:
    def test_examples(self):
        assert cancel_square(parse_word("a(3,2) a(2,1) a(2,1)", 3), 2) == parse_word("a(3,2) a(2,1)", 3)
        assert cancel_square(parse_word("a(2,1) a(2,1)", 2), 1) == parse_word("a(2,1)", 2)

    def test_not_a_square(self):
        with pytest.raises(BraidError):
            cancel_square(parse_word("a(2,1) a(3,2)", 3), 1)
        with pytest.raises(BraidError):
            cancel_square(parse_word("s1^-1 s1^-1", 2), 1)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            cancel_square(parse_word("s1 s1", 2), 2)


class TestCertificates:
    def test_delta_times_chord(self):
        w = BraidWord.delta(3) + parse_word("a(3,1)", 3)
        cert = fiberedness_certificate(w)
        assert len(cert.steps) == 1
        step = cert.steps[0]
        assert step.expansion == parse_word("a(2,1) a(3,1) a(3,1)", 3)
        assert step.reduced == parse_word("a(2,1) a(3,1)", 3)
        assert cert.delta_power_at_end == 1
        assert verify_certificate(cert)

    def test_three_letter_word_terminal_line(self):
        cert = fiberedness_certificate(parse_word("a(3,2) a(2,1) a(3,1)", 3))
        assert cert.to_text().splitlines()[-1] == "TERMINAL D^1"

    def test_delta_power(self):
        cert = fiberedness_certificate(BraidWord.delta(4, 2))
        assert cert.steps == () and cert.delta_power_at_end == 2
        assert verify_certificate(cert)

    def test_not_applicable(self):
        assert fiberedness_certificate(parse_word("a(3,1) a(4,2) a(3,1) a(4,2)", 4)) is None
        assert fiberedness_certificate(parse_word("s1 s2", 3)) is None

    def test_mixed_signs(self):
        w = parse_word("a(3,2) a(2,1) a(3,2) a(2,1) a(3,1)^-1", 3)
        cert = fiberedness_certificate(w)
        assert cert is not None and verify_certificate(cert)

    def test_tampered(self):
        cert = fiberedness_certificate(parse_word("s1 s2 s1 s2 s1", 3))
        step = cert.steps[0]
        bad = dataclasses.replace(step, reduced=step.reduced + parse_word("s1", 3))
        assert not verify_certificate(dataclasses.replace(cert, steps=(bad,) + cert.steps[1:]))
        moved = dataclasses.replace(step, position=step.position + 1)
        assert not verify_certificate(dataclasses.replace(cert, steps=(moved,) + cert.steps[1:]))

    def test_zero_power_terminal_rejected(self):
        w = BraidWord.identity(3)
        assert not verify_certificate(FiberednessCertificate(w, (), w, 0))

    def test_text_round_trip(self):
        cert = fiberedness_certificate(parse_word("s1 s2 s1 s2 s1 s3 s2 s1 s3", 4))
        again = FiberednessCertificate.from_text(cert.to_text())
        assert again == cert
        assert verify_certificate(again)

    def test_text_rejects_garbage(self):
        with pytest.raises(BraidError):
            FiberednessCertificate.from_text("EXPAND a(2,1) @1 -> a(2,1)\nTERMINAL D^1\n")

    @given(st.integers(2, 6), st.integers(1, 3), st.data())
    def test_random_delta_power_times_positive(self, n, k, data):
        length = data.draw(st.integers(0, 10))
        p = data.draw(words(n=n, max_len=length, positive=True))
        w = BraidWord.delta(n, k) + p
        cert = fiberedness_certificate(w)
        nf = normal_form(w)
        assert len(cert.steps) == sum(f.length for f in nf.factors)
        assert len(cert.steps) == len(p) - (nf.delta_power - k) * (n - 1)
        assert verify_certificate(cert)


class TestYnCriterion:
    def test_increasing_run(self):
        w = yn_delta_criterion((1, 2, 3), 3)
        assert (w.k, w.L, w.P, w.U) == (2, 1, 2, 3)
        assert w.Q == {1: 1, 2: 2, 3: 3}

    def test_absent(self):
        assert yn_delta_criterion((3, 2), 3) is None

    def test_repeated_values(self):
        w = yn_delta_criterion((1, 3, 2, 3), 3)
        assert (w.k, w.L, w.P, w.U) == (2, 1, 3, 4)
        assert w.Q == {1: 1, 2: 3, 3: 4}
        # the witness with k = 1, L = P = 1, U = 2 breaks the upper condition at T = 2
        assert not check_delta_witness((1, 3, 2, 3), 3, DeltaWitness(1, 1, 1, 2, {1: 1, 2: 3, 3: 2}))

    def test_bad_values(self):
        with pytest.raises(BraidError):
            yn_delta_criterion((0, 2), 3)

    def test_bandword_skips_empty_letters(self):
        assert yn_bandword((1, 3, 1, 2), 3) == parse_word("a(3,1) a(2,1)", 3)

    @pytest.mark.parametrize("n", [3, 4])
    def test_witnesses_check(self, n):
        for M in range(1, 6):
            for r in itertools.product(range(1, n + 1), repeat=M):
                w = yn_delta_criterion(r, n)
                if w is not None:
                    assert check_delta_witness(r, n, w)

    def test_exhaustive_by_definition(self):
        """The search finds a witness iff one exists among all index choices."""
        n = 3
        for M in range(1, 5):
            for r in itertools.product(range(1, n + 1), repeat=M):
                exists = False
                for k, L, P, U in itertools.product(range(1, n), *[range(1, M + 1)] * 3):
                    for qs in itertools.product(range(1, M + 1), repeat=n):
                        if check_delta_witness(r, n, DeltaWitness(k, L, P, U, dict(zip(range(1, n + 1), qs)))):
                            exists = True
                            break
                    if exists:
                        break
                assert (yn_delta_criterion(r, n) is not None) == exists


class TestFindDelta:
    def test_already_contains(self):
        w = BraidWord.delta(3) + parse_word("a(2,1)", 3)
        res = find_delta_subword(w)
        assert res.found and res.trace == () and res.final == w and res.window == 1

    def test_delta_at_the_end(self):
        res = find_delta_subword(parse_word("a(2,1) a(3,2) a(2,1)", 3))
        assert res.found and res.trace == () and res.window == 2

    def test_needs_moves(self):
        w = parse_word("a(4,1) a(3,2) a(4,3) a(3,2)", 4)
        res = find_delta_subword(w)
        assert res.found and [how for how, _ in res.trace] == ["commute@1"]
        assert delta_window(res.final) is not None
        assert words_equal(res.final, w)

    def test_beta3_absent(self):
        res = find_delta_subword(parse_word("a(3,1) a(4,2) a(3,1) a(4,2)", 4))
        assert not res.found and res.exhaustive

    def test_budget(self):
        w = parse_word("a(2,1) a(4,3) a(2,1) a(4,3) a(2,1) a(4,3)", 5)
        with pytest.raises(BudgetExhausted):
            find_delta_subword(w, depth_budget=1)
        with pytest.raises(BudgetExhausted):
            find_delta_subword(w, breadth_budget=2)

    def test_rejects_negative(self):
        with pytest.raises(BraidError):
            find_delta_subword(parse_word("s1^-1", 2))

    @settings(max_examples=80)
    @given(words(min_n=3, max_n=4, max_len=6, positive=True))
    def test_agrees_with_infimum(self, w):
        """A positive braid equals a word containing δ iff δ divides it."""
        res = find_delta_subword(w)
        assert res.found == (oracle_infimum(w) >= 1)
        if res.found:
            assert words_equal(res.final, w)


class TestAddCrossings:
    def test_delta_through(self):
        for n in range(2, 8):
            for s in range(1, n + 1):
                for r in range(1, n + 1):
                    if r == s:
                        continue
                    before, after = delta_through(s, r, n)
                    word = BraidWord(n, tuple(before) + (letter(s, r, n),) + tuple(after))
                    assert words_equal(word, BraidWord.delta(n))

    def test_chord_13(self):
        w = parse_word("a(3,1)", 3)
        res, added = add_fibering_crossings(w, require_nonsplit=False)
        assert len(added) == 1 and infimum(res) >= 1

    def test_unchanged_when_fibered(self):
        w = BraidWord.delta(4, 2)
        assert add_fibering_crossings(w) == (w, [])

    def test_split(self):
        with pytest.raises(SplitClosureError):
            add_fibering_crossings(parse_word("a(2,1)", 3))

    def test_negative(self):
        with pytest.raises(BraidError):
            add_fibering_crossings(parse_word("s1^-1 s2", 3))

    def test_random(self, rng):
        done = 0
        while done < 200:
            n = rng.randint(2, 6)
            w = random_word(rng, n, rng.randint(1, 10), positive=True)
            try:
                res, added = add_fibering_crossings(w)
            except SplitClosureError:
                continue
            if infimum(w) != 0:
                continue
            done += 1
            assert infimum(res) >= 1
            assert exponent_sum(res) - exponent_sum(w) == len(added) <= n - 2
            assert res.is_positive()
