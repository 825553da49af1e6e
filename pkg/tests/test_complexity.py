from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from wordlab import DomainError, Word
from wordlab.complexity import (
    SuffixAutomaton,
    check_profile_theorems,
    check_sequence_shape,
    complexity_sequence,
    fast_counts,
    is_very_low_complexity,
    k_parameter,
    left_extensions,
    naive_counts,
    r_parameter,
    special_subwords,
    special_subwords_by_length,
    valence,
    valence_table,
)
from wordlab.debruijn import de_bruijn_word


def W(s: str, k: int | None = None) -> Word:
    return Word.from_str(s, k)


@st.composite
def words(draw, max_k: int = 4, max_len: int = 40) -> Word:
    k = draw(st.integers(2, max_k))
    letters = draw(st.lists(st.integers(0, k - 1), min_size=1, max_size=max_len))
    return Word(letters, k)


class TestProfileExamples:
    def test_paper_examples(self):
        assert complexity_sequence(W("01101")).sequence == (2, 3, 3, 2, 1)
        assert complexity_sequence(W("000000")).sequence == (1,) * 6
        assert complexity_sequence(W("101100")).sequence == (2, 4, 4, 3, 2, 1)

    def test_binary_length_three(self):
        for letters in product((0, 1), repeat=3):
            expected = (1, 1, 1) if len(set(letters)) == 1 else (2, 2, 1)
            assert complexity_sequence(Word(letters, 2)).sequence == expected

    def test_listing_of_101100(self):
        # 16 nonempty distinct subwords; the printed listing has "01011" where "01100" is meant
        w = W("101100")
        assert sum(complexity_sequence(w).sequence) == 16
        assert oracles.blocks(w.letters, 5) == {oracles.from_str("01100"), oracles.from_str("10110")}

    def test_parameters(self):
        p = complexity_sequence(W("101100"))
        assert (p.r_param, p.k_param) == (3, 2)
        assert (p.peak_index, p.peak_value) == (3, 4)
        assert (r_parameter(W("0000")), k_parameter(W("0000"))) == (1, 4)
        assert (r_parameter(W("0011")), k_parameter(W("0011"))) == (2, 2)
        assert (r_parameter(W("01101")), k_parameter(W("01101"))) == (2, 3)

    def test_single_letter(self):
        p = complexity_sequence(W("1"))
        assert (p.sequence, p.r_param, p.k_param) == ((1,), 1, 1)

    def test_one_based_access(self):
        p = complexity_sequence(W("01101"))
        assert p[0] == 1 and p[1] == 2 and p[5] == 1
        with pytest.raises(IndexError):
            p[6]

    def test_empty_word_rejected(self):
        with pytest.raises(DomainError):
            complexity_sequence(Word())
        with pytest.raises(DomainError):
            complexity_sequence(W("01"), engine="quantum")


class TestEngines:
    @given(words(max_k=6, max_len=120))
    def test_fast_matches_naive(self, w):
        assert fast_counts(w) == naive_counts(w)

    @given(words(max_k=4, max_len=25))
    def test_fast_matches_definition(self, w):
        assert tuple(fast_counts(w)) == oracles.profile(w.letters)

    @given(words(max_k=4, max_len=25))
    def test_parameters_match_definitions(self, w):
        assert r_parameter(w) == oracles.r_param(w.letters)
        assert k_parameter(w) == oracles.k_param(w.letters)

    def test_all_short_binary_words(self):
        for n in range(1, 11):
            for letters in product((0, 1), repeat=n):
                w = Word(letters, 2)
                p = complexity_sequence(w)
                assert p.sequence == oracles.profile(letters)
                assert p.r_param == oracles.r_param(letters)
                assert p.k_param == oracles.k_param(letters)

    def test_large_alphabet(self):
        rng = random.Random(5)
        w = Word([rng.randrange(300) for _ in range(400)], 300)
        assert fast_counts(w) == naive_counts(w)

    def test_automaton_size_is_linear(self):
        w = Word([random.Random(2).randrange(2) for _ in range(2000)], 2)
        assert len(SuffixAutomaton(w).length) < 2 * len(w)


class TestExtensions:
    def test_valence_examples(self):
        w = W("1211210121122")
        assert valence(w, W("121", 3)) == (2, frozenset({0, 1}))
        assert valence(w, W("122", 3)) == (0, frozenset())
        assert valence(W("0110"), W("0110")) == (0, frozenset())

    def test_left_extension_examples(self):
        assert left_extensions(W("101100"), W("0")) == {0, 1}
        assert left_extensions(W("01"), W("0")) == frozenset()
        assert left_extensions(W("00"), W("0")) == {0}

    def test_non_subword_rejected(self):
        with pytest.raises(DomainError):
            valence(W("0101"), W("11"))
        with pytest.raises(DomainError):
            left_extensions(W("0101"), W("11"))
        with pytest.raises(DomainError):
            valence(W("0101"), Word())

    @given(words(max_len=25), st.data())
    def test_extensions_match_oracle(self, w, data):
        i = data.draw(st.integers(0, len(w) - 1))
        j = data.draw(st.integers(i + 1, len(w)))
        u = w[i:j]
        count, letters = valence(w, u)
        assert letters == oracles.right_letters(w.letters, u.letters)
        assert count == len(letters)
        assert left_extensions(w, u) == oracles.left_letters(w.letters, u.letters)

    def test_special_examples(self):
        assert {str(u) for u in special_subwords(W("011010"))} == {"1", "01"}
        assert special_subwords(W("0000"), 1) == set()
        assert {str(u) for u in special_subwords(W("0001011100"), 2)} == {"00", "01", "10", "11"}
        with pytest.raises(DomainError):
            special_subwords(W("01"), 3)

    @given(words(max_len=25))
    def test_special_matches_oracle(self, w):
        assert {u.letters for u in special_subwords(w)} == oracles.special(w.letters)
        pooled = {u for us in special_subwords_by_length(w).values() for u in us}
        assert pooled == special_subwords(w)

    @given(words(max_len=40))
    def test_r_is_one_past_longest_special(self, w):
        longest = max((len(u) for u in special_subwords(w)), default=0)
        assert r_parameter(w) == longest + 1


class TestValenceTable:
    def test_examples(self):
        t = valence_table(W("101100"))
        assert t.s(1, 2) == 2
        n = 6
        assert t.s(n, 0) == 1 and all(t.s(n, i) == 0 for i in range(1, 3))
        t = valence_table(W("0000"))
        assert (t.s(2, 1), t.s(2, 0)) == (1, 0)
        assert t.s(1, 7) == 0

    @given(words(max_len=60))
    def test_invariants(self, w):
        t = valence_table(w)
        p = complexity_sequence(w)
        n_total, kw = len(w), p.k_param
        for n in range(1, n_total + 1):
            row = [t.s(n, i) for i in range(w.k + 1)]
            assert sum(row) == p[n]
            assert row[0] == (1 if n >= kw else 0)
            assert t.special_count(n) == len(special_subwords(w, n))
        for n in range(0, n_total):
            gain = sum((i - 1) * t.s(n, i) for i in range(2, w.k + 1))
            assert p[n + 1] == p[n] + gain - (1 if n >= kw else 0)
        if n_total >= 2:
            assert t.s(n_total - 1, 2) == 0
        assert t.s(n_total, 2) == 0
        assert sum(t.s(n, 0) for n in range(n_total + 1)) == n_total - kw + 1

    @given(words(max_len=20))
    def test_entries_match_oracle(self, w):
        t = valence_table(w)
        a = w.letters
        for n in range(1, len(w) + 1):
            for i in range(w.k + 1):
                direct = sum(1 for u in oracles.blocks(a, n) if len(oracles.right_letters(a, u)) == i)
                assert t.s(n, i) == direct


class TestTheorems:
    def test_example_reports(self):
        report = check_profile_theorems(W("101100"))
        assert report.passed
        p = complexity_sequence(W("101100"))
        assert p[p.r_param] == 6 - 3 + 1
        for n in (1, 2, 7):
            report = check_profile_theorems(Word((0,) * n, 2))
            assert report.passed
            assert r_parameter(Word((0,) * n, 2)) + k_parameter(Word((0,) * n, 2)) == n + 1

    def test_r_equal_one_does_not_force_constant_word(self):
        # periodic words such as (01)^m also have R = 1; they sit on the R + K <= N side
        for s in ("0101010101", "0111111111", "1000000000"):
            w = W(s)
            assert r_parameter(w) == 1
            assert r_parameter(w) + k_parameter(w) == len(w)
            assert check_profile_theorems(w).by_name()["r_plus_k"].passed

    @given(words(max_k=5, max_len=80))
    def test_random_words_pass(self, w):
        report = check_profile_theorems(w)
        assert report.passed, report.failures

    def test_shape_checks_catch_bad_sequences(self):
        def failed(seq, k=2):
            return {c.name for c in check_sequence_shape(seq, k) if not c.passed}

        assert "last_is_one" in failed((2, 2))
        assert "bounds" in failed((3, 2, 1))
        assert "unimodal_unit_descent" in failed((2, 3, 1))
        assert "unimodal_unit_descent" in failed((2, 1, 2, 1))
        assert "growth_by_k" in failed((2, 4, 9, 8, 7, 6, 5, 4, 3, 2, 1), k=2)
        assert failed((2, 3, 3, 2, 1)) == set()

    def test_report_json(self):
        payload = check_profile_theorems(W("0110")).to_json()
        assert payload["passed"] is True
        assert set(payload["checks"]) >= {"growth_inequality", "peak_at_r", "r_plus_k", "submultiplicative"}


class TestVeryLowComplexity:
    def test_examples(self):
        assert is_very_low_complexity(W("0011")) == (True, (2, 2))
        assert is_very_low_complexity(W("01101")) == (True, (2, 3))
        assert is_very_low_complexity(de_bruijn_word(2, 10))[0] is False

    @given(words(max_k=2, max_len=40))
    def test_pair_is_min_and_max_of_parameters(self, w):
        ok, pair = is_very_low_complexity(w)
        if ok:
            p = complexity_sequence(w)
            assert pair == (min(p.r_param, p.k_param), max(p.r_param, p.k_param))
