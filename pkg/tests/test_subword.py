import itertools
import threading

import pytest
from hypothesis import given, settings, strategies as st

from exonum.errors import CapacityError, DomainError
from exonum.numeration import BASE2, FIBONACCI, QUADRIBONACCI, TRIBONACCI, base_k
from exonum.subword import (
    SubwordCounter,
    all_subwords,
    count_subwords_in_language,
    distinct_subwords_in_language,
    s,
    s_F,
    s_generalized,
    word_binomial,
)

binary_words = st.lists(st.integers(0, 1), max_size=10).map(tuple)


def _occurrences(u, v):
    return sum(1 for idx in itertools.combinations(range(len(u)), len(v)) if tuple(u[i] for i in idx) == v)


def _subword_set(u):
    return {tuple(u[i] for i in idx) for L in range(len(u) + 1) for idx in itertools.combinations(range(len(u)), L)}


@given(binary_words, st.lists(st.integers(0, 1), max_size=5).map(tuple))
def test_word_binomial_counts_occurrences(u, v):
    assert word_binomial(u, v) == _occurrences(u, v)


def test_word_binomial_small_cases():
    assert word_binomial("101", "1") == 2
    assert word_binomial("1010", "10") == 3
    assert word_binomial("", "") == 1
    assert word_binomial("1", "11") == 0


@given(binary_words, binary_words)
def test_binomial_monotone_in_the_long_word(u, extra):
    # appending letters to u never removes occurrences
    for v in [(), (1,), (1, 0), (0, 1, 1)]:
        assert word_binomial(u + extra, v) >= word_binomial(u, v)


@given(binary_words)
def test_all_subwords(u):
    assert all_subwords(u) == _subword_set(u)


@settings(max_examples=150)
@given(st.sampled_from([BASE2, base_k(3), FIBONACCI, TRIBONACCI, QUADRIBONACCI]), st.integers(0, 5000))
def test_automaton_matches_enumeration(system, n):
    word = system.rep(n)
    assert count_subwords_in_language(word, system) == distinct_subwords_in_language(word, system)


@given(binary_words)
def test_automaton_on_arbitrary_words(u):
    assert count_subwords_in_language(u, FIBONACCI) == sum(1 for w in _subword_set(u) if FIBONACCI.in_language(w))


def test_subwords_of_110():
    # epsilon, 1, 10, 11, 110
    assert distinct_subwords_in_language("110", BASE2) == 5
    assert s(7) == 5


def test_first_values():
    # differences of the summatory lists
    A_list = [0, 1, 3, 6, 9, 13, 18, 23, 27, 32, 39, 47, 54, 61, 69, 76, 81, 87, 96, 107, 117]
    AF_list = [1, 3, 6, 10, 14, 19, 25, 31, 37, 45, 54, 62, 70, 77, 87, 99, 111, 123, 133, 145]
    assert [s(n) for n in range(21)] == [A_list[0]] + [b - a for a, b in zip(A_list, A_list[1:])]
    assert [s_F(n) for n in range(20)] == [AF_list[0]] + [b - a for a, b in zip(AF_list, AF_list[1:])]


@pytest.mark.parametrize("method", ["oracle", "automaton"])
def test_recurrences_against_exact_counters(method):
    for n in range(1, 600):
        assert s(n) == s(n, method)
        assert s_F(n) == s_F(n, method)


@given(st.integers(1, 10**6))
def test_s_grows_at_most_linearly_in_the_word(n):
    # at most one new subword per letter per existing one: s(n) <= 2**len
    assert 1 <= s(n) <= 2 ** max(1, (n - 1).bit_length())


def test_oracle_cap():
    with pytest.raises(CapacityError):
        distinct_subwords_in_language("1" * 23, BASE2)
    assert distinct_subwords_in_language("1" * 23, BASE2, cap=30) == 24
    with pytest.raises(CapacityError):
        s_generalized(base_k(3), 3**25, "oracle")
    assert s_generalized(base_k(3), 3**25, "automaton") > 0


def test_domain_errors():
    with pytest.raises(DomainError):
        s(-1)
    with pytest.raises(DomainError):
        s_F(3, "magic")
    with pytest.raises(DomainError):
        SubwordCounter(TRIBONACCI, "recurrence")


def test_generalized_conventions():
    assert s_generalized(BASE2, 0) == 0
    assert [s_generalized(BASE2, n) for n in range(1, 50)] == [s(n) for n in range(1, 50)]
    assert [s_generalized(FIBONACCI, n) for n in range(50)] == [s_F(n) for n in range(50)]
    assert s_generalized(FIBONACCI, 5, shifted=True) == s_F(4)


def test_counter_is_thread_safe():
    counter = SubwordCounter(TRIBONACCI, "automaton")
    results = []

    def work():
        results.append(counter.values(0, 300))

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
    assert results[0][:6] == [1, 2, 3, 3, 4, 5]
