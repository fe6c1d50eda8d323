import itertools
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from exonum.errors import DomainError, PrecisionError
from exonum.numeration import (
    BASE2,
    FIBONACCI,
    PHI,
    PHI_INV,
    QUADRIBONACCI,
    TRIBONACCI,
    DigitWord,
    QSqrt5,
    RealCoordinate,
    base_k,
    golden_word_value,
    logF,
    real_expansion,
    relpos2,
    relposF,
    system_by_name,
    val,
)

SYSTEMS = [BASE2, base_k(3), base_k(7), FIBONACCI, TRIBONACCI, QUADRIBONACCI]


def _words_in_genealogical_order(system, max_len):
    """All normal words up to ``max_len`` sorted by length then lexicographically."""
    out = [()]
    for L in range(1, max_len + 1):
        for w in itertools.product(range(system.alphabet_size), repeat=L):
            if w[0] != 0 and system.in_language(w):
                out.append(w)
    return out


@pytest.mark.parametrize("system", [BASE2, base_k(3), FIBONACCI, TRIBONACCI])
def test_rep_matches_genealogical_enumeration(system):
    # the n-th normal word in radix order represents n
    words = _words_in_genealogical_order(system, 9)
    for n, w in enumerate(words):
        assert system.rep(n).digits == w


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SYSTEMS), st.integers(0, 10**12))
def test_rep_val_round_trip(system, n):
    word = system.rep(n)
    assert word.is_normal
    assert word.value == n
    assert system.length(n) == len(word)


@given(st.integers(1, 10**9))
def test_zeckendorf_has_no_adjacent_ones(n):
    d = FIBONACCI.rep(n).digits
    assert d[0] == 1
    assert all(not (a and b) for a, b in zip(d, d[1:]))


def test_known_representations():
    assert str(FIBONACCI.rep(163)) == "10000101001"
    assert str(FIBONACCI.rep(673)) == "10000100010000"
    assert str(BASE2.rep(745)) == "1011101001"
    assert str(BASE2.rep(5904)) == "1011100010000"
    assert str(BASE2.rep(42)) == "101010"
    assert FIBONACCI.rep(0).digits == ()


def test_val_accepts_non_normal_words():
    assert val("0011", FIBONACCI) == 3
    assert val("11", FIBONACCI) == 3
    with pytest.raises(DomainError):
        val("012", FIBONACCI)
    with pytest.raises(DomainError):
        val((1, 0))


def test_bases():
    assert [FIBONACCI.basis(i) for i in range(8)] == [1, 2, 3, 5, 8, 13, 21, 34]
    assert [TRIBONACCI.basis(i) for i in range(8)] == [1, 2, 4, 7, 13, 24, 44, 81]
    assert [QUADRIBONACCI.basis(i) for i in range(8)] == [1, 2, 4, 8, 15, 29, 56, 108]
    assert base_k(3).basis(5) == 243


def test_system_lookup():
    assert system_by_name("zeckendorf") is FIBONACCI
    assert system_by_name("base5") is base_k(5)
    with pytest.raises(DomainError):
        system_by_name("base1")
    with pytest.raises(DomainError):
        system_by_name("roman")


def test_digit_word():
    w = DigitWord.parse("101001", FIBONACCI)
    assert w.value == 19 and w.is_normal
    assert w.to_json() == {"system": "fibonacci", "digits": "101001", "value": 19}
    assert not DigitWord.parse("0110", FIBONACCI).is_normal


@pytest.mark.parametrize(
    "system, poly",
    [(FIBONACCI, [1, -1, -1]), (TRIBONACCI, [1, -1, -1, -1]), (QUADRIBONACCI, [1, -1, -1, -1, -1])],
)
def test_dominant_roots(system, poly):
    theta = system.dominant_root(128)
    with mpmath.workprec(128):
        assert abs(mpmath.polyval(poly, theta)) < mpmath.mpf(2) ** -100
    assert 1 < theta < 2


def test_tribonacci_constant():
    assert abs(TRIBONACCI.dominant_root() - mpmath.mpf("1.839286755214161")) < 1e-12


# --- Q(sqrt 5) ----------------------------------------------------------------

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)


@settings(max_examples=300)
@given(rationals, rationals)
def test_qsqrt5_sign_agrees_with_high_precision_float(a, b):
    x = QSqrt5(a, b)
    approx = x.to_mpf(256)
    if approx > 1e-30:
        assert x.sign() == 1
    elif approx < -1e-30:
        assert x.sign() == -1
    else:
        assert x.sign() == 0


@given(rationals, rationals, rationals, rationals)
def test_qsqrt5_ring_laws(a, b, c, d):
    x, y = QSqrt5(a, b), QSqrt5(c, d)
    assert x * y == y * x
    assert (x + y) - y == x
    with mpmath.workprec(200):
        assert abs((x * y).to_mpf(200) - x.to_mpf(200) * y.to_mpf(200)) < 1e-40


def test_phi():
    assert PHI * PHI == PHI + 1
    assert PHI * PHI_INV == 1
    assert PHI ** 10 == QSqrt5(Fraction(123, 2), Fraction(55, 2))
    assert QSqrt5(Fraction(7, 2), Fraction(3, 2)).floor() == 6


@given(st.lists(st.integers(0, 1), max_size=40))
def test_golden_word_value(word):
    expected = QSqrt5(0)
    for i, r in enumerate(word, 1):
        if r:
            expected = expected + PHI_INV ** i
    assert golden_word_value(word) == expected


# --- relative positions ------------------------------------------------------


def test_relpos2():
    assert relpos2(8) == 0
    assert relpos2(12) == Fraction(1, 2)
    assert relpos2(15) == Fraction(7, 8)
    assert BASE2.relpos(12) == Fraction(1, 2)


def test_relposF():
    assert relposF(2) == 0
    assert relposF(21) == 0
    assert relposF(163) == PHI_INV ** 4 + PHI_INV ** 6 + PHI_INV ** 9
    assert abs(float(relposF(163)) - 0.2147817412475) < 1e-12
    with pytest.raises(DomainError):
        relposF(1)


@given(st.integers(2, 10**8))
def test_general_relpos_specializes_to_fibonacci(n):
    with mpmath.workprec(128):
        assert abs(FIBONACCI.relpos(n) - relposF(n).to_mpf()) < 1e-30
        assert abs(FIBONACCI.log(n) - logF(n)) < 1e-30


# --- real expansions ---------------------------------------------------------


def test_pi_minus_3_expansions():
    x = RealCoordinate.pi_minus_3()
    assert "".join(map(str, x.digits("golden", 20))) == "00001010100100010101"
    assert "".join(map(str, x.digits("binary", 19))) == "0010010000111111011"


@given(st.fractions(min_value=0, max_value=Fraction(99999, 100000)))
def test_binary_digits_of_rationals(q):
    digits = RealCoordinate.exact(q).digits("binary", 30)
    approx = sum(Fraction(d, 2 ** (i + 1)) for i, d in enumerate(digits))
    assert 0 <= q - approx < Fraction(1, 2**30)


@given(st.lists(st.integers(0, 1), max_size=25))
def test_golden_digits_of_finite_words(word):
    word = tuple(word)
    if any(a and b for a, b in zip(word, word[1:])):
        return
    alpha = golden_word_value(word)
    if alpha >= 1:
        return
    got = RealCoordinate(alpha).digits("golden", len(word) + 5)
    assert got == word + (0,) * (len(word) + 5 - len(word))


def test_interval_refuses_uncertain_digits():
    x = RealCoordinate.from_mpf(mpmath.mpf(0.5), 10)
    with pytest.raises(PrecisionError):
        x.digits("binary", 4)
    assert RealCoordinate.from_mpf(mpmath.mpf(0.3), 100).digits("binary", 5) == (0, 1, 0, 0, 1)


def test_real_expansion_domain():
    with pytest.raises(DomainError):
        real_expansion(Fraction(3, 2), "binary", 4)
