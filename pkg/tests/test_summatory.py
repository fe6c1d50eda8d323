import mpmath
import pytest
from hypothesis import given, strategies as st

from exonum.errors import DomainError
from exonum.numeration import FIBONACCI
from exonum.summatory import (
    A,
    A2,
    A2_direct,
    A_F,
    A_F_prefix,
    A_prefix,
    B,
    U,
    delange_suite,
    g,
    g_closed_form,
    spectral,
)


def test_fast_equals_naive():
    prefix, prefix_F = A_prefix(3000), A_F_prefix(3000)
    assert [A(N) for N in range(3001)] == prefix
    assert [A_F(N) for N in range(3001)] == prefix_F
    assert A(500, "naive") == A(500)
    assert A_F(500, "naive") == A_F(500)


@given(st.integers(1, 10**12))
def test_doubling(N):
    assert A(2 * N) == 3 * A(N)


def test_known_values():
    assert A(84) == 1152
    assert A(42) == 384
    assert A_F(42) == 520
    assert A(2**40) == 3**40


def test_A_F_at_fibonacci_minus_one():
    for n in range(1, 40):
        assert A_F(FIBONACCI.basis(n) - 1) == B(n)


def test_B_recurrence():
    assert [B(n) for n in range(8)] == [1, 3, 6, 14, 31, 70, 157, 353]
    for n in range(3, 60):
        assert B(n) == 2 * B(n - 1) + B(n - 2) - B(n - 3)
    with pytest.raises(DomainError):
        B(-1)


def test_spectral_constants():
    sd = spectral()
    with mpmath.workprec(128):
        for root in (sd.beta, sd.beta2, sd.beta3):
            assert abs(root**3 - 2 * root**2 - root + 1) < mpmath.mpf(2) ** -110
        # independent route to c: B(n) / beta**n converges geometrically
        assert abs(mpmath.mpf(B(300)) / sd.beta**300 - sd.c) < mpmath.mpf(10) ** -30
        for n in range(40):
            assert abs(sd.B_closed_form(n) - B(n)) < mpmath.mpf(10) ** -20
    assert abs(sd.beta) > abs(sd.beta2) > abs(sd.beta3)
    assert set(sd.to_json()) == {"beta", "beta2", "beta3", "c", "c2", "c3"}


def test_g():
    assert [g(n) for n in range(8)] == [2, -1, 3, -2, 6, -4, 12, -8]
    assert all(g_closed_form(n) == g(n) for n in range(60))


def test_U_and_A2():
    assert all(U(n) == n * 2 ** (n - 1) for n in range(1, 40))
    assert all(A2(N) == A2_direct(N) for N in range(3000))
    total, G = delange_suite(2**10)
    assert total == 10 * 2**9 and abs(G) < 1e-30
    with pytest.raises(DomainError):
        delange_suite(0)
