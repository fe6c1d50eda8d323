from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from exonum.errors import DomainError
from exonum.fluctuation import (
    H,
    FluctuationSample,
    Phi,
    alpha_grid,
    dense_alpha,
    max_grid_step_change,
    phi_exact,
    phi_series,
    phi_step,
    psi_dense,
    psi_series,
    psi_step,
    residual_AF,
    sample_H,
    sample_phi_step,
    sample_psi_range,
)
from exonum.numeration import FIBONACCI, relpos2
from exonum.summatory import A, A_F, spectral

mpmath.mp.prec = 128


def test_phi_exact_values():
    assert phi_exact(0, 5) == 1
    assert abs(phi_exact(1, 1) - 6 / mpmath.power(3, mpmath.log(3, 2))) < 1e-30
    assert abs(phi_exact(1, 1) - mpmath.mpf("1.0518")) < 1e-4
    assert abs(phi_exact(1, 2) - 13 / mpmath.power(3, mpmath.log(5, 2))) < 1e-30
    with pytest.raises(DomainError):
        phi_exact(4, 2)


def test_phi_step():
    # e_2(0) = 9 and A(9) = 32
    assert abs(phi_step(2, 0) - 32 / mpmath.power(3, mpmath.log(9, 2))) < 1e-30
    assert abs(phi_step(2, 0) - mpmath.mpf("0.98336")) < 1e-5
    for n in range(1, 8):
        N = 2 ** (n + 1) + 1
        assert phi_step(n, 0) == mpmath.mpf(A(N)) / mpmath.power(3, mpmath.log(N, 2))


def test_phi_series():
    value, tail = phi_series(0, 40)
    assert abs(value - 1) < 1e-6 and tail < 1e-6
    value, tail = phi_series(1 - Fraction(1, 2**20), 40)
    assert abs(value - 1) < 1e-3
    with pytest.raises(DomainError):
        phi_series(0.3, 3)


@pytest.mark.parametrize("k", range(1, 7))
def test_series_agrees_with_exact_values(k):
    for r in range(1, 2**k, 2):
        value, tail = phi_series(Fraction(r, 2**k), 40)
        assert abs(value - phi_exact(r, k)) <= tail + 1e-8


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10**7))
def test_exact_identity(N):
    lhs = mpmath.mpf(A(N))
    rhs = mpmath.power(3, mpmath.log(N, 2)) * Phi(relpos2(N))
    assert abs(lhs - rhs) / lhs < 1e-9


def test_H():
    assert H(0) == 1 and H(3) == 1
    # arguments whose shift by 1 is exact in binary floating point
    for x in (mpmath.mpf(0.3), mpmath.mpf(0.77), mpmath.mpf(2.5)):
        assert H(x + 1) == H(x)
    for N in range(1, 10001):
        x = mpmath.log(N, 2)
        assert abs(A(N) - mpmath.power(3, x) * H(x)) / A(N) < 1e-9
    with pytest.raises(DomainError):
        H(-1)
    assert [p.value for p in sample_H(4)][0] == 1


def test_uniform_convergence_proxy():
    phi_changes = [max_grid_step_change(phi_step, n, 1024) for n in range(4, 17)]
    psi_changes = [max_grid_step_change(psi_step, n, 1024) for n in range(4, 17)]
    assert all(b < a for a, b in zip(phi_changes, phi_changes[1:]))
    assert all(b < a for a, b in zip(psi_changes, psi_changes[1:]))


def test_step_functions():
    values = {phi_step(1, a) for a in alpha_grid(64)}
    assert len(values) == 2
    psi3 = {psi_step(3, a) for a in alpha_grid(64)}
    assert len(psi3) == 2
    sd = spectral()
    for n in (10, 20, 30):
        F = FIBONACCI.basis(n - 1)
        assert abs(psi_step(n, 0) - A_F(F) / (sd.c * sd.beta ** (n - 1))) < 1e-25
    assert abs(psi_step(30, 0) - 1) < 1e-4
    with pytest.raises(DomainError):
        psi_step(2, 0)


def test_psi_dense():
    assert abs(psi_dense("") - 1) < 1e-4
    # (10)^m tends to 1 from below; (01)^m tends to 1/phi
    assert abs(psi_dense("10" * 15) - 1) < 1e-2
    assert psi_dense("1") == psi_dense("10") == psi_dense("100")
    with pytest.raises(DomainError):
        psi_dense("0110")
    with pytest.raises(DomainError):
        psi_dense("012")


admissible = st.lists(st.integers(0, 1), max_size=12).filter(lambda w: not any(a and b for a, b in zip(w, w[1:])))


@settings(max_examples=30, deadline=None)
@given(admissible)
def test_psi_dense_matches_deep_step(word):
    alpha = dense_alpha(word)
    if alpha >= 1:
        return
    assert abs(psi_dense(word) - psi_step(25, alpha)) < 1e-3


def test_psi_series_agrees_on_dense_words():
    for w in ("", "1", "0101", "001"):
        value, tail = psi_series(dense_alpha(w), 60)
        assert abs(value - psi_dense(w)) <= tail + 1e-8


def test_residuals():
    sd = spectral()
    for n in range(8, 20):
        F = FIBONACCI.basis(n)
        R, scaled = residual_AF(F)
        # relpos is 0 at F(n): Psi(0) = psi_dense of the empty word
        assert R == A_F(F) - sd.c * sd.beta**n * psi_dense("")
    below = [abs(residual_AF(FIBONACCI.basis(n) - 1)[1]) for n in range(8, 24)]
    assert all(b < a for a, b in zip(below, below[1:]))
    assert below[-1] < 1e-3
    with pytest.raises(DomainError):
        residual_AF(2)


def test_samples():
    rows = sample_phi_step(3, grid=8)
    assert len(rows) == 8 and rows[0].depth == 3
    assert FluctuationSample(Fraction(1, 4), mpmath.mpf(2)).row() == ["0.25", "2.0"]
    pts = sample_psi_range(2584, 4181)
    assert len(pts) == 4181 - 2584 and pts[0].alpha == 0
    assert all(0.9 < p.value < 1.1 for p in pts)
