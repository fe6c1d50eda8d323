"""Periodic fluctuation functions of ``A`` and ``A_F``.

``Phi`` on ``[0, 1)`` satisfies ``A(N) = 3**log2(N) * Phi(relpos2(N))``
exactly; ``Psi`` gives the main term of ``A_F(N)`` in the same way with
``c * beta**log_F(N)``. Each is reachable several ways:

* step approximants ``phi_step``/``psi_step`` at a finite depth,
* exact values on dense sets (``phi_exact`` on dyadic rationals,
  ``psi_dense`` on finite golden-ratio words),
* the series over the limit digits (``phi_series``, ``psi_series``).

Transcendental arithmetic runs in mpmath at ``prec`` bits (128 by default).
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from exonum.decomposition import b_dec, e_n, limit_digits
from exonum.errors import DomainError
from exonum.numeration import (
    FIBONACCI,
    QSqrt5,
    RealCoordinate,
    as_coordinate,
    golden_word_value,
    logF,
    relposF,
    to_mpf,
)
from exonum.summatory import A, A_F, spectral

DEFAULT_PREC = 128


@dataclass(frozen=True)
class FluctuationSample:
    """One plotted point; ``depth == 0`` marks exact or series values."""

    alpha: float
    value: float
    depth: int = 0
    residual: float = None

    def row(self, digits=12):
        out = [mpmath.nstr(to_mpf(self.alpha), digits), mpmath.nstr(to_mpf(self.value), digits)]
        if self.residual is not None:
            out.append(mpmath.nstr(to_mpf(self.residual), digits))
        return out


# ---------------------------------------------------------------------------
# Phi


def phi_step(n, alpha, prec=DEFAULT_PREC):
    """``A(e_n) / 3**log2(e_n)`` for the base-2 approximation ``e_n(alpha)``."""
    if n < 1:
        raise DomainError("n must be at least 1")
    m = e_n(alpha, "base2", n)
    with mpmath.workprec(prec):
        return mpmath.mpf(A(m)) / mpmath.power(3, mpmath.log(m, 2))


def phi_exact(r, k, prec=DEFAULT_PREC):
    """``Phi(r / 2**k) = A(2**k + r) / 3**log2(2**k + r)``."""
    if k < 1 or not 0 <= r < 2**k:
        raise DomainError("need k >= 1 and 0 <= r < 2**k")
    m = (1 << k) + r
    with mpmath.workprec(prec):
        return mpmath.mpf(A(m)) / mpmath.power(3, mpmath.log(m, 2))


def _phi_tail(depth):
    # |a_i| <= 10 * 2**i bounds the series remainder after index ``depth``
    return 30 * (mpmath.mpf(2) / 3) ** (depth + 1)


def phi_series(alpha, depth=40, prec=DEFAULT_PREC):
    """Truncated series for ``Phi(alpha)`` over ``a_0(alpha) .. a_depth(alpha)``.

    Returns ``(value, tail_bound)``; the true value lies within ``tail_bound``.
    """
    if depth < 4:
        raise DomainError("depth must be at least 4")
    alpha = as_coordinate(alpha)
    digits = limit_digits(alpha, "base2", depth + 1).digits
    upper_half = alpha.digits("binary", 1)[0] == 1
    with mpmath.workprec(prec):
        x = alpha.to_mpf(prec)
        total = mpmath.fsum(mpmath.mpf(a) / mpmath.mpf(3) ** i for i, a in enumerate(digits))
        exponent = mpmath.log(x + 1, 2) + (0 if upper_half else 1)
        prefactor = 1 / mpmath.power(3, exponent)
        return prefactor * total, prefactor * _phi_tail(depth)


def _dyadic(alpha):
    """``(r, k)`` with ``alpha = r / 2**k`` and ``k >= 1`` if alpha is dyadic."""
    if isinstance(alpha, RealCoordinate):
        if not alpha.is_exact or alpha.lo.b != 0:
            return None
        alpha = alpha.lo.a
    elif isinstance(alpha, QSqrt5):
        if alpha.b != 0:
            return None
        alpha = alpha.a
    alpha = Fraction(alpha)
    d = alpha.denominator
    if d & (d - 1):
        return None
    k = max(d.bit_length() - 1, 1)
    return alpha.numerator * (2**k // d), k


def Phi(alpha, depth=40, prec=DEFAULT_PREC):
    """``Phi(alpha)``: exact at dyadic rationals, truncated series elsewhere."""
    dy = _dyadic(alpha) if not isinstance(alpha, mpmath.mpf) else None
    if dy is not None:
        return phi_exact(*dy, prec=prec)
    if isinstance(alpha, mpmath.mpf):
        alpha = RealCoordinate.from_mpf(alpha, prec - 8)
    return phi_series(alpha, depth, prec)[0]


def _snap_dyadic(x, prec, max_k=48):
    """Dyadic ``r / 2**k`` (``k <= max_k``) within rounding of mpf ``x``, else None."""
    scaled = x * mpmath.mpf(2) ** max_k
    nearest = mpmath.nint(scaled)
    if abs(scaled - nearest) < mpmath.mpf(2) ** (max_k + 16 - prec):
        return Fraction(int(nearest), 2**max_k)
    return None


def H(x, depth=40, prec=DEFAULT_PREC):
    """Period-1 function with ``A(N) = 3**log2(N) * H(log2 N)``: ``Phi(2**frac(x) - 1)``.

    ``x`` that falls within rounding error of a dyadic point is evaluated
    exactly there.
    """
    with mpmath.workprec(prec + 16):
        x = mpmath.mpf(x)
        if x < 0:
            raise DomainError("H is sampled on x >= 0")
        alpha = mpmath.power(2, x - mpmath.floor(x)) - 1
        snapped = _snap_dyadic(alpha, prec)
    if snapped is not None:
        return Phi(snapped, depth, prec)
    return Phi(alpha, depth, prec)


# ---------------------------------------------------------------------------
# Psi


def psi_step(n, alpha, prec=DEFAULT_PREC):
    """``A_F(e_n) / (c * beta**log_F(e_n))`` for the Fibonacci approximation."""
    if n < 3:
        raise DomainError("n must be at least 3")
    m = e_n(alpha, "fibonacci", n)
    sd = spectral(prec)
    with mpmath.workprec(prec):
        return mpmath.mpf(A_F(m)) / (sd.c * mpmath.power(sd.beta, logF(m, prec)))


def _parse_dense_word(word):
    if isinstance(word, str):
        word = tuple(int(c) for c in word)
    word = tuple(word)
    if any(d not in (0, 1) for d in word):
        raise DomainError("dense-set words are binary")
    if any(a == b == 1 for a, b in zip(word, word[1:])):
        raise DomainError("dense-set words contain no factor 11")
    return word


def dense_alpha(word):
    """Exact ``sum r_i phi**-i`` for a word ``r_1 ... r_k``."""
    return golden_word_value(_parse_dense_word(word))


def psi_dense(word, prec=DEFAULT_PREC):
    """Exact-word value of ``Psi`` at ``alpha = sum r_i phi**-i``.

    The first ``k`` coefficients come from the B-decomposition of ``A_F(m)``
    with ``rep_F(m) = 10 r_1 ... r_k``; the two following ones are the limit
    digits ``b_k(alpha)`` and ``b_(k+1)(alpha)``; all later ones vanish.
    """
    word = _parse_dense_word(word)
    k = len(word)
    alpha_exact = dense_alpha(word)
    # a finite admissible word is its own greedy expansion
    tail = limit_digits(RealCoordinate(alpha_exact), "fibonacci", k + 2, expansion=word).digits[k:]
    head = b_dec(FIBONACCI.val((1, 0) + word)).coeffs[:k] if k else ()
    sd = spectral(prec)
    with mpmath.workprec(prec):
        alpha = alpha_exact.to_mpf(prec)
        inv = 1 / sd.beta
        total, p = mpmath.mpf(0), mpmath.mpf(1)
        for b in list(head) + list(tail):
            total += b * p
            p *= inv
        return total * mpmath.power(sd.beta, -alpha)


def psi_series(alpha, depth=120, prec=DEFAULT_PREC):
    """Truncated series ``beta**-alpha * sum b_i(alpha) / beta**i``; returns ``(value, tail_bound)``."""
    alpha = as_coordinate(alpha)
    digits = limit_digits(alpha, "fibonacci", depth + 1).digits
    sd = spectral(prec)
    with mpmath.workprec(prec):
        ratio = 2 / sd.beta
        x = alpha.to_mpf(prec)
        total = mpmath.fsum(mpmath.mpf(b) / sd.beta**i for i, b in enumerate(digits))
        tail = 6 * ratio ** (depth + 1) / (1 - ratio)
        scale = mpmath.power(sd.beta, -x)
        return scale * total, scale * tail


def residual_AF(N, prec=DEFAULT_PREC):
    """``R(N) = A_F(N) - c beta**log_F(N) Psi(relpos_F(N))`` and ``R(N) / beta**floor(log_F N)``."""
    if N < 3:
        raise DomainError("N must be at least 3")
    digits = FIBONACCI.rep(N).digits
    psi = psi_dense(digits[2:], prec)
    sd = spectral(prec)
    with mpmath.workprec(prec):
        main = sd.c * mpmath.power(sd.beta, logF(N, prec)) * psi
        R = A_F(N) - main
        return R, R / sd.beta ** (len(digits) - 1)


def psi_at_relpos(N, prec=DEFAULT_PREC):
    """``Psi(relpos_F(N))`` via the exact word of ``N``."""
    return psi_dense(FIBONACCI.rep(N).digits[2:], prec)


# ---------------------------------------------------------------------------
# grids


def alpha_grid(size):
    """``[0, 1/size, ..., (size-1)/size]`` as exact Fractions."""
    if size < 1:
        raise DomainError("grid size must be positive")
    return [Fraction(i, size) for i in range(size)]


def sample_phi(grid=1024, depth=20, prec=DEFAULT_PREC):
    out = []
    for a in alpha_grid(grid):
        value, tail = phi_series(a, depth, prec)
        out.append(FluctuationSample(a, value, 0, tail))
    return out


def sample_phi_step(n, grid=1024, prec=DEFAULT_PREC):
    return [FluctuationSample(a, phi_step(n, a, prec), n) for a in alpha_grid(grid)]


def sample_psi_step(n, grid=512, prec=DEFAULT_PREC):
    return [FluctuationSample(a, psi_step(n, a, prec), n) for a in alpha_grid(grid)]


def sample_psi_range(lo, hi, prec=DEFAULT_PREC):
    """Points ``(relpos_F(N), A_F(N) / (c beta**log_F N))`` for ``lo <= N < hi``."""
    sd = spectral(prec)
    out = []
    with mpmath.workprec(prec):
        for N in range(max(lo, 3), hi):
            value = mpmath.mpf(A_F(N)) / (sd.c * mpmath.power(sd.beta, logF(N, prec)))
            out.append(FluctuationSample(relposF(N).to_mpf(prec), value, 0))
    return out


def sample_H(grid=1024, periods=1, depth=40, prec=DEFAULT_PREC):
    out = []
    for i in range(grid * periods):
        x = Fraction(i, grid)
        out.append(FluctuationSample(x, H(to_mpf(x, prec), depth, prec), 0))
    return out


def max_grid_step_change(step, n, grid=1024, prec=DEFAULT_PREC):
    """``max |step(n+1, a) - step(n, a)|`` over a uniform grid."""
    return max(abs(step(n + 1, a, prec) - step(n, a, prec)) for a in alpha_grid(grid))


def residual_block_maxima(n_lo, n_hi, prec=DEFAULT_PREC):
    """``{n: max |R(N)| / beta**floor(log_F N)}`` over ``F(n) <= N < F(n+1)``."""
    F = FIBONACCI.basis
    out = {}
    for n in range(n_lo, n_hi + 1):
        out[n] = max(abs(residual_AF(N, prec)[1]) for N in range(max(F(n), 3), F(n + 1)))
    return out
