"""Summatory functions and the auxiliary linear recurrent sequences.

``A(N) = s(0) + ... + s(N)`` and ``A_F(N) = s_F(0) + ... + s_F(N)`` are
available naively (summing the sequence) and through the fast two-case
recursions, which only need ``O(log N)`` distinct sub-evaluations. All
sequence values are Python integers, so nothing overflows.
"""

import functools
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from exonum._roots import real_roots
from exonum.errors import DomainError
from exonum.numeration import FIBONACCI
from exonum.subword import s, s_F

B_POLYNOMIAL = (1, -2, -1, 1)


# ---------------------------------------------------------------------------
# A(N)


@functools.lru_cache(maxsize=None)
def _A_fast(N):
    if N <= 1:
        return N
    ell = N.bit_length() - 1
    r = N - (1 << ell)
    half = 1 << (ell - 1)
    if r <= half:
        return 2 * 3 ** (ell - 1) + _A_fast(half + r) + _A_fast(r)
    rp = (1 << ell) - r
    return 4 * 3**ell - 2 * 3 ** (ell - 1) - _A_fast(half + rp) - _A_fast(rp)


def A(N, method="fast"):
    """Summatory function of ``s``: ``sum(s(j) for j in range(N + 1))``."""
    if N < 0:
        raise DomainError("N must be non-negative")
    if method == "fast":
        return _A_fast(N)
    if method == "naive":
        return sum(s(j) for j in range(N + 1))
    raise DomainError("unknown method %r" % method)


def A_prefix(N_max):
    """``[A(0), ..., A(N_max)]`` by direct cumulative summation of ``s``."""
    out, acc = [], 0
    for j in range(N_max + 1):
        acc += s(j)
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# B(n) and A_F(N)

_B_cache = [1, 3, 6]
_B_lock = threading.Lock()


def B(n):
    """``B(0..2) = 1, 3, 6`` and ``B(n+3) = 2B(n+2) + B(n+1) - B(n)``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if n >= len(_B_cache):
        with _B_lock:
            while len(_B_cache) <= n:
                _B_cache.append(2 * _B_cache[-1] + _B_cache[-2] - _B_cache[-3])
    return _B_cache[n]


@functools.lru_cache(maxsize=None)
def _AF_fast(N):
    if N <= 2:
        return (1, 3, 6)[N]
    F = FIBONACCI.basis
    ell = FIBONACCI.length(N) - 1
    r = N - F(ell)
    if r < F(ell - 2):
        return B(ell) - B(ell - 1) + _AF_fast(F(ell - 1) + r) + _AF_fast(r)
    return 2 * B(ell) - B(ell - 1) - B(ell - 2) + 2 * _AF_fast(r)


def A_F(N, method="fast"):
    """Summatory function of ``s_F``: ``sum(s_F(j) for j in range(N + 1))``."""
    if N < 0:
        raise DomainError("N must be non-negative")
    if method == "fast":
        return _AF_fast(N)
    if method == "naive":
        return sum(s_F(j) for j in range(N + 1))
    raise DomainError("unknown method %r" % method)


def A_F_prefix(N_max):
    out, acc = [], 0
    for j in range(N_max + 1):
        acc += s_F(j)
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# g(n)


def g(n):
    """``g = 2, -1, 3`` then ``g(n) = 2 g(n-2)``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if n < 3:
        return (2, -1, 3)[n]
    return 2 ** ((n - 1) // 2) * (g(1) if n % 2 else g(2))


def g_closed_form(n):
    """Closed form of ``g`` evaluated exactly in Q(sqrt 2).

    ``g(n) = (3 - sqrt2)/4 * sqrt2**n + (3 + sqrt2)/4 * (-sqrt2)**n`` for
    ``n >= 1``; the initial value ``g(0) = 2`` is not produced by the
    two-root part and needs the extra ``1/2`` at ``n = 0``.
    """
    if n < 0:
        raise DomainError("n must be non-negative")

    # elements p + q*sqrt2 as Fraction pairs
    def mul(x, y):
        return (x[0] * y[0] + 2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def power(x, k):
        out = (Fraction(1), Fraction(0))
        for _ in range(k):
            out = mul(out, x)
        return out

    root = (Fraction(0), Fraction(1))
    first = mul((Fraction(3, 4), Fraction(-1, 4)), power(root, n))
    second = mul((Fraction(3, 4), Fraction(1, 4)), power((Fraction(0), Fraction(-1)), n))
    total = (first[0] + second[0], first[1] + second[1])
    if total[1] != 0:
        raise ArithmeticError("closed form left an irrational part")
    value = total[0] + (Fraction(1, 2) if n == 0 else 0)
    return int(value) if value.denominator == 1 else value


# ---------------------------------------------------------------------------
# spectral data of B


@dataclass(frozen=True)
class SpectralData:
    """Roots of ``X^3 - 2X^2 - X + 1`` and the coefficients of ``B`` on them."""

    beta: mpmath.mpf
    beta2: mpmath.mpf
    beta3: mpmath.mpf
    c: mpmath.mpf
    c2: mpmath.mpf
    c3: mpmath.mpf
    prec: int = 128

    def B_closed_form(self, n):
        with mpmath.workprec(self.prec):
            return self.c * self.beta**n + self.c2 * self.beta2**n + self.c3 * self.beta3**n

    def to_json(self, digits=20):
        names = ("beta", "beta2", "beta3", "c", "c2", "c3")
        return {k: mpmath.nstr(getattr(self, k), digits) for k in names}


@functools.lru_cache(maxsize=8)
def spectral(prec=128):
    roots = real_roots(list(B_POLYNOMIAL), lo=-3, hi=4, grid=700, prec=prec)
    if len(roots) != 3:
        raise ArithmeticError("expected three distinct real roots, found %d" % len(roots))
    beta, beta2, beta3 = sorted(roots, key=lambda x: -abs(x))
    with mpmath.workprec(prec + 20):
        M = mpmath.matrix([[1, 1, 1], [beta, beta2, beta3], [beta**2, beta2**2, beta3**2]])
        c, c2, c3 = mpmath.lu_solve(M, mpmath.matrix([B(0), B(1), B(2)]))
    return SpectralData(beta, beta2, beta3, c, c2, c3, prec)


# ---------------------------------------------------------------------------
# sum of binary digits (Delange)


@functools.lru_cache(maxsize=None)
def U(n):
    """``U(0) = 0, U(1) = 1, U(n+2) = 4U(n+1) - 4U(n)``; equals ``n 2**(n-1)``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if n < 2:
        return n
    return 4 * U(n - 1) - 4 * U(n - 2)


@functools.lru_cache(maxsize=None)
def A2(N):
    """Total number of ones in the binary expansions of ``0, ..., N - 1``."""
    if N < 0:
        raise DomainError("N must be non-negative")
    if N == 0:
        return 0
    ell = N.bit_length() - 1
    r = N - (1 << ell)
    return U(ell) + A2(r) + r * U(1)


def A2_direct(N):
    return sum(bin(j).count("1") for j in range(N))


def delange_suite(N, prec=128):
    """``(A2(N), A2(N)/N - log2(N)/2)``, the second being a sample of the periodic part."""
    if N < 1:
        raise DomainError("N must be at least 1")
    total = A2(N)
    with mpmath.workprec(prec):
        G = mpmath.mpf(total) / N - mpmath.log(N, 2) / 2
    return total, G
