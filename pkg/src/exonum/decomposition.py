"""3-decompositions of ``A(n)`` and B-decompositions of ``A_F(n)``.

Expanding the two-case recursion for ``A`` (resp. ``A_F``) down to its base
values writes ``A(n)`` as a signed combination of powers of 3 (resp. ``A_F(n)``
as a combination of ``B(0), B(1), ...``). The expansion is done on integer
arguments: each call returns the coefficient vector indexed by exponent and
the results are memoized, so repeated sub-evaluations are shared.

For a real ``alpha`` the decompositions of ``A(e_n(alpha))`` stabilize from
the most significant coefficient on, which defines the limit digits
``a(alpha)`` and ``b(alpha)``.
"""

import functools
from dataclasses import dataclass

from exonum.errors import DomainError, PrecisionError
from exonum.numeration import BASE2, FIBONACCI, as_coordinate
from exonum.summatory import A, A_F, B


def _add(*terms):
    """Sum of ``(coefficient, vector)`` pairs; vectors are lsb-first tuples."""
    size = max(len(v) for _, v in terms)
    out = [0] * size
    for k, v in terms:
        for i, x in enumerate(v):
            out[i] += k * x
    return tuple(out)


def _unit(index, coeff=1):
    return (0,) * index + (coeff,)


@functools.lru_cache(maxsize=None)
def _powers_of_3(n):
    if n <= 1:
        return (n,)
    ell = n.bit_length() - 1
    r = n - (1 << ell)
    half = 1 << (ell - 1)
    if r <= half:
        return _add((1, _unit(ell - 1, 2)), (1, _powers_of_3(half + r)), (1, _powers_of_3(r)))
    rp = (1 << ell) - r
    lead = _add((1, _unit(ell, 4)), (1, _unit(ell - 1, -2)))
    return _add((1, lead), (-1, _powers_of_3(half + rp)), (-1, _powers_of_3(rp)))


@functools.lru_cache(maxsize=None)
def _b_terms(n):
    if n <= 2:
        return ((1, 3, 6)[n],)
    F = FIBONACCI.basis
    ell = FIBONACCI.length(n) - 1
    r = n - F(ell)
    if r < F(ell - 2):
        lead = _add((1, _unit(ell)), (1, _unit(ell - 1, -1)))
        return _add((1, lead), (1, _b_terms(F(ell - 1) + r)), (1, _b_terms(r)))
    lead = _add((1, _unit(ell, 2)), (1, _unit(ell - 1, -1)), (1, _unit(ell - 2, -1)))
    return _add((1, lead), (2, _b_terms(r)))


@dataclass(frozen=True)
class Decomposition:
    """``value = sum(coeffs[i] * basis(scale - i))`` with coefficients msb first."""

    n: int
    basis: str  # "3" or "B"
    scale: int
    coeffs: tuple

    def basis_value(self, index):
        return 3**index if self.basis == "3" else B(index)

    def reconstruct(self):
        return sum(a * self.basis_value(self.scale - i) for i, a in enumerate(self.coeffs))

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def to_json(self):
        return {"n": self.n, "basis": self.basis, "scale": self.scale, "coeffs": list(self.coeffs)}


def _scale_from_vector(vec):
    top = len(vec) - 1
    while top > 0 and vec[top] == 0:
        top -= 1
    return top


def three_dec(n):
    """3-decomposition of ``A(n)`` for ``n >= 2``."""
    if n < 2:
        raise DomainError("the 3-decomposition is defined for n >= 2, got %d" % n)
    ell = n.bit_length() - 1
    r = n - (1 << ell)
    scale = ell if (1 << (ell - 1)) < r < (1 << ell) else ell - 1
    vec = _powers_of_3(n)
    if _scale_from_vector(vec) != scale or len(vec) != scale + 1:
        raise AssertionError("expansion of A(%d) disagrees with its expected scale %d" % (n, scale))
    return Decomposition(n, "3", scale, tuple(reversed(vec)))


def b_dec(n):
    """B-decomposition of ``A_F(n)`` for ``n >= 3``."""
    if n < 3:
        raise DomainError("the B-decomposition is defined for n >= 3, got %d" % n)
    scale = FIBONACCI.length(n) - 1
    vec = _b_terms(n)
    if _scale_from_vector(vec) != scale or len(vec) != scale + 1:
        raise AssertionError("expansion of A_F(%d) disagrees with its expected scale %d" % (n, scale))
    return Decomposition(n, "B", scale, tuple(reversed(vec)))


def decompose(system, n):
    """``three_dec`` for base 2, ``b_dec`` for Fibonacci."""
    if _system_key(system) == "base2":
        return three_dec(n)
    return b_dec(n)


# ---------------------------------------------------------------------------
# approximations e_n(alpha) and limit digits


def _system_key(system):
    if system in (BASE2, "base2", "binary", "2"):
        return "base2"
    if system in (FIBONACCI, "fibonacci", "golden", "phi"):
        return "fibonacci"
    raise DomainError("limit digits exist for base2 and fibonacci, not %r" % (system,))


def w_n(alpha, system, n):
    """Approximating digit word of ``alpha`` at depth ``n`` (msb first).

    Base 2: ``1 d_1 ... d_n 1``. Fibonacci: the length-``n`` prefix of
    ``1 0 d_1 d_2 ...`` with ``d`` the golden-ratio expansion.
    """
    if n < 1:
        raise DomainError("depth must be at least 1")
    alpha = as_coordinate(alpha)
    if _system_key(system) == "base2":
        return (1,) + tuple(alpha.digits("binary", n)) + (1,)
    prefix = (1, 0)[:n]
    rest = tuple(alpha.digits("golden", n - 2)) if n > 2 else ()
    return prefix + rest


def e_n(alpha, system, n):
    """Integer whose representation is :func:`w_n`."""
    word = w_n(alpha, system, n)
    if _system_key(system) == "base2":
        return BASE2.val(word)
    return FIBONACCI.val(word)


@dataclass(frozen=True)
class LimitDigits:
    alpha: object
    system: str
    digits: tuple
    certified_len: int
    depth: int

    def __getitem__(self, i):
        return self.digits[i]

    def __len__(self):
        return len(self.digits)


def _finite_e_n(expansion, key, n):
    digits = tuple(expansion) + (0,) * n
    if key == "base2":
        return BASE2.val((1,) + digits[:n] + (1,))
    return FIBONACCI.val(((1, 0) + digits)[:n])


def _decomposition_at_depth(alpha, key, n, expansion=None):
    m = e_n(alpha, key, n) if expansion is None else _finite_e_n(expansion, key, n)
    return three_dec(m).coeffs if key == "base2" else b_dec(m).coeffs


def limit_digits(alpha, system, count, max_extra=64, expansion=None):
    """First ``count`` coefficients of ``a(alpha)`` (base 2) or ``b(alpha)`` (Fibonacci).

    The starting depth is the one at which the common-prefix property
    guarantees ``count`` stable coefficients (depth ``count + 1`` in base 2,
    ``count + 2`` for Fibonacci). The prefix is returned only once it also
    agrees with the next depth; otherwise the depth keeps increasing.

    ``expansion`` may give the digits of a finite expansion of ``alpha``
    (all later digits zero); it skips the digit extraction.
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    key = _system_key(system)
    alpha = as_coordinate(alpha)
    n = count + 1 if key == "base2" else max(count + 2, 3)
    current = _decomposition_at_depth(alpha, key, n, expansion)
    for _ in range(max_extra):
        following = _decomposition_at_depth(alpha, key, n + 1, expansion)
        if current[:count] == following[:count]:
            certified = n - 1 if key == "base2" else n - 2
            return LimitDigits(alpha, key, tuple(current[:count]), certified, n)
        n += 1
        current = following
    raise PrecisionError("limit digits failed to stabilize by depth %d" % n)
