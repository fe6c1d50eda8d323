"""Positional numeration systems and expansions of reals.

Two families are supported: integer bases ``k >= 2`` and the bounded-run
systems over ``{0, 1}`` whose normal words avoid ``m + 1`` consecutive ones
(``m = 1`` is Zeckendorf/Fibonacci, ``m = 2`` Tribonacci, ``m = 3``
Quadribonacci). Digit words are stored most significant digit first.

Reals in ``[0, 1)`` are carried by :class:`RealCoordinate`, either exactly
(rationals or elements of Q(sqrt 5)) or as an mpmath float with a declared
precision. Float-backed reals are treated as intervals so that a digit is
only reported when every real in the interval agrees on it.
"""

from __future__ import annotations

import bisect
import functools
import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

from exonum._roots import dominant_root
from exonum.errors import DomainError, PrecisionError

__all__ = [
    "QSqrt5",
    "PHI",
    "PHI_INV",
    "NumerationSystem",
    "base_k",
    "bounded_run",
    "BASE2",
    "FIBONACCI",
    "TRIBONACCI",
    "QUADRIBONACCI",
    "DigitWord",
    "RealCoordinate",
    "basis",
    "rep",
    "val",
    "real_expansion",
    "relpos2",
    "relposF",
    "logF",
    "golden_word_value",
    "to_mpf",
]


# ---------------------------------------------------------------------------
# exact arithmetic in Q(sqrt 5)


@dataclass(frozen=True)
class QSqrt5:
    """The number ``a + b*sqrt(5)`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def coerce(cls, x):
        if isinstance(x, QSqrt5):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        raise TypeError("cannot embed %r in Q(sqrt 5)" % (x,))

    def __add__(self, other):
        other = QSqrt5.coerce(other)
        return QSqrt5(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt5(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QSqrt5.coerce(other))

    def __rsub__(self, other):
        return QSqrt5.coerce(other) - self

    def __mul__(self, other):
        o = QSqrt5.coerce(other)
        return QSqrt5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result, base = QSqrt5(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self):
        """Exact sign, deciding mixed-sign cases by comparing a^2 with 5 b^2."""
        a, b = self.a, self.b
        if a >= 0 and b >= 0:
            return 0 if a == 0 and b == 0 else 1
        if a <= 0 and b <= 0:
            return -1
        lhs, rhs = a * a, 5 * b * b
        if a > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def _cmp(self, other):
        return (self - QSqrt5.coerce(other)).sign()

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def floor(self):
        n = int(self.to_mpf(64))
        # float guess, then exact correction
        while QSqrt5(n) > self:
            n -= 1
        while QSqrt5(n + 1) <= self:
            n += 1
        return n

    def to_mpf(self, prec=128):
        with mpmath.workprec(prec):
            return mpmath.mpf(self.a.numerator) / self.a.denominator + (
                mpmath.mpf(self.b.numerator) / self.b.denominator
            ) * mpmath.sqrt(5)

    def __float__(self):
        return float(self.to_mpf(64))

    def __repr__(self):
        if self.b == 0:
            return "QSqrt5(%s)" % self.a
        return "QSqrt5(%s + %s*sqrt5)" % (self.a, self.b)


PHI = QSqrt5(Fraction(1, 2), Fraction(1, 2))
PHI_INV = QSqrt5(Fraction(-1, 2), Fraction(1, 2))


# ---------------------------------------------------------------------------
# numeration systems


class NumerationSystem:
    """Descriptor of a positional numeration system.

    Use :func:`base_k` or :func:`bounded_run` (or the module constants) rather
    than instantiating directly; those return shared instances so the basis
    cache is reused.
    """

    def __init__(self, kind, param, name=None):
        if kind == "base" and param < 2:
            raise DomainError("base must be at least 2")
        if kind == "bounded_run" and param < 1:
            raise DomainError("run bound must be at least 1")
        if kind not in ("base", "bounded_run"):
            raise DomainError("unknown system kind %r" % kind)
        self.kind = kind
        self.param = param
        self.name = name or ("base%d" % param if kind == "base" else "run%d" % param)
        if kind == "base":
            self._basis = [1]
        else:
            self._basis = [2**j for j in range(param + 1)]
        self._lock = threading.Lock()
        self._root_cache = {}

    def __repr__(self):
        return "NumerationSystem(%s)" % self.name

    def __reduce__(self):
        return (_system_from_descriptor, (self.kind, self.param))

    @property
    def alphabet_size(self):
        return self.param if self.kind == "base" else 2

    def basis(self, n):
        if n < 0:
            raise DomainError("basis index must be non-negative")
        cache = self._basis
        if n < len(cache):
            return cache[n]
        with self._lock:
            while len(cache) <= n:
                if self.kind == "base":
                    cache.append(cache[-1] * self.param)
                else:
                    cache.append(sum(cache[-(self.param + 1):]))
            return cache[n]

    def recurrence_polynomial(self):
        """Characteristic polynomial of the basis, highest degree first."""
        if self.kind == "base":
            return [1, -self.param]
        return [1] + [-1] * (self.param + 1)

    def dominant_root(self, prec=128):
        """``k`` for base systems, the Pisot root of the basis recurrence otherwise."""
        if self.kind == "base":
            return mpmath.mpf(self.param)
        if prec not in self._root_cache:
            self._root_cache[prec] = dominant_root(self.recurrence_polynomial(), prec)
        return self._root_cache[prec]

    def length(self, n):
        """Number of digits of the normal representation of ``n``."""
        if n < 0:
            raise DomainError("n must be non-negative")
        size = len(self._basis)
        while self._basis[-1] <= n:
            size *= 2
            self.basis(size)
        return bisect.bisect_right(self._basis, n)

    def in_language(self, digits):
        """Whether ``digits`` (msb first) is a normal representation."""
        digits = tuple(digits)
        if not digits:
            return True
        if digits[0] == 0:
            return False
        if any(d < 0 or d >= self.alphabet_size for d in digits):
            return False
        if self.kind == "bounded_run":
            run = 0
            for d in digits:
                run = run + 1 if d else 0
                if run > self.param:
                    return False
        return True

    def rep(self, n):
        """Greedy (normal) representation of ``n`` as a :class:`DigitWord`."""
        if n < 0:
            raise DomainError("only non-negative integers have representations")
        if self.kind == "base":
            out = []
            while n:
                n, d = divmod(n, self.param)
                out.append(d)
            return DigitWord(tuple(reversed(out)), self)
        ell = self.length(n)
        out = []
        for j in range(ell - 1, -1, -1):
            b = self.basis(j)
            if b <= n:
                out.append(1)
                n -= b
            else:
                out.append(0)
        return DigitWord(tuple(out), self)

    def val(self, digits):
        """Sum of ``digit_j * basis(j)``; ``digits`` need not be normal."""
        digits = tuple(digits)
        size = self.alphabet_size
        total = 0
        for j, d in enumerate(reversed(digits)):
            if not 0 <= d < size:
                raise DomainError("digit %r outside the alphabet of %s" % (d, self.name))
            if d:
                total += d * self.basis(j)
        return total

    def relpos(self, n, prec=128):
        """Position of ``n`` inside ``[basis(l-1), basis(l))`` as a real in ``[0, 1)``.

        The digits are weighted by powers of the dominant root ``theta`` so the
        leading digit contributes 1; the resulting ``x`` lies in ``[1, theta)``
        and is mapped affinely onto ``[0, 1)``. In base 2 this is ``relpos2``
        and for Fibonacci it coincides with :func:`relposF`.
        """
        if n < 1:
            raise DomainError("relpos needs n >= 1")
        digits = self.rep(n).digits
        with mpmath.workprec(prec):
            theta = self.dominant_root(prec)
            # x - 1 summed directly, so checkpoints give exactly 0
            frac, power = mpmath.mpf(digits[0] - 1), mpmath.mpf(1)
            for d in digits[1:]:
                power /= theta
                if d:
                    frac += d * power
            return frac / (theta - 1)

    def log(self, n, prec=128):
        """``|rep(n)| - 1 + relpos(n)``, the piecewise-affine logarithm."""
        return self.length(n) - 1 + self.relpos(n, prec)


@functools.lru_cache(maxsize=None)
def base_k(k):
    return NumerationSystem("base", k)


@functools.lru_cache(maxsize=None)
def bounded_run(m):
    names = {1: "fibonacci", 2: "tribonacci", 3: "quadribonacci"}
    return NumerationSystem("bounded_run", m, names.get(m))


def _system_from_descriptor(kind, param):
    return base_k(param) if kind == "base" else bounded_run(param)


BASE2 = base_k(2)
FIBONACCI = bounded_run(1)
TRIBONACCI = bounded_run(2)
QUADRIBONACCI = bounded_run(3)

_SYSTEM_NAMES = {
    "base2": BASE2,
    "binary": BASE2,
    "fibonacci": FIBONACCI,
    "zeckendorf": FIBONACCI,
    "tribonacci": TRIBONACCI,
    "quadribonacci": QUADRIBONACCI,
}


def system_by_name(name):
    """Look up a system by name, e.g. ``"fibonacci"`` or ``"base3"``."""
    key = name.lower()
    if key in _SYSTEM_NAMES:
        return _SYSTEM_NAMES[key]
    if key.startswith("base") and key[4:].isdigit():
        return base_k(int(key[4:]))
    raise DomainError("unknown numeration system %r" % name)


# ---------------------------------------------------------------------------
# digit words


@dataclass(frozen=True)
class DigitWord:
    """A finite digit string (msb first) tied to a numeration system."""

    digits: tuple
    system: NumerationSystem

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        size = self.system.alphabet_size
        for d in self.digits:
            if not 0 <= d < size:
                raise DomainError("digit %d outside the alphabet of %s" % (d, self.system.name))

    @classmethod
    def parse(cls, text, system):
        if system.alphabet_size > 10:
            raise DomainError("string form only supports alphabets up to 10 digits")
        if text and not text.isdigit():
            raise DomainError("not a digit string: %r" % text)
        return cls(tuple(int(c) for c in text), system)

    def __str__(self):
        return "".join(str(d) for d in self.digits)

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __add__(self, other):
        other_digits = other.digits if isinstance(other, DigitWord) else tuple(other)
        return DigitWord(self.digits + other_digits, self.system)

    @property
    def is_normal(self):
        return self.system.in_language(self.digits)

    @property
    def value(self):
        return self.system.val(self.digits)

    def to_json(self):
        return {"system": self.system.name, "digits": str(self), "value": self.value}


def basis(system, n):
    """The ``n``-th basis value of ``system`` (``k**n``, ``F(n)``, ...)."""
    return system.basis(n)


def rep(system, n):
    return system.rep(n)


def val(word, system=None):
    """Value of a digit word. Plain sequences need an explicit ``system``."""
    if isinstance(word, DigitWord):
        return word.system.val(word.digits)
    if system is None:
        raise DomainError("a plain digit sequence needs a numeration system")
    if isinstance(word, str):
        word = tuple(int(c) for c in word)
    return system.val(word)


# ---------------------------------------------------------------------------
# reals in [0, 1)


def to_mpf(x, prec=128):
    """mpf from an int, Fraction, QSqrt5, RealCoordinate or mpf."""
    if isinstance(x, (QSqrt5, RealCoordinate)):
        return x.to_mpf(prec)
    if isinstance(x, Rational) and not isinstance(x, int):
        with mpmath.workprec(prec):
            return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _mpf_to_fraction(x):
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(man) * Fraction(2) ** exp


def _greedy_digits(x, radix, depth):
    """Greedy expansion of an exact ``x`` in [0, 1) with radix 2 or phi."""
    digits = []
    y = x
    for _ in range(depth):
        y = y * radix
        if y >= 1:
            digits.append(1)
            y = y - 1
        else:
            digits.append(0)
    return digits


class RealCoordinate:
    """A real ``alpha`` in ``[0, 1)``, exact or float-backed.

    Exact values are stored as :class:`QSqrt5` (rationals embed with a zero
    irrational part). A float-backed value carries an absolute error bound of
    ``2**-prec``; its digits are certified by expanding both ends of that
    interval and raising :class:`PrecisionError` at the first disagreement.
    """

    def __init__(self, lo, hi=None, label=None):
        lo = QSqrt5.coerce(lo)
        hi = lo if hi is None else QSqrt5.coerce(hi)
        if lo.sign() < 0 or hi >= 1:
            raise DomainError("alpha must lie in [0, 1)")
        if lo > hi:
            raise DomainError("empty interval")
        self.lo, self.hi = lo, hi
        self.label = label
        self._digits = {}
        self._lock = threading.Lock()

    @classmethod
    def exact(cls, value):
        if isinstance(value, str):
            value = Fraction(value)
        return cls(QSqrt5.coerce(value))

    @classmethod
    def from_mpf(cls, x, prec):
        """Wrap an mpmath float known to within ``2**-prec``."""
        centre = _mpf_to_fraction(x)
        err = Fraction(1, 2**prec)
        lo = max(centre - err, Fraction(0))
        hi = centre + err
        if hi >= 1:
            raise PrecisionError("interval around %s reaches 1" % mpmath.nstr(x, 15))
        return cls(lo, hi, label=mpmath.nstr(x, 20))

    @classmethod
    def pi_minus_3(cls, prec=256):
        with mpmath.workprec(prec + 16):
            return cls.from_mpf(mpmath.pi - 3, prec)

    @property
    def is_exact(self):
        return self.lo == self.hi

    @property
    def value(self):
        """Exact value (QSqrt5) when exact, else the interval midpoint."""
        if self.is_exact:
            return self.lo
        return QSqrt5(Fraction(1, 2)) * (self.lo + self.hi)

    def to_mpf(self, prec=128):
        return self.value.to_mpf(prec)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        if self.label:
            return "RealCoordinate(%s)" % self.label
        if self.is_exact:
            return "RealCoordinate(%r)" % (self.lo,)
        return "RealCoordinate([%s, %s])" % (float(self.lo), float(self.hi))

    def digits(self, system, depth):
        """First ``depth`` digits in ``"binary"`` or ``"golden"`` expansion."""
        radix = _radix(system)
        key = "binary" if radix == 2 else "golden"
        with self._lock:
            cached = self._digits.get(key)
            if cached is not None and len(cached) >= depth:
                return tuple(cached[:depth])
            lo_digits = _greedy_digits(self.lo, radix, depth)
            if not self.is_exact:
                hi_digits = _greedy_digits(self.hi, radix, depth)
                for i, (p, q) in enumerate(zip(lo_digits, hi_digits)):
                    if p != q:
                        raise PrecisionError(
                            "%s expansion of %r is only certified to %d digits, %d requested"
                            % (key, self, i, depth)
                        )
            self._digits[key] = tuple(lo_digits)
            return tuple(lo_digits)


def _radix(system):
    if isinstance(system, NumerationSystem):
        if system is BASE2:
            return 2
        if system is FIBONACCI:
            return PHI
    elif system in ("binary", "base2", "2"):
        return 2
    elif system in ("golden", "phi", "fibonacci"):
        return PHI
    raise DomainError("real expansions exist for binary and golden systems only, not %r" % (system,))


def as_coordinate(alpha):
    """Coerce ints, Fractions, strings like ``"3/8"`` and QSqrt5 to a coordinate."""
    if isinstance(alpha, RealCoordinate):
        return alpha
    if isinstance(alpha, float):
        return RealCoordinate.exact(Fraction(alpha))
    return RealCoordinate.exact(alpha)


def real_expansion(alpha, system, depth):
    """Greedy digits ``d_1 ... d_depth`` of ``alpha`` in base 2 or base phi."""
    if depth < 1:
        raise DomainError("depth must be at least 1")
    return as_coordinate(alpha).digits(system, depth)


# ---------------------------------------------------------------------------
# relative positions


def relpos2(x):
    """``(x - 2**floor(log2 x)) / 2**floor(log2 x)``.

    Integers and Fractions give an exact Fraction, anything else an mpf.
    """
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        x = Fraction(x)
        if x <= 0:
            raise DomainError("relpos2 needs x > 0")
        ell = x.numerator.bit_length() - x.denominator.bit_length()
        p = Fraction(2) ** ell
        if p > x:
            p /= 2
        elif 2 * p <= x:
            p *= 2
        return (x - p) / p
    x = mpmath.mpf(x)
    if x <= 0:
        raise DomainError("relpos2 needs x > 0")
    e = mpmath.floor(mpmath.log(x, 2))
    p = mpmath.mpf(2) ** e
    # guard the floor against rounding near powers of two
    if p > x:
        p /= 2
    elif 2 * p <= x:
        p *= 2
    return (x - p) / p


def relposF(n):
    """Exact Fibonacci relative position of ``n`` as a :class:`QSqrt5`.

    With ``rep_F(n) = 10 r_1 ... r_k`` this is ``sum r_i phi**-i``. The word
    ``10`` (n = 2) gives 0; ``n`` in ``{0, 1}`` is rejected.
    """
    digits = FIBONACCI.rep(n).digits
    if len(digits) < 2:
        raise DomainError("relposF is defined for n >= 2 (representation starting with 10)")
    return golden_word_value(digits[2:])


def golden_word_value(word):
    """Exact ``sum r_i phi**-i`` for the digit word ``r_1 r_2 ...``."""
    # track phi**-i = p + q*phi with integers; multiplying by phi - 1 maps (p, q) to (q - p, p)
    p, q = 1, 0
    tp = tq = 0
    for r in word:
        p, q = q - p, p
        if r:
            tp += p
            tq += q
    return QSqrt5(Fraction(2 * tp + tq, 2), Fraction(tq, 2))


def logF(n, prec=128):
    """``|rep_F(n)| - 1 + relposF(n)`` as an mpf."""
    with mpmath.workprec(prec):
        return len(FIBONACCI.rep(n)) - 1 + relposF(n).to_mpf(prec)
