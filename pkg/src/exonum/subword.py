"""Binomial coefficients of words and the subword-counting sequences.

``s(n)`` counts the distinct base-2 representations occurring as scattered
subwords of ``rep_2(n - 1)``; ``s_F(n)`` does the same for Zeckendorf
representations of ``rep_F(n)``. Both have two independent evaluation paths:

* ``"oracle"`` enumerates subwords directly (exponential, capped);
* ``"recurrence"`` uses the known self-similar recurrences, memoized.

A third exact path, :func:`count_subwords_in_language`, counts distinct
subwords through their leftmost embeddings and a small automaton for the
numeration language. It runs in linear time and is what the experiments on
Tribonacci and Quadribonacci systems rely on.
"""

import functools
import threading

from exonum.errors import CapacityError, DomainError
from exonum.numeration import BASE2, FIBONACCI, DigitWord

DEFAULT_ORACLE_CAP = 22


def _digits(word):
    if isinstance(word, DigitWord):
        return word.digits
    if isinstance(word, str):
        return tuple(int(c) for c in word)
    return tuple(word)


def word_binomial(u, v):
    """Number of occurrences of ``v`` as a scattered subword of ``u``."""
    u, v = _digits(u), _digits(v)
    if len(v) > len(u):
        return 0
    # counts[j] = occurrences of v[:j] in the prefix of u read so far
    counts = [1] + [0] * len(v)
    for c in u:
        for j in range(len(v), 0, -1):
            if v[j - 1] == c:
                counts[j] += counts[j - 1]
    return counts[len(v)]


def all_subwords(u):
    """Set of distinct scattered subwords of ``u`` (including the empty word)."""
    seen = {()}
    for c in _digits(u):
        seen |= {w + (c,) for w in seen}
    return seen


def distinct_subwords_in_language(u, system, cap=DEFAULT_ORACLE_CAP):
    """Brute-force count of ``{v in rep(N) : binom(u, v) > 0}``.

    Every subword is enumerated, so the cost is exponential in ``len(u)``;
    words longer than ``cap`` raise :class:`CapacityError`.
    """
    u = _digits(u)
    if len(u) > cap:
        raise CapacityError("word of length %d exceeds the oracle cap %d" % (len(u), cap))
    return sum(1 for w in all_subwords(u) if system.in_language(w))


def _language_automaton(system):
    """(start, delta) for the normal-word language; ``None`` is the dead state."""
    if system.kind == "base":
        k = system.param

        def delta(state, c):
            if state == "start":
                return "in" if c != 0 else None
            return "in"

        return "start", delta, range(k)

    m = system.param

    def delta(state, c):
        if state == "start":
            return 1 if c == 1 else None
        if c == 0:
            return 0
        return state + 1 if state < m else None

    return "start", delta, (0, 1)


def count_subwords_in_language(u, system):
    """Exact count of distinct subwords of ``u`` lying in the system's language.

    Each distinct subword has a unique leftmost embedding in ``u``; counting
    those embeddings jointly with the state of the language automaton counts
    distinct valid subwords without listing them.
    """
    u = _digits(u)
    start, delta, alphabet = _language_automaton(system)
    n = len(u)
    # nxt[i][c]: first position >= i holding letter c
    nxt = [None] * (n + 1)
    nxt[n] = {c: None for c in alphabet}
    for i in range(n - 1, -1, -1):
        row = dict(nxt[i + 1])
        row[u[i]] = i
        nxt[i] = row
    # layer[i] maps automaton state -> number of subwords whose leftmost
    # embedding ends at position i
    layers = [dict() for _ in range(n)]
    total = 1  # the empty word

    def push(pos_from, state, count):
        nonlocal total
        for c in alphabet:
            j = nxt[pos_from][c]
            if j is None:
                continue
            q = delta(state, c)
            if q is None:
                continue
            layers[j][q] = layers[j].get(q, 0) + count

    push(0, start, 1)
    for i in range(n):
        for q, count in layers[i].items():
            total += count
            push(i + 1, q, count)
    return total


# ---------------------------------------------------------------------------
# s(n)


def _s_oracle(n, cap=DEFAULT_ORACLE_CAP):
    if n == 0:
        return 0
    return distinct_subwords_in_language(BASE2.rep(n - 1), BASE2, cap)


@functools.lru_cache(maxsize=None)
def _s_rec(n):
    if n <= 2:
        return n
    ell = (n - 1).bit_length() - 1  # n = 2**ell + r with 1 <= r <= 2**ell
    r = n - (1 << ell)
    if r <= 1 << (ell - 1):
        return _s_rec((1 << (ell - 1)) + r) + _s_rec(r)
    return _s_rec((1 << (ell + 1)) - r + 1)


def s(n, method="recurrence"):
    """The base-2 subword-count sequence ``s(n)``, with ``s(0) = 0``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if method == "recurrence":
        return _s_rec(n)
    if method == "oracle":
        return _s_oracle(n)
    if method == "automaton":
        return 0 if n == 0 else count_subwords_in_language(BASE2.rep(n - 1), BASE2)
    raise DomainError("unknown method %r" % method)


# ---------------------------------------------------------------------------
# s_F(n)


def _fib_lower(ell):
    """``F(ell)`` extended by ``F(-1) = 1`` so the recurrence covers ``ell = 1``."""
    return 1 if ell == -1 else FIBONACCI.basis(ell)


@functools.lru_cache(maxsize=None)
def _sF_rec(n):
    if n <= 1:
        return n + 1
    ell = FIBONACCI.length(n) - 1  # n = F(ell) + r with 0 <= r < F(ell - 1)
    r = n - FIBONACCI.basis(ell)
    if r < _fib_lower(ell - 2):
        return _sF_rec(FIBONACCI.basis(ell - 1) + r) + _sF_rec(r)
    return 2 * _sF_rec(r)


def s_F(n, method="recurrence"):
    """The Zeckendorf subword-count sequence ``s_F(n)``, with ``s_F(0) = 1``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if method == "recurrence":
        return _sF_rec(n)
    if method == "oracle":
        return distinct_subwords_in_language(FIBONACCI.rep(n), FIBONACCI)
    if method == "automaton":
        return count_subwords_in_language(FIBONACCI.rep(n), FIBONACCI)
    raise DomainError("unknown method %r" % method)


# ---------------------------------------------------------------------------
# other systems


def s_generalized(system, n, method="oracle", shifted=None, cap=DEFAULT_ORACLE_CAP):
    """Subword count for an arbitrary system.

    By default integer bases read ``rep(n - 1)`` (with value 0 at ``n = 0``)
    and bounded-run systems read ``rep(n)``. ``shifted`` overrides that
    choice: ``True`` reads ``rep(n - 1)``, ``False`` reads ``rep(n)``.
    ``method`` is ``"oracle"`` (enumeration, capped) or ``"automaton"``.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    if shifted is None:
        shifted = system.kind == "base"
    if shifted:
        if n == 0:
            return 0
        n -= 1
    word = system.rep(n)
    if method == "oracle":
        return distinct_subwords_in_language(word, system, cap)
    if method == "automaton":
        return count_subwords_in_language(word, system)
    raise DomainError("unknown method %r" % method)


class SubwordCounter:
    """Memoizing evaluator of the subword-count sequence of one system.

    ``method`` is ``"recurrence"`` (base 2 and Fibonacci only), ``"oracle"``
    or ``"automaton"``. The memo is guarded, so a counter may be shared by
    threads.
    """

    def __init__(self, system, method="recurrence", shifted=None):
        if method == "recurrence" and system not in (BASE2, FIBONACCI):
            raise DomainError("no recurrence is known for %s" % system.name)
        self.system = system
        self.method = method
        self.shifted = shifted
        self._memo = {}
        self._lock = threading.Lock()

    def __call__(self, n):
        with self._lock:
            if n in self._memo:
                return self._memo[n]
        if self.system is BASE2 and self.shifted in (None, True):
            value = s(n, self.method)
        elif self.system is FIBONACCI and self.shifted in (None, False):
            value = s_F(n, self.method)
        else:
            value = s_generalized(self.system, n, self.method, self.shifted)
        with self._lock:
            self._memo[n] = value
        return value

    def values(self, start, stop):
        """``[self(n) for n in range(start, stop)]``."""
        return [self(n) for n in range(start, stop)]
