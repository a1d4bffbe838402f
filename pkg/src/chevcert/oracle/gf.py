"""Log/antilog tables for GF(q), q a prime power up to 9.

Elements are the integers 0..q-1, read as base-p digit vectors of
polynomials in a root x of a fixed Conway polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..polyarith import is_prime_power

# Conway polynomials, coefficients low degree first (monic)
CONWAY = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2): (2, 2, 1),  # x^2 + 2x + 2
}

MAX_Q = 9


@dataclass(frozen=True)
class GF:
    q: int
    p: int
    e: int
    add: np.ndarray  # q x q
    mul: np.ndarray  # q x q
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is unused (0)
    log: np.ndarray  # log[0] is unused (-1)
    antilog: np.ndarray  # length q - 1

    def elements(self):
        return range(self.q)


def _digits(a, p, e):
    return [(a // p**k) % p for k in range(e)]


def _undigits(ds, p):
    return sum(d * p**k for k, d in enumerate(ds))


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    p, e = is_prime_power(q)
    if q > MAX_Q:
        raise ValueError(f"field tables are provided for q <= {MAX_Q}, got {q}")
    add = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        da = _digits(a, p, e)
        for b in range(q):
            db = _digits(b, p, e)
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)

    # powers of x modulo the defining polynomial
    if e == 1:
        gen = next(g for g in range(2, q) if _prime_order(g, p) == p - 1) if p > 2 else 1
        antilog = [pow(gen, k, p) for k in range(q - 1)]
    else:
        poly = CONWAY[(p, e)]
        cur = [1] + [0] * (e - 1)
        antilog = []
        for _ in range(q - 1):
            antilog.append(_undigits(cur, p))
            # multiply by x and reduce with x^e = -(lower terms)
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * poly[k]) % p for k, c in enumerate(cur)]
    if sorted(antilog) != list(range(1, q)):
        raise ValueError(f"defining polynomial for GF({q}) is not primitive")
    log = np.full(q, -1, dtype=np.int64)
    for k, a in enumerate(antilog):
        log[a] = k
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(1, q):
        for b in range(1, q):
            mul[a, b] = antilog[(log[a] + log[b]) % (q - 1)]
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = antilog[(-log[a]) % (q - 1)]
    return GF(q, p, e, add, mul, neg, inv, log, np.array(antilog, dtype=np.int64))


def _prime_order(g, p):
    x, k = g % p, 1
    while x != 1:
        x = x * g % p
        k += 1
    return k
