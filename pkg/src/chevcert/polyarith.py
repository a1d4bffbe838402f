"""Exact integer and integer-polynomial arithmetic.

Python's ``int`` is the big-integer type; everything here is exact.  The
module provides dense polynomials in one indeterminate, cyclotomic
polynomials, p-adic valuations, deterministic primality testing and
primitive prime divisors of ``q**r - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import zip_longest

from sympy import factorint

from .errors import InternalConsistencyError, RangeError

# Miller-Rabin with the first 13 prime bases is deterministic below this bound.
MR_DETERMINISTIC_BOUND = 3317044064679887385961981
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
TRIAL_DIVISION_BOUND = 10**6


class IntPoly:
    """Dense polynomial with integer coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c):
        return cls([c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "q" if d == 1 else f"q^{d}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly([other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return IntPoly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = IntPoly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        """Long division over the integers; the divisor must be monic up to sign.

        Raises ``ZeroDivisionError`` on a zero divisor and ``ValueError`` if a
        quotient coefficient would leave the integers.
        """
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.leading()
        dq = other.degree
        if len(rem) - 1 < dq:
            return IntPoly(), IntPoly(rem)
        quot = [0] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq]
            if c == 0:
                continue
            if c % lead:
                raise ValueError("division leaves the integers")
            t = c // lead
            quot[k] = t
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= t * b
        return IntPoly(quot), IntPoly(rem)

    def exact_div(self, other):
        """Quotient of an exact division; a nonzero remainder is a consistency failure."""
        try:
            quot, rem = divmod(self, other)
        except ValueError as exc:
            raise InternalConsistencyError(f"inexact division of {self} by {other}") from exc
        if not rem.is_zero():
            raise InternalConsistencyError(f"inexact division of {self} by {other}: remainder {rem}")
        return quot

    def __call__(self, q):
        return poly_eval(self, q)


def poly_eval(f: IntPoly, q: int) -> int:
    """Horner evaluation of ``f`` at the integer ``q``."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * q + c
    return acc


def q_power_minus_one(i: int) -> IntPoly:
    """The polynomial ``q**i - 1``."""
    return IntPoly([-1] + [0] * (i - 1) + [1])


def divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic(r: int) -> IntPoly:
    """The r-th cyclotomic polynomial, via ``q**r - 1 = prod_{d | r} Phi_d``."""
    if r < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {r}")
    f = q_power_minus_one(r)
    for d in divisors(r):
        if d < r:
            f = f.exact_div(cyclotomic(d))
    return f


def p_adic_valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n (n > 0)."""
    if n <= 0:
        raise ValueError("valuation needs a positive integer")
    if p < 2:
        raise ValueError("valuation needs a prime")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@lru_cache(maxsize=1)
def small_primes(bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; raises RangeError above the proven bound."""
    if n < 2:
        return False
    for p in MR_BASES:
        if n % p == 0:
            return n == p
    if n >= MR_DETERMINISTIC_BOUND:
        verdict = _pocklington(n)
        if verdict is None:
            raise RangeError(f"primality of {n} is beyond the deterministic Miller-Rabin range and unproven")
        return verdict
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, exactly."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def is_prime_power(q: int) -> tuple[int, int]:
    """Decompose q = p**e with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for e in range(q.bit_length(), 0, -1):
        p = iroot(q, e)
        if p >= 2 and p**e == q and is_prime(p):
            return p, e
    raise ValueError(f"{q} is not a prime power")


@dataclass(frozen=True)
class PrimitivePrimeCertificate:
    q: int
    r: int
    p: int
    witness: tuple[int, ...]  # q**k mod p for k = 1 .. r-1

    def to_json(self):
        return {
            "q": str(self.q),
            "r": self.r,
            "p": str(self.p),
            "witness": [str(w) for w in self.witness],
        }


@dataclass(frozen=True)
class ZsigmondyException:
    """Marker for the single failure (q, r) = (2, 6): 2**6 - 1 = (2**2 - 1)**2 * (2**3 - 1)."""

    q: int = 2
    r: int = 6

    @property
    def identity(self):
        lhs = self.q**self.r - 1
        factors = [(2, 2), (3, 1)]  # exponent k, multiplicity of (2**k - 1)
        rhs = 1
        for k, m in factors:
            rhs *= (self.q**k - 1) ** m
        return lhs, factors, rhs

    def to_json(self):
        lhs, factors, rhs = self.identity
        return {
            "q": str(self.q),
            "r": self.r,
            "exception": True,
            "value": str(lhs),
            "factorization": [{"base": f"{self.q}^{k}-1", "value": str(self.q**k - 1), "multiplicity": m} for k, m in factors],
            "product": str(rhs),
        }


def _order_witness(q, r, p):
    return tuple(pow(q, k, p) for k in range(1, r))


def _candidate_factorization(n: int) -> dict[int, int]:
    """Factorization of n found by sympy; only the product is trusted here."""
    found = {int(p): e for p, e in factorint(n).items()}
    if math.prod(p**e for p, e in found.items()) != n:
        raise InternalConsistencyError(f"factorization of {n} does not multiply back")
    return found


def _pocklington(n: int) -> bool | None:
    """Primality of n beyond the Miller-Rabin bound: True proven, False composite, None unknown.

    Pocklington: if F | n-1 with F*F > n, and for each prime p | F some a has
    a^(n-1) = 1 and gcd(a^((n-1)/p) - 1, n) = 1 (mod n), then n is prime.
    The prime factors of F are themselves proven by is_prime.
    """
    if pow(2, n - 1, n) != 1:
        return False
    F, used = 1, []
    for p, e in _candidate_factorization(n - 1).items():
        try:
            if is_prime(p):
                F *= p**e
                used.append(p)
        except RangeError:
            continue
    if F * F <= n:
        return None
    for p in used:
        for a in MR_BASES:
            if pow(a, n - 1, n) != 1:
                return False
            if math.gcd(pow(a, (n - 1) // p, n) - 1, n) == 1:
                break
        else:
            return None
    return True


def prime_factors_ascending(n: int):
    """Yield the distinct prime factors of n in ascending order.

    Trial division runs to TRIAL_DIVISION_BOUND.  A cofactor left over is
    split with sympy, and every piece must then pass is_prime, otherwise
    RangeError is raised.
    """
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            yield p
            while n % p == 0:
                n //= p
    else:
        # every factor left is above the trial bound
        for p in sorted(_candidate_factorization(n)):
            if not is_prime(p):
                raise RangeError(f"{p} from the factorization of {n} is not prime")
            yield p
        return
    if n > 1:
        yield n


def zsigmondy_prime(q: int, r: int):
    """Smallest primitive prime divisor of ``q**r - 1``.

    Returns a PrimitivePrimeCertificate, or ZsigmondyException for (2, 6).
    """
    if q < 2 or r <= 2:
        raise ValueError(f"zsigmondy_prime needs q >= 2 and r > 2, got ({q}, {r})")
    if (q, r) == (2, 6):
        return ZsigmondyException()
    value = poly_eval(cyclotomic(r), q)
    for p in prime_factors_ascending(value):
        # prime factors of Phi_r(q) are primitive unless they divide r
        if r % p:
            return PrimitivePrimeCertificate(q, r, p, _order_witness(q, r, p))
    raise InternalConsistencyError(f"no primitive prime divisor of {q}^{r}-1")


def multiplicative_order(q: int, p: int) -> int:
    if q % p == 0:
        raise ValueError(f"{q} is not a unit mod {p}")
    x, k = q % p, 1
    while x != 1:
        x = x * q % p
        k += 1
    return k


def check_primitive_certificate(cert: PrimitivePrimeCertificate) -> str | None:
    """Independent re-validation; returns None if valid, else the failing claim."""
    q, r, p = cert.q, cert.r, cert.p
    if q < 2 or r <= 2:
        return "q/r out of range"
    if not is_prime(p):
        return f"p={p} is not prime"
    if q % p == 0:
        return f"p={p} divides q"
    if pow(q, r, p) != 1:
        return f"p={p} does not divide q^{r}-1"
    if len(cert.witness) != r - 1:
        return "witness length mismatch"
    for k, w in enumerate(cert.witness, start=1):
        if w != pow(q, k, p):
            return f"witness residue for k={k} is wrong"
        if w == 1:
            return f"p={p} divides q^{k}-1"
    return None
