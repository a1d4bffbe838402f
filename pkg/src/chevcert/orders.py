"""Degree data, Chevalley group orders and Weyl group Poincare polynomials.

Parabolic subgroups are handled in ratio-to-Borel form: |P_W| / |B| is the
Poincare polynomial of the Levi components of W evaluated at q, which does
not depend on the isogeny type of the group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce

from .dynkin import DynkinType, MarkedDiagram, induced_subdiagram, mask_to_vertices, supported_types
from .errors import InternalConsistencyError
from .polyarith import IntPoly, is_prime_power, poly_eval, q_power_minus_one

_EXCEPTIONAL_DEGREES = {
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
    ("F", 4): (2, 6, 8, 12),
    ("G", 2): (2, 6),
}

# the gcd divisor in the order formula, keyed by family (E split by rank)
_DIVISOR_KIND = {
    "A": "gcd(n+1,q-1)",
    "B": "gcd(2,q-1)",
    "C": "gcd(2,q-1)",
    "D": "gcd(4,q^n-1)",
    ("E", 6): "gcd(3,q-1)",
    ("E", 7): "gcd(2,q-1)",
    ("E", 8): "1",
    "F": "1",
    "G": "1",
}


@dataclass(frozen=True)
class ExponentData:
    dtype: DynkinType
    degrees: tuple[int, ...]  # multiset, ascending
    N: int
    divisor_kind: str

    @property
    def max_degree(self) -> int:
        return self.degrees[-1]

    def divisor(self, q: int) -> int:
        n = self.dtype.rank
        kind = self.divisor_kind
        if kind == "gcd(n+1,q-1)":
            return math.gcd(n + 1, q - 1)
        if kind == "gcd(2,q-1)":
            return math.gcd(2, q - 1)
        if kind == "gcd(4,q^n-1)":
            return math.gcd(4, q**n - 1)
        if kind == "gcd(3,q-1)":
            return math.gcd(3, q - 1)
        return 1


@lru_cache(maxsize=None)
def exponent_data(dtype: DynkinType) -> ExponentData:
    fam, n = dtype.family, dtype.rank
    if fam == "A":
        degrees = tuple(range(2, n + 2))
    elif fam in ("B", "C"):
        degrees = tuple(range(2, 2 * n + 1, 2))
    elif fam == "D":
        degrees = tuple(sorted([n] + list(range(2, 2 * n - 1, 2))))
    else:
        degrees = _EXCEPTIONAL_DEGREES[(fam, n)]
    kind = _DIVISOR_KIND.get(fam) or _DIVISOR_KIND[(fam, n)]
    return ExponentData(dtype, degrees, sum(i - 1 for i in degrees), kind)


def table_q_exponent(dtype: DynkinType) -> int:
    """The q-exponent printed in the order table, stated independently of the degrees."""
    fam, n = dtype.family, dtype.rank
    if fam == "A":
        return n * (n + 1) // 2
    if fam in ("B", "C"):
        return n * n
    if fam == "D":
        return n * (n - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[(fam, n)]


@dataclass(frozen=True)
class OrderValue:
    value: int
    q_exponent: int
    degrees: tuple[int, ...]
    divisor: int


def group_order(dtype: DynkinType, q: int) -> OrderValue:
    is_prime_power(q)
    ed = exponent_data(dtype)
    full = q**ed.N
    for i in ed.degrees:
        full *= q**i - 1
    d = ed.divisor(q)
    if full % d:
        raise InternalConsistencyError(f"divisor {d} does not divide the order of {dtype}({q})")
    return OrderValue(full // d, ed.N, ed.degrees, d)


@lru_cache(maxsize=None)
def _poincare_single(dtype: DynkinType) -> IntPoly:
    ed = exponent_data(dtype)
    num = reduce(lambda f, i: f * q_power_minus_one(i), ed.degrees, IntPoly([1]))
    return num.exact_div(IntPoly([-1, 1]) ** dtype.rank)


def poincare_polynomial(types) -> IntPoly:
    """prod_i (q^i - 1) / (q - 1)^rank over a type or a list of component types."""
    if isinstance(types, DynkinType):
        return _poincare_single(types)
    return reduce(lambda f, t: f * _poincare_single(t), types, IntPoly([1]))


@lru_cache(maxsize=None)
def poincare_value(dtype: DynkinType, q: int) -> int:
    return poly_eval(_poincare_single(dtype), q)


@dataclass(frozen=True)
class ParabolicOrderData:
    mask: int
    levi_components: tuple[DynkinType, ...]
    torus_corank: int
    unipotent_exponent: int
    poincare: IntPoly

    @property
    def W(self) -> tuple[int, ...]:
        return mask_to_vertices(self.mask)

    def borel_index(self, q: int) -> int:
        """|P_W : B|."""
        return poly_eval(self.poincare, q)

    def universal_order(self, q: int, N: int, rank: int) -> int:
        """q^N (q-1)^rank |P_W : B|; convention dependent (ignores center and isogeny)."""
        return q**N * (q - 1) ** rank * self.borel_index(q)


def parabolic_order_data(d: MarkedDiagram, W) -> ParabolicOrderData:
    sub = induced_subdiagram(d, W)
    comps = sub.types
    N = exponent_data(d.dtype).N
    levi_N = sum(exponent_data(t).N for t in comps)
    unip = N - levi_N
    if unip < 0:
        raise InternalConsistencyError(f"negative unipotent exponent for {d.dtype}, W={sub.W}")
    return ParabolicOrderData(
        mask=sub.mask,
        levi_components=comps,
        torus_corank=d.rank - len(sub.W),
        unipotent_exponent=unip,
        poincare=poincare_polynomial(comps),
    )


@dataclass(frozen=True)
class LemmaSubReport:
    dtype: DynkinType
    max_degree: int
    entries: tuple[tuple[DynkinType, tuple[int, ...], int], ...]  # (type, vertices, max degree)

    @property
    def largest_sub_degree(self) -> int:
        return max((m for _, _, m in self.entries), default=0)


def max_exponent_strictly_decreases(d: MarkedDiagram) -> LemmaSubReport:
    """Check max I(Y) < max I(X) for every connected proper sub-diagram Y of X."""
    top = exponent_data(d.dtype).max_degree
    entries = []
    for mask in range(1, d.full_mask()):
        sub = induced_subdiagram(d, mask)
        if len(sub.components) != 1:
            continue
        t = sub.types[0]
        m = exponent_data(t).max_degree
        if m >= top:
            raise InternalConsistencyError(f"{t} on {sub.W} has max degree {m} >= {top} in {d.dtype}")
        entries.append((t, sub.W, m))
    return LemmaSubReport(d.dtype, top, tuple(entries))


def exceptional_types_at(q: int, r: int, rank_cap: int = 12) -> list[DynkinType]:
    """Supported types (rank >= 2, classical ranks up to rank_cap) whose max degree is r.

    At (q, r) = (2, 6), these are the types where the primitive-prime argument fails.
    """
    return [t for t in supported_types(rank_cap, min_rank=2) if exponent_data(t).max_degree == r]

