"""Verification of the five (G, A, B) factorizations with |G| < 2*10^6.

(A6, A5, A5) and (A8, A7, 2^3:A1(7)) are built as permutation groups and
checked in full: G = AB literally, and the open interval (A cap B, G) is
exactly {A, B}.  The other three are checked on orders only; M12 can also be
checked in full on request.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from ..dynkin import DynkinType
from ..errors import CapExceeded
from ..orders import group_order
from . import perm

ENTRIES = ("a6", "a8", "m12", "c2_4", "c3_2")

# Published orders for groups that are not untwisted Chevalley groups.
MATHIEU_M11 = 7920
MATHIEU_M12 = 95040
PSL2_11 = 660  # M11 cap M11 inside M12
U3_3 = 6048  # 2A2(3^2)
SP4_4_INTERSECTION = 68
SP6_2_INTERSECTION = 336  # PGL(2, 7)


@dataclass
class GapEntryReport:
    entry: str
    triple: tuple[str, str, str]
    mode: str  # "full" or "arithmetic-only"
    order_G: int
    order_A: int
    order_B: int
    order_AB_cap: int
    formula_ok: bool
    product_set: int | None = None
    interval_orders: list[int] | None = None
    interval_is_A_B: bool | None = None
    search_attempts: int | None = None
    checks: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if not self.formula_ok or self.diagnostics or not all(self.checks.values()):
            return False
        if self.mode == "full":
            return self.product_set == self.order_G and bool(self.interval_is_A_B)
        return True

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["triple"] = list(self.triple)
        doc["ok"] = self.ok
        for k in ("order_G", "order_A", "order_B", "order_AB_cap", "product_set"):
            if doc[k] is not None:
                doc[k] = str(doc[k])
        return doc


def literal_product_size(A: perm.PermGroup, B: perm.PermGroup) -> int:
    """|AB| by forming every product (a first, then b) and hashing."""
    a = np.array(A.elements, dtype=np.int64)
    b = np.array(B.elements, dtype=np.int64)
    deg = A.degree
    weights = deg ** np.arange(deg, dtype=np.int64)
    keys = []
    for row in b:
        # (a * b)(x) = b[a[x]]
        keys.append(np.unique(row[a] @ weights))
    return len(np.unique(np.concatenate(keys)))


def _full(entry, triple, G, A, B, attempts):
    H = perm.intersection(A, B)
    report = GapEntryReport(
        entry=entry,
        triple=triple,
        mode="full",
        order_G=G.order,
        order_A=A.order,
        order_B=B.order,
        order_AB_cap=H.order,
        formula_ok=A.order * B.order == G.order * H.order,
        search_attempts=attempts,
    )
    report.product_set = literal_product_size(A, B)
    interval = perm.interval_atoms(H, G)
    report.interval_orders = [K.order for K in interval]
    report.interval_is_A_B = len(interval) == 2 and {K.element_set for K in interval} == {A.element_set, B.element_set}
    return report, H


def _verify_a6(seed):
    G = perm.alternating_group(6)
    A = perm.point_stabilizer_alternating(6)
    B, attempts = perm.random_subgroup_search(G, 60, lambda K: K.is_transitive(), seed)
    if B is None:
        return _failed("a6", ("A6", "A5", "A5"), G.order, f"no transitive A5 found in {attempts} attempts")
    report, H = _full("a6", ("A6", "A5", "A5"), G, A, B, attempts)
    report.checks["A_order_60"] = A.order == 60
    report.checks["B_transitive"] = B.is_transitive()
    report.checks["A_fixes_point_6"] = all(a[5] == 5 for a in A.elements)
    return report


def _is_affine_type(K: perm.PermGroup) -> bool:
    """Transitive with a regular normal subgroup of order 8 (the translations)."""
    if not K.is_transitive():
        return False
    for a in K.elements:
        if perm.cycle_type(a) == (2, 2, 2, 2):
            try:
                if perm.normal_closure(K, a, cap=8).order == 8:
                    return True
            except CapExceeded:
                continue
    return False


def _verify_a8(seed):
    G = perm.alternating_group(8)
    A = perm.point_stabilizer_alternating(8)
    B, attempts = perm.random_subgroup_search(G, 1344, _is_affine_type, seed)
    if B is None:
        return _failed("a8", ("A8", "A7", "2^3:A1(7)"), G.order, f"no 2^3:A1(7) found in {attempts} attempts")
    report, H = _full("a8", ("A8", "A7", "2^3:A1(7)"), G, A, B, attempts)
    report.checks["A_order_2520"] = A.order == 2520
    report.checks["B_has_regular_normal_2^3"] = _is_affine_type(B)
    report.checks["B_point_stabilizer_is_A1(7)_order"] = H.order == group_order(DynkinType("A", 1), 7).value
    return report


M12_GENERATORS = (
    "(1 2 3 4 5 6 7 8 9 10 11)",
    "(3 7 11 8)(4 10 5 6)",
    "(1 12)(2 11)(3 6)(4 8)(5 9)(7 10)",
)


def _verify_m12_full(seed):
    triple = ("M12", "M11", "M11")
    G = perm.closure([perm.from_cycles(c, 12) for c in M12_GENERATORS])
    if G.order != MATHIEU_M12:
        return _failed("m12", triple, G.order, f"generators give order {G.order}")
    A = G.stabilizer(11)
    B, attempts = perm.random_subgroup_search(G, MATHIEU_M11, lambda K: K.is_transitive(), seed)
    if B is None:
        return _failed("m12", triple, G.order, f"no transitive M11 found in {attempts} attempts")
    report, H = _full("m12", triple, G, A, B, attempts)
    report.checks["A_cap_B_order_660"] = H.order == PSL2_11
    return report


def _failed(entry, triple, order_G, message):
    return GapEntryReport(entry, triple, "full", order_G, 0, 0, 0, False, diagnostics=[message])


def _arithmetic(entry, triple, order_G, order_A, order_B, order_cap):
    ok = order_A * order_B == order_G * order_cap and order_A % order_cap == 0 and order_B % order_cap == 0
    return GapEntryReport(entry, triple, "arithmetic-only", order_G, order_A, order_B, order_cap, ok)


def verify_gap_entry(entry: str, seed: int = 0, full_m12: bool = False) -> GapEntryReport:
    """Verify one list entry; M12 is arithmetic-only unless ``full_m12`` is set."""
    entry = entry.lower()
    if entry == "a6":
        return _verify_a6(seed)
    if entry == "a8":
        return _verify_a8(seed)
    if entry == "m12" and full_m12:
        return _verify_m12_full(seed)
    if entry == "m12":
        return _arithmetic("m12", ("M12", "M11", "M11"), MATHIEU_M12, MATHIEU_M11, MATHIEU_M11, PSL2_11)
    if entry == "c2_4":
        G = group_order(DynkinType.canonical("C", 2), 4).value
        A = 2 * group_order(DynkinType("A", 1), 16).value
        return _arithmetic("c2_4", ("C2(2^2)", "A1(2^4):2", "A1(2^4):2"), G, A, A, SP4_4_INTERSECTION)
    if entry == "c3_2":
        G = group_order(DynkinType("C", 3), 2).value
        s8 = 2 * 20160  # A8:2
        return _arithmetic("c3_2", ("C3(2)", "A8:2", "2A2(3^2):2"), G, s8, 2 * U3_3, SP6_2_INTERSECTION)
    raise ValueError(f"unknown entry {entry!r}; choose from {', '.join(ENTRIES)}")
