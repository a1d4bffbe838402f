"""Cross-check of enumerated GL(n, q) against the Poincare-polynomial layer."""

from __future__ import annotations

from ..dynkin import DynkinType, standard_diagram
from ..orders import parabolic_order_data, poincare_value
from ..polyarith import poly_eval
from .matgroup import (
    DEFAULT_CAP,
    check_closure,
    complementary_composition,
    composition_to_mask,
    compositions,
    enumerate_gl,
    parabolic_of,
    product_set_size,
    transitivity_witness,
)


def gl_report(n: int, q: int, cap: int = DEFAULT_CAP) -> dict:
    """Enumerate GL(n, q) and compare every parabolic with the formula layer.

    The Dynkin type is A_{n-1}; a block composition of n is the diagram subset
    whose vertices join adjacent positions of the same block.
    """
    if n < 2:
        raise ValueError("GL oracle needs n >= 2")
    g = enumerate_gl(n, q, cap)
    F = g.F
    dtype = DynkinType("A", n - 1)
    d = standard_diagram(dtype)
    B = parabolic_of(g, (1,) * n)
    G_over_B, rem = divmod(len(g), len(B))
    expected_index = poincare_value(dtype, q)
    parabolics = []
    for comp in compositions(n):
        P = parabolic_of(g, comp)
        mask = composition_to_mask(comp)
        formula = poly_eval(parabolic_order_data(d, mask).poincare, q)
        row = {
            "composition": list(comp),
            "subset_bitmask": mask,
            "order": len(P),
            "index_over_B": len(P) // len(B),
            "poincare_value": formula,
            "matches": len(P) == len(B) * formula,
        }
        if 0 < mask < d.full_mask():
            comp_c = complementary_composition(comp)
            rep = product_set_size(F, P, parabolic_of(g, comp_c))
            row.update(
                complement=list(comp_c),
                product_set=rep.literal,
                product_formula=rep.formula,
                intersection=rep.intersection,
                proper_subset_of_G=rep.literal < len(g),
            )
        parabolics.append(row)
    transitivity = []
    for dim in range(1, n):
        t = transitivity_witness(g, dim)
        transitivity.append(
            {
                "dim": dim,
                "subspaces": t.subspaces,
                "gaussian_binomial": t.gaussian_binomial,
                "G_orbit": t.G_orbit,
                "stabilizer_fixes_V": t.stabilizer_fixes_V,
                "complement": list(t.complement_composition),
                "complement_orbit": t.complement_orbit,
                "transitive": t.transitive,
                "complement_is_smaller": t.complement_is_smaller,
            }
        )
    ok = (
        rem == 0
        and G_over_B == expected_index
        and all(r["matches"] and r.get("proper_subset_of_G", True) for r in parabolics)
        and all(
            t["transitive"]
            and t["stabilizer_fixes_V"]
            and t["subspaces"] == t["gaussian_binomial"]
            # only a proper complement can have a smaller orbit
            and (t["complement_is_smaller"] or t["complement"] == [n])
            for t in transitivity
        )
        and check_closure(F, g)
    )
    return {
        "n": n,
        "q": q,
        "order": len(g),
        "borel_order": len(B),
        "index_G_over_B": G_over_B,
        "poincare_value": expected_index,
        "parabolics": parabolics,
        "transitivity": transitivity,
        "ok": ok,
    }
