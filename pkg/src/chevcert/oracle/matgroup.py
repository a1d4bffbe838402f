"""Brute-force GL(n, q) with its parabolic subgroups.

Matrices are numpy int arrays of field elements (see ``gf``); a matrix is
keyed by the base-q integer of its row-major entries.  Parabolics are the
block upper-triangular subgroups, so they stabilize the standard flag
spanned by initial segments of the basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from ..errors import CapExceeded, InternalConsistencyError
from .gf import GF, field

DEFAULT_CAP = 20160  # |GL(4, 2)|


def gl_order(n: int, q: int) -> int:
    return math.prod(q**n - q**k for k in range(n))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num = math.prod(q ** (n - i) - 1 for i in range(k))
    den = math.prod(q ** (i + 1) - 1 for i in range(k))
    return num // den


@dataclass
class ElementSet:
    """A set of n x n matrices over GF(q), with sorted integer keys."""

    n: int
    q: int
    mats: np.ndarray  # (m, n, n)
    keys: np.ndarray  # (m,), sorted

    def __len__(self):
        return len(self.keys)

    def contains(self, keys) -> np.ndarray:
        idx = np.searchsorted(self.keys, keys)
        idx = np.minimum(idx, len(self.keys) - 1)
        return self.keys[idx] == keys


@dataclass
class MatGroup(ElementSet):
    F: GF = None


def _weights(n, q):
    return np.array([q**k for k in range(n * n)], dtype=np.int64)


def encode(mats: np.ndarray, q: int) -> np.ndarray:
    n = mats.shape[-1]
    return mats.reshape(mats.shape[0], n * n) @ _weights(n, q)


def _make_set(n, q, mats, cls=ElementSet, **extra):
    keys = encode(mats, q)
    order = np.argsort(keys, kind="stable")
    return cls(n, q, mats[order], keys[order], **extra)


def matmul_batch(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Products A[m] @ B[m] over GF(q); A and B broadcast along the first axis."""
    terms = F.mul[A[:, :, :, None], B[:, None, :, :]]  # (m, i, j, k)
    acc = terms[:, :, 0, :]
    for j in range(1, terms.shape[2]):
        acc = F.add[acc, terms[:, :, j, :]]
    return acc


def _vec_add(F, u, v):
    return tuple(int(F.add[a, b]) for a, b in zip(u, v))


def _vec_scale(F, c, u):
    return tuple(int(F.mul[c, a]) for a in u)


def _extend_span(F, span, v):
    return frozenset(_vec_add(F, s, _vec_scale(F, c, v)) for s in span for c in F.elements())


def enumerate_gl(n: int, q: int, cap: int = DEFAULT_CAP) -> MatGroup:
    """All invertible n x n matrices over GF(q), built row by row outside the running span."""
    size = gl_order(n, q)
    if size > cap:
        raise CapExceeded(f"|GL({n},{q})| = {size} exceeds the cap {cap}", count=size)
    F = field(q)
    vectors = list(product(range(q), repeat=n))
    rows_out = []

    def extend(rows, span):
        if len(rows) == n:
            rows_out.append(rows)
            return
        for v in vectors:
            if v not in span:
                extend(rows + [v], _extend_span(F, span, v))

    extend([], frozenset([(0,) * n]))
    if len(rows_out) != size:
        raise InternalConsistencyError(f"enumerated {len(rows_out)} elements of GL({n},{q}), expected {size}")
    mats = np.array(rows_out, dtype=np.int64).reshape(size, n, n)
    return _make_set(n, q, mats, cls=MatGroup, F=F)


def composition_to_mask(composition) -> int:
    """Diagram subset W of A_{n-1}: vertex i is in W iff positions i, i+1 share a block."""
    mask, pos = 0, 0
    for size in composition:
        for k in range(size - 1):
            mask |= 1 << (pos + k)
        pos += size
    return mask


def mask_to_composition(mask: int, n: int) -> tuple[int, ...]:
    comp, cur = [], 1
    for i in range(n - 1):
        if mask >> i & 1:
            cur += 1
        else:
            comp.append(cur)
            cur = 1
    comp.append(cur)
    return tuple(comp)


def compositions(n: int):
    return [mask_to_composition(m, n) for m in range(1 << (n - 1))]


def complementary_composition(composition) -> tuple[int, ...]:
    n = sum(composition)
    full = (1 << (n - 1)) - 1
    return mask_to_composition(full ^ composition_to_mask(composition), n)


def parabolic_of(g: MatGroup, composition) -> ElementSet:
    """Block upper-triangular elements of g for the given block sizes."""
    composition = tuple(composition)
    if sum(composition) != g.n or any(b < 1 for b in composition):
        raise ValueError(f"composition {composition} does not partition {g.n}")
    block = np.repeat(np.arange(len(composition)), composition)
    below = block[:, None] > block[None, :]
    keep = ~np.any(g.mats[:, below] != 0, axis=1)
    return ElementSet(g.n, g.q, g.mats[keep], g.keys[keep])


@dataclass(frozen=True)
class ProductSetReport:
    size_A: int
    size_B: int
    intersection: int
    literal: int  # |AB| by hashing every product
    formula: int  # |A||B| / |A cap B|


def product_set_size(F: GF, A: ElementSet, B: ElementSet, chunk: int = 64) -> ProductSetReport:
    """|AB| counted literally, cross-checked against the product formula."""
    seen = []
    for start in range(0, len(A), chunk):
        a = A.mats[start : start + chunk]
        left = np.repeat(a, len(B), axis=0)
        right = np.tile(B.mats, (len(a), 1, 1))
        seen.append(np.unique(encode(matmul_batch(F, left, right), A.q)))
    literal = len(np.unique(np.concatenate(seen)))
    inter = len(np.intersect1d(A.keys, B.keys))
    num = len(A) * len(B)
    if num % inter:
        raise InternalConsistencyError("|A cap B| does not divide |A||B|")
    report = ProductSetReport(len(A), len(B), inter, literal, num // inter)
    if report.literal != report.formula:
        raise InternalConsistencyError(f"product set size {report.literal} != product formula {report.formula}")
    return report


def check_closure(F: GF, S: ElementSet, samples: int = 1000, seed: int = 0) -> bool:
    """Spot-check closure under products and inverses on random pairs."""
    rng = np.random.default_rng(seed)
    i = rng.integers(0, len(S), samples)
    j = rng.integers(0, len(S), samples)
    prods = encode(matmul_batch(F, S.mats[i], S.mats[j]), S.q)
    if not S.contains(prods).all():
        return False
    identity = encode(np.eye(S.n, dtype=np.int64)[None], S.q)[0]
    for a in S.mats[i[: min(50, samples)]]:
        prods = encode(matmul_batch(F, np.broadcast_to(a, S.mats.shape).copy(), S.mats), S.q)
        if not (prods == identity).any():
            return False
    return True


# ------------------------------------------------------------ subspace orbits


def _span_of_columns(F, mat, dim):
    span = frozenset([(0,) * mat.shape[0]])
    for c in range(dim):
        span = _extend_span(F, span, tuple(int(x) for x in mat[:, c]))
    return span


def all_subspaces(F: GF, n: int, dim: int) -> set:
    """Every dim-dimensional subspace of GF(q)^n as a frozenset of vectors."""
    vectors = list(product(range(F.q), repeat=n))
    layer = {frozenset([(0,) * n])}
    for _ in range(dim):
        layer = {_extend_span(F, s, v) for s in layer for v in vectors if v not in s}
    return layer


@dataclass(frozen=True)
class TransitivityReport:
    n: int
    q: int
    dim: int
    subspaces: int
    gaussian_binomial: int
    G_orbit: int
    stabilizer_fixes_V: bool
    complement_composition: tuple[int, ...]
    complement_orbit: int

    @property
    def transitive(self) -> bool:
        return self.G_orbit == self.subspaces

    @property
    def complement_is_smaller(self) -> bool:
        return self.complement_orbit < self.subspaces


def _orbit(F, S: ElementSet, dim):
    return {_span_of_columns(F, m, dim) for m in S.mats}


def transitivity_witness(g: MatGroup, dim: int) -> TransitivityReport:
    """G is transitive on dim-subspaces but the complementary parabolic is not.

    V is spanned by the first dim basis vectors; its stabilizer is the parabolic
    with blocks (dim, n - dim).
    """
    n = g.n
    if not 0 < dim < n:
        raise ValueError("need 0 < dim < n")
    F = g.F
    subspaces = all_subspaces(F, n, dim)
    P = parabolic_of(g, (dim, n - dim))
    comp = complementary_composition((dim, n - dim))
    Pc = parabolic_of(g, comp)
    return TransitivityReport(
        n=n,
        q=g.q,
        dim=dim,
        subspaces=len(subspaces),
        gaussian_binomial=gaussian_binomial(n, dim, g.q),
        G_orbit=len(_orbit(F, g, dim)),
        stabilizer_fixes_V=len(_orbit(F, P, dim)) == 1,
        complement_composition=comp,
        complement_orbit=len(_orbit(F, Pc, dim)),
    )
