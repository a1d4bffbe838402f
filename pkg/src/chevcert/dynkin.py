"""Dynkin diagrams of types A-G, induced sub-diagrams and their classification.

Vertices use Bourbaki numbering.  A multiple edge carries an arrow pointing
from the long root to the short root, stored as the ordered pair
``(long, short)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator

from .errors import InternalConsistencyError

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


def rank_is_valid(family: str, rank: int) -> bool:
    if family == "A":
        return rank >= 1
    if family == "B":
        return rank >= 2
    if family == "C":
        return rank >= 3
    if family == "D":
        return rank >= 4
    if family == "E":
        return rank in (6, 7, 8)
    if family == "F":
        return rank == 4
    if family == "G":
        return rank == 2
    return False


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown Dynkin family {self.family!r}")
        if not isinstance(self.rank, int) or not rank_is_valid(self.family, self.rank):
            raise ValueError(f"rank {self.rank!r} is out of bounds for family {self.family}")

    @classmethod
    def canonical(cls, family: str, rank: int) -> "DynkinType":
        """Rename low-rank coincidences: B1 = C1 = A1, C2 = B2, D3 = A3."""
        if family in ("B", "C") and rank == 1:
            return cls("A", 1)
        if family == "C" and rank == 2:
            return cls("B", 2)
        if family == "D" and rank == 3:
            return cls("A", 3)
        if family == "D" and rank <= 2:
            raise ValueError(f"D{rank} is not a connected Dynkin type")
        return cls(family, rank)

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    multiplicity: int = 1
    # for multiple edges: (long, short); None when simply laced
    arrow: tuple[int, int] | None = None


@dataclass(frozen=True)
class MarkedDiagram:
    dtype: DynkinType
    edges: tuple[Edge, ...]

    @property
    def rank(self) -> int:
        return self.dtype.rank

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.dtype.rank + 1))

    def full_mask(self) -> int:
        return (1 << self.rank) - 1


def standard_diagram(dtype: DynkinType) -> MarkedDiagram:
    """The diagram of ``dtype`` under Bourbaki labelling."""
    fam, n = dtype.family, dtype.rank
    path = [Edge(i, i + 1) for i in range(1, n)]
    if fam == "A":
        edges = path
    elif fam == "B":
        edges = path[:-1] + [Edge(n - 1, n, 2, (n - 1, n))]
    elif fam == "C":
        edges = path[:-1] + [Edge(n - 1, n, 2, (n, n - 1))]
    elif fam == "D":
        edges = [Edge(i, i + 1) for i in range(1, n - 2)] + [Edge(n - 2, n - 1), Edge(n - 2, n)]
    elif fam == "E":
        edges = [Edge(1, 3), Edge(3, 4), Edge(2, 4)] + [Edge(i, i + 1) for i in range(4, n)]
    elif fam == "F":
        edges = [Edge(1, 2), Edge(2, 3, 2, (2, 3)), Edge(3, 4)]
    else:  # G
        edges = [Edge(1, 2, 3, (1, 2))]
    return MarkedDiagram(dtype, tuple(edges))


def mask_to_vertices(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def vertices_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def classify_component(vertices: Iterable[Hashable], edges: Iterable[Edge]) -> DynkinType:
    """Dynkin type of a connected marked tree.

    Vertex names are arbitrary hashables.  Raises InternalConsistencyError if
    the input is not connected or is not a Dynkin diagram.
    """
    verts = list(vertices)
    edges = list(edges)
    n = len(verts)
    if n == 0:
        raise InternalConsistencyError("cannot classify an empty component")
    adj = defaultdict(list)
    for e in edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    if len(edges) != n - 1 or len(_reach(verts[0], adj)) != n:
        raise InternalConsistencyError("component is not a connected tree")

    multi = [e for e in edges if e.multiplicity > 1]
    degree = {v: len(adj[v]) for v in verts}
    if not multi:
        branch = [v for v in verts if degree[v] >= 3]
        if not branch:
            return DynkinType("A", n)
        if len(branch) > 1 or degree[branch[0]] != 3:
            raise InternalConsistencyError("simply-laced tree with bad branching")
        arms = sorted(_arm_length(branch[0], nb, adj) for nb in adj[branch[0]])
        if arms[:2] == [1, 1]:
            return DynkinType.canonical("D", n)
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return DynkinType("E", n)
        raise InternalConsistencyError(f"simply-laced tree with arms {arms} is not Dynkin")

    if len(multi) > 1 or max(degree.values()) > 2:
        raise InternalConsistencyError("multiply-laced component is not a path with one multi-edge")
    e = multi[0]
    if e.multiplicity == 3:
        if n != 2:
            raise InternalConsistencyError("triple edge inside a larger component")
        return DynkinType("G", 2)
    if e.multiplicity != 2 or e.arrow is None:
        raise InternalConsistencyError(f"unsupported edge {e}")
    if n == 2:
        return DynkinType("B", 2)
    long_v, short_v = e.arrow
    if degree[short_v] == 1:
        return DynkinType.canonical("B", n)
    if degree[long_v] == 1:
        return DynkinType.canonical("C", n)
    if n == 4:
        return DynkinType("F", 4)
    raise InternalConsistencyError("double edge in the interior of a path longer than F4")


def _reach(start, adj):
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _arm_length(center, first, adj):
    length, prev, cur = 1, center, first
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            return length
        if len(nxt) > 1:
            raise InternalConsistencyError("second branch point")
        prev, cur = cur, nxt[0]
        length += 1


@dataclass(frozen=True)
class SubDiagram:
    parent: MarkedDiagram
    mask: int
    components: tuple[tuple[DynkinType, tuple[int, ...]], ...]

    @property
    def W(self) -> tuple[int, ...]:
        return mask_to_vertices(self.mask)

    @property
    def types(self) -> tuple[DynkinType, ...]:
        return tuple(t for t, _ in self.components)


def induced_subdiagram(d: MarkedDiagram, W) -> SubDiagram:
    """Induced sub-diagram on W (a vertex iterable or a bitmask)."""
    mask = W if isinstance(W, int) else vertices_to_mask(W)
    if mask < 0 or mask > d.full_mask():
        raise ValueError(f"subset {W!r} is not inside the vertices of {d.dtype}")
    inside = [e for e in d.edges if mask >> (e.u - 1) & 1 and mask >> (e.v - 1) & 1]
    adj = defaultdict(list)
    for e in inside:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    seen = set()
    components = []
    for v in mask_to_vertices(mask):
        if v in seen:
            continue
        comp = _reach(v, adj)
        seen |= comp
        comp_edges = [e for e in inside if e.u in comp]
        verts = tuple(sorted(comp))
        components.append((classify_component(verts, comp_edges), verts))
    return SubDiagram(d, mask, tuple(components))


def enumerate_proper_subsets(d: MarkedDiagram) -> Iterator[tuple[int, ...]]:
    """All proper nonempty vertex subsets, by ascending bitmask."""
    for mask in range(1, d.full_mask()):
        yield mask_to_vertices(mask)


def supported_types(rank_cap: int = 12, min_rank: int = 1) -> list[DynkinType]:
    """Every type with rank in [min_rank, rank_cap] (exceptional types always included)."""
    out = []
    for fam in FAMILIES:
        if fam in "ABCD":
            ranks = range(1, rank_cap + 1)
        else:
            ranks = {"E": (6, 7, 8), "F": (4,), "G": (2,)}[fam]
        out.extend(DynkinType(fam, n) for n in ranks if rank_is_valid(fam, n) and n >= min_rank)
    return out
