"""Permutation groups small enough to list every element.

Permutations are tuples of images of the points 0..degree-1 and compose left
to right: ``mul(a, b)`` applies ``a`` first.  Cycle notation at the surface
is 1-based, as in GAP.
"""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field

from ..errors import CapExceeded

MAX_DEGREE = 16
DEFAULT_CAP = 100_000


def mul(a: tuple, b: tuple) -> tuple:
    return tuple(map(b.__getitem__, a))


def inverse(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def identity(degree: int) -> tuple:
    return tuple(range(degree))


def from_cycles(text: str, degree: int) -> tuple:
    """Parse e.g. ``"(1 2 3)(4 5)"`` into an image tuple."""
    if degree > MAX_DEGREE:
        raise ValueError(f"degree {degree} exceeds {MAX_DEGREE}")
    images = list(range(degree))
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(x) - 1 for x in re.split(r"[\s,]+", cyc.strip()) if x]
        if any(not 0 <= x < degree for x in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle ({cyc}) for degree {degree}")
        for x, y in zip(pts, pts[1:] + pts[:1]):
            images[x] = y
    return tuple(images)


def cycle_type(a: tuple) -> tuple[int, ...]:
    seen = [False] * len(a)
    lengths = []
    for i in range(len(a)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                k += 1
            lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def is_even(a: tuple) -> bool:
    return sum(k - 1 for k in cycle_type(a)) % 2 == 0


@dataclass
class PermGroup:
    degree: int
    generators: tuple
    elements: tuple  # sorted image tuples
    element_set: frozenset = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a) -> bool:
        return a in self.element_set

    def fingerprint(self):
        return (self.order, tuple(sorted(Counter(cycle_type(a) for a in self.elements).items())))

    def is_transitive(self) -> bool:
        orbit = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return len(orbit) == self.degree

    def stabilizer(self, point: int) -> "PermGroup":
        els = [a for a in self.elements if a[point] == point]
        return _from_elements(self.degree, els)


def _from_elements(degree, elements, gens=None):
    els = tuple(sorted(elements))
    if gens is None:
        gens = generating_set(els)
    return PermGroup(degree, tuple(gens), els, frozenset(els))


def generating_set(elements) -> list:
    """Greedy generators: add the first element outside the subgroup built so far."""
    elements = sorted(elements)
    gens = []
    current = {elements[0]} if elements else set()
    for a in elements:
        if a not in current:
            gens.append(a)
            current = closure(gens).element_set
    return gens or [elements[0]]


def closure(gens, cap: int = DEFAULT_CAP) -> PermGroup:
    """Breadth-first closure of the generators under multiplication."""
    gens = [tuple(g) for g in gens]
    if not gens:
        raise ValueError("closure needs at least one generator")
    degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("generators have different degrees")
    e = identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        if len(seen) > cap:
            raise CapExceeded(f"closure exceeds the cap {cap}", count=len(seen))
        frontier = nxt
    return _from_elements(degree, seen, gens)


def intersection(A: PermGroup, B: PermGroup) -> PermGroup:
    small, big = (A, B) if A.order <= B.order else (B, A)
    els = [a for a in small.elements if a in big.element_set]
    return _from_elements(A.degree, els)


def join(A: PermGroup, B: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    return closure(list(A.generators) + list(B.generators), cap)


def alternating_group(n: int) -> PermGroup:
    """A_n from (1 2 3) and an (n-1)- or n-cycle, whichever is even."""
    c3 = from_cycles("(1 2 3)", n)
    if n % 2:
        long_cycle = from_cycles("(" + " ".join(str(i) for i in range(1, n + 1)) + ")", n)
    else:
        long_cycle = from_cycles("(" + " ".join(str(i) for i in range(2, n + 1)) + ")", n)
    return closure([c3, long_cycle] if n > 3 else [c3])


def point_stabilizer_alternating(n: int) -> PermGroup:
    """A_{n-1} fixing the last point of n, by explicit generators."""
    sub = alternating_group(n - 1)
    gens = [g + (n - 1,) for g in sub.generators]
    return closure(gens)


def random_subgroup_search(G: PermGroup, order: int, accept, seed: int, attempts: int = 20000):
    """Seeded 2-generator search for a subgroup of the given order satisfying ``accept``.

    Returns (subgroup, attempts used) or (None, attempts) on failure.
    """
    rng = random.Random(seed)
    for attempt in range(1, attempts + 1):
        x, y = rng.choice(G.elements), rng.choice(G.elements)
        try:
            K = closure([x, y], cap=order)
        except CapExceeded:
            continue
        if K.order == order and accept(K):
            return K, attempt
    return None, attempts


def normal_closure(G: PermGroup, a: tuple, cap: int = DEFAULT_CAP) -> PermGroup:
    conj = {mul(mul(inverse(g), a), g) for g in G.elements}
    return closure(sorted(conj), cap)


def _double_coset(H: PermGroup, g: tuple) -> set:
    left = {mul(h, g) for h in H.elements}
    return {mul(x, h) for x in left for h in H.elements}


def interval_atoms(H: PermGroup, G: PermGroup, cap: int = DEFAULT_CAP) -> list[PermGroup]:
    """All subgroups K with H < K < G.

    ``<H, g>`` only depends on the double coset HgH, so one closure per double
    coset gives every subgroup generated by H and one more element.  Every
    intermediate subgroup is a join of those, so the list is closed under
    joins until it stops growing.
    """
    if not H.element_set <= G.element_set:
        raise ValueError("H is not contained in G")
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds the cap {cap}", count=G.order)
    found: dict = {}

    def add(K):
        if K.order in (H.order, G.order):
            return False
        key = K.fingerprint()
        for other in found.get(key, []):
            if other.element_set == K.element_set:
                return False
        found.setdefault(key, []).append(K)
        return True

    covered = set(H.element_set)
    # anything larger than |G|/2 is G itself
    half = G.order // 2
    for g in G.elements:
        if g in covered:
            continue
        covered |= _double_coset(H, g)
        try:
            K = closure(list(H.generators) + [g], cap=half)
        except CapExceeded:
            continue
        add(K)

    grew = True
    while grew:
        grew = False
        groups = [K for ks in found.values() for K in ks]
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                A, B = groups[i], groups[j]
                if A.element_set <= B.element_set or B.element_set <= A.element_set:
                    continue
                try:
                    J = join(A, B, cap=half)
                except CapExceeded:
                    continue
                if add(J):
                    grew = True
    out = [K for ks in found.values() for K in ks]
    out.sort(key=lambda K: (K.order, K.elements))
    return out
