"""Certificates that no proper parabolic P_W has P_{W^c} as a group-complement.

If P_W P_{W^c} = G then |P_W| |P_{W^c}| = |G| |B|.  Dividing by |B|^2 turns
this into ``lhs == rhs`` with

    lhs = poincare(W)(q) * poincare(W^c)(q),    rhs = poincare(V)(q),

and every certificate below is a proof that ``lhs != rhs``:

* ``primitive_prime``: a primitive prime divisor p of q^r - 1, r the largest
  degree, divides rhs but not lhs.  The unipotent radicals only contribute
  powers of q, and p does not divide q, so they are invisible to p.
* ``pruned_ratio``: for (q, r) = (2, 6) only.  Primitive primes of smaller
  degrees either separate lhs from rhs directly or force the Levi pair; the
  survivors are closed by exact comparison.
* ``exact_ratio``: lhs < rhs by direct comparison.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache

from .dynkin import DynkinType, MarkedDiagram, induced_subdiagram, mask_to_vertices, standard_diagram
from .errors import InternalConsistencyError
from .orders import exceptional_types_at, exponent_data, poincare_value  # noqa: F401
from .polyarith import (
    PrimitivePrimeCertificate,
    ZsigmondyException,
    check_primitive_certificate,
    is_prime_power,
    p_adic_valuation,
    zsigmondy_prime,
)

SCHEMA_VERSION = "1"
VERDICT = "not-group-complement"
KIND_PRIME = "primitive_prime"
KIND_PRUNED = "pruned_ratio"
KIND_EXACT = "exact_ratio"
KINDS = (KIND_PRIME, KIND_PRUNED, KIND_EXACT)

DEFAULT_Q_LIST = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 101, 128)

Levi = tuple[tuple[DynkinType, tuple[int, ...]], ...]


@dataclass(frozen=True)
class PrimePowerObstruction:
    prime: PrimitivePrimeCertificate
    v_G: int
    v_P: int


@dataclass(frozen=True)
class ExactRatioContradiction:
    lhs: int
    rhs: int


@dataclass(frozen=True)
class SecondaryPrime:
    prime: PrimitivePrimeCertificate
    v_G: int
    v_P: int


@dataclass(frozen=True)
class PrunedRatioContradiction:
    secondary: tuple[SecondaryPrime, ...]
    pruned_by: int | None  # index into secondary, None if this W survived every prime
    survivor: tuple[tuple[DynkinType, ...], tuple[DynkinType, ...]] | None
    ratio: ExactRatioContradiction


@dataclass(frozen=True)
class ComplementVerdict:
    dtype: DynkinType
    q: int
    mask: int
    levi_W: Levi
    levi_complement: Levi
    lhs: int
    rhs: int
    certificate: PrimePowerObstruction | PrunedRatioContradiction | ExactRatioContradiction
    verdict: str = VERDICT

    @property
    def kind(self) -> str:
        if isinstance(self.certificate, PrimePowerObstruction):
            return KIND_PRIME
        if isinstance(self.certificate, PrunedRatioContradiction):
            return KIND_PRUNED
        return KIND_EXACT

    @property
    def W(self) -> tuple[int, ...]:
        return mask_to_vertices(self.mask)

    def to_json(self) -> dict:
        return verdict_to_json(self)


@dataclass
class SweepReport:
    dtype: DynkinType
    q: int
    verdicts: list[ComplementVerdict]
    counts: dict[str, int]
    note: str | None = None
    wall_time: float = 0.0
    failures: list[str] = field(default_factory=list)

    def to_json(self, include_verdicts=True, include_timing=False) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "diagram": {"family": self.dtype.family, "rank": self.dtype.rank},
            "q": str(self.q),
            "subsets": len(self.verdicts),
            "counts": {k: self.counts.get(k, 0) for k in KINDS},
            "failures": list(self.failures),
            "note": self.note,
        }
        if include_verdicts:
            doc["verdicts"] = [v.to_json() for v in self.verdicts]
        if include_timing:
            doc["wall_time"] = round(self.wall_time, 3)
        return doc


@lru_cache(maxsize=None)
def _diagram(dtype: DynkinType) -> MarkedDiagram:
    return standard_diagram(dtype)


@lru_cache(maxsize=None)
def _levi(dtype: DynkinType, mask: int) -> Levi:
    return induced_subdiagram(_diagram(dtype), mask).components


def _levi_value(levi: Levi, q: int) -> int:
    out = 1
    for t, _ in levi:
        out *= poincare_value(t, q)
    return out


def _pair_key(levi_a: Levi, levi_b: Levi):
    a = tuple(sorted(t for t, _ in levi_a))
    b = tuple(sorted(t for t, _ in levi_b))
    return tuple(sorted((a, b)))


@lru_cache(maxsize=None)
def _pruning_plan(dtype: DynkinType, q: int):
    """Secondary-prime pruning over all proper W of ``dtype`` at (q, 6).

    Returns (secondary primes, surviving Levi pair or None) when pruning leaves
    at most one Levi pair, else None.
    """
    full = (1 << dtype.rank) - 1
    rhs = poincare_value(dtype, q)
    r = exponent_data(dtype).max_degree
    survivors = list(range(1, full))
    used = []
    for r2 in sorted({i for i in exponent_data(dtype).degrees if 2 < i < r}, reverse=True):
        cert = zsigmondy_prime(q, r2)
        if not isinstance(cert, PrimitivePrimeCertificate):
            continue
        used.append(cert)
        p = cert.p
        vG = p_adic_valuation(rhs, p)
        survivors = [
            m
            for m in survivors
            if p_adic_valuation(_levi_value(_levi(dtype, m), q) * _levi_value(_levi(dtype, full ^ m), q), p) == vG
        ]
        pairs = {_pair_key(_levi(dtype, m), _levi(dtype, full ^ m)) for m in survivors}
        if len(pairs) <= 1:
            return tuple(used), (next(iter(pairs)) if pairs else None)
    return None


def verify_pair(d: MarkedDiagram, q: int, W) -> ComplementVerdict:
    """Certificate that P_{W^c} is not a group-complement of P_W in G(q)."""
    dtype = d.dtype
    full = d.full_mask()
    mask = W if isinstance(W, int) else sum(1 << (v - 1) for v in W)
    if dtype.rank < 2:
        raise ValueError("rank-1 diagrams have an empty open interval")
    if not 0 < mask < full:
        raise ValueError(f"W must be a proper nonempty subset, got mask {mask}")
    levi_W = _levi(dtype, mask)
    levi_C = _levi(dtype, full ^ mask)
    lhs = _levi_value(levi_W, q) * _levi_value(levi_C, q)
    rhs = poincare_value(dtype, q)
    if lhs >= rhs:
        raise InternalConsistencyError(f"{dtype}({q}), W={mask_to_vertices(mask)}: lhs {lhs} >= rhs {rhs}")

    r = exponent_data(dtype).max_degree
    primary = zsigmondy_prime(q, r)
    if isinstance(primary, PrimitivePrimeCertificate):
        p = primary.p
        cert = PrimePowerObstruction(primary, p_adic_valuation(rhs, p), p_adic_valuation(lhs, p))
        if cert.v_G < 1 or cert.v_P != 0:
            raise InternalConsistencyError(f"primitive prime {p} fails to separate {dtype}({q}), W={mask}")
    else:
        plan = _pruning_plan(dtype, q)
        ratio = ExactRatioContradiction(lhs, rhs)
        if plan is None:
            cert = ratio
        else:
            primes, survivor = plan
            secondary = tuple(SecondaryPrime(c, p_adic_valuation(rhs, c.p), p_adic_valuation(lhs, c.p)) for c in primes)
            pruned_by = next((i for i, s in enumerate(secondary) if s.v_G != s.v_P), None)
            cert = PrunedRatioContradiction(secondary, pruned_by, survivor, ratio)
    return ComplementVerdict(dtype, q, mask, levi_W, levi_C, lhs, rhs, cert)


def verify_all(d: MarkedDiagram, q: int, check=True) -> SweepReport:
    """verify_pair over every proper W, ascending bitmask order."""
    is_prime_power(q)
    start = time.perf_counter()
    if d.rank < 2:
        return SweepReport(d.dtype, q, [], {}, note="open interval empty", wall_time=time.perf_counter() - start)
    verdicts = []
    counts = {k: 0 for k in KINDS}
    failures = []
    for mask in range(1, d.full_mask()):
        v = verify_pair(d, q, mask)
        if check:
            problem = check_certificate(v)
            if problem is not None:
                failures.append(f"W={mask}: {problem}")
        counts[v.kind] += 1
        verdicts.append(v)
    return SweepReport(d.dtype, q, verdicts, counts, failures=failures, wall_time=time.perf_counter() - start)


# ---------------------------------------------------------------- serialization


def _levi_json(levi: Levi):
    return [{"type": str(t), "vertices": list(vs)} for t, vs in levi]


def _prime_json(c: PrimitivePrimeCertificate):
    return c.to_json()


def verdict_to_json(v: ComplementVerdict) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "diagram": {"family": v.dtype.family, "rank": v.dtype.rank},
        "q": str(v.q),
        "subset_bitmask": v.mask,
        "verdict": v.verdict,
        "certificate_kind": v.kind,
        "levi": {"W": _levi_json(v.levi_W), "complement": _levi_json(v.levi_complement)},
        "lhs": str(v.lhs),
        "rhs": str(v.rhs),
    }
    c = v.certificate
    if isinstance(c, PrimePowerObstruction):
        doc["certificate"] = {"prime": _prime_json(c.prime), "p_divides_q": False, "v_G": c.v_G, "v_P": c.v_P}
    elif isinstance(c, PrunedRatioContradiction):
        doc["certificate"] = {
            "primary": ZsigmondyException().to_json(),
            "secondary": [{"prime": _prime_json(s.prime), "v_G": s.v_G, "v_P": s.v_P} for s in c.secondary],
            "pruned_by": c.pruned_by,
            "survivor": None if c.survivor is None else [[str(t) for t in side] for side in c.survivor],
            "quotient": str(c.ratio.rhs // c.ratio.lhs),
            "remainder": str(c.ratio.rhs % c.ratio.lhs),
        }
    else:
        doc["certificate"] = {"gap": str(c.rhs - c.lhs)}
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------- independent check


class _Reject(Exception):
    pass


def _require(cond, message):
    if not cond:
        raise _Reject(message)


def _dec(s, what):
    _require(isinstance(s, str) and s.lstrip("-").isdigit(), f"{what} is not a decimal string")
    return int(s)


def _raw_weyl_index(dtype: DynkinType, q: int) -> int:
    """prod_i (q^i - 1) / (q - 1)^rank straight from the degree table."""
    num = 1
    for i in exponent_data(dtype).degrees:
        num *= q**i - 1
    den = (q - 1) ** dtype.rank
    _require(num % den == 0, f"(q-1)^rank does not divide prod(q^i-1) for {dtype}")
    return num // den


def _raw_levi_value(levi_doc, q):
    out = 1
    for comp in levi_doc:
        out *= _raw_weyl_index(DynkinType.parse(comp["type"]), q)
    return out


def _check_prime_json(doc, q, r, what):
    _require(set(doc) == {"q", "r", "p", "witness"}, f"{what}: unexpected fields")
    _require(_dec(doc["q"], f"{what}.q") == q, f"{what}: q mismatch")
    _require(doc["r"] == r and type(doc["r"]) is int, f"{what}: r mismatch")
    _require(isinstance(doc["witness"], list), f"{what}: witness is not a list")
    cert = PrimitivePrimeCertificate(
        q, r, _dec(doc["p"], f"{what}.p"), tuple(_dec(w, f"{what}.witness") for w in doc["witness"])
    )
    problem = check_primitive_certificate(cert)
    _require(problem is None, f"{what}: {problem}")
    return cert


def _valuation(n, p, what):
    _require(n > 0, f"{what}: nonpositive value")
    return p_adic_valuation(n, p)


def _check_int(value, what):
    _require(type(value) is int, f"{what} is not an integer")
    return value


def _raw_pruning(dtype: DynkinType, q: int, primes):
    """Recompute the surviving Levi pair set from scratch."""
    d = standard_diagram(dtype)
    full = d.full_mask()
    rhs = _raw_weyl_index(dtype, q)
    survivors = {}
    for m in range(1, full):
        a = induced_subdiagram(d, m).types
        b = induced_subdiagram(d, full ^ m).types
        lhs = 1
        for t in a + b:
            lhs *= _raw_weyl_index(t, q)
        if all(p_adic_valuation(lhs, c.p) == p_adic_valuation(rhs, c.p) for c in primes):
            key = tuple(sorted((tuple(sorted(str(t) for t in a)), tuple(sorted(str(t) for t in b)))))
            survivors[key] = True
    return list(survivors)


def _check(doc) -> None:
    _require(isinstance(doc, dict), "document is not an object")
    _require(
        set(doc) == {"schema_version", "diagram", "q", "subset_bitmask", "verdict", "certificate_kind", "levi", "lhs", "rhs", "certificate"},
        "unexpected top-level fields",
    )
    _require(doc["schema_version"] == SCHEMA_VERSION, "schema_version mismatch")
    _require(doc["verdict"] == VERDICT, "verdict is not not-group-complement")
    diag = doc["diagram"]
    _require(isinstance(diag, dict) and set(diag) == {"family", "rank"}, "diagram fields")
    try:
        dtype = DynkinType(diag["family"], _check_int(diag["rank"], "rank"))
    except ValueError as exc:
        raise _Reject(f"diagram: {exc}") from None
    _require(dtype.rank >= 2, "rank-1 diagram has no proper W")
    q = _dec(doc["q"], "q")
    try:
        is_prime_power(q)
    except ValueError:
        raise _Reject(f"q={q} is not a prime power") from None
    mask = _check_int(doc["subset_bitmask"], "subset_bitmask")
    full = (1 << dtype.rank) - 1
    _require(0 < mask < full, "subset_bitmask is not a proper nonempty subset")

    # structural claims: the Levi components of W and W^c
    d = standard_diagram(dtype)
    levi = doc["levi"]
    _require(isinstance(levi, dict) and set(levi) == {"W", "complement"}, "levi fields")
    for key, m in (("W", mask), ("complement", full ^ mask)):
        expected = [{"type": str(t), "vertices": list(vs)} for t, vs in induced_subdiagram(d, m).components]
        _require(levi[key] == expected, f"levi.{key} does not match the induced sub-diagram")

    # arithmetic claims, recomputed from the degree table
    lhs = _raw_levi_value(levi["W"], q) * _raw_levi_value(levi["complement"], q)
    rhs = _raw_weyl_index(dtype, q)
    _require(_dec(doc["lhs"], "lhs") == lhs, "lhs mismatch")
    _require(_dec(doc["rhs"], "rhs") == rhs, "rhs mismatch")
    _require(lhs < rhs, "lhs is not below rhs")

    r = exponent_data(dtype).max_degree
    kind = doc["certificate_kind"]
    cert = doc["certificate"]
    _require(isinstance(cert, dict), "certificate is not an object")
    exceptional = (q, r) == (2, 6)
    if kind == KIND_PRIME:
        _require(not exceptional, "primitive_prime claimed at (2, 6)")
        _require(set(cert) == {"prime", "p_divides_q", "v_G", "v_P"}, "certificate fields")
        prime = _check_prime_json(cert["prime"], q, r, "prime")
        _require(cert["p_divides_q"] is False and q % prime.p != 0, "p_divides_q claim is wrong")
        vG = _valuation(rhs, prime.p, "rhs")
        vP = _valuation(lhs, prime.p, "lhs")
        _require(_check_int(cert["v_G"], "v_G") == vG, "v_G mismatch")
        _require(_check_int(cert["v_P"], "v_P") == vP, "v_P mismatch")
        _require(vG >= 1 and vP == 0, "valuations do not separate lhs from rhs")
    elif kind == KIND_PRUNED:
        _require(exceptional, "pruned_ratio outside (2, 6)")
        _require(set(cert) == {"primary", "secondary", "pruned_by", "survivor", "quotient", "remainder"}, "certificate fields")
        _require(cert["primary"] == ZsigmondyException().to_json(), "primary exception record is wrong")
        secondary = cert["secondary"]
        _require(isinstance(secondary, list) and secondary, "secondary primes missing")
        degrees = sorted({i for i in exponent_data(dtype).degrees if 2 < i < r}, reverse=True)
        primes = []
        first_split = None
        for idx, s in enumerate(secondary):
            _require(isinstance(s, dict) and set(s) == {"prime", "v_G", "v_P"}, f"secondary[{idx}] fields")
            _require(idx < len(degrees), "more secondary primes than degrees")
            c = _check_prime_json(s["prime"], q, degrees[idx], f"secondary[{idx}]")
            vG = _valuation(rhs, c.p, "rhs")
            vP = _valuation(lhs, c.p, "lhs")
            _require(_check_int(s["v_G"], "v_G") == vG, f"secondary[{idx}].v_G mismatch")
            _require(_check_int(s["v_P"], "v_P") == vP, f"secondary[{idx}].v_P mismatch")
            if first_split is None and vG != vP:
                first_split = idx
            primes.append(c)
        _require(cert["pruned_by"] == first_split and (first_split is None or type(cert["pruned_by"]) is int), "pruned_by mismatch")
        survivors = _raw_pruning(dtype, q, primes)
        _require(len(survivors) <= 1, "pruning does not isolate a unique Levi pair")
        claimed = cert["survivor"]
        expected = None if not survivors else [list(side) for side in survivors[0]]
        _require(claimed == expected, "survivor mismatch")
        if first_split is None:
            own = sorted((sorted(c["type"] for c in levi["W"]), sorted(c["type"] for c in levi["complement"])))
            _require(expected is not None and own == expected, "unpruned W is not the surviving pair")
        _require(_dec(cert["quotient"], "quotient") == rhs // lhs, "quotient mismatch")
        _require(_dec(cert["remainder"], "remainder") == rhs % lhs, "remainder mismatch")
    elif kind == KIND_EXACT:
        _require(set(cert) == {"gap"}, "certificate fields")
        _require(_dec(cert["gap"], "gap") == rhs - lhs, "gap mismatch")
        _require(rhs - lhs > 0, "gap is not positive")
        if not exceptional:
            # kind (a) always exists away from (2, 6); emitting (b) there is a preference violation
            raise _Reject("exact_ratio claimed where a primitive prime exists")
    else:
        raise _Reject(f"unknown certificate_kind {kind!r}")


def check_certificate(v) -> str | None:
    """Re-validate a verdict (object or JSON document) from raw arithmetic.

    Returns None on accept, else a description of the first failing claim.
    """
    doc = verdict_to_json(v) if isinstance(v, ComplementVerdict) else v
    try:
        _check(doc)
    except _Reject as exc:
        return str(exc)
    except (KeyError, TypeError, ValueError, AttributeError, IndexError) as exc:
        return f"malformed document: {exc!r}"
    return None
