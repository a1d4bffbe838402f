import json
import random

import pytest
from hypothesis import given, strategies as st

from chevcert.dynkin import DynkinType, standard_diagram, supported_types
from chevcert.errors import InternalConsistencyError
from chevcert.orders import poincare_value
from chevcert.verifier import (
    KIND_EXACT,
    KIND_PRIME,
    KIND_PRUNED,
    check_certificate,
    dumps,
    exceptional_types_at,
    verify_all,
    verify_pair,
)
from mutations import mutate

ALL = [t for t in supported_types(12) if t.rank >= 2]
SMALL = [t for t in ALL if t.rank <= 6]
Q = st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 101, 128])


def verdict(name, q, W):
    return verify_pair(standard_diagram(DynkinType.parse(name)), q, W)


def test_a5_exception_certificate():
    v = verdict("A5", 2, {1})
    assert v.kind == KIND_PRUNED
    assert (v.lhs, v.rhs) == (29295, 615195)
    doc = v.to_json()
    c = doc["certificate"]
    assert c["quotient"] == "21" and c["remainder"] == "0"
    assert c["survivor"] == [["A1"], ["A4"]]
    assert c["secondary"][0]["prime"]["p"] == "31"
    assert c["primary"]["value"] == "63"
    assert check_certificate(doc) is None


def test_a5_survivor_identity():
    # (2^2-1)^2 (2^3-1)(2^4-1)(2^5-1) against (2^4-1)(2^5-1)(2^6-1)
    left = 3**2 * 7 * 15 * 31
    right = 15 * 31 * 63
    assert left == right
    v = verdict("A5", 2, {2, 3, 4, 5})
    assert v.rhs // v.lhs == 3 * 7 == 21


@pytest.mark.parametrize("name", ["B3", "C3"])
def test_rank3_exceptions_at_2(name):
    report = verify_all(standard_diagram(DynkinType.parse(name)), 2)
    assert report.counts[KIND_PRUNED] == 6 and not report.failures
    for v in report.verdicts:
        assert v.to_json()["certificate"]["secondary"][0]["prime"]["p"] == "5"


def test_d4_every_subset_pruned():
    report = verify_all(standard_diagram(DynkinType("D", 4)), 2)
    assert report.counts[KIND_PRUNED] == 14
    for v in report.verdicts:
        assert v.certificate.pruned_by is not None and v.certificate.survivor is None


def test_g2_falls_back_to_exact_ratio():
    report = verify_all(standard_diagram(DynkinType("G", 2)), 2)
    assert report.counts[KIND_EXACT] == 2 and not report.failures
    for v in report.verdicts:
        assert v.lhs < v.rhs == poincare_value(DynkinType("G", 2), 2)


def test_primitive_prime_kind_off_the_exception():
    v = verdict("A5", 3, {1})
    assert v.kind == KIND_PRIME
    assert v.certificate.v_P == 0 < v.certificate.v_G
    v = verdict("E8", 2, {1, 2, 3})
    assert v.kind == KIND_PRIME and v.certificate.prime.r == 30


def test_rank_one_interval_is_empty():
    report = verify_all(standard_diagram(DynkinType("A", 1)), 7)
    assert report.verdicts == [] and report.note == "open interval empty"


@pytest.mark.parametrize("W", [set(), {1, 2, 3}, 0, 7])
def test_improper_subsets_rejected(W):
    with pytest.raises(ValueError):
        verdict("A3", 2, W)


def test_non_prime_power_rejected():
    with pytest.raises(ValueError):
        verify_all(standard_diagram(DynkinType("A", 2)), 6)


def test_lhs_not_below_rhs_is_internal_error(monkeypatch):
    import chevcert.verifier as vf

    monkeypatch.setattr(vf, "poincare_value", lambda dtype, q: 1)
    with pytest.raises(InternalConsistencyError):
        verdict("A2", 3, {1})


@given(st.sampled_from(SMALL), Q, st.data())
def test_verdicts_pass_independent_check(dtype, q, data):
    d = standard_diagram(dtype)
    mask = data.draw(st.integers(1, d.full_mask() - 1))
    v = verify_pair(d, q, mask)
    doc = v.to_json()
    assert check_certificate(v) is None
    assert check_certificate(json.loads(dumps(doc))) is None
    assert v.lhs < v.rhs
    expected = KIND_PRIME if not (q == 2 and dtype in exceptional_types_at(2, 6)) else None
    if expected:
        assert v.kind == expected


@given(st.sampled_from(SMALL), Q, st.data())
def test_complement_symmetry(dtype, q, data):
    d = standard_diagram(dtype)
    mask = data.draw(st.integers(1, d.full_mask() - 1))
    a = verify_pair(d, q, mask)
    b = verify_pair(d, q, d.full_mask() ^ mask)
    assert (a.lhs, a.rhs, a.kind) == (b.lhs, b.rhs, b.kind)
    assert a.levi_W == b.levi_complement and a.levi_complement == b.levi_W


def test_output_is_deterministic():
    d = standard_diagram(DynkinType("D", 5))
    one = dumps(verify_all(d, 3).to_json())
    two = dumps(verify_all(d, 3).to_json())
    assert one == two
    assert "wall_time" not in one


def test_check_rejects_garbage():
    assert check_certificate({}) is not None
    assert check_certificate({"schema_version": "1"}) is not None
    assert check_certificate("not a dict") is not None


def test_check_rejects_kind_swaps():
    # an exact-ratio certificate is only acceptable at (2, 6)
    doc = verdict("G2", 2, {1}).to_json()
    doc["q"] = "4"
    assert check_certificate(doc) is not None
    doc = verdict("A5", 3, {1}).to_json()
    doc["certificate_kind"] = KIND_EXACT
    doc["certificate"] = {"gap": str(int(doc["rhs"]) - int(doc["lhs"]))}
    assert check_certificate(doc) is not None


POOL = [("A5", 2, 1), ("A5", 2, 6), ("B3", 2, 3), ("C3", 2, 5), ("D4", 2, 9), ("G2", 2, 1), ("A2", 3, 1), ("E8", 2, 100), ("F4", 5, 6), ("D7", 9, 33), ("B6", 128, 12)]


@pytest.mark.parametrize("seed", range(40))
def test_tamper_rejected(seed):
    rng = random.Random(seed)
    name, q, mask = rng.choice(POOL)
    doc = verdict(name, q, mask).to_json()
    bad, change = mutate(doc, rng)
    assert check_certificate(bad) is not None, change
