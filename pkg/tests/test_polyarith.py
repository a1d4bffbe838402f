import math

import pytest
from hypothesis import given, strategies as st

from chevcert.errors import RangeError
from chevcert.polyarith import (
    IntPoly,
    PrimitivePrimeCertificate,
    ZsigmondyException,
    check_primitive_certificate,
    cyclotomic,
    divisors,
    is_prime,
    is_prime_power,
    multiplicative_order,
    p_adic_valuation,
    poly_eval,
    prime_factors_ascending,
    q_power_minus_one,
    small_primes,
    zsigmondy_prime,
)

polys = st.lists(st.integers(-50, 50), max_size=8).map(IntPoly)


def test_cyclotomic_small():
    assert cyclotomic(1) == IntPoly([-1, 1])
    assert cyclotomic(6) == IntPoly([1, -1, 1])
    assert str(cyclotomic(6)) == "q^2 - q + 1"
    assert poly_eval(cyclotomic(6), 2) == 3


@pytest.mark.parametrize("r", range(1, 37))
def test_cyclotomic_product_is_q_power_minus_one(r):
    prod = IntPoly([1])
    for d in divisors(r):
        prod = prod * cyclotomic(d)
    assert prod == q_power_minus_one(r)


def test_cyclotomic_degree_is_totient():
    for r in range(1, 60):
        assert cyclotomic(r).degree == sum(1 for k in range(1, r + 1) if math.gcd(k, r) == 1)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    assert a * b == b * a


monic_up_to_sign = st.tuples(st.lists(st.integers(-50, 50), max_size=6), st.sampled_from([1, -1])).map(lambda t: IntPoly(t[0] + [t[1]]))


@given(polys, monic_up_to_sign)
def test_divmod_reconstructs(a, b):
    quo, rem = divmod(a, b)
    assert quo * b + rem == a
    assert rem.is_zero() or rem.degree < b.degree
    assert (a * b).exact_div(b) == a


@given(polys, st.integers(-20, 20))
def test_eval_is_horner(f, x):
    assert poly_eval(f, x) == sum(c * x**i for i, c in enumerate(f.coeffs))


@given(st.integers(1, 10**12), st.integers(1, 10**12), st.sampled_from([2, 3, 5, 7, 31, 101]))
def test_valuation_additive(a, b, p):
    assert p_adic_valuation(a * b, p) == p_adic_valuation(a, p) + p_adic_valuation(b, p)


def test_valuation_rejects_zero():
    with pytest.raises(ValueError):
        p_adic_valuation(0, 2)


def test_is_prime_agrees_with_sieve():
    sieve = [True] * 5000
    sieve[0] = sieve[1] = False
    for i in range(2, 71):
        for j in range(i * i, 5000, i):
            sieve[j] = False
    assert [n for n in range(5000) if is_prime(n)] == [n for n in range(5000) if sieve[n]]


def test_is_prime_large_known_values():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1) // (2**31 - 1) * 3)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_is_prime_beyond_miller_rabin_bound():
    # proven by Pocklington from the factorization of n - 1
    assert is_prime(2**89 - 1)
    assert is_prime(2**127 - 1)
    assert not is_prime((2**61 - 1) * (2**67 + 3))
    assert not is_prime(2**89 + 1)


def test_unprovable_prime_raises_range_error(monkeypatch):
    import chevcert.polyarith as pa

    monkeypatch.setattr(pa, "_candidate_factorization", lambda n: {n: 1})
    with pytest.raises(RangeError):
        is_prime(2**89 - 1)


@pytest.mark.parametrize("q,pe", [(2, (2, 1)), (8, (2, 3)), (9, (3, 2)), (81, (3, 4)), (101, (101, 1)), (128, (2, 7))])
def test_is_prime_power(q, pe):
    assert is_prime_power(q) == pe


@pytest.mark.parametrize("q", [0, 1, 6, 12, 100])
def test_not_prime_power(q):
    with pytest.raises(ValueError):
        is_prime_power(q)


def test_zsigmondy_examples():
    c = zsigmondy_prime(2, 5)
    assert c.p == 31 and check_primitive_certificate(c) is None
    assert zsigmondy_prime(2, 3).p == 7
    assert zsigmondy_prime(6, 3).p == 43
    assert isinstance(zsigmondy_prime(2, 6), ZsigmondyException)


def test_zsigmondy_exception_identity():
    lhs, factors, rhs = ZsigmondyException().identity
    assert lhs == rhs == 63
    assert factors == [(2, 2), (3, 1)]


@pytest.mark.parametrize("q,r", [(2, 2), (1, 5), (3, 1)])
def test_zsigmondy_rejects_out_of_range(q, r):
    with pytest.raises(ValueError):
        zsigmondy_prime(q, r)


@given(st.integers(2, 50), st.integers(3, 30))
def test_zsigmondy_grid_property(a, r):
    cert = zsigmondy_prime(a, r)
    if (a, r) == (2, 6):
        assert isinstance(cert, ZsigmondyException)
        return
    assert check_primitive_certificate(cert) is None
    assert multiplicative_order(a, cert.p) == r
    assert (a**r - 1) % cert.p == 0
    # no smaller primitive prime below the trial bound
    for p in small_primes():
        if p >= cert.p:
            break
        if a % p and pow(a, r, p) == 1:
            assert multiplicative_order(a, p) != r


def test_primitive_certificate_rejects_forgeries():
    good = zsigmondy_prime(3, 5)
    assert check_primitive_certificate(good) is None
    bad = [
        PrimitivePrimeCertificate(3, 5, good.p + 2, good.witness),
        PrimitivePrimeCertificate(2, 4, 3, (2, 1, 2)),  # 3 divides 2^2 - 1
        PrimitivePrimeCertificate(3, 5, good.p, good.witness[:-1]),
        PrimitivePrimeCertificate(3, 5, good.p, (0,) + good.witness[1:]),
    ]
    for cert in bad:
        assert check_primitive_certificate(cert) is not None


def test_prime_factors_ascending():
    assert list(prime_factors_ascending(2**2 * 3 * 7**3 * 1000003)) == [2, 3, 7, 1000003]
