import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Poly, symbols

from ybcubes.field import (
    NEG_INF,
    FieldError,
    FieldSpec,
    build_field,
    default_modulus,
    is_irreducible,
    kl_pair,
    prime_power,
)

x = symbols("x")

PRIMITIVE_24 = [d for d in range(24) if math.gcd(d, 24) == 1]


@pytest.fixture(scope="module")
def f25():
    return build_field(FieldSpec.for_q(5, 19))


def test_prime_power():
    assert prime_power(5) == (5, 1)
    assert prime_power(9) == (3, 2)
    assert prime_power(8) == (2, 3)
    with pytest.raises(FieldError):
        prime_power(12)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 4), (3, 2), (3, 4), (5, 2), (7, 2), (11, 2), (13, 2)])
def test_default_modulus_irreducible_against_sympy(p, n):
    f = default_modulus(p, n)
    assert len(f) == n + 1 and f[-1] == 1
    assert Poly(list(reversed(f)), x, modulus=p).is_irreducible


@pytest.mark.parametrize("coeffs,p", [([1, 0, 1], 2), ([4, 0, 1], 5), ([2, 3, 1], 7), ([0, 1, 1], 3)])
def test_is_irreducible_matches_sympy(coeffs, p):
    assert is_irreducible(coeffs, p) == Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible


def test_f4_zech():
    # GF(4) = GF(2)[t]/(t^2+t+1), delta = t: 1 + delta = delta^2
    table = build_field(FieldSpec.for_q(2))
    assert table.spec.resolved_modulus() == [1, 1, 1]
    assert table.zech(1) == 2
    assert table.zech(0) is NEG_INF  # 1 + 1 = 0 in characteristic 2


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_minus_one_exponent(q):
    table = build_field(FieldSpec.for_q(q))
    half = (q * q - 1) // 2
    assert table.zech(half) is NEG_INF
    assert [t for t in range(table.n) if table.zech(t) is NEG_INF] == [half]


@pytest.mark.parametrize("d", PRIMITIVE_24)
def test_q5_no_vanishing_off_the_subgroup(d):
    table = build_field(FieldSpec.for_q(5, d))
    for t in range(24):
        if t % 4:
            assert table.zech(t) is not NEG_INF


@pytest.mark.parametrize("q,d", [(2, 1), (3, 1), (4, 1), (5, 19), (7, 5), (8, 1), (9, 7)])
def test_table_passes_independent_recheck(q, d):
    table = build_field(FieldSpec.for_q(q, d))
    assert table.check() == []


def test_errors():
    with pytest.raises(FieldError):
        build_field(FieldSpec(4, 1))  # p not prime
    with pytest.raises(FieldError):
        build_field(FieldSpec(5, 1, (1, 0, 1)))  # x^2 + 1 = (x-2)(x-3) over GF(5)
    with pytest.raises(FieldError):
        build_field(FieldSpec(5, 1, None, 2))  # gcd(2, 24) != 1
    with pytest.raises(FieldError):
        build_field(FieldSpec(5, 1, (1, 1, 0, 1)))  # wrong degree


def _brute_kl(table, i, j):
    """Discrete logs of delta^j (1+delta^(i-j))^(1-q) and delta^i (1+delta^(j-i))^(1-q)."""
    gf, n, q = table.gf, table.n, table.q
    P = lambda e: gf.pow(table.delta, e % n)  # noqa: E731
    k_elt = gf.mul(P(j), gf.pow(gf.add(1, P(i - j)), (1 - q) % n))
    l_elt = gf.mul(P(i), gf.pow(gf.add(1, P(j - i)), (1 - q) % n))
    return (next(e for e in range(n) if P(e) == k_elt), next(e for e in range(n) if P(e) == l_elt))


# (i, j) -> (k, l) for delta = g^19; also readable from the Example 1 relators,
# e.g. a1 b2 a17 b22 gives l = 17 + 12 = 5 and k = 22 + 12 = 10.
KL_Q5 = {(1, 2): (10, 5), (1, 6): (22, 21), (5, 2): (18, 9), (1, 3): (15, 5), (2, 3): (11, 6), (9, 3): (3, 9)}


@pytest.mark.parametrize("ij,kl", sorted(KL_Q5.items()))
def test_kl_pair_frozen(f25, ij, kl):
    assert kl_pair(f25, *ij) == kl
    assert _brute_kl(f25, *ij) == kl


@pytest.mark.parametrize("q,d", [(3, 1), (5, 19), (5, 1), (7, 5), (9, 1), (11, 7)])
def test_kl_pair_identities_and_colors(q, d):
    table = build_field(FieldSpec.for_q(q, d))
    for i in range(table.n):
        for j in range(table.n):
            if (i - j) % (q - 1) == 0:
                with pytest.raises(FieldError):
                    kl_pair(table, i, j)
                continue
            k, l = kl_pair(table, i, j)
            assert k % (q - 1) == j % (q - 1)
            assert l % (q - 1) == i % (q - 1)
            if q <= 5:
                assert (k, l) == _brute_kl(table, i, j)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(3, 1), (5, 19), (7, 5), (9, 1), (11, 7)]), st.integers(0, 500), st.integers(0, 500))
def test_kl_pair_is_an_involution(qd, i, j):
    # the relation a_i a_j = a_k a_l read backwards is a_k a_l = a_i a_j
    q, d = qd
    table = build_field(FieldSpec.for_q(q, d))
    i, j = i % table.n, j % table.n
    if (i - j) % (q - 1) == 0:
        return
    k, l = kl_pair(table, i, j)
    assert kl_pair(table, k, l) == (i, j)


def test_fieldspec_json_roundtrip():
    spec = FieldSpec.for_q(9, 7)
    again = FieldSpec.from_json(spec.to_json())
    assert build_field(again).z == build_field(spec).z
