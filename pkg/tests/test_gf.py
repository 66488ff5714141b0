from itertools import product
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from saa.errors import DivisionByZero, FieldMismatch, InvalidParams, NotPrime, ReducibleModulus
from saa.gf import (
    GF,
    QQ,
    cube_classes,
    field_arith,
    field_make,
    g_group,
    gsq_group,
    h_group,
    is_square,
    parse_element,
    parse_field,
    quad_irreducible,
    special_groups,
)

ORDERS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)]


def poly_mul_mod(a, b, mod, p):
    # schoolbook product then reduction, independent of the table-driven field
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    n = len(mod) - 1
    for k in range(len(out) - 1, n - 1, -1):
        c = out[k]
        if c:
            for i, m in enumerate(mod):
                out[k - n + i] = (out[k - n + i] - c * m) % p
    return tuple((out + [0] * n)[:n])


def test_field_make_prime():
    F = field_make(3)
    assert F.q == 3 and F.char == 3


def test_field_make_gf4_and_reducible():
    F = field_make(2, 2, [1, 1, 1])
    assert F.q == 4
    with pytest.raises(ReducibleModulus):
        field_make(2, 2, [1, 0, 1])


def test_not_prime():
    with pytest.raises(NotPrime):
        GF(6)


def test_small_products():
    F3, F7 = GF(3), GF(7)
    assert F3(2) * F3(2) == F3(1)
    assert F7(3).inv() == F7(5)
    F4 = GF(2, 2, [1, 1, 1])
    w = F4([0, 1])
    assert w * w == w + F4.one


@pytest.mark.parametrize("p,n", ORDERS)
def test_multiplication_matches_polynomial_reduction(p, n):
    F = GF(p, n)
    for a, b in product(F.elements(), repeat=2):
        want = poly_mul_mod(list(a.coeffs), list(b.coeffs), list(F.modulus), p) if n > 1 else ((a.coeffs[0] * b.coeffs[0]) % p,)
        assert (a * b).coeffs == want


@pytest.mark.parametrize("p,n", ORDERS)
def test_inverses_and_division(p, n):
    F = GF(p, n)
    for a in F.elements():
        if a.is_zero():
            with pytest.raises(DivisionByZero):
                a.inv()
        else:
            assert a * a.inv() == F.one
            assert field_arith(F.one, a, "div") == a.inv()


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ORDERS), st.data())
def test_field_axioms(order, data):
    F = GF(*order)
    el = st.integers(0, F.q - 1).map(F.element)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == F.zero and a + (-a) == F.zero
    assert a ** (F.q - 1) == (F.zero if a.is_zero() else F.one)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        field_arith(GF(3).one, GF(5).one, "add")


def test_pow_and_sub():
    F = GF(7)
    assert field_arith(F(3), 6, "pow") == F.one
    assert field_arith(F(3), F(5), "sub") == F(5)


@pytest.mark.parametrize("p,n", ORDERS)
def test_cube_classes_partition(p, n):
    F = GF(p, n)
    classes = cube_classes(F)
    assert len(classes) == gcd(3, F.q - 1)
    seen = [x for c in classes for x in c.codes]
    assert sorted(seen) == list(range(1, F.q))
    cubes = {(x * x * x).value for x in F.elements() if not x.is_zero()}
    assert set(classes[0].codes) == cubes


def test_cube_classes_examples():
    assert [sorted(c.codes) for c in cube_classes(GF(3))] == [[1, 2]]
    assert sorted(sorted(int(m.value) for m in c) for c in cube_classes(GF(7))) == [[1, 6], [2, 5], [3, 4]]
    assert len(cube_classes(GF(2, 2))) == 3


def test_h_group_gf4():
    F = GF(2, 2)
    assert set(h_group(F, F.one).codes) == {F.zero.value, F.one.value}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_g_group_is_everything_in_char_2(k):
    F = GF(2, k)
    for r in F.elements():
        for s in F.elements():
            if not r.is_zero() and quad_irreducible(F, r, s):
                assert len(g_group(F, r, s)) == F.q - 1


def test_gsq_gf7():
    F = GF(7)
    assert sorted(gsq_group(F, 3).codes) == [1, 2, 4]
    assert special_groups(F, "Gsq(s)", 3) == gsq_group(F, 3)


def test_special_group_preconditions():
    F = GF(5)
    with pytest.raises(InvalidParams):
        h_group(F, 0)
    with pytest.raises(InvalidParams):
        g_group(F, 0, 1)  # t^2 + 1 has roots 2, 3 mod 5
    with pytest.raises(InvalidParams):
        gsq_group(F, 4)


@pytest.mark.parametrize("p,n", ORDERS)
def test_subgroup_closure(p, n):
    F = GF(p, n)
    for r in F.elements():
        if r.is_zero():
            continue
        H = h_group(F, r)
        if p == 2:
            assert H.kind == "additive-subgroup"
            assert all((a + b) in H and (-a) in H for a in H for b in H)
        for s in F.elements():
            if quad_irreducible(F, r, s):
                G = g_group(F, r, s)
                assert F.zero not in G
                assert all(a * b in G and a.inv() in G for a in G for b in G)


def test_quad_irreducible_examples():
    assert quad_irreducible(GF(2), 1, 1)
    assert quad_irreducible(GF(3), 0, 1)
    for F in (GF(2), GF(5), GF(3, 2)):
        assert not quad_irreducible(F, 0, 0)


@pytest.mark.parametrize("p,n", ORDERS[:7])
def test_quad_irreducible_counts(p, n):
    # (q^2 - q) / 2 monic irreducible quadratics
    F = GF(p, n)
    count = sum(quad_irreducible(F, r, s) for r in F.elements() for s in F.elements())
    assert count == (F.q * F.q - F.q) // 2


def test_is_square():
    F = GF(7)
    assert {x for x in range(7) if is_square(F, x)} == {0, 1, 2, 4}


def test_literals_round_trip(fields):
    for F in fields.values():
        assert parse_field(F.literal()) == F
        for a in F.elements():
            assert parse_element(F, F.format_element(a.value)) == a
    assert parse_field("gf(9)") == GF(3, 2)
    assert parse_field("qq") is QQ


def test_ordering_is_lexicographic():
    F = GF(3, 2)
    coeffs = [a.coeffs for a in F.elements()]
    assert coeffs == sorted(coeffs)


def test_vectorized_matmul_matches_scalar():
    F = GF(2, 3)
    rng = np.random.default_rng(0)
    A = F.random(rng, (4, 3))
    v = F.random(rng, 3)
    got = F.matmul(A, v)
    for i in range(4):
        acc = F.zero
        for k in range(3):
            acc = acc + F.element(A[i, k]) * F.element(v[k])
        assert got[i] == acc.value
