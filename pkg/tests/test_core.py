import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from saa.core import (
    Algebra,
    Presentation,
    build_algebra,
    central_series,
    centralizer,
    change_basis,
    is_maximal_class,
    nilpotency_class,
    random_nilpotent_presentation,
    subspace_product,
    triple,
)
from saa.errors import DimensionTooSmall, InvalidParams, NotNilpotentForm, NotSymplectic
from saa.families import instantiate_family, label
from saa.gf import GF
from saa.symlin import BasisChange, Subspace, form_eval, random_symplectic, role_index, unit, vector


def fam(F, tag, *params):
    return Algebra(instantiate_family(F, label(F, tag, *params)))


def e(F, role, n=5):
    return unit(F, 2 * n, role_index(role))


def test_presentation_normalization():
    F = GF(5)
    P = Presentation(F, 5, {("y2", "y1", "y3"): 1})
    assert P.triples == {(role_index("y1"), role_index("y2"), role_index("y3")): F.code(-1)}
    assert P.value("y3", "y2", "y1") == F(1)
    assert not Presentation(F, 5, {("x1", "x2", "y1"): 1}).is_nilpotent_form()
    with pytest.raises(InvalidParams):
        Presentation(F, 5, {("y1", "y1", "y2"): 1})
    with pytest.raises(InvalidParams):
        Presentation(F, 5, [(("y1", "y2", "y3"), 1), (("y3", "y2", "y1"), 2)])


def test_products_from_presentations():
    F = GF(5)
    P51 = fam(F, "P51")
    assert np.all(P51.multiply(e(F, "y1"), e(F, "y2")) == e(F, "x3"))
    P31 = fam(F, "P31")
    assert np.all(P31.multiply(e(F, "x2"), e(F, "y5")) == F.neg(e(F, "x4")))
    Q71 = fam(F, "Q71")
    assert np.all(Q71.multiply(e(F, "y1"), e(F, "y2")) == e(F, "x3"))
    assert np.all(Q71.multiply(e(F, "y2"), e(F, "y3")) == e(F, "x1"))
    assert triple(P51, e(F, "y1"), e(F, "y2"), e(F, "y3")) == 1


def test_abelian_products_vanish():
    F = GF(3)
    A = build_algebra(Presentation(F, 5))
    assert not np.any(A.P)
    assert nilpotency_class(A) == (True, 1)
    lower, upper = central_series(A)
    assert lower.dims == (10, 0) and upper.dims == (0, 10)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_product_is_dual_to_trilinear_form(seed):
    # oracle: (uv, w) computed from the stored triples by multilinear expansion
    F = GF(7)
    rng = np.random.default_rng(seed)
    P = random_nilpotent_presentation(F, 5, rng)
    A = Algebra(P)
    u, v, w = (F.random(rng, 10) for _ in range(3))
    total = 0
    for (i, j, k), c in P.triples.items():
        c = int(F.element(c).value)
        for a, b, d, sgn in ((i, j, k, 1), (j, k, i, 1), (k, i, j, 1), (j, i, k, -1), (i, k, j, -1), (k, j, i, -1)):
            total += sgn * c * int(u[a]) * int(v[b]) * int(w[d])
    assert form_eval(F, A.multiply(u, v), w) == total % 7
    assert not np.any(A.multiply(u, u))


def test_subspace_products():
    F = GF(5)
    P31 = fam(F, "P31")
    assert subspace_product(P31, P31.center(), P31.full()).dim == 0
    # class 4, so L3 L2 lies in L5 = 0
    assert subspace_product(P31, P31.power(3), P31.power(2)).dim == 0
    assert subspace_product(P31, P31.full(), P31.full()) == P31.power(2)


@pytest.mark.parametrize("seed", range(8))
def test_lower_series_by_definition(seed):
    F = GF(3)
    A = Algebra(random_nilpotent_presentation(F, 5, seed))
    lower = A.lower_central_series()
    for i in range(len(lower) - 1):
        assert subspace_product(A, lower[i], A.full()) == lower[i + 1]
        assert lower[i + 1] <= lower[i]


def test_central_series_examples():
    F = GF(5)
    lower, _ = central_series(fam(F, "P31"))
    assert lower.dims == (10, 7, 5, 3, 0)
    assert nilpotency_class(fam(F, "P31")) == (True, 4)
    lower, upper = central_series(fam(F, "P51"))
    assert lower.dims == (10, 5, 0) and upper.dims == (0, 5, 10)


def test_centralizer_examples():
    F = GF(3)
    Q71 = fam(F, "Q71")
    Z = centralizer(Q71, Q71.full(), Q71.full())
    assert Z == Subspace.coordinate(F, 5, ["x1", "x2", "x3", "x4", "x5", "y4", "y5"])
    A = Algebra(random_nilpotent_presentation(F, 5, 3))
    assert centralizer(A, A.full(), A.full()) == A.center()


def test_non_nilpotent_dim_6():
    F = GF(5)
    A = Algebra(Presentation(F, 3, {("x1", "x2", "y1"): -1}))
    assert nilpotency_class(A) == (False, None)


@pytest.mark.parametrize("seed", range(20))
def test_random_presentations_are_nilpotent(seed):
    F = GF(3)
    P = random_nilpotent_presentation(F, 5, seed)
    assert P.is_nilpotent_form()
    assert nilpotency_class(Algebra(P))[0]
    assert random_nilpotent_presentation(F, 5, seed) == P
    assert random_nilpotent_presentation(F, 5, seed, density=0).triples == {}


def test_maximal_class():
    F = GF(5)
    P = Presentation(F, 5, {("x1", "y2", "y3"): 1, ("y1", "y2", "y4"): 1, ("x2", "y3", "y4"): 1, ("x3", "y4", "y5"): 1})
    assert is_maximal_class(P)
    A = Algebra(P)
    # the lower central series has 2n - 3 nonzero terms here
    assert nilpotency_class(A) == (True, 7)
    assert not is_maximal_class(instantiate_family(F, label(F, "P35")))
    assert not is_maximal_class(Presentation(F, 5))
    with pytest.raises(NotNilpotentForm):
        is_maximal_class(Presentation(F, 5, {("x1", "x2", "y3"): 1}))
    with pytest.raises(DimensionTooSmall):
        is_maximal_class(Presentation(F, 3))


def test_change_basis_identity_and_scaling():
    F = GF(7)
    A = fam(F, "P36", 2)
    assert change_basis(A, BasisChange.identity(F, 5)).presentation == A.presentation
    b = F(3)
    lam = {"x2": b, "x3": b, "x4": b.inv(), "x5": b.inv()}
    M = F.eye(10)
    for r, c in lam.items():
        i = role_index(r)
        M[i, i] = c.value
        M[i + 1, i + 1] = c.inv().value
    B = change_basis(A, BasisChange(F, M))
    assert B.presentation == instantiate_family(F, label(F, "P36", F(2) * b**3))
    with pytest.raises(NotSymplectic):
        change_basis(A, BasisChange(F, F.scale(2, F.eye(10))))


@pytest.mark.parametrize("seed", range(10))
def test_basis_change_invariance(seed):
    F = GF(3)
    A = Algebra(random_nilpotent_presentation(F, 5, seed))
    B = change_basis(A, random_symplectic(F, 5, seed))
    la, ua = central_series(A)
    lb, ub = central_series(B)
    assert la.dims == lb.dims and ua.dims == ub.dims
    assert A.center().is_isotropic() == B.center().is_isotropic()
    assert subspace_product(A, A.power(2), A.power(2)).dim == subspace_product(B, B.power(2), B.power(2)).dim


def test_q71_centre_survives_basis_change():
    F = GF(5)
    B = change_basis(fam(F, "Q71"), random_symplectic(F, 5, 11))
    assert B.center().dim == 7


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 5))
def test_duality_and_l2_perp(seed, n):
    F = GF(3)
    A = Algebra(random_nilpotent_presentation(F, n, seed))
    assert A.power(2).perp() == A.center()
    lower = A.lower_central_series()
    for k in range(1, len(lower)):
        assert A.upper(k) == lower[k].perp()


def test_vector_helper():
    F = GF(5)
    v = vector(F, 5, {"x1": 2, "y5": 1})
    assert v[0] == 2 and v[9] == 1
