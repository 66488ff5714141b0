import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from saa.canon import (
    UNKNOWN,
    CanonicalForm,
    Unsupported,
    classify,
    isomorphic,
    split_center,
    structure_report,
    tau_analysis,
)
from saa.core import Algebra, Presentation, change_basis, random_nilpotent_presentation
from saa.errors import CaseMismatch, IsotropicCentre, NotNilpotent, WrongDimension
from saa.families import FAMILIES, FamilyLabel, canonical_params, instantiate_family, label, valid_params
from saa.gf import GF
from saa.symlin import Subspace, random_symplectic, role_index


def fam(F, tag, *params):
    return Algebra(instantiate_family(F, label(F, tag, *params)))


def e(role):
    return np.eye(10, dtype=int)[role_index(role)]


def test_structure_report_examples():
    F = GF(5)
    r = structure_report(fam(F, "P31"))
    assert (r.center_dim, r.center_isotropic) == (3, True)
    assert r.lower_dims == (10, 7, 5, 3, 0)
    assert r.v2_in_l4 is True
    r = structure_report(fam(F, "P35"))
    assert fam(F, "P35").power(3).dim == 6
    assert r.l3l2_is_l5 is False and r.uz4_dim == 2
    assert structure_report(fam(F, "P34")).uz4_dim == 1
    r = structure_report(fam(F, "Q71"))
    assert (r.center_dim, r.center_isotropic) == (7, False)
    assert r.tau_type is None and r.uz4_dim is None


def test_report_separates_v2_cases():
    F = GF(3)
    r31, r32, r33 = (structure_report(fam(F, t)) for t in ("P31", "P32", "P33"))
    assert r31.v2_in_l4
    assert not r32.v2_in_l4 and r32.v2_in_l3
    assert not r33.v2_in_l3


@pytest.mark.parametrize("seed", range(5))
def test_report_is_basis_independent(seed):
    F = GF(7)
    for A in (fam(F, "P36", 2), fam(F, "P35"), fam(F, "Q41", 3), fam(F, "P32")):
        B = change_basis(A, random_symplectic(F, 5, seed))
        assert structure_report(A) == structure_report(B)


def test_tau_examples():
    F = GF(5)
    t = tau_analysis(fam(F, "P36", 1))
    assert t.type == "A"
    assert t.min_poly == (F(-1), F(0))  # t^2 - t
    t = tau_analysis(fam(F, "P37", 1))
    assert t.type == "B" and t.min_poly == (F(0), F(0))
    t = tau_analysis(fam(F, "P38", 1, 2))
    assert t.type == "C-square"
    F4 = GF(2, 2)
    lab = FamilyLabel("P39", valid_params(F4, "P39")[0])
    r, s = lab.params[1], lab.params[2]
    t = tau_analysis(Algebra(instantiate_family(F4, lab)))
    assert t.type == "C-general" and t.min_poly == (r, s)
    with pytest.raises(CaseMismatch):
        tau_analysis(fam(F, "P31"))


@pytest.mark.parametrize("seed", range(50))
def test_tau_type_independent_of_representatives(seed):
    F = GF(3)
    for tag, params in (("P36", (1,)), ("P37", (2,)), ("P38", (1, 2))):
        A = change_basis(fam(F, tag, *params), random_symplectic(F, 5, seed))
        assert tau_analysis(A, seed=seed).type == tau_analysis(A).type


def test_classify_examples():
    F = GF(5)
    cf = classify(fam(F, "P34"))
    assert isinstance(cf, CanonicalForm) and cf.label == label(F, "P34")
    assert cf.witness.symplectic
    F7 = GF(7)
    A = change_basis(fam(F7, "P36", 2), random_symplectic(F7, 5, 3))
    cf = classify(A)
    assert cf.label == canonical_params(F7, label(F7, "P36", 5)) == label(F7, "P36", 2)
    assert change_basis(A, cf.witness).presentation == instantiate_family(F7, cf.label)
    assert classify(Algebra(Presentation(F, 5))).label.tag == "ABELIAN"


def _with_isotropic_centre(F, dim, tries=4000):
    rng = np.random.default_rng(1)
    for _ in range(tries):
        A = Algebra(random_nilpotent_presentation(F, 5, rng, density=float(rng.uniform(0.1, 0.5))))
        Z = A.center()
        if Z.dim == dim and Z.is_isotropic():
            return A
    pytest.fail(f"no algebra with isotropic centre of dim {dim} found")


@pytest.mark.parametrize("dim", [2, 4])
def test_unsupported_centres(dim):
    A = _with_isotropic_centre(GF(3), dim)
    res = classify(A)
    assert isinstance(res, Unsupported) and res.center_dim == dim
    assert res.report.center_dim == dim
    assert isomorphic(A, A) == UNKNOWN


def test_classify_rejects_bad_input():
    F = GF(5)
    with pytest.raises(NotNilpotent):
        classify(Algebra(Presentation(F, 5, {("x1", "x2", "y1"): 1})))
    with pytest.raises(WrongDimension):
        classify(Algebra(Presentation(F, 4)))


@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
def test_parameter_extraction_consistency(pk):
    F = GF(*pk)
    for tag in FAMILIES:
        for ps in valid_params(F, tag, fixed_s=False)[:6]:
            lab = FamilyLabel(tag, ps)
            cf = classify(Algebra(instantiate_family(F, lab)))
            assert cf.label == canonical_params(F, lab)


def test_label_matches_report_pattern():
    F = GF(7)
    for tag in FAMILIES:
        labs = valid_params(F, tag)
        if not labs:
            continue
        A = change_basis(Algebra(instantiate_family(F, FamilyLabel(tag, labs[0]))), random_symplectic(F, 5, 9))
        rep = structure_report(A)
        got = classify(A).label.tag
        assert got == tag
        if tag in ("P36", "P37", "P38"):
            assert rep.tau_type == {"P36": "A", "P37": "B", "P38": "C-square"}[tag]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 1), (3, 1), (5, 1), (2, 2)]))
def test_witness_soundness_on_random_algebras(seed, pk):
    F = GF(*pk)
    rng = np.random.default_rng(seed)
    A = Algebra(random_nilpotent_presentation(F, 5, rng, density=float(rng.uniform(0.15, 0.5))))
    res = classify(A, seed=seed)
    if isinstance(res, Unsupported):
        assert res.center_dim in (2, 4)
        return
    assert res.witness.symplectic
    assert change_basis(A, res.witness).presentation == instantiate_family(F, res.label)


def test_split_center_examples():
    F = GF(5)
    (u, v), C = split_center(fam(F, "Q51"))
    assert C.dim == 8
    want = Presentation(F, 4, {("y1", "y2", "y3"): 1, ("x1", "y3", "y4"): 1})
    assert C.presentation == want
    assert np.all(u == e("x5")) and np.all(v == e("y5"))
    (u, v), C = split_center(Algebra(Presentation(F, 5)))
    assert C.dim == 8 and not C.presentation.triples
    (_, _), C = split_center(fam(F, "Q41", 1))
    assert C.center().dim == 2
    with pytest.raises(IsotropicCentre):
        split_center(fam(F, "P31"))


def test_isomorphic_examples():
    F = GF(7)
    assert isomorphic(fam(F, "P36", 1), fam(F, "P36", 6)) is True
    assert isomorphic(fam(F, "P36", 1), fam(F, "P36", 2)) is False
    assert isomorphic(fam(F, "P36", 1), fam(F, "P37", 1)) is False
    for tag in ("P31", "P35", "Q41", "P38"):
        labs = valid_params(F, tag)
        A = Algebra(instantiate_family(F, FamilyLabel(tag, labs[0])))
        assert isomorphic(A, change_basis(A, random_symplectic(F, 5, 21))) is True


def test_trace_is_recorded():
    F = GF(3)
    cf = classify(change_basis(fam(F, "P33"), random_symplectic(F, 5, 2)))
    assert cf.trace and all(isinstance(s, str) and s for s in cf.trace)
    assert classify(fam(F, "P33"), seed=0).trace == classify(fam(F, "P33"), seed=0).trace
