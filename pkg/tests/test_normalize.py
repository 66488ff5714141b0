import numpy as np
import pytest

from saa.core import Algebra, change_basis
from saa.errors import NormalizationError
from saa.families import instantiate_family, label
from saa.gf import GF
from saa.normalize import Frame, adapted_basis, elementary_moves, gen_sign
from saa.symlin import BasisChange, Subspace, form_eval, role_index, role_name


def move_matrix(F, g, c, N=10):
    E = F.eye(N)
    for u, v in g:
        E[v, u] = F.mul(np.asarray(F.code(c)), np.asarray(F.code(gen_sign(u, v))))
    return E


@pytest.mark.parametrize("pk", [(3, 1), (2, 2), (7, 1)])
def test_elementary_moves_are_symplectic(pk):
    F = GF(*pk)
    gens = elementary_moves(5)
    # sp(10) has dimension 55, minus the 5 diagonal generators
    assert len(gens) == 50
    assert len({tuple(sorted(g)) for g in gens}) == 50
    for g in gens:
        assert BasisChange(F, move_matrix(F, g, 2 % F.char or 1)).symplectic


def lower_chain(A):
    """Lower central series terms with the roles first appearing in each."""
    terms = A.lower_central_series()
    out = []
    for k, S in enumerate(terms):
        below = terms[k + 1] if k + 1 < len(terms) else Subspace.zero(A.field, A.dim)
        units = np.eye(A.dim, dtype=int)
        roles = [role_name(r) for r in range(A.dim) if S.contains(units[r]) and not below.contains(units[r])]
        out.append((S, roles))
    return out


def test_adapted_basis_respects_flag_and_fixed():
    F = GF(5)
    A = Algebra(instantiate_family(F, label(F, "P31")))
    chain = lower_chain(A)
    fixed = {"x5": np.eye(10, dtype=int)[role_index("x5")]}
    M = adapted_basis(F, 5, fixed, chain)
    C = BasisChange(F, M)
    assert C.symplectic
    assert np.all(M[:, role_index("x5")] == fixed["x5"])
    for S, roles in chain:
        for r in roles:
            assert S.contains(M[:, role_index(r)])


def test_adapted_basis_reports_impossible_requests():
    F = GF(3)
    x1 = np.eye(10, dtype=int)[0]
    # y1 must pair with x1 but is confined to a line orthogonal to it
    line = Subspace.span(F, [np.eye(10, dtype=int)[2]], 10)
    assert adapted_basis(F, 5, {"x1": x1}, [(line, ["y1"])]) is None


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("tag", ["P31", "P33", "P35"])
def test_eliminate_removes_flag_preserving_junk(tag, seed):
    F = GF(5)
    lab = label(F, tag)
    A = Algebra(instantiate_family(F, lab))
    chain = lower_chain(A)
    level = [10] * 10
    for S, roles in chain:
        for r in roles:
            level[role_index(r)] = S.dim
    gens = [g for g in elementary_moves(5) if all(level[v] < level[u] for u, v in g)]
    rng = np.random.default_rng(seed)
    M = F.eye(10)
    for k in rng.choice(len(gens), size=6):
        M = F.matmul(M, move_matrix(F, gens[k], int(rng.integers(1, 5))))
    fr = Frame(change_basis(A, BasisChange(F, M)))
    fr.eliminate("clear junk", lab, lambda: lower_chain(fr.A))
    assert fr.A.presentation == instantiate_family(F, lab)
    assert change_basis(change_basis(A, BasisChange(F, M)), fr.B).presentation == A.presentation


def test_frame_checks_raise():
    F = GF(3)
    fr = Frame(Algebra(instantiate_family(F, label(F, "P51"))))
    fr.expect("ok", {("y1", "y2", "y3"): 1})
    with pytest.raises(NormalizationError):
        fr.expect("wrong", {("y1", "y2", "y3"): 2})
    bad = F.eye(10)
    bad[0, 0] = 2
    with pytest.raises(NormalizationError):
        fr.apply("not symplectic", bad)
    with pytest.raises(NormalizationError):
        fr.finish(label(F, "P31"))
    fr.finish(label(F, "P51"))


def test_scale_pair_and_trace():
    F = GF(7)
    fr = Frame(Algebra(instantiate_family(F, label(F, "P51"))))
    fr.scale_pair("scale pair 1", 1, 3)
    assert fr.t("y1", "y2", "y3") == F(3).inv()
    assert fr.trace == ["scale pair 1"]
    assert fr.B.symplectic
    assert form_eval(F, fr.e("x1"), fr.e("y1")) == 1
