"""Classification of 10-dimensional nilpotent SAAs by constructive normalization.

Every case runs a sequence of symplectic basis changes on a :class:`Frame`.
Each step checks the identities it is meant to establish, so a wrong turn
raises :class:`NormalizationError` instead of producing a bogus label.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .core import Algebra, change_basis
from .errors import CaseMismatch, IsotropicCentre, NormalizationError, NotNilpotent, WrongDimension
from .families import (
    ABELIAN,
    FamilyLabel,
    canonical_params,
    family_witness,
    instantiate_family,
    param_equivalent,
)
from .gf import is_square, quad_irreducible
from .normalize import Frame
from .symlin import BasisChange, Subspace, form_eval, matrix_inverse, nullspace, role_index

# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class StructureReport:
    """Basis-independent invariants; fields that do not apply to the case are None."""

    center_dim: int
    center_isotropic: bool
    lower_dims: tuple
    upper_dims: tuple
    l2l2_dim: int
    v2l4_dim: int | None = None
    v2_in_l4: bool | None = None
    v2_in_l3: bool | None = None
    l3l2_dim: int | None = None
    l3l2_is_l5: bool | None = None
    uz4_dim: int | None = None
    tau_type: str | None = None

    def fingerprint(self) -> tuple:
        return tuple(asdict(self).values())

    def items(self):
        return asdict(self).items()


@dataclass(frozen=True)
class TauData:
    matrix: np.ndarray  # tau(b_j) = sum_i matrix[i, j] b_i on the basis b of L^5
    basis: np.ndarray
    min_poly: tuple  # (a, b) for t^2 + a t + b, as FieldElements
    type: str  # "A", "B", "C-square" or "C-general"


@dataclass
class CanonicalForm:
    label: FamilyLabel
    witness: BasisChange
    trace: list = dc_field(default_factory=list)


@dataclass
class Unsupported:
    center_dim: int
    report: StructureReport


UNKNOWN = "unknown"


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------
def _check_input(A: Algebra):
    if A.dim != 10:
        raise WrongDimension(f"expected dimension 10, got {A.dim}")
    if A.lower_central_series()[-1].dim != 0:
        raise NotNilpotent("lower central series does not reach zero")


def preimage(A: Algebra, within: Subspace, S: Subspace, target: Subspace) -> Subspace:
    """{v in within : v s in target for every s in S}."""
    F, N = A.field, A.dim
    tp = target.perp()
    if S.dim == 0 or tp.dim == 0 or within.dim == 0:
        return within
    # (v s, t) is linear in v for each basis pair (s, t)
    funcs = []
    for s in S.basis:
        C = A.right_matrix(s)
        funcs.append(F.matmul(F.matmul(within.basis, C), F.matmul(_gram(F, N), tp.basis.T)))
    coeffs = nullspace(F, np.concatenate(funcs, axis=1).T, within.dim)
    if coeffs.shape[0] == 0:
        return Subspace.zero(F, N)
    return Subspace(F, N, F.matmul(coeffs, within.basis))


def _gram(F, N):
    from .symlin import gram

    return gram(F, N // 2)


def _v_data(A: Algebra):
    L2, L3, L4 = A.power(2), A.power(3), A.power(4)
    L2L2 = A.product(L2, L2)
    V = L2L2.perp()
    V2 = A.product(V, V)
    return L2L2, V, V2


def structure_report(A: Algebra) -> StructureReport:
    _check_input(A)
    Z = A.center()
    lower = tuple(t.dim for t in A.lower_central_series())
    upper = tuple(t.dim for t in A.upper_central_series())
    L2, L3, L4, L5 = (A.power(k) for k in (2, 3, 4, 5))
    L2L2 = A.product(L2, L2)
    fields = dict(
        center_dim=Z.dim,
        center_isotropic=Z.is_isotropic(),
        lower_dims=lower,
        upper_dims=upper,
        l2l2_dim=L2L2.dim,
    )
    if Z.is_isotropic() and Z.dim == 3:
        if L3.dim == 5:
            _, V, V2 = _v_data(A)
            fields.update(v2l4_dim=(V2 + L4).dim, v2_in_l4=V2 <= L4, v2_in_l3=V2 <= L3)
        elif L3.dim == 6:
            L3L2 = A.product(L3, L2)
            fields.update(l3l2_dim=L3L2.dim, l3l2_is_l5=L3L2 == L5)
            if L3L2 == L5:
                fields.update(tau_type=tau_analysis(A).type)
            else:
                U = preimage(A, L3, L2, L3L2.intersect(L5))
                fields.update(uz4_dim=A.product(U, A.upper(4)).dim)
    return StructureReport(**fields)


def _char_poly_type(F, a, b) -> str:
    """Type of the monic quadratic t^2 + a t + b."""
    if F.char == 2:
        if a.is_zero():
            return "B"  # every element of a finite field of characteristic 2 is a square
        return "C-general" if quad_irreducible(F, a, b) else "A"
    disc = a * a - 4 * b
    if disc.is_zero():
        return "B"
    if F.is_finite:
        square = is_square(F, disc)
    else:
        v = Fraction(disc.value)
        square = v > 0 and _is_int_square(v.numerator) and _is_int_square(v.denominator)
    return "A" if square else "C-square"


def _is_int_square(n: int) -> bool:
    import math

    return n >= 0 and math.isqrt(n) ** 2 == n


def _tau(A: Algebra, L5: Subspace, reps, y2, y3):
    """Matrix of psi phi^{-1} on the basis L5.basis, from representatives of L^3/L^4."""
    F = A.field
    phi = np.array([L5.coordinates(A.multiply(u, y2)) for u in reps]).T
    psi = np.array([L5.coordinates(A.multiply(u, y3)) for u in reps]).T
    return F.matmul(psi, matrix_inverse(F, phi)), phi, psi


def _random_outside(F, rng, S: Subspace, below: Subspace):
    while True:
        c = F.random(rng, S.dim)
        v = F.matmul(c.reshape(1, -1), S.basis).reshape(-1)
        if not below.contains(v):
            return v


def tau_analysis(A: Algebra, seed=None) -> TauData:
    """The map psi phi^{-1} on L^5, with its minimal polynomial and type.

    With ``seed`` the representatives are drawn at random instead of taken
    from reduced echelon bases; the type does not depend on the choice.
    """
    _check_input(A)
    F = A.field
    Z = A.center()
    L2, L3, L4, L5 = (A.power(k) for k in (2, 3, 4, 5))
    Z4 = A.upper(4)
    if not (Z.is_isotropic() and Z.dim == 3 and L3.dim == 6 and A.product(L3, L2) == L5):
        raise CaseMismatch("tau is defined only when Z is isotropic of dim 3, dim L^3 = 6 and L^3 L^2 = L^5")
    if seed is None:
        reps = []
        acc = L4
        for row in L3.basis:
            if not acc.contains(row):
                reps.append(row)
                acc = acc.add_vectors(row)
        y2 = L3.complement_vector(L2)
        y3 = L2.complement_vector(Z4)
        basis = L5
    else:
        rng = np.random.default_rng(seed)
        u = _random_outside(F, rng, L3, L4)
        reps = [u, _random_outside(F, rng, L3, L4.add_vectors(u))]
        y2 = _random_outside(F, rng, L2, L3)
        y3 = _random_outside(F, rng, Z4, L2)
        b1 = _random_outside(F, rng, L5, Subspace.zero(F, 10))
        b2 = _random_outside(F, rng, L5, Subspace.span(F, [b1], 10))
        basis = _OrderedBasis(F, [b1, b2])
    M, _, _ = _tau(A, basis, reps, y2, y3)
    if M[0, 1] == 0 and M[1, 0] == 0 and M[0, 0] == M[1, 1]:
        raise NormalizationError("tau is scalar, which cannot happen for a nilpotent SAA")
    tr = F.element(F.add_scalar(M[0, 0], M[1, 1]))
    det = F.element(F.sub_scalar(F.mul_scalar(M[0, 0], M[1, 1]), F.mul_scalar(M[0, 1], M[1, 0])))
    a, b = -tr, det
    return TauData(M, np.array(basis.basis), (a, b), _char_poly_type(F, a, b))


class _OrderedBasis:
    """A basis kept in the given order (coordinates solved directly)."""

    def __init__(self, F, vectors):
        self.field = F
        self.basis = np.array(vectors)
        self._inv = None

    def coordinates(self, v):
        from .symlin import solve

        c = solve(self.field, self.basis.T, np.asarray(v))
        if c is None:
            raise ValueError("vector not in span")
        return c


# ---------------------------------------------------------------------------
# central pairs
# ---------------------------------------------------------------------------
def _hyperbolic_pair(F, Z: Subspace):
    rad = Z.radical()
    u = rad.complement_vector(Z)
    if u is None:
        raise IsotropicCentre("the centre is isotropic")
    for w in Z.basis:
        c = form_eval(F, u, w)
        if c != 0:
            return u, F.mul(np.asarray(F.inv_scalar(c)), w)
    raise IsotropicCentre("no hyperbolic pair in the centre")  # pragma: no cover


def split_center(A: Algebra):
    """A central pair (u, v) with (u, v) = 1 and the algebra induced on its orthogonal complement."""
    F = A.field
    Z = A.center()
    u, v = _hyperbolic_pair(F, Z)
    fr = Frame(A)
    fr.rebase("split", fixed={f"x{A.n}": u, f"y{A.n}": v})
    from .core import presentation_from_trilinear

    m = A.dim - 2
    T = fr.A.T[:m, :m, :m]
    return (u, v), Algebra(presentation_from_trilinear(F, A.n - 1, T), T.copy(), check=False)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------
def classify(A: Algebra, seed: int = 0):
    """Canonical label and witness, or :class:`Unsupported` for centre dims 2 and 4."""
    report = structure_report(A)
    F = A.field
    F.require_finite()
    fr = Frame(A, seed=seed)
    if not report.center_isotropic:
        lab = _non_isotropic(fr)
    elif report.center_dim == 5:
        lab = _p51(fr)
    elif report.center_dim == 3:
        lab = _isotropic3(fr, report)
    else:
        return Unsupported(report.center_dim, report)
    fr.finish(lab)
    canon = canonical_params(F, lab) if lab.tag != ABELIAN else lab
    if canon != lab:
        fr.apply("canonical parameters", family_witness(F, lab, canon).matrix)
        fr.finish(canon)
    if change_basis(A, fr.B).presentation != instantiate_family(F, canon):
        raise NormalizationError("accumulated witness does not reproduce the canonical presentation")
    return CanonicalForm(canon, fr.B, fr.trace)


def isomorphic(A: Algebra, B: Algebra):
    """True / False, or ``"unknown"`` when either side is outside the supported cases."""
    ca, cb = classify(A), classify(B)
    if isinstance(ca, Unsupported) or isinstance(cb, Unsupported):
        return UNKNOWN
    if ca.label.tag != cb.label.tag:
        return False
    return param_equivalent(A.field, ca.label, cb.label) if ca.label.params else True


# -- non-isotropic centre --------------------------------------------------
def _split_pair(fr: Frame, k: int):
    """Move a central hyperbolic pair of the span of pairs 1..k into slot k."""
    inner = fr.span(*[f"{c}{i}" for i in range(1, k + 1) for c in "xy"])
    u, v = _hyperbolic_pair(fr.F, fr.center().intersect(inner))
    fixed = {f"x{i}": fr.e(f"x{i}") for i in range(k + 1, fr.n + 1)}
    fixed.update({f"y{i}": fr.e(f"y{i}") for i in range(k + 1, fr.n + 1)})
    fixed.update({f"x{k}": u, f"y{k}": v})
    fr.rebase(f"split off central pair x{k}, y{k}", fixed=fixed)


def _outer_fixed(fr: Frame, k: int) -> dict:
    out = {}
    for i in range(k + 1, fr.n + 1):
        out[f"x{i}"] = fr.e(f"x{i}")
        out[f"y{i}"] = fr.e(f"y{i}")
    return out


def _non_isotropic(fr: Frame) -> FamilyLabel:
    total = fr.center().dim
    if total == 10:
        return FamilyLabel(ABELIAN)
    if total not in (7, 5, 4):
        raise NormalizationError(f"no dimension-8 complement has centre dimension {total - 2}")
    _split_pair(fr, 5)
    inner = fr.span(*[f"{c}{i}" for i in range(1, 5) for c in "xy"])
    if total == 7:
        _split_pair(fr, 4)
        rest = fr.span(*[f"{c}{i}" for i in range(1, 4) for c in "xy"])
        Zr = fr.center().intersect(rest)
        fr.rebase("centre of the 6-dimensional part", fixed=_outer_fixed(fr, 3), chain=[(Zr, ["x1", "x2", "x3"])])
        fr.scale_pair("(y1y2,y3) = 1", 3, fr.t("y1", "y2", "y3"))
        return FamilyLabel("Q71")
    if total == 5:
        return _q51(fr, inner)
    return _q41(fr, inner)


def _q51(fr: Frame, inner: Subspace) -> FamilyLabel:
    F = fr.F
    Z = fr.center().intersect(inner)
    fr.rebase("adapted basis Z < L^2", fixed=_outer_fixed(fr, 4),
              chain=[(Z, ["x2", "x3", "x4"]), (fr.lower(2), ["x1", "y1"])])
    ys = ["y2", "y3", "y4"]

    def kernel(u):
        form = np.array([[fr.t(u, a, b).value for b in ys] for a in ys], dtype=F.dtype)
        k = nullspace(F, form, 3)
        fr.check(k.shape[0] == 1, f"{u} acts with a one-dimensional kernel on the y's")
        return k[0]

    kx, ky = kernel("x1"), kernel("y1")
    lag = Subspace.span(F, [kx, ky], 3)
    fr.check(lag.dim == 2, "kernels of x1 and y1 are independent")
    mid = next(e for e in F.eye(3) if not lag.contains(e))
    Amat = np.array([kx, mid, ky]).T  # new y_j = sum_i Amat[i, j] y_i
    Ainvt = matrix_inverse(F, Amat).T
    cols = {}
    for j, role in enumerate(ys):
        cols[role] = {ys[i]: F.element(Amat[i, j]) for i in range(3)}
        xr = "x" + role[1]
        cols[xr] = {"x" + ys[i][1]: F.element(Ainvt[i, j]) for i in range(3)}
    fr.substitute("x1 y2 = 0 and y1 y4 = 0", cols)
    fr.scale_pair("(x1y3,y4) = 1", 4, fr.t("x1", "y3", "y4"))
    fr.scale_pair("(y1y2,y3) = 1", 2, fr.t("y1", "y2", "y3"))
    w = fr.t("y2", "y3", "y4")
    fr.substitute("(y2y3,y4) = 0", {"y2": {"y2": 1, "x1": -w}, "y1": {"y1": 1, "x2": -w}})
    return FamilyLabel("Q51")


def _q41(fr: Frame, inner: Subspace) -> FamilyLabel:
    def chain():
        Z = fr.center().intersect(inner)
        return [(Z, ["x4", "x3"]), (fr.lower(4), ["x2"]), (fr.lower(3), ["x1", "y1"]), (fr.lower(2), ["y2"])]

    fr.rebase("adapted basis Z < L^4 < L^3 < L^2", fixed=_outer_fixed(fr, 4), chain=chain)
    fixed = _outer_fixed(fr, 4)
    fixed.update({r: fr.e(r) for r in ("x1", "y1", "y2")})
    fixed.update(x4=fr.prod("x1", "y2"), x3=fr.prod("y1", "y2"))
    fr.rebase("x4 = x1 y2, x3 = y1 y2", fixed=fixed, chain=chain)
    q = fr.t("y1", "y3", "y4")
    fr.substitute("(y1y3,y4) = 0", {"x2": {"x2": 1, "x4": -q}, "y4": {"y4": 1, "y2": q}})
    p = fr.t("x1", "y3", "y4")
    fr.substitute("(x1y3,y4) = 0", {"x2": {"x2": 1, "x3": p}, "y3": {"y3": 1, "y2": -p}})
    r = fr.t("x2", "y3", "y4")
    fr.check(not r.is_zero(), "(x2y3,y4) != 0")
    w = fr.t("y2", "y3", "y4")
    fr.substitute("(y2y3,y4) = 0", {"y2": {"y2": 1, "x2": -w / r}})
    return FamilyLabel("Q41", (r,))


# -- isotropic centre of dimension 5 --------------------------------------
def _permute_pairs(fr: Frame, step: str, perm: dict):
    """Pair i moves to slot perm[i]."""
    cols = {}
    for i, j in perm.items():
        cols[f"x{j}"] = {f"x{i}": 1}
        cols[f"y{j}"] = {f"y{i}": 1}
    fr.substitute(step, cols)


def _p51(fr: Frame) -> FamilyLabel:
    Z = fr.center()
    fr.rebase("Z = <x1..x5>", chain=[(Z, ["x1", "x2", "x3", "x4", "x5"])])
    from itertools import combinations

    triple = next((c for c in combinations(range(1, 6), 3) if not fr.t(*(f"y{i}" for i in c)).is_zero()), None)
    fr.check(triple is not None, "some (yiyj,yk) is nonzero")
    rest = [i for i in range(1, 6) if i not in triple]
    _permute_pairs(fr, "move a nonzero (yiyj,yk) to (y1y2,y3)", {i: k + 1 for k, i in enumerate(list(triple) + rest)})
    fr.scale_pair("(y1y2,y3) = 1", 3, fr.t("y1", "y2", "y3"))
    al = {(i, j): fr.t(f"y{i}", f"y{j}", "y4") for i in range(1, 4) for j in range(1, 4)}
    be = {(i, j): fr.t(f"y{i}", f"y{j}", "y5") for i in range(1, 4) for j in range(1, 4)}
    fr.substitute("(yiyj,y4) = (yiyj,y5) = 0 for i, j <= 3", {
        "x1": {"x1": 1, "x4": al[2, 3], "x5": be[2, 3]},
        "x2": {"x2": 1, "x4": al[3, 1], "x5": be[3, 1]},
        "x3": {"x3": 1, "x4": al[1, 2], "x5": be[1, 2]},
        "y4": {"y4": 1, "y3": -al[1, 2], "y1": -al[2, 3], "y2": -al[3, 1]},
        "y5": {"y5": 1, "y3": -be[1, 2], "y1": -be[2, 3], "y2": -be[3, 1]},
    })
    i = next((i for i in (1, 2, 3) if not fr.t(f"y{i}", "y4", "y5").is_zero()), None)
    fr.check(i is not None, "y4 is not central")
    if i != 1:
        _permute_pairs(fr, "move a nonzero (yiy4,y5) to (y1y4,y5)", {i: 1, 1: i})
        fr.scale_pair("restore (y1y2,y3) = 1", 3, fr.t("y1", "y2", "y3"))
    fr.scale_pair("(y1y4,y5) = 1", 5, fr.t("y1", "y4", "y5"))
    al, be = fr.t("y2", "y4", "y5"), fr.t("y3", "y4", "y5")
    fr.substitute("(y2y4,y5) = (y3y4,y5) = 0", {
        "x1": {"x1": 1, "x2": al, "x3": be},
        "y2": {"y2": 1, "y1": -al},
        "y3": {"y3": 1, "y1": -be},
    })
    return FamilyLabel("P51")


# -- isotropic centre of dimension 3 --------------------------------------
def _isotropic3(fr: Frame, report: StructureReport) -> FamilyLabel:
    L3 = fr.lower(3)
    if L3.dim == 5:
        if report.v2_in_l4:
            return _p31(fr)
        if report.v2_in_l3:
            return _p32(fr)
        return _p33(fr)
    if L3.dim != 6:
        raise NormalizationError(f"dim L^3 = {L3.dim} is impossible here")
    if not report.l3l2_is_l5:
        return _p34_p35(fr, report.uz4_dim)
    return _tau_case(fr)


def _dim5_spaces(fr: Frame):
    A = fr.A
    L2L2, V, V2 = _v_data(A)
    return dict(L2=fr.lower(2), L3=fr.lower(3), L4=fr.lower(4), Z=fr.center(), L2L2=L2L2, V=V, V2=V2)


def _y1y2_is_x5(fr: Frame, step="y1 y2 = x5"):
    c = fr.t("y1", "y2", "y5")
    fr.check(not c.is_zero(), "y1 y2 != 0")
    fr.scale_pair(step, 2, c)
    fr.expect_product(step, "y1", "y2", {"x5": 1})


def _p31(fr: Frame) -> FamilyLabel:
    def chain():
        s = _dim5_spaces(fr)
        return [(s["L2L2"], ["x5"]), (s["Z"], ["x4", "x3"]), (s["L3"], ["x2", "x1"]),
                (s["L2"], ["y1", "y2"]), (s["V"], ["y3", "y4"])]

    fr.rebase("adapted basis L2L2 < Z < L^3 < L^2 < V", chain=chain)
    _y1y2_is_x5(fr)
    fixed = {r: fr.e(r) for r in ("x5", "y5", "x2", "x1", "y1", "y2")}
    fixed.update(x4=fr.F.neg(fr.prod("x2", "y5")), x3=fr.F.neg(fr.prod("x1", "y5")))
    fr.rebase("x4 = -x2 y5, x3 = -x1 y5", fixed=fixed, chain=chain)
    fr.expect("P31 skeleton", {("x1", "y3", "y5"): 1, ("x2", "y4", "y5"): 1, ("y1", "y2", "y5"): 1})
    al, be = fr.t("y2", "y3", "y5"), fr.t("y2", "y4", "y5")
    ga, de = fr.t("y1", "y3", "y5"), fr.t("y1", "y4", "y5")
    r = fr.t("y3", "y4", "y5")
    sv = r + al * de - be * ga
    fr.substitute("clear alpha, beta, gamma, delta, r", {
        "y3": {"y3": 1, "y1": al, "y2": -ga, "x2": -sv, "x3": -sv * ga, "x4": -sv * de},
        "y2": {"y2": 1, "x3": -sv},
        "x1": {"x1": 1, "x3": -al, "x4": -be},
        "y4": {"y4": 1, "y1": be, "y2": -de},
        "x2": {"x2": 1, "x3": ga, "x4": de},
    })
    return FamilyLabel("P31")


def _p32(fr: Frame) -> FamilyLabel:
    s = _dim5_spaces(fr)
    A = fr.A
    V2L4 = s["V2"] + s["L4"]
    W = A.centralizer(V2L4, within=s["V"])
    fr.check(W.dim == 8, "W has codimension 1 in V")
    chain = [(s["L2L2"], ["x5"]), (W.perp(), ["x4"]), (s["Z"], ["x3"]), (V2L4, ["x2"]), (s["L3"], ["x1"]),
             (s["V2"].perp().intersect(s["L2"]), ["y1"]), (s["L2"], ["y2"]), (W, ["y3"]), (s["V"], ["y4"])]
    fr.rebase("adapted basis for V^2 + L^4 < L^3", chain=chain)
    _y1y2_is_x5(fr)
    r = fr.t("x2", "y4", "y5")
    fr.scale_pair("x2 y4 = x5", 4, r)
    al = fr.t("x1", "y4", "y5")
    fr.substitute("x1 y4 = 0", {"x1": {"x1": 1, "x2": -al}, "y2": {"y2": 1, "y1": al}})
    fr.scale_pair("x1 y3 = x5", 3, fr.t("x1", "y3", "y5"))
    a = fr.t("y1", "y3", "y5")
    fr.substitute("y1 y3 = 0", {"y1": {"y1": 1, "x1": -a}})
    a = fr.t("y1", "y4", "y5")
    fr.substitute("y1 y4 = 0", {"y4": {"y4": 1, "y2": -a}, "x2": {"x2": 1, "x4": a}})
    r = fr.t("y2", "y3", "y4")
    fr.check(not r.is_zero(), "(y2y3,y4) != 0")
    al = fr.t("y3", "y4", "y5")
    fr.substitute("y3 y4 = r x2", {"x2": {"x2": 1, "x5": al / r}, "y5": {"y5": 1, "y2": -al / r}})
    a, b = fr.t("y2", "y3", "y5"), fr.t("y2", "y4", "y5")
    fr.substitute("(y2y3,y5) = (y2y4,y5) = 0", {
        "y5": {"y5": 1, "y4": -a / r, "y3": b / r},
        "x4": {"x4": 1, "x5": a / r},
        "x3": {"x3": 1, "x5": -b / r},
    })
    ri = r.inv()
    fr.substitute("(y2y3,y4) = 1", {
        "x1": {"x1": ri}, "y1": {"y1": r}, "x2": {"x2": r}, "y2": {"y2": ri},
        "x3": {"x3": ri}, "y3": {"y3": r}, "x4": {"x4": r}, "y4": {"y4": ri},
    })
    return FamilyLabel("P32")


def _p33(fr: Frame) -> FamilyLabel:
    def chain():
        s = _dim5_spaces(fr)
        X = s["V2"].perp().intersect(s["L3"])
        W = fr.A.centralizer(X, within=s["V"])
        fr.check(W.dim == 8, "W has codimension 1 in V")
        return [(s["L2L2"], ["x5"]), (W.perp(), ["x4"]), (s["Z"], ["x3"]), (X, ["x2"]), (s["L3"], ["x1"]),
                (s["V2"] + s["L3"], ["y1"]), (s["L2"], ["y2"]), (W, ["y3"]), (s["V"], ["y4"])]

    fr.rebase("adapted basis for V^2 + L^3", chain=chain)
    _y1y2_is_x5(fr)
    fr.scale_pair("x2 y4 = x5", 4, fr.t("x2", "y4", "y5"))
    r = fr.t("x1", "y3", "y4")
    fr.check(not r.is_zero(), "(x1y3,y4) != 0")
    fr.scale_pair("x1 y3 = x4", 3, r)
    fr.eliminate("clear the remaining triples", FamilyLabel("P33"), chain)
    return FamilyLabel("P33")


# -- dim L^3 = 6 -----------------------------------------------------------
def _dim6_spaces(fr: Frame):
    return dict(L2=fr.lower(2), L3=fr.lower(3), L4=fr.lower(4), L5=fr.lower(5), Z=fr.center(), Z4=fr.upper(4))


def _junk(fr: Frame):
    t = fr.t
    return dict(
        a=t("x1", "y4", "y5"), b=t("y1", "y4", "y5"), c=t("y2", "y3", "y4"),
        d=t("y2", "y3", "y5"), e=t("y2", "y4", "y5"), f=t("y3", "y4", "y5"), r=t("x2", "y4", "y5"),
    )


def _p34_p35(fr: Frame, uz4: int) -> FamilyLabel:
    if uz4 not in (1, 2):
        raise NormalizationError(f"dim U Z4 = {uz4} is impossible here")

    def chain():
        A = fr.A
        s = _dim6_spaces(fr)
        S = A.product(s["L3"], s["L2"]).intersect(s["L5"])
        U = preimage(A, s["L3"], s["L2"], S)
        fr.check(S.dim == 1 and U.dim == 5, "L^3L^2 meets L^5 in a line and U has dimension 5")
        out = [(S, ["x5"]), (s["L5"], ["x4"]), (s["Z"], ["x3"]), (s["L4"], ["x2"]), (U, ["x1"]), (s["L3"], ["y1"])]
        if uz4 == 1:
            Vc = A.centralizer(U, within=s["Z4"])
            fr.check(Vc.dim == 7, "V has codimension 1 in Z4")
            return out + [(s["L2"], ["y2"]), (Vc, ["y3"]), (s["Z4"], []), (S.perp(), ["y4"])]
        return out + [(s["L2"], ["y2"]), (s["Z4"], ["y3"]), (S.perp(), ["y4"])]
    fr.rebase("adapted basis through U", chain=chain)
    c = fr.t("y1", "y2", "y3")
    fr.check(not c.is_zero(), "(y1y2,y3) != 0")
    fr.scale_pair("(y1y2,y3) = 1", 2, c)
    fixed = {r: fr.e(r) for r in ("x1", "y1", "y2", "y3")}
    fixed.update(x5=fr.prod("x1", "y2"), x3=fr.prod("y1", "y2"), x2=fr.F.neg(fr.prod("y1", "y3")))
    if uz4 == 2:
        fixed["x4"] = fr.prod("x1", "y3")
    fr.rebase("products of x1, y1 with y2, y3",
              fixed=fixed, chain=chain)
    r = fr.t("x2", "y4", "y5")
    fr.check(not r.is_zero(), "(x2y4,y5) != 0")
    if uz4 == 1:
        fr.expect_product("x1 y3 = 0", "x1", "y3", {})
        fr.scale_pair("(x2y4,y5) = 1", 4, r)
        fr.eliminate("clear the remaining triples", FamilyLabel("P34"), chain)
        return FamilyLabel("P34")
    for i, lam in ((2, r.inv()), (3, r), (4, r.inv()), (5, r)):
        fr.scale_pair("(x2y4,y5) = 1", i, lam)
    fr.eliminate("clear the remaining triples", FamilyLabel("P35"), chain)
    return FamilyLabel("P35")


def _frame_tau(fr: Frame):
    """tau in the (x4, x5) coordinates of an adapted frame, with phi."""
    A = fr.A
    L5 = fr.span("x4", "x5")
    M, phi, _ = _tau(A, _OrderedBasis(fr.F, [fr.e("x4"), fr.e("x5")]), [fr.e("x1"), fr.e("y1")], fr.e("y2"), fr.e("y3"))
    return M, phi


def _tau_case(fr: Frame) -> FamilyLabel:
    F = fr.F

    def chain():
        s = _dim6_spaces(fr)
        return [(s["L5"], ["x5", "x4"]), (s["Z"], ["x3"]), (s["L4"], ["x2"]), (s["L3"], ["x1", "y1"]),
                (s["L2"], ["y2"]), (s["Z4"], ["y3"])]

    fr.rebase("adapted basis L^5 < Z < L^4 < L^3 < L^2 < Z4", chain=chain)
    M, _ = _frame_tau(fr)
    tr = F.element(F.add_scalar(M[0, 0], M[1, 1]))
    det = F.element(F.sub_scalar(F.mul_scalar(M[0, 0], M[1, 1]), F.mul_scalar(M[0, 1], M[1, 0])))
    a, b = -tr, det
    kind = _char_poly_type(F, a, b)

    def shift(lam, step):
        if not lam.is_zero():
            fr.substitute(step, {"y3": {"y3": 1, "y2": -lam}, "x2": {"x2": 1, "x3": lam}})

    def in_l5(c):
        return fr.vec({"x4": F.element(c[0]), "x5": F.element(c[1])})

    def preimages(vs):
        _, phi = _frame_tau(fr)
        pinv = matrix_inverse(F, phi)
        out = []
        for v in vs:
            c = F.matmul(pinv, np.array([v[role_index("x4")], v[role_index("x5")]]))
            out.append(fr.vec({"x1": F.element(c[0]), "y1": F.element(c[1])}))
        return out

    def fix(step, x1, y1, x4, x5):
        fixed = {"x1": x1, "y1": y1, "x4": x4, "x5": x5, "y2": fr.e("y2"), "y3": fr.e("y3")}
        fr.rebase(step, fixed=fixed, chain=chain)

    roots = [e for e in F.elements() if (e * e + a * e + b).is_zero()]
    if kind == "A":
        lam, mu = roots[0], roots[1]
        shift(lam, "tau(x4) = 0")
        fr.scale_pair("tau(x5) = x5", 3, mu - lam)
        M, _ = _frame_tau(fr)
        k0 = nullspace(F, M, 2)[0]
        k1 = nullspace(F, F.sub(M, F.eye(2)), 2)[0]
        v4, v5 = in_l5(k0), in_l5(k1)
        u, w = preimages([v4, v5])
        sigma = fr.form(u, w)
        fix("x1 y2 = x4, y1 y2 = x5, x1 y3 = 0, y1 y3 = x5", u, F.scale(sigma.inv().value, w),
            v4, F.scale(sigma.inv().value, v5))
        fr.expect_product("type A frame", "x1", "y2", {"x4": 1})
        fr.expect_product("type A frame", "y1", "y2", {"x5": 1})
        fr.expect_product("type A frame", "x1", "y3", {})
        fr.expect_product("type A frame", "y1", "y3", {"x5": 1})
        return _eliminate(fr, "P36", chain)
    if kind == "B":
        shift(roots[0], "tau nilpotent")
        M, _ = _frame_tau(fr)
        e4, e5 = F.eye(2)
        c5 = e4 if np.any(M[:, 0] != 0) else e5
        v5 = in_l5(c5)
        v4 = in_l5(F.matmul(M, c5))
        u, w = preimages([v4, v5])
        sigma = fr.form(u, w)
        fr.scale_pair("(x1,y1) = 1", 3, sigma.inv())
        si = sigma.inv().value
        fix("x1 y2 = x4, y1 y2 = x5, x1 y3 = 0, y1 y3 = x4", u, F.scale(si, w), v4, F.scale(si, v5))
        fr.expect_product("type B frame", "x1", "y2", {"x4": 1})
        fr.expect_product("type B frame", "y1", "y2", {"x5": 1})
        fr.expect_product("type B frame", "x1", "y3", {})
        fr.expect_product("type B frame", "y1", "y3", {"x4": 1})
        return _eliminate(fr, "P37", chain)
    if F.char != 2:
        shift(-a / 2, "minimal polynomial t^2 - s")
    M, _ = _frame_tau(fr)
    c5 = F.eye(2)[0]
    v5 = in_l5(c5)
    v4 = in_l5(F.matmul(M, c5))
    u, w = preimages([v4, v5])
    sigma = fr.form(u, w)
    fr.scale_pair("(x1,y1) = 1", 3, sigma.inv())
    si = sigma.inv().value
    fix("x1 y2 = x4, y1 y2 = x5, y1 y3 = x4", u, F.scale(si, w), v4, F.scale(si, v5))
    fr.expect_product("type C frame", "x1", "y2", {"x4": 1})
    fr.expect_product("type C frame", "y1", "y2", {"x5": 1})
    fr.expect_product("type C frame", "y1", "y3", {"x4": 1})
    r1, s1 = fr.t("x1", "y3", "y4"), fr.t("x1", "y3", "y5")
    if F.char != 2:
        fr.check(r1.is_zero(), "x1 y3 = s x5")
        return _eliminate(fr, "P38", chain, s1)
    return _eliminate(fr, "P39", chain, r1, s1)


def _eliminate(fr: Frame, tag: str, chain, *extra) -> FamilyLabel:
    r = fr.t("x2", "y4", "y5")
    fr.check(not r.is_zero(), "(x2y4,y5) != 0")
    lab = FamilyLabel(tag, (r, *extra))
    fr.eliminate("clear the remaining triples", lab, chain)
    return lab
