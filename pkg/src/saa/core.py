"""Symplectic alternating algebras built from triple-value presentations.

An algebra is stored through its alternating trilinear form
``T(u, v, w) = (u v, w)`` on the standard basis.  Products are recovered by
the dual expansion ``u v = sum_k T(u, v, y_k) x_k - T(u, v, x_k) y_k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    AxiomViolation,
    DimensionTooSmall,
    FieldMismatch,
    InvalidParams,
    NotNilpotentForm,
    NotSymplectic,
)
from .symlin import (
    BasisChange,
    Subspace,
    form_eval,
    gram,
    nullspace,
    role_index,
    role_name,
    unit,
)


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class Presentation:
    """Sparse triple values ``(u_i u_j, u_k)`` over a standard basis of dimension 2n.

    Keys are stored as increasing index triples; a value given for an
    unsorted triple is multiplied by the sign of the sorting permutation.
    """

    def __init__(self, field, n: int, triples=None):
        self.field = field
        self.n = int(n)
        self.triples: dict[tuple[int, int, int], object] = {}
        items = triples.items() if isinstance(triples, dict) else (triples or [])
        for key, value in items:
            self._set(key, value, strict=True)

    def _set(self, key, value, strict=False):
        F = self.field
        idx = tuple(role_index(k) if isinstance(k, str) else int(k) for k in key)
        if len(idx) != 3 or len(set(idx)) != 3:
            raise InvalidParams(f"triple {key} needs three distinct basis symbols")
        if any(i < 0 or i >= 2 * self.n for i in idx):
            raise InvalidParams(f"triple {key} outside dimension {2 * self.n}")
        code = F.code(value)
        sorted_idx = tuple(sorted(idx))
        if _perm_sign(idx) < 0:
            code = F.neg_scalar(code)
        if strict and sorted_idx in self.triples:
            raise InvalidParams(f"duplicate triple {key}")
        if code != 0:
            self.triples[sorted_idx] = code
        else:
            self.triples.pop(sorted_idx, None)

    @property
    def dim(self) -> int:
        return 2 * self.n

    def value(self, *key):
        """Triple value (as a FieldElement) for any ordering of three symbols."""
        idx = tuple(role_index(k) if isinstance(k, str) else int(k) for k in key)
        if len(set(idx)) < 3:
            return self.field.zero
        code = self.triples.get(tuple(sorted(idx)), self.field.code(0))
        if _perm_sign(idx) < 0:
            code = self.field.neg_scalar(code)
        return self.field.element(code)

    def items(self):
        """``((sym1, sym2, sym3), FieldElement)`` pairs in key order."""
        for key in sorted(self.triples):
            yield tuple(role_name(i) for i in key), self.field.element(self.triples[key])

    def is_nilpotent_form(self) -> bool:
        for key in self.triples:
            xs = [i for i in key if i % 2 == 0]
            if len(xs) > 1:
                return False
            if xs:
                i = xs[0] // 2
                ys = [k // 2 for k in key if k % 2 == 1]
                if not all(j > i for j in ys):
                    return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, Presentation)
            and self.field == other.field
            and self.n == other.n
            and self.triples == other.triples
        )

    def __repr__(self):
        body = ", ".join(f"({a}{b},{c})={v}" for (a, b, c), v in self.items())
        return f"Presentation({self.field}, dim={self.dim}: {body or 'abelian'})"


class Algebra:
    """A symplectic alternating algebra with its full trilinear form and product table."""

    def __init__(self, presentation: Presentation, trilinear=None, check: bool = True):
        self.presentation = presentation
        self.field = F = presentation.field
        self.n = presentation.n
        N = self.dim
        if trilinear is None:
            T = F.zeros((N, N, N))
            for (i, j, k), c in presentation.triples.items():
                nc = F.neg_scalar(c)
                for a, b, d, val in (
                    (i, j, k, c), (j, k, i, c), (k, i, j, c),
                    (j, i, k, nc), (i, k, j, nc), (k, j, i, nc),
                ):
                    T[a, b, d] = val
            trilinear = T
        self.T = trilinear
        # u v has x_k-coordinate T(u, v, y_k) and y_k-coordinate -T(u, v, x_k)
        P = F.zeros((N, N, N))
        P[:, :, 0::2] = self.T[:, :, 1::2]
        P[:, :, 1::2] = F.neg(self.T[:, :, 0::2])
        self.P = P
        if check:
            self._verify_axioms()

    @property
    def dim(self) -> int:
        return 2 * self.n

    def _verify_axioms(self):
        F, T = self.field, self.T
        if np.any(T != np.transpose(T, (1, 2, 0))):
            raise AxiomViolation("(uv, w) != (vw, u) on some basis triple")
        if np.any(F.add(T, np.transpose(T, (1, 0, 2))) != 0):
            raise AxiomViolation("product is not alternating")
        N = self.dim
        for i in range(N):
            if np.any(T[i, i, :] != 0):
                raise AxiomViolation("u u != 0 for a basis vector")
        # recovering the triple through the form must give T back
        G = gram(F, self.n)
        recovered = F.matmul(self.P.reshape(N * N, N), G).reshape(N, N, N)
        if np.any(recovered != T):
            raise AxiomViolation("(e_i e_j, e_k) disagrees with the trilinear form")

    # -- products ------------------------------------------------------
    def right_matrix(self, s) -> np.ndarray:
        """Matrix C with v @ C = v s."""
        F, N = self.field, self.dim
        s = np.asarray(s)
        return F.matmul(s.reshape(1, N), np.transpose(self.P, (1, 0, 2)).reshape(N, N * N)).reshape(N, N)

    def left_matrix(self, u) -> np.ndarray:
        """Matrix R with v @ R = u v."""
        F, N = self.field, self.dim
        return F.matmul(np.asarray(u).reshape(1, N), self.P.reshape(N, N * N)).reshape(N, N)

    def multiply(self, u, v) -> np.ndarray:
        self._check_vec(u)
        self._check_vec(v)
        return self.field.matmul(np.asarray(v).reshape(1, -1), self.left_matrix(u)).reshape(-1)

    def triple(self, u, v, w):
        """(u v, w) as a code."""
        return form_eval(self.field, self.multiply(u, v), np.asarray(w))

    def basis_product(self, a: str, b: str) -> np.ndarray:
        return self.P[role_index(a), role_index(b)].copy()

    def _check_vec(self, v):
        v = np.asarray(v)
        if v.shape != (self.dim,):
            raise FieldMismatch(f"vector of shape {v.shape} in an algebra of dimension {self.dim}")

    # -- subspaces -----------------------------------------------------
    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def span(self, vectors) -> Subspace:
        return Subspace.span(self.field, vectors, self.dim)

    def product(self, U: Subspace, W: Subspace) -> Subspace:
        """Span of all products u w with u in U and w in W."""
        F = self.field
        if U.dim == 0 or W.dim == 0:
            return self.zero()
        rows = [F.matmul(W.basis, self.left_matrix(u)) for u in U.basis]
        return Subspace(F, self.dim, np.concatenate(rows))

    def centralizer(self, S: Subspace, within: Subspace | None = None) -> Subspace:
        """{v in within : v s = 0 for all s in S}."""
        F = self.field
        within = self.full() if within is None else within
        if S.dim == 0 or within.dim == 0:
            return within
        C = np.concatenate([self.right_matrix(s) for s in S.basis], axis=1)
        coeffs = nullspace(F, F.matmul(within.basis, C).T)
        if coeffs.shape[0] == 0:
            return self.zero()
        return Subspace(F, self.dim, F.matmul(coeffs, within.basis))

    def center(self) -> Subspace:
        return self.centralizer(self.full())

    def preimage_center(self, Z: Subspace) -> Subspace:
        """{v : v L <= Z}."""
        F, N = self.field, self.dim
        Zp = Z.perp()
        if Zp.dim == 0:
            return self.full()
        # (v e_j, z) = T(v, e_j, z): one functional per (j, z)
        funcs = F.matmul(self.T.reshape(N * N, N), Zp.basis.T)  # (N*N, m): [v*N + j, z]
        funcs = funcs.reshape(N, N * Zp.dim)
        return Subspace(F, N, nullspace(F, funcs.T))

    def lower_central_series(self) -> list[Subspace]:
        terms = [self.full()]
        while True:
            nxt = self.product(terms[-1], self.full())
            if nxt == terms[-1]:
                break
            terms.append(nxt)
            if nxt.dim == 0:
                break
        return terms

    def upper_central_series(self) -> list[Subspace]:
        terms = [self.zero()]
        while True:
            nxt = self.preimage_center(terms[-1])
            if nxt == terms[-1]:
                break
            terms.append(nxt)
            if nxt.dim == self.dim:
                break
        return terms

    def power(self, k: int) -> Subspace:
        """L^k (left-normed), with L^1 = L; zero beyond the series."""
        lower = self.lower_central_series()
        if k - 1 < len(lower):
            return lower[k - 1]
        last = lower[-1]
        return last if last.dim else self.zero()

    def upper(self, k: int) -> Subspace:
        upper = self.upper_central_series()
        return upper[k] if k < len(upper) else upper[-1]


@dataclass
class Chain:
    """Ordered list of subspaces with their kind."""

    terms: list
    kind: str = "custom"

    @property
    def dims(self) -> tuple:
        return tuple(t.dim for t in self.terms)


def build_algebra(P: Presentation) -> Algebra:
    return Algebra(P)


def multiply(A: Algebra, u, v):
    return A.multiply(u, v)


def triple(A: Algebra, u, v, w):
    return A.triple(u, v, w)


def subspace_product(A: Algebra, U: Subspace, W: Subspace) -> Subspace:
    return A.product(U, W)


def central_series(A: Algebra) -> tuple[Chain, Chain]:
    return Chain(A.lower_central_series(), "lower-central"), Chain(A.upper_central_series(), "upper-central")


def centralizer(A: Algebra, S: Subspace, within: Subspace | None = None) -> Subspace:
    return A.centralizer(S, within)


def nilpotency_class(A: Algebra) -> tuple[bool, int | None]:
    lower = A.lower_central_series()
    if lower[-1].dim != 0:
        return False, None
    return True, len(lower) - 1


def is_nilpotent(A: Algebra) -> bool:
    return nilpotency_class(A)[0]


def is_maximal_class(P: Presentation) -> bool:
    """Maximal-class test read off a nilpotent presentation (dimension >= 8)."""
    if not P.is_nilpotent_form():
        raise NotNilpotentForm("presentation is not in nilpotent form")
    if P.dim < 8:
        raise DimensionTooSmall("criterion needs dimension >= 8")
    A = build_algebra(P)
    for i in range(2, P.n - 1):
        if not np.any(A.basis_product(f"x{i}", f"y{i + 1}") != 0):
            return False
    pair = A.span([A.basis_product("x1", "y2"), A.basis_product("y1", "y2")])
    return pair.dim == 2


def transform_trilinear(F, T, M) -> np.ndarray:
    """T'(a, b, c) = T(M e_a, M e_b, M e_c)."""
    N = T.shape[0]
    Mt = np.asarray(M).T
    out = T
    for _ in range(3):
        out = F.matmul(Mt, out.reshape(N, N * N)).reshape(N, N, N)
        out = np.transpose(out, (1, 2, 0))
    return out


def presentation_from_trilinear(F, n: int, T) -> Presentation:
    P = Presentation(F, n)
    N = 2 * n
    nz = np.argwhere(T != 0)
    for i, j, k in nz:
        if i < j < k:
            P.triples[(int(i), int(j), int(k))] = T[i, j, k]
    P.triples = dict(sorted(P.triples.items()))
    return P


def change_basis(A: Algebra, M: BasisChange) -> Algebra:
    """The same algebra described in the standard basis given by the columns of M."""
    if not M.symplectic:
        raise NotSymplectic("basis change does not preserve the form")
    if M.field != A.field or M.matrix.shape[0] != A.dim:
        raise FieldMismatch("basis change does not match the algebra")
    T = transform_trilinear(A.field, A.T, M.matrix)
    return Algebra(presentation_from_trilinear(A.field, A.n, T), T, check=False)


def random_nilpotent_presentation(F, n: int, seed=0, density: float = 0.3) -> Presentation:
    """Random alpha_ijk = (x_i y_j, y_k) and beta_ijk = (y_i y_j, y_k), i < j < k."""
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    P = Presentation(F, n)
    for i, j, k in combinations(range(1, n + 1), 3):
        for first in ("x", "y"):
            if rng.random() < density:
                if F.is_finite:
                    code = int(rng.integers(1, F.q))
                else:
                    code = F.code(int(rng.choice([-3, -2, -1, 1, 2, 3])))
                P._set((f"{first}{i}", f"y{j}", f"y{k}"), F.element(code))
    return P
