"""Exact linear algebra over a field equipped with the standard alternating form.

Vectors are 1-d code arrays of length 2n in the basis order
``x1, y1, x2, y2, ..., xn, yn``; the form is
``(u, v) = sum_i u[x_i] v[y_i] - u[y_i] v[x_i]``.
"""
from __future__ import annotations

import re

import numpy as np

from .errors import Dependent, FieldMismatch, InconsistentPairing, LengthMismatch, NotSymplectic


# ---------------------------------------------------------------------------
# basis roles
# ---------------------------------------------------------------------------
_ROLE = re.compile(r"^([xy])(\d+)$")


def role_index(role: str) -> int:
    m = _ROLE.match(role)
    if not m or int(m.group(2)) < 1:
        raise ValueError(f"bad basis symbol {role!r}")
    i = int(m.group(2)) - 1
    return 2 * i + (m.group(1) == "y")


def role_name(index: int) -> str:
    return ("x" if index % 2 == 0 else "y") + str(index // 2 + 1)


def roles(n: int) -> list[str]:
    return [role_name(i) for i in range(2 * n)]


def partner(index: int) -> int:
    return index ^ 1


# ---------------------------------------------------------------------------
# elementary operations
# ---------------------------------------------------------------------------
def gram(F, n: int) -> np.ndarray:
    J = F.zeros((2 * n, 2 * n))
    one, m1 = F.code(1), F.code(-1)
    for i in range(n):
        J[2 * i, 2 * i + 1] = one
        J[2 * i + 1, 2 * i] = m1
    return J


def unit(F, dim: int, index: int) -> np.ndarray:
    v = F.zeros(dim)
    v[index] = F.code(1)
    return v


def vector(F, n: int, terms: dict) -> np.ndarray:
    """Build a vector from ``{"x1": c, "y3": d, ...}``."""
    v = F.zeros(2 * n)
    for role, c in terms.items():
        v[role_index(role)] = F.code(c)
    return v


def form_eval(F, u, v):
    """The alternating form (u, v), returned as a code."""
    u, v = np.asarray(u), np.asarray(v)
    if u.shape != v.shape:
        raise LengthMismatch(f"{u.shape} vs {v.shape}")
    if u.shape[-1] % 2:
        raise LengthMismatch("vectors must have even length")
    a = F.mul(u[0::2], v[1::2])
    b = F.mul(u[1::2], v[0::2])
    return F.sum(F.sub(a, b))


def form_matrix(F, U, V) -> np.ndarray:
    """Matrix of pairings (U[i], V[j]) for row-stacked vectors."""
    U, V = np.atleast_2d(U), np.atleast_2d(V)
    J = gram(F, U.shape[1] // 2)
    return F.matmul(F.matmul(U, J), V.T)


def rref(F, A):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = np.array(A, dtype=F.dtype, copy=True)
    if A.ndim != 2 or A.shape[0] == 0:
        return A.reshape(0, A.shape[-1] if A.ndim else 0), []
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = F.mul(F.inv(A[r, c]), A[r])
        factors = A[:, c].copy()
        factors[r] = F.code(0)
        if np.any(factors != 0):
            A = F.sub(A, F.mul(factors[:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace(F, A, ncols: int | None = None) -> np.ndarray:
    """Rows spanning {x : A x = 0}."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] == 0:
        N = ncols if ncols is not None else A.shape[-1]
        return F.eye(N)
    R, piv = rref(F, A)
    N = A.shape[1]
    free = [c for c in range(N) if c not in piv]
    out = F.zeros((len(free), N))
    for k, f in enumerate(free):
        out[k, f] = F.code(1)
        for i, pc in enumerate(piv):
            out[k, pc] = F.neg(R[i, f])
    return out


def solve(F, A, b):
    """One solution of A x = b (free variables zero), or None."""
    A = np.asarray(A)
    b = np.asarray(b)
    if A.shape[0] == 0:
        return F.zeros(A.shape[1])
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, piv = rref(F, aug)
    N = A.shape[1]
    if N in piv:
        return None
    x = F.zeros(N)
    for i, pc in enumerate(piv):
        x[pc] = R[i, N]
    return x


def matrix_inverse(F, M) -> np.ndarray:
    M = np.asarray(M)
    N = M.shape[0]
    R, piv = rref(F, np.concatenate([M, F.eye(N)], axis=1))
    if piv[:N] != list(range(N)):
        raise Dependent("matrix is singular")
    return R[:N, N:]


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------
class Subspace:
    """A subspace held by its reduced row echelon basis (the canonical representative)."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient: int, rows=None, _reduced=False):
        self.field = field
        self.ambient = int(ambient)
        if rows is None or len(rows) == 0:
            self.basis = field.zeros((0, self.ambient))
            self.pivots = []
            return
        rows = np.atleast_2d(np.asarray(rows, dtype=field.dtype))
        if rows.shape[1] != self.ambient:
            raise LengthMismatch(f"vectors of length {rows.shape[1]} in ambient {self.ambient}")
        if _reduced:
            self.basis, self.pivots = rows, [int(np.nonzero(r != 0)[0][0]) for r in rows]
        else:
            self.basis, self.pivots = rref(field, rows)

    # constructors
    @classmethod
    def span(cls, F, vectors, ambient: int | None = None) -> "Subspace":
        vectors = list(vectors)
        if ambient is None:
            ambient = len(vectors[0])
        return cls(F, ambient, np.array(vectors, dtype=F.dtype).reshape(len(vectors), ambient) if vectors else None)

    @classmethod
    def zero(cls, F, ambient: int) -> "Subspace":
        return cls(F, ambient)

    @classmethod
    def full(cls, F, ambient: int) -> "Subspace":
        return cls(F, ambient, F.eye(ambient), _reduced=True)

    @classmethod
    def coordinate(cls, F, n: int, names) -> "Subspace":
        """Span of named standard basis vectors, e.g. ``["x3", "x4", "x5"]``."""
        return cls.span(F, [unit(F, 2 * n, role_index(r)) for r in names], 2 * n)

    # basic properties
    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def _check(self, other: "Subspace"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.ambient != self.ambient:
            raise LengthMismatch(f"ambient {self.ambient} vs {other.ambient}")

    def key(self):
        return tuple(map(tuple, self.basis.tolist()))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        return self.dim == other.dim and self.pivots == other.pivots and bool(np.all(self.basis == other.basis))

    def __hash__(self):
        return hash((self.ambient, self.key()))

    def __repr__(self):
        F = self.field
        rows = [" ".join(F.format_element(c) for c in row) for row in self.basis]
        return f"Subspace(dim={self.dim}; " + " | ".join(rows) + ")"

    # membership / order
    def reduce(self, v) -> np.ndarray:
        """Remainder of v after eliminating the pivot columns."""
        F = self.field
        v = np.array(v, dtype=F.dtype, copy=True)
        for row, pc in zip(self.basis, self.pivots):
            if v[pc] != 0:
                v = F.sub(v, F.mul(np.asarray(v[pc]), row))
        return v

    def contains(self, v) -> bool:
        v = np.asarray(v)
        if v.ndim == 2:
            return all(self.contains(w) for w in v)
        return not np.any(self.reduce(v) != 0)

    def __contains__(self, v):
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return other.contains(self.basis) if self.dim else True

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def __ge__(self, other):
        return other <= self

    # algebra
    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace(self.field, self.ambient, np.concatenate([self.basis, other.basis]))

    def add_vectors(self, vectors) -> "Subspace":
        vectors = np.atleast_2d(np.asarray(vectors, dtype=self.field.dtype))
        if vectors.shape[0] == 0:
            return self
        return Subspace(self.field, self.ambient, np.concatenate([self.basis, vectors]))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace(F, self.ambient)
        stacked = np.concatenate([self.basis, other.basis])
        coeffs = nullspace(F, stacked.T)
        if coeffs.shape[0] == 0:
            return Subspace(F, self.ambient)
        return Subspace(F, self.ambient, F.matmul(coeffs[:, : self.dim], self.basis))

    def __and__(self, other):
        return self.intersect(other)

    def perp(self) -> "Subspace":
        F = self.field
        if self.ambient % 2:
            raise LengthMismatch("perp needs even ambient dimension")
        if self.dim == 0:
            return Subspace.full(F, self.ambient)
        J = gram(F, self.ambient // 2)
        return Subspace(F, self.ambient, nullspace(F, F.matmul(self.basis, J.T)))

    def is_isotropic(self) -> bool:
        if self.dim < 2:
            return True
        return not np.any(form_matrix(self.field, self.basis, self.basis) != 0)

    def radical(self) -> "Subspace":
        return self.intersect(self.perp())

    def complement_vector(self, within: "Subspace"):
        """First reduced basis vector of ``within`` not in self, or None."""
        for row in within.basis:
            if not self.contains(row):
                return row.copy()
        return None

    def coordinates(self, v) -> np.ndarray:
        """Coefficients c with v = c @ basis (v must lie in the subspace)."""
        F = self.field
        c = F.zeros(self.dim)
        rem = np.array(v, dtype=F.dtype, copy=True)
        for i, (row, pc) in enumerate(zip(self.basis, self.pivots)):
            c[i] = rem[pc]
            if rem[pc] != 0:
                rem = F.sub(rem, F.mul(np.asarray(rem[pc]), row))
        if np.any(rem != 0):
            raise ValueError("vector not in subspace")
        return c


def subspace_algebra(A: Subspace, B, op: str):
    if op in ("span", "sum"):
        return A + B
    if op == "intersect":
        return A.intersect(B)
    if op == "contains":
        return A.contains(B.basis if isinstance(B, Subspace) else B)
    if op == "equals":
        return A == B
    raise ValueError(f"unknown op {op!r}")


def perp(S: Subspace) -> Subspace:
    return S.perp()


# ---------------------------------------------------------------------------
# basis changes
# ---------------------------------------------------------------------------
class BasisChange:
    """An invertible matrix whose columns are the images of the standard basis."""

    __slots__ = ("field", "matrix", "symplectic")

    def __init__(self, field, matrix, symplectic: bool | None = None):
        self.field = field
        self.matrix = np.asarray(matrix, dtype=field.dtype)
        if symplectic is None:
            symplectic = is_symplectic(field, self.matrix)
        self.symplectic = bool(symplectic)

    @classmethod
    def identity(cls, F, n: int) -> "BasisChange":
        return cls(F, F.eye(2 * n), True)

    @classmethod
    def from_columns(cls, F, columns: dict, n: int, base: "BasisChange | None" = None) -> "BasisChange":
        """Identity (or ``base``) with the named columns replaced."""
        M = F.eye(2 * n) if base is None else base.matrix.copy()
        for role, vec in columns.items():
            M[:, role_index(role)] = vec
        return cls(F, M)

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 2

    def column(self, role) -> np.ndarray:
        idx = role if isinstance(role, int) else role_index(role)
        return self.matrix[:, idx].copy()

    def __matmul__(self, other: "BasisChange") -> "BasisChange":
        return BasisChange(self.field, self.field.matmul(self.matrix, other.matrix), self.symplectic and other.symplectic)

    def apply(self, v) -> np.ndarray:
        return self.field.matmul(self.matrix, np.asarray(v))

    def inverse(self) -> "BasisChange":
        return BasisChange(self.field, matrix_inverse(self.field, self.matrix), self.symplectic)

    def __eq__(self, other):
        return isinstance(other, BasisChange) and self.field == other.field and bool(np.all(self.matrix == other.matrix))

    def __repr__(self):
        return "BasisChange(\n" + format_matrix(self.field, self.matrix) + f"\n, symplectic={self.symplectic})"


def is_symplectic(F, M) -> bool:
    M = np.asarray(M)
    J = gram(F, M.shape[0] // 2)
    return bool(np.all(F.matmul(F.matmul(M.T, J), M) == J))


def format_matrix(F, M) -> str:
    return "\n".join(" ".join(F.format_element(c) for c in row) for row in np.atleast_2d(M))


def extend_standard_basis(F, n: int, partial: dict | None = None) -> BasisChange:
    """Complete prescribed vectors (``{"x5": v, ...}``) to a standard basis.

    The roles still missing are filled in basis order; each is the first
    solution of its pairing constraints against everything fixed so far that
    stays outside the span of the fixed vectors.
    """
    partial = dict(partial or {})
    dim = 2 * n
    fixed: dict[int, np.ndarray] = {}
    for role, v in partial.items():
        v = np.asarray(v, dtype=F.dtype)
        if v.shape != (dim,):
            raise LengthMismatch(f"{role}: expected length {dim}")
        fixed[role_index(role) if isinstance(role, str) else int(role)] = v
    J = gram(F, n)
    idx = sorted(fixed)
    if idx:
        vecs = np.array([fixed[i] for i in idx])
        have = form_matrix(F, vecs, vecs)
        want = J[np.ix_(idx, idx)]
        if np.any(have != want):
            raise InconsistentPairing("prescribed vectors violate the standard pairings")
        if Subspace(F, dim, vecs).dim < len(idx):
            raise Dependent("prescribed vectors are dependent")
    for t in range(dim):
        if t in fixed:
            continue
        idx = sorted(fixed)
        if idx:
            vecs = np.array([fixed[i] for i in idx])
            A = F.matmul(vecs, J.T)  # row i: functional v -> (v, fixed_i)
            b = J[t, idx]
            p = solve(F, A, b)
            directions = nullspace(F, A)
            span = Subspace(F, dim, vecs)
        else:
            p = F.zeros(dim)
            directions = F.eye(dim)
            span = Subspace(F, dim)
        choice = None
        for cand in [p] + [F.add(p, d) for d in directions]:
            if np.any(cand != 0) and not span.contains(cand):
                choice = cand
                break
        if choice is None:  # pragma: no cover - excluded by Witt's theorem
            raise InconsistentPairing("cannot complete the basis")
        fixed[t] = choice
    M = np.array([fixed[i] for i in range(dim)]).T
    return BasisChange(F, M, True)


def transvection(F, v, lam) -> np.ndarray:
    """Matrix of u -> u + lam (u, v) v."""
    dim = len(v)
    J = gram(F, dim // 2)
    # (u, v) = u^T J v, so the map is I + lam * v (J v)^T
    Jv = F.matmul(J, v.reshape(-1, 1)).reshape(-1)
    lam = lam.value if hasattr(lam, "value") else lam
    return F.add(F.eye(dim), F.mul(np.asarray(lam, dtype=F.dtype), F.mul(v[:, None], Jv[None, :])))


def random_symplectic(F, n: int, seed=0, steps: int = 40) -> BasisChange:
    """Product of random transvections and symplectic pair swaps."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    dim = 2 * n
    M = F.eye(dim)
    for _ in range(steps):
        if rng.random() < 0.15:
            i, j = rng.choice(n, size=2, replace=False) if n > 1 else (0, 0)
            S = F.eye(dim)
            if i == j:
                # (x, y) -> (y, -x)
                S[:, 2 * i] = unit(F, dim, 2 * i + 1)
                S[:, 2 * i + 1] = F.neg(unit(F, dim, 2 * i))
            else:
                P = np.arange(dim)
                P[[2 * i, 2 * j]] = P[[2 * j, 2 * i]]
                P[[2 * i + 1, 2 * j + 1]] = P[[2 * j + 1, 2 * i + 1]]
                S = S[:, P]
            M = F.matmul(S, M)
        else:
            v = F.random(rng, dim)
            if F.is_finite:
                lam = int(rng.integers(1, F.q))
            else:
                lam = F.code(int(rng.integers(1, 4)))
            M = F.matmul(transvection(F, v, lam), M)
    return BasisChange(F, M, True)
