"""Self-checking basis normalization.

A :class:`Frame` holds an algebra written in a current standard basis together
with the accumulated change from the input basis.  Every step is a symplectic
basis change; vectors are always given in current coordinates.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import Algebra, change_basis
from .errors import NormalizationError
from .symlin import (
    BasisChange,
    Subspace,
    form_matrix,
    gram,
    nullspace,
    role_index,
    role_name,
    solve,
    unit,
)


def _partner_value(i: int, j: int) -> int:
    """(e_i, e_j) for standard basis indices, as an int."""
    if i // 2 != j // 2 or i == j:
        return 0
    return 1 if i % 2 == 0 else -1


class Frame:
    def __init__(self, A: Algebra, trace: list | None = None, seed: int = 0):
        self.A = A
        self.seed = seed
        self.F = A.field
        self.n = A.n
        self.dim = A.dim
        self.B = BasisChange.identity(self.F, self.n)
        self.trace = trace if trace is not None else []
        self._cache: dict = {}

    # -- reading the current structure ---------------------------------
    def t(self, a, b, c):
        """(ab, c) on current basis vectors, as a FieldElement."""
        ia, ib, ic = (role_index(r) if isinstance(r, str) else r for r in (a, b, c))
        return self.F.element(self.A.T[ia, ib, ic])

    def e(self, role) -> np.ndarray:
        return unit(self.F, self.dim, role_index(role) if isinstance(role, str) else role)

    def vec(self, combo: dict) -> np.ndarray:
        v = self.F.zeros(self.dim)
        for role, c in combo.items():
            v[role_index(role)] = self.F.add(v[role_index(role)], np.asarray(self.F(c).value))
        return v

    def prod(self, u, v) -> np.ndarray:
        u = self.e(u) if isinstance(u, str) else u
        v = self.e(v) if isinstance(v, str) else v
        return self.A.multiply(u, v)

    def form(self, u, v):
        from .symlin import form_eval

        return self.F.element(form_eval(self.F, u, v))

    def coords(self, v) -> dict:
        return {role_name(i): self.F.element(c) for i, c in enumerate(v) if c != 0}

    def span(self, *items) -> Subspace:
        vecs = [self.e(x) if isinstance(x, str) else x for x in items]
        return Subspace.span(self.F, vecs, self.dim) if vecs else Subspace.zero(self.F, self.dim)

    def _memo(self, key, fn):
        k = (len(self.trace), key)
        if k not in self._cache:
            self._cache[k] = fn()
        return self._cache[k]

    def lower(self, k: int) -> Subspace:
        return self._memo(("L", k), lambda: self.A.power(k))

    def upper(self, k: int) -> Subspace:
        return self._memo(("Z", k), lambda: self.A.upper(k))

    def center(self) -> Subspace:
        return self.upper(1)

    def full(self) -> Subspace:
        return Subspace.full(self.F, self.dim)

    # -- checks -------------------------------------------------------------
    def check(self, cond, what: str):
        if not cond:
            raise NormalizationError(f"step {len(self.trace)}: {what}")

    def expect(self, what: str, values: dict):
        """Assert triple values ``{("x1", "y2", "y5"): 1, ...}`` in the current basis."""
        for key, want in values.items():
            got = self.t(*key)
            self.check(got == self.F(want), f"{what}: ({key[0]}{key[1]},{key[2]}) = {got}, expected {want}")

    def expect_product(self, what: str, a, b, combo: dict):
        got = self.prod(a, b)
        want = self.vec(combo) if combo else self.F.zeros(self.dim)
        self.check(np.all(got == want), f"{what}: {a}{b} = {self.coords(got)}, expected {combo}")

    # -- basis changes -------------------------------------------------------
    def apply(self, step: str, M: np.ndarray):
        C = BasisChange(self.F, M)
        self.check(C.symplectic, f"{step}: change is not symplectic")
        self.A = change_basis(self.A, C)
        self.B = self.B @ C
        self.trace.append(step)

    def substitute(self, step: str, cols: dict):
        """Replace named roles by combinations ``{role: {old_role: coeff}}`` of current vectors."""
        M = self.F.eye(self.dim)
        for role, combo in cols.items():
            M[:, role_index(role)] = combo if isinstance(combo, np.ndarray) else self.vec(combo)
        self.apply(step, M)

    def scale_pair(self, step: str, i: int, c):
        """x_i -> c x_i, y_i -> y_i / c."""
        c = self.F(c)
        self.substitute(step, {f"x{i}": {f"x{i}": c}, f"y{i}": {f"y{i}": c.inv()}})

    def rebase(self, step: str, fixed: dict | None = None, chain=None, order=None):
        """New standard basis with prescribed vectors, adapted to a flag.

        ``chain`` lists ``(Subspace, [roles])``: each role lands in its
        subspace and outside the smaller listed ones below it.  Unlisted roles
        only need to avoid the listed subspaces.
        """
        if callable(chain):
            chain = chain()  # characteristic subspaces, recomputed in current coordinates
        M = adapted_basis(self.F, self.n, fixed or {}, chain or [], order)
        if M is None:
            # seeded fallback: shuffle the candidate order, with a hard cap
            rng = np.random.default_rng(self.seed)
            for _ in range(RETRIES):
                M = adapted_basis(self.F, self.n, fixed or {}, chain or [], order, rng=rng)
                if M is not None:
                    step += " [randomized]"
                    break
        if M is None:
            raise NormalizationError(f"{step}: no adapted standard basis found")
        self.apply(step, M)

    def eliminate(self, step: str, label, chain, rounds: int = 12):
        """Remove every triple not in the listed presentation of ``label``.

        Each round solves the linearized problem in the span of elementary
        symplectic moves that push each basis vector strictly down the flag
        ``chain`` and applies the corresponding exact moves.  Corrections of
        higher order are taken up by the next round.
        """
        from .core import transform_trilinear
        from .families import instantiate_family

        if callable(chain):
            chain = chain()
        F, N = self.F, self.dim
        want = Algebra(instantiate_family(F, label)).T
        level = [N] * N
        for S, roles in chain:
            for r in roles:
                level[role_index(r)] = min(level[role_index(r)], S.dim)
        gens = [g for g in elementary_moves(self.n) if all(level[v] < level[u] for u, v in g)]
        rows = [(a, b, c) for a in range(N) for b in range(a + 1, N) for c in range(b + 1, N)]
        ra, rb, rc = (np.array(x) for x in zip(*rows))
        for _ in range(rounds):
            T = self.A.T
            diff = F.sub(T, want)[ra, rb, rc]
            if not np.any(diff != 0):
                self.check(self.A.presentation == instantiate_family(F, label), f"{step}: presentation")
                return
            cols = []
            for g in gens:
                X = F.zeros((N, N))
                for u, v in g:
                    X[v, u] = F.code(gen_sign(u, v))
                D = F.matmul(X.T, T.reshape(N, N * N)).reshape(N, N, N)
                L = F.add(F.add(D, np.transpose(D, (2, 0, 1))), np.transpose(D, (1, 2, 0)))
                cols.append(L[ra, rb, rc])
            coef = solve(F, np.array(cols).T, F.neg(diff)) if cols else None
            self.check(coef is not None, f"{step}: linearized system has no solution")
            M = F.eye(N)
            for g, c in zip(gens, coef):
                if c == 0:
                    continue
                E = F.eye(N)
                for u, v in g:
                    E[v, u] = F.mul(np.asarray(c), np.asarray(F.code(gen_sign(u, v))))
                M = F.matmul(M, E)
            self.apply(step, M)
            step = step if step.endswith("]") else step + " [iterated]"
        raise NormalizationError(f"{step}: junk triples remain after {rounds} rounds")

    def finish(self, label):
        """Check that the current presentation is exactly the one listed for ``label``."""
        from .families import instantiate_family

        want = instantiate_family(self.F, label)
        got = self.A.presentation
        if got != want:
            extra = {k: v for k, v in got.triples.items() if want.triples.get(k) != v}
            raise NormalizationError(f"presentation after {self.trace[-1] if self.trace else 'start'} "
                                     f"differs from {label} on {sorted(extra) or sorted(want.triples)}")


def elementary_moves(n: int) -> list:
    """Generators of sp(2n) as lists of (source, target) index pairs.

    The exact group elements add the target to the source with the sign from
    :func:`gen_sign`: x_i += x_j with y_j -= y_i, y_i += x_j with y_j += x_i,
    y_i += x_i, and the mirror images with x and y exchanged.
    """
    out = []
    for i in range(n):
        xi, yi = 2 * i, 2 * i + 1
        out.append([(yi, xi)])
        out.append([(xi, yi)])
        for j in range(n):
            if j == i:
                continue
            xj, yj = 2 * j, 2 * j + 1
            out.append([(xi, xj), (yj, yi)])
            if j > i:
                out.append([(yi, xj), (yj, xi)])
                out.append([(xi, yj), (xj, yi)])
    return out


def gen_sign(u: int, v: int) -> int:
    # only x_i += x_j, y_j -= y_i carries a minus sign
    return -1 if (u % 2 == 1 and v % 2 == 1) else 1


# ---------------------------------------------------------------------------
# adapted standard bases
# ---------------------------------------------------------------------------
RETRIES = 25


def _candidates(F, p, directions, limit: int = 3):
    yield p
    k = len(directions)
    for size in range(1, min(limit, k) + 1):
        for combo in combinations(range(k), size):
            v = p
            for d in combo:
                v = F.add(v, directions[d])
            yield v


def adapted_basis(F, n: int, fixed: dict, members: list, order=None, rng=None):
    """Columns of a standard basis extending ``fixed`` and adapted to ``members``.

    ``members`` lists ``(S, roles)``; every role named with S must lie in S but
    outside the sum of the listed subspaces properly contained in S.  The
    members need not be nested.  Returns None when the greedy search fails.
    """
    dim = 2 * n
    fixed = {role_index(r) if isinstance(r, str) else int(r): np.asarray(v, dtype=F.dtype) for r, v in fixed.items()}
    full = Subspace.full(F, dim)
    members = [(S, [role_index(r) for r in roles]) for S, roles in members]
    listed = {i for _, roles in members for i in roles}
    rest = [i for i in range(dim) if i not in listed]
    if rest:
        members.append((full, rest))
    space: dict[int, tuple[Subspace, Subspace]] = {}
    for S, roles in members:
        below = Subspace.zero(F, dim)
        for S2, _ in members:
            if S2.dim < S.dim and S2 <= S:
                below = below + S2
        for i in roles:
            space[i] = (S, below)

    chosen = dict(fixed)

    def options(role: int):
        S, below = space[role]
        idx = sorted(chosen)
        if idx:
            W = np.array([chosen[i] for i in idx])
            pair = form_matrix(F, S.basis, W)
            target = np.array([F.code(_partner_value(role, i)) for i in idx], dtype=F.dtype)
            c = solve(F, pair.T, target)
            if c is None:
                return []
            dirs = nullspace(F, pair.T, S.dim)
            bad = below.add_vectors(W)
        else:
            c = F.zeros(S.dim)
            dirs = F.eye(S.dim)
            bad = below
        out = []
        dirs = list(dirs)
        if rng is not None:
            rng.shuffle(dirs)
            c = F.add(c, F.matmul(F.random(rng, (1, len(dirs))), np.array(dirs)).reshape(-1)) if dirs else c
        for coeffs in _candidates(F, c, dirs):
            v = F.matmul(coeffs.reshape(1, -1), S.basis).reshape(-1)
            if np.any(v != 0) and not bad.contains(v):
                out.append(v)
        return out

    pairs = list(range(n)) if order is None else [int(i) - 1 for i in order]
    pairs.sort(key=lambda i: (not (2 * i in fixed or 2 * i + 1 in fixed),
                              min(space[2 * i][0].dim, space[2 * i + 1][0].dim)))
    for i in pairs:
        xi, yi = 2 * i, 2 * i + 1
        if xi in chosen and yi in chosen:
            continue
        if xi in chosen or yi in chosen:
            other = yi if xi in chosen else xi
            opts = options(other)
            if not opts:
                return None
            chosen[other] = opts[0]
            continue
        first, second = (xi, yi) if space[xi][0].dim <= space[yi][0].dim else (yi, xi)
        done = False
        for v in options(first):
            chosen[first] = v
            opts = options(second)
            if opts:
                chosen[second] = opts[0]
                done = True
                break
            del chosen[first]
        if not done:
            return None

    M = np.array([chosen[i] for i in range(dim)]).T
    J = gram(F, n)
    if np.any(F.matmul(F.matmul(M.T, J), M) != J):
        return None
    for S, _ in members:
        inside = [i for i in range(dim) if space[i][0] <= S]
        if Subspace(F, dim, M[:, inside].T) != S:
            return None
    return M
