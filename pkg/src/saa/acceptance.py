"""Acceptance checks, shared by ``saa selftest`` and the test suite.

Each check returns a :class:`Result`; a check passes only when its
condition holds and it finishes inside its time budget.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import gcd

import numpy as np

from .canon import CanonicalForm, classify, structure_report, tau_analysis
from .core import Algebra, change_basis, nilpotency_class, random_nilpotent_presentation
from .families import (
    TAGS,
    FamilyLabel,
    canonical_params,
    enumerate_census,
    instantiate_family,
    param_equivalent,
    valid_params,
)
from .gf import GF, g_group, h_group, quad_irreducible
from .symlin import form_eval, gram, random_symplectic, role_index

CENSUS_GOLDENS = {(2, 1): 12, (3, 1): 12, (2, 2): 20, (5, 1): 12, (7, 1): 20, (2, 3): 12, (3, 2): 12}


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float | None
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"[{status}] {self.number}. {self.name}: {self.seconds:.2f}s{budget} {self.detail}".rstrip()


def _timed(number: int, name: str, limit: float | None):
    def wrap(fn):
        def run(**kw) -> Result:
            t0 = time.perf_counter()
            try:
                ok, detail = fn(**kw)
            except Exception as exc:  # a crash is a failure, reported with its type
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            dt = time.perf_counter() - t0
            if limit is not None and dt > limit:
                ok, detail = False, f"too slow; {detail}"
            return Result(number, name, ok, dt, limit, detail)

        run.number = number
        run.criterion = name
        return run

    return wrap


def catalog(F) -> list[FamilyLabel]:
    return [FamilyLabel(tag, ps) for tag in TAGS for ps in valid_params(F, tag, fixed_s=True)]


# ---------------------------------------------------------------------------
@_timed(1, "axioms on every catalog presentation", 1.0)
def axiom_suite():
    checked = 0
    ia, ib, ic = (np.array(t) for t in zip(*combinations(range(10), 3)))
    for F in (GF(2), GF(3), GF(2, 2), GF(5), GF(7), GF(3, 2)):
        for lab in catalog(F):
            A = Algebra(instantiate_family(F, lab))
            N = A.dim
            # (uv, w) read off the product table through the form
            V = F.matmul(A.P.reshape(N * N, N), gram(F, A.n)).reshape(N, N, N)
            if np.any(V[ia, ib, ic] != V[ib, ic, ia]):
                return False, f"{lab} over {F}: (uv,w) != (vw,u)"
            if not nilpotency_class(A)[0]:
                return False, f"{lab} over {F} is not nilpotent"
            checked += 1
    return True, f"{checked} presentations"


@_timed(2, "Z_k = (L^(k+1))^perp on random algebras", 30.0)
def duality(count: int = 1000):
    F = GF(3)
    rng = np.random.default_rng(2)
    for i in range(count):
        n = int(rng.integers(3, 6))
        A = Algebra(random_nilpotent_presentation(F, n, rng, float(rng.uniform(0.15, 0.6))))
        lower = A.lower_central_series()
        upper = A.upper_central_series()
        cls = len(lower) - 1
        for k in range(1, cls + 1):
            Lk1 = lower[k] if k < len(lower) else lower[-1]
            Zk = upper[k] if k < len(upper) else upper[-1]
            if Zk != Lk1.perp():
                return False, f"sample {i}, k = {k}"
    return True, f"{count} algebras"


@_timed(3, "lemmas for isotropic centre of dimension 3", 60.0)
def lemma_suite(count: int = 200):
    F = GF(3)
    rng = np.random.default_rng(3)
    found = tried = 0
    while found < count:
        tried += 1
        A = Algebra(random_nilpotent_presentation(F, 5, rng, float(rng.uniform(0.2, 0.5))))
        Z = A.center()
        if Z.dim != 3 or not Z.is_isotropic():
            continue
        found += 1
        L3, L4, L5 = A.power(3), A.power(4), A.power(5)
        if not Z <= L3:
            return False, f"Z not in L^3 (sample {tried})"
        if L3.dim not in (5, 6):
            return False, f"dim L^3 = {L3.dim}"
        if L3.dim == 5 and not L3.is_isotropic():
            return False, "L^3 of dimension 5 is not isotropic"
        if not Z <= L4:
            return False, "Z not in L^4"
        if L3.dim == 6 and (L4.dim, L5.dim) != (4, 2):
            return False, f"dims L^4, L^5 = {L4.dim}, {L5.dim}"
    return True, f"{found} of {tried} samples"


@_timed(4, "canonical label invariance under basis change", 300.0)
def label_invariance(per_family: int = 100):
    fields = (GF(3), GF(2, 2), GF(5), GF(7))
    runs = 0
    for tag in TAGS:
        pool = [(F, FamilyLabel(tag, ps)) for F in fields for ps in valid_params(F, tag, fixed_s=True)]
        if not pool:
            return False, f"{tag} has no instance over the test fields"
        for i in range(per_family):
            F, lab = pool[i % len(pool)]
            A = Algebra(instantiate_family(F, lab))
            C = random_symplectic(F, 5, seed=7919 * i + TAGS.index(tag))
            B = change_basis(A, C)
            cf = classify(B, seed=i)
            if not isinstance(cf, CanonicalForm):
                return False, f"{lab} over {F} reported unsupported"
            want = canonical_params(F, lab)
            if cf.label != want or not param_equivalent(F, lab, cf.label):
                return False, f"{lab} over {F}: got {cf.label}, expected {want}"
            if change_basis(B, cf.witness).presentation != instantiate_family(F, cf.label):
                return False, f"witness for {lab} over {F} is wrong"
            runs += 1
    return True, f"{runs} classifications"


@_timed(5, "census goldens", 120.0)
def census_goldens():
    parts = []
    for (p, k), total in CENSUS_GOLDENS.items():
        F = GF(p, k)
        c = enumerate_census(F)
        q = F.q
        if c.total != total:
            return False, f"{F}: total {c.total}, expected {total}"
        for tag in ("Q41", "P36", "P37"):
            if c.count(tag) != gcd(3, q - 1):
                return False, f"{F}: {tag} count {c.count(tag)}"
        if c.count("P38") not in (0, 1, 3):
            return False, f"{F}: P38 count {c.count('P38')}"
        if (c.count("P39") > 0) != (p == 2):
            return False, f"{F}: P39 count {c.count('P39')}"
        parts.append(f"{F}={c.total}")
    return True, " ".join(parts)


@_timed(6, "group laws for H, G and the parameter relation", 60.0)
def group_laws():
    checked = 0
    for F in (GF(2), GF(2, 2), GF(2, 3)):
        elems = F.elements()
        pairs = [(r, s) for r in elems for s in elems if not r.is_zero() and quad_irreducible(F, r, s)]
        H = {r.value: set(h_group(F, r).codes) for r, _ in pairs}
        G = {(r.value, s.value): set(g_group(F, r, s).codes) for r, s in pairs}
        for r, s in pairs:
            h, g = H[r.value], G[(r.value, s.value)]
            if any(F.add_scalar(a, b) not in h for a in h for b in h):
                return False, f"H({r}) not additive over {F}"
            if any(F.mul_scalar(a, b) not in g for a in g for b in g):
                return False, f"G({r},{s}) not multiplicative over {F}"
            # the norm form is multiplicative: N(z) N(w) = N(z w) in F[t]/(t^2 + r t + s)
            for x1, y1, x2, y2 in _norm_samples(elems):
                z = _mul_ext(r, s, (x1, y1), (x2, y2))
                if _norm(r, s, x1, y1) * _norm(r, s, x2, y2) != _norm(r, s, *z):
                    return False, f"norm identity fails for ({r},{s}) over {F}"
            for rt, st in pairs:
                ratio = rt / r
                # H(rt) = (rt/r)^2 H(r), and G agrees whenever st - (rt/r)^2 s lies in H(rt)
                if {(ratio * ratio * F.element(c)).value for c in h} != H[rt.value]:
                    return False, f"H({rt}) != (rt/r)^2 H({r}) over {F}"
                if (st - ratio * ratio * s).value in H[rt.value] and G[(rt.value, st.value)] != g:
                    return False, f"G({rt},{st}) != G({r},{s}) over {F}"
            checked += 1
        if not _relation_axioms(F, pairs, H, G):
            return False, f"~ is not an equivalence relation over {F}"
    return True, f"{checked} (r,s) pairs"


def _norm(r, s, x, y):
    return x * x + r * x * y + s * y * y


def _mul_ext(r, s, z, w):
    # (a + b t)(c + d t) with t^2 = -r t - s
    a, b = z
    c, d = w
    bd = b * d
    return a * c - s * bd, a * d + b * c - r * bd


def _norm_samples(elems):
    step = max(1, len(elems) // 4)
    pick = elems[::step]
    for x1 in pick:
        for y1 in pick:
            for x2 in pick:
                for y2 in pick:
                    yield x1, y1, x2, y2


def _relation_axioms(F, pairs, H, G) -> bool:
    def rel(a, b):
        (rt, st), (r, s) = a, b
        ratio = rt / r
        return ratio.value in G[(r.value, s.value)] and (st - ratio * ratio * s).value in H[rt.value]

    R = {(a, b): rel(a, b) for a in pairs for b in pairs}
    for a in pairs:
        if not R[(a, a)]:
            return False
        for b in pairs:
            if R[(a, b)] != R[(b, a)]:
                return False
            if R[(a, b)] and any(R[(b, c)] and not R[(a, c)] for c in pairs):
                return False
    return True


@_timed(7, "tau types of the type A, B, C families", None)
def tau_goldens():
    F = GF(5)
    for tag, want in (("P36", "A"), ("P37", "B"), ("P38", "C-square")):
        for ps in valid_params(F, tag):
            lab = FamilyLabel(tag, ps)
            td = tau_analysis(Algebra(instantiate_family(F, lab)))
            if td.type != want:
                return False, f"{lab}: type {td.type}"
            if tag == "P38":
                s = ps[1]
                if td.min_poly != (F.zero, -s):
                    return False, f"{lab}: minimal polynomial {td.min_poly}"
    F = GF(2, 2)
    for ps in valid_params(F, "P39"):
        lab = FamilyLabel("P39", ps)
        td = tau_analysis(Algebra(instantiate_family(F, lab)))
        _, r, s = ps
        if td.type != "C-general" or td.min_poly != (r, s):
            return False, f"{lab}: {td.type} {td.min_poly}"
    return True, "P36 A, P37 B, P38 t^2 - s, P39 t^2 + r t + s"


@_timed(8, "s^2 = r^2 (ad - bc)^3 for type A", None)
def p36_necessity(count: int = 100):
    F = GF(7)
    i4, i5 = role_index("y4"), role_index("y5")
    for i in range(count):
        r = F.element(1 + i % 6)
        A = Algebra(instantiate_family(F, FamilyLabel("P36", (r,))))
        C = random_symplectic(F, 5, seed=100 + i)
        cf = classify(change_basis(A, C), seed=i)
        M = (C @ cf.witness).matrix  # the new standard basis in the old coordinates
        a, b = F.element(M[i4, i4]), F.element(M[i5, i4])
        c, d = F.element(M[i4, i5]), F.element(M[i5, i5])
        s = cf.label.params[0]
        y4, y5 = M[:, i4], M[:, i5]
        q = F.element(form_eval(F, A.multiply(A.multiply(y4, y5), y5), A.multiply(A.multiply(y5, y4), y4)))
        if not (q == s * s == r * r * (a * d - b * c) ** 3):
            return False, f"r = {r}, s = {s}, q = {q}"
    return True, f"{count} bases"


@_timed(9, "pairwise separation of the census over GF(3)", None)
def separation():
    F = GF(3)
    reps = [lab for row in enumerate_census(F).rows for lab in row.representatives]
    labels, prints = [], {}
    for lab in reps:
        A = Algebra(instantiate_family(F, lab))
        C = random_symplectic(F, 5, seed=len(labels))
        cf = classify(change_basis(A, C))
        labels.append(cf.label)
        prints.setdefault(structure_report(A).fingerprint(), []).append(lab)
    if len(set(labels)) != len(reps):
        return False, "two representatives share a label"
    for group in prints.values():
        if len({lab.tag for lab in group}) > 1:
            return False, f"shared fingerprint: {', '.join(map(str, group))}"
    return True, f"{len(reps)} representatives"


CRITERIA = [axiom_suite, duality, lemma_suite, label_invariance, census_goldens, group_laws,
            tau_goldens, p36_necessity, separation]


def run_all(echo=print) -> list[Result]:
    out = []
    for check in CRITERIA:
        res = check()
        if echo:
            echo(res.line())
        out.append(res)
    return out
