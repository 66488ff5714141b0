"""The named 10-dimensional presentations, their parameter equivalences and censuses."""
from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product

from .core import Presentation, build_algebra, change_basis
from .errors import InvalidParams, TagMismatch
from .gf import (
    FieldElement,
    _check_enum,
    cube_classes,
    cube_root,
    g_group,
    gsq_group,
    h_group,
    is_square,
    least_nonsquare,
    parse_element,
    quad_irreducible,
)
from .symlin import BasisChange, role_index

# tag -> (display name, parameter names)
FAMILIES = {
    "Q71": ("Q10_7_1", ()),
    "Q51": ("Q10_5_1", ()),
    "Q41": ("Q10_4_1", ("r",)),
    "P51": ("P10_5_1", ()),
    "P31": ("P10_3_1", ()),
    "P32": ("P10_3_2", ()),
    "P33": ("P10_3_3", ()),
    "P34": ("P10_3_4", ()),
    "P35": ("P10_3_5", ()),
    "P36": ("P10_3_6", ("r",)),
    "P37": ("P10_3_7", ("r",)),
    "P38": ("P10_3_8", ("r", "s")),
    "P39": ("P10_3_9", ("gamma", "r", "s")),
}
TAGS = tuple(FAMILIES)
# the abelian algebra is a valid classification answer but not one of the families
ABELIAN = "ABELIAN"
DISPLAY = {tag: name for tag, (name, _) in FAMILIES.items()} | {ABELIAN: "A10"}
_BY_DISPLAY = {v: k for k, v in DISPLAY.items()}

# triples as (b1, b2, b3, value) where value is 1 or the index of a parameter
_TEMPLATES = {
    "Q71": [("y1", "y2", "y3", 1)],
    "Q51": [("y1", "y2", "y3", 1), ("x1", "y3", "y4", 1)],
    "Q41": [("x2", "y3", "y4", "r"), ("x1", "y2", "y4", 1), ("y1", "y2", "y3", 1)],
    "P51": [("y1", "y2", "y3", 1), ("y1", "y4", "y5", 1)],
    "P31": [("x1", "y3", "y5", 1), ("x2", "y4", "y5", 1), ("y1", "y2", "y5", 1)],
    "P32": [("x2", "y4", "y5", 1), ("x1", "y3", "y5", 1), ("y1", "y2", "y5", 1), ("y2", "y3", "y4", 1)],
    "P33": [("x2", "y4", "y5", 1), ("x1", "y3", "y4", 1), ("y1", "y2", "y5", 1)],
    "P34": [("x1", "y2", "y5", 1), ("y1", "y2", "y3", 1), ("x2", "y4", "y5", 1)],
    "P35": [("x1", "y2", "y5", 1), ("y1", "y2", "y3", 1), ("x1", "y3", "y4", 1), ("x2", "y4", "y5", 1)],
    "P36": [("x2", "y4", "y5", "r"), ("x1", "y2", "y4", 1), ("y1", "y2", "y5", 1), ("y1", "y3", "y5", 1)],
    "P37": [("x2", "y4", "y5", "r"), ("x1", "y2", "y4", 1), ("y1", "y2", "y5", 1), ("y1", "y3", "y4", 1)],
    "P38": [("x2", "y4", "y5", "r"), ("x1", "y3", "y5", "s"), ("x1", "y2", "y4", 1),
            ("y1", "y2", "y5", 1), ("y1", "y3", "y4", 1)],
    "P39": [("x2", "y4", "y5", "gamma"), ("x1", "y3", "y4", "r"), ("x1", "y3", "y5", "s"),
            ("x1", "y2", "y4", 1), ("y1", "y2", "y5", 1), ("y1", "y3", "y4", 1)],
}


@dataclass(frozen=True)
class FamilyLabel:
    tag: str
    params: tuple = dc_field(default=())

    def __post_init__(self):
        if self.tag not in FAMILIES and self.tag != ABELIAN:
            raise InvalidParams(f"unknown family tag {self.tag!r}")
        want = len(FAMILIES[self.tag][1]) if self.tag in FAMILIES else 0
        if len(self.params) != want:
            raise InvalidParams(f"{self.tag} takes {want} parameter(s), got {len(self.params)}")

    @property
    def name(self) -> str:
        return DISPLAY[self.tag]

    def __str__(self):
        if not self.params:
            return self.name
        return f"{self.name}({','.join(str(p) for p in self.params)})"

    def sort_key(self):
        order = TAGS.index(self.tag) if self.tag in FAMILIES else -1
        return (order, tuple(p.field.sort_key(p.value) for p in self.params))


def label(F, tag: str, *params) -> FamilyLabel:
    """Convenience constructor accepting ints / codes for parameters."""
    if tag in _BY_DISPLAY:
        tag = _BY_DISPLAY[tag]
    return FamilyLabel(tag, tuple(F(p) for p in params))


def parse_label(F, text: str) -> FamilyLabel:
    """Inverse of ``str(FamilyLabel)``, e.g. ``P10_3_6(2)`` or ``P10_3_9([0,1],1,1)``."""
    m = re.fullmatch(r"\s*([A-Z0-9_]+)\s*(?:\((.*)\))?\s*", text)
    if not m or m.group(1) not in _BY_DISPLAY:
        raise InvalidParams(f"unknown label {text!r}")
    params = []
    if m.group(2):
        # split on commas that are not inside brackets
        depth, cur = 0, ""
        for ch in m.group(2):
            if ch == "," and depth == 0:
                params.append(cur)
                cur = ""
                continue
            depth += ch == "["
            depth -= ch == "]"
            cur += ch
        params.append(cur)
    return FamilyLabel(_BY_DISPLAY[m.group(1)], tuple(parse_element(F, p) for p in params))


# ---------------------------------------------------------------------------
# validity and instantiation
# ---------------------------------------------------------------------------
def validate(F, lab: FamilyLabel) -> None:
    for p in lab.params:
        if not isinstance(p, FieldElement) or p.field != F:
            raise InvalidParams(f"parameter {p!r} not in {F}")
    tag, ps = lab.tag, lab.params
    if tag in ("Q41", "P36", "P37"):
        if ps[0].is_zero():
            raise InvalidParams(f"{tag} needs r != 0")
    elif tag == "P38":
        r, s = ps
        if r.is_zero():
            raise InvalidParams("P38 needs r != 0")
        if F.is_finite and is_square(F, s):
            raise InvalidParams("P38 needs s not a square")
    elif tag == "P39":
        g, r, s = ps
        if F.char != 2:
            raise InvalidParams("P39 exists only in characteristic 2")
        if g.is_zero() or r.is_zero():
            raise InvalidParams("P39 needs gamma, r != 0")
        if not quad_irreducible(F, r, s):
            raise InvalidParams("P39 needs t^2 + r t + s irreducible")


def is_valid(F, lab: FamilyLabel) -> bool:
    try:
        validate(F, lab)
    except InvalidParams:
        return False
    return True


def instantiate_family(F, lab: FamilyLabel) -> Presentation:
    """The presentation listed for ``lab``, on a basis of dimension 10."""
    if lab.tag == ABELIAN:
        return Presentation(F, 5)
    validate(F, lab)
    names = FAMILIES[lab.tag][1]
    values = dict(zip(names, lab.params))
    P = Presentation(F, 5)
    for a, b, c, v in _TEMPLATES[lab.tag]:
        P._set((a, b, c), values[v] if isinstance(v, str) else F(v))
    return P


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------
@lru_cache(maxsize=None)
def _cubes(F):
    return cube_classes(F)[0]


@lru_cache(maxsize=None)
def _h(F, r_code):
    return h_group(F, F.element(r_code))


@lru_cache(maxsize=None)
def _g(F, r_code, s_code):
    return g_group(F, F.element(r_code), F.element(s_code))


@lru_cache(maxsize=None)
def _gsq(F, s_code):
    return gsq_group(F, F.element(s_code))


def param_equivalent(F, a: FamilyLabel, b: FamilyLabel) -> bool:
    """Whether two labels of one family describe isomorphic algebras."""
    if a.tag != b.tag:
        raise TagMismatch(f"{a.tag} vs {b.tag}")
    _check_enum(F)
    validate(F, a)
    validate(F, b)
    tag = a.tag
    if tag in ("Q41", "P36", "P37"):
        return (b.params[0] / a.params[0]) in _cubes(F)
    if tag == "P38":
        (r, s), (rt, st) = a.params, b.params
        return (rt / r) in _cubes(F) and (s / st) in _gsq(F, s.value)
    if tag == "P39":
        (g, r, s), (gt, rt, st) = a.params, b.params
        ratio = rt / r
        return (
            (gt / g) in _cubes(F)
            and ratio in _g(F, r.value, s.value)
            and (st - ratio * ratio * s) in _h(F, rt.value)
        )
    return True


def valid_params(F, tag: str, fixed_s: bool = False):
    """All valid parameter tuples in lexicographic element order.

    With ``fixed_s`` the P38 non-square is held at the least non-square,
    which loses no isomorphism class over a finite field.
    """
    _check_enum(F)
    names = FAMILIES[tag][1]
    elems = F.elements()
    nonzero = [e for e in elems if not e.is_zero()]
    if tag in ("Q41", "P36", "P37"):
        return [(r,) for r in nonzero]
    if tag == "P38":
        if F.char == 2:
            return []
        if fixed_s:
            ss = [least_nonsquare(F)]
        else:
            sq = F.square_codes()
            ss = [e for e in elems if e.value not in sq]
        return [(r, s) for r in nonzero for s in ss]
    if tag == "P39":
        if F.char != 2:
            return []
        pairs = [(r, s) for r in nonzero for s in elems if quad_irreducible(F, r, s)]
        return [(g, r, s) for g in nonzero for r, s in pairs]
    assert not names
    return [()]


def canonical_params(F, lab: FamilyLabel) -> FamilyLabel:
    """The least valid parameter tuple equivalent to ``lab``."""
    validate(F, lab)
    if not lab.params:
        return lab
    tag = lab.tag
    if tag in ("Q41", "P36", "P37"):
        coset = [c for c in cube_classes(F) if lab.params[0] in c][0]
        return FamilyLabel(tag, (coset.members[0],))
    if tag == "P38":
        r, s = lab.params
        rc = [c for c in cube_classes(F) if r in c][0].members[0]
        # s ~ s' exactly when s / s' lies in G(s)
        sgroup = _gsq(F, s.value)
        sq = F.square_codes()
        for st in F.elements():
            if st.value not in sq and (s / st) in sgroup:
                return FamilyLabel(tag, (rc, st))
    if tag == "P39":
        g = lab.params[0]
        gc = [c for c in cube_classes(F) if g in c][0].members[0]
        for r in F.elements():
            for st in F.elements():
                if r.is_zero() or not quad_irreducible(F, r, st):
                    continue
                if param_equivalent(F, lab, FamilyLabel(tag, (g, r, st))):
                    return FamilyLabel(tag, (gc, r, st))
    raise InvalidParams(f"no canonical representative found for {lab}")


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------
@dataclass
class FamilyCount:
    tag: str
    count: int
    representatives: list


@dataclass
class Census:
    field: object
    rows: list  # FamilyCount, in family order
    unsupported: str = "unknown"

    @property
    def total(self) -> int:
        return sum(r.count for r in self.rows)

    def count(self, tag: str) -> int:
        return next(r.count for r in self.rows if r.tag == tag)

    def as_dict(self) -> dict:
        return {r.tag: r.count for r in self.rows}


def _family_classes(F, tag: str) -> FamilyCount:
    params = valid_params(F, tag, fixed_s=True)
    reps: list[FamilyLabel] = []
    for ps in params:
        lab = FamilyLabel(tag, ps)
        if not any(param_equivalent(F, rep, lab) for rep in reps):
            reps.append(lab)
    canon = sorted((canonical_params(F, r) for r in reps), key=FamilyLabel.sort_key)
    return FamilyCount(tag, len(reps), canon)


def enumerate_census(F, workers: int = 1) -> Census:
    """Isomorphism classes per family, by exhausting parameters and merging equivalent ones."""
    _check_enum(F)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda t: _family_classes(F, t), TAGS))
    else:
        rows = [_family_classes(F, t) for t in TAGS]
    return Census(F, rows)


# ---------------------------------------------------------------------------
# sufficiency witnesses: explicit basis changes between equivalent labels
# ---------------------------------------------------------------------------
def _columns(F, cols: dict) -> BasisChange:
    """Basis change from ``{new_role: {old_role: coeff}}``; unnamed roles stay put."""
    M = F.eye(10)
    for role, combo in cols.items():
        j = role_index(role)
        M[:, j] = 0
        for old, c in combo.items():
            M[role_index(old), j] = F(c).value
    return BasisChange(F, M)


def _diagonal(F, lam: dict) -> BasisChange:
    """x_i -> lam_i x_i, y_i -> y_i / lam_i."""
    cols = {}
    for i, l in lam.items():
        cols[f"x{i}"] = {f"x{i}": l}
        cols[f"y{i}"] = {f"y{i}": l.inv()}
    return _columns(F, cols)


def _search(F, predicate, arity: int):
    for vals in product(F.elements(), repeat=arity):
        if predicate(*vals):
            return vals
    return None


def family_witness(F, a: FamilyLabel, b: FamilyLabel) -> BasisChange:
    """A symplectic M with change_basis(instantiate(a), M) == instantiate(b)."""
    if not param_equivalent(F, a, b):
        raise InvalidParams(f"{a} and {b} are not equivalent")
    one = F.one
    tag = a.tag
    if tag in ("Q41", "P36", "P37"):
        b3 = b.params[0] / a.params[0]
        beta = cube_root(F, b3)
        if tag == "Q41":
            M = _diagonal(F, {1: one, 2: beta, 3: beta.inv(), 4: beta.inv()})
        else:
            M = _diagonal(F, {1: one, 2: beta, 3: beta, 4: beta.inv(), 5: beta.inv()})
    elif tag == "P38":
        M = _p38_witness(F, a, b)
    elif tag == "P39":
        M = _p39_witness(F, a, b)
    else:
        M = BasisChange.identity(F, 5)
    _check_witness(F, a, b, M)
    return M


def _p38_witness(F, a, b) -> BasisChange:
    (r, s), (rt, st) = a.params, b.params
    beta = cube_root(F, r / rt)
    target = s / st

    def ok(x, y):
        if x.is_zero() and y.is_zero():
            return False
        n = (y / beta) ** 2 - s * (x / beta) ** 2
        return n * n == target

    x, y = _search(F, ok, 2)  # x plays a, y plays b
    alpha = beta**3 / (y * y - x * x * s)
    return _columns(F, {
        "x1": {"x1": alpha / beta**2 * y, "y1": alpha / beta**2 * x * s},
        "y1": {"y1": y / beta, "x1": x / beta},
        "x2": {"x2": beta.inv()},
        "y2": {"y2": beta},
        "x3": {"x3": alpha.inv()},
        "y3": {"y3": alpha},
        "x4": {"x4": alpha / beta * y, "x5": alpha / beta * x * s},
        "y4": {"y4": y / beta**2, "y5": -x / beta**2},
        "x5": {"x4": x, "x5": y},
        "y5": {"y5": alpha / beta**3 * y, "y4": -alpha / beta**3 * x * s},
    })


def _p39_witness(F, a, b) -> BasisChange:
    (g, r, s), (gt, rt, st) = a.params, b.params
    beta = cube_root(F, g / gt)
    target = r / rt

    def norm(x, y):
        return (y / beta) ** 2 + (y / beta) * (x / beta) * r + (x / beta) ** 2 * s

    x, y = _search(F, lambda x, y: not (x.is_zero() and y.is_zero()) and norm(x, y) == target, 2)
    shift = st - (rt / r) ** 2 * s
    (d,) = _search(F, lambda d: (d / beta) ** 2 + (d / beta) * rt == shift, 1)
    alpha = beta / norm(x, y)
    c1 = alpha * x * r + alpha * y + d * x
    c2 = d * y + alpha * x * s
    # The x2 column is taken as x2 / beta; y4 pairs y5 through beta^-2 * x.
    return _columns(F, {
        "x1": {"x1": c1 / beta**2, "y1": c2 / beta**2},
        "y1": {"x1": x / beta, "y1": y / beta},
        "x2": {"x2": beta.inv(), "x3": -d / (alpha * beta)},
        "y2": {"y2": beta},
        "x3": {"x3": alpha.inv()},
        "y3": {"y3": alpha, "y2": d},
        "x4": {"x4": c1 / beta, "x5": c2 / beta},
        "y4": {"y4": y / beta**2, "y5": x / beta**2},
        "x5": {"x4": x, "x5": y},
        "y5": {"y5": c1 / beta**3, "y4": c2 / beta**3},
    })


def _check_witness(F, a, b, M) -> None:
    from .errors import NormalizationError

    if not M.symplectic:
        raise NormalizationError(f"witness {a} -> {b} is not symplectic")
    got = change_basis(build_algebra(instantiate_family(F, a)), M).presentation
    if got != instantiate_family(F, b):
        raise NormalizationError(f"witness {a} -> {b} does not reach the target presentation")
