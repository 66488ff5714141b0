"""Exact arithmetic in GF(p^n), plus the rational numbers for non-enumerative work.

Field elements are encoded as integers ``c0 + c1*p + ... + c_{n-1}*p^(n-1)``
where ``c0 + c1*t + ...`` is the polynomial representative modulo the
modulus.  Bulk arithmetic operates on numpy ``int64`` arrays of these codes;
:class:`FieldElement` wraps a single code for the scalar-facing API.

The special sets used by the isomorphism tests (cube cosets, ``H(r)``,
``G(r, s)``, ``G(s)``) are built by exhausting the field.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InfiniteField,
    InvalidParams,
    NoDefaultModulus,
    NotPrime,
    ParseError,
    ReducibleModulus,
)

MAX_ENUM_ORDER = 2**16
_TABLE_LIMIT = 1024

# Default moduli (lowest degree first, monic) for every prime power q <= 32.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),  # t^2 + t + 1
    (2, 3): (1, 1, 0, 1),  # t^3 + t + 1
    (2, 4): (1, 1, 0, 0, 1),  # t^4 + t + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # t^5 + t^2 + 1
    (3, 2): (1, 0, 1),  # t^2 + 1
    (3, 3): (1, 2, 0, 1),  # t^3 + 2t + 1
    (5, 2): (2, 1, 1),  # t^2 + t + 2
}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial b over GF(p); lowest degree first."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    n = len(modulus) - 1
    if n <= 1:
        return True
    for d in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=d):
            if not _poly_rem(modulus, list(tail) + [1], p):
                return False
    return True


def field_make(p: int, n: int = 1, modulus=None) -> "GF":
    """Validate the parameters and return the field GF(p^n)."""
    return GF(p, n, modulus)


class FieldElement:
    """An immutable element of a field, stored as its integer code."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    # -- helpers -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction, np.integer)):
            return self.field.code(other)
        return NotImplemented

    @property
    def coeffs(self) -> tuple:
        return self.field.coeffs(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add_scalar(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub_scalar(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub_scalar(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul_scalar(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul_scalar(self.value, self.field.inv_scalar(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul_scalar(b, self.field.inv_scalar(self.value)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_scalar(self.value))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_scalar(self.value))

    def __pow__(self, k: int):
        k = int(k)
        base = self
        if k < 0:
            base, k = self.inv(), -k
        result = self.field.one
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction, np.integer)):
            try:
                return self.value == self.field.code(other)
            except Exception:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __lt__(self, other):
        if not isinstance(other, FieldElement) or other.field != self.field:
            return NotImplemented
        return self.field.sort_key(self.value) < self.field.sort_key(other.value)

    def __le__(self, other):
        return self == other or self < other

    def __repr__(self):
        return f"{self.field.format_element(self.value)}"

    def __str__(self):
        return self.field.format_element(self.value)


class _FieldBase:
    """Shared scalar conveniences; subclasses supply the array primitives."""

    is_finite: bool
    char: int

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        return FieldElement(self, self.code(value))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, self.code(0))

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, self.code(1))

    def element(self, code) -> FieldElement:
        return FieldElement(self, code)

    def require_finite(self):
        if not self.is_finite:
            raise InfiniteField(f"{self} is infinite")

    # scalar wrappers over the array primitives
    def add_scalar(self, a, b):
        return self._scalar(self.add(np.asarray(a, dtype=self.dtype), np.asarray(b, dtype=self.dtype)))

    def sub_scalar(self, a, b):
        return self._scalar(self.sub(np.asarray(a, dtype=self.dtype), np.asarray(b, dtype=self.dtype)))

    def mul_scalar(self, a, b):
        return self._scalar(self.mul(np.asarray(a, dtype=self.dtype), np.asarray(b, dtype=self.dtype)))

    def neg_scalar(self, a):
        return self._scalar(self.neg(np.asarray(a, dtype=self.dtype)))

    def inv_scalar(self, a):
        return self._scalar(self.inv(np.asarray(a, dtype=self.dtype)))

    def _scalar(self, arr):
        v = arr.item() if hasattr(arr, "item") else arr
        return v

    def asarray(self, data) -> np.ndarray:
        """Convert nested ints / FieldElements to a code array."""
        arr = np.asarray(data, dtype=object)
        out = np.empty(arr.shape, dtype=self.dtype)
        for idx, v in np.ndenumerate(arr):
            if isinstance(v, FieldElement):
                if v.field != self:
                    raise FieldMismatch(f"{v.field} vs {self}")
                out[idx] = v.value
            else:
                out[idx] = self.code(v)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            return np.full(shape, Fraction(0), dtype=object)
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.code(1)
        return out

    def scale(self, c, arr):
        return self.mul(np.asarray(c, dtype=self.dtype), arr)

    def axpy(self, c, x, y):
        """``y + c*x`` elementwise."""
        return self.add(y, self.mul(np.asarray(c, dtype=self.dtype), x))

    def dot(self, u, v):
        return self.matmul(np.asarray(u).reshape(1, -1), np.asarray(v).reshape(-1, 1))[0, 0]

    def sum(self, arr, axis=0):
        arr = np.moveaxis(np.asarray(arr), axis, 0)
        out = self.zeros(arr.shape[1:])
        for a in arr:
            out = self.add(out, a)
        return out


class GF(_FieldBase):
    """The finite field GF(p^n) with an explicit modulus."""

    is_finite = True
    dtype = np.int64

    def __init__(self, p: int, n: int = 1, modulus=None):
        p, n = int(p), int(n)
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if n < 1:
            raise InvalidParams("extension degree must be >= 1")
        if n == 1:
            modulus = (0, 1)
        elif modulus is None:
            if (p, n) not in DEFAULT_MODULI:
                raise NoDefaultModulus(f"no built-in modulus for GF({p}^{n})")
            modulus = DEFAULT_MODULI[(p, n)]
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise InvalidParams("modulus must be monic of degree n")
            if not poly_is_irreducible(list(modulus), p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.n = n
        self.char = p
        self.q = p**n
        self.modulus = tuple(modulus)
        self._powers = np.array([p**i for i in range(n)], dtype=np.int64)

    # -- identity ------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.n, self.modulus))

    def __repr__(self):
        return f"GF({self.q})" if self.n == 1 else f"GF({self.p}^{self.n})"

    def literal(self) -> str:
        if self.n == 1:
            return f"gf({self.p})"
        return f"gf({self.p}^{self.n}; modulus={','.join(map(str, self.modulus))})"

    @property
    def order(self) -> int:
        return self.q

    # -- encoding ------------------------------------------------------
    def code(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value.value
        if isinstance(value, (tuple, list)):
            if len(value) > self.n:
                raise InvalidParams(f"too many coefficients for {self}")
            return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(value)))
        if isinstance(value, Fraction):
            if value.denominator != 1:
                return self.mul_scalar(self.code(value.numerator), self.inv_scalar(self.code(value.denominator)))
            value = value.numerator
        return int(value) % self.p  # integers embed via the prime subfield

    def coeffs(self, code) -> tuple:
        code = int(code)
        out = []
        for _ in range(self.n):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def sort_key(self, code):
        return self.coeffs(code)

    def format_element(self, code) -> str:
        if self.n == 1:
            return str(int(code))
        return "[" + ",".join(map(str, self.coeffs(code))) + "]"

    def elements(self) -> list[FieldElement]:
        """All elements in the total order (lexicographic on coefficients)."""
        return [FieldElement(self, c) for c in self.ordered_codes]

    @cached_property
    def ordered_codes(self) -> np.ndarray:
        codes = sorted(range(self.q), key=self.sort_key)
        return np.array(codes, dtype=np.int64)

    @cached_property
    def rank(self) -> np.ndarray:
        """rank[code] = position in the total element order."""
        r = np.empty(self.q, dtype=np.int64)
        r[self.ordered_codes] = np.arange(self.q)
        return r

    # -- slow polynomial multiplication used to build tables ------------
    def _polymul_codes(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.code(_poly_rem(prod, list(self.modulus), self.p) or [0])

    @cached_property
    def _log_tables(self):
        q = self.q
        if self.n == 1:
            mul = lambda a, b: (a * b) % self.p  # noqa: E731
        else:
            mul = self._polymul_codes
        for g in range(1, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = mul(x, g)
                if len(exp) > q - 1:
                    break
            if len(exp) == q - 1:
                exp = np.array(exp, dtype=np.int64)
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(q - 1)
                return g, exp, log
        raise AssertionError("no primitive element found")  # pragma: no cover

    @property
    def generator(self) -> FieldElement:
        return FieldElement(self, int(self._log_tables[0]))

    @cached_property
    def _tables(self):
        if self.n == 1 or self.q > _TABLE_LIMIT:
            return None
        q = self.q
        codes = np.arange(q, dtype=np.int64)
        digits = (codes[:, None] // self._powers[None, :]) % self.p
        add = ((digits[:, None, :] + digits[None, :, :]) % self.p) @ self._powers
        neg = ((-digits) % self.p) @ self._powers
        _, exp, log = self._log_tables
        mul = np.zeros((q, q), dtype=np.int64)
        nz = codes[1:]
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        return add, neg, mul

    @cached_property
    def _inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        if self.n == 1:
            for a in range(1, self.p):
                inv[a] = pow(a, self.p - 2, self.p)
        else:
            _, exp, log = self._log_tables
            nz = np.arange(1, self.q)
            inv[nz] = exp[(-log[nz]) % (self.q - 1)]
        return inv

    # -- array primitives ----------------------------------------------
    def _digits(self, a):
        return (np.asarray(a)[..., None] // self._powers) % self.p

    def add(self, a, b):
        if self.n == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        t = self._tables
        if t is not None:
            return t[0][a, b]
        return ((self._digits(a) + self._digits(b)) % self.p) @ self._powers

    def neg(self, a):
        if self.n == 1:
            return (-np.asarray(a)) % self.p
        if self.p == 2:
            return np.asarray(a).copy()
        t = self._tables
        if t is not None:
            return t[1][a]
        return ((-self._digits(a)) % self.p) @ self._powers

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.n == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        t = self._tables
        if t is not None:
            return t[2][a, b]
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        _, exp, log = self._log_tables
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self._inv_table[a]

    def matmul(self, A, B):
        A = np.asarray(A)
        B = np.asarray(B)
        if self.n == 1:
            if self.p < 3_000_000:
                return (A @ B) % self.p
            return np.asarray((A.astype(object) @ B.astype(object)) % self.p, dtype=np.int64)
        out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
        for k in range(A.shape[-1]):
            if B.ndim > 1:
                out = self.add(out, self.mul(A[..., k, None], B[k][None]))
            else:
                out = self.add(out, self.mul(A[..., k], B[k]))
        return out

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def square_codes(self) -> set:
        c = np.arange(self.q, dtype=np.int64)
        return set(self.mul(c, c).tolist())


class Rationals(_FieldBase):
    """The field of rational numbers (construction and series computations only)."""

    is_finite = False
    char = 0
    p = 0
    n = 1
    dtype = object

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def literal(self) -> str:
        return "qq"

    def code(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value.value
        return Fraction(value)

    def coeffs(self, code):
        return (code,)

    def sort_key(self, code):
        return code

    def format_element(self, code) -> str:
        return str(code)

    def _obj(self, a):
        return np.asarray(a, dtype=object)

    def add(self, a, b):
        return self._obj(self._obj(a) + self._obj(b))

    def sub(self, a, b):
        return self._obj(self._obj(a) - self._obj(b))

    def neg(self, a):
        return self._obj(-self._obj(a))

    def mul(self, a, b):
        return self._obj(self._obj(a) * self._obj(b))

    def inv(self, a):
        a = self._obj(a)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self._obj(np.vectorize(lambda x: 1 / Fraction(x), otypes=[object])(a)) if a.shape else self._obj(1 / Fraction(a.item()))

    def matmul(self, A, B):
        A, B = self._obj(A), self._obj(B)
        out = self.zeros(A.shape[:-1] + B.shape[1:])
        for k in range(A.shape[-1]):
            out = out + A[..., k, None] * (B[k][None] if B.ndim > 1 else B[k])
        return self._obj(out)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        vals = rng.integers(-3, 4, size=shape)
        return self._obj(np.vectorize(Fraction, otypes=[object])(vals)) if vals.shape else Fraction(int(vals))


QQ = Rationals()


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------
_LIT = re.compile(r"^\s*gf\(\s*(\d+)(?:\s*\^\s*(\d+))?\s*(?:;\s*modulus\s*=\s*([\d,\s]+))?\)\s*$", re.I)


def parse_field(text: str):
    """Parse ``gf(p)``, ``gf(p^n)``, ``gf(p^n; modulus=c0,...,1)`` or ``qq``."""
    if text.strip().lower() in ("qq", "q", "rationals"):
        return QQ
    m = _LIT.match(text)
    if not m:
        raise ParseError(f"bad field literal {text!r}")
    p, n, mod = int(m.group(1)), int(m.group(2) or 1), m.group(3)
    if n == 1 and m.group(2) is None and not is_prime(p):
        # gf(9) is accepted as shorthand for gf(3^2)
        for pp in range(2, p + 1):
            if is_prime(pp) and p % pp == 0:
                k = round(math.log(p, pp))
                if pp**k == p:
                    return GF(pp, k)
                break
    modulus = None if mod is None else [int(c) for c in mod.split(",") if c.strip()]
    return GF(p, n, modulus)


def parse_element(F, text: str) -> FieldElement:
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ParseError(f"bad element {text!r}")
        parts = [c for c in text[1:-1].split(",") if c.strip()]
        try:
            return F([int(c) for c in parts])
        except ValueError as exc:
            raise ParseError(f"bad element {text!r}") from exc
    try:
        if "/" in text:
            return F(Fraction(text))
        return F(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad element {text!r}") from exc


# ---------------------------------------------------------------------------
# element sets
# ---------------------------------------------------------------------------
class ElementSet:
    """An ordered set of distinct field elements with a kind tag."""

    KINDS = ("additive-subgroup", "multiplicative-subgroup", "coset-list", "coset")

    def __init__(self, field, codes, kind: str):
        if kind not in self.KINDS:
            raise ValueError(kind)
        codes = sorted(set(int(c) for c in codes), key=field.sort_key)
        self.field = field
        self.codes = tuple(codes)
        self.kind = kind
        self._set = frozenset(codes)

    @property
    def members(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.codes]

    def __contains__(self, x):
        if isinstance(x, FieldElement):
            if x.field != self.field:
                return False
            return int(x.value) in self._set
        return int(self.field.code(x)) in self._set

    def __len__(self):
        return len(self.codes)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        if isinstance(other, ElementSet):
            return self.field == other.field and self._set == other._set
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self._set))

    def __repr__(self):
        return "{" + ", ".join(map(str, self.members)) + "}"

    def scaled(self, c) -> "ElementSet":
        F = self.field
        c = F.code(c)
        codes = F.mul(np.asarray(c), np.array(self.codes, dtype=np.int64))
        return ElementSet(F, np.atleast_1d(codes), self.kind)


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch a named field operation; ``b`` is ignored for ``inv`` and is an int for ``pow``."""
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    if isinstance(b, FieldElement) and b.field != a.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def _check_enum(F):
    F.require_finite()
    if F.q > MAX_ENUM_ORDER:
        raise InvalidParams(f"{F} exceeds the enumeration cap q <= 2^16")


def cube_classes(F: GF) -> list[ElementSet]:
    """Cosets of the cube subgroup in F*, the cube subgroup first."""
    _check_enum(F)
    nz = np.arange(1, F.q, dtype=np.int64)
    cubes = set(F.mul(F.mul(nz, nz), nz).tolist())
    classes = [ElementSet(F, cubes, "multiplicative-subgroup")]
    covered = set(cubes)
    for c in F.ordered_codes:
        c = int(c)
        if c == 0 or c in covered:
            continue
        coset = set(F.mul(np.asarray(c), np.array(sorted(cubes), dtype=np.int64)).tolist())
        covered |= coset
        classes.append(ElementSet(F, coset, "coset"))
    return classes


def is_cube(F: GF, x) -> bool:
    x = F(x)
    if x.is_zero():
        return True
    return x in cube_classes(F)[0]


def cube_root(F: GF, x) -> FieldElement | None:
    """Some ``b`` with ``b**3 == x`` (the least in element order) or None."""
    x = F(x)
    codes = F.ordered_codes
    cubes = F.mul(F.mul(codes, codes), codes)
    hit = np.nonzero(cubes == x.value)[0]
    return None if len(hit) == 0 else F.element(int(codes[hit[0]]))


def is_square(F: GF, x) -> bool:
    x = F(x)
    codes = np.arange(F.q, dtype=np.int64)
    return bool(np.any(F.mul(codes, codes) == x.value))


def quad_irreducible(F: GF, r, s) -> bool:
    """True iff t^2 + r t + s has no root in F."""
    _check_enum(F)
    r, s = F(r), F(s)
    t = np.arange(F.q, dtype=np.int64)
    vals = F.add(F.add(F.mul(t, t), F.mul(np.asarray(r.value), t)), np.asarray(s.value))
    return bool(np.all(vals != 0))


def h_group(F: GF, r) -> ElementSet:
    """``{x^2 + r x : x in F}``; an additive subgroup in characteristic 2 only."""
    _check_enum(F)
    r = F(r)
    if r.is_zero():
        raise InvalidParams("H(r) needs r != 0")
    x = np.arange(F.q, dtype=np.int64)
    vals = F.add(F.mul(x, x), F.mul(np.asarray(r.value), x))
    # in odd characteristic x -> x^2 + r x is not additive, so no closure is claimed
    return ElementSet(F, vals.tolist(), "additive-subgroup" if F.char == 2 else "coset-list")


def g_group(F: GF, r, s) -> ElementSet:
    """Norm values ``{x^2 + r x y + s y^2 : (x, y) != (0, 0)}``."""
    _check_enum(F)
    r, s = F(r), F(s)
    if not quad_irreducible(F, r, s):
        raise InvalidParams("G(r, s) needs t^2 + r t + s irreducible")
    x = np.arange(F.q, dtype=np.int64)
    xx = F.mul(x, x)
    vals = set()
    for y in range(F.q):
        yv = np.asarray(y)
        row = F.add(F.add(xx, F.mul(F.mul(np.asarray(r.value), x), yv)), F.mul(np.asarray(s.value), F.mul(yv, yv)))
        if y == 0:
            row = row[1:]
        vals.update(np.atleast_1d(row).tolist())
    return ElementSet(F, vals, "multiplicative-subgroup")


def gsq_group(F: GF, s) -> ElementSet:
    """``{(x^2 - s y^2)^2 : (x, y) != (0, 0)}`` for a non-square s."""
    _check_enum(F)
    s = F(s)
    if is_square(F, s):
        raise InvalidParams("G(s) needs s not a square")
    x = np.arange(F.q, dtype=np.int64)
    xx = F.mul(x, x)
    vals = set()
    for y in range(F.q):
        yv = np.asarray(y)
        n = F.sub(xx, F.mul(np.asarray(s.value), F.mul(yv, yv)))
        row = F.mul(n, n)
        if y == 0:
            row = row[1:]
        vals.update(np.atleast_1d(row).tolist())
    return ElementSet(F, vals, "multiplicative-subgroup")


def special_groups(F: GF, which: str, *params) -> ElementSet:
    key = which.replace(" ", "").lower()
    if key in ("h", "h(r)"):
        return h_group(F, *params)
    if key in ("g", "g(r,s)"):
        return g_group(F, *params)
    if key in ("gsq", "gsq(s)", "g(s)"):
        return gsq_group(F, *params)
    raise ValueError(f"unknown group {which!r}")


def least_nonsquare(F: GF) -> FieldElement | None:
    sq = F.square_codes()
    for c in F.ordered_codes:
        if int(c) not in sq:
            return F.element(int(c))
    return None
