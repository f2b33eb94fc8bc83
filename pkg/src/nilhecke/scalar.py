"""Exact coefficient fields: the rationals and simple extensions Q(c).

A :class:`Field` is given by a monic minimal polynomial ``p`` with rational
coefficients (listed constant term first).  Its elements, :class:`Scalar`,
are coordinate vectors in the power basis ``1, c, ..., c^(d-1)``.  Every
field also carries a designated real root of ``p`` so that scalars can be
embedded in the reals for diagnostics; the embedding is never used to decide
equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np


class FieldError(ValueError):
    """Base class for coefficient-field errors."""


class InvalidFieldError(FieldError):
    pass


class FieldMismatchError(FieldError):
    pass


class ReducibleMinimalPolynomialError(FieldError):
    """Raised when inversion discovers that the minimal polynomial factors."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot make an exact rational from {x!r}")


# -- univariate helpers (ascending coefficient lists of Fractions) ----------

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        factor = a[-1] / lead
        q[shift] = factor
        for i, bi in enumerate(b):
            a[i + shift] -= factor * bi
        _trim(a)
    return q, a


def _sub_mul(a: list, b: list, c: list) -> list:
    """a - b*c"""
    out = list(a) + [Fraction(0)] * max(0, len(b) + len(c) - 1 - len(a))
    for i, bi in enumerate(b):
        for j, cj in enumerate(c):
            out[i + j] -= bi * cj
    return _trim(out)


class Field:
    """A simple extension of Q by a root of a monic irreducible polynomial."""

    __slots__ = ("min_poly", "degree", "root", "label", "_powers")

    def __init__(self, min_poly, root: float | None = None, label: str | None = None):
        coeffs = [_frac(x) for x in min_poly]
        if not coeffs or len(coeffs) < 2:
            raise InvalidFieldError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise InvalidFieldError(f"minimal polynomial must be monic, got leading {coeffs[-1]}")
        self.min_poly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        if self.degree == 1:
            # generator is absent; the designated "root" is kept only for display
            self.root = float(-coeffs[0]) if root is None else float(root)
            self.label = label or "QQ"
        else:
            self.root = _designated_root(coeffs) if root is None else float(root)
            self.label = label or f"QQ[c]/({_poly_text(coeffs)})"
        # c^(d+j) reduced to the power basis, j = 0..d-2
        d = self.degree
        powers = []
        cur = [-x for x in coeffs[:-1]]  # c^d
        for _ in range(max(d - 1, 0)):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            for i in range(d):
                cur[i] -= top * coeffs[i]
        self._powers = tuple(powers)

    # identity ---------------------------------------------------------------
    def _key(self):
        return self.min_poly if self.degree > 1 else ()

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Field({self.label})"

    # construction -----------------------------------------------------------
    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            if value.field.degree == 1:
                return self._from_rational(value.coords[0])
            raise FieldMismatchError(f"cannot move {value!r} from {value.field} to {self}")
        if isinstance(value, str):
            from .poly import parse_scalar

            return parse_scalar(value, self)
        return self._from_rational(_frac(value))

    def _from_rational(self, q: Fraction) -> "Scalar":
        return Scalar(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def from_coords(self, coords) -> "Scalar":
        coords = tuple(_frac(x) for x in coords)
        if len(coords) != self.degree:
            raise InvalidFieldError(f"expected {self.degree} coordinates, got {len(coords)}")
        return Scalar(self, coords)

    @property
    def zero(self) -> "Scalar":
        return self._from_rational(Fraction(0))

    @property
    def one(self) -> "Scalar":
        return self._from_rational(Fraction(1))

    @property
    def gen(self) -> "Scalar":
        if self.degree == 1:
            raise InvalidFieldError("the rational field has no generator")
        return Scalar(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    # serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        return {"min_poly": [_ratstr(x) for x in self.min_poly], "root": self.root}

    @classmethod
    def from_json(cls, data) -> "Field":
        if isinstance(data, str):
            return field_preset(data)
        if isinstance(data, list):
            return field_make(data)
        return field_make(data["min_poly"], root=data.get("root"))


def _designated_root(coeffs) -> float:
    roots = np.roots([float(x) for x in reversed(coeffs)])
    real = [r.real for r in roots if abs(r.imag) < 1e-12]
    if not real:
        raise InvalidFieldError("minimal polynomial has no real root to embed")
    return max(real)


def _ratstr(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _poly_text(coeffs) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        a = coeffs[i]
        if a == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if mono and abs(a) == 1:
            body = mono
        else:
            body = f"{abs(a)}" + (f"*{mono}" if mono else "")
        parts.append(("- " if a < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


class Scalar:
    """An element of a :class:`Field`; immutable."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords: tuple):
        self.field = field
        self.coords = coords

    # coercion ---------------------------------------------------------------
    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.field is self.field or other.field == self.field:
                return other
            if other.field.degree == 1:
                return self.field._from_rational(other.coords[0])
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if isinstance(other, (int, Rational)):
            return self.field._from_rational(Fraction(other))
        return None

    def _unify(self, other):
        """Both operands in a common field; a rational operand is promoted."""
        if isinstance(other, Scalar) and self.field.degree == 1 and other.field.degree > 1:
            return other.field._from_rational(self.coords[0]), other
        o = self._coerce(other)
        return (None, None) if o is None else (self, o)

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return Scalar(a.field, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return Scalar(a.field, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return b - a

    def __mul__(self, other):
        a, o = self._unify(other)
        if a is None:
            return NotImplemented
        if a is not self:
            return a * o
        d = self.field.degree
        if d == 1:
            return Scalar(self.field, (self.coords[0] * o.coords[0],))
        raw = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(self.coords):
            if x:
                for j, y in enumerate(o.coords):
                    if y:
                        raw[i + j] += x * y
        out = raw[:d]
        for j, row in enumerate(self.field._powers):
            t = raw[d + j]
            if t:
                for i in range(d):
                    out[i] += t * row[i]
        return Scalar(self.field, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return a * b.inv()

    def __rtruediv__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return b * a.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self) -> "Scalar":
        """Multiplicative inverse via the extended Euclidean algorithm against p."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self.field.degree == 1:
            return Scalar(self.field, (1 / self.coords[0],))
        p = list(self.field.min_poly)
        a = _trim(list(self.coords))
        # invariant: s*a0 == r (mod p)
        r0, r1 = p, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _sub_mul(s0, q, s1)
            if not r1:
                raise ReducibleMinimalPolynomialError(
                    f"minimal polynomial {_poly_text(p)} shares a factor with {self}"
                )
        k = r1[0]
        inv = [x / k for x in s1]
        _, inv = _divmod(inv, p)
        inv = inv + [Fraction(0)] * (self.field.degree - len(inv))
        return Scalar(self.field, tuple(inv))

    # predicates ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def __eq__(self, other):
        try:
            a, b = self._unify(other)
        except FieldMismatchError:
            return False
        if a is None:
            return NotImplemented
        return a.coords == b.coords

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    # numeric embedding ----------------------------------------------------------
    def to_float(self) -> float:
        c = self.field.root
        return float(sum(float(a) * c**i for i, a in enumerate(self.coords)))

    # text ---------------------------------------------------------------------
    def __str__(self):
        if self.is_rational():
            q = self.coords[0]
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        parts = []
        for i in range(self.field.degree - 1, -1, -1):
            a = self.coords[i]
            if not a:
                continue
            mono = "" if i == 0 else ("c" if i == 1 else f"c^{i}")
            mag = abs(a)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if a < 0 else "+", body))
        text = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Scalar({self})"

    def is_compound(self) -> bool:
        """True when the text form has more than one term (needs brackets in a product)."""
        return sum(1 for a in self.coords if a) > 1

    def to_json(self) -> list[str]:
        return [_ratstr(a) for a in self.coords]


QQ = Field([0, 1], label="QQ")

# minimal polynomials of 2cos(pi/m) for the orders with presets
_TWO_COS_MINPOLY = {
    2: [0, 1],
    3: [-1, 1],
    4: [-2, 0, 1],
    5: [-1, -1, 1],
    6: [-3, 0, 1],
}

FIELD_PRESETS = {
    "QQ": QQ,
    "QQ(sqrt2)": Field([-2, 0, 1], label="QQ(sqrt2)"),
    "QQ(sqrt3)": Field([-3, 0, 1], label="QQ(sqrt3)"),
    "QQ(phi)": Field([-1, -1, 1], label="QQ(phi)"),
}

_ORDER_FIELD = {2: "QQ", 3: "QQ", 4: "QQ(sqrt2)", 5: "QQ(phi)", 6: "QQ(sqrt3)"}


def field_make(min_poly, root: float | None = None, label: str | None = None) -> Field:
    """Build a field from a monic minimal polynomial (constant term first).

    Degree-one polynomials all give the rationals.
    """
    if not min_poly:
        raise InvalidFieldError("empty minimal polynomial")
    f = Field(min_poly, root=root, label=label)
    if f.degree == 1:
        return QQ
    for preset in FIELD_PRESETS.values():
        if preset == f and root is None:
            return preset
    return f


def field_preset(name: str) -> Field:
    try:
        return FIELD_PRESETS[name]
    except KeyError:
        raise InvalidFieldError(f"unknown field preset {name!r}; known: {sorted(FIELD_PRESETS)}") from None


def field_for_order(m: int) -> Field:
    """Smallest preset field containing 2cos(pi/m)."""
    if m not in _ORDER_FIELD:
        raise InvalidFieldError(f"no preset field for Coxeter order {m}")
    return FIELD_PRESETS[_ORDER_FIELD[m]]


def _chebyshev_check(x: Scalar, m: int) -> bool:
    # 2cos(m*t) as a polynomial in 2cos(t); 2cos(pi/m) is a root of V_m + 2
    v_prev, v = x.field(2), x
    for _ in range(m - 1):
        v_prev, v = v, x * v - v_prev
    return (v + 2).is_zero()


def two_cos(m: int, field: Field) -> Scalar:
    """The element 2cos(pi/m) of ``field``.

    Raises :class:`InvalidFieldError` if the field does not contain it (as far
    as the supported search can tell).
    """
    target = 2 * math.cos(math.pi / m)
    q = _TWO_COS_MINPOLY.get(m)
    if q is not None and len(q) == 2:
        return field(-Fraction(q[0]))
    candidates = []
    if field.degree > 1:
        candidates.append(field.gen)
    if q is not None and len(q) == 3 and field.degree == 2:
        # roots of x^2 + b x + e inside Q(c), c^2 + u c + v = 0, via sqrt(disc)
        e, b = Fraction(q[0]), Fraction(q[1])
        v, u = field.min_poly[0], field.min_poly[1]
        ratio = (b * b - 4 * e) / (u * u - 4 * v)
        t = _rational_sqrt(ratio)
        if t is not None:
            sq = t * (2 * field.gen + u)
            candidates += [(sq - b) / 2, (-sq - b) / 2]
    for x in candidates:
        if abs(x.to_float() - target) < 1e-9 and _chebyshev_check(x, m):
            return x
    raise InvalidFieldError(f"{field} does not contain 2cos(pi/{m})")


def four_cos_sq(m: int, field: Field) -> Scalar:
    """4cos^2(pi/m) = 2 + 2cos(2pi/m); rational for m in {2, 3, 4, 6}."""
    known = {2: 0, 3: 1, 4: 2, 6: 3}
    if m in known:
        return field(known[m])
    x = two_cos(m, field)
    return x * x


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None
