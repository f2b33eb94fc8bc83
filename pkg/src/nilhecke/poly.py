"""Sparse multivariate polynomials in the simple-root coordinates.

Variables are the simple roots ``a1, ..., an``; a polynomial is a dict from
exponent tuples to nonzero :class:`~nilhecke.scalar.Scalar` coefficients.
The Coxeter group acts by linear substitution and the Demazure operator is
``D_i(f) = (f - s_i f) / a_i`` computed with an exact division.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from numbers import Rational

from .scalar import Field, FieldMismatchError, Scalar


class PolynomialError(ValueError):
    pass


class NotDivisibleError(PolynomialError):
    """Exact division failed; ``remainder`` is a nonzero witness."""

    def __init__(self, dividend, divisor, remainder):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"{dividend} is not divisible by {divisor} (remainder {remainder})")


def _grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


class Polynomial:
    """Immutable sparse polynomial over an exact field."""

    __slots__ = ("nvars", "field", "terms", "_hash")

    def __init__(self, nvars: int, field: Field, terms: dict | None = None, *, _clean=False):
        self.nvars = nvars
        self.field = field
        if terms is None:
            terms = {}
        elif not _clean:
            terms = {tuple(e): field(c) for e, c in terms.items()}
            terms = {e: c for e, c in terms.items() if c}
            for e in terms:
                if len(e) != nvars or any(x < 0 for x in e):
                    raise PolynomialError(f"bad exponent vector {e} for {nvars} variables")
        self.terms = terms
        self._hash = None

    # constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, field: Field) -> "Polynomial":
        return cls(nvars, field, {}, _clean=True)

    @classmethod
    def const(cls, nvars: int, field: Field, value) -> "Polynomial":
        c = field(value)
        if not c:
            return cls.zero(nvars, field)
        return cls(nvars, field, {(0,) * nvars: c}, _clean=True)

    @classmethod
    def var(cls, nvars: int, field: Field, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, field, {tuple(e): field.one}, _clean=True)

    @classmethod
    def linear(cls, field: Field, coeffs) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = field(c)
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(n, field, terms, _clean=True)

    @classmethod
    def monomial(cls, field: Field, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        return cls(len(exps), field, {exps: field(coeff)})

    def _like(self, terms: dict) -> "Polynomial":
        return Polynomial(self.nvars, self.field, terms, _clean=True)

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise PolynomialError(f"rank mismatch: {self.nvars} vs {other.nvars}")
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Rational, Scalar)):
            return Polynomial.const(self.nvars, self.field, other)
        return None

    # ring operations ------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational, Scalar)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return self._like({})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return self._like({e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, Scalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, k) -> "Polynomial":
        k = self.field(k)
        if not k:
            return self._like({})
        return self._like({e: c * k for e, c in self.terms.items()})

    def __truediv__(self, k):
        if isinstance(k, (int, Rational, Scalar)):
            return self.scale(self.field(k).inv())
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.const(self.nvars, self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # predicates and queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Rational, Scalar)):
            try:
                return self.terms == Polynomial.const(self.nvars, self.field, other).terms
            except FieldMismatchError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise PolynomialError(f"{self} is not constant")
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """Common degree of all terms, or None if inhomogeneous or zero."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return not self.terms or self.homogeneous_degree() is not None

    def sorted_terms(self) -> list:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_coefficient(self) -> Scalar:
        if not self.terms:
            return self.field.zero
        return self.sorted_terms()[0][1]

    def coefficient(self, exps) -> Scalar:
        return self.terms.get(tuple(exps), self.field.zero)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def evaluate(self, values) -> float:
        """Numeric value at float ``values`` using the field's real embedding."""
        total = 0.0
        for e, c in self.terms.items():
            t = c.to_float()
            for v, k in zip(values, e):
                if k:
                    t *= v**k
            total += t
        return total

    def linear_coefficients(self) -> list[Scalar]:
        """Coefficients of a homogeneous linear form."""
        if self.terms and self.homogeneous_degree() != 1:
            raise PolynomialError(f"{self} is not a linear form")
        out = [self.field.zero] * self.nvars
        for e, c in self.terms.items():
            out[e.index(1)] = c
        return out

    # substitution ---------------------------------------------------------------
    def substitute(self, images) -> "Polynomial":
        """Ring homomorphism sending variable j to ``images[j]``."""
        cache: dict = {}

        def power(j, k):
            key = (j, k)
            if key not in cache:
                cache[key] = images[j] if k == 1 else power(j, k - 1) * images[j]
            return cache[key]

        out = Polynomial.zero(images[0].nvars if images else self.nvars, self.field)
        for e, c in self.terms.items():
            t = Polynomial.const(out.nvars, self.field, c)
            for j, k in enumerate(e):
                if k:
                    t = t * power(j, k)
            out = out + t
        return out

    # text and JSON --------------------------------------------------------------
    def to_text(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"a{i + 1}" for i in range(self.nvars)]
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if c.is_compound():
                sign, coef = "+", f"({c})"
            else:
                s = str(c)
                sign, coef = ("-", s[1:]) if s.startswith("-") else ("+", s)
            if mono:
                body = mono if coef == "1" else f"{coef}*{mono}"
            else:
                body = coef
            pieces.append((sign, body))
        text = pieces[0][1] if pieces[0][0] == "+" else "-" + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()})"

    def to_json(self) -> list:
        return [{"exp": list(e), "coeff": c.to_json()} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data, nvars: int, field: Field) -> "Polynomial":
        if isinstance(data, str):
            return parse_polynomial(data, nvars, field)
        terms = {tuple(t["exp"]): field.from_coords(t["coeff"]) for t in data}
        return cls(nvars, field, terms)


# -- parsing -------------------------------------------------------------------

_VAR = re.compile(r"^a(\d+)$")


def _to_python(text: str) -> str:
    return text.replace("^", "**")


def _eval_node(node, nvars, field, *, allow_vars=True):
    def rec(n):
        return _eval_node(n, nvars, field, allow_vars=allow_vars)

    if isinstance(node, ast.Expression):
        return rec(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Polynomial.const(nvars, field, node.value)
    if isinstance(node, ast.Name):
        if node.id == "c":
            return Polynomial.const(nvars, field, field.gen)
        m = _VAR.match(node.id)
        if m and allow_vars:
            i = int(m.group(1)) - 1
            if not 0 <= i < nvars:
                raise PolynomialError(f"variable {node.id} out of range for rank {nvars}")
            return Polynomial.var(nvars, field, i)
        raise PolynomialError(f"unknown symbol {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = rec(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left, right = rec(node.left), rec(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero():
                raise PolynomialError("division only by nonzero constants")
            return left / right.constant_value()
        if isinstance(node.op, ast.Pow):
            if not (right.is_constant() and right.constant_value().is_rational()):
                raise PolynomialError("exponent must be a nonnegative integer")
            k = right.constant_value().rational()
            if k.denominator != 1 or k < 0:
                raise PolynomialError("exponent must be a nonnegative integer")
            return left ** int(k)
    raise PolynomialError(f"unsupported syntax: {ast.dump(node)}")


def parse_polynomial(text: str, nvars: int, field: Field) -> Polynomial:
    """Parse the canonical text form, e.g. ``"2*a1^2*a2 + (c-1)*a2"``."""
    try:
        tree = ast.parse(_to_python(text), mode="eval")
    except SyntaxError as exc:
        raise PolynomialError(f"cannot parse polynomial {text!r}") from exc
    return _eval_node(tree, nvars, field)


def parse_scalar(text: str, field: Field) -> Scalar:
    """Parse a scalar such as ``"-1/2"`` or ``"(c - 1)/3"``."""
    try:
        tree = ast.parse(_to_python(text), mode="eval")
    except SyntaxError as exc:
        raise PolynomialError(f"cannot parse scalar {text!r}") from exc
    return _eval_node(tree, 1, field, allow_vars=False).constant_value()


# -- group action and Demazure operators ----------------------------------------

def _matrix_of(g):
    return g.matrix if hasattr(g, "matrix") else g


def act(g, f: Polynomial) -> Polynomial:
    """Apply a group element (anything with a ``matrix``) to ``f``.

    Column ``j`` of the matrix holds the root coordinates of ``g(a_j)``.
    """
    matrix = _matrix_of(g)
    n = f.nvars
    if len(matrix) != n:
        raise PolynomialError(f"group rank {len(matrix)} does not match polynomial rank {n}")
    images = [Polynomial.linear(f.field, [matrix[r][j] for r in range(n)]) for j in range(n)]
    return f.substitute(images)


def divide_by_linear(f: Polynomial, ell: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Divide ``f`` by a nonzero linear form; returns ``(q, r)`` with ``f = q*ell + r``.

    Division is carried out in the highest-index variable occurring in ``ell``,
    so ``r`` does not involve that variable and is zero exactly when ``ell``
    divides ``f``.
    """
    coeffs = ell.linear_coefficients()
    support = [i for i, c in enumerate(coeffs) if c]
    if not support:
        raise PolynomialError("division by the zero linear form")
    j = support[-1]
    lead = coeffs[j]
    n, field = f.nvars, f.field
    # t = -(ell - lead*x_j)/lead, so ell = lead*(x_j - t)
    t = Polynomial.linear(field, [-(c / lead) if i != j else 0 for i, c in enumerate(coeffs)])

    slices: dict[int, dict] = {}
    for e, c in f.terms.items():
        k = e[j]
        rest = e[:j] + (0,) + e[j + 1 :]
        slices.setdefault(k, {})[rest] = c
    if not slices:
        return f, f
    top = max(slices)
    parts = {k: Polynomial(n, field, v, _clean=True) for k, v in slices.items()}
    zero = Polynomial.zero(n, field)
    xj = Polynomial.var(n, field, j)

    # synthetic division by (x_j - t)
    b = parts.get(top, zero)
    q = zero
    for k in range(top - 1, -1, -1):
        q = q + b * xj**k
        b = parts.get(k, zero) + t * b
    remainder = b
    return q / lead, remainder


def divide_exact(f: Polynomial, ell: Polynomial) -> Polynomial:
    q, r = divide_by_linear(f, ell)
    if r:
        raise NotDivisibleError(f, ell, r)
    return q


def _divide_by_variable(f: Polynomial, i: int) -> Polynomial:
    out = {}
    for e, c in f.terms.items():
        if e[i] == 0:
            return divide_exact(f, Polynomial.var(f.nvars, f.field, i))
        out[e[:i] + (e[i] - 1,) + e[i + 1 :]] = c
    return Polynomial(f.nvars, f.field, out, _clean=True)


def demazure(group, i: int, f: Polynomial) -> Polynomial:
    """``D_i(f) = (f - s_i(f)) / a_i``."""
    diff = f - act(group.simple[i], f)
    return _divide_by_variable(diff, i)
