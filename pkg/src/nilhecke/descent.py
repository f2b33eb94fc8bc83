"""The Demazure descent algebra and its braid elements.

An element is a finite sum ``sum_u f_u G_u`` over double-letter-free words
``u`` with polynomial coefficients on the left.  The defining relations are
``G_i G_i = 0`` and ``G_i f = D_i(f) + s_i(f) G_i``.  No braid relation is
imposed on the ``G_i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .coxeter import CoxeterGroup, IdentityViolationError
from .hecke import HeckeElement
from .poly import Polynomial, parse_polynomial


def is_double_letter_free(word) -> bool:
    return all(a != b for a, b in zip(word, word[1:]))


class DescentElement:
    """Left-coefficient normal form ``{word: polynomial}``; words are tuples of indices."""

    __slots__ = ("group", "terms")

    def __init__(self, group: CoxeterGroup, terms: dict | None = None):
        self.group = group
        self.terms = {}
        for w, f in (terms or {}).items():
            w = tuple(w)
            if not f:
                continue
            if not is_double_letter_free(w):
                raise ValueError(f"word {w} has a double letter")
            self.terms[w] = f

    @classmethod
    def _raw(cls, group, terms) -> "DescentElement":
        out = cls.__new__(cls)
        out.group = group
        out.terms = terms
        return out

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, group):
        return cls._raw(group, {})

    @classmethod
    def one(cls, group):
        return cls._raw(group, {(): group.poly(1)})

    @classmethod
    def word(cls, group, word, coeff=1):
        """A single basis word; a word with a double letter is zero."""
        word = tuple(word)
        if not is_double_letter_free(word):
            return cls.zero(group)
        f = group.poly(coeff)
        return cls._raw(group, {word: f} if f else {})

    @classmethod
    def letter(cls, group, i):
        return cls.word(group, (i,))

    @classmethod
    def from_polynomial(cls, group, f):
        return cls.word(group, (), f)

    # arithmetic ---------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, DescentElement) or other.group is not self.group:
            raise TypeError("descent elements from different groups")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, f in other.terms.items():
            if w in out:
                s = out[w] + f
                if s:
                    out[w] = s
                else:
                    del out[w]
            else:
                out[w] = f
        return DescentElement._raw(self.group, out)

    def __neg__(self):
        return DescentElement._raw(self.group, {w: -f for w, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def lmul_poly(self, f) -> "DescentElement":
        f = self.group.poly(f)
        if not f:
            return DescentElement.zero(self.group)
        return DescentElement._raw(self.group, {w: f * g for w, g in self.terms.items()})

    def rmul_word(self, word) -> "DescentElement":
        """self * G_word (no polynomials to move, only junction deletions)."""
        word = tuple(word)
        out = {}
        for w, f in self.terms.items():
            if w and word and w[-1] == word[0]:
                continue
            out[w + word] = f
        return DescentElement._raw(self.group, out)

    def lmul_letter(self, i: int) -> "DescentElement":
        """G_i * self, pushing coefficients left with G_i f = D_i(f) + s_i(f) G_i."""
        g = self.group
        out: dict = {}
        for w, f in self.terms.items():
            d = g.demazure(i, f)
            if d:
                if w in out:
                    s = out[w] + d
                    if s:
                        out[w] = s
                    else:
                        del out[w]
                else:
                    out[w] = d
            if w and w[0] == i:
                continue
            v = (i,) + w
            s = g.reflect(i, f)
            if v in out:
                t = out[v] + s
                if t:
                    out[v] = t
                else:
                    del out[v]
            else:
                out[v] = s
        return DescentElement._raw(g, out)

    def lmul_word(self, word) -> "DescentElement":
        part = self
        for i in reversed(tuple(word)):
            part = part.lmul_letter(i)
            if not part.terms:
                break
        return part

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            other = DescentElement.from_polynomial(self.group, other)
        if not isinstance(other, DescentElement):
            return NotImplemented
        self._check(other)
        result = DescentElement.zero(self.group)
        for w, f in self.terms.items():
            result = result + other.lmul_word(w).lmul_poly(f)
        return result

    def __rmul__(self, other):
        if isinstance(other, Polynomial):
            return self.lmul_poly(other)
        return NotImplemented

    # queries --------------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, DescentElement) and other.group is self.group and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, word) -> Polynomial:
        return self.terms.get(tuple(word), self.group.poly(0))

    def degree(self) -> int | None:
        """Graded degree (coefficient degree minus word length); None if not homogeneous."""
        degs = set()
        for w, f in self.terms.items():
            d = f.homogeneous_degree()
            if d is None:
                return None
            degs.add(d - len(w))
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return not self.terms or self.degree() is not None

    def sorted_words(self) -> list:
        return sorted(self.terms, key=lambda w: (len(w), w))

    def to_json(self) -> list:
        return [{"word": [i + 1 for i in w], "coeff": self.terms[w].to_json()}
                for w in self.sorted_words()]

    @classmethod
    def from_json(cls, data, group) -> "DescentElement":
        out = cls.zero(group)
        for row in data:
            word = tuple(int(i) - 1 for i in row["word"])
            coeff = Polynomial.from_json(row["coeff"], group.rank, group.field)
            out = out + cls.word(group, word, coeff)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({self.terms[w]})*G[{','.join(str(i + 1) for i in w)}]" for w in self.sorted_words()
        )


def descent_mul(a: DescentElement, b: DescentElement) -> DescentElement:
    return a * b


# -- formal expressions and the rewriting engine --------------------------------

@dataclass(frozen=True)
class PolyAtom:
    poly: Polynomial


@dataclass(frozen=True)
class GenAtom:
    index: int


@dataclass(frozen=True)
class Sum:
    parts: tuple


@dataclass(frozen=True)
class Product:
    factors: tuple


FormalExpression = Union[PolyAtom, GenAtom, Sum, Product]


def _expand(expr, group) -> list:
    """Expand into raw monomials: lists of atoms (Polynomial or int letter)."""
    if isinstance(expr, PolyAtom):
        return [(expr.poly,)] if expr.poly else []
    if isinstance(expr, GenAtom):
        return [(group.poly(1), expr.index)]
    if isinstance(expr, Sum):
        return [m for p in expr.parts for m in _expand(p, group)]
    if isinstance(expr, Product):
        acc = [(group.poly(1),)]
        for factor in expr.factors:
            acc = [a + b for a in acc for b in _expand(factor, group)]
        return acc
    raise TypeError(f"not a formal expression: {expr!r}")


def _find_redex(atoms, leftmost: bool):
    positions = range(len(atoms) - 1)
    if not leftmost:
        positions = reversed(positions)
    for p in positions:
        a, b = atoms[p], atoms[p + 1]
        if isinstance(b, Polynomial) or (isinstance(a, int) and isinstance(b, int) and a == b):
            return p
    return None


def normal_form(expr, group: CoxeterGroup, strategy: str = "right") -> DescentElement:
    """Rewrite a formal expression to its double-letter-free normal form.

    Rules: merge adjacent polynomials; ``G_i G_i -> 0``;
    ``G_i f -> D_i(f) + s_i(f) G_i``.  ``strategy`` picks the leftmost or
    rightmost redex at each step.
    """
    if strategy not in ("left", "right"):
        raise ValueError("strategy must be 'left' or 'right'")
    leftmost = strategy == "left"
    pending = list(_expand(expr, group))
    result = DescentElement.zero(group)
    while pending:
        atoms = pending.pop()
        p = _find_redex(atoms, leftmost)
        if p is None:
            if isinstance(atoms[0], Polynomial):
                coeff, word = atoms[0], tuple(atoms[1:])
            else:
                coeff, word = group.poly(1), tuple(atoms)
            result = result + DescentElement.word(group, word, coeff)
            continue
        a, b = atoms[p], atoms[p + 1]
        head, tail = atoms[:p], atoms[p + 2:]
        if isinstance(a, Polynomial):
            prod = a * b
            if prod:
                pending.append(head + (prod,) + tail)
        elif isinstance(b, int):
            continue  # G_i G_i = 0
        else:
            d = group.demazure(a, b)
            if d:
                pending.append(head + (d,) + tail)
            s = group.reflect(a, b)
            pending.append(head + (s, a) + tail)
    return result


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_expression(text: str, group: CoxeterGroup):
    """Parse an s-expression such as ``(* (- 1 (* a1 G1)) (- 1 (* a1 G1)))``.

    ``G<k>`` is a generator (1-based); any other token is a polynomial.
    Operators: ``+``, ``*``, and ``-`` (binary difference or unary negation).
    """
    tokens = _TOKEN.findall(text)
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise ValueError("unexpected end of expression")
            op = tokens[pos]
            pos += 1
            args = []
            while pos < len(tokens) and tokens[pos] != ")":
                args.append(parse())
            if pos >= len(tokens):
                raise ValueError("missing closing parenthesis")
            pos += 1
            if op == "+":
                return Sum(tuple(args))
            if op == "*":
                return Product(tuple(args))
            if op == "-":
                minus = PolyAtom(group.poly(-1))
                if len(args) == 1:
                    return Product((minus, args[0]))
                return Sum((args[0],) + tuple(Product((minus, a)) for a in args[1:]))
            raise ValueError(f"unknown operator {op!r}")
        if tok == ")":
            raise ValueError("unbalanced parenthesis")
        if re.fullmatch(r"G\d+", tok):
            i = int(tok[1:]) - 1
            if not 0 <= i < group.rank:
                raise ValueError(f"generator {tok} out of range")
            return GenAtom(i)
        return PolyAtom(parse_polynomial(tok, group.rank, group.field))

    expr = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens in expression")
    return expr


# -- projection and braid elements ---------------------------------------------

def project_to_hecke(a: DescentElement) -> HeckeElement:
    """The quotient map G_i -> D_i: reduced words go to D_w, others to 0."""
    group = a.group
    out: dict = {}
    for word, f in a.terms.items():
        if group.is_reduced(word):
            idx = group.element_from_word(word).index
            out[idx] = out[idx] + f if idx in out else f
    return HeckeElement(group, out)


def involution(group: CoxeterGroup, i: int) -> DescentElement:
    """s_i = 1 - a_i G_i inside the descent algebra."""
    return DescentElement._raw(group, {(): group.poly(1), (i,): -group.root(i)})


def coxeter_braid_element(group: CoxeterGroup, k: int, l: int) -> DescentElement:
    """B_kl: difference of the alternating length-m products of 1 - a_i G_i."""
    if k == l:
        raise ValueError("braid element needs k != l")
    cache = group._braid_cache
    if (k, l) in cache:
        return cache[(k, l)]
    m = group.m(k, l)

    def alternating_product(a, b):
        acc = DescentElement.one(group)
        for i in group.alternating(a, b, m):
            acc = acc * involution(group, i)
        return acc

    out = alternating_product(k, l) - alternating_product(l, k)
    cache[(k, l)] = out
    return out


def demazure_braid_element(group: CoxeterGroup, k: int, l: int) -> DescentElement:
    """B^D_kl = G_k G_l G_k ... - G_l G_k G_l ... (m letters each)."""
    if k == l:
        raise ValueError("braid element needs k != l")
    m = group.m(k, l)
    return (DescentElement.word(group, group.alternating(k, l, m))
            - DescentElement.word(group, group.alternating(l, k, m)))


@dataclass
class KeyIdentityReport:
    pair: tuple
    m: int
    delta: Polynomial
    sign: int
    leading_k: Polynomial
    leading_l: Polynomial
    lower_order: dict
    residual: DescentElement

    @property
    def ok(self) -> bool:
        return (self.residual.is_zero()
                and all(not f for f in self.lower_order.values())
                and self.leading_k == -self.leading_l
                and self.leading_k == self.delta * self.sign)

    def to_json(self) -> dict:
        return {
            "pair": [self.pair[0] + 1, self.pair[1] + 1],
            "m": self.m,
            "delta": self.delta.to_text(),
            "sign": self.sign,
            "leading": {
                "word_k": [i + 1 for i in _alt(self.pair, self.m)],
                "coeff_k": self.leading_k.to_text(),
                "word_l": [i + 1 for i in _alt(self.pair[::-1], self.m)],
                "coeff_l": self.leading_l.to_text(),
            },
            "lower_order": {"-".join(str(i + 1) for i in w) or "e": f.to_text()
                            for w, f in sorted(self.lower_order.items(), key=lambda t: (len(t[0]), t[0]))},
            "residual": self.residual.to_json(),
            "ok": self.ok,
        }


def _alt(pair, m):
    a, b = pair
    return tuple(a if t % 2 == 0 else b for t in range(m))


def key_identity_check(group: CoxeterGroup, k: int, l: int) -> KeyIdentityReport:
    """Check B_kl = (-1)^m Delta_kl B^D_kl exactly and report the expansion."""
    m = group.m(k, l)
    braid = coxeter_braid_element(group, k, l)
    delta = group.delta(k, l)
    sign = -1 if m % 2 else 1
    residual = braid - demazure_braid_element(group, k, l).lmul_poly(delta * sign)
    lower = {}
    for length in range(m):
        for start in ((k, l) if length else (k,)):
            w = _alt((start, l if start == k else k), length)
            lower[w] = braid.coefficient(w)
    for w in braid.terms:
        if len(w) < m:
            lower.setdefault(w, braid.coefficient(w))
    report = KeyIdentityReport(
        pair=(k, l), m=m, delta=delta, sign=sign,
        leading_k=braid.coefficient(_alt((k, l), m)),
        leading_l=braid.coefficient(_alt((l, k), m)),
        lower_order=lower, residual=residual,
    )
    if not report.ok:
        raise IdentityViolationError(
            f"B_{k + 1}{l + 1} != (-1)^m Delta B^D; offending words {residual.sorted_words()}",
            witness=report,
        )
    return report
