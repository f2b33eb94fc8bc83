"""The nil Hecke algebra smashed with the polynomial ring.

Elements are finite sums ``sum_w f_w D_w`` with polynomial coefficients on the
left.  Multiplication uses the two rules

* ``D_i f = D_i(f) + s_i(f) D_i``
* ``D_i D_w = D_{s_i w}`` if the length goes up, else ``0``.
"""

from __future__ import annotations

from .coxeter import CoxeterGroup, GroupElement, IdentityViolationError
from .poly import NotDivisibleError, Polynomial, divide_exact


class HeckeElement:
    """An element of the nil Hecke algebra; keys are group-element indices."""

    __slots__ = ("group", "terms")

    def __init__(self, group: CoxeterGroup, terms: dict | None = None):
        self.group = group
        self.terms = {w: f for w, f in (terms or {}).items() if f}

    # constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, group) -> "HeckeElement":
        return cls(group)

    @classmethod
    def one(cls, group) -> "HeckeElement":
        return cls(group, {0: group.poly(1)})

    @classmethod
    def D(cls, group, w) -> "HeckeElement":
        """The basis element D_w; ``w`` may be an element, index or word."""
        if isinstance(w, (tuple, list)) and not group.is_reduced(w):
            return cls(group)
        return cls(group, {group.element(w).index: group.poly(1)})

    @classmethod
    def from_polynomial(cls, group, f) -> "HeckeElement":
        return cls(group, {0: group.poly(f)})

    # arithmetic -----------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, HeckeElement) or other.group is not self.group:
            raise TypeError("Hecke elements from different groups")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, f in other.terms.items():
            out[w] = out[w] + f if w in out else f
        return HeckeElement(self.group, out)

    def __neg__(self):
        return HeckeElement(self.group, {w: -f for w, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def lmul_poly(self, f: Polynomial) -> "HeckeElement":
        return HeckeElement(self.group, {w: f * g for w, g in self.terms.items()})

    def lmul_letter(self, i: int) -> "HeckeElement":
        """D_i * self."""
        g = self.group
        up = g.left_table[i]
        out: dict = {}
        for w, f in self.terms.items():
            d = g.demazure(i, f)
            if d:
                out[w] = out[w] + d if w in out else d
            v = up[w]
            if g.elements[v].length > g.elements[w].length:
                s = g.reflect(i, f)
                out[v] = out[v] + s if v in out else s
        return HeckeElement(g, out)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            other = HeckeElement.from_polynomial(self.group, other)
        if not isinstance(other, HeckeElement):
            return NotImplemented
        self._check(other)
        result = HeckeElement(self.group)
        for w, f in self.terms.items():
            part = other
            for i in reversed(self.group.elements[w].word):
                part = part.lmul_letter(i)
                if not part.terms:
                    break
            result = result + part.lmul_poly(f)
        return result

    def __rmul__(self, other):
        if isinstance(other, Polynomial):
            return self.lmul_poly(other)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and other.group is self.group and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, w) -> Polynomial:
        idx = self.group.element(w).index
        return self.terms.get(idx, self.group.poly(0))

    def degree(self) -> int | None:
        """Graded degree (coefficient degree minus length), None if inhomogeneous."""
        degs = set()
        for w, f in self.terms.items():
            d = f.homogeneous_degree()
            if d is None:
                return None
            degs.add(d - self.group.elements[w].length)
        return degs.pop() if len(degs) == 1 else None

    def act(self, f: Polynomial) -> Polynomial:
        """Action on polynomials; D_w acts along its canonical reduced word."""
        g = self.group
        out = g.poly(0)
        for w, coeff in self.terms.items():
            out = out + coeff * g.demazure_word(g.elements[w].word, f)
        return out

    def to_json(self) -> list:
        rows = []
        for w in sorted(self.terms, key=lambda x: (self.group.elements[x].length, self.group.elements[x].word)):
            rows.append({"word": [i + 1 for i in self.group.elements[w].word],
                         "coeff": self.terms[w].to_json()})
        return rows

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda x: self.group.elements[x].word):
            parts.append(f"({self.terms[w]})*D[{self.group.elements[w]!r}]")
        return " + ".join(parts)


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a * b


def hecke_act(a: HeckeElement, f: Polynomial) -> Polynomial:
    return a.act(f)


def embed_group(group: CoxeterGroup, w, word=None) -> HeckeElement:
    """Image of ``w`` under s_i -> 1 - a_i D_i, expanded along ``word``
    (default: the canonical reduced word)."""
    w = group.element(w)
    word = w.word if word is None else tuple(word)
    return reflect_left(group, word, HeckeElement.one(group))


def reflect_left(group: CoxeterGroup, word, x: HeckeElement) -> HeckeElement:
    """Left-multiply ``x`` by the images of s_i for the letters of ``word``.

    Uses s_i * x = x - a_i * (D_i * x), so no general products are formed.
    """
    for i in reversed(tuple(word)):
        x = x - x.lmul_letter(i).lmul_poly(group.root(i))
    return x


def antisymmetrizer_over_delta(group: CoxeterGroup, k: int, l: int, f: Polynomial) -> Polynomial:
    """``(sum_g sign(g) g(f)) / Delta_kl`` over the parabolic subgroup on {k, l}."""
    total = group.poly(0)
    for g in group.parabolic((k, l)):
        term = group.act(g, f)
        total = total + term if g.length % 2 == 0 else total - term
    data = group.rank2_root_data(k, l)
    try:
        for root in data.sequence_k:
            total = divide_exact(total, root)
    except NotDivisibleError as exc:
        raise IdentityViolationError("antisymmetrization not divisible by Delta", exc.remainder) from exc
    return total


def longest_dword(group: CoxeterGroup, k: int, l: int, start: int | None = None) -> tuple:
    """An alternating word of length m_kl (a reduced word of the rank-two longest element)."""
    start = k if start is None else start
    other = l if start == k else k
    return group.alternating(start, other, group.m(k, l))


def parabolic_longest(group: CoxeterGroup, k: int, l: int) -> GroupElement:
    return group.element_from_word(longest_dword(group, k, l))
