"""Membership certificates for the ideal generated by the Coxeter braid elements.

A certificate is a finite list of terms ``q * p * u * B_gen * v`` whose sum is
claimed to equal a target element of the descent algebra.  The generators
below build certificates for

* ``Xi(Delta) * G_a G_b G_a ...`` (m + n letters), by induction on the word Xi
  of Demazure operators;
* the alternating word of length m + 1 itself, using D_{w0}(Delta) = 2m;
* the Demazure braid element ``B^D_kl``.

:func:`cert_verify` re-expands any certificate, including ones read from
JSON, with no reference to how it was built.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coxeter import CoxeterGroup
from .descent import (
    DescentElement,
    coxeter_braid_element,
    demazure_braid_element,
    key_identity_check,
)
from .poly import Polynomial
from .scalar import Scalar

SOURCES = ("lemma3", "A1", "main-step")


class InternalProofError(AssertionError):
    """A generated certificate failed verification."""


@dataclass(frozen=True)
class CertTerm:
    q: Scalar
    p: Polynomial
    left: DescentElement
    gen: tuple
    right: DescentElement
    source: str

    def expand(self) -> DescentElement:
        group = self.left.group
        braid = coxeter_braid_element(group, *self.gen)
        return (self.left.lmul_poly(self.p.scale(self.q)) * braid) * self.right

    def degree(self) -> int | None:
        """Graded degree of the term (B has degree 0)."""
        d_left, d_right = self.left.degree(), self.right.degree()
        d_p = self.p.homogeneous_degree()
        if None in (d_left, d_right, d_p):
            return None
        return d_p + d_left + d_right

    def to_json(self) -> dict:
        return {
            "q": self.q.to_json(),
            "p": self.p.to_json(),
            "left": self.left.to_json(),
            "gen": [self.gen[0] + 1, self.gen[1] + 1],
            "right": self.right.to_json(),
            "from": self.source,
        }


@dataclass
class Certificate:
    group: CoxeterGroup
    pair: tuple
    target: DescentElement
    terms: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "group": self.group.to_config(),
            "pair": [self.pair[0] + 1, self.pair[1] + 1],
            "target": self.target.to_json(),
            "terms": [t.to_json() for t in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        group = CoxeterGroup.from_config(data["group"])
        n, fld = group.rank, group.field
        terms = []
        for t in data["terms"]:
            gen = tuple(int(i) - 1 for i in t["gen"])
            if len(gen) != 2 or gen[0] == gen[1] or not all(0 <= i < n for i in gen):
                raise ValueError(f"bad generator pair {t['gen']}")
            terms.append(CertTerm(
                q=fld.from_coords(t["q"]),
                p=Polynomial.from_json(t["p"], n, fld),
                left=DescentElement.from_json(t["left"], group),
                gen=gen,
                right=DescentElement.from_json(t["right"], group),
                source=t.get("from", ""),
            ))
        pair = tuple(int(i) - 1 for i in data["pair"])
        return cls(group, pair, DescentElement.from_json(data["target"], group), terms)

    def sources(self) -> dict:
        counts: dict = {}
        for t in self.terms:
            counts[t.source] = counts.get(t.source, 0) + 1
        return counts


@dataclass
class VerifyResult:
    ok: bool
    residual: DescentElement

    def __bool__(self):
        return self.ok


def cert_verify(cert: Certificate) -> VerifyResult:
    """Expand every term and compare with the target; the residual is exact."""
    total = DescentElement.zero(cert.group)
    for term in cert.terms:
        total = total + term.expand()
    residual = total - cert.target
    return VerifyResult(residual.is_zero(), residual)


# -- construction ---------------------------------------------------------------

class _Combo:
    """Sum of terms p * G_u * B_gen * G_v, keyed by (u, gen, v, source).

    Generators are stored as (a, b) with a < b; B_ba = -B_ab.
    """

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = terms or {}

    @classmethod
    def braid(cls, group, gen, right, coeff, source):
        a, b = gen
        if a > b:
            a, b, coeff = b, a, -coeff
        return cls(group, {((), (a, b), tuple(right), source): group.poly(coeff)})

    def _add_into(self, out, key, p):
        if key in out:
            s = out[key] + p
            if s:
                out[key] = s
            else:
                del out[key]
        elif p:
            out[key] = p

    def __add__(self, other):
        out = dict(self.terms)
        for key, p in other.terms.items():
            self._add_into(out, key, p)
        return _Combo(self.group, out)

    def __neg__(self):
        return _Combo(self.group, {k: -p for k, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def lmul_poly(self, f) -> "_Combo":
        f = self.group.poly(f)
        return _Combo(self.group, {k: f * p for k, p in self.terms.items() if f})

    def lmul_letter(self, c: int) -> "_Combo":
        """G_c * (p G_u B v) = D_c(p) G_u B v + s_c(p) G_c G_u B v."""
        g = self.group
        out: dict = {}
        for (u, gen, v, src), p in self.terms.items():
            self._add_into(out, (u, gen, v, src), g.demazure(c, p))
            if not u or u[0] != c:
                self._add_into(out, ((c,) + u, gen, v, src), g.reflect(c, p))
        return _Combo(g, out)

    def relabel(self, source: str) -> "_Combo":
        out: dict = {}
        for (u, gen, v, _), p in self.terms.items():
            self._add_into(out, (u, gen, v, source), p)
        return _Combo(self.group, out)

    def to_terms(self) -> list:
        g = self.group
        terms = []
        for (u, gen, v, src), p in self.terms.items():
            q = p.leading_coefficient()
            terms.append(CertTerm(q=q, p=p.scale(q.inv()),
                                  left=DescentElement.word(g, u),
                                  gen=gen, right=DescentElement.word(g, v), source=src))
        terms.sort(key=lambda t: (SOURCES.index(t.source) if t.source in SOURCES else 9,
                                  t.gen, _word_key(t.left), _word_key(t.right)))
        return terms


def _word_key(x: DescentElement):
    (w,) = x.terms
    return (len(w), w)


class Prover:
    """Certificate builder for one rank-two pair (k, l) of a group."""

    def __init__(self, group: CoxeterGroup, k: int, l: int):
        if k == l:
            raise ValueError("pair needs two distinct generators")
        self.group, self.k, self.l = group, k, l
        self.m = group.m(k, l)
        # the base cases rely on B_kl = (-1)^m Delta B^D_kl; fail loudly if not
        key_identity_check(group, k, l)
        self.delta = group.delta(k, l)
        self.sign = -1 if self.m % 2 else 1
        self._lemma3: dict = {}
        self._main: dict = {}

    def other(self, a: int) -> int:
        return self.l if a == self.k else self.k

    def alt_word(self, start: int, length: int) -> tuple:
        if start not in (self.k, self.l):
            raise ValueError("start letter must be k or l")
        return self.group.alternating(start, self.other(start), length)

    def longest_dword(self, start: int | None = None) -> tuple:
        return self.alt_word(self.k if start is None else start, self.m)

    def xi_of_delta(self, xi) -> Polynomial:
        return self.group.demazure_word(xi, self.delta)

    # Xi(Delta) times an alternating word -------------------------------------
    def lemma3(self, xi: tuple, n: int, start: int) -> _Combo:
        """Combination equal to Xi(Delta) * alt_word(start, m + n)."""
        if n < 1:
            raise ValueError("n must be positive")
        key = (tuple(xi), n, start)
        if key in self._lemma3:
            return self._lemma3[key]
        g = self.group
        xi = tuple(xi)
        if not xi:
            # Delta*alt(a,m) - Delta*alt(b,m) = (-1)^m B_ab; right-multiply by the
            # alternating word that extends alt(a, m) and kills alt(b, m)
            head = self.alt_word(start, self.m)
            tail = next(v for v in (self.alt_word(self.k, n), self.alt_word(self.l, n))
                        if v[0] != head[-1])
            combo = _Combo.braid(g, (start, self.other(start)), tail, self.sign, "lemma3")
        else:
            c, rest = xi[0], xi[1:]
            combo = self.lemma3(rest, n, start).lmul_letter(c)
            if c != start:
                combo = (combo
                         - self.lemma3(rest, n + 1, c)
                         + self.lemma3(xi, n + 1, c).lmul_poly(g.root(c)))
        self._lemma3[key] = combo
        return combo

    def lemma3_target(self, xi, n, start) -> DescentElement:
        return DescentElement.word(self.group, self.alt_word(start, self.m + n),
                                   self.xi_of_delta(xi))

    # the bare alternating word of length m + 1 --------------------------------
    def a1(self, start: int) -> _Combo:
        """Combination equal to alt_word(start, m + 1)."""
        xi = self.longest_dword()
        value = self.xi_of_delta(xi)
        order = 2 * self.m
        if value != order:
            raise InternalProofError(f"D_w0(Delta) = {value}, expected {order}")
        return self.lemma3(xi, 1, start).lmul_poly(self.group.poly(1) / order).relabel("A1")

    # the Demazure braid element ----------------------------------------------
    def main_family(self, xi: tuple) -> _Combo:
        """Combination equal to Xi(Delta) * B^D_kl."""
        xi = tuple(xi)
        if xi in self._main:
            return self._main[xi]
        g = self.group
        if not xi:
            combo = _Combo.braid(g, (self.k, self.l), (), self.sign, "main-step")
        else:
            c, rest = xi[0], xi[1:]
            # G_c B^D = eps * alt_word(c, m + 1), read off directly
            shifted = demazure_braid_element(g, self.k, self.l).lmul_letter(c)
            (word, coeff), = shifted.terms.items()
            if word != self.alt_word(c, self.m + 1) or not coeff.is_constant():
                raise InternalProofError(f"unexpected G_c B^D = {shifted}")
            eps = coeff.constant_value()
            x_rest = self.xi_of_delta(rest)
            combo = (self.main_family(rest).lmul_letter(c)
                     - self.a1(c).lmul_poly(g.reflect(c, x_rest).scale(eps)))
        self._main[xi] = combo
        return combo

    def main(self) -> _Combo:
        xi = self.longest_dword()
        return self.main_family(xi).lmul_poly(self.group.poly(1) / (2 * self.m))

    def certificate(self, combo: _Combo, target: DescentElement, check: bool = True) -> Certificate:
        cert = Certificate(self.group, (self.k, self.l), target, combo.to_terms())
        if check:
            result = cert_verify(cert)
            if not result.ok:
                raise InternalProofError(f"generated certificate fails; residual {result.residual}")
        return cert


_PROVERS: dict = {}


def prover(group: CoxeterGroup, k: int, l: int) -> Prover:
    key = (id(group), k, l)
    if key not in _PROVERS or _PROVERS[key].group is not group:
        _PROVERS[key] = Prover(group, k, l)
    return _PROVERS[key]


def alt_word(group: CoxeterGroup, k: int, l: int, start: int, length: int) -> tuple:
    """Alternating word in {k, l} of the given length beginning with ``start``."""
    if length < 1:
        raise ValueError("length must be positive")
    return prover(group, k, l).alt_word(start, length)


def cert_lemma3(group, k, l, xi, n, start, check=True) -> Certificate:
    pr = prover(group, k, l)
    return pr.certificate(pr.lemma3(tuple(xi), n, start), pr.lemma3_target(xi, n, start), check)


def cert_A1(group, k, l, start, check=True) -> Certificate:
    pr = prover(group, k, l)
    target = DescentElement.word(group, pr.alt_word(start, pr.m + 1))
    return pr.certificate(pr.a1(start), target, check)


def cert_main(group, k, l, check=True) -> Certificate:
    pr = prover(group, k, l)
    return pr.certificate(pr.main(), demazure_braid_element(group, k, l), check)
