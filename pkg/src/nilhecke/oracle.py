"""Brute-force membership oracle for the two-sided ideal generated by B.

The oracle truncates by word length and monomial degree, spans the ideal
elements ``mu * G_u * B_ab * G_v`` of the target's degree, and row-reduces
over the coefficient field.  It shares nothing with the certificate
generator beyond the descent-algebra multiplication.

A separate disproof uses the projection to the nil Hecke algebra: every
braid element projects to zero there, so anything with nonzero projection
is outside the ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .coxeter import CoxeterGroup
from .descent import DescentElement, coxeter_braid_element, project_to_hecke
from .poly import Polynomial


@dataclass
class OracleResult:
    found: bool
    status: str  # "member" | "inconclusive"
    combination: list = field(default_factory=list)  # (coeff, exps, u, gen, v)
    columns: int = 0
    rank: int = 0

    def __bool__(self):
        return self.found

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "status": self.status,
            "columns": self.columns,
            "rank": self.rank,
            "combination": [
                {"coeff": c.to_json(), "monomial": list(e), "left": [i + 1 for i in u],
                 "gen": [gen[0] + 1, gen[1] + 1], "right": [i + 1 for i in v]}
                for c, e, u, gen, v in self.combination
            ],
        }


def double_letter_free_words(letters, max_length: int) -> list[tuple]:
    out = [()]
    frontier = [()]
    for _ in range(max_length):
        frontier = [w + (a,) for w in frontier for a in letters if not w or w[-1] != a]
        out.extend(frontier)
    return out


def monomials(nvars: int, degree: int) -> list[tuple]:
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    return [(d,) + rest for d in range(degree, -1, -1) for rest in monomials(nvars - 1, degree - d)]


def _vector(x: DescentElement) -> dict:
    return {(w, e): c for w, f in x.terms.items() for e, c in f.terms.items()}


class _Echelon:
    """Incremental sparse elimination; pivot = largest coordinate of each row."""

    def __init__(self):
        self.rows: dict = {}  # pivot -> (vec, combo) with vec[pivot] == 1

    def reduce(self, vec: dict, combo: dict) -> tuple[dict, dict]:
        vec, combo = dict(vec), dict(combo)
        while vec:
            pivot = max(vec)
            if pivot not in self.rows:
                break
            factor = vec[pivot]
            row, row_combo = self.rows[pivot]
            for key, val in row.items():
                s = vec.get(key)
                s = -factor * val if s is None else s - factor * val
                if s:
                    vec[key] = s
                else:
                    vec.pop(key, None)
            for key, val in row_combo.items():
                s = combo.get(key)
                s = -factor * val if s is None else s - factor * val
                if s:
                    combo[key] = s
                else:
                    combo.pop(key, None)
        return vec, combo

    def insert(self, vec: dict, combo: dict) -> bool:
        vec, combo = self.reduce(vec, combo)
        if not vec:
            return False
        pivot = max(vec)
        inv = vec[pivot].inv()
        self.rows[pivot] = ({k: v * inv for k, v in vec.items()},
                            {k: v * inv for k, v in combo.items()})
        return True


def spanning_elements(group: CoxeterGroup, degree: int, word_cap: int, degree_cap: int,
                      letters=None):
    """Yield ``(label, element)`` for every mu*u*B_ab*v of graded ``degree`` within caps."""
    letters = sorted(set(range(group.rank) if letters is None else letters))
    words = double_letter_free_words(letters, word_cap)
    gens = [(a, b) for a in letters for b in letters if a < b]
    braids = {gen: coxeter_braid_element(group, *gen) for gen in gens}
    for gen in gens:
        for u, v in product(words, words):
            mu_degree = degree + len(u) + len(v)
            if not 0 <= mu_degree <= degree_cap:
                continue
            core = DescentElement.word(group, u) * braids[gen] * DescentElement.word(group, v)
            if not core:
                continue
            for e in monomials(group.rank, mu_degree):
                if any(e[i] for i in range(group.rank) if i not in letters):
                    continue
                mu = Polynomial.monomial(group.field, e)
                yield (e, u, gen, v), core.lmul_poly(mu)


def oracle_membership(target: DescentElement, word_cap: int, degree_cap: int,
                      letters=None) -> OracleResult:
    """Decide whether ``target`` lies in the truncated span; exact linear algebra.

    A negative answer only means "not found within these caps".
    """
    if word_cap < 1 or degree_cap < 1:
        raise ValueError("caps must be positive")
    group = target.group
    if target.is_zero():
        return OracleResult(True, "member", [])
    degree = target.degree()
    if degree is None:
        raise ValueError("oracle needs a homogeneous target")
    if letters is None:
        letters = sorted({i for w in target.terms for i in w}) or range(group.rank)
        if len(letters) < 2:
            letters = range(group.rank)
    ech = _Echelon()
    labels = []
    for label, element in spanning_elements(group, degree, word_cap, degree_cap, letters):
        labels.append(label)
        ech.insert(_vector(element), {len(labels) - 1: group.field.one})
    residual, combo = ech.reduce(_vector(target), {})
    if residual:
        return OracleResult(False, "inconclusive", [], len(labels), len(ech.rows))
    # target - sum(combo_j * col_j) == 0  =>  target = sum(-combo_j * col_j)
    combination = [(-c,) + labels[j] for j, c in sorted(combo.items())]
    return OracleResult(True, "member", combination, len(labels), len(ech.rows))


def combination_value(group: CoxeterGroup, combination) -> DescentElement:
    """Re-expand an oracle combination (independent sanity check)."""
    total = DescentElement.zero(group)
    for c, e, u, gen, v in combination:
        core = DescentElement.word(group, u) * coxeter_braid_element(group, *gen) * DescentElement.word(group, v)
        total = total + core.lmul_poly(Polynomial.monomial(group.field, e, c))
    return total


@dataclass
class Disproof:
    absent: bool
    projection: object
    generators_vanish: bool

    def to_json(self) -> dict:
        return {"provably_absent": self.absent, "generators_project_to_zero": self.generators_vanish,
                "projection": self.projection.to_json()}


def projection_disproof(target: DescentElement) -> Disproof:
    """Prove non-membership when the nil Hecke projection of ``target`` is nonzero.

    Sound because the projection is an algebra map killing every B_ab; that
    vanishing is recomputed here rather than assumed.
    """
    group = target.group
    vanish = all(not project_to_hecke(coxeter_braid_element(group, a, b)) for a, b in group.pairs())
    proj = project_to_hecke(target)
    return Disproof(absent=vanish and not proj.is_zero(), projection=proj, generators_vanish=vanish)
