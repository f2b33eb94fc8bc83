"""Acceptance checks, one function per criterion.

Each check returns a :class:`CriterionResult`; ``run_all`` runs them in
order.  The pytest acceptance module and ``nilhecke selftest`` both call
these functions, so the two can never disagree.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .certificate import cert_main, cert_verify
from .descent import (
    DescentElement,
    coxeter_braid_element,
    demazure_braid_element,
    descent_mul,
    key_identity_check,
    normal_form,
    project_to_hecke,
)
from .equivariant import FIXTURE_NAMES, analyze, load_fixture
from .hecke import HeckeElement, antisymmetrizer_over_delta, embed_group, longest_dword, reflect_left
from .oracle import oracle_membership, projection_disproof
from .poly import Polynomial
from .presets import preset
from .randomized import random_element, random_expression, random_polynomial, rng

KEY_IDENTITY_PRESETS = ("A1xA1", "A2", "B2", "B2_sym", "G2", "I2_5", "A3", "B3", "H3")
CERTIFICATE_PRESETS = ("A1xA1", "A2", "B2", "B2_sym", "I2_5", "G2", "G2_sym")
ORACLE_PRESETS = ("A1xA1", "A2")
PROPERTY_PRESETS = ("A1xA1", "A2", "B2", "B2_sym", "G2", "G2_sym", "I2_5", "A3", "B3", "H3")
EXHAUSTIVE_DEGREE = 6
RANDOM_CASES = 100


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "details": self.details}


def _timed(number, title, limit, body):
    start = time.perf_counter()
    passed, details = body()
    elapsed = time.perf_counter() - start
    if limit is not None:
        details["time_limit_s"] = limit
        passed = passed and elapsed < limit
    return CriterionResult(number, title, passed, elapsed, details)


def all_pairs(names):
    for name in names:
        g = preset(name)
        for k, l in g.pairs():
            yield name, g, k, l


def monomials_up_to(group, degree):
    from .oracle import monomials

    for d in range(degree + 1):
        for e in monomials(group.rank, d):
            yield Polynomial.monomial(group.field, e)


# -- criteria -------------------------------------------------------------------

def criterion_key_identity() -> CriterionResult:
    def body():
        rows = {}
        ok = True
        for name, g, k, l in all_pairs(KEY_IDENTITY_PRESETS):
            try:
                report = key_identity_check(g, k, l)
                rows[f"{name}:{k + 1},{l + 1}"] = "residual 0"
            except AssertionError as exc:
                ok = False
                rows[f"{name}:{k + 1},{l + 1}"] = str(exc)
                continue
            ok = ok and report.residual.is_zero()
        return ok, {"pairs": rows}

    return _timed(1, "key identity B = (-1)^m Delta B^D, residual exactly 0", 5.0, body)


def criterion_lower_order() -> CriterionResult:
    def body():
        ok = True
        rows = {}
        for name, g, k, l in all_pairs(KEY_IDENTITY_PRESETS):
            braid = coxeter_braid_element(g, k, l)
            m = g.m(k, l)
            delta = g.delta(k, l)
            sign = -1 if m % 2 else 1
            lower_zero = all(len(w) == m for w in braid.terms)
            lead_k = braid.coefficient(g.alternating(k, l, m))
            lead_l = braid.coefficient(g.alternating(l, k, m))
            good = lower_zero and lead_k == delta * sign and lead_l == -(delta * sign)
            good = good and set(braid.terms) <= {g.alternating(k, l, m), g.alternating(l, k, m)}
            rows[f"{name}:{k + 1},{l + 1}"] = good
            ok = ok and good
        return ok, {"pairs": rows}

    return _timed(2, "lower-order terms vanish, leading coefficients are +-Delta", None, body)


def criterion_root_sequences() -> CriterionResult:
    def body():
        ok = True
        rows = {}
        for name, g, k, l in all_pairs(KEY_IDENTITY_PRESETS):
            data = g.rank2_root_data(k, l)
            prod_k = _product(g, data.sequence_k)
            prod_l = _product(g, data.sequence_l)
            good = (set(data.sequence_k) == set(data.sequence_l)
                    and len(set(data.sequence_k)) == data.m
                    and prod_k == prod_l == data.delta
                    and data.delta.homogeneous_degree() == data.m
                    and g.positivity_soft_check(k, l, 1e-9))
            rows[f"{name}:{k + 1},{l + 1}"] = good
            ok = ok and good
        return ok, {"pairs": rows}

    return _timed(3, "root sequences set-equal, product Delta, numerically positive", None, body)


def _product(g, polys):
    out = g.poly(1)
    for p in polys:
        out = out * p
    return out


def criterion_certificates() -> CriterionResult:
    def body():
        ok = True
        rows = {}
        for name in CERTIFICATE_PRESETS:
            g = preset(name)
            cert = cert_main(g, 0, 1, check=False)
            result = cert_verify(cert)
            degrees = {t.degree() for t in cert.terms}
            good = result.ok and result.residual.is_zero() and degrees == {-g.m(0, 1)}
            rows[name] = {"m": g.m(0, 1), "terms": len(cert.terms), "verified": good}
            ok = ok and good
        ms = {rows[n]["m"] for n in rows}
        return ok and ms >= {2, 3, 4, 5, 6}, {"groups": rows}

    return _timed(4, "B^D membership certificates verify with residual 0, m = 2..6", 30.0, body)


def criterion_oracle() -> CriterionResult:
    def body():
        ok = True
        rows = {}
        for name in ORACLE_PRESETS:
            g = preset(name)
            m = g.m(0, 1)
            target = demazure_braid_element(g, 0, 1)
            found = oracle_membership(target, m + 2, m + 2)
            letter = DescentElement.letter(g, 0)
            disproof = projection_disproof(letter)
            not_found = not oracle_membership(letter, m + 2, m + 2).found
            rows[name] = {"m": m, "B^D member": found.found, "columns": found.columns,
                          "letter disproved": disproof.absent, "letter not found": not_found}
            ok = ok and found.found and disproof.absent and not_found
        return ok, {"groups": rows}

    return _timed(5, "oracle confirms B^D membership (m=2,3); single letter disproved", 60.0, body)


def criterion_longest_operator() -> CriterionResult:
    def body():
        ok = True
        rows = {}
        for name, g, k, l in all_pairs(KEY_IDENTITY_PRESETS):
            m = g.m(k, l)
            delta = g.delta(k, l)
            w0 = HeckeElement.D(g, longest_dword(g, k, l))
            value_ok = w0.act(delta) == 2 * m
            agree = all(antisymmetrizer_over_delta(g, k, l, f) == w0.act(f)
                        for f in monomials_up_to(g, EXHAUSTIVE_DEGREE))
            rows[f"{name}:{k + 1},{l + 1}"] = {"D_w0(Delta)=2m": value_ok, "antisym==D_w0": agree}
            ok = ok and value_ok and agree
        return ok, {"pairs": rows}

    return _timed(6, "D_w0(Delta) = |Gamma_kl|; antisymmetrizer/Delta == D_w0 up to degree 6", None, body)


def criterion_properties() -> CriterionResult:
    def body():
        failures = []
        counts = {"exhaustive_monomials": 0, "random_cases": 0, "expressions": 0, "embed_pairs": 0}
        for name in PROPERTY_PRESETS:
            g = preset(name)
            monos = list(monomials_up_to(g, EXHAUSTIVE_DEGREE))
            counts["exhaustive_monomials"] += len(monos)
            for f in monos:
                for i in range(g.rank):
                    if g.demazure(i, g.demazure(i, f)):
                        failures.append(f"{name}: D_{i + 1}^2 {f}")
                for k, l in g.pairs():
                    m = g.m(k, l)
                    if g.demazure_word(g.alternating(k, l, m), f) != g.demazure_word(g.alternating(l, k, m), f):
                        failures.append(f"{name}: braid D on {f}")
            r = rng(f"properties:{name}")
            for _ in range(RANDOM_CASES):
                counts["random_cases"] += 1
                f, h = random_polynomial(r, g), random_polynomial(r, g)
                i = r.randrange(g.rank)
                lhs = g.demazure(i, f * h)
                rhs = g.demazure(i, f) * h + g.reflect(i, f) * g.demazure(i, h)
                if lhs != rhs:
                    failures.append(f"{name}: twisted Leibniz {f}, {h}")
                if g.demazure(i, g.demazure(i, f)):
                    failures.append(f"{name}: D^2 random {f}")
                for k, l in g.pairs():
                    m = g.m(k, l)
                    if g.demazure_word(g.alternating(k, l, m), f) != g.demazure_word(g.alternating(l, k, m), f):
                        failures.append(f"{name}: braid D random {f}")
            # embedding of the group
            if g.rank == 2:
                pairs = [(v, w) for v in g.elements for w in g.elements]
            else:
                pairs = [(random_element(r, g), random_element(r, g)) for _ in range(10)]
            embeds = {}

            def emb(x):
                if x.index not in embeds:
                    embeds[x.index] = embed_group(g, x)
                return embeds[x.index]

            for v, w in pairs:
                counts["embed_pairs"] += 1
                # full products are too heavy for H3; expand letter by letter there
                lhs = reflect_left(g, v.word, emb(w)) if g.order > 48 else emb(v) * emb(w)
                if lhs != emb(g.multiply(v, w)):
                    failures.append(f"{name}: embed not multiplicative at {v!r},{w!r}")
            for k, l in g.pairs():
                m = g.m(k, l)
                if embed_group(g, g.element_from_word(g.alternating(k, l, m)), g.alternating(k, l, m)) != \
                        embed_group(g, g.element_from_word(g.alternating(l, k, m)), g.alternating(l, k, m)):
                    failures.append(f"{name}: braid image in H nonzero for ({k + 1},{l + 1})")
                if project_to_hecke(coxeter_braid_element(g, k, l)):
                    failures.append(f"{name}: B_kl projects to nonzero")
        # rewriting strategy independence
        for name in ("A2", "B2", "I2_5", "A3"):
            g = preset(name)
            r = rng(f"rewriting:{name}")
            for _ in range(RANDOM_CASES // 4):
                counts["expressions"] += 1
                expr = random_expression(r, g)
                left = normal_form(expr, g, "left")
                right = normal_form(expr, g, "right")
                if left != right or left != _evaluate(expr, g):
                    failures.append(f"{name}: strategy dependence on {expr}")
        return not failures, {"counts": counts, "failures": failures[:20]}

    return _timed(7, "algebra property suites (D^2, Leibniz, braids, embedding, rewriting)", None, body)


def _evaluate(expr, g):
    """Evaluate a formal expression with the fast multiplication (third route)."""
    from .descent import GenAtom, PolyAtom, Sum

    if isinstance(expr, PolyAtom):
        return DescentElement.from_polynomial(g, expr.poly)
    if isinstance(expr, GenAtom):
        return DescentElement.letter(g, expr.index)
    if isinstance(expr, Sum):
        out = DescentElement.zero(g)
        for p in expr.parts:
            out = out + _evaluate(p, g)
        return out
    out = DescentElement.one(g)
    for factor in expr.factors:
        out = descent_mul(out, _evaluate(factor, g))
    return out


def criterion_descent_demo() -> CriterionResult:
    def body():
        ok = True
        rows = {}
        for name in FIXTURE_NAMES:
            report = analyze(load_fixture(name), name)
            rows[name] = {"descends_everywhere": report.descends_everywhere,
                          "braids_vanish": all(b.ok for b in report.braids) if report.braids else None}
            ok = ok and report.ok
        sign = analyze(load_fixture("a1_sign"), "a1_sign").descends[0]
        sign_ok = (not sign) and sign.remainder == 2
        rows["a1_sign_witness"] = sign.remainder.to_text() if not sign else None
        return ok and sign_ok, {"fixtures": rows}

    return _timed(8, "descent at every s_i forces the Demazure braid relations (fixtures)", 5.0, body)


CRITERIA = (
    criterion_key_identity,
    criterion_lower_order,
    criterion_root_sequences,
    criterion_certificates,
    criterion_oracle,
    criterion_longest_operator,
    criterion_properties,
    criterion_descent_demo,
)


def run_all() -> list[CriterionResult]:
    return [check() for check in CRITERIA]
