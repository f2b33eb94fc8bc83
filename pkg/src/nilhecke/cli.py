"""Command-line entry point: ``nilhecke <verb> [options]``.

Exit status is 0 when the requested check holds, 1 when it fails
mathematically (the JSON report carries the residual), and 2 on usage or
configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coxeter import CoxeterError, CoxeterGroup, IdentityViolationError
from .descent import DescentElement, demazure_braid_element, key_identity_check, normal_form, parse_expression
from .equivariant import FIXTURE_NAMES, ModuleError, analyze, load_fixture, load_module_file
from .poly import PolynomialError
from .presets import PRESET_NAMES, preset
from .scalar import FieldError

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(report: dict, out: str | None = None) -> None:
    text = dumps(report)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def load_group(args) -> CoxeterGroup:
    if args.group and args.preset:
        raise UsageError("give either --preset or --group, not both")
    if args.group:
        try:
            return CoxeterGroup.from_config(_read_json(args.group))
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed group config {args.group}: {exc}") from exc
    name = args.preset or "A2"
    if name not in PRESET_NAMES:
        raise UsageError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    return preset(name)


def parse_pair(text: str | None, group: CoxeterGroup) -> tuple[int, int]:
    if text is None:
        return 0, 1
    try:
        k, l = (int(x) - 1 for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--pair expects 'k,l', got {text!r}") from exc
    if k == l or not (0 <= k < group.rank and 0 <= l < group.rank):
        raise UsageError(f"--pair {text} is not two distinct generators in 1..{group.rank}")
    return k, l


def _pairs(args, group):
    if args.pair is not None:
        return [parse_pair(args.pair, group)]
    return group.pairs()


# -- verbs ------------------------------------------------------------------------

def cmd_key_identity(args) -> int:
    group = load_group(args)
    reports, ok = [], True
    for k, l in _pairs(args, group):
        try:
            reports.append(key_identity_check(group, k, l).to_json())
        except IdentityViolationError as exc:
            ok = False
            reports.append(exc.witness.to_json() if exc.witness else {"error": str(exc)})
    _emit({"verb": "key-identity", "group": group.name or group.to_config(), "ok": ok,
           "pairs": reports}, args.out)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_certify(args) -> int:
    from .certificate import InternalProofError, cert_main

    group = load_group(args)
    k, l = parse_pair(args.pair, group)
    try:
        cert = cert_main(group, k, l)
    except InternalProofError as exc:
        _emit({"verb": "certify", "ok": False, "error": str(exc)})
        return EXIT_FALSE
    data = cert.to_json()
    if args.out:
        Path(args.out).write_text(dumps(data) + "\n")
    summary = {"verb": "certify", "ok": True, "pair": [k + 1, l + 1], "terms": len(cert.terms),
               "sources": cert.sources(), "out": args.out}
    print(dumps(summary if args.out else data))
    return EXIT_OK


def cmd_check_cert(args) -> int:
    from .certificate import Certificate, cert_verify

    data = _read_json(args.file)
    try:
        cert = Certificate.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed certificate: {exc}") from exc
    result = cert_verify(cert)
    _emit({"verb": "check-cert", "ok": result.ok, "terms": len(cert.terms),
           "residual": result.residual.to_json()}, args.out)
    return EXIT_OK if result.ok else EXIT_FALSE


def _oracle_target(args, group, k, l) -> DescentElement:
    if args.expr:
        try:
            expr = parse_expression(args.expr, group)
        except ValueError as exc:
            raise UsageError(f"cannot parse --expr: {exc}") from exc
        return normal_form(expr, group)
    if args.target == "letter":
        return DescentElement.letter(group, k)
    return demazure_braid_element(group, k, l)


def cmd_oracle(args) -> int:
    from .oracle import oracle_membership, projection_disproof

    group = load_group(args)
    k, l = parse_pair(args.pair, group)
    if args.word_cap < 1 or args.degree_cap < 1:
        raise UsageError("caps must be positive")
    target = _oracle_target(args, group, k, l)
    result = oracle_membership(target, args.word_cap, args.degree_cap)
    report = {"verb": "oracle", "target": target.to_json(), "word_cap": args.word_cap,
              "degree_cap": args.degree_cap, "membership": result.to_json()}
    if not result.found:
        report["disproof"] = projection_disproof(target).to_json()
    _emit(report, args.out)
    return EXIT_OK if result.found else EXIT_FALSE


def cmd_demo_descent(args) -> int:
    if args.module:
        try:
            modules = [(args.module, load_module_file(args.module))]
        except OSError as exc:
            raise UsageError(f"cannot read {args.module}: {exc.strerror}") from exc
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise UsageError(f"malformed module file {args.module}: {exc}") from exc
    else:
        names = [args.fixture] if args.fixture else list(FIXTURE_NAMES)
        for n in names:
            if n not in FIXTURE_NAMES:
                raise UsageError(f"unknown fixture {n!r}")
        modules = [(n, load_fixture(n)) for n in names]
    reports = [analyze(module, name).to_json() for name, module in modules]
    ok = all(r["ok"] for r in reports)
    _emit({"verb": "demo-descent", "ok": ok, "modules": reports}, args.out)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_selftest(args) -> int:
    from .checks import run_all

    results = run_all()
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    report = {"verb": "selftest", "ok": ok, "criteria": [r.to_json() for r in results]}
    if args.out:
        Path(args.out).write_text(dumps(report) + "\n")
    print(dumps({"ok": ok, "passed": sum(r.passed for r in results), "total": len(results)}))
    return EXIT_OK if ok else EXIT_FALSE


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilhecke",
                                     description="Exact checks for Demazure descent and nil Hecke algebras.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def group_opts(p):
        p.add_argument("--preset", help=f"built-in group ({', '.join(PRESET_NAMES)}); default A2")
        p.add_argument("--group", metavar="FILE", help="group config JSON")
        p.add_argument("--pair", metavar="K,L", help="1-based generator pair")
        p.add_argument("--out", metavar="FILE", help="write the JSON report here")

    p = sub.add_parser("key-identity", help="check B_kl = (-1)^m Delta B^D_kl")
    group_opts(p)
    p.set_defaults(func=cmd_key_identity)

    p = sub.add_parser("certify", help="build the membership certificate for B^D_kl")
    group_opts(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("check-cert", help="verify a certificate file by expansion")
    p.add_argument("file")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_check_cert)

    p = sub.add_parser("oracle", help="truncated linear-algebra membership test")
    group_opts(p)
    p.add_argument("--word-cap", type=int, default=None, help="max word length (default m+2)")
    p.add_argument("--degree-cap", type=int, default=None, help="max monomial degree (default m+2)")
    p.add_argument("--target", choices=("demazure-braid", "letter"), default="demazure-braid")
    p.add_argument("--expr", help="target as an expression, e.g. '(* G1 G2 G1)'")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("demo-descent", help="descent and braid checks on equivariant modules")
    p.add_argument("--module", metavar="FILE", help="module JSON file")
    p.add_argument("--fixture", help="one shipped fixture by name")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_demo_descent)

    p = sub.add_parser("selftest", help="run every acceptance check")
    p.add_argument("--out", metavar="FILE", help="full JSON report")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.verb == "oracle":
            group = load_group(args)
            k, l = parse_pair(args.pair, group)
            m = group.m(k, l)
            args.word_cap = m + 2 if args.word_cap is None else args.word_cap
            args.degree_cap = m + 2 if args.degree_cap is None else args.degree_cap
        return args.func(args)
    except UsageError as exc:
        print(f"nilhecke: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CoxeterError, FieldError, ModuleError, PolynomialError) as exc:
        print(f"nilhecke: error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
