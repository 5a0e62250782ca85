"""Command-line interface: ``gradedalg <subcommand> ...``.

Exit codes: 0 when the verdict is determined (true or false), 2 when it is
undetermined, 1 on errors (bad input, unsupported route).
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from typing import Sequence

from .algebra import AlgebraError, GradedAlgebra, embed_pair, matrix_shift, opposite, tensor_product, validate
from .constructions import (CocycleError, FiniteGroup, ground_field, group_algebra, quaternion_algebra,
                            small_groups, twisted_group_algebra, upper_triangular)
from .corpus import CORPUS_BUILDERS
from .fileformat import AlgebraFileError, emit, parse, read_file
from .grade_group import GradeGroup
from .linalg import QQ, GF, Field
from .reports import CHECKS, jsonable, run_check, verify_certificate
from .structure import DEFAULT_MAX_ENUM, base_algebra, check_base

EXIT_DETERMINED, EXIT_ERROR, EXIT_UNDETERMINED = 0, 1, 2


class CLIError(Exception):
    pass


# ------------------------------------------------------------- parsing helpers

def parse_field(text: str) -> Field:
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("F"):
        t = t[1:]
    try:
        return GF(int(t))
    except ValueError as exc:
        raise CLIError(f"bad field {text!r}: use Q, Fp or p (prime)") from exc


def parse_group(text: str) -> GradeGroup | FiniteGroup:
    """``Z2``, ``Z2xZ2``, ``ZxZ3``, ``0`` (trivial) or a named finite group (``S3``, ``D4``, ``Q8``, ...)."""
    t = text.replace(" ", "")
    groups = small_groups()
    if t in groups and not groups[t].is_abelian():
        return groups[t]
    if t in ("0", "1", "trivial", "Z1"):
        return GradeGroup()
    free, tors = 0, []
    for part in t.split("x"):
        if part == "Z":
            free += 1
        elif part.startswith("Z") and part[1:].isdigit() and int(part[1:]) >= 2:
            tors.append(int(part[1:]))
        else:
            raise CLIError(f"bad group {text!r}: use products like Z2xZ2, ZxZ3 or names {sorted(groups)}")
    return GradeGroup(free, tuple(tors))


def parse_element(G: GradeGroup, text: str):
    try:
        coords = [int(c) for c in text.split(",")] if text.strip() else []
    except ValueError as exc:
        raise CLIError(f"bad group element {text!r}") from exc
    if len(coords) != G.ngens:
        raise CLIError(f"group element {text!r} needs {G.ngens} coordinate(s)")
    return G(coords)


def parse_shifts(G: GradeGroup, text: str):
    """Shift tuple ``"0;1"`` (elements separated by ';', coordinates by ',')."""
    return [parse_element(G, s) for s in text.split(";")]


def parse_scalar(F: Field, text: str):
    from fractions import Fraction
    try:
        return F(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise CLIError(f"bad scalar {text!r}") from exc


def apply_base(A: GradedAlgebra, base_arg: str | None) -> GradedAlgebra:
    if base_arg is None:
        return A
    if base_arg == "unit":
        return A.with_base([A.unit])
    if base_arg == "all":
        return A.with_base([A.basis_vector(i) for i in range(A.dim)])
    try:
        idx = [int(x) for x in base_arg.split(",")]
    except ValueError as exc:
        raise CLIError(f"bad base {base_arg!r}: use unit, all or comma-separated basis indices") from exc
    if not all(0 <= i < A.dim for i in idx):
        raise CLIError("base index out of range")
    return A.with_base([A.basis_vector(i) for i in idx])


def load(path: str, base: str | None = None) -> GradedAlgebra:
    A = read_file(path)
    return apply_base(A, base)


# -------------------------------------------------------------------- output

def _print(args, payload: dict, summary: str) -> None:
    if args.json:
        print(json.dumps(jsonable(payload), indent=2, sort_keys=False))
    else:
        print(summary)


def _verdict_exit(v) -> int:
    return EXIT_UNDETERMINED if v is None else EXIT_DETERMINED


def _fmt(v) -> str:
    return {True: "true", False: "false", None: "undetermined"}[v]


# ------------------------------------------------------------------ commands

def cmd_validate(args) -> int:
    A = read_file(args.file, check=False)
    rep = validate(A, max_violations=10)
    payload = {"command": ["validate", args.file], "algebra": A.name, "verdict": rep.ok,
               "violations": rep.violations, "dim": A.dim, "field": repr(A.field), "grade_group": str(A.group)}
    if rep.ok and A.base:
        try:
            check_base(A)
            payload["base"] = "ok"
        except AlgebraError as exc:
            payload.update(verdict=False, base=str(exc))
    if rep.ok and A.provenance:
        try:
            read_file(args.file, check=True)
            payload["provenance"] = "reproduces the structure constants"
        except AlgebraFileError as exc:
            payload.update(verdict=False, provenance=exc.message)
    _print(args, payload, f"{A.name or args.file}: {'valid' if payload['verdict'] else 'INVALID'}"
           + ("" if payload["verdict"] else f" {rep.violations or payload.get('base') or payload.get('provenance')}"))
    return EXIT_DETERMINED if payload["verdict"] else EXIT_ERROR


def cmd_check(args) -> int:
    A = load(args.file, args.base)
    rep = run_check(A, args.property, max_enum=args.max_enum, command=["check", args.file, args.property])
    _print(args, rep, f"{A.name or args.file}: {args.property} = {_fmt(rep['verdict'])}"
           + (f" ({rep['reason']})" if rep["reason"] else ""))
    return _verdict_exit(rep["verdict"])


def cmd_construct(args) -> int:
    F = parse_field(args.field)
    kind = args.kind
    a = args.args
    if kind == "group-algebra":
        _arity(a, 1, "group-algebra GROUP")
        A = group_algebra(F, parse_group(a[0]))
    elif kind == "ground-field":
        G = parse_group(a[0]) if a else GradeGroup()
        if not isinstance(G, GradeGroup):
            raise CLIError("the grade group must be abelian")
        A = ground_field(F, G)
    elif kind == "twisted":
        if not a:
            raise CLIError("twisted GROUP [g;h;value ...]")
        G = parse_group(a[0])
        if not isinstance(G, GradeGroup) or not G.is_finite:
            raise CLIError("twisted group algebras need a finite abelian group")
        alpha = {}
        for term in a[1:]:
            parts = term.split(";")
            if len(parts) != 3:
                raise CLIError(f"cocycle value {term!r} must look like g;h;value")
            alpha[(parse_element(G, parts[0]), parse_element(G, parts[1]))] = parse_scalar(F, parts[2])
        A = twisted_group_algebra(F, G, alpha)
    elif kind == "quaternion":
        _arity(a, 2, "quaternion A B")
        A = quaternion_algebra(F, parse_scalar(F, a[0]), parse_scalar(F, a[1]))
    elif kind == "upper-triangular":
        A = upper_triangular(F)
    elif kind == "tensor":
        _arity(a, 2, "tensor FILE1 FILE2")
        X, Y = read_file(a[0]), read_file(a[1])
        if X.group != Y.group:
            X, Y = embed_pair(X, Y)
        A = tensor_product(X, Y, over=args.over)
    elif kind == "opposite":
        _arity(a, 1, "opposite FILE")
        A = opposite(read_file(a[0]))
    elif kind == "matrix-shift":
        _arity(a, 2, "matrix-shift FILE SHIFTS")
        D = read_file(a[0])
        A = matrix_shift(D, parse_shifts(D.group, a[1]))
    else:
        raise CLIError(f"unknown construction {kind!r}")
    A = apply_base(A, args.base)
    text = emit(A)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_DETERMINED


def _arity(a, n, usage):
    if len(a) != n:
        raise CLIError(f"usage: construct {usage}")


def cmd_k0(args) -> int:
    from .k0 import k0_ungraded
    A = load(args.file)
    K = k0_ungraded(A)
    _print(args, {"command": ["k0", args.file], "algebra": A.name, "k0": K.to_json()},
           f"K0({A.name or args.file}) = Z^{K.rank}")
    return EXIT_DETERMINED


def cmd_k0gr(args) -> int:
    from .k0 import k0gr, k0gr_map, torsion_report
    A = load(args.file, args.base)
    if args.map:
        m = k0gr_map(A, args.route, args.max_enum)
        payload = {"command": ["k0gr", args.file, "--map"], "algebra": A.name, "map": m.to_json()}
        _print(args, payload, f"K0gr(base) -> K0gr(A) via {m.route}: {m.matrix}")
        return EXIT_DETERMINED
    K = k0gr(A, args.route, args.max_enum)
    _print(args, {"command": ["k0gr", args.file], "algebra": A.name, "route": args.route or "auto",
                  "k0gr": K.to_json()},
           f"K0gr({A.name or args.file}) = Z^{K.rank}  generators {K.labels}")
    return EXIT_DETERMINED


def cmd_torsion_report(args) -> int:
    from .k0 import k0gr_map, torsion_hypotheses, torsion_report
    A = load(args.file, args.base)
    R = base_algebra(A)
    if args.base_file:
        R_file = read_file(args.base_file)
        if R_file.dim != R.dim or R_file.field != R.field or sorted(R_file.degrees) != sorted(R.degrees):
            raise CLIError("the given base file does not match the designated base of A")
    hyp = torsion_hypotheses(A, args.max_enum)
    m = k0gr_map(A, args.route, args.max_enum)
    n = hyp.free_rank
    tr = torsion_report(m, n)
    notice = "" if hyp.holds else f"hypothesis fails: {hyp.reason}" if hyp.holds is False else "hypothesis undetermined"
    payload = {"command": ["torsion-report", args.file], "algebra": A.name,
               "hypothesis": {"holds": hyp.holds, "graded_azumaya": hyp.graded_azumaya, "rank_over_base": n,
                              "basis_degrees": hyp.basis_degrees, "degrees_in_gamma_star": hyp.degrees_in_gamma_star,
                              "reason": hyp.reason},
               "map": m.to_json(), "torsion": tr.to_json(), "verdict": hyp.holds and tr.is_n2_torsion and tr.localized_iso,
               "notice": notice}
    summary = (f"map {m.matrix}; ZK rank {tr.kernel_rank} invariants {tr.kernel_invariant_factors}; "
               f"CK invariants {tr.cokernel_invariant_factors} free rank {tr.cokernel_free_rank}; "
               f"n^2-torsion {tr.is_n2_torsion}; localized iso {tr.localized_iso}"
               + (f"\n{notice}" if notice else ""))
    _print(args, payload, summary)
    return _verdict_exit(hyp.holds)


def cmd_dfunctor(args) -> int:
    from .k0 import dfunctor_axiom_suite
    A = load(args.file, args.base)
    d = parse_shifts(A.group, args.shifts) if args.shifts else None
    rep = dfunctor_axiom_suite(A, args.k, d, args.max_enum)
    verdict = all(rep.axioms.values()) if rep.hypothesis is True else (False if rep.hypothesis is False else None)
    payload = {"command": ["dfunctor-check", args.file, str(args.k)], "algebra": A.name,
               "verdict": verdict, "report": rep.to_json()}
    lines = [f"{k}: {'pass' if v else 'FAIL'}" for k, v in rep.axioms.items()]
    _print(args, payload, f"hypothesis (d) in Gamma*: {_fmt(rep.hypothesis)}\n" + "\n".join(lines))
    return _verdict_exit(verdict)


def cmd_morita(args) -> int:
    from .modules import verify_morita_identities
    A = load(args.file, args.base)
    d = parse_shifts(A.group, args.shifts)
    rep = verify_morita_identities(A, d)
    payload = {"command": ["morita-check", args.file, args.shifts], "algebra": A.name,
               "verdict": rep.ok, "checks": rep.checks}
    _print(args, payload, "\n".join(f"{k}: {'pass' if v else 'FAIL'}" for k, v in rep.checks.items()))
    return EXIT_DETERMINED


def cmd_verify(args) -> int:
    A = load(args.file, args.base)
    with open(args.report, encoding="utf-8") as fh:
        report = json.load(fh)
    chk = verify_certificate(A, report, max_enum=args.max_enum)
    _print(args, chk.to_json(), f"{chk.status}: {chk.detail}")
    return {"verified": EXIT_DETERMINED, "rejected": EXIT_ERROR}.get(chk.status, EXIT_UNDETERMINED)


def cmd_corpus_run(args) -> int:
    from .modules import exhaustive_shift_iso, matching_shift_iso
    corpus = CORPUS_BUILDERS[args.corpus]()
    rng = random.Random(args.seed)
    results = []
    undetermined = False
    for name, A in corpus.items():
        t0 = time.perf_counter()
        text = emit(A)
        entry = {"name": name, "dim": A.dim, "round_trip": emit(parse(text)) == text, "checks": {}}
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            safe = "".join(c if c.isalnum() or c in "-_()," else "_" for c in name)
            with open(os.path.join(args.out, f"{safe}.json"), "w", encoding="utf-8") as fh:
                fh.write(text)
        for prop in ("simple", "division", "field", "strongly-graded", "azumaya-center"):
            v = run_check(A, prop, max_enum=args.max_enum)["verdict"]
            entry["checks"][prop] = v
            undetermined |= v is None
        # seeded shift-isomorphism spot checks against exhaustive search
        if A.field.is_finite and A.group.is_finite:
            elems = A.group.elements()
            agree = 0
            for _ in range(args.samples):
                n = rng.randint(1, 2)
                d = [rng.choice(elems) for _ in range(n)]
                a = [rng.choice(elems) for _ in range(n)]
                m = matching_shift_iso(A, d, a, args.max_enum).verdict
                e = exhaustive_shift_iso(A, d, a, args.max_enum).verdict
                agree += m is None or e is None or m == e
            entry["shift_iso_agreement"] = f"{agree}/{args.samples}"
        entry["timing_seconds"] = round(time.perf_counter() - t0, 6)
        results.append(entry)
    payload = {"command": ["corpus-run", args.corpus], "seed": args.seed, "results": results}
    summary = "\n".join(f"{r['name']:<24} dim {r['dim']:>2}  round-trip {r['round_trip']}  "
                        + "  ".join(f"{k}={_fmt(v)}" for k, v in r["checks"].items()) for r in results)
    _print(args, payload, summary)
    return EXIT_UNDETERMINED if undetermined else EXIT_DETERMINED


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the full JSON report")
    common.add_argument("--field", default="Q", help="ground field for constructions: Q or Fp / p (default Q)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks (default 0)")
    common.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM,
                        help=f"finite-field enumeration cap (default {DEFAULT_MAX_ENUM})")
    common.add_argument("--base", default=None,
                        help="override the designated base: unit, all, or comma-separated basis indices")

    p = argparse.ArgumentParser(prog="gradedalg",
                                description="Exact computations with group-graded finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="parse and validate an AlgebraFile")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", parents=[common], help="decide a structural property")
    s.add_argument("file")
    s.add_argument("property", choices=sorted(CHECKS))
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("construct", parents=[common], help="build an algebra and emit its AlgebraFile")
    s.add_argument("kind", choices=["group-algebra", "ground-field", "twisted", "quaternion", "upper-triangular",
                                    "tensor", "opposite", "matrix-shift"])
    s.add_argument("args", nargs="*")
    s.add_argument("--over", choices=["field", "base"], default="field", help="tensor over k or over the bases")
    s.add_argument("--out", help="write to this path instead of stdout")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("k0", parents=[common], help="ungraded K0 (free on simple blocks)")
    s.add_argument("file")
    s.set_defaults(func=cmd_k0)

    s = sub.add_parser("k0gr", parents=[common], help="graded K0, or with --map the map induced by the base")
    s.add_argument("file")
    s.add_argument("--route", choices=["division", "matrix", "dade"])
    s.add_argument("--map", action="store_true")
    s.set_defaults(func=cmd_k0gr)

    s = sub.add_parser("torsion-report", parents=[common], help="kernel/cokernel of the base K0 map")
    s.add_argument("file")
    s.add_argument("base_file", nargs="?", help="optional AlgebraFile of the base (checked against A's base)")
    s.add_argument("--route", choices=["division", "matrix", "dade"])
    s.set_defaults(func=cmd_torsion_report)

    s = sub.add_parser("dfunctor-check", parents=[common], help="D-functor axioms for CK0 and ZK0")
    s.add_argument("file")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--shifts", help="shift tuple of length k, e.g. '0;1'")
    s.set_defaults(func=cmd_dfunctor)

    s = sub.add_parser("morita-check", parents=[common], help="verify the graded Morita identities")
    s.add_argument("file")
    s.add_argument("shifts", help="shift tuple, e.g. '0;1' or '1,0;0,1'")
    s.set_defaults(func=cmd_morita)

    s = sub.add_parser("verify-certificate", parents=[common], help="re-check a report's certificate")
    s.add_argument("file")
    s.add_argument("report")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("corpus-run", parents=[common], help="run the checks over a built-in corpus")
    s.add_argument("--corpus", choices=sorted(CORPUS_BUILDERS), default="all")
    s.add_argument("--out", help="also write every corpus AlgebraFile into this directory")
    s.add_argument("--samples", type=int, default=5, help="random shift-isomorphism spot checks per algebra")
    s.set_defaults(func=cmd_corpus_run)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AlgebraFileError as exc:
        err = exc.to_json()
    except (CLIError, CocycleError, OSError, ValueError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
    if getattr(args, "json", False):
        print(json.dumps(err, indent=2))
    else:
        where = ", ".join(f"{k} {err[k]}" for k in ("line", "field") if err.get(k) is not None)
        print(f"error: {err.get('message')}" + (f" ({where})" if where else ""), file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
