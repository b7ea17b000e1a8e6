"""Command-line front end.

Subcommands: group, basis, compose, hat, counterexample, verify.
Exit codes: 0 success, 1 assertion or property failure, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import fibred, hat, sampling
from .groups import (
    BoundExceededError,
    GroupError,
    GroupSpecError,
    center,
    frattini,
    group_from_spec,
    automorphisms,
    small_groups_catalog,
    subgroups,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _load_element(arg: str) -> fibred.FibredElement:
    text = arg.strip()
    if not text.startswith("{"):
        text = Path(arg).read_text(encoding="utf-8")
    return fibred.element_from_json(json.loads(text))


def _emit(data, as_json: bool, text_lines):
    if as_json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_group(args) -> int:
    G = group_from_spec(args.spec)
    aut = automorphisms(G)
    report = {
        "spec": args.spec,
        "name": G.name,
        "order": G.order,
        "abelian": G.is_abelian,
        "center_order": center(G).order,
        "frattini_order": frattini(G).order,
        "subgroup_count": len(subgroups(G)),
        "aut_order": len(aut.all),
        "out_order": aut.out_order,
    }
    _emit(report, args.json, [
        f"group {G.name}: order {G.order}"
        + (" (abelian)" if G.is_abelian else ""),
        f"  center order    {report['center_order']}",
        f"  frattini order  {report['frattini_order']}",
        f"  subgroups       {report['subgroup_count']}",
        f"  |Aut| = {report['aut_order']}, |Out| = {report['out_order']}",
    ])
    return EXIT_OK


def cmd_basis(args) -> int:
    G = group_from_spec(args.group)
    C = group_from_spec(args.fibre)
    classes = fibred.subcharacter_classes(G, C)
    data = {
        "group": G.name,
        "fibre": C.name,
        "count": len(classes),
        "classes": [fibred.subcharacter_to_json(sc) for sc in classes],
    }
    lines = [f"basis of the {C.name}-monomial Burnside ring of {G.name}: "
             f"{len(classes)} classes"]
    for sc in classes:
        els = ",".join(G.label(x) for x in sc.D.elements)
        vals = ",".join(C.label(v) for v in sc.delta.images)
        lines.append(f"  D = {{{els}}}  delta = ({vals})")
    _emit(data, args.json, lines)
    return EXIT_OK


def cmd_compose(args) -> int:
    X = _load_element(args.left)
    Y = _load_element(args.right)
    result = fibred.compose(X, Y, check=args.check)
    data = fibred.element_to_json(result)
    lines = [f"composition over {result.left.name} x {result.right.name} "
             f"({len(result.terms)} terms)"
             + ("; formula/oracle agreement checked" if args.check else "")]
    for cls, coeff in result.sorted_terms():
        lines.append(f"  {coeff:+d} * {cls.describe()}")
    _emit(data, args.json, lines)
    return EXIT_OK


def cmd_hat(args) -> int:
    G = group_from_spec(args.group)
    C = group_from_spec(args.fibre)
    prime = C.order in (2, 3, 5, 7, 11, 13)
    dim, basis = hat.hat_dimension(G, C, args.catalog_max_order)
    data = {"group": G.name, "fibre": C.name, "dimension": dim,
            "prime_fibre": prime}
    lines = [f"quotient algebra of {G.name} with fibre {C.name}: "
             f"dimension {dim}"]
    if prime:
        gens = hat.hat_basis_prime(G, C)
        report = hat.verify_hat_vs_quotient(G, C, args.catalog_max_order)
        table = []
        for a in gens:
            row = []
            for b in gens:
                prod = hat.hat_multiply(a, b)
                if prod.is_zero():
                    row.append(None)
                else:
                    ((g, coeff),) = prod.coefficients.items()
                    row.append({"generator": gens.index(g),
                                "coeff": str(coeff)})
            table.append(row)
        data.update({
            "generators": [g.describe() for g in gens],
            "table": table,
            "cross_check_ok": report["ok"],
            "cross_check_pairs": report["pairs"],
            "mismatches": report["mismatches"],
        })
        lines.append(f"  structural generators: {len(gens)} "
                     f"(X: {sum(1 for g in gens if g.variant == 'X')}, "
                     f"Y: {sum(1 for g in gens if g.variant == 'Y')})")
        for i, g in enumerate(gens):
            lines.append(f"    [{i}] {g.describe()}")
        lines.append("  multiplication table "
                     "(entries are generator indices, . = 0):")
        for i, row in enumerate(table):
            cells = " ".join(f"{cell['generator']:>3d}" if cell else "  ."
                             for cell in row)
            lines.append(f"    [{i:>3d}] {cells}")
        lines.append("  cross-check against compose-then-reduce: "
                     + ("ok" if report["ok"] else "MISMATCH"))
        if not report["ok"]:
            _emit(data, args.json, lines)
            return EXIT_FAILURE
    else:
        lines.append("  fibre order is not prime: brute-force dimension "
                     "only, no closed-form table")
    _emit(data, args.json, lines)
    return EXIT_OK


def cmd_counterexample(args) -> int:
    bound = min(args.catalog_max_order, 7)
    try:
        report = hat.counterexample_verify(catalog_bound=max(bound, 7))
    except hat.VerificationError as exc:
        if args.json:
            print(json.dumps({"ok": False, "failed_step": exc.step,
                              "detail": exc.detail}, indent=2))
        else:
            print(f"FAILED at step: {exc.step}  ({exc.detail})")
        return EXIT_FAILURE
    lines = [
        "counterexample verification over "
        f"{report['left_group']} / {report['right_group']} with fibre "
        f"{report['fibre']}:"]
    for stepinfo in report["steps"]:
        lines.append(f"  PASS {stepinfo['name']}"
                     + (f"  [{stepinfo['detail']}]"
                        if stepinfo["detail"] else ""))
    lines.append(f"  searched groups: "
                 + ", ".join(report["searched_groups"]))
    lines.append("  all steps passed: the idempotent survives in the "
                 "quotient on both sides")
    _emit(report, args.json, lines)
    return EXIT_OK


def _verify_axioms(rng, failures):
    # every composition here also runs the orbit oracle (check=True)
    from .fibred import compose, element_of, identity_element
    C2 = group_from_spec("C2")
    C4 = group_from_spec("C4")
    for C in (C2, C4):
        for G in small_groups_catalog(6):
            idG = identity_element(G, C)
            for X in fibred.transitive_basis(G, G, C):
                e = element_of(X)
                if (compose(idG, e, check=True) != e
                        or compose(e, idG, check=True) != e):
                    failures.append(f"identity law fails on {G.name} "
                                    f"({C.name}): {X.describe()}")
    for _ in range(50):
        C = group_from_spec(rng.choice(["C2", "C3"]))
        gs = [sampling.random_group(rng, 6) for _ in range(4)]
        X = sampling.random_transitive_class(rng, gs[0], gs[1], C)
        Y = sampling.random_transitive_class(rng, gs[1], gs[2], C)
        Z = sampling.random_transitive_class(rng, gs[2], gs[3], C)
        ex, ey, ez = map(element_of, (X, Y, Z))
        left = compose(compose(ex, ey, check=True), ez, check=True)
        right = compose(ex, compose(ey, ez, check=True), check=True)
        if left != right:
            failures.append("associativity fails on "
                            f"{[g.name for g in gs]}")


def _verify_oracle(rng, failures):
    from .fibred import compose, element_of
    for i in range(60):
        C = group_from_spec(rng.choice(["C2", "C3", "C4"]))
        gs = [sampling.random_group(rng, 8) for _ in range(3)]
        X = sampling.random_transitive_class(rng, gs[0], gs[1], C)
        Y = sampling.random_transitive_class(rng, gs[1], gs[2], C)
        try:
            compose(element_of(X), element_of(Y), check=True)
        except GroupError as exc:
            failures.append(f"oracle disagreement on sample {i}: {exc}")


def _verify_prime(rng, failures):
    for spec in ("C2", "C3", "C4", "C2xC2", "S3"):
        G = group_from_spec(spec)
        for cspec in ("C2", "C3"):
            C = group_from_spec(cspec)
            report = hat.verify_hat_vs_quotient(G, C, check=True)
            if not report["ok"]:
                failures.append(f"hat product mismatch for {spec}/{cspec}: "
                                f"{report['mismatches'][:2]}")


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    failures = []
    suites = {
        "axioms": _verify_axioms,
        "oracle": _verify_oracle,
        "prime": _verify_prime,
    }
    chosen = list(suites) if args.suite == "all" else [args.suite]
    for name in chosen:
        before = len(failures)
        suites[name](rng, failures)
        status = "ok" if len(failures) == before else "FAILED"
        if not args.json:
            print(f"suite {name}: {status}")
    if args.json:
        print(json.dumps({"suites": chosen, "seed": args.seed,
                          "failures": failures, "ok": not failures},
                         indent=2))
    elif failures:
        for f in failures:
            print(f"  {f}")
    return EXIT_FAILURE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibredburnside",
        description="Monomial Burnside rings, fibred biset composition, "
                    "and the quotient algebra over finite groups.")
    parser.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON")
    parser.add_argument("--catalog-max-order", type=int, default=15,
                        metavar="N", help="largest catalog order (<= 15)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="census of a group spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("basis", help="subcharacter basis of the ring")
    p.add_argument("group")
    p.add_argument("fibre")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("compose", help="compose two elements "
                                       "(JSON inline or file path)")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--check", action="store_true",
                   help="also run the orbit oracle and compare")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("hat", help="quotient-algebra census and table")
    p.add_argument("group")
    p.add_argument("fibre")
    p.set_defaults(func=cmd_hat)

    p = sub.add_parser("counterexample",
                       help="run the flagship regression")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=["axioms", "oracle", "prime", "all"],
                   default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not 1 <= args.catalog_max_order <= 15:
        parser.error("--catalog-max-order must be between 1 and 15")
    try:
        return args.func(args)
    except (GroupSpecError, json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GroupError, BoundExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
