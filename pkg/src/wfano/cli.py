"""Command line surface.

Subcommands: enumerate, show, basket, verify, eval-tower, export.
Exit status: 0 all requested checks pass, 1 check failures, 2 bad input
(unknown family, malformed dataset or tower file).  All numeric output is
exact ("p/q"); all orderings are deterministic.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import classifier
from .blowup import InconsistentError, NotSymmetricError, UnderdeterminedError
from .classifier import (
    INFINITE,
    BC,
    EI,
    QI,
    PositionedError,
    UnknownGimelError,
    load_families,
    verify_family,
)
from .core import NonTerminalError, anticanonical_cube
from .enumerator import enumerate_families
from .fixtures import fixtures_for, load_fixture
from .singularities import basket
from .towers import evaluate, parse_tower_file


def _fail_input(msg: str) -> int:
    print(msg, file=sys.stderr)
    return 2


def cmd_enumerate(args) -> int:
    for w in enumerate_families(args.bound):
        line = " ".join(str(a) for a in w)
        print(f"{line}  degree={w.degree}  kcube={anticanonical_cube(w)}")
    return 0


def cmd_show(args) -> int:
    rec = classifier.family(args.gimel)
    print(f"family {rec.gimel}")
    print(f"weights {rec.weights}")
    print(f"degree {rec.degree}")
    print(f"kcube {rec.minus_k_cube}")
    print(f"invariant {rec.invariant}")
    print(f"ell {rec.ell}")
    answer = classifier.halphen_pencils(args.gimel)
    if answer.count is INFINITE:
        print("pencils infinite")
    else:
        print(f"pencils {answer.count}")
        for p in answer.pencils:
            print(f"  |-{p.n}K| {p.kind.value}: {p.generator_text}")
    for row in rec.basket_rows:
        print(f"row {row.locus} {row.count}x {row.type_text()}")
    return 0


def cmd_basket(args) -> int:
    rec = classifier.family(args.gimel)
    entries = basket(rec.weights).entries
    if not entries:
        print("smooth")
    for e in entries:
        print(f"{e.count} x {e.sing_type} at {e.locus}")
    return 0


def _matrix_text(matrix) -> str:
    return " / ".join(" ".join(str(v) for v in row) for row in matrix)


def _fixture_check_lines(gimel: int):
    checks = []
    for f in fixtures_for(gimel):
        spec = load_fixture(f)
        ev = evaluate(spec)
        types = ",".join(str(c.sing_type) for c in spec.tower.centers)
        checks.append(
            (
                f"neg_k_cube tower [{types}] = {f.neg_k_cube}",
                ev.neg_k_cube == f.neg_k_cube,
                str(f.neg_k_cube),
                str(ev.neg_k_cube),
            )
        )
        if f.gram is not None:
            checks.append(
                (
                    f"gram tower [{types}]",
                    ev.gram_matrix == f.gram and ev.negative_definite is True,
                    _matrix_text(f.gram) + ", negative-definite",
                    _matrix_text(ev.gram_matrix)
                    + (
                        ", negative-definite"
                        if ev.negative_definite
                        else ", not negative-definite"
                    ),
                )
            )
    return checks


def cmd_verify(args) -> int:
    if args.gimel is not None:
        records = [classifier.family(args.gimel)]
    else:
        records = list(load_families())
    failures = 0
    for rec in records:
        rows = [
            (c.name, c.passed, c.expected, c.actual)
            for c in verify_family(rec.gimel)
        ]
        rows.extend(_fixture_check_lines(rec.gimel))
        for name, passed, expected, actual in rows:
            status = "PASS" if passed else "FAIL"
            print(f"{rec.gimel}, {name}, {status}, {expected}, {actual}")
            failures += not passed
    return 1 if failures else 0


def cmd_eval_tower(args) -> int:
    spec = parse_tower_file(args.file)
    ev = evaluate(spec)
    print(f"neg_k_cube = {ev.neg_k_cube}")
    for (a, b, c), value in ev.triples:
        print(f"triple({a},{b},{c}) = {value}")
    if ev.gram_matrix is not None:
        print("gram:")
        for row in ev.gram_matrix:
            print(" ".join(str(v) for v in row))
        print(
            "verdict: negative-definite"
            if ev.negative_definite
            else "verdict: not negative-definite"
        )
    return 0


def _row_flat(row) -> str:
    text = f"{row.count}x {row.type_text()}"
    if isinstance(row.annotation, BC):
        text += f" BC {row.annotation.b} {row.annotation.c}"
    elif isinstance(row.annotation, QI):
        text += f" QI {row.annotation.text}"
    elif isinstance(row.annotation, EI):
        text += f" EI {row.annotation.text}"
    return f"{row.locus} {text}"


def cmd_export(args) -> int:
    records = load_families()
    if args.format == "json":
        payload = {
            "families": [
                {
                    "gimel": rec.gimel,
                    "weights": list(rec.weights),
                    "degree": rec.degree,
                    "kcube": str(rec.minus_k_cube),
                    "invariant": rec.invariant,
                    "ell": rec.ell,
                    "pencils": (
                        "infinite"
                        if rec.halphen_count is INFINITE
                        else rec.halphen_count
                    ),
                    "rows": [
                        {
                            "locus": row.locus,
                            "count": row.count,
                            "type": row.type_text(),
                            **(
                                {"bc": [row.annotation.b, row.annotation.c]}
                                if isinstance(row.annotation, BC)
                                else {}
                            ),
                            **(
                                {"qi": row.annotation.text}
                                if isinstance(row.annotation, QI)
                                else {}
                            ),
                            **(
                                {"ei": row.annotation.text}
                                if isinstance(row.annotation, EI)
                                else {}
                            ),
                        }
                        for row in rec.basket_rows
                    ],
                }
                for rec in records
            ]
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            [
                "gimel", "a1", "a2", "a3", "a4", "degree", "kcube",
                "invariant", "ell", "pencils", "basket",
            ]
        )
        for rec in records:
            writer.writerow(
                [
                    rec.gimel,
                    *rec.weights,
                    rec.degree,
                    str(rec.minus_k_cube),
                    rec.invariant,
                    rec.ell,
                    "infinite" if rec.halphen_count is INFINITE else rec.halphen_count,
                    "; ".join(_row_flat(row) for row in rec.basket_rows),
                ]
            )
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wfano",
        description="Exact invariants, blow-up towers and pencil counts "
        "for the 95 weighted hypersurface families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list admissible weight systems")
    p.add_argument("--bound", type=int, default=40, help="largest weight to try")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("show", help="print one family record")
    p.add_argument("gimel", type=int)
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("basket", help="recompute the singular points")
    p.add_argument("gimel", type=int)
    p.set_defaults(func=cmd_basket)

    p = sub.add_parser("verify", help="recompute and compare everything")
    p.add_argument("--gimel", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval-tower", help="evaluate a tower description file")
    p.add_argument("file")
    p.set_defaults(func=cmd_eval_tower)

    p = sub.add_parser("export", help="dump the dataset")
    p.add_argument("--format", choices=("json", "csv"), required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        PositionedError,
        UnknownGimelError,
        classifier.DuplicateGimelError,
        classifier.MissingGimelError,
        NonTerminalError,
        InconsistentError,
        UnderdeterminedError,
        NotSymmetricError,
        OSError,
        ValueError,
    ) as exc:
        detail = exc.args[0] if exc.args else exc
        return _fail_input(f"error: {detail}")


if __name__ == "__main__":
    sys.exit(main())
