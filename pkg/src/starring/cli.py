"""Command-line front end.

Exit codes: 0 success / sweep passed, 1 counterexample (or failed validation),
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .backends import element_value, format_element, parse_element
from .errors import StarRingError, VerificationFailure
from .ginverse import (
    group_inverse,
    inner_result,
    moore_penrose,
    one_four_inverse,
    one_three_inverse,
)
from .predicates import classify, validate_ring
from .ring import RingDescriptor
from .sweep import THEOREM_IDS, default_workers, verify_theorem
from .theorems import T39_VARIANTS, annihilator, image, t39_decomposition

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_ring(text: str) -> RingDescriptor:
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"--ring: cannot read {text[1:]}: {exc.strerror}") from None
    try:
        return RingDescriptor.from_json(text)
    except StarRingError as exc:
        raise UsageError(f"--ring: {exc}") from None


def _load_element(ring, text):
    if text is None:
        raise UsageError("--element is required for this command")
    try:
        return parse_element(ring, text)
    except StarRingError as exc:
        raise UsageError(f"--element: {exc}") from None


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _certificate(result) -> list[list]:
    return [[name, element_value(x)] for name, x in result.certificate if name != "a"]


def cmd_validate_ring(args) -> int:
    ring = _load_ring(args.ring)
    report = validate_ring(ring, budget=args.budget)
    if args.json:
        _emit(args, json.dumps(report.to_json(), sort_keys=True))
    else:
        mode = "exhaustive" if report.exhaustive else f"sampled (seed {report.seed})"
        lines = [f"{ring}: {'pass' if report.passed else 'FAIL'}, "
                 f"{report.pairs_checked} pairs checked, {mode}"]
        if report.violation:
            v = report.violation
            lines.append(f"  violated {v['law']} at a={json.dumps(v['a'])}, b={json.dumps(v['b'])}")
        _emit(args, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE


def cmd_classify(args) -> int:
    ring = _load_ring(args.ring)
    a = _load_element(ring, args.element)
    flags = asdict(classify(a))
    if args.json:
        _emit(args, json.dumps({"element": element_value(a), "flags": flags}, sort_keys=True))
    else:
        _emit(args, "\n".join(f"{k}: {str(v).lower()}" for k, v in flags.items()))
    return EXIT_OK


def _result_lines(label: str, result) -> list[str]:
    lines = [f"{label}: {format_element(result.value) if result.exists else 'does not exist'}"]
    for name, value in _certificate(result):
        lines.append(f"  {name}: {json.dumps(value, separators=(',', ':'))}")
    return lines


def cmd_mp(args) -> int:
    ring = _load_ring(args.ring)
    a = _load_element(ring, args.element)
    result = moore_penrose(a, oracle=args.oracle)
    if args.json:
        _emit(args, json.dumps({
            "element": element_value(a),
            "exists": result.exists,
            "value": element_value(result.value) if result.exists else None,
            "certificate": _certificate(result),
        }, sort_keys=True))
        return EXIT_OK
    lines = [format_element(result.value) if result.exists else "does not exist"]
    cert = _certificate(result)
    if cert:
        lines.append("certificate ({1,3} and {1,4} witnesses composed as a^+ = y a x):")
        lines += [f"  {name}: {json.dumps(v, separators=(',', ':'))}" for name, v in cert]
    _emit(args, "\n".join(lines))
    return EXIT_OK


_GINV = {
    "inner": ("inner", inner_result),
    "13": ("{1,3}", one_three_inverse),
    "14": ("{1,4}", one_four_inverse),
    "group": ("group", group_inverse),
    "mp": ("Moore-Penrose", moore_penrose),
}


def cmd_ginv(args) -> int:
    ring = _load_ring(args.ring)
    a = _load_element(ring, args.element)
    kinds = list(_GINV) if args.kind == "all" else [args.kind]
    results = {k: _GINV[k][1](a) for k in kinds}
    if args.json:
        _emit(args, json.dumps({
            k: {"exists": r.exists,
                "value": element_value(r.value) if r.exists else None,
                "certificate": _certificate(r)}
            for k, r in results.items()
        }, sort_keys=True))
    else:
        lines = []
        for k, r in results.items():
            lines += _result_lines(_GINV[k][0], r)
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    ring = _load_ring(args.ring)
    if args.theorem not in THEOREM_IDS:
        raise UsageError(f"--theorem: unknown id {args.theorem!r} (choose from {', '.join(THEOREM_IDS)})")
    if args.max_n < 1 or args.max_m < 1:
        raise UsageError("--max-n and --max-m must be positive")
    workers = args.workers if args.workers is not None else default_workers()
    if workers < 1:
        raise UsageError("--workers must be positive")
    report = verify_theorem(ring, args.theorem, args.max_n, args.max_m,
                            workers=workers, oracle=args.oracle)
    if args.json:
        _emit(args, report.dumps())
    else:
        lines = [
            f"{report.theorem_id} on {ring}: {report.elements_scanned} elements, "
            f"params {json.dumps(report.params, sort_keys=True)}",
            f"{'condition':<12} {'evals':>7} {'true':>7} {'agree':>7}",
        ]
        for cid, counts in report.agreement.items():
            if "evaluations" not in counts:
                continue
            lines.append(f"{cid:<12} {counts['evaluations']:>7} {counts['true']:>7} "
                         f"{counts['agree']:>7}")
        lines.append(f"formula outputs checked against the oracle: {report.formula_checks}")
        lines.append(f"counterexamples: {len(report.counterexamples)}")
        for c in report.counterexamples[:20]:
            lines.append(f"  a={json.dumps(c['element'])} {c['condition']} "
                         f"{json.dumps(c['params'], sort_keys=True)}: {c['details']}")
        lines.append(f"elapsed: {report.elapsed_ms:.0f} ms")
        _emit(args, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE


def cmd_decompose(args) -> int:
    ring = _load_ring(args.ring)
    a = _load_element(ring, args.element)
    if args.max_n < 1:
        raise UsageError("--max-n must be positive")
    variants = [args.variant] if args.variant else list(T39_VARIANTS)
    subsets = {
        "right annihilator of a": annihilator(a, "right"),
        "left annihilator of a": annihilator(a, "left"),
        "right annihilator of a*": annihilator(a.star(), "right"),
        "left annihilator of a*": annihilator(a.star(), "left"),
    }
    rows = []
    for n in range(1, args.max_n + 1):
        for v in variants:
            holds, details = t39_decomposition(a, n, v)
            rows.append({"n": n, "holds": holds, **details})
    if args.json:
        _emit(args, json.dumps({
            "element": element_value(a),
            "subsets": {k: [element_value(x) for x in s] for k, s in subsets.items()},
            "images": {
                f"{name} (n={n})": [element_value(x) for x in image(gen(n), side)]
                for n in range(1, args.max_n + 1)
                for name, gen, side in _image_specs(a)
            },
            "decompositions": rows,
        }, sort_keys=True))
        return EXIT_OK
    fmt = lambda s: "{" + ", ".join(format_element(x) for x in s) + "}"  # noqa: E731
    lines = [f"{k} = {fmt(s)}" for k, s in subsets.items()]
    for n in range(1, args.max_n + 1):
        for name, gen, side in _image_specs(a):
            lines.append(f"{name} (n={n}) = {fmt(image(gen(n), side))}")
    for row in rows:
        kind = "direct sum" if row["direct"] else "sum"
        lines.append(
            f"variant {row['variant']} n={row['n']}: R = {row['annihilator']} + {row['image']} "
            f"({kind}): {'holds' if row['holds'] else 'fails'} "
            f"[|sum|={row['sum_size']}, |intersection|={row['intersection_size']}]"
        )
    _emit(args, "\n".join(lines))
    return EXIT_OK


def _image_specs(a):
    from .ring import power

    aa = a * a.star()
    a_a = a.star() * a
    return [
        ("(a*a)^n R", lambda n: power(a_a, n), "right"),
        ("(aa*)^n R", lambda n: power(aa, n), "right"),
        ("R (aa*)^n", lambda n: power(aa, n), "left"),
        ("R (a*a)^n", lambda n: power(a_a, n), "left"),
    ]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starring",
        description="Generalized inverses and Moore-Penrose existence criteria in rings with involution.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, element=False):
        p.add_argument("--ring", required=True,
                       help='ring descriptor JSON, e.g. \'{"kind":"ZMod","n":6}\', or @file')
        if element:
            p.add_argument("--element", help="element JSON, e.g. 2 or [[1,0],[0,1]]")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--out", help="write output to this path instead of stdout")

    p = sub.add_parser("validate-ring", help="check the ring and involution axioms")
    common(p)
    p.add_argument("--budget", type=int, default=10**6, help="maximum number of pairs tested")
    p.set_defaults(func=cmd_validate_ring)

    p = sub.add_parser("classify", help="idempotent / projection / Hermitian / normal / unit flags")
    common(p, element=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("mp", help="Moore-Penrose inverse with its certificate")
    common(p, element=True)
    p.add_argument("--oracle", action="store_true",
                   help="confirm by exhaustive Penrose search (finite rings)")
    p.set_defaults(func=cmd_mp)

    p = sub.add_parser("ginv", help="inner, {1,3}, {1,4}, group and Moore-Penrose inverses")
    common(p, element=True)
    p.add_argument("--kind", choices=["all", *_GINV], default="all")
    p.set_defaults(func=cmd_ginv)

    p = sub.add_parser("verify", help="sweep a theorem over every element of a finite ring")
    common(p)
    p.add_argument("--theorem", required=True, help=f"one of {', '.join(THEOREM_IDS)}")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--oracle", action="store_true",
                   help="also confirm every inner Moore-Penrose computation by exhaustive search")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: available CPUs)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="annihilator / image decompositions of R")
    common(p, element=True)
    p.add_argument("--max-n", type=int, default=1)
    p.add_argument("--variant", type=int, choices=sorted(T39_VARIANTS))
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except StarRingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
