"""Command-line front end.

Commands: parse, evaluate, invert, fingerprint, compare, is-affine,
verify.  Inputs are positional: a file path, "-" for stdin, or
"expr:..." for an inline word.  Reports are JSON by default (complex
numbers as [re, im] pairs, keys sorted, byte-identical for a fixed seed
and configuration) or plain text with --output text.

Exit codes: 0 ok/equal/true, 1 distinct/false/failed-suite, 2 parse
error, 3 numeric error, 4 inconclusive comparison.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._backend import backend_name
from .algebra import AutomorphismWord, evaluate, invert, theta_normalize
from .fingerprint import (
    DEFAULT_COUNT,
    DEFAULT_RADII,
    DEFAULT_SEED,
    EPS_DISTINCT,
    EPS_EQ,
    affineness_report,
    compare,
    fingerprint,
)
from .lang import ParseError, _fmt_entry, parse_automorphism, parse_point, serialize
from .verify import VerifyConfig, run_all
from .wirtinger import NonFiniteSampleError, levi_log_norm

EXIT_OK = 0
EXIT_DISTINCT = 1
EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_INCONCLUSIVE = 4


def _radii(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad radii list {text!r}")
    if not values or min(values) <= 0:
        raise argparse.ArgumentTypeError("radii must be positive numbers")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holoprint",
        description=(
            "Finite fingerprints of polynomial automorphisms of C^n: "
            "1-jets plus sampled Levi matrices of log||F||."
        ),
    )
    parser.add_argument("--version", action="version", version=f"holoprint {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs=1, sampling=True):
        for idx in range(inputs):
            name = "input" if inputs == 1 else f"input{idx + 1}"
            p.add_argument(
                name,
                help="word source: a file path, '-' for stdin, or 'expr:WORD'",
            )
        p.add_argument("--n", type=int, required=True, help="dimension of C^n")
        if sampling:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
            p.add_argument("--radii", type=_radii, default=DEFAULT_RADII)
            p.add_argument("--count", type=int, default=DEFAULT_COUNT,
                           help="sample points per radius")
        p.add_argument("--eps-eq", type=float, default=EPS_EQ)
        p.add_argument("--eps-distinct", type=float, default=EPS_DISTINCT)
        p.add_argument("--psd-tol", type=float, default=1e-9)
        p.add_argument("--output", choices=("json", "text"), default="json")

    p = sub.add_parser("parse", help="check a word and print its canonical form")
    common(p, sampling=False)

    p = sub.add_parser("evaluate", help="apply a word to a point")
    common(p, sampling=False)
    p.add_argument("--at", required=True, metavar="POINT",
                   help="comma-separated complex entries, e.g. '1,0' or '(1+2i),3'")

    p = sub.add_parser("invert", help="print the canonical form of the inverse word")
    common(p, sampling=False)

    p = sub.add_parser("fingerprint", help="jet at 0 plus sampled Levi matrices")
    common(p)
    p.add_argument("--at", metavar="POINT", default=None,
                   help="also report the normalized Levi matrix at this point")

    p = sub.add_parser("compare", help="decide whether two words are the same map")
    common(p, inputs=2)

    p = sub.add_parser("is-affine", help="test whether a word is an affine map")
    common(p)

    p = sub.add_parser("verify", help="run the seeded invariant suites")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--radii", type=_radii, default=DEFAULT_RADII)
    p.add_argument("--count", type=int, default=DEFAULT_COUNT)
    p.add_argument("--eps-eq", type=float, default=EPS_EQ)
    p.add_argument("--eps-distinct", type=float, default=EPS_DISTINCT)
    p.add_argument("--psd-tol", type=float, default=1e-9)
    p.add_argument("--output", choices=("json", "text"), default="json")

    return parser


# --- report plumbing ----------------------------------------------------


def _read_input(source: str) -> str:
    if source.startswith("expr:"):
        return source[len("expr:"):]
    if source == "-":
        return sys.stdin.read()
    return Path(source).read_text(encoding="utf-8")


def _parse_word(source: str, n: int) -> AutomorphismWord:
    return parse_automorphism(_read_input(source), n)


def _cnum(c: complex) -> list[float]:
    return [float(c.real), float(c.imag)]


def _cvec(v) -> list:
    return [_cnum(x) for x in np.asarray(v).ravel()]


def _cmat(M) -> list:
    M = np.asarray(M)
    return [[_cnum(x) for x in row] for row in M]


def _json_safe(value):
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return repr(value)
    return value


def _config_dict(args) -> dict:
    cfg = {"n": args.n, "output": args.output}
    for attr, key in (
        ("seed", "seed"),
        ("radii", "radii"),
        ("count", "count_per_radius"),
        ("eps_eq", "eps_eq"),
        ("eps_distinct", "eps_distinct"),
        ("psd_tol", "psd_tol"),
    ):
        if hasattr(args, attr):
            value = getattr(args, attr)
            cfg[key] = list(value) if isinstance(value, tuple) else value
    return cfg


def _witness_dict(witness) -> dict | None:
    if witness is None:
        return None
    out = {"kind": witness.kind, "distance": float(witness.distance)}
    if witness.point is not None:
        out["point"] = _cvec(witness.point)
    return out


# --- commands -----------------------------------------------------------


def cmd_parse(args):
    word = _parse_word(args.input, args.n)
    kinds = ["affine" if hasattr(g, "matrix") else "shear" for g in word]
    result = {
        "canonical": serialize(word),
        "dimension": word.dimension,
        "generators": len(word),
        "generator_kinds": kinds,
    }
    return result, EXIT_OK


def cmd_evaluate(args):
    word = _parse_word(args.input, args.n)
    point = parse_point(args.at, args.n)
    value = evaluate(word, point)
    if not np.isfinite(value).all():
        raise NonFiniteSampleError("evaluation overflowed double precision")
    result = {
        "canonical": serialize(word),
        "point": _cvec(point),
        "value": _cvec(value),
    }
    return result, EXIT_OK


def cmd_invert(args):
    word = _parse_word(args.input, args.n)
    result = {
        "canonical": serialize(word),
        "inverse": serialize(invert(word)),
    }
    return result, EXIT_OK


def cmd_fingerprint(args):
    word = _parse_word(args.input, args.n)
    fp = fingerprint(word, args.seed, args.radii, args.count)
    result = {
        "canonical": serialize(word),
        "jet": {
            "value_at_zero": _cvec(fp.jet.value_at_zero),
            "derivative_at_zero": _cmat(fp.jet.derivative_at_zero),
        },
        "samples": [
            {"point": _cvec(p), "levi": _cmat(L)}
            for p, L in zip(fp.points, fp.levis)
        ],
        "sampling": {
            "seed": fp.sample_seed,
            "radii": list(fp.radii),
            "count_per_radius": fp.count_per_radius,
        },
    }
    if args.at is not None:
        point = parse_point(args.at, args.n)
        levi = levi_log_norm(theta_normalize(word), point)
        result["at"] = {"point": _cvec(point), "levi": _cmat(levi)}
    return result, EXIT_OK


def cmd_compare(args):
    w1 = _parse_word(args.input1, args.n)
    w2 = _parse_word(args.input2, args.n)
    fp1 = fingerprint(w1, args.seed, args.radii, args.count)
    fp2 = fingerprint(w2, args.seed, args.radii, args.count)
    verdict = compare(fp1, fp2, args.eps_eq, args.eps_distinct)
    result = {
        "canonical": [serialize(w1), serialize(w2)],
        "outcome": verdict.outcome,
        "jet_equal": verdict.jet_equal,
        "jet_distance": float(verdict.jet_distance),
        "max_levi_distance": float(verdict.max_levi_distance),
        "witness": _witness_dict(verdict.witness),
    }
    code = {
        "equal": EXIT_OK,
        "distinct": EXIT_DISTINCT,
        "inconclusive": EXIT_INCONCLUSIVE,
    }[verdict.outcome]
    return result, code


def cmd_is_affine(args):
    word = _parse_word(args.input, args.n)
    report = affineness_report(word, args.seed, args.radii, args.count, args.eps_eq)
    result = {
        "canonical": serialize(word),
        "affine": report.affine,
        "max_distance": float(report.max_distance),
        "tolerance": args.eps_eq,
        "witness": _witness_dict(report.witness),
    }
    return result, EXIT_OK if report.affine else EXIT_DISTINCT


def cmd_verify(args):
    cfg = VerifyConfig(
        n=args.n,
        seed=args.seed,
        radii=args.radii,
        count_per_radius=args.count,
        eps_eq=args.eps_eq,
        eps_distinct=args.eps_distinct,
        psd_tol=args.psd_tol,
    )
    results = run_all(cfg)
    all_passed = all(r.passed for r in results)
    result = {
        "all_passed": all_passed,
        "suites": [
            {
                "name": r.name,
                "passed": r.passed,
                "summary": r.summary,
                "metrics": {k: float(v) for k, v in r.metrics.items()},
                "counterexamples": list(r.counterexamples),
            }
            for r in results
        ],
    }
    return result, EXIT_OK if all_passed else EXIT_DISTINCT


COMMANDS = {
    "parse": cmd_parse,
    "evaluate": cmd_evaluate,
    "invert": cmd_invert,
    "fingerprint": cmd_fingerprint,
    "compare": cmd_compare,
    "is-affine": cmd_is_affine,
    "verify": cmd_verify,
}


# --- rendering ----------------------------------------------------------


def _text_complex(pair: list[float]) -> str:
    return _fmt_entry(complex(pair[0], pair[1]))


def _text_vector(vec) -> str:
    return "(" + ", ".join(_text_complex(c) for c in vec) + ")"


def _render_text(command: str, result: dict) -> str:
    lines = []
    if "error" in result:
        err = result["error"]
        span = err.get("span")
        where = f" at {span[0]}..{span[1]}" if span else ""
        return f"error ({err['kind']}){where}: {err['message']}"
    if command == "parse":
        lines.append(f"canonical: {result['canonical']}")
        lines.append(f"generators: {result['generators']}")
    elif command == "evaluate":
        lines.append(f"value: {_text_vector(result['value'])}")
    elif command == "invert":
        lines.append(f"inverse: {result['inverse']}")
    elif command == "fingerprint":
        jet = result["jet"]
        lines.append(f"jet value at 0: {_text_vector(jet['value_at_zero'])}")
        lines.append("jet derivative at 0:")
        for row in jet["derivative_at_zero"]:
            lines.append("  " + "  ".join(_text_complex(c) for c in row))
        lines.append(f"samples: {len(result['samples'])}")
        first = result["samples"][0]
        lines.append(f"first sample point: {_text_vector(first['point'])}")
        lines.append("first Levi matrix:")
        for row in first["levi"]:
            lines.append("  " + "  ".join(_text_complex(c) for c in row))
        if "at" in result:
            extra = result["at"]
            lines.append(f"requested point: {_text_vector(extra['point'])}")
            lines.append("Levi matrix there:")
            for row in extra["levi"]:
                lines.append("  " + "  ".join(_text_complex(c) for c in row))
    elif command == "compare":
        lines.append(f"outcome: {result['outcome']}")
        lines.append(f"jet distance: {result['jet_distance']:.6e}")
        lines.append(f"max levi distance: {result['max_levi_distance']:.6e}")
        witness = result["witness"]
        if witness:
            where = (
                f" at {_text_vector(witness['point'])}" if "point" in witness else ""
            )
            lines.append(
                f"witness: {witness['kind']}{where}, distance {witness['distance']:.6e}"
            )
    elif command == "is-affine":
        lines.append(f"affine: {'true' if result['affine'] else 'false'}")
        lines.append(f"max distance to identity Levi: {result['max_distance']:.6e}")
        witness = result["witness"]
        if witness:
            lines.append(f"witness point: {_text_vector(witness['point'])}")
    elif command == "verify":
        for suite in result["suites"]:
            status = "PASS" if suite["passed"] else "FAIL"
            lines.append(f"{status} {suite['name']}: {suite['summary']}")
            for ce in suite["counterexamples"]:
                lines.append(f"  counterexample: {ce}")
        lines.append(
            "all suites passed"
            if result["all_passed"]
            else "some suites FAILED"
        )
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result, code = COMMANDS[args.command](args)
    except ParseError as exc:
        result = {
            "error": {
                "kind": exc.kind,
                "span": [exc.span.start, exc.span.end],
                "message": exc.message,
            }
        }
        code = EXIT_PARSE
    except OSError as exc:
        result = {"error": {"kind": "io", "message": str(exc)}}
        code = EXIT_PARSE
    except (ArithmeticError, np.linalg.LinAlgError, OverflowError) as exc:
        result = {"error": {"kind": "numeric", "message": str(exc)}}
        code = EXIT_NUMERIC

    report = {
        "command": args.command,
        "version": __version__,
        "backend": backend_name(),
        "config": _config_dict(args),
        "inputs": [
            getattr(args, name)
            for name in ("input", "input1", "input2", "at")
            if hasattr(args, name)
        ],
        "result": result,
    }
    if args.output == "json":
        print(json.dumps(_json_safe(report), indent=2, sort_keys=True))
    else:
        print(_render_text(args.command, result))
    return code


if __name__ == "__main__":
    sys.exit(main())
