"""Command-line surface: validate, match, check-matching, reduce, homology, verify.

All outputs are JSON with sorted keys; semantic failures exit 1 with a
structured diagnostic on stderr, input and parse problems exit 2.
"""

import argparse
import json
import os
import sys

from .actions import trivial_action
from .chains import check_complex
from .errors import (
    EquimorseError,
    MatchingValidationError,
    UnsupportedCoefficientsError,
)
from .homology import compare, homology
from .io import (
    SimplicialInput,
    complex_from_json,
    group_from_json,
    ingest_simplicial,
    matching_from_json,
    matching_to_json,
    reduction_to_json,
)
from .matchings import greedy_equivariant_match, validate
from .posets import build_cover_graph, cover_graph_dot
from .reduction import reduce as run_reduce
from .rings import Ring


class _InputError(EquimorseError):
    """A problem with the user's files or flags (exit code 2)."""


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(
            f"parse error in {path} at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc


def _load_complex(path, ring=None):
    """(complex, action-or-None) from a complex or simplicial file."""
    data = _read_json(path)
    try:
        if "facets" in data:
            C, G = ingest_simplicial(SimplicialInput.from_json(data, ring=ring))
            return C, (G if G.generators else None)
        return complex_from_json(data, ring=ring), None
    except EquimorseError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _load_group(C, path, embedded):
    if path is None:
        return embedded if embedded is not None else trivial_action(C)
    if embedded is not None:
        raise _InputError(
            "the complex file already carries group generators; "
            "drop --group or remove them"
        )
    data = _read_json(path)
    try:
        return group_from_json(C, data)
    except EquimorseError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _load_matching(C, path):
    data = _read_json(path)
    try:
        return matching_from_json(C, data)
    except EquimorseError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _diagnose(kind, message, **extra):
    payload = {"error": kind, "message": message}
    payload.update(extra)
    sys.stderr.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _write_dot(C, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(cover_graph_dot(build_cover_graph(C)))


def _cmd_validate(args):
    C, embedded = _load_complex(args.complex)
    violations = check_complex(C)
    out = {
        "complex_ok": not violations,
        "violations": [[n, b.label] for n, b in violations],
    }
    ok = not violations
    if args.group or embedded is not None:
        G = _load_group(C, args.group, embedded)
        bad = G.verify_g_map()
        out["action_ok"] = not bad
        out["action_violations"] = [[word, b.label] for word, b in bad]
        ok = ok and not bad
    _emit(out)
    return 0 if ok else 1


def _cmd_match(args):
    C, embedded = _load_complex(args.complex)
    G = _load_group(C, args.group, embedded)
    if args.dot:
        _write_dot(C, args.dot)
    M = greedy_equivariant_match(C, G, policy=args.policy)
    _emit(matching_to_json(M))
    return 0


def _cmd_check_matching(args):
    C, embedded = _load_complex(args.complex)
    G = _load_group(C, args.group, embedded)
    M = _load_matching(C, args.matching)
    if args.dot:
        _write_dot(C, args.dot)
    report = validate(C, G, M)
    _emit(report.to_json())
    return 0 if report.all_ok() else 1


def _run_reduction(args):
    C, embedded = _load_complex(args.complex)
    G = _load_group(C, args.group, embedded)
    M = _load_matching(C, args.matching)
    if args.dot:
        _write_dot(C, args.dot)
    return C, G, M, run_reduce(C, G, M)


def _cmd_reduce(args):
    C, G, M, result = _run_reduction(args)
    bundle = reduction_to_json(result)
    if args.out:
        if os.path.exists(args.out) and os.listdir(args.out):
            raise _InputError(f"--out directory {args.out} is not empty")
        os.makedirs(args.out, exist_ok=True)
        for name, part in (
            ("morse.json", bundle["morse"]),
            ("pieces.json", {"format": 1, "pieces": bundle["pieces"]}),
            ("iso.json", {"format": 1, "iso": bundle["iso"]}),
            ("steps.json", {"format": 1, "steps": bundle["steps"]}),
        ):
            with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
                fh.write(json.dumps(part, sort_keys=True, indent=2) + "\n")
    else:
        _emit(bundle)
    return 0


def _cmd_homology(args):
    try:
        ring = Ring.from_token(args.coeff) if args.coeff else None
    except EquimorseError as exc:
        raise _InputError(str(exc)) from exc
    C, _ = _load_complex(args.complex, ring=ring)
    try:
        profile = homology(C)
    except UnsupportedCoefficientsError as exc:
        raise _InputError(str(exc)) from exc
    _emit(profile.to_json())
    return 0


def _cmd_verify(args):
    C, G, M, result = _run_reduction(args)
    equal, diff = compare(C, result.morse_complex)
    out = {
        "iso_ok": True,
        "homology_match": equal,
        "input_homology": homology(C).to_json(),
        "morse_homology": homology(result.morse_complex).to_json(),
        "morse_ranks": {str(n): result.morse_complex.rank(n)
                        for n in result.morse_complex.degrees()},
    }
    if diff is not None:
        out["diff"] = diff
    _emit(out)
    return 0 if equal else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="equimorse",
        description="Equivariant algebraic Morse reduction of chain complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the chain axiom and the action")
    p.add_argument("complex")
    p.add_argument("--group")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("match", help="greedy equivariant acyclic matching")
    p.add_argument("complex")
    p.add_argument("--group")
    p.add_argument("--policy", choices=["lex", "max-orbit"], default="lex")
    p.add_argument("--dot", metavar="FILE")
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("check-matching", help="validate a matching file")
    p.add_argument("complex")
    p.add_argument("matching")
    p.add_argument("--group")
    p.add_argument("--dot", metavar="FILE")
    p.set_defaults(func=_cmd_check_matching)

    p = sub.add_parser("reduce", help="run the reduction, emit the decomposition")
    p.add_argument("complex")
    p.add_argument("matching")
    p.add_argument("--group")
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--dot", metavar="FILE")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("homology", help="Betti numbers and torsion")
    p.add_argument("complex")
    p.add_argument("--coeff", metavar="RING", help="int, rat, or mod:p")
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("verify", help="reduce and cross-check homology")
    p.add_argument("complex")
    p.add_argument("matching")
    p.add_argument("--group")
    p.add_argument("--dot", metavar="FILE")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        _diagnose("input", str(exc))
        return 2
    except MatchingValidationError as exc:
        _diagnose("validation", str(exc), report=exc.report.to_json())
        return 1
    except EquimorseError as exc:
        _diagnose("semantic", str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
