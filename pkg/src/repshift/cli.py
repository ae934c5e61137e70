"""Command-line interface.

Every analysis command prints one JSON report on stdout.  Reports carry
``"schema": 1``, the command, the arguments, a SHA-256 of the input file
(if any) and the package version; result fields sit at the top level.
Output is byte-deterministic unless ``--timing`` is given.

Exit codes: 0 success, 1 runtime or resource failure, 2 usage or parse error.
Failures print a one-line JSON diagnostic followed by a human message on
stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .errors import (
    ConfigurationError, DomainError, PresentationSyntaxError, RepShiftError,
)
from .fingroup import make_group, standard_extension
from .laurent import (
    is_symmetric, parse_poly, poly_matrix_det, pullback_char_poly, read_matrix,
    split_three_blocks, split_two_blocks, three_cover_factor, two_cover_factor,
)
from .lifting import lift_orbit_subshift, sweep_lifts
from .representations import (
    DEFAULT_BUDGET, classify_transitive, count_index_subgroups, parse_rep,
    representation_shift,
)
from .shiftgraph import to_dot, to_json
from .zgroup import parse_presentation

SCHEMA = 1


class InputError(RepShiftError):
    """Bad user input discovered while reading files or option values."""

    kind = "input"


class UsageError(RepShiftError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage().rstrip()}")


def _read(path: str) -> tuple[str, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return data.decode("utf-8"), hashlib.sha256(data).hexdigest()


def _load(path: str):
    text, digest = _read(path)
    return parse_presentation(text), digest


def _as_input(fn, *args):
    """Run a parsing step, reclassifying domain failures as input errors."""
    try:
        return fn(*args)
    except (DomainError, ConfigurationError) as exc:
        raise InputError(str(exc)) from None


# ----------------------------------------------------------------------------
# commands

def cmd_graph(args) -> dict:
    P, digest = _load(args.file)
    group = _as_input(make_group, args.target)
    rs = representation_shift(P, group, args.window, args.budget)
    g = rs.graph
    if args.dot:
        dot = to_dot(g)
        if args.dot == "-":
            sys.stdout.write(dot)
        else:
            Path(args.dot).write_text(dot)
    out = {
        "input_sha256": digest,
        "target": group.name,
        "window": rs.base.n,
        "raw_vertices": rs.raw.num_vertices,
        "raw_edges": rs.raw.num_edges,
        "vertices": g.num_vertices,
        "edges": g.num_edges,
        **rs.classify().as_dict(),
    }
    if args.json:
        out["graph"] = to_json(g)
    return out


def cmd_classify(args) -> dict:
    P, digest = _load(args.file)
    group = _as_input(make_group, args.target)
    rs = representation_shift(P, group, args.window, args.budget)
    return {"input_sha256": digest, "target": group.name, **rs.classify().as_dict()}


def cmd_subgroups(args) -> dict:
    P, digest = _load(args.file)
    if not 2 <= args.index <= 5:
        raise InputError("--index must be between 2 and 5")
    trans = classify_transitive(P, args.index, args.budget)
    subs = count_index_subgroups(P, args.index, args.budget)
    return {
        "input_sha256": digest,
        "index": args.index,
        **subs.as_dict(),
        "transitive_representations": trans.as_dict(),
    }


def _orbit_report(orbit, sigma) -> dict:
    comps = orbit.component_classes()
    return {
        "rep": orbit.rep.text(sigma),
        "period": orbit.rep.period,
        "lift_exists": orbit.lift_exists,
        "surjective_lift_exists": orbit.surjective_lift_exists,
        "vertices": orbit.graph.num_vertices,
        "edges": orbit.graph.num_edges,
        "components": [c.as_dict() for c in comps],
    }


def cmd_lift(args) -> dict:
    P, digest = _load(args.file)
    ext = _as_input(standard_extension, args.ext)
    if args.rep is not None:
        rep = _as_input(parse_rep, args.rep, ext.sigma)
        orbit = _as_input(lift_orbit_subshift, P, ext, rep, None, args.budget)
        orbits = [orbit]
    else:
        if args.max_period is None or args.max_period < 1:
            raise UsageError("--all-periodic needs --max-period >= 1")
        orbits = [o for _, o in sweep_lifts(P, ext, args.max_period, args.budget)]
    reports = [_orbit_report(o, ext.sigma) for o in orbits]
    return {
        "input_sha256": digest,
        "extension": ext.name,
        "lift_exists": any(r["lift_exists"] for r in reports),
        "surjective_lift_exists": any(r["surjective_lift_exists"] for r in reports),
        "orbits": reports,
    }


def cmd_pullback(args) -> dict:
    delta = _as_input(parse_poly, args.poly)
    if delta.is_zero():
        raise InputError("polynomial must be nonzero")
    if args.r < 1:
        raise InputError("--r must be at least 1")
    out = pullback_char_poly(delta, args.r)
    d = delta.normalized()
    return {
        "poly": str(d),
        "r": args.r,
        "pullback": str(out),
        "degree": d.degree,
        "pullback_degree": out.degree,
        "symmetric": is_symmetric(d),
        "pullback_symmetric": is_symmetric(out),
    }


def _matrix(path):
    text, digest = _read(path)
    return _as_input(read_matrix, text), digest


def cmd_cover2(args) -> dict:
    T, digest = _matrix(args.matrix)
    A, B = _as_input(split_two_blocks, T)
    rep = two_cover_factor(A, B)
    p = args.mod or 3
    return {
        "input_sha256": digest,
        "det": str(poly_matrix_det(T)),
        "mod": p,
        "det_mod": str(poly_matrix_det(T, mod=p).normalized()),
        "det_sum": str(rep.det_sum),
        "det_diff": str(rep.det_diff),
        "g": str(rep.g),
        "g_mod3": str(rep.g_mod3),
        "verdict": rep.verdict,
    }


def cmd_cover3(args) -> dict:
    T, digest = _matrix(args.matrix)
    A, B, C = _as_input(split_three_blocks, T)
    rep = three_cover_factor(A, B, C)
    p = args.mod or 2
    return {
        "input_sha256": digest,
        "det": str(poly_matrix_det(T)),
        "mod": p,
        "det_mod": str(poly_matrix_det(T, mod=p).normalized()),
        "delta_tilde": str(rep.delta_tilde),
        "FFbar": str(rep.FFbar),
        "FFbar_mod2": str(rep.FFbar_mod2),
        "divisible_by_s1_squared": rep.divisible_by_s1_squared,
        "cofactor_mod2": None if rep.cofactor_mod2 is None else str(rep.cofactor_mod2),
        "verdict": rep.verdict,
    }


# ----------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum partial assignments explored per enumeration")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = _Parser(prog="repshift", description="Representation shifts of Z-groups.")
    parser.add_argument("--version", action="version", version=f"repshift {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("graph", parents=[common], help="build the representation graph")
    p.add_argument("file")
    p.add_argument("--target", required=True, help="finite group, e.g. Z3, S5, A4, V4")
    p.add_argument("--window", type=int, help="window size of the base (default: automatic)")
    p.add_argument("--dot", help="write DOT to this path ('-' for stdout)")
    p.add_argument("--json", action="store_true", help="include vertices and edges in the report")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("classify", parents=[common], help="cardinality of Hom(K, G)")
    p.add_argument("file")
    p.add_argument("--target", required=True)
    p.add_argument("--window", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("subgroups", parents=[common], help="count subgroups of index r")
    p.add_argument("file")
    p.add_argument("--index", type=int, required=True)
    p.set_defaults(func=cmd_subgroups)

    p = sub.add_parser("lift", parents=[common], help="lifts through an extension")
    p.add_argument("file")
    p.add_argument("--ext", required=True, help="S3/S2, A4/Z3 or S4/S3")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--rep", help="cycle:v1,v2,... (steps; '/' separates generators)")
    which.add_argument("--all-periodic", action="store_true")
    p.add_argument("--max-period", type=int)
    p.set_defaults(func=cmd_lift)

    alex = sub.add_parser("alex", help="Laurent polynomial computations")
    asub = alex.add_subparsers(dest="alex_command", required=True, parser_class=_Parser)
    p = asub.add_parser("pullback", parents=[common], help="restrict along s = t^r")
    p.add_argument("--poly", required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_pullback)
    for name, fn in (("cover2", cmd_cover2), ("cover3", cmd_cover3)):
        p = asub.add_parser(name, parents=[common], help=f"{name[-1]}-block factorization")
        p.add_argument("--matrix", required=True)
        p.add_argument("--mod", type=int)
        p.set_defaults(func=fn)
    return parser


def _command_name(args) -> str:
    if args.command == "alex":
        return f"alex {args.alex_command}"
    return args.command


def _diagnose(exc: Exception, code: int) -> int:
    diag = {"schema": SCHEMA, "error": getattr(exc, "kind", "internal"), "exit": code,
            "message": str(exc).splitlines()[0] if str(exc) else type(exc).__name__}
    if isinstance(exc, PresentationSyntaxError):
        diag.update(line=exc.line, column=exc.column)
    sys.stderr.write(json.dumps(diag, sort_keys=True) + "\n")
    sys.stderr.write(f"repshift: error: {exc}\n")
    return code


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "lift" and args.rep is None and args.max_period is None:
            raise UsageError("--all-periodic needs --max-period")
        start = time.perf_counter()
        result = args.func(args)
        elapsed = time.perf_counter() - start
    except (UsageError, InputError, PresentationSyntaxError, ConfigurationError) as exc:
        return _diagnose(exc, 2)
    except RepShiftError as exc:
        return _diagnose(exc, 1)
    report = {
        "schema": SCHEMA,
        "command": _command_name(args),
        "argv": list(sys.argv[1:] if argv is None else argv),
        "version": __version__,
        **result,
    }
    if args.timing:
        report["seconds"] = round(elapsed, 6)
    if args.command == "graph" and args.dot == "-":
        return 0
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
