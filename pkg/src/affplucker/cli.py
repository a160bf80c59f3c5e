"""Command-line entry point: ``affine-plucker``.

Examples::

    affine-plucker space-info -n 3 -p 2
    affine-plucker verify theorem1 -n 3 -p 3 --trials 100 --seed 7
    affine-plucker verify plane-order -n 2 -p 2 -N 2 -P 3
    affine-plucker counterexample plane-transposition -n 2 -p 3
    affine-plucker graph -n 3 -p 2

Exit codes: 0 PASS, 1 FAIL, 2 ERROR.  Reports are JSON unless ``--format text``.
``elapsed_ms`` stays 0 unless ``--timing`` is given, so repeated runs are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import verify
from .geometry import GeometryError, make_space
from .gf import FieldError
from .maps import LineMap, MapError
from .pluecker import BoundExceeded, build_graph
from .report import ERROR, VerificationReport

CLAIMS = (
    "theorem1",
    "theorem2",
    "theorem3",
    "theorem4-count",
    "theorem4-finite",
    "stars",
    "cliques",
    "plane-order",
    "plucker-group",
)
COUNTEREXAMPLES = ("plane-transposition", "nonstar-clique", "plane-scramble")


def _instance_args(p: argparse.ArgumentParser, second: bool = False) -> None:
    # -h is the extension degree, so help lives on --help only
    p.add_argument("--help", action="help", help="show this help message and exit")
    p.add_argument("-n", type=int, default=3, help="dimension")
    p.add_argument("-p", type=int, default=2, help="prime characteristic")
    p.add_argument("-h", type=int, default=1, dest="h", help="extension degree")
    if second:
        p.add_argument("-N", type=int, default=None, help="dimension of the second space")
        p.add_argument("-P", type=int, default=None, help="characteristic of the second space")
        p.add_argument("-H", type=int, default=None, help="extension degree of the second space")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-identical output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affine-plucker", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("space-info", add_help=False, help="point, line, star and quotient counts")
    _instance_args(p)

    p = sub.add_parser("verify", add_help=False, help="run a verification suite")
    p.add_argument("claim", choices=CLAIMS)
    _instance_args(p, second=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--q-max", type=int, default=9)

    p = sub.add_parser("counterexample", add_help=False, help="build a documented counterexample")
    p.add_argument("kind", choices=COUNTEREXAMPLES)
    _instance_args(p)

    p = sub.add_parser("graph", add_help=False, help="export the concurrence graph as an adjacency list")
    _instance_args(p)

    p = sub.add_parser("check-map", add_help=False, help="classify a line map read from a JSON file")
    p.add_argument("path", type=Path)
    p.add_argument("--help", action="help")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--timing", action="store_true")
    return parser


def _space(args, second: bool = False):
    if second:
        return make_space(args.N if args.N is not None else args.n,
                          args.P if args.P is not None else args.p,
                          args.H if args.H is not None else args.h)
    return make_space(args.n, args.p, args.h)


def _instance(args) -> dict:
    return {"n": getattr(args, "n", None), "p": getattr(args, "p", None), "h": getattr(args, "h", None)}


def run(args) -> VerificationReport:
    cmd = args.command
    if cmd == "space-info":
        return verify.space_info(_space(args))
    if cmd == "check-map":
        return verify.check_line_map(LineMap.from_json(json.loads(args.path.read_text())))
    if cmd == "counterexample":
        S = _space(args)
        return {
            "plane-transposition": verify.plane_transposition,
            "nonstar-clique": verify.nonstar_clique,
            "plane-scramble": verify.plane_scramble,
        }[args.kind](S)

    claim = args.claim
    if claim == "theorem4-count":
        return verify.theorem4_count(args.n_max, args.q_max)
    S = _space(args)
    if claim in ("theorem1", "theorem2", "theorem3", "theorem4-finite"):
        fn = {"theorem1": verify.theorem1, "theorem2": verify.theorem2,
              "theorem3": verify.theorem3, "theorem4-finite": verify.theorem4_finite}[claim]
        return fn(S, args.trials, args.seed)
    if claim == "stars":
        return verify.stars(S)
    if claim == "cliques":
        return verify.cliques(S)
    if claim == "plane-order":
        return verify.plane_order(S, _space(args, second=True))
    return verify.plucker_group(S)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def export_graph(args) -> int:
    g = build_graph(_space(args))
    rows = [f"{i}: {' '.join(map(str, nb))}\n" for i, nb in enumerate(g.adjacency_list())]
    _emit("".join(rows), args.out)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "graph":
            return export_graph(args)
        report = run(args)
    except (GeometryError, FieldError, MapError, BoundExceeded, OSError, ValueError) as exc:
        if args.command == "counterexample":
            claim = f"counterexample:{args.kind}"
        else:
            claim = getattr(args, "claim", None) or args.command
        report = VerificationReport(claim, _instance(args), ERROR, {"error": type(exc).__name__, "message": str(exc)})
    if args.timing:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    text = report.as_text() if args.format == "text" else report.dumps()
    _emit(text, args.out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
