"""Command line front end.

    doublebundles suite NAME [--dims n1,n2,n0] [--trials N] [--seed S] [--input FIXTURE]
    doublebundles compute OP --input FILE [--scalar rational|float] [--tol T]

Exit status: 0 when everything passes, 1 on a failed property or an
operation error (e.g. a singular matrix), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import codec
from . import linalg as la
from .algebra import der_bracket, der_exp
from .aut import aut_compose, aut_inverse
from .bundles import AssocElement, transport
from .dla import Cochain, LieAlgebraSpec, ModuleSpec, build_double_algebra, jacobi_check
from .duality import dual_rep, f_dual, pair
from .dvs import Dims
from .errors import DoubleBundleError, InputError
from .frames import frame_eval, frame_transition
from .suites import SUITES, run_suite

COMPUTE_OPS = ("compose", "inverse", "exp", "bracket", "fdual", "dualrep", "pair", "frame-eval",
               "frame-transition", "transport", "dla-build")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="doublebundles", description="Double vector space and double bundle toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--input", help="JSON input or fixture file")
    common.add_argument("--output", help="write the JSON result here instead of stdout")
    common.add_argument("--scalar", choices=la.SCALAR_KINDS, default=la.RATIONAL)
    common.add_argument("--tol", type=float, default=1e-9, help="tolerance for exp (default 1e-9)")

    s = sub.add_parser("suite", parents=[common], help="run a property suite")
    s.add_argument("name", choices=SUITES)
    s.add_argument("--dims", default="2,2,2", help="n1,n2,n0 (default 2,2,2)")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--timing", action="store_true", help="include wall_time in the report")

    c = sub.add_parser("compute", parents=[common], help="evaluate one operation")
    c.add_argument("op", choices=COMPUTE_OPS)
    return parser


def _load(path: str | None):
    if path is None:
        raise InputError("--input is required")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


def _pair_of(obj, decode, kind, keys=("a", "b")):
    return tuple(decode(codec._field(obj, k), kind) for k in keys)


def compute(op: str, obj, kind: str = la.RATIONAL, tol: float = 1e-9):
    if op == "compose":
        a, b = _pair_of(obj, codec.decode_aut, kind)
        return aut_compose(a, b)
    if op == "inverse":
        return aut_inverse(codec.decode_aut(obj, kind))
    if op == "exp":
        return der_exp(codec.decode_der(obj, kind), tol)
    if op == "bracket":
        X, Y = _pair_of(obj, codec.decode_der, kind)
        return der_bracket(X, Y)
    if op == "fdual":
        return f_dual(codec.decode_aut(obj, kind))
    if op == "dualrep":
        return dual_rep(codec.decode_aut(obj, kind))
    if op == "pair":
        v, w = _pair_of(obj, codec.decode_element, kind, ("v", "w"))
        return {"value": pair(v, w)}
    if op == "frame-eval":
        return frame_eval(codec.decode_frame(codec._field(obj, "frame"), kind),
                          codec.decode_element(codec._field(obj, "xi"), kind))
    if op == "frame-transition":
        F, G = _pair_of(obj, codec.decode_frame, kind, ("from", "to"))
        return frame_transition(F, G)
    if op == "transport":
        pc, rep = codec.decode_bundle(codec._field(obj, "bundle"))
        elem = codec._field(obj, "element")
        e = AssocElement(int(codec._field(elem, "chart")), codec.decode_element(codec._field(elem, "value")))
        out = transport(pc, rep, e, [int(i) for i in codec._field(obj, "path")])
        return {"chart": out.chart, "value": out.value}
    if op == "dla-build":
        g1 = LieAlgebraSpec(codec.decode_array(codec._field(obj, "g1"), ndim=3))
        g2 = LieAlgebraSpec(codec.decode_array(codec._field(obj, "g2"), ndim=3))
        mod = ModuleSpec(codec.decode_array(codec._field(obj, "module"), ndim=3))
        c = Cochain(2, codec.decode_array(codec._field(obj, "cochain"), ndim=3))
        D = build_double_algebra(g1, g2, mod, c)
        return {"structure": D.algebra.structure, "n1": D.n1, "n2": D.n2, "m": D.m,
                "jacobi": jacobi_check(D.algebra)}
    raise InputError(f"unknown operation {op!r}")


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _suite(args) -> int:
    try:
        dims = Dims.parse(args.dims)
    except ValueError as exc:
        raise InputError(f"bad --dims {args.dims!r}: {exc}") from None
    fixture = None
    if args.input:
        if args.name != "bundles":
            raise InputError("only the bundles suite takes a fixture file")
        fixture = codec.decode_bundle(_load(args.input))
        dims = fixture[1].dims
    start = time.perf_counter()
    props = run_suite(args.name, dims, args.trials, args.seed, fixture)
    report = {
        "suite": args.name,
        "fixture": args.input or "generated",
        "dims": dims,
        "trials": args.trials,
        "seed": args.seed,
        "pass": all(p["pass"] for p in props.values()),
        "properties": props,
    }
    if args.timing:
        report["wall_time"] = round(time.perf_counter() - start, 3)
    _emit(codec.dumps(report), args.output)
    return 0 if report["pass"] else 1


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "suite":
            return _suite(args)
        result = compute(args.op, _load(args.input), args.scalar, args.tol)
        _emit(codec.dumps(result), args.output)
        return 0
    except InputError as exc:
        print(f"error: InputError: {exc}", file=sys.stderr)
        return 2
    except DoubleBundleError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
