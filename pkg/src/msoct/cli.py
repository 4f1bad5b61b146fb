"""Command line: ``msoct case|pair|figure``.

Exit codes: 0 success, 1 a check failed (report still written), 2 bad input.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional

from . import svg
from .construction import (
    criticality_check,
    find_extrema,
    find_pair,
    profile_d,
)
from .errors import LabelMismatch, NoOrthogonalCircle, NormalizationFailed, OutOfBand
from .report import (
    CaseSpec,
    RunReport,
    atomic_write,
    certificate_json,
    criticality_json,
    extrema_json,
    packing_json,
    spec_json,
)
from .sphere import (
    certify_nonequivalence,
    normalization_context,
    normalized_realization,
    validate_packing,
)


def _case_body(spec: CaseSpec) -> tuple:
    params = spec.params()
    ex = find_extrema(params)
    body = {"spec": spec_json(spec, params), "b": params.b, "c": params.c, "extrema": extrema_json(ex)}
    crit = criticality_check(params, ex.tau)
    body["criticality"] = criticality_json(crit)
    return params, ex, crit, body


def cmd_case(spec: CaseSpec, t: Optional[float] = None) -> RunReport:
    params, ex, crit, body = _case_body(spec)
    if t is not None:
        body["at_t"] = {"t": t, "d": profile_d(params, t)}
    return RunReport("case", body, 0 if crit.passes else 1)


def cmd_pair(spec: CaseSpec, d_target: float) -> RunReport:
    params, ex, crit, body = _case_body(spec)
    try:
        t, t_prime = find_pair(params, d_target, ex)
    except OutOfBand as exc:
        body["error"] = str(exc)
        return RunReport("pair", body, 2)
    pair = {"d_target": d_target, "t": t, "t_prime": t_prime,
            "d_t": profile_d(params, t), "d_t_prime": profile_d(params, t_prime)}
    body["pair"] = pair
    try:
        ctx = normalization_context(params, ex.tau)
        r1 = normalized_realization(params, t, ctx)
        r2 = normalized_realization(params, t_prime, ctx)
    except (NormalizationFailed, NoOrthogonalCircle) as exc:
        body["error"] = str(exc)
        return RunReport("pair", body, 1)
    k = r1.triangulation()
    reports = [validate_packing(r1, k), validate_packing(r2, k)]
    pair["packings"] = [packing_json(r) for r in reports]
    try:
        cert = certify_nonequivalence(r1, r2, k)
    except LabelMismatch as exc:
        body["error"] = str(exc)
        return RunReport("pair", body, 1)
    pair["certificate"] = certificate_json(cert)
    ok = cert.verdict.value == "not_equivalent" and all(r.passes for r in reports)
    return RunReport("pair", body, 0 if ok else 1)


def cmd_figure(spec: CaseSpec, kind: str, out: str, t: Optional[float] = None) -> int:
    params = spec.params()
    ex = find_extrema(params)
    if kind == "flow":
        text = svg.flow_figure(params, ex)
    elif kind == "graph":
        text = svg.graph_figure(params, ex)
    else:
        ctx = normalization_context(params, ex.tau)
        text = svg.sphere_figure(normalized_realization(params, ex.tau if t is None else t, ctx))
    try:
        atomic_write(out, text)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return 1
    return 0


def _finite(text: str) -> float:
    x = float(text)
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not a finite number: {text}")
    return x


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--a", type=_finite, help="face label a of the base triple")
    g.add_argument("--y", type=_finite, help="family parameter y instead of a")
    p.add_argument("--kind", choices=("hyperbolic", "elliptic"), default="elliptic",
                   help="which family --y refers to (default: elliptic)")
    p.add_argument("--x1", type=_finite, required=True)
    p.add_argument("--x2", type=_finite, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msoct", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    case = sub.add_parser("case", help="b, c, extrema and criticality for one parameter set")
    _add_spec_args(case)
    case.add_argument("--t", type=_finite, help="also report d at this flow time")
    case.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")

    pair = sub.add_parser("pair", help="find t < tau < t' with d = D, lift both and certify")
    _add_spec_args(pair)
    pair.add_argument("--d", type=_finite, required=True, help="target inversive distance")
    pair.add_argument("--json", metavar="PATH")

    fig = sub.add_parser("figure", help="write an SVG figure")
    fig.add_argument("figure", choices=("flow", "graph", "sphere"))
    _add_spec_args(fig)
    fig.add_argument("--t", type=_finite, help="flow time for the sphere view (default: tau)")
    fig.add_argument("--out", required=True)
    return parser


def _spec(parser, args) -> CaseSpec:
    if not 1.0 < args.x1 < args.x2:
        parser.error(f"need 1 < x1 < x2, got x1={args.x1}, x2={args.x2}")
    try:
        spec = CaseSpec(args.x1, args.x2, a=args.a, y=args.y, kind=args.kind)
        spec.params().env  # validates a, y and x1 against the family
    except ValueError as exc:
        parser.error(str(exc))
    return spec


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    spec = _spec(parser, args)
    try:
        if args.command == "figure":
            return cmd_figure(spec, args.figure, args.out, args.t)
        rep = cmd_case(spec, args.t) if args.command == "case" else cmd_pair(spec, args.d)
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = rep.to_json()
    if args.json:
        try:
            atomic_write(args.json, text)
        except OSError as exc:
            print(f"error: cannot write {args.json}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    if "error" in rep.data:
        print(f"error: {rep.data['error']}", file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
