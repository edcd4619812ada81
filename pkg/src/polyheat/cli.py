"""Command-line surface: coefficients, expansions, sector values, MC verification.

Subcommands
-----------
coeff         evaluate one angle coefficient (kind a, b or c)
expand        expansion coefficients of a polygon file (JSON out)
eval          evaluate the expansion at a list of times (CSV out)
verify        cross-check the expansion against the Monte Carlo oracle
sector        term-by-term Dirichlet-open sector expansion
kernel-check  run the special-function identity suite

Exit codes: 0 success/pass, 1 usage error, 2 validation error,
3 verification or identity failure.  Identical invocations produce
byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import expansion, geometry, mc_oracle, wedge_kernel
from .coefficients import coeff_a_integral, coeff_b, coeff_c
from .numerics import QuadConfig

USAGE_ERROR = 1
VALIDATION_ERROR = 2
CHECK_FAILED = 3

# Verification in a regime where the remainder scale exceeds this is
# reported but not graded; the expansion is small-time only.
REGIME_SCALE_LIMIT = 1e-3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True))


def _load_polygon(path: str) -> geometry.Polygon:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise geometry.GeometryError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise geometry.GeometryError(f"{path} is not valid JSON: {exc}")
    return geometry.validate(geometry.polygon_from_dict(data))


def _fmt(x: float) -> str:
    return format(x, ".12g")


# ----------------------------------------------------------------------
# subcommands


def _cmd_coeff(args) -> int:
    angle = math.radians(args.angle) if args.unit == "deg" else args.angle
    cfg = QuadConfig(abs_tol=args.tol, rel_tol=args.tol)
    try:
        if args.kind == "a":
            value, method = coeff_a_integral(angle, cfg), "integral"
        elif args.kind == "b":
            value, method = coeff_b(angle), "closed"
        else:
            value, method = coeff_c(angle, cfg), "integral"
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION_ERROR
    est_error = 0.0 if method == "closed" else max(cfg.abs_tol, cfg.rel_tol * abs(value))
    _emit_json(
        {
            "kind": args.kind,
            "angle_rad": angle,
            "value": value,
            "method": method,
            "est_error": est_error,
        }
    )
    return 0


def _coeffs_payload(coeffs: expansion.ExpansionCoefficients) -> dict:
    return {
        "area": coeffs.area,
        "sqrt_t_coeff": coeffs.sqrt_t_coeff,
        "t_coeff": coeffs.t_coeff,
        "decay_rate": coeffs.decay_rate,
        "per_vertex": [
            {
                "loop": va.loop_index,
                "vertex": va.vertex_index,
                "angle_rad": va.radians,
                "class": va.angle_class.value,
                "contribution": contrib,
            }
            for va, contrib in coeffs.per_vertex
        ],
    }


def _cmd_expand(args) -> int:
    coeffs = expansion.heat_content_coeffs(_load_polygon(args.polygon))
    _emit_json(_coeffs_payload(coeffs))
    return 0


def _cmd_eval(args) -> int:
    times = [float(tok) for tok in args.times.split(",") if tok.strip()] if args.times else []
    if any(t <= 0 for t in times):
        print("error: all times must be positive", file=sys.stderr)
        return VALIDATION_ERROR
    coeffs = expansion.heat_content_coeffs(_load_polygon(args.polygon))
    rows = [
        (t, expansion.eval_expansion(coeffs, t), expansion.remainder_scale(coeffs, t))
        for t in times
    ]
    if args.format == "json":
        _emit_json([{"t": t, "value": v, "remainder_scale": r} for t, v, r in rows])
    else:
        print("t,value,remainder_scale")
        for t, v, r in rows:
            print(f"{_fmt(t)},{_fmt(v)},{_fmt(r)}")
    return 0


def _cmd_verify(args) -> int:
    polygon = _load_polygon(args.polygon)
    coeffs = expansion.heat_content_coeffs(polygon)
    asym = expansion.eval_expansion(coeffs, args.time)
    scale = expansion.remainder_scale(coeffs, args.time)
    cfg = mc_oracle.MCConfig(n_paths=args.paths, n_steps=args.steps, seed=args.seed)
    est = mc_oracle.estimate_heat_content(polygon, args.time, cfg, workers=args.workers)
    sigma = est.std_error
    z = (asym - est.mean) / sigma if sigma > 0 else math.inf
    budget = 3.0 * sigma + 5e-4 + coeffs.area * scale
    ok = abs(asym - est.mean) <= budget
    regime_warning = scale > REGIME_SCALE_LIMIT
    if regime_warning:
        print(
            f"warning: remainder scale {scale:.3g} exceeds {REGIME_SCALE_LIMIT:g}; "
            "the expansion is outside its small-time regime and the comparison "
            "is informational only",
            file=sys.stderr,
        )
    _emit_json(
        {
            "asymptotic": asym,
            "mc_mean": est.mean,
            "mc_std_error": sigma,
            "z_score": z,
            "pass": bool(ok),
            "remainder_scale": scale,
            "regime_warning": regime_warning,
        }
    )
    if regime_warning:
        return 0
    return 0 if ok else CHECK_FAILED


def _cmd_sector(args) -> int:
    try:
        spec = expansion.SectorSpec(R=args.radius, alpha=args.alpha)
        terms = expansion.sector_terms(spec, args.time)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION_ERROR
    _emit_json(terms)
    return 0


def _cmd_kernel_check(args) -> int:
    tol = args.tol
    rows: list[tuple[str, str, wedge_kernel.IdentityResult]] = []
    for theta in (0.5, 1.0, 2.0):
        for s in (1.0, 4.0):
            rows.append(
                ("radial-moment", f"theta={theta:g};s={s:g}", wedge_kernel.check_radial_moment(theta, s))
            )
    for b in (0.0, 0.5, 1.0):
        rows.append(("cosine-transform", f"a=1;b={b:g}", wedge_kernel.check_cosine_transform(1.0, b)))
    for a in (0.0, 1.0):
        rows.append(
            (
                "log-ratio",
                f"a={a:g};beta=pi/2;gamma=pi",
                wedge_kernel.check_log_ratio(a, math.pi / 2, math.pi),
            )
        )
    rows.append(("tanh-log-coth", "a=1;beta=pi", wedge_kernel.check_tanh_log_coth(1.0, math.pi)))

    all_pass = True
    if args.format == "json":
        payload = []
        for name, params, res in rows:
            ok = res.abs_err <= tol
            all_pass &= ok
            payload.append(
                {
                    "identity": name,
                    "parameters": params,
                    "lhs": res.lhs,
                    "rhs": res.rhs,
                    "abs_err": res.abs_err,
                    "pass": ok,
                }
            )
        _emit_json(payload)
    else:
        print("identity,parameters,lhs,rhs,abs_err,pass")
        for name, params, res in rows:
            ok = res.abs_err <= tol
            all_pass &= ok
            print(
                f"{name},{params},{_fmt(res.lhs)},{_fmt(res.rhs)},{res.abs_err:.3e},{str(ok).lower()}"
            )
    return 0 if all_pass else CHECK_FAILED


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polyheat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", help="evaluate an angle coefficient")
    p.add_argument("--kind", required=True, choices=["a", "b", "c"])
    p.add_argument("--angle", required=True, type=float)
    p.add_argument("--unit", choices=["rad", "deg"], default="rad")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_cmd_coeff)

    p = sub.add_parser("expand", help="expansion coefficients of a polygon file")
    p.add_argument("polygon", help="polygon JSON file")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("eval", help="evaluate the expansion at given times")
    p.add_argument("polygon", help="polygon JSON file")
    p.add_argument("--times", default="", help="comma-separated positive times")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verify", help="compare the expansion against the MC oracle")
    p.add_argument("polygon", help="polygon JSON file")
    p.add_argument("--time", required=True, type=float)
    p.add_argument("--paths", type=int, default=100_000)
    p.add_argument("--steps", type=int, default=128)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sector", help="Dirichlet-open sector expansion breakdown")
    p.add_argument("--radius", required=True, type=float)
    p.add_argument("--alpha", required=True, type=float, help="opening angle in radians")
    p.add_argument("--time", required=True, type=float)
    p.set_defaults(func=_cmd_sector)

    p = sub.add_parser("kernel-check", help="run the identity suite")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_kernel_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except geometry.GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION_ERROR


if __name__ == "__main__":
    sys.exit(main())
