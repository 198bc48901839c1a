"""Command-line front end.

Subcommands: check (membership grid search), sandwich, product, constants,
moments, verify-paper (the full verification suite). Reports are emitted as
text, JSON (schema_version "1", byte-stable across runs), or CSV with '.'
decimals and 17 significant digits.

Exit codes: 0 all checks hold, 1 violation or failed inequality, 2 usage or
parse error, 3 numeric non-convergence.
"""

import argparse
import dataclasses
import enum
import json
import sys
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import membership as mb
from . import theorems as th
from . import weights as w
from .errors import DivergentCoefficient, DomainError, NonConvergenceError, OrderingError
from .expr import ExprDomainError, ExprSyntaxError, FunctionDef, parse_function
from .quadrature import Interval, QuadSpec, integrate_unit

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

GRAMMAR_HELP = """\
expression grammar (EBNF):
  expr    = term { ("+" | "-") term } ;
  term    = factor { ("*" | "/") factor } ;
  factor  = "-" factor | power ;
  power   = atom [ "^" factor ] ;           (right-associative)
  atom    = NUMBER | "x" | FUNC "(" expr { "," expr } ")" | "(" expr ")" ;
  FUNC    = "exp" | "ln" | "sqrt" | "abs" | "sin" | "cos" | "pow" ;
"^" is real power: repeated multiplication for constant integer exponents,
exp(y*ln x) with x > 0 otherwise.
"""


class Overall(enum.Enum):
    ALL_HOLD = "AllHold"
    VIOLATION_FOUND = "ViolationFound"
    NUMERIC_FAILURE = "NumericFailure"


@dataclass(frozen=True)
class Report:
    schema_version: str
    config: dict
    results: list[dict]
    overall: Overall


_EXIT_BY_OVERALL = {
    Overall.ALL_HOLD: EXIT_OK,
    Overall.VIOLATION_FOUND: EXIT_VIOLATION,
    Overall.NUMERIC_FAILURE: EXIT_NUMERIC,
}


# --- verification suite --------------------------------------------------------

BATTERY_SOURCES = ("x^2", "exp(x)", "x", "1", "x^4", "x+1")
BATTERY_INTERVALS = ((0.0, 1.0), (1.0, 3.0))
LEMMA_P_VALUES = (1.01, 1.1, 1.5, 2.0, 3.0, 10.0)
MOMENT_P_FULL = (1.01, 1.1, 1.5, 1.9)
MOMENT_P_FIRST_ONLY = (2.0, 3.0, 10.0)
SANDWICH_P_VALUES = (1.1, 1.5, 2.0)
PRODUCT_P_VALUES = (1.1, 1.5)

# Young p=2 equal-argument slack (3/2)/sqrt(2) - 1, the Proposition witness gap
NEGATIVE_CONST_GAP = 1.5 / 2.0**0.5 - 1.0


def _check(name, metric, threshold, relation, kind="violation") -> dict:
    ok = metric >= threshold if relation == "ge" else metric <= threshold
    return {
        "name": name,
        "status": "hold" if ok else ("numeric_failure" if kind == "numeric" else "violation"),
        "metric": float(metric),
        "threshold": float(threshold),
        "relation": relation,
    }


def _lemma_checks() -> list[dict]:
    ts = np.linspace(1e-4, 1.0, 999)
    systems = [w.nesbitt()] + [w.young(p) for p in LEMMA_P_VALUES]
    out = []
    for ws in systems:
        margin = float((ws.lemma_rhs_arrays(ts) - 1.0).min())
        out.append(_check(f"lemma/{ws.label()}", margin, -1e-12, "ge"))
    return out


def _moment_checks(quad: QuadSpec) -> list[dict]:
    out = []
    cases = [(w.young(p), None) for p in MOMENT_P_FULL]
    cases += [(w.young(p), ("m10", "m01")) for p in MOMENT_P_FIRST_ONLY]
    cases.append((w.nesbitt(), None))
    for ws, only in cases:
        closed = ws.moments_closed_form().entries()
        oracle = ws.moments(quad).entries()
        for key in ("m10", "m01", "m20", "m02", "m11"):
            if only is not None and key not in only:
                continue
            if not closed[key].defined:
                continue
            if not oracle[key].defined:
                out.append(
                    _check(
                        f"moments/{ws.label()}/{key}",
                        float("inf"),
                        1e-9,
                        "le",
                        kind="numeric",
                    )
                )
                continue
            diff = abs(closed[key].value - oracle[key].value)
            out.append(
                _check(f"moments/{ws.label()}/{key}", diff, 1e-9, "le", kind="numeric")
            )
    return out


def _erratum_checks(quad: QuadSpec) -> list[dict]:
    ws = w.young(1.5)

    def cross(t):
        wx, wy = ws.eval_arrays(t)
        return wx * wy

    res = integrate_unit(cross, quad, vectorized=True)
    out = []
    if not res.converged:
        out.append(_check("erratum/oracle_p1.5", float("inf"), 1e-9, "le", kind="numeric"))
        return out
    proof = w.young_cross_moment_proof_display(1.5)
    theorem = w.young_cross_moment_theorem_display(1.5)
    out.append(_check("erratum/proof_display_matches_oracle_p1.5", abs(res.value - proof), 1e-9, "le"))
    out.append(_check("erratum/theorem_display_deviates_p1.5", abs(res.value - theorem), 0.04, "ge"))
    diff_p2 = abs(
        w.young_cross_moment_proof_display(2.0) - w.young_cross_moment_theorem_display(2.0)
    )
    out.append(_check("erratum/displays_coincide_p2", diff_p2, 1e-9, "le"))
    return out


def _divergence_checks(quad: QuadSpec) -> list[dict]:
    out = []
    f1 = parse_function("x")
    for p in (2.0, 3.0):
        try:
            th.young_product_bound(f1, f1, Interval(0.0, 1.0), p, quad)
            raised = 0.0
        except DivergentCoefficient:
            raised = 1.0
        out.append(_check(f"divergence/young_product_p{p:g}", raised, 0.5, "ge"))

    def integrand(t):
        return t**-1.0 * (1.0 - t) ** 2

    res = integrate_unit(integrand, quad, vectorized=True)
    out.append(
        _check(
            "divergence/young_m02_integrand_p2",
            0.0 if res.converged else 1.0,
            0.5,
            "ge",
        )
    )
    return out


def _battery() -> list[tuple[FunctionDef, Interval, str]]:
    items = []
    for a, b in BATTERY_INTERVALS:
        for src in BATTERY_SOURCES:
            items.append((parse_function(src), Interval(a, b), f"{src}@[{a:g},{b:g}]"))
    return items


def _battery_checks(quad: QuadSpec, grid: mb.GridSpec) -> list[dict]:
    out = []
    classes: list[tuple[str, w.WeightSystem, float | None]] = [
        ("classical", w.classical(), None),
        ("nesbitt", w.nesbitt(), None),
    ]
    classes += [(f"young_p{p:g}", w.young(p), p) for p in SANDWICH_P_VALUES]
    for f, interval, tag in _battery():
        members: dict[str, bool] = {}
        for cname, ws, _ in classes:
            report = mb.check_convex(f, interval, ws, grid)
            member = report.verdict is mb.Verdict.NO_VIOLATION_AT_RESOLUTION
            members[cname] = member
            out.append(
                _check(f"membership/{tag}/{cname}", report.max_gap, grid.tol, "le")
            )
        if members["classical"]:
            rep = th.hadamard_classical(f, interval, quad)
            out.append(
                _check(f"sandwich/hadamard/{tag}", min(rep.margins), -1e-8, "ge")
            )
            upper, lower = th.pachpatte_bounds(f, f, interval, quad)
            out.append(
                _check(
                    f"product/pachpatte_upper/{tag}",
                    upper.bound - upper.integral_avg,
                    -1e-8,
                    "ge",
                )
            )
            out.append(
                _check(
                    f"product/pachpatte_lower/{tag}",
                    lower.integral_avg + lower.bound - lower.midpoint_product,
                    -1e-8,
                    "ge",
                )
            )
        for p in SANDWICH_P_VALUES:
            if not members[f"young_p{p:g}"]:
                continue
            rep = th.young_sandwich(f, interval, p, quad)
            out.append(
                _check(f"sandwich/young_p{p:g}/{tag}", min(rep.margins), -1e-8, "ge")
            )
            rep = th.young_right_bound(f, interval, p, quad)
            out.append(
                _check(f"right_bound/young_p{p:g}/{tag}", rep.margins[1], -1e-8, "ge")
            )
        for p in PRODUCT_P_VALUES:
            if not members[f"young_p{p:g}"]:
                continue
            rep = th.young_product_bound(f, f, interval, p, quad)
            out.append(
                _check(
                    f"product/young_p{p:g}/{tag}",
                    rep.bound - rep.integral_avg,
                    -1e-8,
                    "ge",
                )
            )
        if members["nesbitt"]:
            rep = th.nesbitt_sandwich(f, interval, quad)
            out.append(
                _check(f"sandwich/nesbitt/{tag}", min(rep.margins), -1e-8, "ge")
            )
            rep = th.nesbitt_product_bound(f, f, interval, quad)
            out.append(
                _check(
                    f"product/nesbitt_a3/{tag}",
                    rep.bound - rep.integral_avg,
                    -1e-8,
                    "ge",
                )
            )
            rep = th.nesbitt_similarly_ordered_bound(f, f, interval, quad)
            out.append(
                _check(
                    f"product/nesbitt_a5/{tag}",
                    rep.bound - rep.integral_avg,
                    -1e-8,
                    "ge",
                )
            )
    return out


def _degeneration_checks(quad: QuadSpec) -> list[dict]:
    out = []
    p = 1.0 + 1e-8
    table = w.young(p).moments_closed_form()
    out.append(
        _check(
            "degeneration/right_coefficients",
            max(abs(table.m10.value - 0.5), abs(table.m01.value - 0.5)),
            1e-6,
            "le",
        )
    )
    for src, (a, b) in (("x^2", (0.0, 1.0)), ("exp(x)", (1.0, 3.0))):
        f = parse_function(src)
        interval = Interval(a, b)
        ys = th.young_sandwich(f, interval, p, quad)
        yr = th.young_right_bound(f, interval, p, quad)
        hc = th.hadamard_classical(f, interval, quad)
        metric = max(
            abs(ys.left_value - hc.left_value),
            abs(ys.right_value - hc.right_value),
            abs(yr.right_value - hc.right_value),
        )
        out.append(
            _check(f"degeneration/young_vs_hadamard/{src}@[{a:g},{b:g}]", metric, 1e-6, "le")
        )
    return out


def _proposition_checks(grid: mb.GridSpec) -> list[dict]:
    out = []
    f = parse_function("-1")
    interval = Interval(0.0, 1.0)
    ws = w.young(2.0)
    # canonical Proposition witness: a t-grid whose first point is 1/2
    witness_grid = mb.GridSpec(
        nx=grid.nx, ny=grid.ny, nt=2, t_min=0.5, tol=grid.tol
    )
    report = mb.check_convex(f, interval, ws, witness_grid)
    if report.verdict is mb.Verdict.VIOLATED:
        cert = report.certificate
        out.append(
            _check(
                "proposition/negative_constant_gap_at_half",
                abs(cert.gap - NEGATIVE_CONST_GAP) + abs(cert.t - 0.5),
                1e-4,
                "le",
            )
        )
    else:
        out.append(_check("proposition/negative_constant_gap_at_half", 1.0, 1e-4, "le"))
    default_report = mb.check_convex(f, interval, ws, grid)
    out.append(
        _check(
            "proposition/negative_constant_default_grid",
            1.0 if default_report.verdict is mb.Verdict.VIOLATED else 0.0,
            0.5,
            "ge",
        )
    )
    witness = mb.nonnegativity_witness(parse_function("x-0.5"), interval, 41)
    out.append(
        _check(
            "proposition/nonnegativity_witness",
            abs(witness - 0.0) if witness is not None else 1.0,
            0.0,
            "le",
        )
    )
    return out


def _equality_checks(quad: QuadSpec) -> list[dict]:
    out = []
    fx = parse_function("x")
    interval = Interval(0.0, 1.0)
    upper, lower = th.pachpatte_bounds(fx, fx, interval, quad)
    out.append(
        _check(
            "pachpatte/equality_upper_fx",
            abs(upper.integral_avg - upper.bound),
            1e-10,
            "le",
        )
    )
    out.append(
        _check(
            "pachpatte/equality_lower_fx",
            abs(lower.midpoint_product - (lower.integral_avg + lower.bound)),
            1e-10,
            "le",
        )
    )
    one = parse_function("1")
    upper, _ = th.pachpatte_bounds(one, one, interval, quad)
    out.append(
        _check(
            "pachpatte/equality_upper_const1",
            abs(upper.integral_avg - upper.bound),
            1e-10,
            "le",
        )
    )
    return out


def _constant_checks() -> list[dict]:
    out = []
    out.append(
        _check(
            "constants/nesbitt_right_decimal",
            abs(th.NESBITT_RIGHT_COEFF - 0.6479184330),
            1e-10,
            "le",
        )
    )
    out.append(
        _check(
            "constants/a5_paper_decimal",
            abs(th.NESBITT_ORDERED_COEFF - 0.8802),
            5e-5,
            "le",
        )
    )
    coeff_sum = (125.0 / 6.0 - (147.0 / 8.0) * w.LN3) + (
        (117.0 / 8.0) * w.LN3 - 95.0 / 6.0
    )
    out.append(
        _check(
            "constants/a5_is_sum_of_a3",
            abs(th.NESBITT_ORDERED_COEFF - coeff_sum),
            1e-12,
            "le",
        )
    )
    table = w.nesbitt().moments_closed_form()
    ws = w.nesbitt()

    def wsum_sq(t):
        wx, wy = ws.eval_arrays(t)
        return (wx + wy) ** 2

    res = integrate_unit(wsum_sq, QuadSpec(), vectorized=True)
    lhs = table.m20.value + 2.0 * table.m11.value + table.m02.value
    out.append(
        _check(
            "constants/nesbitt_square_expansion",
            abs(lhs - res.value) if res.converged else float("inf"),
            1e-9,
            "le",
            kind="numeric",
        )
    )
    return out


def verify_paper(
    quad: QuadSpec = QuadSpec(), grid: mb.GridSpec = mb.GridSpec()
) -> Report:
    """Run the full verification suite and collect a deterministic report."""
    results: list[dict] = []
    results += _lemma_checks()
    results += _moment_checks(quad)
    results += _erratum_checks(quad)
    results += _divergence_checks(quad)
    results += _battery_checks(quad, grid)
    results += _degeneration_checks(quad)
    results += _proposition_checks(grid)
    results += _equality_checks(quad)
    results += _constant_checks()
    statuses = {r["status"] for r in results}
    if "numeric_failure" in statuses:
        overall = Overall.NUMERIC_FAILURE
    elif "violation" in statuses:
        overall = Overall.VIOLATION_FOUND
    else:
        overall = Overall.ALL_HOLD
    config = {"subcommand": "verify-paper", "quad": dataclasses.asdict(quad),
              "grid": dataclasses.asdict(grid)}
    return Report(SCHEMA_VERSION, config, results, overall)


# --- report assembly for the other subcommands ---------------------------------


def _record(kind: str, name: str, payload: dict) -> dict:
    rec = {"kind": kind, "name": name}
    rec.update(payload)
    return rec


def _membership_payload(report: mb.MembershipReport) -> dict:
    payload = {
        "verdict": report.verdict.value,
        "samples": report.samples,
        "max_slack": report.max_slack,
        "max_gap": report.max_gap,
    }
    if report.certificate is not None:
        payload["certificate"] = dataclasses.asdict(report.certificate)
    return payload


def _sandwich_payload(report: th.SandwichReport) -> dict:
    d = dataclasses.asdict(report)
    d["margins"] = list(report.margins)
    return d


def _product_payload(report: th.ProductBoundReport) -> dict:
    return dataclasses.asdict(report)


def _constants_payload(row: th.ConstantsRow) -> dict:
    return dataclasses.asdict(row)


# --- output formatting ----------------------------------------------------------


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _flatten(value: Any, prefix: str, out: dict) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(value[k], f"{prefix}.{k}" if prefix else str(k), out)
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _flatten(item, f"{prefix}[{i}]", out)
    else:
        out[prefix] = value


def report_to_json(report: Report) -> str:
    payload = {
        "schema_version": report.schema_version,
        "config": report.config,
        "results": report.results,
        "overall": report.overall.value,
    }
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n"


def report_to_text(report: Report) -> str:
    lines = [f"overall: {report.overall.value}"]
    for rec in report.results:
        if "status" in rec and "metric" in rec:
            mark = "PASS" if rec["status"] == "hold" else "FAIL"
            lines.append(
                f"[{mark}] {rec['name']}: metric={_fmt(rec['metric'])} "
                f"{rec['relation']} threshold={_fmt(rec['threshold'])}"
            )
            continue
        flat: dict = {}
        _flatten(rec, "", flat)
        name = flat.pop("name", "")
        kind = flat.pop("kind", "")
        parts = ", ".join(f"{k}={_fmt(v)}" for k, v in flat.items())
        lines.append(f"{kind} {name}: {parts}")
    return "\n".join(lines) + "\n"


def report_to_csv(report: Report) -> str:
    rows = report.results
    if not rows:
        return "\n"
    if all(r.get("kind") == "constants" for r in rows):
        header = ["name", "p", "closed_form", "oracle", "abs_diff"]
        lines = [",".join(header)]
        for r in rows:
            lines.append(
                ",".join(
                    "" if r.get(col) is None else _fmt(r.get(col)) for col in header
                )
            )
        return "\n".join(lines) + "\n"
    if all("metric" in r for r in rows):
        lines = ["name,status,relation,metric,threshold"]
        for r in rows:
            lines.append(
                f"{r['name']},{r['status']},{r['relation']},"
                f"{_fmt(r['metric'])},{_fmt(r['threshold'])}"
            )
        return "\n".join(lines) + "\n"
    flats = []
    keys: list[str] = []
    for r in rows:
        flat: dict = {}
        _flatten(r, "", flat)
        flats.append(flat)
        for k in flat:
            if k not in keys:
                keys.append(k)
    lines = [",".join(keys)]
    for flat in flats:
        lines.append(",".join(_fmt(flat[k]) if k in flat else "" for k in keys))
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report_to_json(report)
    if fmt == "csv":
        return report_to_csv(report)
    return report_to_text(report)


# --- argument handling -----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexa",
        description="Numerical verification of Young-/Nesbitt-convexity and "
        "their Hadamard-type inequalities.",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp, with_function=True, with_class=True, with_interval=True):
        if with_function:
            sp.add_argument("--f", dest="f_source", required=True, help="function of x")
        if with_class:
            sp.add_argument(
                "--class",
                dest="convexity_class",
                choices=["classical", "young", "nesbitt"],
                required=True,
            )
            sp.add_argument("--p", type=float, help="Young exponent (p > 1)")
        if with_interval:
            sp.add_argument("--a", type=float, required=True)
            sp.add_argument("--b", type=float, required=True)
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
        sp.add_argument("--out", help="write the report to this path")
        sp.add_argument("--abs-tol", type=float, default=1e-10)
        sp.add_argument("--rel-tol", type=float, default=1e-10)
        sp.add_argument("--max-subdivisions", type=int, default=2000)

    sp = sub.add_parser("check", help="grid-search membership test")
    add_common(sp)
    sp.add_argument("--nx", type=int, default=41)
    sp.add_argument("--ny", type=int, default=41)
    sp.add_argument("--nt", type=int, default=99)
    sp.add_argument("--t-min", type=float, default=1e-4)
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = sub.add_parser("sandwich", help="evaluate the class's sandwich inequality")
    add_common(sp)

    sp = sub.add_parser("product", help="evaluate the class's product bound(s)")
    add_common(sp)
    sp.add_argument("--g", dest="g_source", help="second function of x")

    sp = sub.add_parser("constants", help="closed-form constants vs quadrature oracle")
    sp.add_argument("--p", type=float, action="append", default=None,
                    help="Young exponent; repeatable")
    sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
    sp.add_argument("--out", help="write the report to this path")
    sp.add_argument("--abs-tol", type=float, default=1e-10)
    sp.add_argument("--rel-tol", type=float, default=1e-10)
    sp.add_argument("--max-subdivisions", type=int, default=2000)

    sp = sub.add_parser("moments", help="weight moments: closed form and quadrature")
    add_common(sp, with_function=False, with_interval=False)

    sp = sub.add_parser("verify-paper", help="run the full verification suite")
    sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
    sp.add_argument("--out", help="write the report to this path")
    sp.add_argument("--abs-tol", type=float, default=1e-10)
    sp.add_argument("--rel-tol", type=float, default=1e-10)
    sp.add_argument("--max-subdivisions", type=int, default=2000)
    return parser


def _quad_spec(args) -> QuadSpec:
    return QuadSpec(
        abs_tol=args.abs_tol,
        rel_tol=args.rel_tol,
        max_subdivisions=args.max_subdivisions,
    )


def _weight_system(args) -> w.WeightSystem:
    cls = args.convexity_class
    if cls == "young":
        if args.p is None:
            raise DomainError("--p is required when --class young")
        return w.young(args.p)
    if args.p is not None:
        raise DomainError(f"--p is only valid with --class young, not {cls}")
    if cls == "classical":
        return w.classical()
    return w.nesbitt()


def _config_echo(args) -> dict:
    skip = {"out"}
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        cfg[key] = value
    return cfg


def _cmd_check(args) -> Report:
    f = parse_function(args.f_source)
    ws = _weight_system(args)
    grid = mb.GridSpec(args.nx, args.ny, args.nt, args.t_min, args.tol)
    report = mb.check_convex(f, Interval(args.a, args.b), ws, grid)
    overall = (
        Overall.ALL_HOLD
        if report.verdict is mb.Verdict.NO_VIOLATION_AT_RESOLUTION
        else Overall.VIOLATION_FOUND
    )
    rec = _record("membership", f"{args.f_source}/{ws.label()}", _membership_payload(report))
    return Report(SCHEMA_VERSION, _config_echo(args), [rec], overall)


def _cmd_sandwich(args) -> Report:
    f = parse_function(args.f_source)
    ws = _weight_system(args)
    interval = Interval(args.a, args.b)
    quad = _quad_spec(args)
    if ws.kind is w.WeightKind.CLASSICAL:
        rep = th.hadamard_classical(f, interval, quad)
        name = "hadamard_classical"
    elif ws.kind is w.WeightKind.YOUNG:
        rep = th.young_sandwich(f, interval, args.p, quad)
        name = f"young_sandwich_p{args.p:g}"
    else:
        rep = th.nesbitt_sandwich(f, interval, quad)
        name = "nesbitt_sandwich"
    overall = (
        Overall.ALL_HOLD if rep.left_holds and rep.right_holds else Overall.VIOLATION_FOUND
    )
    rec = _record("sandwich", name, _sandwich_payload(rep))
    return Report(SCHEMA_VERSION, _config_echo(args), [rec], overall)


def _cmd_product(args) -> Report:
    if args.g_source is None:
        raise DomainError("--g is required for the product subcommand")
    f = parse_function(args.f_source)
    g = parse_function(args.g_source)
    ws = _weight_system(args)
    interval = Interval(args.a, args.b)
    quad = _quad_spec(args)
    records = []
    if ws.kind is w.WeightKind.CLASSICAL:
        upper, lower = th.pachpatte_bounds(f, g, interval, quad)
        records.append(_record("product", "pachpatte_upper", _product_payload(upper)))
        records.append(_record("product", "pachpatte_lower", _product_payload(lower)))
    elif ws.kind is w.WeightKind.YOUNG:
        rep = th.young_product_bound(f, g, interval, args.p, quad)
        records.append(
            _record("product", f"young_product_p{args.p:g}", _product_payload(rep))
        )
    else:
        rep = th.nesbitt_product_bound(f, g, interval, quad)
        records.append(_record("product", "nesbitt_product", _product_payload(rep)))
        fa, fb = f(interval.a), f(interval.b)
        ga, gb = g(interval.a), g(interval.b)
        if (fa - fb) * (ga - gb) >= 0.0:
            rep = th.nesbitt_similarly_ordered_bound(f, g, interval, quad)
            records.append(
                _record("product", "nesbitt_similarly_ordered", _product_payload(rep))
            )
    overall = (
        Overall.ALL_HOLD
        if all(r.get("holds", True) for r in records)
        else Overall.VIOLATION_FOUND
    )
    return Report(SCHEMA_VERSION, _config_echo(args), records, overall)


def _cmd_constants(args) -> Report:
    p_values = args.p if args.p else [1.5]
    rows = th.constants_table(p_values, _quad_spec(args))
    records = [_record("constants", row.name, _constants_payload(row)) for row in rows]
    return Report(SCHEMA_VERSION, _config_echo(args), records, Overall.ALL_HOLD)


def _cmd_moments(args) -> Report:
    ws = _weight_system(args)
    closed = ws.moments_closed_form().entries()
    oracle = ws.moments(_quad_spec(args)).entries()
    records = []
    numeric_failure = False
    for key in ("m10", "m01", "m20", "m02", "m11"):
        c, o = closed[key], oracle[key]
        if c.defined != o.defined:
            numeric_failure = True
        payload = {
            "closed_form": c.value if c.defined else None,
            "oracle": o.value if o.defined else None,
            "defined": c.defined,
            "abs_diff": abs(c.value - o.value) if c.defined and o.defined else None,
        }
        records.append(_record("moments", f"{ws.label()}/{key}", payload))
    overall = Overall.NUMERIC_FAILURE if numeric_failure else Overall.ALL_HOLD
    return Report(SCHEMA_VERSION, _config_echo(args), records, overall)


def _cmd_verify_paper(args) -> Report:
    return verify_paper(_quad_spec(args))


_COMMANDS = {
    "check": _cmd_check,
    "sandwich": _cmd_sandwich,
    "product": _cmd_product,
    "constants": _cmd_constants,
    "moments": _cmd_moments,
    "verify-paper": _cmd_verify_paper,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        report = _COMMANDS[args.subcommand](args)
    except (ExprSyntaxError, ExprDomainError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DivergentCoefficient, OrderingError, NonConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return _EXIT_BY_OVERALL[report.overall]


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
