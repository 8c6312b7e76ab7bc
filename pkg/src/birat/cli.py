"""Command-line front end.

Three subcommands over the same pipeline:

    resolve   build the blow-up tower for one map and print its ledger
    indices   full index report (identities, ample bound, effective bracket)
    table     run the three reference families and compare against the
              published degree / dynamical degree / effective index values

Exit codes: 0 ok, 2 unusable input (degree < 2, parse error, irrational base
point), 3 inverse check failed, 4 budget exhausted, 5 table mismatch.
Output is deterministic for a fixed seed (flag --seed, else env BIRAT_SEED,
else 0).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .automap import (
    AffineAutomorphism,
    automorphism_from_text,
    degree_sequence,
    dynamical_degree_estimate,
    henon_builder,
    transposed_henon_builder,
)
from .blowup import DEFAULT_STEP_BUDGET, ResolutionTower, canonical_resolution
from .errors import (
    BiratError,
    BudgetExceededError,
    DegreeTooSmallError,
    NonRationalIndeterminacyError,
    NotInverseError,
    PolySyntaxError,
    UnknownVariableError,
    VariableMismatchError,
)
from .picard import (
    IndexReport,
    ample_index_upper_bound,
    build_lattice,
    classify_effective_cone,
    effective_cone_threshold,
    effective_index_bracket,
    index_class,
    negative_curves,
    pullback_classes,
    verify_identities,
)
from .polyalg import Polynomial, parse_poly

DEFAULT_ITERATES = 4  # smallest count giving three consecutive degree ratios
DEFAULT_TERM_BUDGET = 10**6

EXIT_BAD_INPUT = 2
EXIT_NOT_INVERSE = 3
EXIT_BUDGET = 4
EXIT_TABLE_MISMATCH = 5

# Published reference values: map family, algebraic degree, dynamical degree,
# effective index.
REFERENCE_TABLE = (
    ("henon", "(y, y^2 + b + a*x)", 2, Fraction(2), Fraction(5, 2)),
    ("transposed3", "(y + a*x^3, x)", 3, Fraction(3), Fraction(10, 3)),
    ("transposed4", "(y + a*x^4, x)", 4, Fraction(4), Fraction(17, 4)),
)


@dataclass
class RunConfig:
    iterates: int = DEFAULT_ITERATES
    step_budget: int = DEFAULT_STEP_BUDGET
    term_budget: int = DEFAULT_TERM_BUDGET
    seed: str = "0"
    fmt: str = "text"


def random_alphas(seed: str, count: int = 5) -> list[Fraction]:
    rng = random.Random(f"birat-alphas:{seed}")
    out = []
    while len(out) < count:
        alpha = Fraction(rng.randint(-60, 60), rng.randint(1, 12))
        if alpha not in out:
            out.append(alpha)
    return out


def compute_index_report(phi: AffineAutomorphism, config: RunConfig) -> IndexReport:
    tower = canonical_resolution(phi, seed=config.seed, step_budget=config.step_budget)
    lattice = build_lattice(tower)
    inv = pullback_classes(tower, lattice)
    checks = verify_identities(inv, lattice, random_alphas(config.seed))
    ample_bound, witnesses = ample_index_upper_bound(inv, lattice)
    eff_lower, eff_upper = effective_index_bracket(inv, lattice)
    verdict = classify_effective_cone(eff_lower, eff_upper, inv.a_n, inv.a_prime_m)
    estimate = dynamical_degree_estimate(phi, config.iterates, config.term_budget)
    observed = None
    if estimate.estimate is not None and eff_lower == eff_upper:
        observed = estimate.estimate + Fraction(1, phi.degree_fwd) == eff_lower
    return IndexReport(
        map_text=phi.as_text(),
        degree=phi.degree_fwd,
        delta_estimate=estimate.presentation(),
        delta_exact=estimate.estimate,
        degree_sequence=list(estimate.degrees),
        n=tower.n,
        m=tower.m,
        i0=tower.i0,
        regular=tower.regular,
        invariants=inv,
        identity_checks=checks,
        ample_bound=ample_bound,
        ample_witnesses=witnesses,
        eff_lower=eff_lower,
        eff_upper=eff_upper,
        theorem_b_verdict=verdict,
        threshold=effective_cone_threshold(inv),
        negative_curve_labels=[
            (c.label, c.self_intersection()) for c in negative_curves(lattice)
        ],
        observed_delta_relation=observed,
    )


# ---------------------------------------------------------------------------
# map construction from CLI arguments


def build_map(args) -> AffineAutomorphism:
    if args.map:
        return automorphism_from_text(args.map)
    if args.builder == "henon":
        q = parse_poly("y^2", ("x", "y")) + Polynomial.constant(("x", "y"), args.b)
        return henon_builder(q, args.a)
    if args.builder == "transposed":
        return transposed_henon_builder(args.d, args.a)
    raise SystemExit("one of --map or --builder is required")


def _reference_map(kind: str, a: Fraction, b: Fraction) -> AffineAutomorphism:
    if kind == "henon":
        q = parse_poly("y^2", ("x", "y")) + Polynomial.constant(("x", "y"), b)
        return henon_builder(q, a)
    degree = int(kind.removeprefix("transposed"))
    return transposed_henon_builder(degree, a)


# ---------------------------------------------------------------------------
# printing


def _emit(payload: dict, lines: list[str], fmt: str):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_resolve(args) -> int:
    config = _config_from(args)
    phi = build_map(args)
    tower = canonical_resolution(phi, seed=config.seed, step_budget=config.step_budget)
    report = tower.to_report()
    lines = [
        f"map: {phi.as_text()}",
        f"degree: {tower.deg_psi} (inverse {tower.deg_psi_prime})",
        f"regular: {tower.regular}   i0: {tower.i0}   n: {tower.n}   m: {tower.m}"
        + ("   (families swapped so n <= m)" if tower.swapped else ""),
        "ledger:",
    ]
    for rec in report["records"]:
        center = rec["center"]
        lines.append(
            f"  {rec['label']:>4} [{rec['family']:7}] center chart {center['chart']} "
            f"({center['u']}, {center['v']})"
            f"  on H: {'yes' if rec['on_line_at_infinity'] else 'no '}"
            f"  parent: {rec['parent_label'] or '-':>4}"
            f"  mult(psi, psi', line): ({rec['mult_psi']}, {rec['mult_psi_prime']}, {rec['mult_pi']})"
        )
    _emit(report, lines, config.fmt)
    return 0


def render_index_report(report: IndexReport) -> list[str]:
    lines = [
        f"map: {report.map_text}",
        f"degree: {report.degree}   delta estimate: {report.delta_estimate}"
        f"   degree sequence: {report.degree_sequence}",
        f"tower: n = {report.n}, m = {report.m}, i0 = {report.i0}, regular = {report.regular}",
        f"coefficients: b = {report.invariants.b}, c = {report.invariants.c}, "
        f"e = {report.invariants.e}, c_n = {report.invariants.c_n}, "
        f"a_n = {report.invariants.a_n}, a'_m = {report.invariants.a_prime_m}",
        f"identity checks: {sum(c.passed for c in report.identity_checks)}"
        f"/{len(report.identity_checks)} passed",
    ]
    for check in report.identity_checks:
        if not check.passed:
            lines.append(f"  FAILED {check.name}: {check.lhs} != {check.rhs}")
    lines.append(f"α(φ,amp) ≤ {report.ample_bound} on this resolution (witness H#)")
    if report.eff_exact is not None:
        lines.append(f"α(φ,eff) = {report.eff_exact} on the canonical resolution")
    else:
        lines.append(
            f"α(φ,eff) in [{report.eff_lower}, {report.eff_upper}] on the canonical resolution"
        )
    lines.append(
        f"effective cone: {report.theorem_b_verdict} "
        f"(threshold -(a_n+a'_m)/3 = {report.threshold})"
    )
    if report.delta_exact is not None:
        relation = Fraction(report.delta_exact) + Fraction(1, report.degree)
        note = "matches" if report.observed_delta_relation else "differs from"
        if report.eff_exact is not None:
            lines.append(
                f"observed: delta + 1/deg = {relation} {note} the effective index"
            )
    return lines


def cmd_indices(args) -> int:
    config = _config_from(args)
    phi = build_map(args)
    report = compute_index_report(phi, config)
    _emit(report.to_dict(), render_index_report(report), config.fmt)
    return 0


def cmd_table(args) -> int:
    config = _config_from(args)
    rows = []
    all_match = True
    for kind, shape, ref_deg, ref_delta, ref_eff in REFERENCE_TABLE:
        phi = _reference_map(kind, args.a, args.b)
        report = compute_index_report(phi, config)
        delta = report.delta_exact
        eff = report.eff_exact
        match = report.degree == ref_deg and delta == ref_delta and eff == ref_eff
        all_match = all_match and match
        rows.append(
            {
                "family": shape,
                "map": report.map_text,
                "degree": {"computed": report.degree, "reference": ref_deg},
                "dynamical_degree": {
                    "computed": str(delta) if delta is not None else report.delta_estimate,
                    "reference": str(ref_delta),
                },
                "effective_index": {
                    "computed": str(eff) if eff is not None else
                    f"[{report.eff_lower}, {report.eff_upper}]",
                    "reference": str(ref_eff),
                },
                "match": match,
            }
        )
    payload = {
        "parameters": {"a": str(args.a), "b": str(args.b), "seed": config.seed,
                       "iterates": config.iterates},
        "rows": rows,
        "all_match": all_match,
    }
    lines = [
        f"{'map':<22} {'degree':>13} {'dyn. degree':>13} {'eff. index':>13}  status",
    ]
    for row in rows:
        deg_cell = "{computed} / {reference}".format(**row["degree"])
        dd_cell = "{computed} / {reference}".format(**row["dynamical_degree"])
        eff_cell = "{computed} / {reference}".format(**row["effective_index"])
        status = "ok" if row["match"] else "MISMATCH"
        lines.append(
            f"{row['family']:<22} {deg_cell:>13} {dd_cell:>13} {eff_cell:>13}  {status}"
        )
    lines.append("all rows match" if all_match else "MISMATCH against the reference table")
    _emit(payload, lines, config.fmt)
    return 0 if all_match else EXIT_TABLE_MISMATCH


# ---------------------------------------------------------------------------
# argument plumbing


def _config_from(args) -> RunConfig:
    seed = args.seed if args.seed is not None else os.environ.get("BIRAT_SEED", "0")
    return RunConfig(
        iterates=args.iterates,
        step_budget=args.step_budget,
        term_budget=args.term_budget,
        seed=str(seed),
        fmt=args.format,
    )


def _add_common(parser: argparse.ArgumentParser, with_map: bool = True):
    if with_map:
        parser.add_argument("--map", help='four polynomials "P1; P2; Q1; Q2" in x, y')
        parser.add_argument("--builder", choices=("henon", "transposed"))
        parser.add_argument("--d", type=int, default=3, help="exponent for the transposed builder")
    parser.add_argument("--a", type=Fraction, default=Fraction(1), help="rational coefficient a")
    parser.add_argument("--b", type=Fraction, default=Fraction(1), help="rational constant b")
    parser.add_argument("--iterates", type=int, default=DEFAULT_ITERATES)
    parser.add_argument("--seed", default=None, help="determinism seed (env BIRAT_SEED)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--step-budget", type=int, default=DEFAULT_STEP_BUDGET)
    parser.add_argument("--term-budget", type=int, default=DEFAULT_TERM_BUDGET)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birat",
        description="Exact blow-up resolutions and cone indices for plane polynomial automorphisms",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_resolve = sub.add_parser("resolve", help="build and print the resolution tower")
    _add_common(p_resolve)
    p_resolve.set_defaults(func=cmd_resolve)
    p_indices = sub.add_parser("indices", help="full index report for one map")
    _add_common(p_indices)
    p_indices.set_defaults(func=cmd_indices)
    p_table = sub.add_parser("table", help="reproduce the reference index table")
    _add_common(p_table, with_map=False)
    p_table.set_defaults(func=cmd_table)
    return parser


def _error_payload(exc: BiratError) -> dict:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("position", "residual", "min_poly_coeffs", "points"):
        value = getattr(exc, attr, None)
        if value is not None:
            payload[attr] = str(value)
    return payload


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NonRationalIndeterminacyError, DegreeTooSmallError, PolySyntaxError,
            UnknownVariableError, VariableMismatchError) as exc:
        print(json.dumps(_error_payload(exc)), file=sys.stderr)
        return EXIT_BAD_INPUT
    except NotInverseError as exc:
        print(json.dumps(_error_payload(exc)), file=sys.stderr)
        return EXIT_NOT_INVERSE
    except BudgetExceededError as exc:
        print(json.dumps(_error_payload(exc)), file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
