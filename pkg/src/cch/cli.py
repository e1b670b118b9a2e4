"""Command-line surface with deterministic report emission.

Every report starts with a schema line and contains only exact rationals
and integers; identical invocations produce byte-identical report bodies.
Exit codes: 0 success or all checks passed, 1 a verification reported a
failure, 2 usage or input errors.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from math import gcd

from .buildings import (
    building_key,
    enumerate_buildings,
    verify_propositions,
)
from .complexes import (
    build_complex,
    gluing_count,
    homology_ranks,
    render_homology_report,
    verify_d_squared,
)
from .errors import CCHError, EnumerationLimitError, ScenarioError, UsageError
from .orbits import (
    CurveData,
    OrbitRef,
    RotationData,
    cz_index,
    fredholm_index,
    grading,
    is_good,
    orbit_type,
)
from .scenario import (
    format_rational,
    parse_orbit_key,
    parse_rational,
    parse_scenario,
)
from .writhe import (
    BreakingVerdict,
    EndSide,
    no_bad_break_certificate,
    wind_bound,
    writhe_bound,
)

SCHEMA_LINE = "schema: cch-report/1"
TIME_LIMIT_ENV = "CCH_TIME_LIMIT"

COMMANDS = (
    "cz",
    "index",
    "enumerate",
    "verify-props",
    "no-bad-break",
    "bounds",
    "gluing",
    "complex",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


def _time_limit():
    raw = os.environ.get(TIME_LIMIT_ENV)
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{TIME_LIMIT_ENV} must be a number, got {raw!r}")


def _report(command, lines):
    return "\n".join([SCHEMA_LINE, f"command: {command}"] + lines) + "\n"


def _scenario_echo(scenario):
    lines = []
    for o in scenario.orbits:
        lines.append(
            f"orbit {o.name}: theta={format_rational(o.theta)} "
            f"bound={o.validity_bound} class={o.homotopy_class} "
            f"contractible={str(o.contractible).lower()}"
        )
    p = scenario.profile
    lines.append(
        f"profile: generic_J={str(p.generic_J).lower()} "
        f"dynamically_convex={str(p.dynamically_convex).lower()} "
        f"condition_star={str(p.condition_star).lower()}"
    )
    b = scenario.bounds
    lines.append(
        f"bounds: levels={b.max_levels} multiplicity={b.max_total_multiplicity} "
        f"index={b.max_index} components={b.max_components_per_level} "
        f"negative_ends={b.max_negative_ends}"
    )
    return lines


def _cmd_cz(args):
    theta = parse_rational(args.theta, "--theta")
    if args.mult < 1:
        raise UsageError("--mult must be >= 1")
    orbit = RotationData(
        "orbit", theta, args.mult, contractible=args.contractible
    )
    ref = OrbitRef(orbit, args.mult)
    lines = [
        f"theta: {format_rational(theta)}",
        f"multiplicity: {args.mult}",
        f"cz: {cz_index(ref)}",
        f"type: {orbit_type(ref).value}",
        f"good: {str(is_good(ref)).lower()}",
    ]
    if args.contractible:
        lines.append(f"grading: {grading(ref)}")
    else:
        lines.append("grading: unavailable (orbit not marked contractible)")
    return 0, _report("cz", lines)


def _parse_orbit_flag(text):
    if "=" not in text or ":" not in text:
        raise UsageError(f"--orbit expects name=p/q:bound, got {text!r}")
    name, _, rest = text.partition("=")
    theta_text, _, bound_text = rest.rpartition(":")
    theta = parse_rational(theta_text, f"--orbit {name}")
    try:
        bound = int(bound_text)
    except ValueError:
        raise UsageError(f"--orbit bound must be an integer, got {bound_text!r}")
    return RotationData(name, theta, bound)


def _cmd_index(args):
    orbits = {}
    for text in args.orbit:
        orbit = _parse_orbit_flag(text)
        if orbit.name in orbits:
            raise UsageError(f"duplicate orbit name {orbit.name!r}")
        orbits[orbit.name] = orbit
    positive = tuple(parse_orbit_key(t, orbits, "--positive") for t in args.positive)
    negative = tuple(parse_orbit_key(t, orbits, "--negative") for t in args.negative)
    curve = CurveData(args.genus, positive, negative, args.c_tau)
    lines = [
        "curve: genus={} c_tau={} positive={} negative={}".format(
            args.genus,
            args.c_tau,
            ",".join(args.positive) or "-",
            ",".join(args.negative) or "-",
        ),
        f"euler-characteristic: {curve.euler_characteristic}",
        f"index: {fredholm_index(curve)}",
    ]
    return 0, _report("index", lines)


def _cmd_enumerate(args):
    scenario = parse_scenario(args.scenario)
    lines = _scenario_echo(scenario)
    try:
        buildings = enumerate_buildings(
            scenario.orbits, scenario.profile, scenario.bounds, time_limit=_time_limit()
        )
    except EnumerationLimitError as err:
        lines.append("partial: true")
        lines.append(f"buildings: {len(err.partial)}")
        for b in err.partial:
            lines.append(
                f"building: index={b.total_index} levels={len(b.levels)} "
                f"negative-ends={len(b.negative_ends)} key={building_key(b)}"
            )
        return 2, _report("enumerate", lines)
    lines.append(f"buildings: {len(buildings)}")
    for b in buildings:
        lines.append(
            f"building: index={b.total_index} levels={len(b.levels)} "
            f"negative-ends={len(b.negative_ends)} key={building_key(b)}"
        )
    return 0, _report("enumerate", lines)


def _cmd_verify_props(args):
    scenario = parse_scenario(args.scenario)
    lines = _scenario_echo(scenario)
    report = verify_propositions(
        scenario.orbits, scenario.profile, scenario.bounds, time_limit=_time_limit()
    )
    for entry in report.entries:
        lines.append(
            f"building: index={entry.index} levels={entry.levels} "
            f"negative-ends={entry.negative_ends} class={entry.classification} "
            f"key={entry.key}"
        )
    lines.extend(report.lines())
    return (0 if report.ok else 1), _report("verify-props", lines)


def _grid_thetas(max_q, theta_upper):
    out = []
    for q in range(3, max_q + 1):
        for p in range(1, theta_upper * q):
            if gcd(p, q) == 1:
                out.append((p, q))
    return out


def _cmd_no_bad_break(args):
    if args.grid:
        thetas = _grid_thetas(args.max_denominator, args.theta_upper)
        if args.seed is not None:
            random.Random(args.seed).shuffle(thetas)
        checked = 0
        bad = []
        for p, q in thetas:
            ft = p // q
            for d in range(1, args.max_degree + 1):
                fdt = (d * p) // q
                fd1t = ((d + 1) * p) // q
                checked += 1
                if fd1t == fdt + ft and d * (fd1t - 2 * ft - 1) - (d - 1) * fdt >= 0:
                    bad.append((Fraction(p, q), d))
        bad.sort()
        lines = [
            "mode: grid",
            f"max-degree: {args.max_degree}",
            f"max-denominator: {args.max_denominator}",
            f"theta-upper: {args.theta_upper}",
            f"certificates: {checked}",
            f"counterexamples: {len(bad)}",
        ]
        for theta, d in bad:
            lines.append(f"counterexample: theta={format_rational(theta)} degree={d}")
        lines.append(
            "verdict: " + ("A-and-B-unsatisfiable" if not bad else "counterexample-found")
        )
        return (0 if not bad else 1), _report("no-bad-break", lines)
    if args.theta is None or args.degree is None:
        raise UsageError("provide --theta and --d, or --grid")
    theta = parse_rational(args.theta, "--theta")
    cert = no_bad_break_certificate(theta, args.degree)
    code = 0 if cert.verdict is not BreakingVerdict.COUNTEREXAMPLE else 1
    return code, _report("no-bad-break", cert.lines())


def _cmd_bounds(args):
    theta = parse_rational(args.theta, "--theta")
    orbit = RotationData("orbit", theta, args.mult)
    ref = OrbitRef(orbit, args.mult)
    side = EndSide.POSITIVE if args.side == "positive" else EndSide.NEGATIVE
    lines = [
        f"orbit: theta={format_rational(theta)} multiplicity={args.mult}",
        f"cz: {cz_index(ref)}",
        f"side: {args.side}",
        f"wind-bound: {wind_bound(ref, side)}",
        f"writhe-bound: {writhe_bound(ref, side)}",
    ]
    if args.improved:
        lines.append(
            f"improved-writhe-bound: {writhe_bound(ref, side, use_improved=True)}"
        )
    return 0, _report("bounds", lines)


def _cmd_gluing(args):
    out = gluing_count(args.d_plus, args.d_minus, args.d_middle)
    return 0, _report("gluing", [f"ends={out.count} degree={out.end_degree}"])


def _cmd_complex(args):
    scenario = parse_scenario(args.scenario)
    lines = _scenario_echo(scenario)
    max_mult = max((o.validity_bound for o in scenario.orbits), default=1)
    cx = build_complex(
        scenario.orbits,
        max_mult,
        scenario.relative_gradings,
        scenario.count_table(),
    )
    lines.append(f"generators: {len(cx.generators)}")
    report = verify_d_squared(cx)
    lines.extend(report.lines())
    if report.ok:
        ranks = homology_ranks(cx)
        lines.extend(render_homology_report(ranks))
    return (0 if report.ok else 1), _report("complex", lines)


def _build_parser():
    parser = _Parser(prog="cch", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("cz", help="Conley-Zehnder data of an orbit cover")
    p.add_argument("--theta", required=True)
    p.add_argument("--mult", type=int, required=True)
    p.add_argument("--contractible", action="store_true")

    p = sub.add_parser("index", help="Fredholm index of a curve")
    p.add_argument("--orbit", action="append", default=[], metavar="name=p/q:bound")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--c-tau", dest="c_tau", type=int, default=0)
    p.add_argument("--positive", action="append", default=[], metavar="name^m")
    p.add_argument("--negative", action="append", default=[], metavar="name^m")

    p = sub.add_parser("enumerate", help="list building skeletons for a scenario")
    p.add_argument("--scenario", required=True)

    p = sub.add_parser("verify-props", help="check low-index building claims")
    p.add_argument("--scenario", required=True)

    p = sub.add_parser("no-bad-break", help="breaking-exclusion certificates")
    p.add_argument("--theta")
    p.add_argument("--d", dest="degree", type=int)
    p.add_argument("--grid", action="store_true")
    p.add_argument("--max-degree", type=int, default=200)
    p.add_argument("--max-denominator", type=int, default=50)
    p.add_argument("--theta-upper", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("bounds", help="winding and writhe bounds of a braided end")
    p.add_argument("--theta", required=True)
    p.add_argument("--mult", type=int, required=True)
    p.add_argument("--side", choices=("positive", "negative"), required=True)
    p.add_argument("--improved", action="store_true")

    p = sub.add_parser("gluing", help="index-two gluing end count")
    p.add_argument("d_plus", type=int)
    p.add_argument("d_minus", type=int)
    p.add_argument("d_middle", type=int)

    p = sub.add_parser("complex", help="build and verify a chain complex")
    p.add_argument("--scenario", required=True)

    return parser


_HANDLERS = {
    "cz": _cmd_cz,
    "index": _cmd_index,
    "enumerate": _cmd_enumerate,
    "verify-props": _cmd_verify_props,
    "no-bad-break": _cmd_no_bad_break,
    "bounds": _cmd_bounds,
    "gluing": _cmd_gluing,
    "complex": _cmd_complex,
}


def run_command(argv):
    """Execute one CLI invocation; returns (exit code, report text)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError("missing subcommand", parser.format_usage())
        return _HANDLERS[args.command](args)
    except UsageError as err:
        usage = err.usage or parser.format_usage()
        return 2, usage + f"error: {err}\n"
    except ScenarioError as err:
        return 2, _report("error", [f"error: {err}"])
    except CCHError as err:
        return 2, _report("error", [f"error: {err}"])


def main(argv=None):
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
