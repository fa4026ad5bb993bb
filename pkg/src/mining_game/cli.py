"""Command-line front end: equilibrium sweeps, region map, thresholds, and
Monte-Carlo validation reports.

Subcommands
    two-miner   equilibrium branches vs reward for a fixed (p_v, p_c, d),
                plus a companion file with the exact-rational reward values
                where the equilibrium-set structure changes
    symmetric   pure branches and the symmetric mixed branch vs reward for
                a range of miner counts
    region-map  label grid over the (p_c, R/d) plane for fixed p_v
    threshold   smallest reward at which everyone-mines is an equilibrium,
                per miner count
    simulate    Monte-Carlo estimates vs closed forms, JSON report,
                exit code 1 if any estimator misses its sigma band

Sweep values are parsed as exact rationals ("0.8" means 4/5), so boundary
rows are classified exactly.  CSV uses '.' decimals, LF endings, UTF-8.
Exit codes: 0 success, 1 validation failure (simulate), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

try:
    import tomllib  # py311+
except ModuleNotFoundError:  # pragma: no cover - py310 fallback
    import tomli as tomllib

from . import race, solver, svg, two_miner
from .game_core import GameConfig, MinerSpec, PureProfile, closed_form_race_stats
from .rational import float_str, frac_str
from .two_miner import EquilibriumKind, TwoMinerParams

TWO_MINER_HEADER = ["p_v", "p_c", "d", "R", "R_over_d", "branch", "x1_0", "x2_0",
                    "free_miner", "interval_lo", "interval_hi", "x1_0_exact",
                    "x2_0_exact", "interval_lo_exact", "interval_hi_exact", "regret"]
BREAKPOINTS_HEADER = ["p_v", "p_c", "d", "kind", "R_over_d_exact", "R_exact", "R_float"]
SYMMETRIC_HEADER = ["n", "d", "R", "R_over_d", "branch", "x0", "x0_exact", "regret"]
REGION_HEADER = ["p_v", "p_c", "R_over_d", "p_c_exact", "R_over_d_exact", "label"]
THRESHOLD_HEADER = ["n", "d", "threshold_R", "threshold_R_over_d",
                    "threshold_R_over_d_exact", "n_times_R_over_d"]

MINER_COLORS = (svg.palette(0), svg.palette(1))


class UsageError(Exception):
    """Bad arguments or ranges; maps to exit code 2."""


# --------------------------------------------------------------------------
# parsing helpers
# --------------------------------------------------------------------------

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _profile(text: str) -> tuple[int, ...]:
    try:
        bits = tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"profile must look like '1,0,1': {text!r}") from exc
    if any(b not in (0, 1) for b in bits):
        raise argparse.ArgumentTypeError(f"profile entries must be 0 or 1: {text!r}")
    return bits


def _miner(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"miner must look like 'cost:efficiency': {text!r}")
    return _fraction(parts[0]), _fraction(parts[1])


def reward_grid(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    if step <= 0:
        raise UsageError(f"reward step must be positive, got {step}")
    if hi < lo:
        raise UsageError(f"empty reward range [{lo}, {hi}]")
    if lo < 0:
        raise UsageError(f"rewards must be nonnegative, got minimum {lo}")
    out = []
    r = lo
    while r <= hi:
        out.append(r)
        r += step
    return out


def fraction_linspace(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    if count < 2 or hi <= lo:
        raise UsageError(f"need an increasing range with >= 2 points, got [{lo}, {hi}] x {count}")
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


# --------------------------------------------------------------------------
# output helpers
# --------------------------------------------------------------------------

def _write_rows(path: str, header: list[str], rows: list[list[str]], fmt: str) -> None:
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    elif fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        raise UsageError(f"unknown format {fmt!r}")


def _companion_path(out: str, tag: str) -> str:
    p = Path(out)
    return str(p.with_name(f"{p.stem}.{tag}{p.suffix or '.csv'}"))


# --------------------------------------------------------------------------
# two-miner sweep
# --------------------------------------------------------------------------

def two_miner_sweep(params: TwoMinerParams, rewards: Sequence[Fraction],
                    ) -> list[tuple[Fraction, Fraction, two_miner.EquilibriumSet]]:
    """(R, z, equilibrium set) per grid reward, each member regret-certified."""
    out = []
    for reward in rewards:
        eqset = two_miner.nash_set_2p(params, reward)
        cfg = params.game_config(reward)
        for eq in eqset:
            for profile in eq.sample_profiles(3):
                res = solver.regret(cfg, profile)
                if res != 0:
                    raise RuntimeError(
                        f"equilibrium failed exact regret check at R={reward}: {eq}")
        out.append((reward, reward / params.d, eqset))
    return out


def _two_miner_rows(params: TwoMinerParams,
                    sweep: list[tuple[Fraction, Fraction, two_miner.EquilibriumSet]],
                    ) -> list[list[str]]:
    rows = []
    base = [frac_str(params.p_v), frac_str(params.p_c), frac_str(params.d)]
    for reward, z, eqset in sweep:
        for eq in eqset:
            row = base + [frac_str(reward), float_str(z), eq.kind.value]
            if eq.kind is EquilibriumKind.CONTINUUM:
                lo, hi = eq.interval
                x = ["", ""]
                x_exact = ["", ""]
                fixed = 1 - eq.free_miner
                x[fixed] = float_str(eq.stay_out[fixed])
                x_exact[fixed] = frac_str(eq.stay_out[fixed])
                row += [x[0], x[1], str(eq.free_miner + 1), float_str(lo), float_str(hi),
                        x_exact[0], x_exact[1], frac_str(lo), frac_str(hi), "0"]
            else:
                x1, x2 = eq.stay_out
                row += [float_str(x1), float_str(x2), "", "", "",
                        frac_str(x1), frac_str(x2), "", "", "0"]
            rows.append(row)
    return rows


def _breakpoint_rows(params: TwoMinerParams) -> list[list[str]]:
    lo, hi = two_miner.ne_change_points(params)
    base = [frac_str(params.p_v), frac_str(params.p_c), frac_str(params.d)]
    points = [("jump", lo)] if lo == hi else [("lower", lo), ("upper", hi)]
    return [base + [kind, frac_str(z), frac_str(z * params.d), float_str(z * params.d)]
            for kind, z in points]


def _render_two_miner_svg(params: TwoMinerParams, sweep, path: str) -> None:
    zs = [float(z) for _, z, _ in sweep]
    plot = svg.LinePlot((min(zs), max(zs) if max(zs) > min(zs) else min(zs) + 1),
                        (-0.05, 1.05), x_label="R/d", y_label="stay-out probability",
                        title=f"equilibrium branches, p_v={params.p_v}, p_c={params.p_c}")
    pure_series: dict[tuple, list[float]] = {}
    mixed_series: list[tuple[float, float, float]] = []
    for _, z, eqset in sweep:
        zf = float(z)
        for eq in eqset.pure:
            pure_series.setdefault(tuple(eq.stay_out), []).append(zf)
        for eq in eqset.mixed_points:
            mixed_series.append((zf, float(eq.stay_out[0]), float(eq.stay_out[1])))
        for eq in eqset.continua:
            lo, hi = eq.interval
            plot.segment(zf, float(lo), zf, float(hi),
                         MINER_COLORS[eq.free_miner], stroke_width=2.5)
            fixed = 1 - eq.free_miner
            plot.marker(zf, float(eq.stay_out[fixed]), MINER_COLORS[fixed])
    dashes = (None, "6,3")
    for stay_out, branch_zs in sorted(pure_series.items()):
        for k in (0, 1):
            y = float(stay_out[k])
            plot.polyline([(z, y) for z in branch_zs], MINER_COLORS[k],
                          dasharray=dashes[k])
    for k in (0, 1):
        plot.polyline([(z, xs[k]) for z, *xs in mixed_series], MINER_COLORS[k],
                      dasharray=dashes[k])
    plot.legend_entry("miner 1 stay-out", MINER_COLORS[0])
    plot.legend_entry("miner 2 stay-out", MINER_COLORS[1])
    plot.save(path)


def run_two_miner(args: argparse.Namespace) -> int:
    if args.pv is None or args.pc is None:
        raise UsageError("two-miner needs --pv and --pc (flags or config file)")
    if args.pv < 1:
        raise UsageError("p_v must be >= 1 (relabel so miner 2 is the more cost-effective)")
    params = TwoMinerParams(args.pv, args.pc, args.d)
    rewards = reward_grid(args.reward_min, args.reward_max, args.reward_step)
    sweep = two_miner_sweep(params, rewards)
    out = args.out or f"two-miner.{args.format}"
    _write_rows(out, TWO_MINER_HEADER, _two_miner_rows(params, sweep), args.format)
    _write_rows(_companion_path(out, "breakpoints"), BREAKPOINTS_HEADER,
                _breakpoint_rows(params), args.format)
    if args.svg:
        _render_two_miner_svg(params, sweep, args.svg)
    return 0


# --------------------------------------------------------------------------
# symmetric sweep
# --------------------------------------------------------------------------

def symmetric_sweep_rows(n_values: Sequence[int], d: Fraction,
                         rewards: Sequence[Fraction],
                         settings: solver.SolverSettings) -> list[list[str]]:
    rows = []
    for n in n_values:
        both_out = PureProfile((0,) * n)
        both_in = PureProfile((1,) * n)
        for reward in rewards:
            cfg = GameConfig.symmetric(n, Fraction(1), Fraction(1), d, reward)
            z = reward / d
            base = [str(n), frac_str(d), frac_str(reward), float_str(z)]
            if solver.is_pure_nash(cfg, both_out):
                rows.append(base + ["all-abstain", float_str(1), "1", "0"])
            if solver.is_pure_nash(cfg, both_in):
                rows.append(base + ["all-participate", float_str(0), "0", "0"])
            for mixed in solver.symmetric_mixed_nash(n, 1, 1, d, reward, settings):
                res = solver.regret(cfg, mixed)
                if res > settings.regret_tolerance:
                    raise RuntimeError(f"mixed point failed regret check: n={n} R={reward}")
                rows.append(base + ["symmetric-mixed", float_str(mixed.stay_out[0]),
                                    "", float_str(res)])
    return rows


def _render_symmetric_svg(rows: list[list[str]], path: str) -> None:
    by_n: dict[int, dict[str, list[tuple[float, float]]]] = {}
    for row in rows:
        n, z, branch, x0 = int(row[0]), float(row[3]), row[4], float(row[5])
        by_n.setdefault(n, {}).setdefault(branch, []).append((z, x0))
    zs = [z for series in by_n.values() for pts in series.values() for z, _ in pts]
    plot = svg.LinePlot((min(zs), max(zs)), (-0.05, 1.05), x_label="R/d",
                        y_label="stay-out probability",
                        title="symmetric equilibrium branches by miner count")
    for i, n in enumerate(sorted(by_n)):
        color = svg.palette(i)
        for branch, pts in sorted(by_n[n].items()):
            plot.polyline(sorted(pts), color,
                          dasharray="4,3" if branch == "symmetric-mixed" else None)
        plot.legend_entry(f"n = {n}", color)
    plot.save(path)


def run_symmetric(args: argparse.Namespace) -> int:
    if args.n_min < 2 or args.n_max < args.n_min:
        raise UsageError(f"bad miner-count range [{args.n_min}, {args.n_max}]")
    if args.d <= 0:
        raise UsageError("d must be positive")
    rewards = reward_grid(args.reward_min, args.reward_max, args.reward_step)
    rows = symmetric_sweep_rows(range(args.n_min, args.n_max + 1), args.d, rewards,
                                solver.SolverSettings(bisection_tolerance=1e-13))
    out = args.out or f"symmetric.{args.format}"
    _write_rows(out, SYMMETRIC_HEADER, rows, args.format)
    if args.svg:
        _render_symmetric_svg(rows, args.svg)
    return 0


# --------------------------------------------------------------------------
# region map
# --------------------------------------------------------------------------

def region_map_rows(p_v: Fraction, pc_values: Sequence[Fraction],
                    rd_values: Sequence[Fraction]) -> list[list[str]]:
    rows = []
    for pc in pc_values:
        params = TwoMinerParams(p_v, pc, Fraction(1))
        for z in rd_values:
            label = two_miner.classify_region(params, z)
            rows.append([frac_str(p_v), float_str(pc), float_str(z),
                         frac_str(pc), frac_str(z), label.value])
    return rows


def run_region_map(args: argparse.Namespace) -> int:
    if args.pv is None:
        raise UsageError("region-map needs --pv (flag or config file)")
    if args.pv < 1:
        raise UsageError("p_v must be >= 1")
    if args.pc_min <= 0:
        raise UsageError("p_c must be strictly positive")
    pc_values = fraction_linspace(args.pc_min, args.pc_max, args.grid)
    rd_values = fraction_linspace(args.rd_min, args.rd_max, args.grid)
    rows = region_map_rows(args.pv, pc_values, rd_values)
    out = args.out or f"region-map.{args.format}"
    _write_rows(out, REGION_HEADER, rows, args.format)
    return 0


# --------------------------------------------------------------------------
# threshold curve
# --------------------------------------------------------------------------

def threshold_rows(curve: solver.ThresholdCurve, d: Fraction) -> list[list[str]]:
    rows = []
    for row in curve.rows:
        grid_r = "" if row.grid_reward is None else frac_str(Fraction(row.grid_reward))
        rows.append([str(row.n), frac_str(d), grid_r, float_str(row.r_over_d),
                     frac_str(row.r_over_d), frac_str(row.n * row.r_over_d)])
    return rows


def _render_threshold_svg(curve: solver.ThresholdCurve, d: Fraction, path: str) -> None:
    ns = [row.n for row in curve.rows]
    exact = [(row.n, float(row.r_over_d)) for row in curve.rows]
    grid = [(row.n, float(Fraction(row.grid_reward) / d)) for row in curve.rows
            if row.grid_reward is not None]
    plot = svg.LinePlot((min(ns) - 0.5, max(ns) + 0.5),
                        (0, max(z for _, z in exact) * 1.1),
                        x_label="number of miners", y_label="R/d",
                        title="reward threshold for the everyone-mines equilibrium")
    plot.polyline(exact, svg.palette(0))
    for n, z in exact:
        plot.marker(n, z, svg.palette(0))
    for n, z in grid:
        plot.marker(n, z, svg.palette(1), radius=4.0)
    plot.legend_entry("exact threshold 1/n", svg.palette(0))
    plot.legend_entry("integer-grid threshold", svg.palette(1))
    plot.save(path)


def run_threshold(args: argparse.Namespace) -> int:
    if args.n_min < 2 or args.n_max < args.n_min:
        raise UsageError(f"bad miner-count range [{args.n_min}, {args.n_max}]")
    if args.d <= 0:
        raise UsageError("d must be positive")
    rewards = reward_grid(args.reward_min, args.reward_max, args.reward_step)
    curve = solver.threshold_curve(range(args.n_min, args.n_max + 1), args.d, rewards)
    out = args.out or f"threshold.{args.format}"
    _write_rows(out, THRESHOLD_HEADER, threshold_rows(curve, args.d), args.format)
    if args.svg:
        _render_threshold_svg(curve, args.d, args.svg)
    return 0


# --------------------------------------------------------------------------
# simulate
# --------------------------------------------------------------------------

def _simulate_config(args: argparse.Namespace) -> tuple[GameConfig, PureProfile]:
    if args.miner:
        miners = tuple(MinerSpec(c, v) for c, v in args.miner)
        if len(miners) < 2:
            raise UsageError("give at least two --miner specs")
    elif args.pv is not None or args.pc is not None:
        if args.pv is None or args.pc is None:
            raise UsageError("--pv and --pc must be given together")
        miners = (MinerSpec(Fraction(1), Fraction(1)), MinerSpec(args.pc, args.pv))
    else:
        miners = (MinerSpec(Fraction(1), Fraction(1)),) * args.n
    cfg = GameConfig(miners, args.d, args.reward)
    bits = args.profile if args.profile is not None else (1,) * cfg.n
    if len(bits) != cfg.n:
        raise UsageError(f"profile has {len(bits)} entries for {cfg.n} miners")
    profile = PureProfile(bits)
    if profile.all_abstain:
        raise UsageError("profile must have at least one participant")
    return cfg, profile


def _check(closed_form: float, estimate: float, std_err: float, sigma: float) -> dict:
    err = abs(estimate - closed_form)
    entry = {
        "closed_form": closed_form,
        "estimate": estimate,
        "std_err": std_err,
        "abs_error": err,
        "sigma_distance": err / std_err if std_err > 0 else None,
        "pass": err <= sigma * std_err if std_err > 0 else err == 0.0,
    }
    return entry


def simulate_report(cfg: GameConfig, profile: PureProfile, trials: int, seed: int,
                    mode: str, ticks_per_unit: int, cost_accounting: str,
                    sigma: float) -> dict:
    stats = race.estimate_stats(cfg, profile, trials, seed, mode=mode,
                                ticks_per_unit=ticks_per_unit,
                                cost_accounting=cost_accounting)
    closed = closed_form_race_stats(cfg, profile)
    quantities = [("win_probability", "win_probability", stats.est_win_prob, stats.se_win_prob),
                  ("expected_reward", "expected_reward", stats.est_reward, stats.se_reward),
                  ("expected_cost", "expected_cost", stats.est_cost, stats.se_cost),
                  ("utility", "utility", stats.est_utility, stats.se_utility)]
    per_miner = []
    ok = True
    for k in range(cfg.n):
        entry: dict = {"miner": k + 1, "participating": bool(profile.choices[k])}
        for name, closed_key, est, se in quantities:
            entry[name] = _check(float(closed[closed_key][k]), est[k], se[k], sigma)
            ok = ok and entry[name]["pass"]
        if stats.est_cost_all_pay is not None:
            entry["cost_all_pay"] = _check(float(closed["cost_all_pay"][k]),
                                           stats.est_cost_all_pay[k],
                                           stats.se_cost_all_pay[k], sigma)
            entry["cost_all_pay"]["diagnostic"] = True
            ok = ok and entry["cost_all_pay"]["pass"]
        per_miner.append(entry)
    return {
        "config": {
            "miners": [{"cost_rate": float(m.cost_rate), "efficiency": float(m.efficiency)}
                       for m in cfg.miners],
            "difficulty": float(cfg.difficulty),
            "reward": float(cfg.reward),
            "profile": list(profile.choices),
        },
        "trials": trials, "seed": seed, "mode": mode, "sigma": sigma,
        "cost_accounting": cost_accounting, "ticks_per_unit": ticks_per_unit,
        "per_miner": per_miner, "pass": ok,
    }


def run_simulate(args: argparse.Namespace) -> int:
    if args.reward is None:
        raise UsageError("simulate needs --reward (flag or config file)")
    if args.trials < 1:
        raise UsageError("trials must be >= 1")
    cfg, profile = _simulate_config(args)
    report = simulate_report(cfg, profile, args.trials, args.seed, args.mode,
                             args.ticks_per_unit, args.cost_accounting, args.sigma)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0 if report["pass"] else 1


# --------------------------------------------------------------------------
# argument wiring
# --------------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser, default_d: str = "100") -> None:
    sub.add_argument("--config", help="TOML file of flag defaults (flags override)")
    sub.add_argument("--out", help="output path (default <mode>.<format>)")
    sub.add_argument("--format", choices=["csv", "json"], default="csv")
    sub.add_argument("--d", type=_fraction, default=default_d,
                     help="difficulty-to-efficiency ratio d = D/v1")


def _add_reward_range(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--reward-min", type=_fraction, default="0")
    sub.add_argument("--reward-max", type=_fraction, default="150")
    sub.add_argument("--reward-step", type=_fraction, default="1")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="mining-game",
        description="Nash-equilibrium sweeps and Monte-Carlo validation for the "
                    "mining participation game")
    subs = parser.add_subparsers(dest="command", required=True)
    by_name: dict[str, argparse.ArgumentParser] = {}

    tm = subs.add_parser("two-miner", help="equilibrium branches vs reward, two miners")
    _add_common(tm)
    _add_reward_range(tm)
    tm.add_argument("--pv", type=_fraction, help="efficiency ratio v2/v1 >= 1")
    tm.add_argument("--pc", type=_fraction, help="cost ratio c2/c1 > 0")
    tm.add_argument("--svg", help="also render branches to this SVG path")
    tm.set_defaults(func=run_two_miner)
    by_name["two-miner"] = tm

    sy = subs.add_parser("symmetric", help="equilibrium branches vs reward, n identical miners")
    _add_common(sy)
    _add_reward_range(sy)
    sy.add_argument("--n-min", type=int, default=2)
    sy.add_argument("--n-max", type=int, default=6)
    sy.add_argument("--svg", help="also render branches to this SVG path")
    sy.set_defaults(func=run_symmetric)
    by_name["symmetric"] = sy

    rm = subs.add_parser("region-map", help="equilibrium-structure labels over (p_c, R/d)")
    _add_common(rm)
    rm.add_argument("--pv", type=_fraction)
    rm.add_argument("--pc-min", type=_fraction, default="0.01")
    rm.add_argument("--pc-max", type=_fraction, default="2.01")
    rm.add_argument("--rd-min", type=_fraction, default="0")
    rm.add_argument("--rd-max", type=_fraction, default="2")
    rm.add_argument("--grid", type=int, default=201, help="points per axis")
    rm.set_defaults(func=run_region_map)
    by_name["region-map"] = rm

    th = subs.add_parser("threshold", help="everyone-mines reward threshold per miner count")
    _add_common(th)
    _add_reward_range(th)
    th.add_argument("--n-min", type=int, default=2)
    th.add_argument("--n-max", type=int, default=6)
    th.add_argument("--svg", help="also render the curve to this SVG path")
    th.set_defaults(func=run_threshold)
    by_name["threshold"] = th

    si = subs.add_parser("simulate", help="Monte-Carlo validation of the closed forms")
    si.add_argument("--config", help="TOML file of flag defaults (flags override)")
    si.add_argument("--out", help="JSON report path, '-' for stdout")
    si.add_argument("--d", type=_fraction, default="100", help="difficulty D")
    si.add_argument("--reward", type=_fraction)
    si.add_argument("--n", type=int, default=2, help="symmetric miner count (c=v=1)")
    si.add_argument("--pv", type=_fraction, help="two-miner efficiency ratio (with --pc)")
    si.add_argument("--pc", type=_fraction, help="two-miner cost ratio (with --pv)")
    si.add_argument("--miner", type=_miner, action="append",
                    help="explicit miner 'cost:efficiency'; repeat per miner")
    si.add_argument("--profile", type=_profile, help="participation bits, e.g. '1,1' (default all 1)")
    si.add_argument("--trials", type=int, default=1000000)
    si.add_argument("--seed", type=int, default=0)
    si.add_argument("--mode", choices=["exponential", "discrete"], default="exponential")
    si.add_argument("--ticks-per-unit", type=int, default=1)
    si.add_argument("--cost-accounting", choices=["paper", "all-pay"], default="paper")
    si.add_argument("--sigma", type=float, default=4.0,
                    help="acceptance band half-width in standard errors")
    si.set_defaults(func=run_simulate)
    by_name["simulate"] = si

    return parser, by_name


def _load_config_defaults(path: str, sub: argparse.ArgumentParser,
                          known: dict) -> dict[str, str]:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"bad config file {path}: {exc}") from exc
    defaults = {}
    for key, value in data.items():
        dest = key.replace("-", "_")
        if dest not in known:
            raise UsageError(f"unknown config key {key!r} for this subcommand")
        # route through str so argparse applies the option's type converter
        defaults[dest] = str(value)
    return defaults


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser, by_name = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "config", None):
            sub = by_name[args.command]
            defaults = _load_config_defaults(args.config, sub, vars(args))
            sub.set_defaults(**defaults)
            args = parser.parse_args(argv)  # explicit flags still win
        return args.func(args)
    except SystemExit as exc:  # argparse usage errors / --help
        code = exc.code
        return code if isinstance(code, int) else 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
