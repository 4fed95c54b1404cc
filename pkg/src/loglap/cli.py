"""Command-line front end.

Six subcommands: ``constants`` (dimension constants table), ``roots``
(scalar root solves), ``bounds`` (closed-form bound report for a domain),
``solve`` (assemble + eigensolve, CSV output), ``verify`` (self-checking
suites), and ``sweep`` (one CSV row per parameter value).

Conventions shared by every subcommand:

* CSV output starts with the literal line ``#schema=1`` followed by a
  header row; every number is printed with 17 significant digits, so a CSV
  is a bit-exact function of the run configuration.
* JSON side files (run manifests, verify reports) carry non-deterministic
  content such as timings; the CSV never does.
* ``--config FILE`` reads flat ``key=value`` lines whose keys mirror the
  long flag names (``h=0.125`` for ``--h 0.125``); flags given on the
  command line override the file.
* exit codes: 0 success, 1 usage/configuration error, 2 numerical failure
  (a verify suite that ran but found a violated check also exits 2).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    BallProfile,
    counting_envelope,
    log_moment_check,
    lower_bound_eigenvalue,
    lower_bound_smallest,
    lower_bound_sum,
    upper_bound_smallest_large,
    upper_bound_smallest_small,
    upper_bound_sum,
)
from .constants import dimension_constants
from .discretize import assemble_form, build_grid, plane_wave_symbol_1d, rayleigh_quotient
from .geometry import Domain, TestFunctionSpec, ball, box, interval
from .roots import solve_log_ratio, solve_r_ln_r
from .specfun import EULER_GAMMA, NumericsError
from .spectrum import eig_symmetric, spectrum_from_values, weyl_diagnostics

__all__ = ["main"]

SCHEMA_LINE = "#schema=1"

_CONSTANT_FIELDS = (
    "dim",
    "kernel_constant",
    "sphere_measure",
    "zero_order_shift",
    "volume_coefficient",
    "counting_coefficient",
)


def _fmt(x) -> str:
    """17-significant-digit rendering used for every CSV number."""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _emit_csv(out: str | None, header: list[str], rows: list[list]) -> None:
    lines = [SCHEMA_LINE, ",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(out: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _manifest_path(out: str) -> str:
    p = Path(out)
    return str(p.with_suffix(".json")) if p.suffix != ".json" else str(p) + ".manifest.json"


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; the contract says 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


# ---------------------------------------------------------------------------
# domain / grid plumbing


def _parse_sides(text: str) -> tuple[float, ...]:
    try:
        sides = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"--side expects comma-separated numbers, got {text!r}")
    if not sides or any(not (s > 0.0) for s in sides):
        raise ValueError(f"--side lengths must be positive, got {text!r}")
    return sides


def _domain_from_args(args) -> Domain:
    kind = getattr(args, "domain", None)
    if kind is None:
        raise ValueError("a domain is required: pass --domain interval|box|ball")
    dim = getattr(args, "dim", None)
    if kind == "interval":
        if args.length is None:
            raise ValueError("--domain interval needs --length")
        if dim not in (None, 1):
            raise ValueError("intervals are one-dimensional; drop --dim or use --dim 1")
        half = args.length / 2.0
        return interval(-half, half)
    if kind == "ball":
        if args.radius is None:
            raise ValueError("--domain ball needs --radius")
        if dim not in (None, 2):
            raise ValueError("the ball domain is wired for --dim 2 "
                             "(use --domain interval in one dimension)")
        return ball((0.0, 0.0), args.radius)
    if kind == "box":
        if args.side is None:
            raise ValueError("--domain box needs --side A or --side A,B")
        sides = _parse_sides(args.side)
        if len(sides) == 1:
            sides = (sides[0], sides[0])
        if len(sides) != 2 or dim not in (None, 2):
            raise ValueError("boxes are two-dimensional: --side A,B with --dim 2")
        corner = (-sides[0] / 2.0, -sides[1] / 2.0)
        return box(corner, sides)
    raise ValueError(f"unknown domain kind {kind!r}")


def _resolve_h(args, domain: Domain) -> float:
    if (args.h is None) == (args.cells is None):
        raise ValueError("exactly one of --h and --cells is required")
    if args.h is not None:
        return args.h
    if args.cells < 1:
        raise ValueError(f"--cells must be >= 1, got {args.cells}")
    return domain.sides[0] / args.cells


def _default_c0(domain: Domain, c0: float | None) -> float | None:
    """Explicit --c0 wins; otherwise derive the minimal admissible constant
    from the foliation measures (only defined in dimension >= 2)."""
    if c0 is not None:
        return c0
    if domain.dim < 2:
        return None
    regime = "large" if domain.inradius >= 2.0 else "small"
    return domain.minimal_c0(regime)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_constants(args) -> int:
    c = dimension_constants(args.dim)
    values = [getattr(c, name) for name in _CONSTANT_FIELDS]
    values.append(EULER_GAMMA)
    names = list(_CONSTANT_FIELDS) + ["euler_gamma"]
    width = max(len(n) for n in names)
    for name, value in zip(names, values):
        print(f"{name:<{width}}  {_fmt(value)}")
    _emit_csv(args.out, ["name", "value"], list(zip(names, values)))
    return 0


def _cmd_roots(args) -> int:
    try:
        targets = [float(part) for part in args.target.split(",")]
    except ValueError:
        raise ValueError(f"--target expects comma-separated numbers, got {args.target!r}")
    solver = solve_r_ln_r if args.map == "rlnr" else solve_log_ratio
    rows = []
    for t in targets:
        res = solver(t)
        rows.append([res.target, res.root, res.residual,
                     res.envelope_low, res.envelope_high, res.iterations])
        print(f"map={args.map} target={_fmt(t)}  root={_fmt(res.root)}  "
              f"residual={res.residual:.3e}  bracket=[{_fmt(res.envelope_low)}, "
              f"{_fmt(res.envelope_high)}]")
    _emit_csv(args.out, ["target", "root", "residual",
                         "envelope_low", "envelope_high", "iterations"], rows)
    return 0


def _report_dict(report) -> dict:
    return json.loads(report.to_json())


def _cmd_bounds(args) -> int:
    domain = _domain_from_args(args)
    constants = dimension_constants(domain.dim)
    c0 = _default_c0(domain, args.c0)
    radius = domain.inradius
    payload: dict = {
        "domain": {"kind": domain.kind, "dim": domain.dim,
                   "volume": domain.volume, "inradius": radius},
        "c0": c0,
        "reports": {
            "lower_smallest": _report_dict(lower_bound_smallest(constants, domain.volume)),
        },
    }
    if c0 is not None:
        payload["reports"]["upper_large"] = _report_dict(
            upper_bound_smallest_large(constants, radius, c0, variant=args.variant))
        if radius < 0.25:
            payload["reports"]["upper_small"] = _report_dict(
                upper_bound_smallest_small(constants, radius, c0))
    if args.num_eigs is not None:
        k = args.num_eigs
        payload["reports"]["lower_sum"] = _report_dict(
            lower_bound_sum(constants, domain.volume, k))
        payload["reports"]["lower_eigenvalue"] = _report_dict(
            lower_bound_eigenvalue(constants, domain.volume, k))
        payload["reports"]["upper_sum"] = _report_dict(
            upper_bound_sum(constants, domain.volume, k, variant=args.variant))
    if args.sigma is not None:
        # Rayleigh quotient of the ramp test function on a grid: a computable
        # upper bound for the true smallest eigenvalue, for comparison with
        # the closed-form reports above.
        h = _resolve_h(args, domain)
        grid = build_grid(domain, h)
        matrix = assemble_form(grid)
        spec = TestFunctionSpec(sigma=args.sigma)
        coeffs = np.array([domain.test_function(spec, tuple(x)) for x in grid.centers])
        payload["rayleigh"] = {
            "sigma": args.sigma,
            "h": grid.h,
            "cells": grid.count,
            "quotient": rayleigh_quotient(matrix, coeffs),
        }
    _emit_json(args.out, payload)
    return 0


def _solve_columns(eigenvalues: np.ndarray) -> list[list]:
    ks = np.arange(1, eigenvalues.size + 1, dtype=float)
    psum = np.cumsum(eigenvalues)
    with np.errstate(divide="ignore", invalid="ignore"):
        r1 = np.where(ks > 1, eigenvalues / np.log(ks), np.nan)
        r2 = np.where(ks > 1, psum / (ks * np.log(ks)), np.nan)
    return [[int(k), ev, a, s, b]
            for k, ev, a, s, b in zip(ks, eigenvalues, r1, psum, r2)]


def _cmd_solve(args) -> int:
    if args.num_eigs is None or args.num_eigs < 1:
        raise ValueError("--num-eigs is required and must be >= 1")
    domain = _domain_from_args(args)
    h = _resolve_h(args, domain)
    t0 = time.perf_counter()
    grid = build_grid(domain, h)
    t1 = time.perf_counter()
    matrix = assemble_form(grid)
    t2 = time.perf_counter()
    spectrum = eig_symmetric(matrix, args.num_eigs)
    t3 = time.perf_counter()

    header = ["k", "lambda", "lambda_over_log_k", "partial_sum", "partial_sum_over_k_log_k"]
    _emit_csv(args.out, header, _solve_columns(spectrum.eigenvalues))

    if args.dump_matrix:
        _emit_csv(args.dump_matrix,
                  [f"col{j}" for j in range(grid.count)],
                  [list(row) for row in matrix.entries])

    if args.delta is not None:
        table = weyl_diagnostics(spectrum, delta=args.delta, dim=domain.dim)
        env_out = None
        if args.out:
            env_out = str(Path(args.out).with_name(Path(args.out).stem + "_envelope.csv"))
        _emit_csv(env_out, ["t", "upper_envelope", "lower_envelope"],
                  [list(r) for r in zip(table["envelope_t"],
                                        table["envelope_upper"],
                                        table["envelope_lower"])])

    if args.out:
        manifest = {
            "command": "solve",
            "version": __version__,
            "config": {
                "dim": domain.dim,
                "domain": domain.kind,
                "length": args.length,
                "radius": args.radius,
                "side": args.side,
                "h_requested": h,
                "h_effective": grid.h,
                "cells": grid.count,
                "num_eigs": args.num_eigs,
                "delta": args.delta,
                "seed": args.seed,
                "out": args.out,
            },
            "timings_sec": {
                "build_grid": t1 - t0,
                "assemble": t2 - t1,
                "eigensolve": t3 - t2,
                "total": t3 - t0,
            },
            "results": {
                "lambda_1": float(spectrum.eigenvalues[0]),
                "lambda_k": float(spectrum.eigenvalues[-1]),
            },
        }
        _emit_json(_manifest_path(args.out), manifest)
        print(f"wrote {args.out} ({args.num_eigs} rows, {grid.count} cells) "
              f"and {_manifest_path(args.out)}")
    return 0


# ---------------------------------------------------------------------------
# verify suites.  Each returns a list of {"name", "passed", "detail"} dicts;
# all numeric thresholds here restate module contracts, so a failing check
# means a real regression rather than a loose tolerance.


def _check(name: str, passed: bool, detail: str) -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _suite_constants() -> list[dict]:
    checks = []
    worst = 0.0
    for n in range(1, 11):
        c = dimension_constants(n)
        worst = max(worst, abs(c.kernel_constant * c.sphere_measure - 2.0))
    checks.append(_check("constants.kernel_times_sphere", worst <= 1e-12,
                         f"max |c_N*omega - 2| over N=1..10 = {worst:.3e}"))
    r1 = dimension_constants(1).zero_order_shift
    checks.append(_check("constants.shift_dim1", abs(r1 + 2.0 * EULER_GAMMA) <= 1e-12,
                         f"|rho_1 + 2*gamma| = {abs(r1 + 2.0 * EULER_GAMMA):.3e}"))
    d2 = dimension_constants(2).volume_coefficient
    checks.append(_check("constants.volume_coefficient_dim2",
                         abs(d2 - 1.0 / (4.0 * math.pi)) <= 1e-12,
                         f"|d_2 - 1/(4 pi)| = {abs(d2 - 1.0 / (4.0 * math.pi)):.3e}"))
    shifts = [dimension_constants(n).zero_order_shift for n in range(1, 11)]
    increasing = all(b > a for a, b in zip(shifts, shifts[1:]))
    checks.append(_check("constants.shift_monotone", increasing,
                         "zero-order shift strictly increasing over N=1..10"))
    return checks


def _suite_roots() -> list[dict]:
    checks = []
    # 1000 targets spread log-style in the offset from the left endpoint -1/e,
    # reaching up to 1e6: dense near the degenerate endpoint, sparse far out.
    offsets = np.geomspace(1e-9, 1e6 + 1.0 / math.e, 1000)
    worst_res, env_ok = 0.0, True
    for c in (-1.0 / math.e) + offsets:
        res = solve_r_ln_r(float(c))
        worst_res = max(worst_res, abs(res.residual))
        if not (res.envelope_low - 1e-12 <= res.root <= res.envelope_high + 1e-12):
            env_ok = False
    checks.append(_check("roots.r_ln_r_residual", worst_res <= 1e-9,
                         f"max |r ln r - c| = {worst_res:.3e} over 1000 targets"))
    checks.append(_check("roots.r_ln_r_envelopes", env_ok,
                         "closed-form bracket holds for every solved target"))
    worst_rel, band_ok = 0.0, True
    for t in np.geomspace(8.8301, 1e6, 1000):
        res = solve_log_ratio(float(t))
        worst_rel = max(worst_rel, abs(res.residual) / t)
        if not (res.envelope_low - 1e-12 <= res.root < res.envelope_high):
            band_ok = False
    checks.append(_check("roots.log_ratio_residual", worst_rel <= 1e-9,
                         f"max relative residual = {worst_rel:.3e} over 1000 targets"))
    checks.append(_check("roots.log_ratio_band", band_ok,
                         "t(ln t - ln ln t) <= root < t ln t for every target"))
    return checks


def _suite_symbol() -> list[dict]:
    worst = max(abs(plane_wave_symbol_1d(float(t)) - 2.0 * math.log(t))
                for t in np.geomspace(0.1, 100.0, 50))
    return [_check("symbol.plane_wave_identity", worst <= 1e-8,
                   f"sup |symbol(t) - 2 ln t| = {worst:.3e} on 50 log-spaced t in [0.1, 100]")]


def _suite_bounds(seed: int) -> list[dict]:
    checks = []
    c1 = dimension_constants(1)
    c2 = dimension_constants(2)

    sharp = []
    for a, key in ((1.0, "slack_lower_moment"), (math.e, "slack_mass_affine"),
                   (math.e ** 2, "slack_mass_loglog")):
        rep = log_moment_check(c1, BallProfile(radius=a, height=1.0))
        sharp.append(abs(rep.values[key]))
    checks.append(_check("bounds.moment_sharpness", max(sharp) <= 1e-10,
                         f"equality-case slacks = {[f'{s:.2e}' for s in sharp]}"))

    rng = np.random.default_rng(seed)
    worst_slack = math.inf
    for _ in range(500):
        constants = c1 if rng.integers(2) == 0 else c2
        prof = BallProfile(radius=float(rng.uniform(0.1, 10.0)),
                           height=float(rng.uniform(1e-6, 5.0)))
        rep = log_moment_check(constants, prof)
        for key in ("slack_lower_moment", "slack_mass_affine", "slack_mass_loglog"):
            if key in rep.values:
                worst_slack = min(worst_slack, rep.values[key])
    checks.append(_check("bounds.moment_random_profiles", worst_slack >= -1e-10,
                         f"min slack over 500 random profiles = {worst_slack:.3e}"))

    coherent = True
    for k in (27, 40, 100, 1000):
        s = lower_bound_sum(c1, 2.0, k).values["refined"]
        per = lower_bound_eigenvalue(c1, 2.0, k).values["refined"]
        if s != k * per:
            coherent = False
    checks.append(_check("bounds.sum_eigenvalue_coherence", coherent,
                         "k * per-eigenvalue bound == sum bound bit-exactly"))

    ks = range(27, 271)
    sums = [lower_bound_sum(c1, 2.0, k).values["refined"] for k in ks]
    monotone = all(b >= a for a, b in zip(sums, sums[1:]))
    checks.append(_check("bounds.sum_monotone_in_k", monotone,
                         "refined sum bound nondecreasing for k = 27..270 (length-2 interval)"))

    dominated = True
    for k in (30, 100, 300):
        for vol in (0.5, 2.0, 10.0):
            st = upper_bound_sum(c1, vol, k, variant="statement")
            pf = upper_bound_sum(c1, vol, k, variant="proof")
            if st.admissible["upper_bound"] and pf.admissible["upper_bound"]:
                if st.values["upper_bound"] > pf.values["upper_bound"]:
                    dominated = False
    checks.append(_check("bounds.upper_sum_variants_ordered", dominated,
                         "statement variant <= proof variant at sampled (volume, k)"))

    consistent = True
    details = []
    for radius in (2.0, 4.0, 8.0, 16.0, 32.0):
        # Any admissible domain contains B_R and fits inside B_2R, so the
        # volume lower bound for the large ball must sit below the upper
        # bound evaluated at inradius R.
        vol = c2.sphere_measure / 2.0 * (2.0 * radius) ** 2
        lo = lower_bound_smallest(c2, vol).values["volume_term"]
        hi = upper_bound_smallest_large(c2, radius, 2.0 * math.pi).values["upper_bound"]
        details.append(f"R={radius:g}: {lo:.4g} <= {hi:.4g}")
        if lo > hi:
            consistent = False
    checks.append(_check("bounds.lower_below_upper", consistent, "; ".join(details)))
    return checks


def _suite_sandwich() -> list[dict]:
    checks = []
    c1 = dimension_constants(1)
    for length in (0.5, 1.0, 2.0, 4.0):
        domain = interval(-length / 2.0, length / 2.0)
        grid = build_grid(domain, 1.0 / 128.0)
        lam1 = eig_symmetric(assemble_form(grid), 1).eigenvalues[0]
        floor = -c1.volume_coefficient * length
        ok = lam1 >= floor - 1e-10
        if length == 1.0:
            ok = ok and lam1 > 0.0
        checks.append(_check(f"sandwich.interval_L{length:g}", ok,
                             f"discrete lambda_1 = {lam1:.8f}, volume bound = {floor:.8f}"
                             + (", positivity required" if length == 1.0 else "")))
    return checks


def _suite_weyl() -> list[dict]:
    checks = []
    synthetic = spectrum_from_values(2.0 * np.log(np.arange(1, 1001, dtype=float)))
    rep = counting_envelope(synthetic, 0.25, dimension_constants(1))
    checks.append(_check("weyl.synthetic_envelopes",
                         rep.verdicts["upper_decays"] and rep.verdicts["lower_grows"],
                         f"verdicts = {rep.verdicts}"))
    rep0 = counting_envelope(synthetic, 0.0, dimension_constants(1))
    vals = [rep0.values[k] for k in ("upper_first_quartile_mean", "upper_last_quartile_mean")]
    checks.append(_check("weyl.synthetic_critical_exponent",
                         all(0.5 <= v <= 1.5 for v in vals),
                         f"critical-exponent quartile means = {[f'{v:.4f}' for v in vals]}"))

    domain = interval(-1.0, 1.0)
    grid = build_grid(domain, 1.0 / 512.0)
    spectrum = eig_symmetric(assemble_form(grid), 100)
    table = weyl_diagnostics(spectrum)
    window = slice(49, 100)
    med = float(np.median(table["eigenvalue_over_log_k"][window]))
    checks.append(_check("weyl.eigenvalue_ratio_window", 0.65 * 2.0 <= med <= 1.35 * 2.0,
                         f"median lambda_k/ln k over k=50..100 = {med:.6f} "
                         f"(target band [1.3, 2.7])"))
    ratios = table["partial_sum_ratio"][window]
    increasing = bool(np.all(np.diff(ratios) > -1e-12)) and ratios[-1] > ratios[0]
    checks.append(_check("weyl.partial_sum_ratio_increasing", increasing,
                         f"partial-sum ratio rises {ratios[0]:.6f} -> {ratios[-1]:.6f} "
                         f"toward 2 over k=50..100"))
    return checks


_SUITES = {
    "constants": lambda seed: _suite_constants(),
    "roots": lambda seed: _suite_roots(),
    "symbol": lambda seed: _suite_symbol(),
    "bounds": _suite_bounds,
    "sandwich": lambda seed: _suite_sandwich(),
    "weyl": lambda seed: _suite_weyl(),
}


def _cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    checks = []
    for name in names:
        checks += _SUITES[name](args.seed)
    passed = all(c["passed"] for c in checks)
    report = {"suite": args.suite, "seed": args.seed, "checks": checks, "passed": passed}
    _emit_json(args.out, report)
    if args.out:
        for c in checks:
            print(f"[{'pass' if c['passed'] else 'FAIL'}] {c['name']}: {c['detail']}")
        print(f"suite {args.suite}: {'pass' if passed else 'FAIL'}")
    return 0 if passed else 2


# ---------------------------------------------------------------------------
# sweeps


def _sweep_values(args) -> np.ndarray:
    if args.steps is None or args.steps < 1:
        raise ValueError("empty sweep range: --steps must be >= 1")
    if not (math.isfinite(args.start) and math.isfinite(args.stop)):
        raise ValueError("sweep endpoints must be finite")
    if args.parameter in ("radius", "h") and (args.start <= 0.0 or args.stop <= 0.0):
        raise ValueError(f"{args.parameter} sweep needs positive endpoints")
    if args.parameter == "k":
        values = np.unique(np.rint(np.linspace(args.start, args.stop, args.steps)))
        if values.size == 0 or values[0] < 1:
            raise ValueError("k sweep needs integer indices >= 1")
        return values.astype(int)
    if args.steps == 1:
        return np.array([args.start])
    # descending ranges are fine (h sweeps usually run coarse to fine)
    return np.geomspace(args.start, args.stop, args.steps)


def _sweep_radius(args, values: np.ndarray) -> tuple[list[str], list[list]]:
    dim = args.dim if args.dim is not None else 2
    constants = dimension_constants(dim)
    header = ["radius", "c0", "lower_volume_term", "upper_large_statement",
              "upper_large_proof", "upper_large_corrected", "upper_large_admissible",
              "upper_small"]
    rows = []
    for radius in values:
        radius = float(radius)
        if args.c0 is not None:
            c0 = args.c0
        elif dim >= 2:
            regime = "large" if radius >= 2.0 else "small"
            c0 = ball((0.0,) * dim, radius).minimal_c0(regime)
        else:
            raise ValueError("radius sweep in dimension 1 needs an explicit --c0")
        # lower bound for any domain inside the enclosing ball of radius 2R
        vol = constants.sphere_measure / dim * (2.0 * radius) ** dim
        lo = lower_bound_smallest(constants, vol).values["volume_term"]
        stmt = upper_bound_smallest_large(constants, radius, c0, variant="statement")
        proof = upper_bound_smallest_large(constants, radius, c0, variant="proof")
        corr = upper_bound_smallest_large(constants, radius, c0, variant="corrected")
        small = (upper_bound_smallest_small(constants, radius, c0).values["upper_bound"]
                 if radius < 0.25 else math.nan)
        rows.append([radius, c0, lo, stmt.values["upper_bound"], proof.values["upper_bound"],
                     corr.values["upper_bound"], int(stmt.admissible["upper_bound"]), small])
    return header, rows


def _sweep_k(args, values: np.ndarray) -> tuple[list[str], list[list]]:
    domain = _domain_from_args(args)
    constants = dimension_constants(domain.dim)
    header = ["k", "lower_sum_volume_term", "lower_sum_refined", "lower_eigenvalue_refined",
              "upper_sum_statement", "upper_sum_proof"]
    rows = []
    for k in values:
        k = int(k)
        s = lower_bound_sum(constants, domain.volume, k)
        e = lower_bound_eigenvalue(constants, domain.volume, k)
        u1 = upper_bound_sum(constants, domain.volume, k, variant="statement")
        u2 = upper_bound_sum(constants, domain.volume, k, variant="proof")
        rows.append([
            k,
            s.values["volume_term"],
            s.values.get("refined", math.nan),
            e.values.get("refined", math.nan),
            u1.values.get("upper_bound", math.nan),
            u2.values.get("upper_bound", math.nan),
        ])
    return header, rows


def _sweep_h(args, values: np.ndarray) -> tuple[list[str], list[list]]:
    domain = _domain_from_args(args)
    rows = []
    for h in values:
        grid = build_grid(domain, float(h))
        lam1 = eig_symmetric(assemble_form(grid), 1).eigenvalues[0]
        rows.append([float(h), grid.h, grid.count, lam1])
    return ["h_requested", "h_effective", "cells", "lambda_1"], rows


def _cmd_sweep(args) -> int:
    values = _sweep_values(args)
    t0 = time.perf_counter()
    if args.parameter == "radius":
        header, rows = _sweep_radius(args, values)
    elif args.parameter == "k":
        header, rows = _sweep_k(args, values)
    else:
        header, rows = _sweep_h(args, values)
    elapsed = time.perf_counter() - t0
    _emit_csv(args.out, header, rows)
    if args.out:
        manifest = {
            "command": "sweep",
            "version": __version__,
            "config": {
                "parameter": args.parameter,
                "start": args.start,
                "stop": args.stop,
                "steps": args.steps,
                "dim": args.dim,
                "domain": getattr(args, "domain", None),
                "length": args.length,
                "radius": args.radius,
                "side": args.side,
                "c0": args.c0,
                "seed": args.seed,
                "out": args.out,
            },
            "timings_sec": {"total": elapsed},
            "rows": len(rows),
        }
        _emit_json(_manifest_path(args.out), manifest)
        print(f"wrote {args.out} ({len(rows)} rows) and {_manifest_path(args.out)}")
    return 0


# ---------------------------------------------------------------------------
# parser / entry point


def _add_common(p: _Parser, *, domain_flags: bool = True) -> None:
    p.add_argument("--config", help="flat key=value file; command-line flags override it")
    p.add_argument("--out", help="output file (CSV or JSON depending on the command)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for any randomized check (default 0)")
    if domain_flags:
        p.add_argument("--dim", type=int, help="space dimension")
        p.add_argument("--domain", choices=("interval", "box", "ball"))
        p.add_argument("--length", type=float, help="interval length (centered at 0)")
        p.add_argument("--radius", type=float, help="ball radius")
        p.add_argument("--side", help="box side lengths: A for a square or A,B")
        p.add_argument("--h", type=float, help="grid cell side (snapped to the domain)")
        p.add_argument("--cells", type=int, help="cells along the first axis instead of --h")


def _build_parser() -> _Parser:
    parser = _Parser(prog="loglap", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("constants", help="print the dimension constants")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--config", help="flat key=value file; command-line flags override it")
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("roots", help="solve the scalar root equations")
    p.add_argument("--map", choices=("rlnr", "logratio"), required=True)
    p.add_argument("--target", required=True,
                   help="target value(s), comma-separated")
    p.add_argument("--config")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("bounds", help="closed-form bound report for a domain (JSON)")
    _add_common(p)
    p.add_argument("--num-eigs", type=int, help="index k for the sum/eigenvalue bounds")
    p.add_argument("--variant", choices=("statement", "proof", "corrected"),
                   default="statement")
    p.add_argument("--c0", type=float, help="foliation constant (required in dimension 1)")
    p.add_argument("--sigma", type=float,
                   help="also report the ramp test function's Rayleigh quotient "
                        "(needs --h or --cells)")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("solve", help="assemble the form and compute eigenvalues (CSV)")
    _add_common(p)
    p.add_argument("--num-eigs", type=int, required=True)
    p.add_argument("--delta", type=float,
                   help="also emit counting-envelope samples at exponents N/2 +- delta")
    p.add_argument("--dump-matrix", help="write the assembled matrix as CSV here")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="run a self-check suite (JSON report)")
    p.add_argument("--suite", choices=(*_SUITES, "all"), default="all")
    p.add_argument("--config")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="evaluate bounds/eigenvalues over a parameter range")
    _add_common(p)
    p.add_argument("--parameter", choices=("radius", "k", "h"), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--c0", type=float)
    p.add_argument("--variant", choices=("statement", "proof", "corrected"),
                   default="statement")
    p.set_defaults(func=_cmd_sweep)
    return parser


def _expand_config(argv: list[str]) -> list[str]:
    """Splice config-file key=value pairs in as flags, before the explicit ones."""
    path = None
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
            break
        if token.startswith("--config="):
            path = token.split("=", 1)[1]
            break
    if path is None:
        return argv
    tokens: list[str] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ValueError(f"{path}:{lineno}: empty key")
        tokens += ["--" + key.replace("_", "-"), value]
    # insert right after the subcommand so explicit flags win (last one parsed)
    return argv[:1] + tokens + argv[1:]


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        argv = _expand_config(argv)
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse --help exits 0, usage errors exit 1
        return int(exc.code or 0)
    except (OSError, ValueError) as exc:
        print(f"loglap: error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except NumericsError as exc:
        print(f"loglap: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"loglap: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
