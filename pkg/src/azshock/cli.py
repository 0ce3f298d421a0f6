"""Command line driver.

Subcommands
-----------
formation   march a smooth datum to its first gradient blowup
develop     iterate the front and fields, write CSV, JSON and figures
jump-solve  solve the jump system for one (vl, vr) trace pair
trace       backward characteristic from an anchor point, CSV to stdout
verify      run the full acceptance battery, one line per criterion

Exit codes: 0 success, 1 solver or acceptance failure, 2 bad usage or
config.  Everything here is single threaded; the analysis routines it
calls are pure functions of their inputs.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import plots
from .analysis import (
    derivative_ladder,
    entropy_edge_ladder,
    estimate_holder,
    fit_power_law,
    slow_edge_ladder,
)
from .chars import trace_backward
from .config import RunConfig, load_config, with_overrides
from .emit import (
    lax_flags,
    write_curves_csv,
    write_snapshot_csv,
    write_summary_json,
)
from .errors import AzshockError, ConfigError
from .fields import FormationState, detect_blowup
from .jumps import ShockTraces, solve_jump
from .preshock import CuspDatum
from .shock import evolve_shock


def run_cli(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except AzshockError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    return run_cli()


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="azshock",
        description="shock formation and development in azimuthal flow")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formation", help="evolve a smooth datum to blowup")
    _add_config(p)
    p.set_defaults(func=_cmd_formation)

    p = sub.add_parser("develop", help="develop the shock from cusp data")
    _add_config(p)
    p.set_defaults(func=_cmd_develop)

    p = sub.add_parser("jump-solve", help="solve one jump system")
    p.add_argument("--vl", type=float, required=True,
                   help="fast trace behind the front")
    p.add_argument("--vr", type=float, required=True,
                   help="fast trace ahead of the front")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_cmd_jump_solve)

    p = sub.add_parser("trace", help="backward characteristic to stdout")
    p.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    _add_config(p, required=False)
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("verify", help="run the acceptance battery")
    _add_config(p, required=False)
    p.set_defaults(func=_cmd_verify)
    return parser


def _add_config(p, required=True):
    p.add_argument("--config", default=None, required=required,
                   help="path to a 'key = value' config file")
    p.add_argument("--out", default=None,
                   help="output directory (overrides config)")


def _load(args):
    cfg = load_config(args.config) if args.config else RunConfig()
    if getattr(args, "out", None):
        cfg = with_overrides(cfg, output_dir=args.out)
    return cfg


def _outdir(cfg):
    os.makedirs(cfg.output_dir, exist_ok=True)
    return cfg.output_dir


def _n_slices(cfg):
    if cfg.dt is None:
        return 64
    return int(min(512, max(32, round(cfg.t_end / cfg.dt))))


def _datum(cfg):
    return CuspDatum(kappa=cfg.kappa, b=cfg.b, c_coef=cfg.c_coef,
                     mbar=cfg.mbar)


# ----------------------------------------------------------------- commands

def _cmd_jump_solve(args):
    sol = solve_jump(ShockTraces(vl=args.vl, vr=args.vr), tol=args.tol)
    out = {"z_minus": sol.z_minus, "k_minus": sol.k_minus,
           "e_minus": sol.e_minus, "sdot": sol.sdot,
           "residual_E1": sol.residual_E1, "residual_E2": sol.residual_E2}
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def _cmd_formation(args):
    cfg = _load(args)
    kappa, b = cfg.kappa, cfg.b

    def w0(x):
        return kappa - b * np.sin(x)

    state = FormationState.from_data(w0)
    res = detect_blowup(state, t_max=cfg.t_end, dt=cfg.dt)
    outdir = _outdir(cfg)

    final = res.state
    with open(os.path.join(outdir, "formation_profile.csv"), "w",
              newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "eta", "w"])
        w_lab = final.damping * final.w0x
        for i in range(final.x.size):
            writer.writerow(["{:.16e}".format(v) for v in
                             (final.x[i], final.eta[i], w_lab[i])])

    summary = {"mode": "formation",
               "T_star": res.t_star, "xi_star": res.xi_star,
               "cusp": {"kappa_star": res.kappa_star, "a1": res.a1,
                        "a2": res.a2, "a3": res.a3}}
    write_summary_json(os.path.join(outdir, "summary.json"), summary)
    _plot_formation(os.path.join(outdir, "formation.png"), res)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def _plot_formation(path, res):
    import matplotlib.pyplot as plt
    final = res.state
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    w_lab = final.damping * final.w0x
    ax.plot(final.eta, w_lab, lw=1.0)
    ax.axvline(res.xi_star, color="0.6", lw=0.8, ls=":")
    ax.set_xlabel("angle")
    ax.set_ylabel("wave profile at blowup")
    ax.set_title(f"t* = {res.t_star:.6f}", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=plots.DPI)
    plt.close(fig)
    return path


def _cmd_develop(args):
    cfg = _load(args)
    curve, dev = evolve_shock(_datum(cfg), cfg.t_end,
                              tol_outer=cfg.tol_outer,
                              tol_inner=cfg.tol_inner,
                              n_slices=_n_slices(cfg), grid=cfg.grid,
                              newton_tol=cfg.newton_tol)
    outdir = _outdir(cfg)
    write_curves_csv(os.path.join(outdir, "curves.csv"), curve, dev)
    for j, st in enumerate(dev.slices):
        write_snapshot_csv(os.path.join(outdir, f"snapshot_{j:04d}.csv"), st)

    plots.plot_curves(os.path.join(outdir, "curves.png"), curve, dev)
    plots.plot_jumps(os.path.join(outdir, "jumps.png"), dev)
    plots.plot_snapshot(os.path.join(outdir, "snapshot_final.png"),
                        dev.slices[-1])
    ladders = _edge_ladders(dev)
    if ladders:
        labels = {"s2": "entropy slope at s2", "s1": "slow slope at s1"}
        plots.plot_holder(os.path.join(outdir, "holder.png"),
                          [(labels[edge], lad[:, 0] - base[0], lad[:, 1])
                           for edge, (base, lad) in ladders.items()])

    summary = build_summary(curve, dev, mode="develop")
    write_summary_json(os.path.join(outdir, "summary.json"), summary)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def _cmd_trace(args):
    cfg = _load(args)
    curve, dev = evolve_shock(_datum(cfg), args.t,
                              tol_outer=cfg.tol_outer,
                              tol_inner=cfg.tol_inner,
                              n_slices=_n_slices(cfg), grid=cfg.grid,
                              newton_tol=cfg.newton_tol)
    tr = trace_backward(args.family, args.theta, args.t, dev)
    writer = csv.writer(sys.stdout)
    writer.writerow(["t", "theta", "region"])
    for ta, th, tag in zip(tr.times, tr.positions, tr.region_tags):
        writer.writerow(["{:.16e}".format(ta), "{:.16e}".format(th),
                         str(tag)])
    return 0


def _cmd_verify(args):
    from . import acceptance
    cfg = _load(args)
    outdir = _outdir(cfg)
    results = acceptance.run_battery(out_dir=outdir)
    n_fail = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        n_fail += 0 if res.passed else 1
        print(f"{status} {res.name}: {res.detail}")
    summary = {"criteria": [{"name": r.name, "passed": bool(r.passed),
                             "detail": r.detail} for r in results],
               "n_failed": n_fail}
    write_summary_json(os.path.join(outdir, "verify.json"), summary)
    return 1 if n_fail else 0


# ------------------------------------------------------------------ summary

def _edge_ladders(dev, j=None):
    """Windowed slope ladders at the two weak edges of one slice.

    Keys "s2" (entropy slope) and "s1" (slow slope); an edge whose
    ladder is too thin to build is simply absent.  The windows drop the
    region still inside the entropy band for the slow field and the
    saturated outer reach for the entropy field.
    """
    if j is None:
        j = len(dev.times) - 1
    out = {}
    try:
        base, prof = entropy_edge_ladder(dev, j)
        gap = dev.slices[j].shock_pos - base[0]
        sel = prof[:, 0] - base[0] <= 0.6 * gap
        out["s2"] = (base, derivative_ladder(prof[sel, 0], prof[sel, 1]))
    except AzshockError:
        pass
    try:
        base, prof = slow_edge_ladder(dev, j)
        span = dev.slices[j].shock_pos - base[0]
        sel = prof[:, 0] - base[0] <= 0.25 * span
        out["s1"] = (base, derivative_ladder(prof[sel, 0], prof[sel, 1]))
    except AzshockError:
        pass
    return out


def _fit_exponent(ts, vals):
    ts = np.asarray(ts, dtype=float)
    vals = np.abs(np.asarray(vals, dtype=float))
    good = vals > 0.0
    if good.sum() < 8:
        return None
    try:
        return fit_power_law(ts[good], vals[good]).exponent
    except AzshockError:
        return None


def build_summary(curve, dev, mode="develop"):
    """Scaling exponents, admissibility flags and iteration counts."""
    t = dev.times[1:]
    tr = dev.traces
    exponents = {
        "jump_w": _fit_exponent(t, tr["w_minus"][1:] - tr["w_plus"][1:]),
        "jump_z": _fit_exponent(t, tr["z_minus"][1:]),
        "jump_k": _fit_exponent(t, tr["k_minus"][1:]),
        "jump_dtheta_a": _fit_exponent(
            t, tr["da_minus"][1:] - tr["da_plus"][1:]),
    }
    ladders = _edge_ladders(dev)
    for key, edge in (("holder_s1_z", "s1"), ("holder_s2_k", "s2")):
        exponents[key] = None
        if edge in ladders:
            base, lad = ladders[edge]
            try:
                exponents[key] = estimate_holder(base, "+", lad).exponent
            except AzshockError:
                pass
    flags = lax_flags(curve, dev)
    summary = {
        "mode": mode,
        "exponents": exponents,
        "admissibility": {
            "lax_all": bool(flags.all()),
            "entropy_positive": bool(np.all(tr["k_minus"][1:] > 0.0)),
        },
        "iterations": {
            "inner_max": int(max(dev.n_inner, 0)),
            "outer": int(curve.iterate_index),
        },
    }
    return summary
