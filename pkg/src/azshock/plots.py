"""Report figures for CLI runs.

Rendered straight to files with the Agg backend; nothing here opens a
window.  Each function returns the path it wrote.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DPI = 140


def plot_curves(path, curve, dev):
    """Front, weak-singularity curves, and front speed against time."""
    fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(6.0, 6.4), sharex=True)
    t = dev.times
    ax0.plot(curve.t_grid, curve.s_values, label="front s(t)", lw=1.6)
    ax0.plot(t, dev.s1_arr, label="slow edge s1(t)", lw=1.0)
    ax0.plot(t, dev.s2_arr, label="entropy edge s2(t)", lw=1.0)
    ax0.set_ylabel("angle")
    ax0.legend(frameon=False, fontsize=8)
    ax1.plot(curve.t_grid, curve.sdot_values, lw=1.2, color="k")
    ax1.axhline(dev.kappa, color="0.6", lw=0.8, ls=":")
    ax1.set_xlabel("t")
    ax1.set_ylabel("front speed")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_jumps(path, dev):
    """Log-log jump traces with the expected slopes as guides."""
    t = dev.times[1:]
    tr = dev.traces
    series = [("w jump", tr["w_minus"][1:] - tr["w_plus"][1:], 0.5),
              ("|z behind|", np.abs(tr["z_minus"][1:]), 1.5),
              ("k behind", tr["k_minus"][1:], 1.5),
              ("|swirl slope jump|",
               np.abs(tr["da_minus"][1:] - tr["da_plus"][1:]), 0.5)]
    fig, ax = plt.subplots(figsize=(6.0, 4.4))
    for label, vals, slope in series:
        good = vals > 0
        if not good.any():
            continue
        line, = ax.loglog(t[good], vals[good], lw=1.2, label=label)
        anchor = vals[good][-1]
        guide = anchor * (t / t[-1]) ** slope
        ax.loglog(t, guide, ls=":", lw=0.8, color=line.get_color())
    ax.set_xlabel("t")
    ax.set_ylabel("front trace")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_snapshot(path, state):
    """The four Riemann fields across the front at one time."""
    fig, axes = plt.subplots(2, 2, figsize=(7.6, 5.6), sharex=True)
    pairs = [("w", state.w_left, state.w_right),
             ("z", state.z_left, state.z_right),
             ("k", state.k_left, state.k_right),
             ("a", state.a_left, state.a_right)]
    thL, thR = state.theta_left(), state.theta_right()
    for ax, (name, fl, fr) in zip(axes.ravel(), pairs):
        ax.plot(thL, fl, lw=1.1, color="C0")
        ax.plot(thR, fr, lw=1.1, color="C0", ls="--")
        for pos, color in ((state.shock_pos, "k"),
                           (state.s1, "0.55"), (state.s2, "0.75")):
            ax.axvline(pos, color=color, lw=0.7, ls=":")
        ax.set_title(name, fontsize=9)
    for ax in axes[1]:
        ax.set_xlabel("theta")
    fig.suptitle(f"t = {state.t:.3e}", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_holder(path, ladders):
    """Derivative ladders near the weak edges on log-log axes.

    ladders: list of (label, h, values) triples; a half-power guide is
    drawn through the last rung of each.
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.4))
    for label, h, vals in ladders:
        h = np.asarray(h, dtype=float)
        vals = np.abs(np.asarray(vals, dtype=float))
        good = (h > 0) & (vals > 0)
        if not good.any():
            continue
        line, = ax.loglog(h[good], vals[good], "o-", ms=3, lw=1.0,
                          label=label)
        anchor_h, anchor_v = h[good][-1], vals[good][-1]
        guide = anchor_v * (h[good] / anchor_h) ** 0.5
        ax.loglog(h[good], guide, ls=":", lw=0.8, color=line.get_color())
    ax.set_xlabel("distance from edge")
    ax.set_ylabel("|derivative|")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path
