"""CSV and JSON emitters for runs, plus a round-trip reader.

All floats are written with 17 significant digits so a written value
parses back to the identical double.  Row order is deterministic:
snapshots go left block then right block in ascending angle, curve
files go in ascending time.
"""

import csv
import json

import numpy as np

from .riemann import AzimuthalPoint, lax_check, specific_vorticity, to_physical

FMT = "{:.16e}"

SNAPSHOT_COLUMNS = ("theta", "y", "w", "z", "k", "a",
                    "u_theta", "u_r", "rho", "p", "S", "varpi", "region")
CURVE_COLUMNS = ("t", "s", "sdot", "s1", "s2", "jump_w", "mean_w",
                 "z_minus", "k_minus", "entropy_jump", "lax_ok")


def _num(x):
    return FMT.format(float(x))


def write_snapshot_csv(path, state):
    """One time slice of the developed fields in physical variables."""
    rows = []
    left = (state.theta_left(), state.y_left, state.w_left, state.z_left,
            state.k_left, state.a_left, state.region_left())
    right = (state.theta_right(), state.y_right, state.w_right,
             state.z_right, state.k_right, state.a_right,
             np.full(state.y_right.shape, "ahead", dtype=object))
    for theta, y, w, z, k, a, region in (left, right):
        da = np.gradient(a, theta)
        for i in range(theta.size):
            pt = AzimuthalPoint(w=float(w[i]), z=float(z[i]),
                                k=float(k[i]), a=float(a[i]))
            phys = to_physical(pt)
            varpi = specific_vorticity(pt, float(da[i])).varpi
            rows.append([_num(theta[i]), _num(y[i]), _num(w[i]), _num(z[i]),
                         _num(k[i]), _num(a[i]), _num(phys.u_theta),
                         _num(phys.u_r), _num(phys.rho), _num(phys.p),
                         _num(phys.S), _num(varpi), str(region[i])])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SNAPSHOT_COLUMNS)
        writer.writerows(rows)
    return path


def lax_flags(curve, dev):
    """Admissibility of the jump state at each positive slice time."""
    times = dev.times
    sdot = np.interp(times, curve.t_grid, curve.sdot_values)
    tr = dev.traces
    out = np.zeros(times.size - 1, dtype=bool)
    for j in range(1, times.size):
        behind = AzimuthalPoint(w=tr["w_minus"][j], z=tr["z_minus"][j],
                                k=tr["k_minus"][j], a=tr["a_minus"][j])
        ahead = AzimuthalPoint(w=tr["w_plus"][j], a=tr["a_plus"][j])
        out[j - 1] = lax_check(behind, ahead, float(sdot[j])).all_ok
    return out


def write_curves_csv(path, curve, dev):
    """Front trajectory and weak-curve traces against time.

    The t = 0 row is skipped: the front has zero strength there, so
    the jump state and the admissibility check are degenerate.
    """
    times = dev.times
    s = np.interp(times, curve.t_grid, curve.s_values)
    sdot = np.interp(times, curve.t_grid, curve.sdot_values)
    tr = dev.traces
    flags = lax_flags(curve, dev)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CURVE_COLUMNS)
        for j in range(1, times.size):
            writer.writerow([
                _num(times[j]), _num(s[j]), _num(sdot[j]),
                _num(dev.s1_arr[j]), _num(dev.s2_arr[j]),
                _num(tr["w_minus"][j] - tr["w_plus"][j]),
                _num(0.5 * (tr["w_minus"][j] + tr["w_plus"][j])),
                _num(tr["z_minus"][j]), _num(tr["k_minus"][j]),
                _num(tr["e_minus"][j]), str(int(flags[j - 1]))])
    return path


def write_summary_json(path, summary):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def read_csv_columns(path):
    """Columns of a CSV as a dict; numeric columns come back as floats."""
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        cols = {name: [] for name in header}
        for row in reader:
            for name, cell in zip(header, row):
                cols[name].append(cell)
    out = {}
    for name, cells in cols.items():
        try:
            out[name] = np.asarray([float(c) for c in cells])
        except ValueError:
            out[name] = np.asarray(cells, dtype=object)
    return out
