#!/usr/bin/env python3
"""Plot mevd CSV output.

usage: plot_curves.py FILE.csv [FILE.csv ...] [-o OUTDIR]

curves/v1 and pickands/v1 go to one panel per example or beta,
estimates/v1 plots theta against n for each q.
"""
import argparse
import csv
import pathlib
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return rows[0]["schema"] if rows else None, rows


def plot_curves(rows, out):
    by_ex = defaultdict(list)
    for r in rows:
        by_ex[r["example"]].append(r)
    for ex, rs in by_ex.items():
        a = [float(r["alpha"]) for r in rs]
        fig, ax = plt.subplots()
        for col in ("theta", "D", "Gamma", "G"):
            ax.plot(a, [float(r[col]) for r in rs], label=col)
        ax.set_xlabel("alpha")
        ax.set_title(ex)
        ax.legend()
        fig.savefig(out / f"curves_{ex}.png", dpi=120)
        plt.close(fig)


def plot_curves2(rows, out):
    by_ex = defaultdict(list)
    for r in rows:
        by_ex[r["example"]].append(r)
    for ex, rs in by_ex.items():
        fig, ax = plt.subplots()
        sc = ax.scatter([float(r["alpha"]) for r in rs], [float(r["beta"]) for r in rs],
                        c=[float(r["D"]) for r in rs], cmap="viridis")
        fig.colorbar(sc, label="D")
        ax.set_xlabel("alpha")
        ax.set_ylabel("beta")
        ax.set_title(ex)
        fig.savefig(out / f"curves2_{ex}.png", dpi=120)
        plt.close(fig)


def plot_pickands(rows, out):
    groups = defaultdict(list)
    for r in rows:
        key = r["family"] if not r["beta"] else f"logistic beta={r['beta']}"
        groups[key].append(r)
    fig, ax = plt.subplots()
    for key, rs in groups.items():
        ax.plot([float(r["alpha"]) for r in rs], [float(r["D"]) for r in rs], label=key)
    ax.plot([0, 0.5, 1], [1, 0.5, 1], "k:", lw=0.8)
    ax.set_xlabel("alpha")
    ax.set_ylabel("D")
    ax.legend(fontsize="small")
    fig.savefig(out / "pickands.png", dpi=120)
    plt.close(fig)


def plot_estimates(rows, out):
    tau_cols = [k for k in rows[0] if k.startswith("tau")]
    series = defaultdict(list)
    for r in rows:
        if r["quantity"] not in ("theta", "block_maxima", "theta_runs") or r["status"] != "ok":
            continue
        tau = ",".join(r[c] for c in tau_cols)
        series[(r["example"], tau, r["quantity"], r["q"])].append(
            (float(r["n"]), float(r["value"]), float(r["stderr"] or 0)))
    for (ex, tau) in sorted({k[:2] for k in series}):
        fig, ax = plt.subplots()
        for (e, t, qty, q), pts in sorted(series.items()):
            if (e, t) != (ex, tau):
                continue
            pts.sort()
            ax.errorbar([p[0] for p in pts], [p[1] for p in pts], yerr=[p[2] for p in pts],
                        marker="o", label=f"{qty} q={q}")
        ax.set_xscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel("theta")
        ax.set_title(f"{ex} tau=({tau})")
        ax.legend(fontsize="small")
        fig.savefig(out / f"estimates_{ex}_{tau.replace(',', '_').replace('/', 'o')}.png", dpi=120)
        plt.close(fig)


HANDLERS = {
    "curves/v1": plot_curves,
    "curves2/v1": plot_curves2,
    "pickands/v1": plot_pickands,
    "estimates/v1": plot_estimates,
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("files", nargs="+")
    ap.add_argument("-o", "--outdir", default="plots")
    args = ap.parse_args()
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for f in args.files:
        schema, rows = read(f)
        if schema is None:
            print(f"{f}: no rows")
            continue
        if schema not in HANDLERS:
            raise SystemExit(f"{f}: unknown schema {schema}")
        HANDLERS[schema](rows, out)


if __name__ == "__main__":
    main()
