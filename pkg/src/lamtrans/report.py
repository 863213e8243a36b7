"""Report rendering: CSV tables plus figures for one permutation set.

Writes exact delimited data (distributions and per-shape verdicts) next
to two figures: a bar chart of the dual distribution and the dominance
order of shapes colored by the transitivity verdict.  Figures render
floats; the CSVs stay exact.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .partitions import dominates, format_partition, multinomial, partitions_of
from .perm import PermSet
from .transitivity import dual_distribution, inner_distribution, transitivity_table

_RC = {
    "figure.dpi": 150,
    "savefig.bbox": "tight",
    "font.size": 9,
}


def _frac_str(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def write_report(D: PermSet, outdir: Path) -> list[Path]:
    """Write distributions.csv, verdicts.csv and the two figures; returns
    the paths written, in a fixed order."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    inner = inner_distribution(D)
    dual = dual_distribution(D)
    table = transitivity_table(D)
    parts = partitions_of(D.degree)

    dist_path = outdir / "distributions.csv"
    with dist_path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["shape", "inner", "dual"])
        for p, av, bv in zip(inner.index, inner.values, dual.values):
            w.writerow([format_partition(p), _frac_str(av), _frac_str(bv)])

    verdict_path = outdir / "verdicts.csv"
    with verdict_path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["shape", "transitive", "r"])
        for p in parts:
            r = _frac_str(Fraction(len(D), multinomial(p)))
            w.writerow([format_partition(p), "yes" if table[p] else "no", r if table[p] else ""])

    fig1 = outdir / "dual_distribution.png"
    _plot_dual(dual.index, dual.values, len(D), fig1)
    fig2 = outdir / "dominance_profile.png"
    _plot_profile(parts, table, fig2)
    return [dist_path, verdict_path, fig1, fig2]


def _plot_dual(index, values, size, path: Path) -> None:
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(max(4.0, 0.45 * len(index)), 2.8))
        xs = range(len(index))
        ax.bar(xs, [float(v) for v in values], color="#46689b")
        ax.set_xticks(list(xs))
        ax.set_xticklabels([format_partition(p) for p in index], rotation=60, ha="right")
        ax.set_ylabel("dual distribution")
        ax.set_title(f"dual distribution, |D| = {size}")
        fig.savefig(path)
        plt.close(fig)


def _covers(parts) -> list[tuple[int, int]]:
    """Cover pairs (i, j) with parts[i] covering parts[j] in dominance."""
    n = len(parts)
    less = [[dominates(parts[i], parts[j]) and i != j for j in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            if not less[i][j]:
                continue
            if not any(less[i][k] and less[k][j] for k in range(n)):
                out.append((i, j))
    return out


def _plot_profile(parts, table, path: Path) -> None:
    # layer shapes by how many others dominate them; spread layers on x
    n = len(parts)
    level = [sum(1 for mu in parts if mu != la and dominates(mu, la)) for la in parts]
    order = sorted(range(n), key=lambda i: (level[i], i))
    ys = {}
    xs = {}
    by_level: dict[int, list[int]] = {}
    for i in order:
        by_level.setdefault(level[i], []).append(i)
    for lv, idxs in by_level.items():
        for k, i in enumerate(idxs):
            ys[i] = -lv
            xs[i] = k - (len(idxs) - 1) / 2.0
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.5, 4.0))
        for i, j in _covers(parts):
            ax.plot([xs[i], xs[j]], [ys[i], ys[j]], color="0.75", lw=0.8, zorder=1)
        for i, la in enumerate(parts):
            ok = table[la]
            ax.scatter([xs[i]], [ys[i]], s=60, zorder=2,
                       color="#3a7d44" if ok else "#b04a4a")
            ax.annotate(format_partition(la), (xs[i], ys[i]),
                        textcoords="offset points", xytext=(6, 4), fontsize=8)
        ax.set_axis_off()
        ax.set_title("transitive shapes (green) in dominance order")
        fig.savefig(path)
        plt.close(fig)
