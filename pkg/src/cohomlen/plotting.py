"""Report figures rendered to files (Agg backend, no display required).

The report path draws three views: the raw length sequence with the fitted
quasi-polynomial overlaid, the normalized trend length/n^d against the
volume limit when one is available, and (in two variables) the Newton
polygon with its generators.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .asymptotics import LengthSequence, QuasiPolynomial
from .ideals import MonomialIdeal
from .polyhedra import newton_polyhedron


def sequence_figure(
    seq: LengthSequence, qp: QuasiPolynomial | None, path: Path
) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    finite = seq.finite_values()
    ax.plot(
        [n for n, _ in finite],
        [v for _, v in finite],
        "o",
        color="tab:blue",
        label="computed length",
    )
    infinite_ns = [n for n, r in seq.entries if not r.is_finite]
    for n in infinite_ns:
        ax.axvline(n, color="tab:red", linestyle=":", alpha=0.6)
    if qp is not None and finite:
        ns = [n for n, _ in finite if n >= qp.valid_from]
        ax.plot(
            ns,
            [float(qp.evaluate(n)) for n in ns],
            "-",
            color="tab:orange",
            alpha=0.8,
            label=f"quasi-polynomial (period {qp.period})",
        )
    ax.set_xlabel("n")
    ax.set_ylabel(f"length of H^{seq.i}")
    ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def trend_figure(seq: LengthSequence, limit: Fraction | None, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    d = seq.dim
    finite = seq.finite_values()
    ax.plot(
        [n for n, _ in finite],
        [v / n**d for n, v in finite],
        "o-",
        color="tab:blue",
        label=f"length / n^{d}",
    )
    if limit is not None:
        ax.axhline(
            float(limit),
            color="tab:green",
            linestyle="--",
            label=f"volume limit {limit}",
        )
    ax.set_xlabel("n")
    ax.set_ylabel("normalized length")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def newton_figure(ideal: MonomialIdeal, path: Path) -> None:
    if ideal.dim != 2:
        raise ValueError("the Newton figure is drawn for two variables only")
    poly = newton_polyhedron(ideal)
    window = max(sum(g) for g in ideal.gens) + 2
    fig, ax = plt.subplots(figsize=(5, 5))
    xs = [float(x) for x in range(0, window + 1)]
    for hs in poly.halfspaces:
        (a, b), off = hs.normal, float(hs.offset)
        if b != 0:
            ys = [(off - a * x) / b for x in xs]
            ax.plot(xs, ys, color="tab:gray", linewidth=1)
        else:
            ax.axvline(off / a, color="tab:gray", linewidth=1)
    gx = [g[0] for g in ideal.gens]
    gy = [g[1] for g in ideal.gens]
    ax.plot(gx, gy, "o", color="tab:blue", label="generators")
    vx = [v[0] for v in poly.vertices]
    vy = [v[1] for v in poly.vertices]
    ax.plot(vx, vy, "s", color="tab:orange", label="vertices", markersize=9, fillstyle="none")
    ax.set_xlim(0, window)
    ax.set_ylim(0, window)
    ax.set_xlabel("exponent of x1")
    ax.set_ylabel("exponent of x2")
    ax.set_aspect("equal")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
