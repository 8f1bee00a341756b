"""Figure rendering for the CLI report paths.

Each report command can write one PNG next to its delimited output when a
figure directory is supplied.  Rendering is headless (Agg) and the style is
kept to matplotlib defaults plus a grid.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, figdir: str, name: str) -> str:
    os.makedirs(figdir, exist_ok=True)
    path = os.path.join(figdir, name)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def boundary_figure(rows: list[dict], figdir: str) -> str:
    """h(x) and frak_h(x) over the sample grid, log-x axis."""
    xs = [r["x"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    ax.plot(xs, [r["h"] for r in rows], marker="o", ms=3, label="h(x)")
    ax.plot(xs, [r["frak_h"] for r in rows], marker="s", ms=3,
            label="x^(-1/2) h(x)")
    ax.set_xscale("log")
    ax.set_xlabel("x")
    ax.grid(True, alpha=0.3)
    ax.legend()
    ax.set_title("boundary functions")
    return _finish(fig, figdir, "boundary.png")


def meanper_figure(rows: list[dict], svals: list[float], figdir: str) -> str:
    """Two panels: h over the grid and the translate-matrix spectrum."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.0))
    ax1.plot([r["x"] for r in rows], [r["h"] for r in rows], marker="o", ms=3)
    ax1.set_xscale("log")
    ax1.set_xlabel("x")
    ax1.set_ylabel("h(x)")
    ax1.grid(True, alpha=0.3)
    positive = [v for v in svals if v > 0]
    if positive:
        ax2.semilogy(range(len(positive)), positive, marker="o", ms=3)
    ax2.set_xlabel("index")
    ax2.set_ylabel("singular value")
    ax2.grid(True, alpha=0.3)
    ax2.set_title("translate-matrix spectrum (heuristic)")
    return _finish(fig, figdir, "meanper.png")


def integral_figure(rows: list[dict], figdir: str) -> str:
    """Per-prime factor magnitudes of the assembled zeta integral."""
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    ax.plot([r["p"] for r in rows], [abs(complex(r["factor_re"],
                                                 r["factor_im"]))
                                     for r in rows], marker="o", ms=3)
    ax.set_xlabel("p")
    ax.set_ylabel("|per-prime factor|")
    ax.set_xscale("log")
    ax.grid(True, alpha=0.3)
    ax.set_title("per-prime factors")
    return _finish(fig, figdir, "integral.png")


def zeta_surface_figure(rows: list[dict], figdir: str) -> str:
    """Running truncated Euler product against the prime bound."""
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    ax.plot([r["p"] for r in rows],
            [abs(complex(r["partial_re"], r["partial_im"])) for r in rows],
            marker="o", ms=3)
    ax.set_xlabel("p")
    ax.set_ylabel("|partial product|")
    ax.set_xscale("log")
    ax.grid(True, alpha=0.3)
    ax.set_title("truncated surface zeta")
    return _finish(fig, figdir, "zeta_surface.png")
