"""Figures for CLI reports.  Uses the non-interactive Agg backend."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .hilbert import Embedding  # noqa: E402
from .qpm import QPM  # noqa: E402


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_suite_summary(result, path) -> Path:
    """Verdict counts, plus tag tallies when the suite records any."""
    counts = {
        "ok": result.checked - result.skipped - len(result.failures),
        "skip": result.skipped,
        "fail": len(result.failures),
    }
    panels = 2 if result.tallies else 1
    fig, axes = plt.subplots(1, panels, figsize=(5 * panels, 3.5), squeeze=False)
    ax = axes[0][0]
    ax.bar(list(counts), list(counts.values()), color=["tab:green", "tab:gray", "tab:red"])
    ax.set_title(f"{result.suite}\n{result.stream}", fontsize=9)
    ax.set_ylabel("instances")
    if result.tallies:
        ax = axes[0][1]
        keys = sorted(result.tallies)
        ax.barh(keys, [result.tallies[k] for k in keys])
        ax.set_title("tallies", fontsize=9)
        ax.tick_params(axis="y", labelsize=7)
    return _save(fig, path)


def plot_qpm(p: QPM, path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(1 + 0.6 * p.n, 0.8 + 0.6 * p.n))
    vals = [[float(v) for v in row] for row in p.m]
    im = ax.imshow(vals, cmap="viridis")
    for x in range(p.n):
        for y in range(p.n):
            ax.text(y, x, str(p.m[x][y]), ha="center", va="center", fontsize=7, color="white")
    ax.set_xlabel("y")
    ax.set_ylabel("x")
    ax.set_title(title or "p(x, y)", fontsize=9)
    fig.colorbar(im, ax=ax, shrink=0.8)
    return _save(fig, path)


def plot_embedding(emb: Embedding, path, title: str = "") -> Path:
    """First two cube coordinates (a line when K = 1), with the covering relation drawn."""
    space = emb.source
    pts = [[float(c) for c in pt.coords] for pt in emb.image]
    xs = [pt[0] if pt else 0.0 for pt in pts]
    ys = [pt[1] if len(pt) > 1 else 0.0 for pt in pts]
    fig, ax = plt.subplots(figsize=(4, 4))
    for a in range(space.n):
        for b in range(space.n):
            if a == b or not space.le(a, b):
                continue
            covered = not any(c not in (a, b) and space.le(a, c) and space.le(c, b) for c in range(space.n))
            if covered:
                ax.annotate("", xy=(xs[b], ys[b]), xytext=(xs[a], ys[a]), arrowprops={"arrowstyle": "->", "alpha": 0.5})
    ax.scatter(xs, ys, zorder=3)
    for i, (x, y) in enumerate(zip(xs, ys)):
        ax.annotate(str(i), (x, y), textcoords="offset points", xytext=(4, 4))
    ax.set_xlim(-0.1, 1.1)
    ax.set_ylim(-0.1, 1.1)
    ax.set_xlabel("z1")
    ax.set_ylabel("z2" if emb.K > 1 else "")
    ax.set_title(title or f"image in [0,1]^{emb.K}", fontsize=9)
    return _save(fig, path)
