"""SVG output for diagrams, fields and sweeps.

Figures are written with a fixed hash salt and no date stamp so repeated
runs produce identical files.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import TwoSlopeNorm  # noqa: E402

__all__ = ["CLASS_COLORS", "classify_agents", "diagram_svg", "field_svg", "sweep_svg"]

CLASS_COLORS = {
    "candidate": "gold",
    "supporter": "tab:blue",
    "opponent": "tab:red",
    "undecided": "tab:gray",
    "chair": "tab:green",
    "split": "magenta",
}

_RC = {"svg.hashsalt": "tenuregraph", "svg.fonttype": "none"}


def classify_agents(scenario, chair=None, overrides=None):
    """Colour class per agent from a voting scenario."""
    out = {}
    for a in scenario.agent_ids:
        if a == scenario.candidate:
            out[a] = "candidate"
        elif a in scenario.v_plus:
            out[a] = "supporter"
        elif a in scenario.v_minus:
            out[a] = "opponent"
        elif a == chair:
            out[a] = "chair"
        else:
            out[a] = "undecided"
    out.update(overrides or {})
    return out


def _save(fig, path, metadata=None):
    meta = {"Date": None}
    if metadata:
        meta["Description"] = "; ".join(f"{k}={v}" for k, v in metadata.items())
    fig.savefig(path, format="svg", metadata=meta)
    plt.close(fig)


def diagram_svg(path, diagram, classes=None, title=None, limits=None, metadata=None):
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 5))
        classes = classes or {}
        for a, (x, y) in zip(diagram.agent_ids, diagram.points):
            color = CLASS_COLORS[classes.get(a, "undecided")]
            ax.scatter([x], [y], s=60, color=color, edgecolor="black", linewidth=0.5, zorder=3)
            ax.annotate(str(a), (x, y), xytext=(4, 4), textcoords="offset points", fontsize=8)
        if limits is not None:
            ax.set_xlim(limits[0], limits[1])
            ax.set_ylim(limits[2], limits[3])
        ax.set_xlabel("v2 / lambda2")
        ax.set_ylabel("v3 / lambda3")
        ax.ticklabel_format(style="sci", scilimits=(-2, 2))
        if title:
            ax.set_title(title)
        handles = [plt.Line2D([], [], marker="o", ls="", color=CLASS_COLORS[c], label=c)
                   for c in CLASS_COLORS if c in set(classes.values())]
        if handles:
            ax.legend(handles=handles, fontsize=7, loc="best")
        meta = dict(metadata or {})
        meta["xlim"] = "%.6e,%.6e" % ax.get_xlim()
        meta["ylim"] = "%.6e,%.6e" % ax.get_ylim()
        _save(fig, path, meta)


def field_svg(path, grid, diagram=None, title=None, metadata=None):
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 5))
        vmax = float(np.max(np.abs(grid.values))) or 1.0
        norm = TwoSlopeNorm(vcenter=0.0, vmin=-vmax, vmax=vmax)
        cs = ax.contourf(grid.xs, grid.ys, grid.values, levels=21, cmap="RdBu", norm=norm)
        ax.contour(grid.xs, grid.ys, grid.values, levels=[0.0], colors="black", linewidths=0.8)
        fig.colorbar(cs, ax=ax, shrink=0.8)
        if diagram is not None:
            ax.scatter(diagram.points[:, 0], diagram.points[:, 1], s=15, color="black", zorder=3)
            for a, (x, y) in zip(diagram.agent_ids, diagram.points):
                ax.annotate(str(a), (x, y), xytext=(3, 3), textcoords="offset points", fontsize=7)
        ax.set_aspect("equal")
        ax.ticklabel_format(style="sci", scilimits=(-2, 2))
        if title:
            ax.set_title(title)
        _save(fig, path, metadata)


def sweep_svg(path, sweep, metadata=None):
    """Grouped bars: one panel per mu, agents by productivity, one bar per gamma."""
    with matplotlib.rc_context(_RC):
        nmu = len(sweep.mus)
        fig, axes = plt.subplots(1, nmu, figsize=(4 * nmu, 3.5), sharey=True, squeeze=False)
        colors = plt.get_cmap("viridis")(np.linspace(0, 1, len(sweep.gammas)))
        width = 0.8 / len(sweep.gammas)
        xs = np.arange(len(sweep.agent_ids))
        for mi, (ax, mu) in enumerate(zip(axes[0], sweep.mus)):
            for gi, g in enumerate(sweep.gammas):
                ax.bar(xs + (gi - (len(sweep.gammas) - 1) / 2) * width, sweep.mean[gi, mi],
                       width, color=colors[gi], label=f"gamma={g:g}")
            ax.set_xticks(xs, [f"x{a}" for a in sweep.agent_ids])
            ax.axhline(0.0, color="black", linewidth=0.5)
            ax.set_title(f"mu = {mu:g}")
            ax.ticklabel_format(axis="y", style="sci", scilimits=(-2, 2))
        axes[0][0].set_ylabel("mean decision")
        axes[0][-1].legend(fontsize=7)
        fig.tight_layout()
        _save(fig, path, metadata)
