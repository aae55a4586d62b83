"""Optional figures rendered next to the tabular output.

Only used when the CLI is given ``--figure``; matplotlib is imported lazily so
the numerical core does not depend on it.
"""

from __future__ import annotations

from .output import ResultTable

STYLE = {
    "font.size": 11,
    "axes.labelsize": 12,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
    "savefig.dpi": 150,
}

_SERIES = (
    ("E_local", "local interaction", "tab:green"),
    ("E_field", "field", "tab:red"),
    ("E_mirror", "mirror", "tab:blue"),
)


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _dynamics_figure(plt, table: ResultTable):
    fig, axes = plt.subplots(3, 1, figsize=(7, 8), sharex=True)
    if "t_over_round_trip" in table.columns:
        x, xlabel = table.column("t_over_round_trip"), r"$t / \bar{t}$"
    else:
        x, xlabel = table.column("t"), "t [s]"
    for ax, (col, label, colour) in zip(axes, _SERIES):
        ax.plot(x, table.column(col), color=colour)
        ax.set_ylabel(f"{label} [J]")
    axes[-1].set_xlabel(xlabel)
    return fig


def _oracle_figure(plt, table: ResultTable):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    scale = table.column("coupling_scale")
    ax.loglog(scale, table.column("stationary_gap"), "o-", label="ground-state gap")
    ax.loglog(scale, table.column("dynamic_deviation"), "s--", label="max dynamical deviation")
    ax.set_xlabel("coupling scale")
    ax.set_ylabel("|perturbative - exact| [J]")
    ax.legend()
    return fig


def _bar_figure(plt, table: ResultTable):
    fig, ax = plt.subplots(figsize=(6, 4))
    cols = ["E_total", "E_field", "E_mirror", "E_interaction"]
    ax.bar(cols, [table.column(c)[0] for c in cols], color=["k", "tab:red", "tab:blue", "tab:green"])
    ax.set_ylabel("energy shift [J]")
    ax.axhline(0.0, color="0.5", lw=0.8)
    return fig


def _sweep_figure(plt, table: ResultTable):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(range(len(table.rows)), [-v for v in table.column("E_total")], "o-")
    ax.set_yscale("log")
    ax.set_xlabel("sweep point")
    ax.set_ylabel(r"$-E_{total}$ [J]")
    return fig


def render_figure(table: ResultTable, path) -> None:
    """Save a figure of ``table`` to ``path`` (format from the file suffix)."""
    plt = _pyplot()
    with plt.rc_context(STYLE):
        if "t" in table.columns:
            fig = _dynamics_figure(plt, table)
        elif "coupling_scale" in table.columns:
            fig = _oracle_figure(plt, table)
        elif "K" in table.columns:
            fig = _sweep_figure(plt, table)
        else:
            fig = _bar_figure(plt, table)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
