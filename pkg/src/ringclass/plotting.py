"""Figures for census reports (matplotlib, file output only)."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .tables import EXPECTED, MAX_MULTIPLICITY, summary  # noqa: E402


def multiplicity_figure(census, preset, path):
    """Bar chart of the m = 0..4 summary counts, computed vs reference."""
    strata = list(census)
    fig, axes = plt.subplots(1, len(strata), figsize=(5 * len(strata), 4), squeeze=False)
    ms = list(range(MAX_MULTIPLICITY + 1))
    for ax, stratum in zip(axes[0], strata):
        got = summary(census[stratum])
        ref = EXPECTED[preset][stratum]["summary"]
        width = 0.4
        ax.bar([m - width / 2 for m in ms], [got[f"m{m}"] for m in ms], width,
               label="computed")
        ax.bar([m + width / 2 for m in ms], [ref[f"m{m}"] for m in ms], width,
               label="reference")
        ax.set_yscale("symlog")
        ax.set_xticks(ms)
        ax.set_xlabel("multiplicity m")
        ax.set_ylabel("admissible pairs")
        ax.set_title(stratum)
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def shape_figure(census, path):
    """Stacked bars of nilets and realized pairs per conductor shape."""
    rows = [r for rows in census.values() for r in rows]
    labels = [f"{r.shape.pattern} {r.shape.condition} r{r.shape.rhoClass}" for r in rows]
    nil = [r.nilets for r in rows]
    real = [r.totalAdmissible - r.nilets for r in rows]
    fig, ax = plt.subplots(figsize=(8, max(3, 0.28 * len(rows))))
    y = range(len(rows))
    ax.barh(y, real, label="m >= 1")
    ax.barh(y, nil, left=real, label="nilets")
    ax.set_yticks(list(y))
    ax.set_yticklabels(labels, fontsize=7)
    ax.set_xscale("symlog")
    ax.invert_yaxis()
    ax.set_xlabel("admissible pairs")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path
