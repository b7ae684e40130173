"""Census figures. Matplotlib is imported lazily so the core never needs it."""

from __future__ import annotations

from pathlib import Path

from prolifera.census import CensusResult


def plot_census(result: CensusResult, path: "str | Path") -> Path:
    """Bar chart of series counts per PP order, with the structure count per order annotated."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    orders = sorted(result.order_counts)
    counts = [result.order_counts[k] for k in orders]
    kinds = {k: sum(1 for (o, _) in result.structure_counts if o == k) for k in orders}

    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    xs = range(len(orders))
    bars = ax.bar(xs, counts, color="0.35", width=0.7)
    for bar, k in zip(bars, orders):
        ax.annotate(
            f"{kinds[k]}",
            (bar.get_x() + bar.get_width() / 2, bar.get_height()),
            ha="center",
            va="bottom",
            fontsize=8,
        )
    ax.set_xticks(list(xs), [str(k) for k in orders])
    ax.set_xlabel("order of the proliferating permutation")
    ax.set_ylabel("series" if result.multiplier == 1 else "series (all transpositions)")
    ax.set_title(f"{result.kind.value}, n={result.n}, t={result.t}  (labels: structures per order)", fontsize=9)
    ax.spines[["top", "right"]].set_visible(False)
    fig.tight_layout()
    # fixed metadata keeps repeated runs byte-identical
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path
