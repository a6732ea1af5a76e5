"""Summary figure for a census table (rows as produced by ``cli.census_rows``)."""

from __future__ import annotations

from collections import Counter

import matplotlib

matplotlib.use("Agg")
from matplotlib import pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

FIGSIZE = (10, 4)
DPI = 150


def census_figure(rows, path):
    """Genus against |signature|/2 (marker area ~ sqrt of knot count) and the d(+1) histogram."""
    pairs = Counter((abs(r[3]) // 2, r[4]) for r in rows)
    d_plus = Counter(r[6] for r in rows)

    fig, (left, right) = plt.subplots(1, 2, figsize=FIGSIZE)
    xs, ys, counts = zip(*((x, y, n) for (x, y), n in sorted(pairs.items()))) if pairs else ((), (), ())
    left.scatter(xs, ys, s=[10 * n ** 0.5 for n in counts], alpha=0.6, edgecolors="k", linewidths=0.5)
    top = max(list(xs) + list(ys) + [1])
    left.plot([0, top], [0, top], color="gray", lw=0.8, ls="--")
    left.set_xlabel("|signature| / 2")
    left.set_ylabel("genus")
    left.set_title(f"{len(rows)} knots")

    keys = sorted(d_plus)
    right.bar(keys, [d_plus[k] for k in keys], width=1.6, color="tab:blue", edgecolor="k")
    right.xaxis.set_major_locator(MaxNLocator(integer=True))
    right.set_xlabel("d of +1 surgery")
    right.set_ylabel("knots")

    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path
