"""Figure rendering for equivocation-region frontiers."""
from __future__ import annotations

from pathlib import Path
from typing import Mapping, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.figsize": (5.0, 3.6),
    "savefig.dpi": 150,
}


def _label(a) -> str:
    if isinstance(a, tuple):
        return f"a1={a[0]:g}, a2={a[1]:g}"
    return f"a={a:g}"


def plot_family(
    families: Mapping,
    path,
    title: Optional[str] = None,
    hlines: Sequence[tuple[float, str]] = (),
) -> Path:
    """Draw one frontier per relay power value and save to ``path``.

    Parameters
    ----------
    families : mapping
        Relay power (or ``(a1, a2)`` pair) to a list of points with ``re1`` and ``re2``.
    path : str or Path
        Output file; the format follows the suffix.
    hlines : sequence of (value, label)
        Reference levels on the ``re2`` axis, e.g. an outer bound.
    """
    path = Path(path)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for a, pts in families.items():
            pts = sorted(pts, key=lambda p: (p.re1, -p.re2))
            ax.plot([p.re1 for p in pts], [p.re2 for p in pts], marker=".", ms=3, lw=1, label=_label(a))
        for value, label in hlines:
            ax.axhline(value, color="0.4", ls="--", lw=0.8, label=label)
        ax.set_xlabel("Re1 (bits/channel use)")
        ax.set_ylabel("Re2 (bits/channel use)")
        ax.set_xlim(left=0)
        ax.set_ylim(bottom=0)
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
