"""Figures written next to the JSON reports (``--figure`` on verify/search)."""

from __future__ import annotations

import math
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .verify import VIOLATED, VerificationReport  # noqa: E402

_STATUS_COLORS = {"holds": "tab:blue", "equality": "tab:green", "strict": "tab:orange", VIOLATED: "tab:red"}


def _log10(x: int) -> float:
    return math.log10(x) if x > 0 else float("nan")


def plot_verification(reports: Sequence[VerificationReport], path) -> None:
    """First lhs value against first rhs value per report, on log10 axes.

    Identities sit on the diagonal; inequalities of the form lhs >= rhs sit on
    or below it.
    """
    fig, ax = plt.subplots(figsize=(5.5, 5))
    lo, hi = 0.0, 1.0
    seen = set()
    for rep in reports:
        x = _log10(int(next(iter(rep.lhs.values()))))
        y = _log10(int(next(iter(rep.rhs.values()))))
        label = rep.status if rep.status not in seen else None
        seen.add(rep.status)
        ax.scatter([x], [y], s=18, color=_STATUS_COLORS.get(rep.status, "k"), label=label)
        for v in (x, y):
            if v == v:
                lo, hi = min(lo, v), max(hi, v)
    ax.plot([lo, hi], [lo, hi], color="0.6", lw=0.8, ls="--")
    claims = sorted({r.claim for r in reports})
    ax.set_title(", ".join(claims))
    ax.set_xlabel("log10 lhs")
    ax.set_ylabel("log10 rhs")
    if seen:
        ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_conjecture(reports: Sequence[VerificationReport], path) -> None:
    """log10(eps(H) / eps(G)^k) for every sampled lift, one column per base graph."""
    fig, ax = plt.subplots(figsize=(max(5.0, 0.25 * len(reports) + 2), 4))
    names = []
    for i, rep in enumerate(reports):
        ref = _log10(int(rep.lhs["eps^k"]))
        ys = [_log10(int(v)) - ref for v in rep.params.get("eps_lift", [])]
        ax.scatter([i] * len(ys), ys, s=6, alpha=0.5,
                   color="tab:red" if rep.status == VIOLATED else "tab:blue")
        names.append(rep.graph.get("name", str(i)))
    ax.axhline(0.0, color="0.3", lw=0.8)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=90, fontsize=7)
    ax.set_ylabel("log10 eps(lift) - k log10 eps(G)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
