"""Figure rendering for the report commands (PNG files next to the CSV)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_count_figure(rows, path: str) -> None:
    """Class counts against the rigorous bound, log-scale y."""
    ts = [r[0] for r in rows]
    counts = [r[1] for r in rows]
    bounds = [float(r[2]) for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.step(ts, counts, where="post", label="enumerated classes")
    ax.plot(ts, bounds, "--", label="upper bound")
    ax.set_xlabel("height bound T")
    ax.set_ylabel("similarity classes")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_census_figure(entries, path: str) -> None:
    """Cyclic sublattice counts per index, split by simplicity."""
    indices = sorted({e.index for e in entries})
    simple = [sum(1 for e in entries if e.index == i and e.is_simple)
              for i in indices]
    other = [sum(1 for e in entries if e.index == i and not e.is_simple)
             for i in indices]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(indices, simple, label="simple cyclic")
    ax.bar(indices, other, bottom=simple, label="cyclic, no generator found")
    ax.set_xlabel("index in Z^n")
    ax.set_ylabel("lattices")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_root_report_figure(rows, path: str) -> None:
    """Kissing numbers by rank for each family, duals hollow."""
    fig, ax = plt.subplots(figsize=(6, 4))
    markers = {"A": "o", "D": "s", "E": "^"}
    for fam in ("A", "D", "E"):
        xs = [r.id.n for r in rows if r.id.family == fam and not r.id.dual]
        ys = [r.kissing for r in rows if r.id.family == fam and not r.id.dual]
        if xs:
            ax.scatter(xs, ys, marker=markers[fam], label=fam)
        xs = [r.id.n for r in rows if r.id.family == fam and r.id.dual]
        ys = [r.kissing for r in rows if r.id.family == fam and r.id.dual]
        if xs:
            ax.scatter(xs, ys, marker=markers[fam], facecolors="none",
                       edgecolors="gray", label=f"{fam} dual")
    ax.set_xlabel("rank n")
    ax.set_ylabel("kissing number")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
