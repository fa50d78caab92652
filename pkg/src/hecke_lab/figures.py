"""Matplotlib renderings of suite reports (PNG, headless backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["render_report"]

_PASS, _FAIL = "#3b7dd8", "#d8533b"


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _checks_figure(report, path: Path) -> Path:
    checks = report.checks
    fig, ax = plt.subplots(figsize=(7, 0.32 * len(checks) + 1.2))
    labels = [f"{c.type} {c.name}" for c in checks]
    counts = [max(c.count, 1) for c in checks]
    colors = [_FAIL if c.failed else _PASS for c in checks]
    ax.barh(range(len(checks)), counts, color=colors)
    ax.set_yticks(range(len(checks)), labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("cases checked (red: at least one failure)")
    ax.set_title(f"{report.suite}: {'pass' if report.passed else 'FAIL'}")
    return _save(fig, path)


def _table_figure(rows, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 3))
    xs = range(len(rows))
    ax.bar(xs, [r["order"] for r in rows],
           color=[_PASS if r["match"] else _FAIL for r in rows])
    ax.set_xticks(list(xs), [r["type"] for r in rows], rotation=60, fontsize=8)
    ax.set_ylabel("order of Y~/2Y")
    ax.set_yticks([1, 2, 4])
    ax.set_title("central 2-torsion by type")
    return _save(fig, path)


def _growth_figure(growth: dict, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for name, sizes in growth.items():
        ax.plot(range(len(sizes)), sizes, marker="o", label=name)
    ax.set_yscale("log")
    ax.set_xlabel("length")
    ax.set_ylabel("elements of that length")
    ax.legend(fontsize=8)
    ax.set_title("spheres in the extended affine Weyl group")
    return _save(fig, path)


def _census_figure(census: dict, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    names = list(census)
    nf = [census[n]["normal_forms"] for n in names]
    sup = [census[n]["supporting"] for n in names]
    xs = range(len(names))
    ax.bar([x - 0.2 for x in xs], nf, width=0.4, label="normal forms", color="#999999")
    ax.bar([x + 0.2 for x in xs], sup, width=0.4, label="supporting", color=_PASS)
    ax.set_xticks(list(xs), names)
    ax.set_yscale("log")
    ax.legend(fontsize=8)
    ax.set_title("double-coset normal forms")
    return _save(fig, path)


def render_report(report, directory) -> list:
    """Write the figures for ``report`` into ``directory``; returns paths."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = report.suite.replace("-", "_")
    paths = [_checks_figure(report, out_dir / f"{stem}_checks.png")]
    if "rows" in report.data:
        paths.append(_table_figure(report.data["rows"], out_dir / f"{stem}_table.png"))
    if "sphere_sizes" in report.data:
        paths.append(_growth_figure(report.data["sphere_sizes"], out_dir / f"{stem}_growth.png"))
    if "census" in report.data:
        paths.append(_census_figure(report.data["census"], out_dir / f"{stem}_census.png"))
    return paths
