"""Render experiment summary CSVs into error-bar charts plus data dumps.

Input is the harness summary schema (family, K, delta, algo, trials,
mean_pulls, se_pulls, error_count, forced_stop_count).  Two figure kinds:

* ``vs_K`` -- one image per (family, delta): mean stopping time against the
  arm count, one series per algorithm, error bars of three standard errors.
* ``vs_proportion`` -- one image per (K, delta): mean stopping time against
  the fraction of qualified arms, families ordered by that fraction
  (AllWorse 0, UniqueQualified 1/K, OneQuarter, HalfGood, AllGood 1).

Every image is accompanied by a ``*_data.csv`` dump holding exactly the
plotted values, copied verbatim from the input so the charts are testable
without image comparison.  The input is never modified, and identical inputs
produce identical dumps.  Cells whose trials all force-stopped carry no mean
and are skipped; non-zero forced-stop counts render as point annotations.
"""

from __future__ import annotations

import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

REQUIRED_COLUMNS = ("family", "K", "delta", "algo", "trials", "mean_pulls",
                    "se_pulls", "error_count", "forced_stop_count")

DUMP_COLUMNS_VS_K = ("family", "K", "delta", "algo", "mean_pulls", "se_pulls",
                     "forced_stop_count")
DUMP_COLUMNS_VS_PROPORTION = ("family", "K", "delta", "algo", "fraction",
                              "mean_pulls", "se_pulls", "forced_stop_count")


class MissingColumnsError(ValueError):
    """Raised when the input CSV lacks required summary columns."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__(
            "input CSV is missing required columns: " + ", ".join(self.missing))


@dataclass(frozen=True)
class PlotSpec:
    """One batch-rendering request."""

    input_csv: Path
    out_dir: Path
    kind: str = "vs_K"
    log_y: bool = False
    image_format: str = "png"

    def __post_init__(self):
        if self.kind not in ("vs_K", "vs_proportion"):
            raise ValueError("kind must be 'vs_K' or 'vs_proportion'")


def qualified_fraction(family: str, k: int):
    """Fraction of arms strictly above the threshold, by family."""
    return {
        "AllWorse": 0.0,
        "UniqueQualified": 1.0 / k,
        "OneQuarter": (k // 4) / k,
        "HalfGood": (k // 2) / k,
        "AllGood": 1.0,
    }.get(family)


def read_summary(path):
    """Load and validate a summary CSV; returns the raw row dicts."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise MissingColumnsError(missing)
        return list(reader)


def _plottable(row):
    try:
        return math.isfinite(float(row["mean_pulls"]))
    except ValueError:
        return False


def _fig_path(spec, stem):
    return Path(spec.out_dir) / f"{stem}.{spec.image_format}"


def _write_dump(path, columns, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        writer.writerows(rows)


def _render(spec, stem, groups, xlabel, title):
    """Draw one figure: ``groups`` maps algo -> list of (x, row) pairs."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for algo in sorted(groups):
        pts = sorted(groups[algo], key=lambda p: p[0])
        xs = [p[0] for p in pts]
        ys = [float(p[1]["mean_pulls"]) for p in pts]
        errs = [3.0 * float(p[1]["se_pulls"]) for p in pts]
        ax.errorbar(xs, ys, yerr=errs, marker="o", capsize=3, label=algo)
        for x, row in pts:
            forced = int(row["forced_stop_count"])
            if forced:
                ax.annotate(f"{forced} forced", (x, float(row["mean_pulls"])),
                            textcoords="offset points", xytext=(0, 6),
                            fontsize=7)
    if spec.log_y:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("mean pulls")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    out = _fig_path(spec, stem)
    fig.savefig(out)
    plt.close(fig)
    return out


def plot(spec: PlotSpec):
    """Render every selected figure; returns the list of image paths."""
    rows = read_summary(spec.input_csv)
    Path(spec.out_dir).mkdir(parents=True, exist_ok=True)
    skipped = [r for r in rows if not _plottable(r)]
    rows = [r for r in rows if _plottable(r)]
    if skipped:
        print(f"plotview: skipped {len(skipped)} rows without a finite mean "
              "(all trials force-stopped)", file=sys.stderr)
    if spec.kind == "vs_K":
        images = _plot_vs_k(spec, rows)
    else:
        images = _plot_vs_proportion(spec, rows)
    if not images:
        print("plotview: no rows matched the selection; nothing rendered",
              file=sys.stderr)
    return images


def _plot_vs_k(spec, rows):
    cells = {}
    for row in rows:
        cells.setdefault((row["family"], row["delta"]), []).append(row)
    images = []
    for family, delta in sorted(cells):
        selected = cells[(family, delta)]
        groups = {}
        for row in selected:
            groups.setdefault(row["algo"], []).append((int(row["K"]), row))
        stem = f"{family}_{delta}"
        images.append(_render(spec, stem, groups, "K",
                              f"{family} (delta={delta})"))
        dump_rows = [
            (row["family"], row["K"], row["delta"], row["algo"],
             row["mean_pulls"], row["se_pulls"], row["forced_stop_count"])
            for row in sorted(selected, key=lambda r: (r["algo"], int(r["K"])))
        ]
        _write_dump(Path(spec.out_dir) / f"{stem}_data.csv",
                    DUMP_COLUMNS_VS_K, dump_rows)
    return images


def _plot_vs_proportion(spec, rows):
    cells = {}
    unmapped = set()
    for row in rows:
        frac = qualified_fraction(row["family"], int(row["K"]))
        if frac is None:
            unmapped.add(row["family"])
            continue
        cells.setdefault((int(row["K"]), row["delta"]), []).append((frac, row))
    if unmapped:
        print("plotview: families without a proportion axis skipped: "
              + ", ".join(sorted(unmapped)), file=sys.stderr)
    images = []
    for k, delta in sorted(cells):
        selected = cells[(k, delta)]
        groups = {}
        for frac, row in selected:
            groups.setdefault(row["algo"], []).append((frac, row))
        stem = f"K{k}_{delta}"
        images.append(_render(spec, stem, groups, "qualified fraction",
                              f"K={k} (delta={delta})"))
        dump_rows = [
            (row["family"], row["K"], row["delta"], row["algo"], repr(frac),
             row["mean_pulls"], row["se_pulls"], row["forced_stop_count"])
            for frac, row in sorted(selected,
                                    key=lambda p: (p[1]["algo"], p[0]))
        ]
        _write_dump(Path(spec.out_dir) / f"{stem}_data.csv",
                    DUMP_COLUMNS_VS_PROPORTION, dump_rows)
    return images
