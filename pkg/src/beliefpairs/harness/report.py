"""CSV tables and matplotlib figures for theorem runs and timing benchmarks."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .. import ael, dl
from .generate import GenConfig, gen_default_theory, gen_modal_theory
from .theorems import TheoremReport

THEOREM_FIELDS = ["theorem", "title", "checked", "failures", "elapsed_s", "status"]
TIMING_FIELDS = ["logic", "method", "n", "instances", "total_s", "mean_ms"]


def write_theorem_report(reports: list[TheoremReport], out_dir: Path) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "theorems.csv"
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(THEOREM_FIELDS)
        for r in reports:
            w.writerow([r.theorem, r.title, r.checked, len(r.failures),
                        f"{r.elapsed:.4f}", "pass" if r.passed else "fail"])

    fig, ax = plt.subplots(figsize=(8, 3.5))
    ids = [r.theorem for r in reports]
    colors = ["tab:green" if r.passed else "tab:red" for r in reports]
    ax.bar(ids, [r.elapsed for r in reports], color=colors)
    ax.set_ylabel("seconds")
    ax.set_title("theorem checks (green = pass, red = fail)")
    ax.tick_params(axis="x", labelrotation=45)
    fig.tight_layout()
    png_path = out_dir / "theorems.png"
    fig.savefig(png_path, dpi=100)
    plt.close(fig)
    return [csv_path, png_path]


@dataclass
class TimingRow:
    logic: str
    method: str
    n: int
    instances: int
    total: float

    @property
    def mean_ms(self) -> float:
        return 1000 * self.total / max(self.instances, 1)


_METHODS = {
    "ael": [
        ("kk", lambda t, v: ael.kripke_kleene(t, v)),
        ("wf", lambda t, v: ael.well_founded_ael(t, v)),
        ("enumerate", lambda t, v: ael.partial_expansions(t, v)),
    ],
    "dl": [
        ("kk", lambda d, v: dl.kripke_kleene_dl(d, v)),
        ("wf", lambda d, v: dl.well_founded_dl(d, v)),
        ("enumerate", lambda d, v: dl.partial_weak_extensions(d, v)),
    ],
}


def bench(seed: int = 0, ns=(1, 2, 3), samples: int = 5) -> list[TimingRow]:
    """Wall-clock time of KK/WF iteration versus enumerating every belief pair."""
    rows = []
    for n in ns:
        cfg = GenConfig(seed=seed, n=n, samples=samples)
        v = cfg.vocab
        corpus = {
            "ael": [gen_modal_theory(cfg, k) for k in range(samples)],
            "dl": [gen_default_theory(cfg, k) for k in range(samples)],
        }
        for logic, methods in _METHODS.items():
            for name, fn in methods:
                start = time.perf_counter()
                for inst in corpus[logic]:
                    fn(inst, v)
                rows.append(TimingRow(logic, name, n, samples, time.perf_counter() - start))
    return rows


def write_timing_report(rows: list[TimingRow], out_dir: Path) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "timing.csv"
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TIMING_FIELDS)
        for r in rows:
            w.writerow([r.logic, r.method, r.n, r.instances, f"{r.total:.6f}", f"{r.mean_ms:.4f}"])

    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), sharey=True)
    for ax, logic in zip(axes, ("ael", "dl")):
        for method in ("kk", "wf", "enumerate"):
            pts = sorted((r.n, r.mean_ms) for r in rows if r.logic == logic and r.method == method)
            if pts:
                ax.plot([p[0] for p in pts], [max(p[1], 1e-3) for p in pts], marker="o", label=method)
        ax.set_yscale("log")
        ax.set_xlabel("atoms n")
        ax.set_title(logic)
        ax.legend()
    axes[0].set_ylabel("mean ms per instance")
    fig.tight_layout()
    png_path = out_dir / "timing.png"
    fig.savefig(png_path, dpi=100)
    plt.close(fig)
    return [csv_path, png_path]
