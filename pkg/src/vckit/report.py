"""Run reports: one JSON document per run, delimited per-level output, and
the benchmark's vector chart.

Everything a report stores is JSON-native so a document round-trips
losslessly; wall-clock fields are rounded to microseconds so the CSV and
the JSON carry identical numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .estimator import DepthStats, VcEstimate

PER_D_CSV_HEADER = "d,m,z_m,unresolved,elapsed_s"
BENCH_CSV_HEADER = "n,vc,elapsed_s"


@dataclass
class Report:
    """Machine-readable record of a CLI run."""

    command: str
    config: dict
    results: dict
    warnings: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "warnings": self.warnings,
            "notes": self.notes,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(
            command=data["command"],
            config=data["config"],
            results=data["results"],
            warnings=data["warnings"],
            notes=data["notes"],
        )

    def write(self, path) -> None:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(self.to_json())


def _round_elapsed(value: float) -> float:
    return round(value, 6)


def depth_row(stats: DepthStats) -> dict:
    return {
        "d": stats.d,
        "m": stats.m,
        "z_m": stats.z_m,
        "unresolved": stats.unresolved,
        "elapsed_s": _round_elapsed(stats.elapsed_s),
        "zm_is_lower_bound": stats.zm_is_lower_bound,
        "draws_run": stats.draws_run,
    }


def estimate_payload(estimate: VcEstimate) -> dict:
    return {
        "vc": "infinite" if estimate.is_infinite else estimate.vc,
        "terminated_at_dmax": estimate.terminated_at_dmax,
        "seed": estimate.seed,
        "certificate": {
            "epsilon": estimate.certificate.epsilon,
            "delta": estimate.certificate.delta,
            "sample_size_m": estimate.certificate.sample_size_m,
        },
        "per_d": [depth_row(s) for s in estimate.per_d],
    }


def estimate_warnings(estimate: VcEstimate) -> list:
    warnings = []
    if not estimate.is_infinite and estimate.per_d:
        stopping = estimate.per_d[-1]
        if stopping.unresolved > 0:
            warnings.append(
                f"at the stopping size d={stopping.d}, {stopping.unresolved} of "
                f"{stopping.m} failure verdicts were budget-limited and could be "
                "false negatives"
            )
    return warnings


def write_per_d_csv(path, per_d: Sequence[DepthStats]) -> None:
    lines = [PER_D_CSV_HEADER]
    for s in per_d:
        lines.append(
            f"{s.d},{s.m},{s.z_m},{s.unresolved},{_round_elapsed(s.elapsed_s):.6f}"
        )
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_bench_csv(path, rows: Sequence[tuple[int, object, float]]) -> None:
    lines = [BENCH_CSV_HEADER]
    for n, vc, elapsed in rows:
        lines.append(f"{n},{vc},{_round_elapsed(elapsed):.6f}")
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_bench_chart(path, dims: Sequence[int], seconds: Sequence[float]) -> None:
    """Static SVG line chart of estimation time against ambient dimension."""
    import matplotlib

    matplotlib.use("Agg", force=True)
    from matplotlib import pyplot as plt

    with plt.rc_context({"svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        (line,) = ax.plot(list(dims), list(seconds), marker="o")
        line.set_gid("bench-time-line")
        ax.set_xlabel("ambient dimension n")
        ax.set_ylabel("seconds")
        ax.set_xticks(list(dims))
        fig.tight_layout()
        fig.savefig(path, format="svg")
        plt.close(fig)
