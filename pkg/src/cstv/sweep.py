"""MSE metric, the single-signal recovery pipeline, and ratio sweeps.

The pipeline removes the signal mean before embedding and restores it
after recovery.  The mean must travel as side information: total variation
is invariant under constant shifts and the solver's updates are zero-mean,
so whenever the DC coefficient is not among the measurements the
reconstruction's mean would otherwise be pinned at zero.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .sampling import draw_mask, measure
from .signal import Signal1D, flatten_to_signal, reshape_to_image
from .solver import ReconstructionResult, SolverConfig, SolverFailure, reconstruct
from .transform import dct2_forward


def mse(a: Signal1D, b: Signal1D) -> float:
    """Mean squared error over the original samples."""
    if a.original_len != b.original_len:
        raise ValueError(f"length mismatch: {a.original_len} vs {b.original_len}")
    diff = a.samples - b.samples
    return float(np.mean(diff * diff))


def recover_signal(
    signal: Signal1D,
    ratio: float,
    seed: int,
    config: SolverConfig | None = None,
) -> tuple[Signal1D, ReconstructionResult]:
    """Run the full reshape / sample / solve / flatten pipeline once."""
    mean = float(np.mean(signal.samples))
    centered = Signal1D(signal.samples - mean, original_len=signal.original_len)
    image = reshape_to_image(centered)
    spectrum = dct2_forward(image)
    mask = draw_mask(image.side, ratio, seed)
    meas = measure(spectrum, mask)
    result = reconstruct(meas, config)
    recovered = flatten_to_signal(result.image)
    restored = Signal1D(recovered.samples + mean, original_len=recovered.original_len)
    return restored, result


@dataclass(frozen=True)
class SweepSpec:
    """One experiment: a signal, a ratio grid, mask seeds, solver config."""

    signal: Signal1D
    ratios: tuple[float, ...]
    seeds: tuple[int, ...]
    solver: SolverConfig = field(default_factory=SolverConfig)
    source: str = "unspecified"

    def __post_init__(self) -> None:
        if not self.ratios:
            raise ValueError("ratios must be non-empty")
        if any(not (0.0 < r <= 1.0) for r in self.ratios):
            raise ValueError("every ratio must lie in (0, 1]")
        if not self.seeds:
            raise ValueError("seeds must be non-empty")
        object.__setattr__(self, "ratios", tuple(float(r) for r in self.ratios))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))


@dataclass(frozen=True)
class SweepRow:
    ratio: float
    seed: int
    mse: float
    iters_used: int
    converged: bool
    wall_time: float


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]
    median_mse: tuple[tuple[float, float], ...]
    """Per-ratio (ratio, median mse over seeds), failed rows excluded."""


def _run_row(args: tuple[np.ndarray, int, float, int, SolverConfig]) -> SweepRow:
    samples, original_len, ratio, seed, config = args
    signal = Signal1D(samples, original_len=original_len)
    start = time.perf_counter()
    try:
        recovered, result = recover_signal(signal, ratio, seed, config)
        row_mse = mse(signal, recovered)
        iters, converged = result.iters_used, result.converged
    except SolverFailure as failure:
        row_mse, iters, converged = float("nan"), failure.iteration, False
    return SweepRow(
        ratio=ratio,
        seed=seed,
        mse=row_mse,
        iters_used=iters,
        converged=converged,
        wall_time=time.perf_counter() - start,
    )


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepReport:
    """Evaluate every (ratio, seed) pair.

    Rows are assembled sorted by (ratio, seed), so a parallel run produces
    the same report as a serial one (wall_time aside).
    """
    jobs = [
        (np.asarray(spec.signal.samples), spec.signal.original_len, ratio, seed, spec.solver)
        for ratio in sorted(spec.ratios)
        for seed in sorted(spec.seeds)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_row, jobs))
    else:
        rows = [_run_row(job) for job in jobs]

    medians = []
    for ratio in sorted(spec.ratios):
        values = [r.mse for r in rows if r.ratio == ratio and not np.isnan(r.mse)]
        medians.append((ratio, float(np.median(values)) if values else float("nan")))
    return SweepReport(rows=tuple(rows), median_mse=tuple(medians))


def write_report_csv(report: SweepReport, path: str | Path) -> None:
    """Per-row CSV.  Timing is deliberately left to the JSON sidecar so
    repeated runs of the same spec are byte-identical."""
    with open(path, "w", newline="") as fh:
        fh.write("ratio,seed,mse,iters_used,converged\n")
        for row in report.rows:
            mse_txt = "nan" if np.isnan(row.mse) else repr(row.mse)
            fh.write(f"{row.ratio!r},{row.seed},{mse_txt},{row.iters_used},{str(row.converged).lower()}\n")


def write_report_sidecar(report: SweepReport, spec: SweepSpec, path: str | Path) -> None:
    """Provenance sidecar: spec, solver config, version, medians, timings."""
    payload = {
        "version": __version__,
        "source": spec.source,
        "n_samples": spec.signal.original_len,
        "ratios": list(spec.ratios),
        "seeds": list(spec.seeds),
        "solver": {
            "max_iters": spec.solver.max_iters,
            "tol": spec.solver.tol,
            "step_primal": spec.solver.step_primal,
            "step_dual": spec.solver.step_dual,
            "log_every": spec.solver.log_every,
        },
        "median_mse": {repr(ratio): med for ratio, med in report.median_mse},
        "wall_time_total": sum(r.wall_time for r in report.rows),
        "wall_time_rows": [r.wall_time for r in report.rows],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
