"""Reproducible random coefficient masks over zig-zag ranks.

A mask is drawn by a partial Fisher-Yates shuffle over all ranks, driven by
numpy's PCG64 generator, so the kept set is a pure function of
(side, ratio, seed).  A useful side effect of the prefix construction: for
a fixed seed, the mask at a higher ratio is a superset of the mask at a
lower ratio.

The dense measurement matrix is never formed; measuring is just gathering
spectrum entries at the kept ranks, and embedding scatters them back into
an otherwise zero spectrum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .transform import DctSpectrum, zigzag_order

Array = np.ndarray


@dataclass(frozen=True)
class MeasurementMask:
    """Kept zig-zag ranks for a side x side spectrum."""

    side: int
    kept_ranks: Array
    ratio: float
    seed: int

    def __post_init__(self) -> None:
        ranks = np.asarray(self.kept_ranks, dtype=np.int64)
        n = self.side * self.side
        if ranks.ndim != 1 or ranks.size < 1 or ranks.size > n:
            raise ValueError("kept_ranks must hold between 1 and side^2 ranks")
        if np.any((ranks < 0) | (ranks >= n)):
            raise ValueError("ranks out of range")
        if np.unique(ranks).size != ranks.size:
            raise ValueError("ranks must be distinct")
        expected = min(max(int(round(self.ratio * n)), 1), n)
        if ranks.size != expected:
            raise ValueError(f"ratio {self.ratio} implies {expected} ranks, got {ranks.size}")
        ranks = np.sort(ranks)
        ranks.setflags(write=False)
        object.__setattr__(self, "kept_ranks", ranks)

    @property
    def count(self) -> int:
        return self.kept_ranks.size


@dataclass(frozen=True)
class MeasurementSet:
    """Measured coefficient values, aligned with mask.kept_ranks."""

    mask: MeasurementMask
    values: Array
    source_len: int

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (self.mask.count,):
            raise ValueError("values length must match the mask")
        if not np.all(np.isfinite(vals)):
            raise ValueError("measured values must be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


def draw_mask(side: int, ratio: float, seed: int) -> MeasurementMask:
    """Draw round(ratio * side^2) distinct ranks uniformly, clamped to >= 1.

    Partial Fisher-Yates over the rank indices; deterministic in
    (side, ratio, seed).
    """
    if side < 1:
        raise ValueError("side must be >= 1")
    if not (0.0 < ratio <= 1.0):
        raise ValueError(f"ratio must lie in (0, 1], got {ratio}")
    n = side * side
    m = min(max(int(round(ratio * n)), 1), n)
    rng = np.random.default_rng(seed)
    ranks = np.arange(n, dtype=np.int64)
    for i in range(m):
        j = i + int(rng.integers(n - i))
        ranks[i], ranks[j] = ranks[j], ranks[i]
    return MeasurementMask(side=side, kept_ranks=ranks[:m], ratio=float(ratio), seed=int(seed))


def measure(spectrum: DctSpectrum, mask: MeasurementMask) -> MeasurementSet:
    """Gather the spectrum values at the mask's zig-zag ranks."""
    if spectrum.side != mask.side:
        raise ValueError(f"side mismatch: spectrum {spectrum.side}, mask {mask.side}")
    order = zigzag_order(mask.side)
    vals = spectrum.coeffs[order.rows[mask.kept_ranks], order.cols[mask.kept_ranks]]
    return MeasurementSet(mask=mask, values=vals, source_len=spectrum.source_len)


def embed(meas: MeasurementSet) -> DctSpectrum:
    """Zero-filled spectrum carrying only the measured coefficients."""
    side = meas.mask.side
    order = zigzag_order(side)
    coeffs = np.zeros((side, side), dtype=np.float64)
    kept = meas.mask.kept_ranks
    coeffs[order.rows[kept], order.cols[kept]] = meas.values
    return DctSpectrum(coeffs, source_len=meas.source_len)


def mask_to_json(mask: MeasurementMask) -> str:
    return json.dumps(
        {
            "side": mask.side,
            "ratio": mask.ratio,
            "seed": mask.seed,
            "kept_ranks": mask.kept_ranks.tolist(),
        }
    )


def mask_from_json(text: str) -> MeasurementMask:
    obj = json.loads(text)
    return MeasurementMask(
        side=int(obj["side"]),
        kept_ranks=np.asarray(obj["kept_ranks"], dtype=np.int64),
        ratio=float(obj["ratio"]),
        seed=int(obj["seed"]),
    )
