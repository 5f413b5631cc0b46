"""Total-variation minimization under exact DCT-coefficient constraints.

Solves

    minimize  TV(X)  subject to  measured coefficients of DCT2(X) fixed

with a first-order primal-dual scheme: each iteration takes one dual
ascent step on the TV term (per-pixel gradients, clamped to the unit
Euclidean ball), then a primal step through the divergence, and finally
projects the iterate back onto the constraint set by overwriting the
measured DCT coefficients.  Because the transform is orthonormal, that
overwrite is the exact Euclidean projection, so every iterate is feasible.

Stability requires step_primal * step_dual * 8 <= 1; the squared operator
norm of the discrete gradient is at most 8.

Stopping needs care.  The composition div(grad(.)) is diagonal in the
DCT-II basis, so while no dual pixel is clamped the whole primal update is
annihilated by the constraint projection and the image does not move even
though the solve has barely started.  Convergence is therefore declared
only when the relative change of the primal iterate AND of the dual
variable both fall below tol.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .sampling import MeasurementSet
from .signal import ImageMatrix, _frozen
from .transform import DctSpectrum, _dct2, _idct2, zigzag_order

Array = np.ndarray

GRAD_SQ_NORM_BOUND = 8.0


class SolverFailure(RuntimeError):
    """Non-finite values appeared mid-iteration."""

    def __init__(self, iteration: int, message: str | None = None):
        self.iteration = iteration
        super().__init__(message or f"solver diverged at iteration {iteration}")


@dataclass(frozen=True)
class GradientField:
    """Forward-difference image gradient; zero on the trailing boundary."""

    gx: Array
    gy: Array

    def __post_init__(self) -> None:
        gx = np.asarray(self.gx, dtype=np.float64)
        gy = np.asarray(self.gy, dtype=np.float64)
        if gx.shape != gy.shape or gx.ndim != 2 or gx.shape[0] != gx.shape[1]:
            raise ValueError("gx and gy must be equal square matrices")
        if not (np.all(np.isfinite(gx)) and np.all(np.isfinite(gy))):
            raise ValueError("gradient entries must be finite")
        if gx.shape[0] > 0 and (np.any(gx[-1, :] != 0.0) or np.any(gy[:, -1] != 0.0)):
            raise ValueError("boundary convention: last row of gx and last column of gy must be zero")
        object.__setattr__(self, "gx", _frozen(gx))
        object.__setattr__(self, "gy", _frozen(gy))

    @property
    def side(self) -> int:
        return self.gx.shape[0]


@dataclass(frozen=True)
class SolverConfig:
    """Iteration budget, stopping tolerance and step sizes.

    Defaults satisfy the stability bound with a small slack
    (8 * 0.35 * 0.35 = 0.98).
    """

    max_iters: int = 500
    tol: float = 1e-6
    step_primal: float = 0.35
    step_dual: float = 0.35
    log_every: int = 50

    def __post_init__(self) -> None:
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.tol > 0.0:
            raise ValueError("tol must be > 0")
        if self.step_primal <= 0.0 or self.step_dual <= 0.0:
            raise ValueError("step sizes must be positive")
        if self.step_primal * self.step_dual * GRAD_SQ_NORM_BOUND > 1.0 + 1e-12:
            raise ValueError("unstable steps: step_primal * step_dual * 8 must be <= 1")
        if self.log_every < 1:
            raise ValueError("log_every must be >= 1")


@dataclass(frozen=True)
class ReconstructionResult:
    image: ImageMatrix
    iters_used: int
    final_tv: float
    constraint_residual: float
    converged: bool
    history: tuple[tuple[int, float, float], ...] = field(default=())
    """(iteration, relative primal change, tv) sampled every log_every."""


def _grad_arrays(x: Array) -> tuple[Array, Array]:
    gx = np.zeros_like(x)
    gy = np.zeros_like(x)
    gx[:-1, :] = x[1:, :] - x[:-1, :]
    gy[:, :-1] = x[:, 1:] - x[:, :-1]
    return gx, gy


def _div_arrays(gx: Array, gy: Array) -> Array:
    div = gx.copy()
    div[1:, :] -= gx[:-1, :]
    div += gy
    div[:, 1:] -= gy[:, :-1]
    return div


def _tv_value(x: Array) -> float:
    # math.fsum is exactly rounded, which makes the value independent of
    # summation order and therefore bit-comparable against a loop oracle
    gx, gy = _grad_arrays(x)
    return math.fsum(np.sqrt(gx * gx + gy * gy).ravel())


def grad(image: ImageMatrix) -> GradientField:
    """Per-pixel forward differences down rows (gx) and across columns (gy)."""
    gx, gy = _grad_arrays(image.values)
    return GradientField(gx=gx, gy=gy)


def divergence(field: GradientField) -> ImageMatrix:
    """Negative adjoint of :func:`grad`:  <grad X, P> == -<X, divergence(P)>."""
    div = _div_arrays(field.gx, field.gy)
    return ImageMatrix(div, source_len=div.size)


def tv(image: ImageMatrix) -> float:
    """Isotropic total variation: sum of per-pixel gradient magnitudes."""
    return _tv_value(image.values)


def project_constraint(spectrum: DctSpectrum, meas: MeasurementSet) -> DctSpectrum:
    """Overwrite the measured ranks with their measured values. Idempotent."""
    if spectrum.side != meas.mask.side:
        raise ValueError(f"side mismatch: spectrum {spectrum.side}, mask {meas.mask.side}")
    order = zigzag_order(spectrum.side)
    kept = meas.mask.kept_ranks
    coeffs = spectrum.coeffs.copy()
    coeffs[order.rows[kept], order.cols[kept]] = meas.values
    return DctSpectrum(coeffs, source_len=spectrum.source_len)


def reconstruct(meas: MeasurementSet, config: SolverConfig | None = None) -> ReconstructionResult:
    """Recover an image from a measurement set by constrained TV descent.

    Starts from the zero-filled spectrum (feasible by construction) and
    iterates dual ascent / primal step / constraint projection until both
    primal and dual relative changes drop below config.tol, or max_iters.
    """
    if config is None:
        config = SolverConfig()
    side = meas.mask.side
    order = zigzag_order(side)
    kept = meas.mask.kept_ranks
    rows, cols = order.rows[kept], order.cols[kept]

    spec0 = np.zeros((side, side), dtype=np.float64)
    spec0[rows, cols] = meas.values
    x = _idct2(spec0)
    x_bar = x.copy()
    px = np.zeros_like(x)
    py = np.zeros_like(x)

    sigma = config.step_dual
    tau = config.step_primal
    floor = 1e-30
    history: list[tuple[int, float, float]] = []
    iters_used = config.max_iters
    converged = False

    for k in range(1, config.max_iters + 1):
        gx, gy = _grad_arrays(x_bar)
        px_new = px + sigma * gx
        py_new = py + sigma * gy
        mag = np.sqrt(px_new * px_new + py_new * py_new)
        np.maximum(mag, 1.0, out=mag)
        px_new /= mag
        py_new /= mag
        dual_change = float(np.sqrt(np.sum((px_new - px) ** 2 + (py_new - py) ** 2)))
        dual_norm = max(float(np.sqrt(np.sum(px * px + py * py))), floor)
        px, py = px_new, py_new

        x_new = x + tau * _div_arrays(px, py)
        spec = _dct2(x_new)
        spec[rows, cols] = meas.values
        x_new = _idct2(spec)
        if not np.all(np.isfinite(x_new)):
            raise SolverFailure(k)

        primal_change = float(np.linalg.norm(x_new - x))
        primal_norm = max(float(np.linalg.norm(x)), floor)
        x_bar = 2.0 * x_new - x
        x = x_new

        rel_primal = primal_change / primal_norm
        if k % config.log_every == 0:
            history.append((k, rel_primal, _tv_value(x)))
        if rel_primal < config.tol and dual_change / dual_norm < config.tol:
            iters_used = k
            converged = True
            break

    final_spec = _dct2(x)
    residual = float(np.max(np.abs(final_spec[rows, cols] - meas.values)))
    return ReconstructionResult(
        image=ImageMatrix(x, source_len=meas.source_len),
        iters_used=iters_used,
        final_tv=_tv_value(x),
        constraint_residual=residual,
        converged=converged,
        history=tuple(history),
    )


def load_solver_config(path: str | Path) -> SolverConfig:
    """Read a config from JSON or from ``key = value`` lines.

    Recognized keys: max_iters, tol, step_primal, step_dual, log_every.
    """
    text = Path(path).read_text()
    fields: dict[str, str] = {}
    try:
        obj = json.loads(text)
        if not isinstance(obj, dict):
            raise ValueError(f"{path}: config JSON must be an object")
        fields = {str(k): str(v) for k, v in obj.items()}
    except json.JSONDecodeError:
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            sep = "=" if "=" in line else (":" if ":" in line else None)
            if sep is None:
                raise ValueError(f"{path}: cannot parse config line {raw!r}")
            key, value = line.split(sep, 1)
            fields[key.strip()] = value.strip()
    known = {"max_iters", "tol", "step_primal", "step_dual", "log_every"}
    unknown = set(fields) - known
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
    kwargs: dict[str, float | int] = {}
    for key in ("max_iters", "log_every"):
        if key in fields:
            kwargs[key] = int(fields[key])
    for key in ("tol", "step_primal", "step_dual"):
        if key in fields:
            kwargs[key] = float(fields[key])
    return SolverConfig(**kwargs)
