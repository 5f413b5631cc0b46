"""1D signals, their square-image embedding, and the conversions between them.

A length-N0 signal is zero-padded up to the smallest perfect square and
filled into a side x side matrix column by column.  The original length is
carried through so the inverse conversion can strip the padding exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

Array = np.ndarray


class SignalFormatError(ValueError):
    """Raised when a signal file cannot be parsed into finite floats."""


def _frozen(a: Array) -> Array:
    out = np.array(a, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Signal1D:
    """Immutable 1D sample sequence.

    ``original_len`` counts the true samples; any zero padding added later
    for the square embedding is never part of this object.
    """

    samples: Array
    original_len: int = field(default=-1)

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        n = int(self.original_len) if self.original_len != -1 else arr.size
        if n < 1:
            raise ValueError("signal must contain at least one sample")
        if n != arr.size:
            raise ValueError(f"original_len {n} != number of samples {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("signal samples must be finite")
        object.__setattr__(self, "samples", _frozen(arr))
        object.__setattr__(self, "original_len", n)

    def __len__(self) -> int:
        return self.original_len


@dataclass(frozen=True)
class ImageMatrix:
    """Square real matrix holding a column-wise embedded signal.

    ``source_len`` is the pre-padding sample count, kept so the signal can
    be extracted again.  Entries beyond ``source_len`` (in column-major
    order) are zero right after :func:`reshape_to_image` but are free to
    take any value in reconstructed images.
    """

    values: Array
    source_len: int

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("image must be a square 2D matrix")
        if not np.all(np.isfinite(arr)):
            raise ValueError("image entries must be finite")
        n = int(self.source_len)
        if n < 1 or n > arr.size:
            raise ValueError(f"source_len {n} out of range for side {arr.shape[0]}")
        object.__setattr__(self, "values", _frozen(arr))
        object.__setattr__(self, "source_len", n)

    @property
    def side(self) -> int:
        return self.values.shape[0]


def reshape_to_image(signal: Signal1D) -> ImageMatrix:
    """Embed a signal into the smallest square matrix, column by column.

    The side is ceil(sqrt(N0)); positions past the signal end are zero.
    """
    n = signal.original_len
    side = int(np.ceil(np.sqrt(n)))
    padded = np.zeros(side * side, dtype=np.float64)
    padded[:n] = signal.samples
    return ImageMatrix(padded.reshape((side, side), order="F"), source_len=n)


def flatten_to_signal(image: ImageMatrix) -> Signal1D:
    """Inverse of :func:`reshape_to_image`: read column-major, drop padding."""
    flat = image.values.reshape(-1, order="F")[: image.source_len]
    return Signal1D(flat, original_len=image.source_len)


def mean_value(signal: Signal1D) -> float:
    """Arithmetic mean over the original samples (padding never counts)."""
    return float(np.mean(signal.samples))


def load_signal_csv(path: str | Path) -> Signal1D:
    """Read a signal from plain text: one value per line, or one
    comma-separated row.  NaN and infinity tokens are rejected.
    """
    text = Path(path).read_text()
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SignalFormatError(f"{path}: no samples found")
    if len(lines) == 1 and "," in lines[0]:
        tokens = [t.strip() for t in lines[0].split(",") if t.strip()]
    else:
        tokens = lines
    values = np.empty(len(tokens), dtype=np.float64)
    for i, tok in enumerate(tokens):
        try:
            values[i] = float(tok)
        except ValueError as exc:
            raise SignalFormatError(f"{path}: bad token {tok!r}") from exc
    if not np.all(np.isfinite(values)):
        raise SignalFormatError(f"{path}: NaN/Inf samples are not allowed")
    return Signal1D(values)


def save_signal_csv(signal: Signal1D, path: str | Path) -> None:
    """Write one value per line with full float64 round-trip precision."""
    with open(path, "w") as fh:
        for v in signal.samples:
            fh.write(f"{float(v)!r}\n")
