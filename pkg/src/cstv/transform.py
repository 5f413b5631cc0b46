"""Orthonormal 2D DCT-II, its inverse, and zig-zag coefficient ordering.

The transform is computed as separable matrix products against a cached
cosine basis.  Orthonormal scaling makes the transform an isometry, so
overwriting coefficients is an exact Euclidean projection in image space.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .signal import ImageMatrix, _frozen

Array = np.ndarray


@lru_cache(maxsize=None)
def _dct_basis(n: int) -> Array:
    """Orthonormal DCT-II basis matrix C with C @ C.T == I."""
    k = np.arange(n, dtype=np.float64)[:, None]
    i = np.arange(n, dtype=np.float64)[None, :]
    basis = np.sqrt(2.0 / n) * np.cos(np.pi * (2.0 * i + 1.0) * k / (2.0 * n))
    basis[0, :] /= np.sqrt(2.0)
    basis.setflags(write=False)
    return basis


def _dct2(x: Array) -> Array:
    c = _dct_basis(x.shape[0])
    return c @ x @ c.T


def _idct2(y: Array) -> Array:
    c = _dct_basis(y.shape[0])
    return c.T @ y @ c


@dataclass(frozen=True)
class DctSpectrum:
    """2D DCT-II coefficient matrix, with the embedded signal length."""

    coeffs: Array
    source_len: int

    def __post_init__(self) -> None:
        arr = np.asarray(self.coeffs, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("spectrum must be a square 2D matrix")
        if not np.all(np.isfinite(arr)):
            raise ValueError("spectrum entries must be finite")
        n = int(self.source_len)
        if n < 1 or n > arr.size:
            raise ValueError(f"source_len {n} out of range for side {arr.shape[0]}")
        object.__setattr__(self, "coeffs", _frozen(arr))
        object.__setattr__(self, "source_len", n)

    @property
    def side(self) -> int:
        return self.coeffs.shape[0]


@dataclass(frozen=True)
class ZigZagOrder:
    """Bijection rank -> (row, col) along anti-diagonals, JPEG style.

    Even diagonals (row + col even) run bottom-left to top-right, odd ones
    top-right to bottom-left; rank 0 is always (0, 0).
    """

    side: int
    rows: Array
    cols: Array

    def __len__(self) -> int:
        return self.side * self.side

    def positions(self) -> list[tuple[int, int]]:
        return list(zip(self.rows.tolist(), self.cols.tolist()))


@lru_cache(maxsize=None)
def zigzag_order(side: int) -> ZigZagOrder:
    """Enumerate all side^2 positions in zig-zag rank order."""
    if side < 1:
        raise ValueError("side must be >= 1")
    rows = np.empty(side * side, dtype=np.intp)
    cols = np.empty(side * side, dtype=np.intp)
    k = 0
    for s in range(2 * side - 1):
        if s % 2 == 0:
            r, c = min(s, side - 1), s - min(s, side - 1)
            while r >= 0 and c < side:
                rows[k], cols[k] = r, c
                k += 1
                r -= 1
                c += 1
        else:
            c, r = min(s, side - 1), s - min(s, side - 1)
            while c >= 0 and r < side:
                rows[k], cols[k] = r, c
                k += 1
                r += 1
                c -= 1
    rows.setflags(write=False)
    cols.setflags(write=False)
    return ZigZagOrder(side=side, rows=rows, cols=cols)


def dct2_forward(image: ImageMatrix) -> DctSpectrum:
    """Separable orthonormal 2D DCT-II of the image."""
    return DctSpectrum(_dct2(image.values), source_len=image.source_len)


def dct2_inverse(spectrum: DctSpectrum) -> ImageMatrix:
    """Exact inverse of :func:`dct2_forward` up to float round-off."""
    return ImageMatrix(_idct2(spectrum.coeffs), source_len=spectrum.source_len)
