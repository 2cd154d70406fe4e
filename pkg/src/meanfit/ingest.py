"""File ingestion and serialization: value/histogram CSV, report JSON, binary
PGM images, 8x8 block DCT extraction, and histogram construction."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, EmptyDataError, FormatError
from .fitsearch import FitReport, Histogram

__all__ = [
    "CoefficientSet",
    "GrayImage",
    "block_dct8",
    "build_histogram",
    "dct8",
    "format_histogram_csv",
    "idct8",
    "load_histogram_csv",
    "load_pgm",
    "load_values_csv",
    "save_histogram_csv",
    "save_report_json",
]


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale image; pixels are a (height, width) uint8 array."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.uint8)
        if px.shape != (self.height, self.width):
            raise DomainError("pixel array does not match the declared size")
        object.__setattr__(self, "pixels", px)


@dataclass(frozen=True)
class CoefficientSet:
    """Absolute DCT coefficients plus whether DC terms were excluded."""

    values: np.ndarray
    dc_excluded: bool

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).ravel()
        if vals.size == 0 or not np.all(np.isfinite(vals)) or np.any(vals < 0.0):
            raise DomainError("coefficients must be a non-empty set of finite non-negative reals")
        object.__setattr__(self, "values", vals)


def load_values_csv(path) -> tuple[np.ndarray, np.ndarray | None]:
    """Read `value` or `value,weight` lines; formats must not be mixed.

    Returns ``(values, weights)`` with ``weights`` None for the one-column
    format.
    """
    values = []
    weights = []
    ncols = None
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if ncols is None:
                ncols = len(parts)
                if ncols not in (1, 2):
                    raise FormatError(f"{path}: line {lineno}: expected 1 or 2 columns")
            if len(parts) != ncols:
                raise FormatError(f"{path}: line {lineno}: mixed column counts")
            try:
                fields = [float(p) for p in parts]
            except ValueError:
                raise FormatError(f"{path}: line {lineno}: not a number") from None
            if not math.isfinite(fields[0]) or fields[0] < 0.0:
                raise FormatError(f"{path}: line {lineno}: values must be finite and non-negative")
            values.append(fields[0])
            if ncols == 2:
                if not math.isfinite(fields[1]) or fields[1] <= 0.0:
                    raise FormatError(
                        f"{path}: line {lineno}: weights must be finite and positive"
                    )
                weights.append(fields[1])
    if not values:
        raise EmptyDataError(f"{path}: no data rows")
    return np.asarray(values), (np.asarray(weights) if ncols == 2 else None)


def load_histogram_csv(path) -> Histogram:
    """Read `bin_left,bin_right,count` rows with contiguous increasing bins."""
    edges = []
    counts = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise FormatError(f"{path}: line {lineno}: expected bin_left,bin_right,count")
            try:
                left, right, count = (float(p) for p in parts)
            except ValueError:
                raise FormatError(f"{path}: line {lineno}: not a number") from None
            if not (math.isfinite(left) and math.isfinite(right) and right > left):
                raise FormatError(f"{path}: line {lineno}: bin edges must increase")
            if not math.isfinite(count) or count < 0.0:
                raise FormatError(f"{path}: line {lineno}: counts must be non-negative")
            if not edges:
                edges.extend((left, right))
            else:
                if left != edges[-1]:
                    raise FormatError(
                        f"{path}: line {lineno}: bins must be contiguous "
                        f"(expected left edge {edges[-1]!r}, got {left!r})"
                    )
                edges.append(right)
            counts.append(count)
    if not counts:
        raise EmptyDataError(f"{path}: no histogram rows")
    return Histogram(edges=np.asarray(edges), counts=np.asarray(counts))


def format_histogram_csv(hist: Histogram) -> str:
    lines = [
        f"{float(left)!r},{float(right)!r},{float(count)!r}"
        for left, right, count in zip(hist.edges[:-1], hist.edges[1:], hist.counts)
    ]
    return "\n".join(lines) + "\n"


def save_histogram_csv(hist: Histogram, path) -> None:
    Path(path).write_text(format_histogram_csv(hist), encoding="ascii")


def save_report_json(report: FitReport, path) -> None:
    """Serialize a fit report as a flat JSON object (missing sweeps are null)."""
    with open(path, "w", encoding="ascii") as fh:
        json.dump(report.to_dict(), fh, indent=2)
        fh.write("\n")


_WHITESPACE = b" \t\r\n\x0b\x0c"


def _pgm_token(buf: bytes, pos: int) -> tuple[bytes, int]:
    n = len(buf)
    while pos < n:
        if buf[pos] in _WHITESPACE:
            pos += 1
        elif buf[pos] == 0x23:  # '#' comment runs to end of line
            while pos < n and buf[pos] not in b"\r\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and buf[pos] not in _WHITESPACE:
        pos += 1
    if start == pos:
        raise FormatError("truncated PGM header")
    return buf[start:pos], pos


def load_pgm(path) -> GrayImage:
    """Read a binary PGM ("P5") with maxval <= 255; header comments allowed."""
    buf = Path(path).read_bytes()
    magic, pos = _pgm_token(buf, 0)
    if magic != b"P5":
        raise FormatError(f"{path}: unsupported PGM magic {magic!r} (binary 'P5' required)")
    fields = []
    for _ in range(3):
        token, pos = _pgm_token(buf, pos)
        try:
            fields.append(int(token))
        except ValueError:
            raise FormatError(f"{path}: bad header token {token!r}") from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError(f"{path}: bad image size {width}x{height}")
    if not 1 <= maxval <= 255:
        raise FormatError(f"{path}: maxval {maxval} outside the supported 1..255")
    if pos >= len(buf) or buf[pos] not in _WHITESPACE:
        raise FormatError(f"{path}: missing whitespace before pixel data")
    pos += 1
    data = buf[pos:pos + width * height]
    if len(data) < width * height:
        raise FormatError(f"{path}: truncated pixel data")
    pixels = np.frombuffer(data, dtype=np.uint8).reshape(height, width)
    return GrayImage(width=width, height=height, pixels=pixels)


def _dct_matrix() -> np.ndarray:
    u = np.arange(8)[:, None]
    x = np.arange(8)[None, :]
    m = np.cos((2 * x + 1) * u * np.pi / 16.0)
    scale = np.full(8, math.sqrt(2.0 / 8.0))
    scale[0] = math.sqrt(1.0 / 8.0)
    return scale[:, None] * m


_DCT8 = _dct_matrix()


def dct8(block) -> np.ndarray:
    """Orthonormal 2-D DCT-II of one 8x8 block.

    The block mean is removed before the transform and its DC contribution
    (8 * mean) is restored afterwards, so constant blocks produce exactly
    zero AC coefficients instead of rounding noise.
    """
    arr = np.asarray(block, dtype=float)
    if arr.shape != (8, 8):
        raise DomainError("dct8 expects an 8x8 block")
    mean = arr.mean()
    out = _DCT8 @ (arr - mean) @ _DCT8.T
    out[0, 0] += 8.0 * mean
    return out


def idct8(coeffs) -> np.ndarray:
    """Inverse of :func:`dct8`."""
    arr = np.asarray(coeffs, dtype=float)
    if arr.shape != (8, 8):
        raise DomainError("idct8 expects an 8x8 block")
    return _DCT8.T @ arr @ _DCT8


def block_dct8(img: GrayImage, exclude_dc: bool = False) -> CoefficientSet:
    """Absolute DCT coefficients of every full 8x8 block of the image.

    Trailing rows/columns that do not fill a block are cropped.  Output order
    is deterministic: blocks in raster order, coefficients in (u, v) raster
    order within each block.
    """
    h8 = (img.height // 8) * 8
    w8 = (img.width // 8) * 8
    if h8 == 0 or w8 == 0:
        raise DomainError("image smaller than one 8x8 block")
    px = img.pixels[:h8, :w8].astype(float)
    blocks = px.reshape(h8 // 8, 8, w8 // 8, 8).transpose(0, 2, 1, 3).reshape(-1, 8, 8)
    means = blocks.mean(axis=(1, 2), keepdims=True)
    spectra = _DCT8 @ (blocks - means) @ _DCT8.T
    spectra[:, 0, 0] += 8.0 * means[:, 0, 0]
    coeffs = np.abs(spectra).reshape(-1, 64)
    if exclude_dc:
        coeffs = coeffs[:, 1:]
    return CoefficientSet(values=coeffs.reshape(-1).copy(), dc_excluded=exclude_dc)


def build_histogram(values, bins: int, value_range=None) -> tuple[Histogram, int]:
    """Equal-width histogram; out-of-range values are clipped into the end bins.

    ``values`` may be a CoefficientSet or any array-like.  Without an explicit
    range, [0, max] is used (widened to [0, 1] when every value is zero).
    Returns the histogram and the number of clipped values.
    """
    if isinstance(values, CoefficientSet):
        vals = values.values
    else:
        vals = np.asarray(values, dtype=float).ravel()
    if vals.size == 0:
        raise EmptyDataError("no values to bin")
    if not np.all(np.isfinite(vals)):
        raise DomainError("values must be finite")
    if int(bins) != bins or bins < 2:
        raise DomainError("need an integer bin count of at least 2")
    if value_range is None:
        lo, hi = 0.0, float(vals.max())
        if hi <= lo:
            hi = lo + 1.0
    else:
        lo, hi = float(value_range[0]), float(value_range[1])
        if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
            raise DomainError("range must satisfy lo < hi")
    clipped = int(np.count_nonzero((vals < lo) | (vals > hi)))
    counts, edges = np.histogram(np.clip(vals, lo, hi), bins=int(bins), range=(lo, hi))
    return Histogram(edges=edges, counts=counts.astype(float)), clipped
