"""1D-to-2D encoders: Gramian angular fields, recurrence plots, Markov
transition fields, channel fusion and grayscale image export."""

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DegenerateData,
    NonPositiveEpsilon,
    NonSquareChannel,
    NotNormalized,
    TooFewSamples,
)

IMAGE_KINDS = ("gasf", "gadf", "rp_raw", "rp_binary", "mtf")


@dataclass(frozen=True)
class PolarSeries:
    """Angles arccos(x_i) in [0, pi] and radii i/N in (0, 1]."""

    phi: np.ndarray
    r: np.ndarray


@dataclass(frozen=True)
class EncodedImage:
    """Square matrix produced by one of the encoders."""

    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in IMAGE_KINDS:
            raise ValueError(f"kind must be one of {IMAGE_KINDS}, got {self.kind!r}")
        if self.values.ndim != 2 or self.values.shape[0] != self.values.shape[1]:
            raise NonSquareChannel(f"encoded image must be square, got {self.values.shape}")

    @property
    def size(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class QuantileBinning:
    """Q quantile bins: Q-1 edges plus a 1-based bin index per sample."""

    q: int
    edges: np.ndarray
    assignment: np.ndarray


@dataclass(frozen=True)
class FusedImage:
    """Three equally sized encoded channels stacked as (gaf, rp, mtf)."""

    channels: tuple[EncodedImage, EncodedImage, EncodedImage]

    def __post_init__(self):
        sizes = {c.size for c in self.channels}
        if len(sizes) != 1:
            raise NonSquareChannel(f"channel sizes differ: {sizes}")

    @property
    def size(self) -> int:
        return self.channels[0].size

    def flatten(self) -> np.ndarray:
        """Channel-concatenated pixel vector (gaf, rp, mtf order)."""
        return np.concatenate([c.values.ravel() for c in self.channels])


def _check_normalized(x: np.ndarray, slack: float = 1e-12) -> np.ndarray:
    if np.any(np.abs(x) > 1.0 + slack):
        worst = float(np.max(np.abs(x)))
        raise NotNormalized(f"samples must lie in [-1, 1], max |x| = {worst}")
    return np.clip(x, -1.0, 1.0)


def to_polar(x) -> PolarSeries:
    """Polar encoding of a normalized series: angle arccos(x_i), radius i/N."""
    x = _check_normalized(np.asarray(x, dtype=float))
    n = x.size
    return PolarSeries(phi=np.arccos(x), r=np.arange(1, n + 1) / n)


def gaf(x, kind: str = "gasf") -> EncodedImage:
    """Gramian angular field: cos of angle sums (gasf) or sin of angle
    differences (gadf) over all sample pairs."""
    phi = to_polar(x).phi
    if kind == "gasf":
        values = np.cos(np.add.outer(phi, phi))
    elif kind == "gadf":
        values = np.sin(np.subtract.outer(phi, phi))
    else:
        raise ValueError(f"kind must be 'gasf' or 'gadf', got {kind!r}")
    return EncodedImage(values, kind=kind)


def recurrence_plot(x, eps: float | None = None) -> EncodedImage:
    """Pairwise-distance matrix |x_i - x_j|, optionally binarized.

    With eps given, entries are 1 where the distance is <= eps (so the
    diagonal is 1), else 0.
    """
    x = np.asarray(x, dtype=float)
    dist = np.abs(np.subtract.outer(x, x))
    if eps is None:
        return EncodedImage(dist, kind="rp_raw")
    if eps <= 0:
        raise NonPositiveEpsilon(f"eps must be > 0, got {eps}")
    return EncodedImage((dist <= eps).astype(float), kind="rp_binary")


def quantile_bins(x, q: int) -> QuantileBinning:
    """Assign each sample to one of q empirical quantile bins.

    Edges sit at the k/q quantiles; assignment is lower-inclusive so a value
    equal to an edge falls in the lower bin.
    """
    x = np.asarray(x, dtype=float)
    if q < 2:
        raise ValueError(f"need at least 2 bins, got {q}")
    if x.size < q:
        raise TooFewSamples(f"{x.size} samples cannot fill {q} bins")
    if float(x.min()) == float(x.max()):
        raise DegenerateData("all samples equal; quantile bins are undefined")
    edges = np.quantile(x, np.arange(1, q) / q)
    assignment = np.searchsorted(edges, x, side="left") + 1
    return QuantileBinning(q=q, edges=edges, assignment=assignment)


def transition_matrix(binning: QuantileBinning) -> np.ndarray:
    """Row-normalized first-order transition counts between quantile bins.

    Rows with no outgoing transitions are filled uniformly with 1/Q.
    """
    q = binning.q
    bins0 = binning.assignment - 1
    w = np.zeros((q, q))
    np.add.at(w, (bins0[:-1], bins0[1:]), 1.0)
    sums = w.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore"):
        w = np.where(sums > 0, w / np.where(sums > 0, sums, 1.0), 1.0 / q)
    return w


def mtf(x, q: int) -> EncodedImage:
    """Markov transition field: M[i, j] = W[bin(i), bin(j)]."""
    binning = quantile_bins(x, q)
    w = transition_matrix(binning)
    bins0 = binning.assignment - 1
    return EncodedImage(w[np.ix_(bins0, bins0)], kind="mtf")


def _pool(values: np.ndarray, size: int) -> np.ndarray:
    """Resize a square matrix by mean-pooling over an even partition."""
    n = values.shape[0]
    if size == n:
        return values.copy()
    bounds = [(i * n) // size for i in range(size + 1)]
    out = np.empty((size, size))
    for i in range(size):
        r0, r1 = bounds[i], max(bounds[i + 1], bounds[i] + 1)
        for j in range(size):
            c0, c1 = bounds[j], max(bounds[j + 1], bounds[j] + 1)
            out[i, j] = values[r0:r1, c0:c1].mean()
    return out


def fuse(gaf_img: EncodedImage, rp_img: EncodedImage, mtf_img: EncodedImage,
         size: int) -> FusedImage:
    """Stack (gaf, rp, mtf) into a 3-channel image at a common size.

    Each channel is rescaled by block mean-pooling, which preserves channel
    means whenever the target size divides the source size.
    """
    if size < 1:
        raise ValueError(f"target size must be >= 1, got {size}")
    pooled = []
    for img in (gaf_img, rp_img, mtf_img):
        pooled.append(EncodedImage(_pool(img.values, size), kind=img.kind))
    return FusedImage(channels=tuple(pooled))


def _to_gray(values: np.ndarray) -> np.ndarray:
    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        return np.full(values.shape, 128, dtype=np.uint8)
    return np.rint((values - lo) / (hi - lo) * 255.0).astype(np.uint8)


def _gray_panel(m) -> np.ndarray:
    """8-bit grayscale pixels for a matrix-like input.

    FusedImage becomes three side-by-side panels (gaf, rp, mtf), each
    normalized independently.
    """
    if isinstance(m, FusedImage):
        return np.hstack([_to_gray(c.values) for c in m.channels])
    values = m.values if hasattr(m, "values") else np.asarray(m, dtype=float)
    if values.size == 0:
        raise ValueError("cannot export an empty matrix")
    return _to_gray(np.real_if_close(values).astype(float))


def export_image(m, path, mapping: str = "linear_gray", png: bool = False) -> Path:
    """Write a matrix, encoded image, map or fused image as an 8-bit image.

    The canonical format is binary PGM (P5) with min -> 0, max -> 255 and a
    constant matrix mapping to 128; ``png=True`` additionally writes a PNG
    with identical pixel values next to it. Files are written atomically.
    """
    if mapping != "linear_gray":
        raise ValueError(f"unknown mapping {mapping!r}")
    pixels = _gray_panel(m)
    path = Path(path)
    header = f"P5\n{pixels.shape[1]} {pixels.shape[0]}\n255\n".encode("ascii")
    _atomic_write(path, header + pixels.tobytes())
    if png:
        from PIL import Image

        png_path = path.with_suffix(".png")
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".png.tmp")
        os.close(fd)
        Image.fromarray(pixels, mode="L").save(tmp, format="PNG")
        os.replace(tmp, png_path)
    return path


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
