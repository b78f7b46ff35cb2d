"""STFT/spectrogram, CWT scalograms, and wavelet-variance changepoints."""

import math
from dataclasses import dataclass

import numpy as np

from .core import Signal, WindowSpec
from .errors import EmptyScales, NonPositiveScale, TooShort, WindowTooLong, WrongKind

MAP_KINDS = ("stft", "spectrogram", "cwt", "scalogram")
CWT_MOTHERS = ("morlet", "mexican_hat", "gaussian_derivative")


@dataclass(frozen=True)
class TimeFrequencyMap:
    """Matrix over (frequency bins or scales) x (time frames).

    ``freq_axis`` holds Hz per row for Fourier maps and the scale list for
    wavelet maps; ``time_axis`` holds seconds per column.
    """

    values: np.ndarray
    time_axis: np.ndarray
    freq_axis: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise ValueError(f"kind must be one of {MAP_KINDS}, got {self.kind!r}")
        rows, cols = self.values.shape
        if len(self.freq_axis) != rows or len(self.time_axis) != cols:
            raise ValueError(
                f"axis lengths ({len(self.freq_axis)}, {len(self.time_axis)}) "
                f"do not match matrix shape {self.values.shape}")


def stft(s: Signal, window: WindowSpec, hop: int) -> TimeFrequencyMap:
    """Short-time Fourier transform: windowed DFT per frame.

    Frame m covers samples [m*hop, m*hop + window.length); the number of
    frames is floor((N - win) / hop) + 1. Rows are the win DFT bins.
    """
    if hop < 1:
        raise ValueError(f"hop must be >= 1, got {hop}")
    win = window.length
    n = len(s)
    if win > n:
        raise WindowTooLong(f"window {win} exceeds signal length {n}")
    weights = window.weights()
    frames = (n - win) // hop + 1
    values = np.empty((win, frames), dtype=complex)
    for m in range(frames):
        chunk = s.samples[m * hop:m * hop + win]
        values[:, m] = np.fft.fft(chunk * weights)
    time_axis = np.arange(frames) * hop / s.fs
    freq_axis = np.arange(win) * s.fs / win
    return TimeFrequencyMap(values, time_axis, freq_axis, kind="stft")


def spectrogram(m: TimeFrequencyMap) -> TimeFrequencyMap:
    """Squared magnitude of an STFT map."""
    if m.kind != "stft":
        raise WrongKind(f"spectrogram needs an stft map, got {m.kind!r}")
    return TimeFrequencyMap(
        np.abs(m.values) ** 2, m.time_axis, m.freq_axis, kind="spectrogram")


def _mother(name: str):
    """Sampled mother wavelet psi(t) at unit scale."""
    if name == "morlet":
        return lambda t: np.exp(-0.5 * t ** 2) * np.cos(5.0 * t)
    if name == "mexican_hat":
        k = 2.0 / (math.sqrt(3.0) * math.pi ** 0.25)
        return lambda t: k * (1.0 - t ** 2) * np.exp(-0.5 * t ** 2)
    if name == "gaussian_derivative":
        return lambda t: -t * np.exp(-0.5 * t ** 2)
    raise ValueError(f"mother must be one of {CWT_MOTHERS}, got {name!r}")


def mother_center_frequency(name: str) -> float:
    """Dominant frequency (cycles per unit time) of a mother wavelet.

    FFT-peak of the finely sampled mother; map a scale to Hz with
    fc * fs / scale.
    """
    psi = _mother(name)
    dt = 1.0 / 64.0
    t = np.arange(-8.0, 8.0 + dt, dt)
    spectrum = np.abs(np.fft.rfft(psi(t)))
    idx = int(np.argmax(spectrum[1:])) + 1
    return idx / (len(t) * dt)


def cwt_scalogram(s: Signal, mother: str, scales) -> TimeFrequencyMap:
    """Scalogram: |CWT| by direct convolution with the dilated mother.

    Row r holds |(1/sqrt(a)) * sum x(t) psi((t - tau)/a)| over all tau for
    a = scales[r]. Support is truncated at 8 standard deviations.
    """
    scales = np.asarray(list(scales), dtype=float)
    if scales.size == 0:
        raise EmptyScales("need at least one scale")
    if np.any(scales <= 0):
        raise NonPositiveScale("all scales must be > 0")
    psi = _mother(mother)
    n = len(s)
    rows = np.empty((scales.size, n))
    for r, a in enumerate(scales):
        half = int(math.ceil(8.0 * a))
        k = np.arange(-half, half + 1)
        kernel = psi(k / a) / math.sqrt(a)
        # correlation at every shift; 'same' keeps the output aligned to x
        rows[r] = np.abs(np.convolve(s.samples, kernel[::-1], mode="same"))
    time_axis = np.arange(n) / s.fs
    return TimeFrequencyMap(rows, time_axis, scales, kind="scalogram")


def _segment_cost(s1, s2, lo: int, hi: int) -> float:
    """Gaussian log-likelihood cost n*ln(variance) for samples [lo, hi)."""
    n = hi - lo
    total = s1[hi] - s1[lo]
    sq = s2[hi] - s2[lo]
    var = max((sq - total * total / n) / n, 1e-12)
    return n * math.log(var)


def _best_split(s1, s2, lo: int, hi: int, min_seg: int):
    best_gain, best_at = -math.inf, -1
    parent = _segment_cost(s1, s2, lo, hi)
    for m in range(lo + min_seg, hi - min_seg + 1):
        gain = parent - _segment_cost(s1, s2, lo, m) - _segment_cost(s1, s2, m, hi)
        if gain > best_gain:
            best_gain, best_at = gain, m
    return best_gain, best_at


def variance_changepoints(coeffs, k_max: int, min_seg: int = 10,
                          penalty: float | None = None) -> list[int]:
    """Variance changepoints by binary segmentation of a coefficient series.

    Recursively splits at the largest two-segment likelihood gain, keeping at
    most ``k_max`` splits whose gain clears the penalty (default 2 ln N,
    calibrated so homogeneous noise stays split-free). Returns sorted indices;
    index i means the variance regime changes between samples i-1 and i.
    """
    x = np.asarray(coeffs, dtype=float)
    n = x.size
    if n < 4:
        raise TooShort(f"need at least 4 samples, got {n}")
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    if k_max == 0:
        return []
    if penalty is None:
        penalty = 2.0 * math.log(n)
    s1 = np.concatenate([[0.0], np.cumsum(x)])
    s2 = np.concatenate([[0.0], np.cumsum(x ** 2)])

    segments = [(0, n)]
    accepted: list[int] = []
    while len(accepted) < k_max:
        best = None
        for lo, hi in segments:
            if hi - lo < 2 * min_seg:
                continue
            gain, at = _best_split(s1, s2, lo, hi, min_seg)
            if at >= 0 and (best is None or gain > best[0]):
                best = (gain, at, (lo, hi))
        if best is None or best[0] <= penalty:
            break
        _, at, (lo, hi) = best
        accepted.append(at)
        segments.remove((lo, hi))
        segments.extend([(lo, at), (at, hi)])
    return sorted(accepted)
