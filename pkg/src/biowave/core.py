"""Signal container plus the shared ingestion/normalization/windowing ops.

A :class:`Signal` is a uniformly sampled 1-D waveform. Everything here is a
pure function: inputs are never mutated and returned signals are new objects.
"""

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from scipy import signal as sps

from .errors import (
    DegenerateRange,
    EmptyRow,
    InvalidFrequency,
    NonNumericCell,
    TooShort,
    WindowTooLong,
)

WINDOW_KINDS = ("rectangular", "hamming", "hann", "blackman", "kaiser")


@dataclass(frozen=True)
class Signal:
    """Uniformly sampled real-valued waveform.

    Attributes:
        samples: amplitude values in instrument units (e.g. uV/mV)
        fs: sampling rate in Hz (> 0)
        id: opaque record identifier
        label: optional class tag
    """

    samples: np.ndarray
    fs: float
    id: str = ""
    label: str | None = None

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("samples must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite (no NaN/Inf)")
        if not self.fs > 0:
            raise ValueError(f"fs must be > 0, got {self.fs}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        """Signal length in seconds."""
        return len(self) / self.fs

    def with_samples(self, samples: np.ndarray, fs: float | None = None) -> "Signal":
        """New signal with replaced samples (id/label carried over)."""
        return replace(self, samples=samples, fs=self.fs if fs is None else fs)


@dataclass(frozen=True)
class WindowSpec:
    """Tapering window: kind + length, with ``beta`` used only by kaiser."""

    kind: str
    length: int
    beta: float = 0.0

    def __post_init__(self):
        if self.kind not in WINDOW_KINDS:
            raise ValueError(f"unknown window kind {self.kind!r}")
        if self.length < 1:
            raise ValueError("window length must be >= 1")
        if self.kind == "kaiser" and self.beta < 0:
            raise ValueError("kaiser beta must be >= 0")

    def weights(self) -> np.ndarray:
        """Symmetric, nonnegative window weights of the requested length."""
        n = self.length
        if self.kind == "rectangular":
            w = np.ones(n)
        elif self.kind == "hamming":
            w = np.hamming(n)
        elif self.kind == "hann":
            w = np.hanning(n)
        elif self.kind == "blackman":
            # endpoints of the classic blackman evaluate to -1.4e-17
            w = np.maximum(np.blackman(n), 0.0)
        else:
            w = np.kaiser(n, self.beta)
        return w


def load_csv(path, fs: float | None = None, label_column: str | None = None) -> list[Signal]:
    """Load one signal per CSV row.

    Format: comma-separated decimal samples, optionally a final label cell
    (enabled by passing any ``label_column`` name), optionally a first header
    line ``# fs=<Hz>``. An explicit ``fs`` argument overrides the header.

    Raises:
        FileNotFoundError: missing file
        NonNumericCell: a sample cell fails to parse
        EmptyRow: a row has no sample cells
        ValueError: no sampling rate available from argument or header
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))
    lines = path.read_text(encoding="utf-8").splitlines()

    header_fs = None
    start = 0
    if lines and lines[0].lstrip().startswith("#"):
        head = lines[0].lstrip("# ").strip()
        if head.startswith("fs="):
            header_fs = float(head[3:])
        start = 1
    rate = fs if fs is not None else header_fs
    if rate is None:
        raise ValueError(f"{path}: no sampling rate given and no '# fs=' header")

    signals = []
    for row_no, line in enumerate(lines[start:], start=start):
        if not line.strip():
            continue
        cells = [c.strip() for c in line.split(",")]
        label = None
        if label_column is not None:
            if len(cells) < 2:
                raise EmptyRow(f"{path}: row {row_no} has no sample cells before the label")
            label = cells[-1]
            cells = cells[:-1]
        if not any(cells):
            raise EmptyRow(f"{path}: row {row_no} is empty")
        values = []
        for col, cell in enumerate(cells):
            try:
                values.append(float(cell))
            except ValueError:
                raise NonNumericCell(row_no, col, cell) from None
        signals.append(Signal(np.array(values), fs=rate, id=f"{path.stem}-{len(signals):04d}", label=label))
    return signals


def save_csv(signals, path, fs_header: bool = True) -> None:
    """Write signals row-per-record in the same format load_csv reads."""
    path = Path(path)
    lines = []
    if fs_header and signals:
        lines.append(f"# fs={signals[0].fs:g}")
    for s in signals:
        row = ",".join(repr(float(v)) for v in s.samples)
        if s.label is not None:
            row += f",{s.label}"
        lines.append(row)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def normalize_minmax(s: Signal, out_range: str = "neg_one_one") -> Signal:
    """Rescale into [-1, 1] (``neg_one_one``) or [0, 1] (``zero_one``).

    The symmetric form is ((x - max) + (x - min)) / (max - min), which pins
    the extremes to -1 and +1 exactly.
    """
    x = s.samples
    lo, hi = float(x.min()), float(x.max())
    if hi == lo:
        raise DegenerateRange(f"constant signal (value {lo}) cannot be normalized")
    if out_range == "neg_one_one":
        y = ((x - hi) + (x - lo)) / (hi - lo)
        y = np.clip(y, -1.0, 1.0)
    elif out_range == "zero_one":
        y = (x - lo) / (hi - lo)
        y = np.clip(y, 0.0, 1.0)
    else:
        raise ValueError(f"unknown range {out_range!r}")
    return s.with_samples(y)


def segment(s: Signal, window_seconds: float, overlap_fraction: float) -> list[Signal]:
    """Split into fixed-width windows with fractional overlap.

    Window k covers samples [k*hop, k*hop + win); a trailing partial window
    is discarded. Number of windows is floor((N - win) / hop) + 1.
    """
    if not 0 <= overlap_fraction < 1:
        raise ValueError("overlap_fraction must be in [0, 1)")
    win = int(round(window_seconds * s.fs))
    if win < 1:
        raise ValueError(f"window of {window_seconds} s is below one sample at fs={s.fs}")
    n = len(s)
    if win > n:
        raise WindowTooLong(f"window {win} samples exceeds signal length {n}")
    hop = max(1, int(round(win * (1.0 - overlap_fraction))))
    count = (n - win) // hop + 1
    out = []
    for k in range(count):
        chunk = s.samples[k * hop:k * hop + win]
        out.append(Signal(chunk, fs=s.fs, id=f"{s.id}/w{k}", label=s.label))
    return out


def resample_by2(s: Signal, direction: str, antialias: bool = False) -> Signal:
    """Halve or double the sampling rate.

    ``down`` keeps even-index samples (optionally low-pass filtering first
    when ``antialias`` is set); ``up`` inserts linearly interpolated midpoints
    and repeats the final sample to reach exactly 2N.
    """
    x = s.samples
    if len(x) < 2:
        raise TooShort("need at least 2 samples to resample")
    if direction == "down":
        if antialias:
            sos = sps.butter(4, 0.5, output="sos")  # cutoff at the new Nyquist
            x = sps.sosfiltfilt(sos, x)
        return s.with_samples(x[::2], fs=s.fs / 2.0)
    if direction == "up":
        n = len(x)
        y = np.empty(2 * n)
        y[0::2] = x
        y[1:-1:2] = 0.5 * (x[:-1] + x[1:])
        y[-1] = x[-1]
        return s.with_samples(y, fs=s.fs * 2.0)
    raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")


def notch_filter(s: Signal, f0: float, q: float = 30.0) -> Signal:
    """Second-order IIR notch removing a narrow band around f0 Hz.

    Unity gain at DC, a null at f0 (>= 40 dB attenuation); used for 50/60 Hz
    power-line interference.
    """
    if q <= 0:
        raise ValueError("quality factor must be > 0")
    if not 0 < f0 < s.fs / 2:
        raise InvalidFrequency(f"notch frequency {f0} Hz outside (0, {s.fs / 2}) at fs={s.fs}")
    b, a = sps.iirnotch(f0, q, fs=s.fs)
    return s.with_samples(sps.lfilter(b, a, s.samples))
