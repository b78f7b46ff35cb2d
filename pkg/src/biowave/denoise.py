"""Multilevel DWT analysis/synthesis and the three-phase denoising pipeline.

Decompose -> threshold the detail coefficients -> reconstruct. Boundary
handling is half-point symmetric extension throughout, which makes the
round trip exact (to float precision) at the cost of a few redundant
boundary coefficients per level.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .core import Signal
from .errors import (
    EmptyCoefficients,
    EmptySpace,
    IdenticalSignals,
    InsufficientLevels,
    LengthMismatch,
    LevelOutOfRange,
    NegativeThreshold,
    ShapeMismatch,
    TooShort,
)
from .wavelets import WaveletSpec, get_wavelet

THRESHOLD_RULES = ("rigrsure", "sqtwolog", "heursure", "minimax")
RESCALE_MODES = ("one", "sln", "mln")


@dataclass(frozen=True)
class MultilevelDecomposition:
    """Approximation at the deepest level plus per-level details.

    ``details[i]`` holds level i+1 (finest first), matching the usual
    cD_1 .. cD_L numbering. ``orig_len`` lets the synthesis cascade crop
    each level back to the exact input length.
    """

    wavelet: WaveletSpec
    levels: int
    approx: np.ndarray
    details: list[np.ndarray]
    orig_len: int
    boundary: str = "symmetric"

    def detail(self, level: int) -> np.ndarray:
        """Detail coefficients cD_level (1-based, 1 = finest)."""
        if not 1 <= level <= self.levels:
            raise InsufficientLevels(f"level {level} not in 1..{self.levels}")
        return self.details[level - 1]

    def replace_details(self, new_details: list[np.ndarray]) -> "MultilevelDecomposition":
        return MultilevelDecomposition(
            wavelet=self.wavelet,
            levels=self.levels,
            approx=self.approx,
            details=[np.asarray(d, dtype=float) for d in new_details],
            orig_len=self.orig_len,
            boundary=self.boundary,
        )

    def to_json(self) -> str:
        """Full-precision text serialization (used by the CLI inspect command)."""
        payload = {
            "wavelet": self.wavelet.name,
            "levels": self.levels,
            "orig_len": self.orig_len,
            "boundary": self.boundary,
            "approx": [float(v) for v in self.approx],
            "details": [[float(v) for v in d] for d in self.details],
        }
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "MultilevelDecomposition":
        payload = json.loads(text)
        return cls(
            wavelet=get_wavelet(payload["wavelet"]),
            levels=int(payload["levels"]),
            approx=np.array(payload["approx"], dtype=float),
            details=[np.array(d, dtype=float) for d in payload["details"]],
            orig_len=int(payload["orig_len"]),
            boundary=payload.get("boundary", "symmetric"),
        )


@dataclass(frozen=True)
class DenoiseParams:
    """The five knobs of wavelet denoising."""

    wavelet: str = "db6"
    threshold_fn: str = "soft"
    level: int = 3
    rule: str = "sqtwolog"
    rescale: str = "sln"

    def __post_init__(self):
        if self.threshold_fn not in ("soft", "hard"):
            raise ValueError(f"threshold_fn must be soft|hard, got {self.threshold_fn!r}")
        if self.rule not in THRESHOLD_RULES:
            raise ValueError(f"rule must be one of {THRESHOLD_RULES}, got {self.rule!r}")
        if self.rescale not in RESCALE_MODES:
            raise ValueError(f"rescale must be one of {RESCALE_MODES}, got {self.rescale!r}")
        if self.level < 1:
            raise LevelOutOfRange(f"level must be >= 1, got {self.level}")


def coeff_len(n: int, nw: int) -> int:
    """Per-band output length of one analysis step under symmetric extension."""
    return (n + nw - 1) // 2


def dwt_single(x, w: WaveletSpec):
    """One analysis step: symmetric extension, filter, downsample by 2.

    Returns (approximation, detail) coefficient arrays.
    """
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        raise TooShort("need at least 2 samples for one DWT step")
    ext = np.pad(x, w.nw - 1, mode="symmetric")
    ca = np.correlate(ext, w.dec_lo, mode="valid")[1::2]
    cd = np.correlate(ext, w.dec_hi, mode="valid")[1::2]
    return ca, cd


def idwt_single(ca, cd, w: WaveletSpec, out_len: int):
    """One synthesis step: upsample by 2, filter with rec_lo/rec_hi, sum, crop."""
    ca = np.asarray(ca, dtype=float)
    cd = np.asarray(cd, dtype=float)
    if ca.shape != cd.shape:
        raise ShapeMismatch(f"cA length {ca.size} != cD length {cd.size}")
    up_a = np.zeros(2 * ca.size)
    up_a[::2] = ca
    up_d = np.zeros(2 * cd.size)
    up_d[::2] = cd
    pad = w.nw - 1
    rec = (np.correlate(np.pad(up_a, pad), w.rec_lo, mode="valid")
           + np.correlate(np.pad(up_d, pad), w.rec_hi, mode="valid"))
    start = w.nw - 2
    if start + out_len > rec.size:
        raise ShapeMismatch(
            f"cannot reconstruct {out_len} samples from {ca.size} coefficients")
    return rec[start:start + out_len]


def max_level(n: int, nw: int) -> int:
    """Recommended decomposition depth: round(log2(N/nw - 1)), clamped at 0."""
    if n < 1 or nw < 2:
        raise ValueError("need n >= 1 and nw >= 2")
    arg = n / nw - 1
    if arg <= 1:
        return 0
    return int(math.floor(math.log2(arg) + 0.5))


def _level_cap(n: int) -> int:
    """Hard validity bound on the decomposition depth (dyadic in N)."""
    return max(1, int(math.floor(math.log2(n))))


def wavedec(s, wavelet, level: int) -> MultilevelDecomposition:
    """Multilevel analysis: cascade dwt_single on successive approximations.

    Accepts a Signal or a plain sample array. Levels are validated against
    the dyadic cap floor(log2(N)); max_level() gives the recommended depth.
    """
    x = s.samples if isinstance(s, Signal) else np.asarray(s, dtype=float)
    w = get_wavelet(wavelet) if isinstance(wavelet, str) else wavelet
    n = x.size
    cap = _level_cap(n)
    if not 1 <= level <= cap:
        raise LevelOutOfRange(f"level {level} not in 1..{cap} for N={n}")
    details = []
    approx = x
    for _ in range(level):
        approx, det = dwt_single(approx, w)
        details.append(det)
    return MultilevelDecomposition(
        wavelet=w, levels=level, approx=approx, details=details, orig_len=n)


def waverec(d: MultilevelDecomposition) -> np.ndarray:
    """Synthesis cascade back to orig_len samples.

    Raises ShapeMismatch if the coefficient lengths are inconsistent with
    the recorded original length.
    """
    lengths = [d.orig_len]
    for _ in range(d.levels):
        lengths.append(coeff_len(lengths[-1], d.wavelet.nw))
    if d.approx.size != lengths[-1]:
        raise ShapeMismatch(
            f"approx length {d.approx.size}, expected {lengths[-1]}")
    for i, det in enumerate(d.details):
        if det.size != lengths[i + 1]:
            raise ShapeMismatch(
                f"cD_{i + 1} length {det.size}, expected {lengths[i + 1]}")
    x = d.approx
    for lev in range(d.levels, 0, -1):
        x = idwt_single(x, d.details[lev - 1], d.wavelet, lengths[lev - 1])
    return x


def apply_threshold(coeffs, t: float, fn: str = "soft") -> np.ndarray:
    """Soft (shrink-and-kill) or hard (keep-or-kill) thresholding."""
    if t < 0:
        raise NegativeThreshold(f"threshold must be >= 0, got {t}")
    c = np.asarray(coeffs, dtype=float)
    if fn == "soft":
        return np.sign(c) * np.maximum(np.abs(c) - t, 0.0)
    if fn == "hard":
        return c * (np.abs(c) > t)
    raise ValueError(f"fn must be 'soft' or 'hard', got {fn!r}")


def _sure_threshold(c: np.ndarray) -> float:
    """Exact SURE-minimizing threshold over the candidate set {|c_(k)|}."""
    m = c.size
    sq = np.sort(c ** 2)
    csum = np.cumsum(sq)
    k = np.arange(1, m + 1)
    risks = (m - 2 * k + csum + (m - k) * sq) / m
    return float(np.sqrt(sq[int(np.argmin(risks))]))


def threshold_value(coeffs, rule: str, sigma: float = 1.0) -> float:
    """Threshold for one coefficient band under the selected rule.

    sqtwolog is the universal threshold sigma*sqrt(2 ln M); rigrsure
    minimizes Stein's unbiased risk estimate; heursure picks between them
    by a sparsity test; minimax uses the piecewise formula (0 for M <= 32).
    """
    c = np.asarray(coeffs, dtype=float)
    m = c.size
    if m == 0:
        raise EmptyCoefficients("cannot select a threshold from no coefficients")
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return 0.0
    cn = c / sigma
    if rule == "sqtwolog":
        t = math.sqrt(2.0 * math.log(m))
    elif rule == "rigrsure":
        t = _sure_threshold(cn)
    elif rule == "heursure":
        universal = math.sqrt(2.0 * math.log(m))
        sparsity = (float(np.sum(cn ** 2)) - m) / m
        crit = math.log(m) ** 1.5 / math.sqrt(m)
        t = universal if sparsity <= crit else min(_sure_threshold(cn), universal)
    elif rule == "minimax":
        t = 0.3936 + 0.1829 * math.log2(m) if m > 32 else 0.0
    else:
        raise ValueError(f"unknown rule {rule!r}")
    return sigma * t


def noise_sigma(d: MultilevelDecomposition, rescale: str = "sln") -> list[float]:
    """Per-level noise scale for the detail bands.

    'one' skips scaling, 'sln' uses the finest level's MAD estimate for all
    levels, 'mln' estimates each level separately (MAD / 0.6745).
    """
    def mad_sigma(c):
        return float(np.median(np.abs(c))) / 0.6745

    if rescale == "one":
        return [1.0] * d.levels
    if rescale == "sln":
        return [mad_sigma(d.details[0])] * d.levels
    if rescale == "mln":
        return [mad_sigma(c) for c in d.details]
    raise ValueError(f"rescale must be one of {RESCALE_MODES}, got {rescale!r}")


def denoise(s: Signal, p: DenoiseParams) -> Signal:
    """Three-phase wavelet denoising: decompose, threshold details, rebuild.

    The approximation band passes through untouched; each detail band gets
    its own threshold (rule x noise scale). Output length equals input.
    """
    dec = wavedec(s, p.wavelet, p.level)
    sigmas = noise_sigma(dec, p.rescale)
    new_details = [
        apply_threshold(det, threshold_value(det, p.rule, sig), p.threshold_fn)
        for det, sig in zip(dec.details, sigmas)
    ]
    rec = waverec(dec.replace_details(new_details))
    return s.with_samples(rec) if isinstance(s, Signal) else rec


def snr(x, xhat) -> float:
    """Signal-to-noise ratio in dB: 10 log10(sum x^2 / sum (x - xhat)^2)."""
    x = np.asarray(x, dtype=float)
    xhat = np.asarray(xhat, dtype=float)
    if x.shape != xhat.shape:
        raise LengthMismatch(f"lengths {x.size} vs {xhat.size}")
    num = float(np.sum(x ** 2))
    if num == 0.0:
        raise ValueError("reference signal is identically zero")
    den = float(np.sum((x - xhat) ** 2))
    if den == 0.0:
        raise IdenticalSignals("estimate equals reference; SNR is unbounded")
    return 10.0 * math.log10(num / den)


def mse(x, xhat) -> float:
    x = np.asarray(x, dtype=float)
    xhat = np.asarray(xhat, dtype=float)
    if x.shape != xhat.shape:
        raise LengthMismatch(f"lengths {x.size} vs {xhat.size}")
    return float(np.mean((x - xhat) ** 2))


EEG_BANDS = {"alpha": 7, "beta": 6}


def extract_band(d: MultilevelDecomposition, band: str) -> np.ndarray:
    """EEG band via a fixed detail level: alpha -> cD_7, beta -> cD_6."""
    if band not in EEG_BANDS:
        raise ValueError(f"band must be one of {sorted(EEG_BANDS)}, got {band!r}")
    level = EEG_BANDS[band]
    if d.levels < level:
        raise InsufficientLevels(
            f"{band} needs a level-{level} decomposition, got {d.levels}")
    return d.detail(level)


def grid_search_params(clean: Signal, noisy: Signal, space) -> tuple[DenoiseParams, float]:
    """Exhaustive denoising-parameter search by MSE against a clean reference.

    Ties break toward the earliest candidate in the given order.
    """
    candidates = list(space)
    if not candidates:
        raise EmptySpace("empty parameter space")
    if len(clean) != len(noisy):
        raise LengthMismatch(f"lengths {len(clean)} vs {len(noisy)}")
    best_p, best_mse = None, math.inf
    for p in candidates:
        err = mse(clean.samples, denoise(noisy, p).samples)
        if err < best_mse:
            best_p, best_mse = p, err
    return best_p, best_mse
