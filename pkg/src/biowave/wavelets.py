"""Orthogonal wavelet filter bank registry.

Each wavelet ships its four analysis/synthesis filters derived from a single
scaling (low-pass) filter ``dec_lo`` with sum sqrt(2) and unit energy:

    dec_hi[n] = (-1)^n * dec_lo[nw-1-n]      (alternating flip)
    rec_lo    = reverse(dec_lo)
    rec_hi    = reverse(dec_hi)

The tables are compiled-in constants; the invariant tests pin them down
(QMF relations, orthonormality, vanishing moments, perfect reconstruction).
"""

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveScale, UnknownWavelet

# Scaling filters, low-pass analysis convention, sum = sqrt(2).
# dbN has N vanishing moments and 2N taps; symN is the least-asymmetric
# variant of the same order (sym2/sym3 coincide with db2/db3).
_SCALING_FILTERS: dict[str, tuple[float, ...]] = {
    "haar": (
        0.7071067811865476, 0.7071067811865476,
    ),
    "db2": (
        -0.12940952255092145, 0.22414386804185735, 0.836516303737469,
        0.48296291314469025,
    ),
    "db3": (
        0.035226291882100656, -0.08544127388224149, -0.13501102001039084,
        0.4598775021193313, 0.8068915093133388, 0.3326705529509569,
    ),
    "db4": (
        -0.010597401784997278, 0.032883011666982945, 0.030841381835986965,
        -0.18703481171888114, -0.02798376941698385, 0.6308807679295904,
        0.7148465705525415, 0.23037781330885523,
    ),
    "db5": (
        0.003335725285001549, -0.012580751999015526, -0.006241490213011705,
        0.07757149384006515, -0.03224486958502952, -0.24229488706619015,
        0.13842814590110342, 0.7243085284385744, 0.6038292697974729,
        0.160102397974125,
    ),
    "db6": (
        -0.00107730108499558, 0.004777257511010651, 0.0005538422009938016,
        -0.031582039318031156, 0.02752286553001629, 0.09750160558707936,
        -0.12976686756709563, -0.22626469396516913, 0.3152503517092432,
        0.7511339080215775, 0.4946238903983854, 0.11154074335008017,
    ),
    "db7": (
        0.0003537138000010399, -0.0018016407039998328, 0.00042957797300470274,
        0.012550998556013784, -0.01657454163101562, -0.03802993693503463,
        0.0806126091510659, 0.07130921926705004, -0.22403618499416572,
        -0.14390600392910627, 0.4697822874053586, 0.7291320908465551,
        0.39653931948230575, 0.07785205408506236,
    ),
    "db8": (
        -0.00011747678400228192, 0.0006754494059985568, -0.0003917403729959771,
        -0.00487035299301066, 0.008746094047015655, 0.013981027917015516,
        -0.04408825393106472, -0.01736930100202211, 0.128747426620186,
        0.00047248457399797254, -0.2840155429624281, -0.015829105256023893,
        0.5853546836548691, 0.6756307362980128, 0.3128715909144659,
        0.05441584224308161,
    ),
    "db9": (
        3.9347319995026124e-05, -0.0002519631889981789, 0.00023038576399541288,
        0.0018476468829611268, -0.004281503681904723, -0.004723204757894831,
        0.022361662123515244, 0.00025094711499193845, -0.06763282905952399,
        0.030725681478322865, 0.14854074933476008, -0.09684078322087904,
        -0.29327378327258685, 0.13319738582208895, 0.6572880780366389,
        0.6048231236767786, 0.24383467463766728, 0.03807794736316728,
    ),
    "db10": (
        -1.326420300235487e-05, 9.358867000108985e-05, -0.0001164668549943862,
        -0.0006858566950046825, 0.00199240529499085, 0.0013953517469940798,
        -0.010733175482979604, 0.0036065535669883944, 0.03321267405893324,
        -0.02945753682194567, -0.07139414716586077, 0.09305736460380659,
        0.12736934033574265, -0.19594627437659665, -0.24984642432648865,
        0.2811723436604265, 0.6884590394525921, 0.5272011889309198,
        0.18817680007762133, 0.026670057900950818,
    ),
    "sym2": (
        -0.12940952255092145, 0.22414386804185735, 0.836516303737469,
        0.48296291314469025,
    ),
    "sym3": (
        0.035226291882100656, -0.08544127388224149, -0.13501102001039084,
        0.4598775021193313, 0.8068915093133388, 0.3326705529509569,
    ),
    "sym4": (
        -0.07576571478927333, -0.02963552764599851, 0.49761866763201545,
        0.8037387518059161, 0.29785779560527736, -0.09921954357684722,
        -0.012603967262037833, 0.0322231006040427,
    ),
    "sym5": (
        0.027333068345077982, 0.029519490925774643, -0.039134249302383094,
        0.1993975339773936, 0.7234076904024206, 0.6339789634582119,
        0.01660210576452232, -0.17532808990845047, -0.021101834024758855,
        0.019538882735286728,
    ),
    "sym6": (
        0.015404109327027373, 0.0034907120842174702, -0.11799011114819057,
        -0.048311742585633, 0.4910559419267466, 0.787641141030194,
        0.3379294217276218, -0.07263752278646252, -0.021060292512300564,
        0.04472490177066578, 0.0017677118642428036, -0.007800708325034148,
    ),
    "sym7": (
        0.002681814568257878, -0.0010473848886829163, -0.01263630340325193,
        0.03051551316596357, 0.0678926935013727, -0.049552834937127255,
        0.017441255086855827, 0.5361019170917628, 0.767764317003164,
        0.2886296317515146, -0.14004724044296152, -0.10780823770381774,
        0.004010244871533663, 0.010268176708511255,
    ),
    "sym8": (
        -0.0033824159510061256, -0.0005421323317911481, 0.03169508781149298,
        0.007607487324917605, -0.1432942383508097, -0.061273359067658524,
        0.4813596512583722, 0.7771857517005235, 0.3644418948353314,
        -0.05194583810770904, -0.027219029917056003, 0.049137179673607506,
        0.003808752013890615, -0.01495225833704823, -0.0003029205147213668,
        0.0018899503327594609,
    ),
}


@dataclass(frozen=True, eq=False)
class WaveletSpec:
    """Named wavelet with its four decomposition/reconstruction filters."""

    name: str
    dec_lo: np.ndarray
    dec_hi: np.ndarray
    rec_lo: np.ndarray
    rec_hi: np.ndarray
    family: str = "orthogonal"

    @property
    def nw(self) -> int:
        """Filter length in taps (equal for all four filters)."""
        return len(self.dec_lo)


_SPECS: dict[str, WaveletSpec] = {}
_CENTER_FREQ: dict[tuple[str, int], float] = {}


def wavelet_names() -> list[str]:
    """Names accepted by get_wavelet, in registry order."""
    return list(_SCALING_FILTERS)


def get_wavelet(name: str) -> WaveletSpec:
    """Look up a wavelet by name (e.g. 'haar', 'db6', 'sym4').

    Raises UnknownWavelet for names outside the shipped registry.
    """
    spec = _SPECS.get(name)
    if spec is not None:
        return spec
    if name not in _SCALING_FILTERS:
        raise UnknownWavelet(f"{name!r} (known: {', '.join(_SCALING_FILTERS)})")
    dec_lo = np.array(_SCALING_FILTERS[name])
    nw = len(dec_lo)
    dec_hi = np.array([(-1) ** n * dec_lo[nw - 1 - n] for n in range(nw)])
    spec = WaveletSpec(
        name=name,
        dec_lo=dec_lo,
        dec_hi=dec_hi,
        rec_lo=dec_lo[::-1].copy(),
        rec_hi=dec_hi[::-1].copy(),
    )
    for f in (spec.dec_lo, spec.dec_hi, spec.rec_lo, spec.rec_hi):
        f.flags.writeable = False
    _SPECS[name] = spec
    return spec


def _cascade_wavelet(w: WaveletSpec, depth: int) -> np.ndarray:
    """Sample the reconstruction wavelet on a dyadic grid of step 2**-depth.

    One high-pass synthesis step followed by depth-1 low-pass refinements;
    output is padded to (nw-1)*2**depth + 1 points spanning [0, nw-1].
    """
    c = np.array([1.0])
    for step in range(depth):
        filt = w.rec_hi if step == 0 else w.rec_lo
        up = np.zeros(2 * len(c) - 1)
        up[::2] = c
        c = np.convolve(up, filt) * np.sqrt(2.0)
    target = (w.nw - 1) * 2 ** depth + 1
    return np.concatenate([c, np.zeros(target - len(c))])


def center_frequency(w: WaveletSpec, depth: int = 8) -> float:
    """Dominant frequency of the wavelet in cycles per sample at scale 1.

    Estimated as the peak-magnitude bin of the spectrum of the cascaded
    reconstruction wavelet; deterministic for a fixed refinement depth.
    """
    key = (w.name, depth)
    if key in _CENTER_FREQ:
        return _CENTER_FREQ[key]
    psi = _cascade_wavelet(w, depth)
    spectrum = np.abs(np.fft.fft(psi))
    index = int(np.argmax(spectrum[1:])) + 1
    if index > len(psi) // 2:
        index = len(psi) - index
    fc = index * 2.0 ** depth / len(psi)
    _CENTER_FREQ[key] = fc
    return fc


def pseudo_frequency(w: WaveletSpec, scale: float, fs: float = 1.0) -> float:
    """Frequency in Hz associated with a wavelet scale: fc * fs / scale.

    With the default fs=1 this is the normalized (cycles/sample) form.
    """
    if scale <= 0:
        raise NonPositiveScale(f"scale must be > 0, got {scale}")
    return center_frequency(w) * fs / scale
