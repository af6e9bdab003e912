"""Filter design, rate conversion, frequency translation, and alignment primitives.

Signals are plain numpy arrays; sample rates and carrier frequencies travel as
explicit arguments, normalized so the symbol rate is 1 (all frequencies are in
multiples of the baud rate B).
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import signal as sig

from .errors import ConfigurationError


class AlignmentAmbiguityWarning(UserWarning):
    """Two correlation lags are within 1% of the peak; the smaller one was used."""


@dataclass(frozen=True)
class RrcSpec:
    """Root-raised-cosine pulse shaper parameters.

    roll_off is the excess-bandwidth factor in [0, 1], span the filter length
    in symbols (the impulse response covers span+ symbol periods), and
    samples_per_symbol the tap rate relative to the baud rate.
    """

    roll_off: float = 0.5
    span: int = 16
    samples_per_symbol: int = 4

    def __post_init__(self):
        if not 0.0 <= self.roll_off <= 1.0:
            raise ConfigurationError(f"rrc roll_off must lie in [0, 1], got {self.roll_off}")
        if self.span < 8:
            raise ConfigurationError(f"rrc span must be >= 8 symbols, got {self.span}")
        if self.samples_per_symbol < 1:
            raise ConfigurationError(f"rrc samples_per_symbol must be >= 1, got {self.samples_per_symbol}")


@dataclass(frozen=True)
class ButterworthSpec:
    """Butterworth filter prototype.

    order is the analog prototype order N (scipy convention): a lowpass design
    has N poles, a bandpass design 2N poles. cutoff_low/cutoff_high are the
    3-dB edges in Hz; lowpass designs use cutoff_high only.
    """

    order: int = 4
    kind: str = "lowpass"
    cutoff_low: float | None = None
    cutoff_high: float = 1.0

    def __post_init__(self):
        if self.order < 1:
            raise ConfigurationError(f"butterworth order must be >= 1, got {self.order}")
        if self.kind not in ("lowpass", "bandpass"):
            raise ConfigurationError(f"butterworth kind must be lowpass or bandpass, got {self.kind!r}")
        if self.cutoff_high <= 0:
            raise ConfigurationError(f"cutoff_high must be positive, got {self.cutoff_high}")
        if self.kind == "bandpass":
            if self.cutoff_low is None or self.cutoff_low <= 0:
                raise ConfigurationError("bandpass design needs a positive cutoff_low")
            if self.cutoff_low >= self.cutoff_high:
                raise ConfigurationError(
                    f"bandpass edges must satisfy cutoff_low < cutoff_high, got "
                    f"[{self.cutoff_low}, {self.cutoff_high}]")


def design_rrc(spec):
    """Return the unit-energy root-raised-cosine taps for `spec`.

    The returned FIR is odd-length and even-symmetric, covering spec.span
    symbol periods at spec.samples_per_symbol taps per symbol.
    """
    rho = spec.roll_off
    sps = spec.samples_per_symbol
    half = spec.span * sps // 2
    h = np.zeros(2 * half + 1)
    for i, n in enumerate(range(-half, half + 1)):
        t = n / sps
        if abs(t) < 1e-12:
            h[i] = 1.0 - rho + 4.0 * rho / np.pi
        elif rho > 0 and abs(abs(4.0 * rho * t) - 1.0) < 1e-9:
            h[i] = (rho / np.sqrt(2.0)) * (
                (1.0 + 2.0 / np.pi) * np.sin(np.pi / (4.0 * rho))
                + (1.0 - 2.0 / np.pi) * np.cos(np.pi / (4.0 * rho)))
        else:
            num = np.sin(np.pi * t * (1.0 - rho)) + 4.0 * rho * t * np.cos(np.pi * t * (1.0 + rho))
            den = np.pi * t * (1.0 - (4.0 * rho * t) ** 2)
            h[i] = num / den
    return h / np.sqrt(np.sum(h * h))


def design_butterworth(spec, fs):
    """Design `spec` at sample rate `fs` and return second-order sections.

    The digital design is prewarped so the magnitude is exactly -3 dB at the
    specified edge frequencies.
    """
    nyq = fs / 2.0
    if spec.cutoff_high >= nyq:
        raise ConfigurationError(
            f"cutoff {spec.cutoff_high} must lie below the Nyquist rate {nyq}")
    if spec.kind == "lowpass":
        sos = sig.butter(spec.order, spec.cutoff_high, btype="lowpass", fs=fs, output="sos")
    else:
        sos = sig.butter(spec.order, [spec.cutoff_low, spec.cutoff_high],
                         btype="bandpass", fs=fs, output="sos")
    for section in sos:
        poles = np.roots(section[3:])
        if np.any(np.abs(poles) >= 1.0):
            raise ConfigurationError(
                f"unstable butterworth design: {spec.kind} order {spec.order} at fs={fs}")
    return sos


def fir_group_delay(taps):
    """Integer group delay (L-1)//2 of a linear-phase FIR."""
    return (len(taps) - 1) // 2


def fir_filter(x, taps):
    """Full linear convolution of `x` with `taps` (length len(x)+len(taps)-1).

    Callers compensate the linear-phase delay with fir_group_delay.
    """
    taps = np.asarray(taps)
    if taps.size == 0:
        raise ValueError("empty tap vector")
    return np.convolve(np.asarray(x), taps)


def iir_filter(x, sos):
    """Apply a cascade of second-order sections to `x`."""
    sos = np.atleast_2d(np.asarray(sos))
    for section in sos:
        poles = np.roots(section[3:])
        if np.any(np.abs(poles) >= 1.0):
            raise ConfigurationError("unstable second-order section passed to iir_filter")
    return sig.sosfilt(sos, np.asarray(x))


def upsample_zero_insert(symbols, L):
    """Insert L-1 zeros after every symbol; output length is L*len(symbols)."""
    if L < 1:
        raise ValueError(f"upsampling factor must be >= 1, got {L}")
    symbols = np.asarray(symbols)
    out = np.zeros(L * len(symbols), dtype=symbols.dtype)
    out[::L] = symbols
    return out


def zoh_hold(x, M):
    """Repeat each sample M times (zero-order hold reconstruction)."""
    if M < 1:
        raise ValueError(f"hold factor must be >= 1, got {M}")
    return np.repeat(np.asarray(x), M)


def downsample(x, M, phase=0):
    """Keep samples at indices phase, phase+M, phase+2M, ..."""
    if not 0 <= phase < M:
        raise ValueError(f"phase must lie in [0, {M}), got {phase}")
    return np.asarray(x)[phase::M]


def upconvert(x_bb, fc, fs):
    """Translate complex baseband to a real passband signal at carrier fc.

    x_p[n] = Re{x_bb[n] exp(j 2 pi fc n / fs)}. Mean power drops by half
    relative to the baseband input; the downconvert gain of 2 restores it.
    """
    if fs <= 2.0 * fc:
        raise ConfigurationError(f"sample rate {fs} cannot carry fc={fc} (needs fs > 2 fc)")
    n = np.arange(len(x_bb))
    return np.real(np.asarray(x_bb) * np.exp(2j * np.pi * fc * n / fs))


def downconvert(x_p, fc, fs):
    """Mix a real passband signal down to complex baseband (gain 2, images kept).

    The caller applies a lowpass to remove the residual component at 2 fc.
    """
    n = np.arange(len(x_p))
    return 2.0 * np.asarray(x_p) * np.exp(-2j * np.pi * fc * n / fs)


def paired_at_lag(tx, rx, lag, stride=1):
    """Pair tx[n] with rx[lag + stride*n] over all valid n.

    Returns the two equal-length views used for correlation, scaling, and
    mutual-information estimation at a candidate lag.
    """
    tx = np.asarray(tx)
    rx = np.asarray(rx)
    n_lo = 0 if lag >= 0 else -(lag // stride)
    n_hi = min(len(tx), (len(rx) - 1 - lag) // stride + 1)
    if n_hi <= n_lo:
        return tx[:0], rx[:0]
    idx = lag + stride * np.arange(n_lo, n_hi)
    return tx[n_lo:n_hi], rx[idx]


def align(tx, rx_soft, stride=1, max_lag=None, ambiguity_rel_tol=0.01):
    """Find the lag and complex scale relating a received stream to tx symbols.

    The lag search pairs tx[n] with rx_soft[lag + stride*n] for lag in
    [-max_lag, +max_lag] (default max_lag = 4*stride, four symbol durations)
    and maximizes the magnitude of the normalized cross-correlation. The
    returned scalar c is the least-squares solution of tx ~ c * rx at the
    chosen lag, so callers can undo deterministic delay, rotation, and gain
    in one step. If a second lag correlates within `ambiguity_rel_tol` of the
    peak, an AlignmentAmbiguityWarning is issued and the smallest qualifying
    lag is chosen.
    """
    tx = np.asarray(tx)
    rx_soft = np.asarray(rx_soft)
    if max_lag is None:
        max_lag = 4 * stride
    lags = np.arange(-max_lag, max_lag + 1)
    metric = np.full(len(lags), -1.0)
    for k, lag in enumerate(lags):
        t, r = paired_at_lag(tx, rx_soft, int(lag), stride)
        if len(t) == 0:
            continue
        metric[k] = np.abs(np.vdot(t, r)) / len(t)
    if metric.max() <= 0.0:
        raise ValueError("no overlap between tx and rx_soft within the lag window")
    peak = metric.max()
    qualifying = lags[metric >= (1.0 - ambiguity_rel_tol) * peak]
    if len(qualifying) > 1:
        warnings.warn(
            f"correlation peak is ambiguous across lags {qualifying.tolist()}; "
            f"using the smallest", AlignmentAmbiguityWarning)
    lag = int(qualifying.min()) if len(qualifying) > 1 else int(lags[np.argmax(metric)])
    t, r = paired_at_lag(tx, rx_soft, lag, stride)
    c = np.vdot(r, t) / np.vdot(r, r)
    return lag, c
