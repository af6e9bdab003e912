"""Behavioral clipping power amplifier.

The amplifier is a memoryless hard clipper on the passband waveform followed
by a bandpass reconstruction filter. Battery draw is computed from the load
current as v_sat * mean|i_L|, transmit power as mean(i_L * y_p).
"""

from dataclasses import dataclass

import numpy as np

from .dsp import ButterworthSpec, iir_filter
from .errors import ConfigurationError

# First-harmonic ceiling of a hard limiter: a fully clipped tone of saturation
# level V carries at most (4/pi) V of fundamental amplitude, which bounds the
# transmit-to-battery power ratio p_t/p_pa by 4/pi.
HARMONIC_BOUND = 4.0 / np.pi


@dataclass(frozen=True)
class PaConfig:
    """Operating point of the amplifier stage.

    ibo is the input back-off v_sat/sigma_x (small ibo clips hard), r_load the
    load resistance in ohms, and bpf the reconstruction filter prototype.
    """

    ibo: float = 0.1
    r_load: float = 1.0
    bpf: ButterworthSpec = ButterworthSpec(order=4, kind="bandpass", cutoff_low=29.55, cutoff_high=30.45)

    def __post_init__(self):
        if self.ibo <= 0:
            raise ConfigurationError(f"ibo must be positive, got {self.ibo}")
        if self.r_load <= 0:
            raise ConfigurationError(f"r_load must be positive, got {self.r_load}")
        if self.bpf.kind != "bandpass":
            raise ConfigurationError("pa reconstruction filter must be a bandpass design")


@dataclass(frozen=True)
class PaOutput:
    """Amplifier output bundle: waveform, load current, and the two powers."""

    y_p: np.ndarray
    i_l: np.ndarray
    p_pa: float
    p_t: float

    def __post_init__(self):
        if self.p_pa < 0 or self.p_t < 0:
            raise ValueError(f"powers must be nonnegative, got p_pa={self.p_pa}, p_t={self.p_t}")
        if self.p_t > HARMONIC_BOUND * self.p_pa * (1.0 + 1e-9):
            raise ValueError(
                f"p_t={self.p_t} exceeds the clipped-harmonic bound (4/pi)*p_pa={HARMONIC_BOUND * self.p_pa}")


def set_operating_point(ibo, x_p, window=slice(None)):
    """Saturation voltage for back-off `ibo`: v_sat = ibo * RMS(x_p[window])."""
    rms = np.sqrt(np.mean(np.square(np.asarray(x_p)[window])))
    if rms == 0.0:
        raise ValueError("cannot set an operating point on a zero-power input")
    return ibo * rms

def clip(x_p, v_sat):
    """Hard-limit the passband waveform to [-v_sat, +v_sat]."""
    if v_sat <= 0:
        raise ValueError(f"v_sat must be positive, got {v_sat}")
    return np.clip(np.asarray(x_p), -v_sat, v_sat)


def bandpass_reconstruct(v_t, sos):
    """Bandpass-filter the clipped waveform (second-order sections from design_butterworth)."""
    return iir_filter(v_t, sos)


def pa_power(i_l, v_sat, window=slice(None)):
    """Battery draw p_pa = v_sat * mean|i_L| over the measurement window."""
    return v_sat * np.mean(np.abs(np.asarray(i_l)[window]))


def transmit_power(i_l, y_p, window=slice(None)):
    """Average delivered power p_t = mean(i_L * y_p) over the measurement window."""
    i_l = np.asarray(i_l)
    y_p = np.asarray(y_p)
    if len(i_l) != len(y_p):
        raise ValueError(f"length mismatch: i_l has {len(i_l)} samples, y_p has {len(y_p)}")
    return np.mean(i_l[window] * y_p[window])


def am_am_curve(v_sat, amplitudes, samples_per_cycle=4096, n_cycles=8):
    """First-harmonic transfer f(A) of the clipper, probed with pure tones.

    Each amplitude drives a sinusoid through the clipper and the fundamental
    is read back with a single-bin DFT over an integer number of cycles. The
    dense phase grid keeps harmonic aliasing negligible (< 1e-6 relative).
    """
    amplitudes = np.asarray(amplitudes, dtype=float)
    if np.any(amplitudes <= 0):
        raise ValueError("probe amplitudes must be positive")
    phase = 2.0 * np.pi * np.arange(n_cycles * samples_per_cycle) / samples_per_cycle
    probe = np.exp(-1j * phase)
    tone = np.cos(phase)
    out = np.empty(len(amplitudes))
    for i, a in enumerate(amplitudes):
        v_t = clip(a * tone, v_sat)
        out[i] = 2.0 * np.abs(np.mean(v_t * probe))
    return out
