"""End-to-end link execution for the three system variants.

sys1: pulse-shaped transmit chain, ideal converters on both ends.
sys2: the same chain with 1-bit DACs and ADCs.
sys3: 1-bit converters and no transmit pulse shaping or upsampling; the DAC
      runs at the symbol rate and the transmit lowpass plus the amplifier's
      bandpass do the pulse shaping.

One run_link call evaluates a single (variant, ibo, b_bpf) operating point
and returns the full LinkMetrics row.
"""

from contextlib import contextmanager
from dataclasses import dataclass, field, replace

import numpy as np

from . import channel as channel_mod
from . import dsp
from . import metrics as metrics_mod
from . import pa as pa_mod
from . import quantizers
from .errors import ConfigurationError, StageError

QPSK_ALPHABET = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j]) / np.sqrt(2.0)

VARIANTS = ("sys1", "sys2", "sys3")

# Samples per symbol at the DAC input: the pulse-shaped variants hold 4
# samples per symbol, the shaper-free variant converts raw symbols directly.
_DAC_SPS = {"sys1": 4, "sys2": 4, "sys3": 1}
_ONE_BIT = {"sys1": False, "sys2": True, "sys3": True}
_MI_BINS = {"sys1": 8, "sys2": 2, "sys3": 2}


@dataclass(frozen=True)
class SystemConfig:
    """Static description of one link variant; all rates are multiples of the baud rate."""

    variant: str = "sys2"
    b: float = 1.0
    fc_multiple: float = 30.0
    analog_sps: int = 128
    n_symbols: int = 10_000
    rrc: dsp.RrcSpec = field(default_factory=dsp.RrcSpec)
    lpf: dsp.ButterworthSpec = field(default_factory=dsp.ButterworthSpec)
    adc_sps: int = 4
    seed: int = 1
    mi_bins: int | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigurationError(f"unknown system variant {self.variant!r}")
        if self.b <= 0:
            raise ConfigurationError(f"baud rate must be positive, got {self.b}")
        if self.n_symbols <= 4 * self.rrc.span:
            raise ConfigurationError(
                f"n_symbols={self.n_symbols} leaves no samples after edge trimming")
        if self.analog_sps % self.dac_sps or self.analog_sps % self.adc_sps:
            raise ConfigurationError(
                f"analog_sps={self.analog_sps} must be divisible by dac_sps={self.dac_sps} "
                f"and adc_sps={self.adc_sps}")
        if self.rrc.samples_per_symbol != self.adc_sps:
            raise ConfigurationError(
                "receive pulse shaping runs at the converter rate; rrc.samples_per_symbol "
                f"({self.rrc.samples_per_symbol}) must equal adc_sps ({self.adc_sps})")
        nyquist = self.analog_sps * self.b / 2.0
        occupied = self.fc() + self.b * (1.0 + self.rrc.roll_off)
        if occupied >= nyquist:
            raise ConfigurationError(
                f"carrier {self.fc()} plus signal bandwidth exceeds Nyquist {nyquist}")
        if self.mi_bins is not None and self.mi_bins < 2:
            raise ConfigurationError(f"mi_bins must be >= 2, got {self.mi_bins}")

    @property
    def dac_sps(self):
        return _DAC_SPS[self.variant]

    def fc(self):
        return self.fc_multiple * self.b

    def fs(self):
        return self.analog_sps * self.b


def draw_symbols(n, rng):
    """Draw n uniform QPSK symbols."""
    return QPSK_ALPHABET[rng.integers(0, 4, n)]


@contextmanager
def _stage(name):
    try:
        yield
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, str(exc)) from exc


def run_link(sys_cfg, pa_cfg, ch_cfg):
    """Run the full chain once and return LinkMetrics.

    The configured seed feeds a SeedSequence whose two children drive the
    symbol source and the channel noise, so identical configurations
    reproduce bit-identical metrics.
    """
    fs = sys_cfg.fs()
    fc = sys_cfg.fc()
    one_bit = _ONE_BIT[sys_cfg.variant]
    span = sys_cfg.rrc.span
    seq = np.random.SeedSequence(sys_cfg.seed)
    sym_rng, noise_rng = [np.random.default_rng(s) for s in seq.spawn(2)]

    with _stage("source"):
        tx = draw_symbols(sys_cfg.n_symbols, sym_rng)

    with _stage("tx-shaping"):
        if sys_cfg.variant in ("sys1", "sys2"):
            up = dsp.upsample_zero_insert(tx, sys_cfg.rrc.samples_per_symbol)
            taps = dsp.design_rrc(sys_cfg.rrc)
            delay = dsp.fir_group_delay(taps)
            dac_in = dsp.fir_filter(up, taps)[delay:delay + len(up)]
        else:
            dac_in = tx

    with _stage("dac"):
        if one_bit:
            dac_in = quantizers.one_bit_quantize(dac_in)
        analog = dsp.zoh_hold(dac_in, sys_cfg.analog_sps // sys_cfg.dac_sps)
        lpf_sos = dsp.design_butterworth(sys_cfg.lpf, fs)
        analog = dsp.iir_filter(analog, lpf_sos)

    # Edge-trim window at the analog rate: the first and last span-many
    # symbols carry filter transients and are excluded from every statistic.
    trim = span * sys_cfg.analog_sps
    window = slice(trim, len(analog) - trim)

    with _stage("pa"):
        x_p = dsp.upconvert(analog, fc, fs)
        x_p = x_p / np.sqrt(np.mean(np.square(x_p[window])))
        v_sat = pa_mod.set_operating_point(pa_cfg.ibo, x_p, window)
        v_t = pa_mod.clip(x_p, v_sat)
        bpf_sos = dsp.design_butterworth(pa_cfg.bpf, fs)
        y_p = pa_mod.bandpass_reconstruct(v_t, bpf_sos)
        i_l = y_p / pa_cfg.r_load
        pa_out = pa_mod.PaOutput(
            y_p=y_p, i_l=i_l,
            p_pa=pa_mod.pa_power(i_l, v_sat, window),
            p_t=pa_mod.transmit_power(i_l, y_p, window))

    with _stage("channel"):
        sigma_n2 = channel_mod.calibrate_noise(pa_out.p_t, ch_cfg)
        y_rx = channel_mod.add_awgn(y_p, sigma_n2, sys_cfg.b, fs, noise_rng)

    with _stage("rx"):
        bb = dsp.downconvert(y_rx, fc, fs)
        bb = dsp.iir_filter(bb, lpf_sos)
        rx = dsp.downsample(bb, sys_cfg.analog_sps // sys_cfg.adc_sps)
        if one_bit:
            rx = quantizers.one_bit_quantize(rx)
        taps = dsp.design_rrc(sys_cfg.rrc)
        delay = dsp.fir_group_delay(taps)
        rx = dsp.fir_filter(rx, taps)[delay:delay + len(rx)]

    with _stage("align"):
        lag, c = dsp.align(tx, rx, stride=sys_cfg.adc_sps)
        tx_used, rx_used = dsp.paired_at_lag(tx, rx, lag, sys_cfg.adc_sps)
        rx_hat = c * rx_used
        keep = slice(span, len(tx_used) - span)

    with _stage("metrics"):
        bins = sys_cfg.mi_bins if sys_cfg.mi_bins is not None else _MI_BINS[sys_cfg.variant]
        mi = metrics_mod.mutual_information(tx_used[keep], rx_hat[keep], bins)
        rate_r = metrics_mod.information_rate(mi, sys_cfg.b)
        psd = metrics_mod.welch_psd(y_p[window], fs)
        b_pa = metrics_mod.occupied_bandwidth(psd, fc)
        n0 = sigma_n2 / sys_cfg.b
        eta_p, eta_b, fom, fom_norm = metrics_mod.efficiencies(
            rate_r, pa_out.p_pa, b_pa, n0, ch_cfg.alpha)

    return metrics_mod.LinkMetrics(
        mi=mi, rate_r=rate_r, b_pa=b_pa, p_pa=pa_out.p_pa, p_t=pa_out.p_t,
        eta_p=eta_p, eta_b=eta_b, fom=fom, fom_normalized=fom_norm)


def bpf_spec_for(bbpf_over_b, sys_cfg, order=4):
    """Bandpass prototype of width bbpf_over_b * B centered on the carrier."""
    half = bbpf_over_b * sys_cfg.b / 2.0
    return dsp.ButterworthSpec(order=order, kind="bandpass",
                               cutoff_low=sys_cfg.fc() - half,
                               cutoff_high=sys_cfg.fc() + half)


def compare_systems(bbpf_values, ibo, sys_cfg, pa_cfg, ch_cfg, systems=VARIANTS):
    """FOM curves over b_bpf for several variants at one back-off.

    Every variant sees the same derived seed at a given b_bpf (base seed plus
    grid index), so the comparison is paired. Returns
    {variant: [(b_bpf, LinkMetrics), ...]}.
    """
    bbpf_values = list(bbpf_values)
    if not bbpf_values:
        raise ValueError("empty b_bpf grid")
    unknown = set(systems) - set(VARIANTS)
    if unknown:
        raise ConfigurationError(f"unknown system variants: {sorted(unknown)}")
    curves = {}
    for variant in systems:
        rows = []
        for j, bbpf in enumerate(bbpf_values):
            cfg = replace(sys_cfg, variant=variant, seed=sys_cfg.seed + j)
            cfg_pa = replace(pa_cfg, ibo=ibo, bpf=bpf_spec_for(bbpf, cfg, pa_cfg.bpf.order))
            rows.append((bbpf, run_link(cfg, cfg_pa, ch_cfg)))
        curves[variant] = rows
    return curves
