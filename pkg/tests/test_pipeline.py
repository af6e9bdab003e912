import dataclasses

import numpy as np
import pytest

from onebitlink.channel import ChannelConfig
from onebitlink.dsp import ButterworthSpec, RrcSpec
from onebitlink.errors import ConfigurationError, StageError
from onebitlink.pa import PaConfig
from onebitlink.pipeline import (QPSK_ALPHABET, VARIANTS, SystemConfig,
                                 bpf_spec_for, compare_systems, draw_symbols,
                                 run_link)


def _configs(variant="sys2", n_symbols=10000, seed=1, bbpf=0.9, ibo=0.1):
    sys_cfg = SystemConfig(variant=variant, n_symbols=n_symbols, seed=seed)
    pa_cfg = PaConfig(ibo=ibo, bpf=bpf_spec_for(bbpf, sys_cfg))
    return sys_cfg, pa_cfg, ChannelConfig()


def test_alphabet():
    assert len(QPSK_ALPHABET) == 4
    np.testing.assert_allclose(np.abs(QPSK_ALPHABET), 1.0, rtol=1e-15)
    assert VARIANTS == ("sys1", "sys2", "sys3")


def test_draw_symbols():
    rng = np.random.default_rng(0)
    syms = draw_symbols(1000, rng)
    assert set(np.round(syms, 12)) <= set(np.round(QPSK_ALPHABET, 12))
    rng2 = np.random.default_rng(0)
    np.testing.assert_array_equal(syms, draw_symbols(1000, rng2))


class TestSystemConfig:
    def test_carrier_and_rate(self):
        cfg = SystemConfig()
        assert cfg.fc() == 30.0
        assert cfg.fs() == 128.0
        assert cfg.dac_sps == 4

    def test_sys3_feeds_symbols_straight_to_dac(self):
        assert SystemConfig(variant="sys3").dac_sps == 1

    @pytest.mark.parametrize("kwargs", [
        dict(variant="sys4"),
        dict(b=0.0),
        dict(n_symbols=64),
        dict(analog_sps=127),                      # not divisible by adc_sps
        dict(fc_multiple=63.0),                    # carrier too close to Nyquist
        dict(rrc=RrcSpec(samples_per_symbol=8)),   # shaper rate != adc rate
        dict(mi_bins=1),
    ])
    def test_validation(self, kwargs):
        with pytest.raises(ConfigurationError):
            SystemConfig(**kwargs)


class TestRunLink:
    def test_deterministic(self):
        sys_cfg, pa_cfg, ch_cfg = _configs(n_symbols=2000)
        m1 = run_link(sys_cfg, pa_cfg, ch_cfg)
        m2 = run_link(sys_cfg, pa_cfg, ch_cfg)
        assert m1 == m2  # bit-exact, not merely close

    def test_seed_changes_noise(self):
        a = run_link(*_configs(n_symbols=2000, seed=1))
        b = run_link(*_configs(n_symbols=2000, seed=2))
        assert a.mi != b.mi

    def test_ideal_system_is_nearly_transparent(self):
        # generous back-off and a wide reconstruction filter: the ideal
        # converter chain should come close to the 2 bit QPSK ceiling
        m = run_link(*_configs(variant="sys1", ibo=10.0, bbpf=2.0))
        assert m.rate_r >= 1.95

    def test_pa_power_rises_with_backoff(self):
        powers = [run_link(*_configs(n_symbols=2000, ibo=v)).p_pa
                  for v in (0.0316, 0.1, 1.0, 10.0)]
        assert all(p2 >= p1 for p1, p2 in zip(powers, powers[1:]))

    def test_occupied_bandwidth_shrinks_with_narrower_bpf(self):
        widths = [run_link(*_configs(n_symbols=2000, bbpf=w)).b_pa
                  for w in (2.0, 1.0, 0.4)]
        assert widths[0] >= widths[1] >= widths[2]

    def test_metric_consistency(self):
        m = run_link(*_configs(n_symbols=2000))
        assert np.isclose(m.fom, m.eta_p * m.eta_b, rtol=1e-12)
        assert np.isclose(m.eta_b, m.rate_r / m.b_pa, rtol=1e-12)
        assert m.p_t <= (4.0 / np.pi) * m.p_pa * (1 + 1e-9)
        assert 0.0 <= m.mi <= 2.0

    def test_mi_bins_override(self):
        sys_cfg = SystemConfig(variant="sys2", n_symbols=2000, mi_bins=4)
        pa_cfg = PaConfig(ibo=0.1, bpf=bpf_spec_for(0.9, sys_cfg))
        m = run_link(sys_cfg, pa_cfg, ChannelConfig())
        assert 0.0 <= m.mi <= 2.0

    def test_stage_error_names_the_stage(self):
        sys_cfg = SystemConfig(n_symbols=2000)
        # bandpass edges legal in themselves but above this chain's Nyquist
        bad_bpf = ButterworthSpec(order=4, kind="bandpass",
                                  cutoff_low=50.0, cutoff_high=70.0)
        pa_cfg = PaConfig(ibo=0.1, bpf=bad_bpf)
        with pytest.raises(StageError) as err:
            run_link(sys_cfg, pa_cfg, ChannelConfig())
        assert err.value.stage == "pa"
        assert "pa" in str(err.value)


class TestCompareSystems:
    def test_all_variants_evaluated(self):
        sys_cfg, pa_cfg, ch_cfg = _configs(n_symbols=2000)
        out = compare_systems([0.8, 1.0], 0.1, sys_cfg, pa_cfg, ch_cfg)
        assert set(out) == set(VARIANTS)
        for rows in out.values():
            assert [w for w, _ in rows] == [0.8, 1.0]

    def test_rejects_empty_grid(self):
        sys_cfg, pa_cfg, ch_cfg = _configs(n_symbols=2000)
        with pytest.raises(ValueError):
            compare_systems([], 0.1, sys_cfg, pa_cfg, ch_cfg)

    def test_rejects_unknown_variant(self):
        sys_cfg, pa_cfg, ch_cfg = _configs(n_symbols=2000)
        with pytest.raises(ConfigurationError):
            compare_systems([0.9], 0.1, sys_cfg, pa_cfg, ch_cfg,
                            systems=("sys9",))


def test_bpf_spec_for_centers_on_carrier():
    spec = bpf_spec_for(0.9, SystemConfig())
    assert spec.kind == "bandpass"
    assert np.isclose(spec.cutoff_low, 30.0 - 0.45)
    assert np.isclose(spec.cutoff_high, 30.0 + 0.45)


def test_configs_are_frozen():
    cfg = SystemConfig()
    with pytest.raises(dataclasses.FrozenInstanceError):
        cfg.seed = 2
