"""Sigmoid activation ranges and exponential spike encoding."""

import math

import pytest

from looming_net.neurons import (NeuronId, SpikeParams, integrate_and_activate,
                                 spike_encode)


def test_zero_drive_baselines():
    assert integrate_and_activate(NeuronId.LGMD1, 0.0, 100, 1.0) == 0.5
    assert integrate_and_activate(NeuronId.LGMD2, 0.0, 100, 1.0) == 0.5
    assert integrate_and_activate(NeuronId.LPTC_R, 0.0, 100, 1.0) == 0.0
    u = integrate_and_activate(NeuronId.LPTC_L, 0.0, 100, 1.0)
    assert u == 0.0 and math.copysign(1.0, u) == 1.0  # plain zero, not -0.0


def test_unit_normalized_drive_value():
    u = integrate_and_activate(NeuronId.LGMD1, 100.0, 100, 1.0)
    assert u == pytest.approx(1.0 / (1.0 + math.exp(-1.0)), abs=1e-9)
    assert u == pytest.approx(0.7311, abs=1e-4)


def test_output_ranges_over_wide_drives():
    for drive in (0.0, 1.0, 50.0, 1e4, 1e9):
        u1 = integrate_and_activate(NeuronId.LGMD1, drive, 100, 1.0)
        ur = integrate_and_activate(NeuronId.LPTC_R, drive, 100, 1.0)
        ul = integrate_and_activate(NeuronId.LPTC_L, drive, 100, 1.0)
        assert 0.5 <= u1 < 1.0
        assert 0.0 <= ur < 1.0
        assert -1.0 < ul <= 0.0
        assert ul == -ur or (ul == 0.0 and ur == 0.0)


def test_monotone_in_drive():
    us = [integrate_and_activate(NeuronId.LGMD1, d, 10, 2.0)
          for d in (0.0, 1.0, 5.0, 20.0, 100.0)]
    assert us == sorted(us)


def test_integrate_validation():
    with pytest.raises(ValueError):
        integrate_and_activate(NeuronId.LGMD1, 1.0, 0, 1.0)
    with pytest.raises(ValueError):
        integrate_and_activate(NeuronId.LGMD1, -1.0, 10, 1.0)


def test_spike_params_validation():
    with pytest.raises(ValueError):
        SpikeParams(k_sp=0.0, t_sp=0.7)
    with pytest.raises(ValueError):
        SpikeParams(k_sp=4.0, t_sp=0.0)
    with pytest.raises(ValueError):
        SpikeParams(k_sp=4.0, t_sp=1.0)
    SpikeParams(k_sp=4.0, t_sp=-0.2)  # signed thresholds allowed


def test_spike_encode_hand_values():
    lgmd = SpikeParams(k_sp=4.0, t_sp=0.7)
    assert spike_encode(0.7, lgmd) == 1      # exp(0) = 1
    assert spike_encode(0.9, lgmd) == 2      # exp(0.8) ~ 2.2255
    assert spike_encode(0.69, lgmd) == 0     # below threshold
    lptc_l = SpikeParams(k_sp=4.0, t_sp=-0.2)
    assert spike_encode(-0.3, lptc_l) == 1   # exp(0.4) ~ 1.4918


def test_spike_encode_monotone_and_multi_spike():
    p = SpikeParams(k_sp=4.0, t_sp=0.7)
    us = [0.0, 0.5, 0.7, 0.8, 0.9, 0.99]
    counts = [spike_encode(u, p) for u in us]
    assert counts == sorted(counts)
    assert any(c >= 2 for c in counts)  # multiple spikes per frame reachable


def test_spike_encode_uses_magnitude_for_negative_potentials():
    p = SpikeParams(k_sp=4.0, t_sp=-0.2)
    assert spike_encode(-0.5, p) == spike_encode(0.5, SpikeParams(4.0, 0.2))
    assert spike_encode(-0.1, p) == 0
