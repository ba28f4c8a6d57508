"""Looming-selective medulla: lateral inhibition, competition, delay buffers."""

import numpy as np
import pytest

from looming_net.frontend import ChannelPair
from looming_net.medulla_lgmd import (DEFAULT_SPATIAL_WEIGHTS, DualLgmdMedulla,
                                      LgmdKernel, LgmdMedulla,
                                      lateral_inhibition, summation_competition)


def _pair(on, off):
    return ChannelPair(on=np.asarray(on, dtype=np.float32),
                       off=np.asarray(off, dtype=np.float32))


def test_default_spatial_weights_shape():
    w = DEFAULT_SPATIAL_WEIGHTS
    assert w.shape == (3, 3)
    assert w[1, 1] == 0.0
    assert np.isclose(w.sum(), 1.5)
    assert np.allclose(w, w.T)


def test_kernel_validation():
    with pytest.raises(ValueError):
        LgmdKernel(spatial_weights=np.ones((3, 3), dtype=np.float32))  # center not 0
    bad = DEFAULT_SPATIAL_WEIGHTS.copy()
    bad[0, 0] = -0.1
    with pytest.raises(ValueError):
        LgmdKernel(spatial_weights=bad)
    with pytest.raises(ValueError):
        LgmdKernel(temporal_delay=0)
    with pytest.raises(ValueError):
        LgmdKernel(on_gain=0.5)


def test_lateral_inhibition_matches_manual_convolution():
    k = LgmdKernel()
    rng = np.random.default_rng(5)
    g = rng.uniform(0, 4, size=(6, 7)).astype(np.float32)
    got = lateral_inhibition(g, k)
    gp = np.pad(g, 1, mode="edge")
    want = np.zeros_like(g)
    for i in range(6):
        for j in range(7):
            want[i, j] = float((gp[i:i + 3, j:j + 3] * k.spatial_weights).sum())
    assert np.allclose(got, want, atol=1e-4)


def test_lateral_inhibition_on_gain_scales_on_channel_only():
    k = LgmdKernel(on_gain=6.0)
    g = np.ones((4, 4), dtype=np.float32)
    base = lateral_inhibition(g, k, on_channel=False)
    boosted = lateral_inhibition(g, k, on_channel=True)
    assert np.allclose(boosted, 6.0 * base)


def test_summation_competition_hand_values():
    e = np.float32([[1.0]])
    i = np.float32([[0.5]])
    s = summation_competition(e, i, 0.3)
    assert s[0, 0] == pytest.approx(0.85)
    # rectification: strong inhibition clamps at zero, never negative
    s = summation_competition(np.float32([[0.1]]), np.float32([[1.0]]), 0.5)
    assert s[0, 0] == 0.0
    with pytest.raises(ValueError):
        summation_competition(np.zeros((2, 2)), np.zeros((3, 2)), 0.3)


def test_inhibition_is_delayed_by_configured_frames():
    """An impulse inhibits its surround exactly `delay` frames later."""
    for delay in (1, 2):
        m = LgmdMedulla(5, 5, LgmdKernel(temporal_delay=delay, bias_w=1.0))
        impulse = np.zeros((5, 5), dtype=np.float32)
        impulse[2, 2] = 10.0
        probe = np.zeros_like(impulse)
        probe[2, 3] = 10.0  # edge-adjacent to the impulse (surround weight 0.25)
        zero = np.zeros_like(impulse)
        s0 = m.step(_pair(impulse, zero))
        assert s0.sum() == pytest.approx(10.0)  # no inhibition history yet
        sums = [float(m.step(_pair(probe, zero)).sum())
                for _ in range(delay + 1)]
        # the probe is dented only when the impulse is exactly `delay` old;
        # before that the history is empty, after that only the probe remains
        # and the surround kernel has a zero center
        want = [10.0] * (delay + 1)
        want[delay - 1] = 10.0 - 0.25 * 10.0
        assert sums == pytest.approx(want)


def test_moving_edge_suppressed_more_than_first_appearance():
    """Sustained stationary excitation is cut down by its own delayed surround."""
    m = LgmdMedulla(6, 9, LgmdKernel())
    block = np.zeros((6, 9), dtype=np.float32)
    block[:, 3:6] = 4.0
    zero = np.zeros_like(block)
    first = m.step(_pair(block, zero)).sum()
    second = m.step(_pair(block, zero)).sum()
    assert second < first


def test_dual_medulla_matches_two_instances():
    k1 = LgmdKernel()
    k2 = LgmdKernel(on_gain=6.0)
    m1, m2 = LgmdMedulla(8, 10, k1), LgmdMedulla(8, 10, k2)
    dual = DualLgmdMedulla(8, 10, k1, k2)
    rng = np.random.default_rng(2)
    for _ in range(6):
        pair = _pair(rng.uniform(0, 5, (8, 10)), rng.uniform(0, 5, (8, 10)))
        want = (float(m1.step(pair).sum()), float(m2.step(pair).sum()))
        got = dual.step_drives(pair)
        # per-channel reduction order differs, so allow float32 rounding
        assert got == pytest.approx(want, rel=1e-6)


def test_dual_medulla_rejects_mismatched_kernels():
    with pytest.raises(ValueError):
        DualLgmdMedulla(4, 4, LgmdKernel(temporal_delay=1), LgmdKernel(temporal_delay=2))


def test_on_gain_makes_dark_selective_neuron_ignore_brightening():
    """Sustained ON input is crushed by the raised gain; OFF passes equally."""
    k1 = LgmdKernel(bias_w=0.3)
    k2 = LgmdKernel(bias_w=0.3, on_gain=6.0)
    m1, m2 = LgmdMedulla(6, 9, k1), LgmdMedulla(6, 9, k2)
    on = np.full((6, 9), 3.0, dtype=np.float32)
    zero = np.zeros_like(on)
    for _ in range(3):
        s1 = m1.step(_pair(on, zero)).sum()
        s2 = m2.step(_pair(on, zero)).sum()
    assert s2 < s1
    m1, m2 = LgmdMedulla(6, 9, k1), LgmdMedulla(6, 9, k2)
    for _ in range(3):
        s1 = m1.step(_pair(zero, on)).sum()
        s2 = m2.step(_pair(zero, on)).sum()
    assert s1 == pytest.approx(s2)
