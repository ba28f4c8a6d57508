"""Spike-train competition: translation veto, dual-agreement collision, trigger."""

import pytest

from looming_net.arbiter import (Arbiter, ArbiterState, Verdict, compete,
                                 trigger_check)
from looming_net.neurons import NeuronId, NeuronOutput


def _outputs(lgmd1=0, lgmd2=0, lptc_r=0, lptc_l=0, frame=0):
    vals = {NeuronId.LGMD1: (0.9, lgmd1), NeuronId.LGMD2: (0.9, lgmd2),
            NeuronId.LPTC_R: (0.5, lptc_r), NeuronId.LPTC_L: (-0.5, lptc_l)}
    return {nid: NeuronOutput(id=nid, potential_u=u, spikes=s, frame_index=frame)
            for nid, (u, s) in vals.items()}


def test_both_lgmds_agree_collision_effective_min():
    d = compete(_outputs(lgmd1=2, lgmd2=1), ArbiterState())
    assert d.verdict is Verdict.COLLISION
    assert d.effective_lgmd_spikes == 1


def test_lptc_activity_vetoes():
    d = compete(_outputs(lgmd1=3, lgmd2=2, lptc_r=2), ArbiterState())
    assert d.verdict is Verdict.SUPPRESSED
    assert d.effective_lgmd_spikes == 0


def test_single_lgmd_is_quiet():
    d = compete(_outputs(lgmd1=2, lgmd2=0), ArbiterState())
    assert d.verdict is Verdict.QUIET
    assert d.effective_lgmd_spikes == 0


def test_all_zero_is_quiet():
    d = compete(_outputs(), ArbiterState())
    assert d.verdict is Verdict.QUIET


def test_mismatched_frame_indices_rejected():
    outputs = _outputs(lgmd1=1, lgmd2=1)
    outputs[NeuronId.LPTC_R] = NeuronOutput(
        id=NeuronId.LPTC_R, potential_u=0.0, spikes=0, frame_index=5)
    with pytest.raises(ValueError):
        compete(outputs, ArbiterState())


def test_suppression_window_outlasts_lptc_activity():
    state = ArbiterState()
    d = compete(_outputs(lptc_r=1, frame=0), state, suppression_window=3)
    assert d.verdict is Verdict.SUPPRESSED
    for frame in range(1, 4):  # window frames: still suppressed without LPTC spikes
        d = compete(_outputs(lgmd1=2, lgmd2=2, frame=frame), state,
                    suppression_window=3)
        assert d.verdict is Verdict.SUPPRESSED
    d = compete(_outputs(lgmd1=2, lgmd2=2, frame=4), state, suppression_window=3)
    assert d.verdict is Verdict.COLLISION


def test_lgmd2_alone_mode():
    d = compete(_outputs(lgmd1=0, lgmd2=2), ArbiterState(), require_both_lgmds=False)
    assert d.verdict is Verdict.COLLISION
    assert d.effective_lgmd_spikes == 2
    # veto still applies in that mode
    d = compete(_outputs(lgmd2=2, lptc_l=1), ArbiterState(), require_both_lgmds=False)
    assert d.verdict is Verdict.SUPPRESSED


def test_trigger_needs_consecutive_collisions():
    state = ArbiterState()
    c = compete(_outputs(lgmd1=1, lgmd2=1), ArbiterState())
    q = compete(_outputs(), ArbiterState())
    assert trigger_check(c, state, n_confirm=2) is False
    assert trigger_check(c, state, n_confirm=2) is True
    assert trigger_check(q, state, n_confirm=2) is False  # resets the counter
    assert trigger_check(c, state, n_confirm=2) is False
    assert trigger_check(c, state, n_confirm=2) is True


def test_arbiter_wrapper_runs_competition_and_trigger():
    arb = Arbiter(n_confirm=2, suppression_window=3)
    d, trig = arb.step(_outputs(lgmd1=1, lgmd2=1, frame=0))
    assert d.verdict is Verdict.COLLISION and trig is False
    d, trig = arb.step(_outputs(lgmd1=1, lgmd2=1, frame=1))
    assert d.verdict is Verdict.COLLISION and trig is True
