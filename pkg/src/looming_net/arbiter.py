"""Coordination and competition among the four spike trains.

Any translation-cell activity vetoes the collision cells outright (with a
short debounce window); a collision is only declared when both collision
cells spike on the same frame. A confirmation counter turns repeated
collision verdicts into the motor-facing avoidance trigger.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .neurons import NeuronId, NeuronOutput


class Verdict(Enum):
    COLLISION = "COLLISION"
    SUPPRESSED = "SUPPRESSED"
    QUIET = "QUIET"


@dataclass(frozen=True)
class Decision:
    frame_index: int
    verdict: Verdict
    lgmd1_spikes: int
    lgmd2_spikes: int
    lptc_r_spikes: int
    lptc_l_spikes: int
    effective_lgmd_spikes: int


@dataclass
class ArbiterState:
    consecutive_collision_frames: int = 0
    suppression_window_remaining: int = 0


def compete(outputs: dict[NeuronId, NeuronOutput], state: ArbiterState,
            suppression_window: int = 3, require_both_lgmds: bool = True) -> Decision:
    """One frame of competition; updates the suppression window in `state`.

    With require_both_lgmds=False (single-neuron ablation) a collision is
    declared on LGMD-2 activity alone.
    """
    frames = {o.frame_index for o in outputs.values()}
    if len(frames) != 1:
        raise ValueError(f"neuron outputs span multiple frames: {sorted(frames)}")
    frame_index = frames.pop()

    lgmd1 = outputs[NeuronId.LGMD1].spikes
    lgmd2 = outputs[NeuronId.LGMD2].spikes
    lptc_r = outputs[NeuronId.LPTC_R].spikes
    lptc_l = outputs[NeuronId.LPTC_L].spikes

    if lptc_r >= 1 or lptc_l >= 1:
        state.suppression_window_remaining = suppression_window
        verdict, effective = Verdict.SUPPRESSED, 0
    elif state.suppression_window_remaining > 0:
        state.suppression_window_remaining -= 1
        verdict, effective = Verdict.SUPPRESSED, 0
    elif require_both_lgmds and lgmd1 >= 1 and lgmd2 >= 1:
        verdict, effective = Verdict.COLLISION, min(lgmd1, lgmd2)
    elif not require_both_lgmds and lgmd2 >= 1:
        verdict, effective = Verdict.COLLISION, lgmd2
    else:
        verdict, effective = Verdict.QUIET, 0

    return Decision(frame_index=frame_index, verdict=verdict,
                    lgmd1_spikes=lgmd1, lgmd2_spikes=lgmd2,
                    lptc_r_spikes=lptc_r, lptc_l_spikes=lptc_l,
                    effective_lgmd_spikes=effective)


def trigger_check(d: Decision, state: ArbiterState, n_confirm: int = 2) -> bool:
    """True iff the last n_confirm consecutive verdicts were COLLISION."""
    if d.verdict is Verdict.COLLISION:
        state.consecutive_collision_frames += 1
    else:
        state.consecutive_collision_frames = 0
    return state.consecutive_collision_frames >= n_confirm


class Arbiter:
    """Stateful per-stream wrapper binding the competition rules to a config."""

    def __init__(self, n_confirm: int = 2, suppression_window: int = 3,
                 require_both_lgmds: bool = True):
        self.n_confirm = n_confirm
        self.suppression_window = suppression_window
        self.require_both_lgmds = require_both_lgmds
        self.state = ArbiterState()

    def step(self, outputs: dict[NeuronId, NeuronOutput]) -> tuple[Decision, bool]:
        decision = compete(outputs, self.state,
                           suppression_window=self.suppression_window,
                           require_both_lgmds=self.require_both_lgmds)
        return decision, trigger_check(decision, self.state, self.n_confirm)
