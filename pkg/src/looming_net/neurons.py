"""Spiking neurons: spatial integration, sigmoid membrane potential, spike encoding.

The collision-sensing neurons map nonnegative drive into [0.5, 1); the
rightward cell maps into [0, 1) and the leftward cell mirrors it into
(-1, 0]. Spike counts come from an exponential supra-threshold mapping
floored to an integer, so several spikes per frame are possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class NeuronId(Enum):
    LGMD1 = "LGMD1"
    LGMD2 = "LGMD2"
    LPTC_R = "LPTC_R"
    LPTC_L = "LPTC_L"


@dataclass(frozen=True)
class SpikeParams:
    k_sp: float = 4.0
    t_sp: float = 0.7  # signed per neuron: +0.2 for LPTC_R, -0.2 for LPTC_L

    def __post_init__(self):
        if self.k_sp <= 0:
            raise ValueError("k_sp must be > 0")
        if not 0.0 < abs(self.t_sp) < 1.0:
            raise ValueError("|t_sp| must be in (0, 1)")


@dataclass(frozen=True)
class NeuronOutput:
    id: NeuronId
    potential_u: float
    spikes: int
    frame_index: int


def integrate_and_activate(neuron: NeuronId, drive: float,
                           cell_count: int, scale: float) -> float:
    """Sigmoid membrane potential from the spatially integrated medulla drive.

    `scale` sets the per-neuron drive normalization (drive per cell at which
    the sigmoid argument reaches 1).
    """
    if cell_count <= 0:
        raise ValueError("cell_count must be > 0")
    if drive < 0:
        raise ValueError("drive must be nonnegative")
    z = drive / (cell_count * scale)
    top = math.nextafter(1.0, 0.0)  # keep the range open at 1 despite fp saturation
    if neuron in (NeuronId.LGMD1, NeuronId.LGMD2):
        return min(1.0 / (1.0 + math.exp(-z)), top)
    u = min(2.0 / (1.0 + math.exp(-z)) - 1.0, top)
    if neuron is NeuronId.LPTC_L:
        return -u if u != 0.0 else 0.0  # avoid -0.0 at zero drive
    return u


def spike_encode(u: float, p: SpikeParams) -> int:
    """Integer spike count for one frame; zero strictly below threshold."""
    if abs(u) < abs(p.t_sp):
        return 0
    return math.floor(math.exp(p.k_sp * (abs(u) - abs(p.t_sp))))
