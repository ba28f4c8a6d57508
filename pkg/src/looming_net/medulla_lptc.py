"""Translation-selective medulla stage: correlation-type elementary motion detectors.

Each detector multiplies the delayed signal of one cell with the undelayed
signal of its horizontal neighbor and subtracts the mirrored product, giving
a signed grid where positive values are rightward motion evidence. ON and
OFF channels are correlated separately and summed.
"""

from __future__ import annotations

import numpy as np

from .frontend import ChannelPair


class EmdState:
    """Low-pass delayed copies of both channel planes for one frame stream."""

    def __init__(self, height: int, width: int,
                 sample_spacing: int = 2, delay_coeff: float = 0.7):
        if sample_spacing < 1:
            raise ValueError("sample_spacing must be >= 1 pixel")
        if not 0.0 < delay_coeff <= 1.0:
            raise ValueError("delay_coeff must be in (0, 1]")
        self.sample_spacing = sample_spacing
        self.delay_coeff = delay_coeff
        self.delayed_on = np.zeros((height, width), dtype=np.float32)
        self.delayed_off = np.zeros((height, width), dtype=np.float32)


def _correlate_plane(plane: np.ndarray, delayed: np.ndarray, spacing: int) -> np.ndarray:
    x1 = plane[:, :-spacing]
    x2 = plane[:, spacing:]
    d1 = delayed[:, :-spacing]
    d2 = delayed[:, spacing:]
    return d1 * x2 - x1 * d2


def emd_correlate(c: ChannelPair, state: EmdState) -> np.ndarray:
    """One correlator step; returns the signed direction grid (positive = rightward).

    The delayed planes are read before being updated, so they stand for the
    previous low-pass state at t - eps; with delay_coeff = 1 the delay is a
    pure one-frame lag.
    """
    s = state.sample_spacing
    r = (_correlate_plane(c.on, state.delayed_on, s)
         + _correlate_plane(c.off, state.delayed_off, s))
    a = np.float32(state.delay_coeff)
    for plane, delayed in ((c.on, state.delayed_on), (c.off, state.delayed_off)):
        step = plane - delayed
        step *= a
        delayed += step
    return r


def direction_pool(r: np.ndarray) -> tuple[float, float]:
    """Split a direction grid into (rightward, leftward) nonnegative drives."""
    pos = np.maximum(r, np.float32(0.0))
    return float(pos.sum()), float(pos.sum() - r.sum())
