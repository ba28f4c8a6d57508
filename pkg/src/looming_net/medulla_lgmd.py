"""Looming-selective medulla stage shared by the two collision-sensing neurons.

Local excitation in each ON/OFF channel competes with delayed lateral
inhibition spread by a small surround kernel. The dark-object-selective
variant raises the ON-channel inhibition gain so luminance-increment
excitation is rigorously cut down.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import cv2
import numpy as np

from .frontend import ChannelPair

# Distance-weighted surround: edge-adjacent 0.25, diagonal 0.125, zero center.
DEFAULT_SPATIAL_WEIGHTS = np.array(
    [[0.125, 0.25, 0.125],
     [0.25, 0.0, 0.25],
     [0.125, 0.25, 0.125]], dtype=np.float32)


@dataclass
class LgmdKernel:
    """Inhibition kernel and competition constants for one LGMD variant."""

    spatial_weights: np.ndarray = field(
        default_factory=lambda: DEFAULT_SPATIAL_WEIGHTS.copy())
    temporal_delay: int = 1
    bias_w: float = 0.3
    on_gain: float = 1.0  # 1.0 for LGMD-1; > 1 for the dark-selective LGMD-2

    def __post_init__(self):
        w = np.asarray(self.spatial_weights, dtype=np.float32)
        if w.shape != (3, 3) or w[1, 1] != 0.0 or (w < 0).any():
            raise ValueError("spatial weights must be 3x3, nonnegative, zero center")
        if self.temporal_delay < 1:
            raise ValueError("temporal delay must be >= 1 frame")
        if self.on_gain < 1.0:
            raise ValueError("on_gain must be >= 1")
        self.spatial_weights = w


def lateral_inhibition(delayed_excitation: np.ndarray, k: LgmdKernel,
                       on_channel: bool = False) -> np.ndarray:
    """Spread a delayed excitation grid through the surround kernel."""
    i = cv2.filter2D(delayed_excitation, -1, k.spatial_weights,
                     borderType=cv2.BORDER_REPLICATE)
    if on_channel and k.on_gain != 1.0:
        i *= np.float32(k.on_gain)
    return i


def summation_competition(e: np.ndarray, i: np.ndarray, w: float) -> np.ndarray:
    """Excitation cut down by weighted inhibition, rectified at zero."""
    if e.shape != i.shape:
        raise ValueError(f"grid dimensions differ: {e.shape} vs {i.shape}")
    return np.maximum(e - np.float32(w) * i, np.float32(0.0))


class SummationField:
    """Per-neuron delay buffers holding the excitation history of both channels."""

    def __init__(self, height: int, width: int, temporal_delay: int = 1):
        zeros = np.zeros((height, width), dtype=np.float32)
        self.on_history = deque([zeros.copy() for _ in range(temporal_delay)],
                                maxlen=temporal_delay)
        self.off_history = deque([zeros.copy() for _ in range(temporal_delay)],
                                 maxlen=temporal_delay)


class LgmdMedulla:
    """Stateful medulla stage for one LGMD variant over one frame stream."""

    def __init__(self, height: int, width: int, kernel: LgmdKernel | None = None):
        self.kernel = kernel if kernel is not None else LgmdKernel()
        self.field = SummationField(height, width, self.kernel.temporal_delay)

    def step(self, c: ChannelPair) -> np.ndarray:
        """Advance one frame; returns the combined rectified summation grid."""
        s_on, s_off = self.step_channels(c)
        return s_on + s_off

    def step_channels(self, c: ChannelPair) -> tuple[np.ndarray, np.ndarray]:
        """Like step() but returns the per-channel summation grids."""
        k = self.kernel
        i_on = lateral_inhibition(self.field.on_history[0], k, on_channel=True)
        i_off = lateral_inhibition(self.field.off_history[0], k)
        s_on = summation_competition(c.on, i_on, k.bias_w)
        s_off = summation_competition(c.off, i_off, k.bias_w)
        self.field.on_history.append(c.on.copy())
        self.field.off_history.append(c.off.copy())
        return s_on, s_off


class DualLgmdMedulla:
    """Fused stepper for both LGMD variants over one shared frame stream.

    Both neurons see the same excitation history and surround kernel; they
    differ only in the ON-channel inhibition gain. Sharing the surround
    filtering halves the per-frame filter work versus two LgmdMedulla
    instances while producing identical summation grids.
    """

    def __init__(self, height: int, width: int, k1: LgmdKernel, k2: LgmdKernel):
        if k1.temporal_delay != k2.temporal_delay:
            raise ValueError("fused neurons must share a temporal delay")
        if not np.array_equal(k1.spatial_weights, k2.spatial_weights):
            raise ValueError("fused neurons must share spatial weights")
        self.k1 = k1
        self.k2 = k2
        self.field = SummationField(height, width, k1.temporal_delay)

    def step_drives(self, c: ChannelPair) -> tuple[float, float]:
        """Advance one frame; returns both neurons' summed drives."""
        base_on = lateral_inhibition(self.field.on_history[0], self.k1)
        i_off = lateral_inhibition(self.field.off_history[0], self.k1)
        zero = np.float32(0.0)
        s_off1 = summation_competition(c.off, i_off, self.k1.bias_w)
        s_off2 = (s_off1 if self.k2.bias_w == self.k1.bias_w
                  else summation_competition(c.off, i_off, self.k2.bias_w))
        d1 = float(summation_competition(
            c.on, base_on * np.float32(self.k1.on_gain) if self.k1.on_gain != 1.0
            else base_on, self.k1.bias_w).sum() + s_off1.sum())
        d2 = float(summation_competition(
            c.on, base_on * np.float32(self.k2.on_gain) if self.k2.on_gain != 1.0
            else base_on, self.k2.bias_w).sum() + s_off2.sum())
        self.field.on_history.append(c.on.copy())
        self.field.off_history.append(c.off.copy())
        return d1, d2
