"""Retina and lamina processing shared by all four neurons.

A raw luminance frame stream is turned into nonnegative ON/OFF motion
planes: frame differencing (retina), center-surround Difference of
Gaussians, half-wave rectified ON/OFF split, and fast-attack/slow-decay
temporal adaptation against background flicker.
"""

from __future__ import annotations

from dataclasses import dataclass

import cv2
import numpy as np

DEFAULT_WIDTH = 99
DEFAULT_HEIGHT = 72

_REPLICATE = cv2.BORDER_REPLICATE


@dataclass
class ChannelPair:
    """Co-registered nonnegative ON (luminance increment) and OFF (decrement) planes."""

    on: np.ndarray
    off: np.ndarray

    @property
    def shape(self):
        return self.on.shape


def gaussian_kernel(sigma: float, size: int) -> np.ndarray:
    """Unit-sum 2D Gaussian on a size x size support."""
    g1 = cv2.getGaussianKernel(size, sigma, ktype=cv2.CV_32F)
    k = g1 @ g1.T
    return (k / k.sum()).astype(np.float32)


def dog_kernel(sigma_inner: float = 1.0, size_inner: int = 3,
               sigma_outer: float = 2.0, size_outer: int = 7) -> np.ndarray:
    """Center-surround kernel: unit-sum inner Gaussian minus unit-sum outer Gaussian.

    The combined kernel sums to zero, so any spatially constant input maps to zero.
    """
    if size_outer < size_inner:
        raise ValueError("outer support must be at least as large as inner")
    inner = gaussian_kernel(sigma_inner, size_inner)
    outer = gaussian_kernel(sigma_outer, size_outer)
    pad = (size_outer - size_inner) // 2
    k = -outer
    k[pad:pad + size_inner, pad:pad + size_inner] += inner
    return k


def differential(prev: np.ndarray, curr: np.ndarray) -> np.ndarray:
    """Per-pixel luminance delta between two successive frames."""
    if prev.shape != curr.shape:
        raise ValueError(f"frame dimensions differ: {prev.shape} vs {curr.shape}")
    return curr.astype(np.float32) - prev.astype(np.float32)


def dog_filter(d: np.ndarray, kernel: np.ndarray | None = None) -> np.ndarray:
    """Center-surround spatial filtering with edge-replicated borders."""
    if kernel is None:
        kernel = dog_kernel()
    return cv2.filter2D(d.astype(np.float32), -1, kernel, borderType=_REPLICATE)


def split_on_off(d: np.ndarray) -> ChannelPair:
    """Half-wave rectify into ON (positive) and sign-inverted OFF (negative) planes."""
    zero = np.float32(0.0)
    return ChannelPair(on=np.maximum(d, zero), off=np.maximum(-d, zero))


def fdsr_adapt(x: np.ndarray, adapt: np.ndarray,
               alpha_up: float, alpha_down: float) -> np.ndarray:
    """One adaptation step for one channel plane; `adapt` is updated in place.

    Output subtracts the pre-update adaptation state and is rectified at zero.
    Attack (x >= a) tracks fast, decay tracks slow, so sustained input fades
    while flicker is absorbed by the lingering adaptation level.
    """
    diff = x - adapt
    out = np.maximum(diff, np.float32(0.0))
    # Fast attack on the positive part, slow decay on the negative part:
    # equivalent to rate = alpha_up where x >= a else alpha_down.
    diff -= out
    diff *= np.float32(alpha_down)
    adapt += diff
    np.multiply(out, np.float32(alpha_up), out=diff)
    adapt += diff
    return out


class LaminaFrontend:
    """Stateful per-stream frontend: owns the previous frame and adaptation planes.

    One instance per frame stream; processing is strictly sequential because the
    state carries temporal memory.
    """

    def __init__(self, width: int = DEFAULT_WIDTH, height: int = DEFAULT_HEIGHT,
                 dog: np.ndarray | None = None,
                 alpha_up: float = 0.8, alpha_down: float = 0.1):
        self.width = width
        self.height = height
        self.dog = dog_kernel() if dog is None else dog
        self.alpha_up = alpha_up
        self.alpha_down = alpha_down
        self.prev_frame: np.ndarray | None = None
        self.adapt_on = np.zeros((height, width), dtype=np.float32)
        self.adapt_off = np.zeros((height, width), dtype=np.float32)

    def reset(self) -> None:
        self.prev_frame = None
        self.adapt_on.fill(0.0)
        self.adapt_off.fill(0.0)

    def process_frame(self, frame: np.ndarray) -> ChannelPair:
        if frame.shape != (self.height, self.width):
            raise ValueError(
                f"expected {self.height}x{self.width} frame, got {frame.shape}")
        frame = frame.astype(np.float32, copy=False)
        if self.prev_frame is None:
            self.prev_frame = frame.copy()
            zero = np.zeros_like(self.adapt_on)
            return ChannelPair(on=zero, off=zero.copy())
        pair = split_on_off(differential(self.prev_frame, frame))
        self.prev_frame = frame.copy()
        # Center-surround filtering runs per channel, re-rectified, so the
        # opposite-polarity surround lobe of the DoG stays out of the other
        # channel; polarity separation is what the dark-selective neuron
        # depends on downstream.
        zero = np.float32(0.0)
        on = np.maximum(dog_filter(pair.on, self.dog), zero)
        off = np.maximum(dog_filter(pair.off, self.dog), zero)
        return ChannelPair(
            on=fdsr_adapt(on, self.adapt_on, self.alpha_up, self.alpha_down),
            off=fdsr_adapt(off, self.adapt_off, self.alpha_up, self.alpha_down),
        )
