"""Deterministic synthetic stimuli: approach, recession, translation, angular approach.

All stimuli render an anti-aliased square against a uniform background on
99x72 grayscale frames. Recession is the exact frame reversal of the matched
approach; leftward translation is the exact horizontal mirror of the matched
rightward translation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .frontend import DEFAULT_HEIGHT, DEFAULT_WIDTH


class Kind(Enum):
    APPROACH = "APPROACH"
    RECEDE = "RECEDE"
    TRANSLATE_R = "TRANSLATE_R"
    TRANSLATE_L = "TRANSLATE_L"
    ANGULAR_APPROACH = "ANGULAR_APPROACH"


class Speed(Enum):
    """Stimulus speed levels; a full approach course lasts 90/60/40 frames."""
    S40 = "S40"
    S80 = "S80"
    S120 = "S120"


COURSE_FRAMES = {Speed.S40: 90, Speed.S80: 60, Speed.S120: 40}

MIN_SIZE_FRAC = 0.05   # starting square side, fraction of frame width
MAX_SIZE_FRAC = 0.85   # final square side, fraction of frame width
TRANSLATE_SIZE_FRAC = 0.30  # translating square side, fraction of frame height
RAMP_FRAMES = 6        # accel/decel ramp of the trapezoidal speed profile


@dataclass(frozen=True)
class StimulusSpec:
    kind: Kind = Kind.APPROACH
    object_luminance: int = 40
    background_luminance: int = 200
    speed: Speed = Speed.S80
    approach_angle_deg: float = 0.0
    frames: int | None = None  # defaults to the speed level's course length
    seed: int = 0
    width: int = DEFAULT_WIDTH
    height: int = DEFAULT_HEIGHT

    def n_frames(self) -> int:
        return self.frames if self.frames is not None else COURSE_FRAMES[self.speed]

    def validate(self) -> "StimulusSpec":
        if not (0 <= self.object_luminance <= 255
                and 0 <= self.background_luminance <= 255):
            raise ValueError("luminance values must be within [0, 255]")
        if self.object_luminance == self.background_luminance:
            raise ValueError("degenerate stimulus: zero object/background contrast")
        if self.n_frames() < 2:
            raise ValueError("a sequence needs at least 2 frames")
        if self.width < 4 or self.height < 4:
            raise ValueError("frame dimensions too small")
        return self


@dataclass(frozen=True)
class GroundTruth:
    label: str          # looming / receding / translating
    extent: float       # square side in pixels
    center_x: float


@dataclass
class StimulusSequence:
    spec: StimulusSpec | None
    frames: np.ndarray  # (n, height, width) uint8
    ground_truth: list[GroundTruth] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.frames)


def render_square(width: int, height: int, cx: float, cy: float, side: float,
                  object_luminance: float, background_luminance: float) -> np.ndarray:
    """Render one frame with a 1-pixel linearly anti-aliased axis-aligned square."""
    cols = np.arange(width, dtype=np.float64)
    rows = np.arange(height, dtype=np.float64)
    half = side / 2.0
    cov_x = np.clip(np.minimum(cx + half, cols + 1.0) - np.maximum(cx - half, cols), 0.0, 1.0)
    cov_y = np.clip(np.minimum(cy + half, rows + 1.0) - np.maximum(cy - half, rows), 0.0, 1.0)
    alpha = cov_y[:, None] * cov_x[None, :]
    lum = background_luminance + alpha * (object_luminance - background_luminance)
    return np.rint(lum).astype(np.uint8)


def _jitter(spec: StimulusSpec) -> tuple[float, float]:
    rng = np.random.default_rng(spec.seed)
    jx, jy = rng.uniform(-1.5, 1.5, size=2)
    return float(jx), float(jy)


def _course_profile(n: int, course: int) -> np.ndarray:
    """Monotone position profile in [0, 1] with a trapezoidal speed shape.

    Ramps over RAMP_FRAMES at either end of the course avoid an unphysical
    full-speed first step; the profile is reversal-symmetric, so a reversed
    sequence keeps the same shape. Frames past the course hold at 1.
    """
    steps = np.arange(1, course, dtype=np.float64)
    ramp = min(RAMP_FRAMES, (course - 1) / 2.0)
    speed = np.minimum(1.0, np.minimum(steps / ramp, (course - steps) / ramp))
    pos = np.concatenate([[0.0], np.cumsum(speed)])
    pos /= pos[-1]
    if n <= course:
        return pos[:n]
    return np.concatenate([pos, np.full(n - course, 1.0)])


def _approach_frames(spec: StimulusSpec, angle_deg: float):
    """Growing square; oblique approach foreshortens growth and drifts the center.

    Growth span scales with cos(angle); the drift follows the frontal growth
    schedule scaled by tan(angle), so an approach from the left (positive
    angle) drifts rightward. angle = 0 reduces exactly to frontal approach.
    """
    n = spec.n_frames()
    course = COURSE_FRAMES[spec.speed]
    jx, jy = _jitter(spec)
    s_min = MIN_SIZE_FRAC * spec.width
    s_max = MAX_SIZE_FRAC * spec.width
    cy = spec.height / 2.0 + jy
    cx_end = spec.width / 2.0 + jx
    theta = np.radians(angle_deg)
    span = (s_max - s_min) * np.cos(theta)
    slope = np.tan(theta)

    profile = _course_profile(n, course)
    frames = np.empty((n, spec.height, spec.width), dtype=np.uint8)
    truth = []
    for t in range(n):
        side = s_min + span * profile[t]
        half_end = (s_min + span) / 2.0
        cx = cx_end - slope * (half_end - side / 2.0)
        frames[t] = render_square(spec.width, spec.height, cx, cy, side,
                                  spec.object_luminance, spec.background_luminance)
        truth.append(GroundTruth("looming", side, cx))
    return frames, truth


def _translate_frames(spec: StimulusSpec):
    """Rightward crossing; the leftward variant mirrors these frames."""
    n = spec.n_frames()
    course = COURSE_FRAMES[spec.speed]
    jx, jy = _jitter(spec)
    side = TRANSLATE_SIZE_FRAC * spec.height
    cy = spec.height / 2.0 + jy
    start = -side / 2.0 + jx
    end = spec.width + side / 2.0 + jx

    profile = _course_profile(n, course)
    frames = np.empty((n, spec.height, spec.width), dtype=np.uint8)
    truth = []
    for t in range(n):
        cx = start + (end - start) * profile[t]
        frames[t] = render_square(spec.width, spec.height, cx, cy, side,
                                  spec.object_luminance, spec.background_luminance)
        truth.append(GroundTruth("translating", side, cx))
    return frames, truth


def generate(spec: StimulusSpec) -> StimulusSequence:
    """Render the stimulus described by `spec`; bit-identical for identical specs."""
    spec.validate()
    if spec.kind in (Kind.APPROACH, Kind.ANGULAR_APPROACH):
        angle = spec.approach_angle_deg if spec.kind is Kind.ANGULAR_APPROACH else 0.0
        frames, truth = _approach_frames(spec, angle)
    elif spec.kind is Kind.RECEDE:
        frames, truth = _approach_frames(spec, 0.0)
        frames = frames[::-1].copy()
        truth = [GroundTruth("receding", g.extent, g.center_x)
                 for g in reversed(truth)]
    elif spec.kind is Kind.TRANSLATE_R:
        frames, truth = _translate_frames(spec)
    elif spec.kind is Kind.TRANSLATE_L:
        frames, truth = _translate_frames(spec)
        frames = frames[:, :, ::-1].copy()
        truth = [GroundTruth(g.label, g.extent, spec.width - g.center_x)
                 for g in truth]
    else:
        raise ValueError(f"unknown stimulus kind: {spec.kind}")
    return StimulusSequence(spec=spec, frames=frames, ground_truth=truth)
