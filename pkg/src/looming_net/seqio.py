"""Sequence file I/O: raw LNSQ container, PGM (P5) directories, spec sidecars.

LNSQ layout: magic "LNSQ", then little-endian u32 width, height, frame count,
then `count` frames of width*height bytes each, row major.
"""

from __future__ import annotations

import re
import struct
from pathlib import Path

import numpy as np

from .stimuli import Kind, Speed, StimulusSequence, StimulusSpec

MAGIC = b"LNSQ"
_HEADER = struct.Struct("<III")


class SequenceFormatError(ValueError):
    """Malformed sequence file; `offset` is the failing byte offset."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (byte offset {offset})")


def write_raw(path: str | Path, frames: np.ndarray) -> None:
    frames = np.ascontiguousarray(frames, dtype=np.uint8)
    if frames.ndim != 3:
        raise ValueError("expected a (frames, height, width) array")
    n, h, w = frames.shape
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_HEADER.pack(w, h, n))
        fh.write(frames.tobytes())


def read_raw(path: str | Path) -> np.ndarray:
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise SequenceFormatError("bad magic, expected LNSQ", 0)
    if len(data) < 4 + _HEADER.size:
        raise SequenceFormatError("truncated header", len(data))
    w, h, n = _HEADER.unpack_from(data, 4)
    expected = 4 + _HEADER.size + w * h * n
    if len(data) < expected:
        raise SequenceFormatError(
            f"payload ends early, expected {expected} bytes", len(data))
    if len(data) > expected:
        raise SequenceFormatError("trailing bytes after payload", expected)
    body = np.frombuffer(data, dtype=np.uint8, count=w * h * n,
                         offset=4 + _HEADER.size)
    return body.reshape(n, h, w).copy()


def write_pgm(path: str | Path, frame: np.ndarray) -> None:
    frame = np.ascontiguousarray(frame, dtype=np.uint8)
    h, w = frame.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(frame.tobytes())


def read_pgm(path: str | Path) -> np.ndarray:
    data = Path(path).read_bytes()
    # header: magic, width, height, maxval; comments and whitespace between tokens
    m = re.match(rb"P5\s+(?:#[^\n]*\n\s*)*(\d+)\s+(\d+)\s+(\d+)\s", data)
    if m is None:
        raise SequenceFormatError(f"not a binary PGM: {path}", 0)
    w, h, maxval = (int(g) for g in m.groups())
    if maxval != 255:
        raise SequenceFormatError("only 8-bit PGM supported", m.start(3))
    off = m.end()
    if len(data) < off + w * h:
        raise SequenceFormatError("PGM payload ends early", len(data))
    return np.frombuffer(data, dtype=np.uint8, count=w * h, offset=off).reshape(h, w).copy()


def write_pgm_dir(dirpath: str | Path, frames: np.ndarray) -> None:
    d = Path(dirpath)
    d.mkdir(parents=True, exist_ok=True)
    for i, frame in enumerate(frames):
        write_pgm(d / f"frame_{i:05d}.pgm", frame)


def read_pgm_dir(dirpath: str | Path) -> np.ndarray:
    d = Path(dirpath)
    paths = sorted(d.glob("frame_*.pgm"))
    if not paths:
        raise FileNotFoundError(f"no frame_*.pgm files in {d}")
    frames = [read_pgm(p) for p in paths]
    shapes = {f.shape for f in frames}
    if len(shapes) != 1:
        raise SequenceFormatError(f"inconsistent frame dimensions: {shapes}", 0)
    return np.stack(frames)


def spec_to_text(spec: StimulusSpec) -> str:
    lines = [
        f"kind = {spec.kind.value}",
        f"object_luminance = {spec.object_luminance}",
        f"background_luminance = {spec.background_luminance}",
        f"speed = {spec.speed.value}",
        f"approach_angle_deg = {spec.approach_angle_deg}",
        f"frames = {spec.n_frames()}",
        f"seed = {spec.seed}",
        f"width = {spec.width}",
        f"height = {spec.height}",
    ]
    return "\n".join(lines) + "\n"


def spec_from_text(text: str) -> StimulusSpec:
    kv = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        kv[key] = value
    return StimulusSpec(
        kind=Kind(kv["kind"]),
        object_luminance=int(kv["object_luminance"]),
        background_luminance=int(kv["background_luminance"]),
        speed=Speed(kv["speed"]),
        approach_angle_deg=float(kv["approach_angle_deg"]),
        frames=int(kv["frames"]),
        seed=int(kv["seed"]),
        width=int(kv["width"]),
        height=int(kv["height"]),
    ).validate()


def _sidecar_path(path: Path) -> Path:
    return path.with_suffix(".spec")


def write_sequence(seq: StimulusSequence, path: str | Path) -> None:
    """Write frames as LNSQ plus a key=value spec sidecar when a spec is present."""
    path = Path(path)
    write_raw(path, seq.frames)
    if seq.spec is not None:
        _sidecar_path(path).write_text(spec_to_text(seq.spec))


def read_sequence(path: str | Path) -> StimulusSequence:
    """Read an LNSQ file or a directory of PGM frames back into a sequence.

    Ground-truth labels are not serialized; the returned sequence carries the
    sidecar spec when one exists.
    """
    path = Path(path)
    if path.is_dir():
        frames = read_pgm_dir(path)
        spec = None
    else:
        frames = read_raw(path)
        sidecar = _sidecar_path(path)
        spec = spec_from_text(sidecar.read_text()) if sidecar.exists() else None
    return StimulusSequence(spec=spec, frames=frames, ground_truth=[])
