"""Sequence container and PGM directory I/O, spec sidecars, error contracts."""

import numpy as np
import pytest

from looming_net.seqio import (SequenceFormatError, read_pgm, read_pgm_dir,
                               read_raw, read_sequence, spec_from_text,
                               spec_to_text, write_pgm, write_pgm_dir,
                               write_raw, write_sequence)
from looming_net.stimuli import Kind, Speed, StimulusSpec, generate


@pytest.fixture
def seq():
    return generate(StimulusSpec(kind=Kind.APPROACH, speed=Speed.S120, seed=5))


def test_raw_round_trip(tmp_path, seq):
    path = tmp_path / "a.lnsq"
    write_raw(path, seq.frames)
    assert np.array_equal(read_raw(path), seq.frames)


def test_raw_bad_magic(tmp_path):
    path = tmp_path / "bad.lnsq"
    path.write_bytes(b"XXXX" + b"\x00" * 16)
    with pytest.raises(SequenceFormatError) as ei:
        read_raw(path)
    assert ei.value.offset == 0


def test_raw_truncated_header(tmp_path):
    path = tmp_path / "trunc.lnsq"
    path.write_bytes(b"LNSQ\x01\x00")
    with pytest.raises(SequenceFormatError):
        read_raw(path)


def test_raw_payload_shorter_than_header_claims(tmp_path, seq):
    path = tmp_path / "short.lnsq"
    write_raw(path, seq.frames)
    data = path.read_bytes()
    path.write_bytes(data[:-10])
    with pytest.raises(SequenceFormatError) as ei:
        read_raw(path)
    assert "early" in str(ei.value)
    assert ei.value.offset == len(data) - 10


def test_raw_trailing_bytes(tmp_path, seq):
    path = tmp_path / "trail.lnsq"
    write_raw(path, seq.frames)
    with open(path, "ab") as fh:
        fh.write(b"junk")
    with pytest.raises(SequenceFormatError):
        read_raw(path)


def test_pgm_round_trip(tmp_path, seq):
    path = tmp_path / "f.pgm"
    write_pgm(path, seq.frames[0])
    assert np.array_equal(read_pgm(path), seq.frames[0])


def test_pgm_rejects_wrong_depth(tmp_path):
    path = tmp_path / "deep.pgm"
    path.write_bytes(b"P5\n2 2\n65535\n" + b"\x00" * 8)
    with pytest.raises(SequenceFormatError):
        read_pgm(path)


def test_pgm_dir_round_trip(tmp_path, seq):
    d = tmp_path / "frames"
    write_pgm_dir(d, seq.frames)
    assert np.array_equal(read_pgm_dir(d), seq.frames)
    assert np.array_equal(read_sequence(d).frames, seq.frames)


def test_spec_sidecar_round_trip():
    spec = StimulusSpec(kind=Kind.ANGULAR_APPROACH, speed=Speed.S40,
                        approach_angle_deg=45.0, seed=9)
    back = spec_from_text(spec_to_text(spec))
    assert back.kind is spec.kind
    assert back.speed is spec.speed
    assert back.approach_angle_deg == spec.approach_angle_deg
    assert back.seed == spec.seed
    assert back.n_frames() == spec.n_frames()


def test_sequence_round_trip_with_sidecar(tmp_path, seq):
    path = tmp_path / "seq.lnsq"
    write_sequence(seq, path)
    assert (tmp_path / "seq.spec").exists()
    back = read_sequence(path)
    assert np.array_equal(back.frames, seq.frames)
    assert back.spec.kind is seq.spec.kind
    assert back.spec.seed == seq.spec.seed
