"""Hybrid four-neuron collision-sensing model with stimuli and arena simulation."""

from .arbiter import Arbiter, Decision, Verdict
from .arena import (ArenaSimulation, ArenaWorld, EventKind, EventLedger,
                    RobotAgent, arena_model_config, render_camera,
                    run_experiment, success_rates)
from .config import (ConfigError, ModelConfig, load_config, parse_config,
                     save_config, serialize_config)
from .frontend import ChannelPair, LaminaFrontend
from .neurons import NeuronId, NeuronOutput, SpikeParams
from .pipeline import CollisionModel, FrameResult
from .seqio import SequenceFormatError, read_sequence, write_sequence
from .stimuli import Kind, Speed, StimulusSequence, StimulusSpec, generate

__all__ = [
    "Arbiter", "ArenaSimulation", "ArenaWorld", "ChannelPair", "CollisionModel",
    "ConfigError", "Decision", "EventKind", "EventLedger", "FrameResult",
    "Kind", "LaminaFrontend", "ModelConfig", "NeuronId", "NeuronOutput",
    "RobotAgent", "SequenceFormatError", "Speed", "SpikeParams",
    "StimulusSequence", "StimulusSpec", "Verdict", "arena_model_config",
    "generate", "load_config", "parse_config", "read_sequence", "render_camera",
    "run_experiment", "save_config", "serialize_config", "success_rates",
    "write_sequence",
]

__version__ = "0.1.0"
