"""Model configuration: defaults, validation, and flat key=value (de)serialization."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path

VARIANTS = ("HYBRID", "LGMDS_ONLY", "LGMD2_ONLY")


class ConfigError(ValueError):
    """Raised when a config file or value fails validation; names the field."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"config field '{key}': {message}")


@dataclass
class ModelConfig:
    # frontend (retina + lamina)
    frontend_dog_sigma_inner: float = 1.0
    frontend_dog_size_inner: int = 3
    frontend_dog_sigma_outer: float = 2.0
    frontend_dog_size_outer: int = 7
    frontend_alpha_up: float = 0.3
    frontend_alpha_down: float = 0.1

    # LGMD medulla
    lgmd_bias_w: float = 0.3
    lgmd_temporal_delay: int = 1
    lgmd_on_gain_lgmd2: float = 6.0

    # LPTC medulla (EMD correlators)
    lptc_delay_coeff: float = 0.7
    lptc_sample_spacing: int = 2

    # spiking neurons
    neurons_scale_lgmd1: float = 0.95
    neurons_scale_lgmd2: float = 0.47
    neurons_scale_lptc: float = 10.0
    neurons_k_sp: float = 4.0
    neurons_t_sp_lgmd: float = 0.7
    neurons_t_sp_lptc: float = 0.2

    # arbiter
    arbiter_n_confirm: int = 2
    arbiter_suppression_window: int = 3

    # model variant selection
    model_variant: str = "HYBRID"

    def validate(self) -> "ModelConfig":
        pos = [
            "frontend_dog_sigma_inner", "frontend_dog_sigma_outer",
            "neurons_scale_lgmd1", "neurons_scale_lgmd2", "neurons_scale_lptc",
            "neurons_k_sp",
        ]
        for name in pos:
            if getattr(self, name) <= 0:
                raise ConfigError(_key(name), "must be > 0")
        for name in ("frontend_alpha_up", "frontend_alpha_down"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ConfigError(_key(name), "must be in (0, 1]")
        if self.frontend_alpha_up <= self.frontend_alpha_down:
            raise ConfigError(_key("frontend_alpha_up"),
                              "fast attack must exceed slow decay (alpha_up > alpha_down)")
        for name in ("frontend_dog_size_inner", "frontend_dog_size_outer"):
            v = getattr(self, name)
            if v < 1 or v % 2 == 0:
                raise ConfigError(_key(name), "must be an odd positive size")
        if self.lgmd_bias_w < 0:
            raise ConfigError(_key("lgmd_bias_w"), "must be >= 0")
        if self.lgmd_temporal_delay < 1:
            raise ConfigError(_key("lgmd_temporal_delay"), "must be >= 1")
        if self.lgmd_on_gain_lgmd2 < 1.0:
            raise ConfigError(_key("lgmd_on_gain_lgmd2"), "must be >= 1")
        if not 0.0 < self.lptc_delay_coeff <= 1.0:
            raise ConfigError(_key("lptc_delay_coeff"), "must be in (0, 1]")
        if self.lptc_sample_spacing < 1:
            raise ConfigError(_key("lptc_sample_spacing"), "must be >= 1")
        if not 0.0 < abs(self.neurons_t_sp_lgmd) < 1.0:
            raise ConfigError(_key("neurons_t_sp_lgmd"), "|t_sp| must be in (0, 1)")
        if not 0.0 < abs(self.neurons_t_sp_lptc) < 1.0:
            raise ConfigError(_key("neurons_t_sp_lptc"), "|t_sp| must be in (0, 1)")
        if self.arbiter_n_confirm < 1:
            raise ConfigError(_key("arbiter_n_confirm"), "must be >= 1")
        if self.arbiter_suppression_window < 0:
            raise ConfigError(_key("arbiter_suppression_window"), "must be >= 0")
        if self.model_variant not in VARIANTS:
            raise ConfigError(_key("model_variant"),
                              f"must be one of {', '.join(VARIANTS)}")
        return self

    def replace(self, **kwargs) -> "ModelConfig":
        return dataclasses.replace(self, **kwargs).validate()


def _key(field_name: str) -> str:
    """Attribute name -> namespaced config key, e.g. lgmd_bias_w -> lgmd.bias_w."""
    prefix, rest = field_name.split("_", 1)
    return f"{prefix}.{rest}"


def _field_for_key(key: str) -> str:
    return key.replace(".", "_", 1)


_FIELDS = {f.name: f for f in fields(ModelConfig)}
KNOWN_KEYS = tuple(_key(name) for name in _FIELDS)


def set_key(config: ModelConfig, key: str, raw: str) -> ModelConfig:
    """Return a copy of `config` with one namespaced key set from its string form."""
    name = _field_for_key(key)
    f = _FIELDS.get(name)
    if f is None:
        raise ConfigError(key, "unknown key")
    try:
        if f.type in ("int", int):
            value = int(raw)
        elif f.type in ("float", float):
            value = float(raw)
        else:
            value = raw.strip()
    except ValueError:
        raise ConfigError(key, f"cannot parse {raw!r} as {f.type}") from None
    return dataclasses.replace(config, **{name: value})


def parse_config(text: str) -> ModelConfig:
    """Parse flat key=value text (# comments, blank lines allowed) into a config."""
    config = ModelConfig()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected key=value, got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        config = set_key(config, key, raw)
    return config.validate()


def serialize_config(config: ModelConfig) -> str:
    lines = ["# looming-net model configuration"]
    prev_prefix = None
    for name in _FIELDS:
        key = _key(name)
        prefix = key.split(".", 1)[0]
        if prefix != prev_prefix:
            lines.append("")
            prev_prefix = prefix
        lines.append(f"{key} = {getattr(config, name)}")
    return "\n".join(lines) + "\n"


def load_config(path: str | Path) -> ModelConfig:
    return parse_config(Path(path).read_text())


def save_config(config: ModelConfig, path: str | Path) -> None:
    Path(path).write_text(serialize_config(config))
