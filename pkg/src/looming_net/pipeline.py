"""Full per-frame model: frontend -> medulla branches -> neurons -> arbiter."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arbiter import Arbiter, Decision
from .config import ModelConfig
from .frontend import DEFAULT_HEIGHT, DEFAULT_WIDTH, LaminaFrontend, dog_kernel
from .medulla_lgmd import DualLgmdMedulla, LgmdKernel
from .medulla_lptc import EmdState, direction_pool, emd_correlate
from .neurons import NeuronId, NeuronOutput, SpikeParams, integrate_and_activate, spike_encode


@dataclass(frozen=True)
class FrameResult:
    frame_index: int
    outputs: dict[NeuronId, NeuronOutput]
    decision: Decision
    trigger: bool


class CollisionModel:
    """One stateful pipeline instance over one frame stream.

    Ablation variants: LGMDS_ONLY and LGMD2_ONLY force both translation-cell
    drives to zero (no veto); LGMD2_ONLY additionally declares collisions on
    LGMD-2 activity alone.
    """

    def __init__(self, config: ModelConfig | None = None,
                 width: int = DEFAULT_WIDTH, height: int = DEFAULT_HEIGHT):
        cfg = (config if config is not None else ModelConfig()).validate()
        self.config = cfg
        self.width = width
        self.height = height

        dog = dog_kernel(cfg.frontend_dog_sigma_inner, cfg.frontend_dog_size_inner,
                         cfg.frontend_dog_sigma_outer, cfg.frontend_dog_size_outer)
        self.frontend = LaminaFrontend(width, height, dog=dog,
                                       alpha_up=cfg.frontend_alpha_up,
                                       alpha_down=cfg.frontend_alpha_down)
        self.lgmds = DualLgmdMedulla(
            height, width,
            LgmdKernel(temporal_delay=cfg.lgmd_temporal_delay, bias_w=cfg.lgmd_bias_w),
            LgmdKernel(temporal_delay=cfg.lgmd_temporal_delay, bias_w=cfg.lgmd_bias_w,
                       on_gain=cfg.lgmd_on_gain_lgmd2))
        self.emd = EmdState(height, width,
                            sample_spacing=cfg.lptc_sample_spacing,
                            delay_coeff=cfg.lptc_delay_coeff)
        self.arbiter = Arbiter(
            n_confirm=cfg.arbiter_n_confirm,
            suppression_window=cfg.arbiter_suppression_window,
            require_both_lgmds=(cfg.model_variant != "LGMD2_ONLY"))

        self._lgmd_cells = width * height
        self._lptc_cells = (width - cfg.lptc_sample_spacing) * height
        self._lgmd_params = SpikeParams(cfg.neurons_k_sp, cfg.neurons_t_sp_lgmd)
        self._lptc_r_params = SpikeParams(cfg.neurons_k_sp, abs(cfg.neurons_t_sp_lptc))
        self._lptc_l_params = SpikeParams(cfg.neurons_k_sp, -abs(cfg.neurons_t_sp_lptc))
        self._lptc_enabled = cfg.model_variant == "HYBRID"
        self._frame_index = 0

    def process(self, frame: np.ndarray) -> FrameResult:
        cfg = self.config
        pair = self.frontend.process_frame(frame)

        drive1, drive2 = self.lgmds.step_drives(pair)
        if self._lptc_enabled:
            drive_r, drive_l = direction_pool(emd_correlate(pair, self.emd))
        else:
            drive_r, drive_l = 0.0, 0.0

        idx = self._frame_index
        outputs = {}
        for neuron, drive, cells, scale, params in (
            (NeuronId.LGMD1, drive1, self._lgmd_cells,
             cfg.neurons_scale_lgmd1, self._lgmd_params),
            (NeuronId.LGMD2, drive2, self._lgmd_cells,
             cfg.neurons_scale_lgmd2, self._lgmd_params),
            (NeuronId.LPTC_R, drive_r, self._lptc_cells,
             cfg.neurons_scale_lptc, self._lptc_r_params),
            (NeuronId.LPTC_L, drive_l, self._lptc_cells,
             cfg.neurons_scale_lptc, self._lptc_l_params),
        ):
            u = integrate_and_activate(neuron, drive, cells, scale)
            outputs[neuron] = NeuronOutput(id=neuron, potential_u=u,
                                           spikes=spike_encode(u, params),
                                           frame_index=idx)

        decision, trigger = self.arbiter.step(outputs)
        self._frame_index += 1
        return FrameResult(frame_index=idx, outputs=outputs,
                           decision=decision, trigger=trigger)

    def run(self, frames) -> list[FrameResult]:
        return [self.process(f) for f in frames]
