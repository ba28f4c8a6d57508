#!/usr/bin/env python3
"""Report per-cell medulla drives across the stimulus battery.

Used to pick the sigmoid scale constants (neurons.scale_*): run it, look at
the drive ranges per neuron and stimulus, and place the scales so that the
reference dark approach peaks near U ~ 0.85 while recessions/translations
stay on the right side of the spiking thresholds.
"""

import argparse
import math

import numpy as np

from looming_net.config import ModelConfig
from looming_net.medulla_lptc import direction_pool, emd_correlate
from looming_net.pipeline import CollisionModel
from looming_net.stimuli import Kind, Speed, StimulusSpec, generate


def drive_traces(spec: StimulusSpec, config: ModelConfig):
    """Per-frame per-cell drives (lgmd1, lgmd2, lptc_r, lptc_l) for one stimulus."""
    model = CollisionModel(config)
    n_lgmd = model.width * model.height
    n_lptc = (model.width - config.lptc_sample_spacing) * model.height
    rows = []
    for frame in generate(spec).frames:
        pair = model.frontend.process_frame(frame)
        d1, d2 = model.lgmds.step_drives(pair)
        r = emd_correlate(pair, model.emd)
        dr, dl = direction_pool(r)
        rows.append((d1 / n_lgmd, d2 / n_lgmd, dr / n_lptc, dl / n_lptc))
    return np.array(rows)


def u_for(drive_per_cell, scale, lptc=False):
    z = drive_per_cell / scale
    if lptc:
        return 2.0 / (1.0 + math.exp(-z)) - 1.0
    return 1.0 / (1.0 + math.exp(-z))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--speed", default="S80", choices=[s.value for s in Speed])
    args = ap.parse_args()
    speed = Speed(args.speed)

    config = ModelConfig()
    battery = {
        "approach_dark": StimulusSpec(kind=Kind.APPROACH, speed=speed),
        "approach_bright": StimulusSpec(kind=Kind.APPROACH, speed=speed,
                                        object_luminance=200, background_luminance=40),
        "recede_dark": StimulusSpec(kind=Kind.RECEDE, speed=speed),
        "translate_r": StimulusSpec(kind=Kind.TRANSLATE_R, speed=speed),
        "angular_45": StimulusSpec(kind=Kind.ANGULAR_APPROACH, speed=speed,
                                   approach_angle_deg=45.0),
    }

    print(f"{'stimulus':<16} {'lgmd1 max':>10} {'lgmd2 max':>10} "
          f"{'lptc_r max':>10} {'lptc_l max':>10}")
    for name, spec in battery.items():
        t = drive_traces(spec, config)
        print(f"{name:<16} {t[:, 0].max():>10.4f} {t[:, 1].max():>10.4f} "
              f"{t[:, 2].max():>10.4f} {t[:, 3].max():>10.4f}")

    t = drive_traces(battery["approach_dark"], config)
    print("\nwith current scales:")
    print(f"  lgmd1 peak U = {u_for(t[:, 0].max(), config.neurons_scale_lgmd1):.3f}"
          f" (scale {config.neurons_scale_lgmd1})")
    print(f"  lgmd2 peak U = {u_for(t[:, 1].max(), config.neurons_scale_lgmd2):.3f}"
          f" (scale {config.neurons_scale_lgmd2})")
    tr = drive_traces(battery["translate_r"], config)
    print(f"  lptc_r peak U on translate = "
          f"{u_for(tr[:, 2].max(), config.neurons_scale_lptc, lptc=True):.3f}"
          f" (scale {config.neurons_scale_lptc})")


if __name__ == "__main__":
    main()
