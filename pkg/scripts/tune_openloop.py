#!/usr/bin/env python3
"""Evaluate open-loop selectivity margins for a config across speeds and seeds.

Prints the drive statistics behind the qualitative figure criteria so scale
constants and gains can be placed with visible margins.
"""

import numpy as np

from looming_net.config import ModelConfig
from looming_net.medulla_lptc import direction_pool, emd_correlate
from looming_net.pipeline import CollisionModel
from looming_net.stimuli import Kind, Speed, StimulusSpec, generate


def drives(spec, cfg):
    m = CollisionModel(cfg)
    n = m.width * m.height
    nl = (m.width - cfg.lptc_sample_spacing) * m.height
    rows = []
    for f in generate(spec).frames:
        p = m.frontend.process_frame(f)
        d1, d2 = m.lgmds.step_drives(p)
        dr, dl = direction_pool(emd_correlate(p, m.emd))
        rows.append((d1 / n, d2 / n, dr / nl, dl / nl))
    return np.array(rows)


def report(cfg, seeds=(0,)):
    for speed in Speed:
        a = np.mean([drives(StimulusSpec(kind=Kind.APPROACH, speed=speed, seed=s), cfg)
                     for s in seeds], axis=0)
        r = np.mean([drives(StimulusSpec(kind=Kind.RECEDE, speed=speed, seed=s), cfg)
                     for s in seeds], axis=0)
        t = np.mean([drives(StimulusSpec(kind=Kind.TRANSLATE_R, speed=speed, seed=s), cfg)
                     for s in seeds], axis=0)
        g = np.mean([drives(StimulusSpec(kind=Kind.ANGULAR_APPROACH, speed=speed,
                                         approach_angle_deg=45.0, seed=s), cfg)
                     for s in seeds], axis=0)
        third = len(r) // 3
        print(f"  {speed.value:>5}: A1={a[:,0].max():.3f} A2={a[:,1].max():.3f} "
              f"R1e={r[:third,0].max():.3f} R1l={r[third:,0].max():.3f} R2={r[:,1].max():.3f} "
              f"T1={t[:,0].max():.3f} T2={t[:,1].max():.3f} Tr={t[:,2].max():.2f} "
              f"Alptc={max(a[:,2].max(), a[:,3].max()):.2f} "
              f"Gr={g[:,2].max():.2f} Gl={g[:,3].max():.3f} G1={g[:,0].max():.3f}")


if __name__ == "__main__":
    import itertools
    for a_up, gain in itertools.product((0.3, 0.5, 0.8), (4.0, 6.0)):
        cfg = ModelConfig(frontend_alpha_up=a_up, lgmd_on_gain_lgmd2=gain)
        print(f"alpha_up={a_up} on_gain={gain}")
        report(cfg)
