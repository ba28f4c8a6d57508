"""Command-line front door: pipeline runs, stimulus generation, arena experiments.

Subcommands:
  run      feed a stored sequence through the model, write CSV reports
  stimgen  render a synthetic stimulus sequence to disk
  arena    run closed-loop multi-robot experiments and report success rates

Any config key can be overridden on the command line as --<key>=<value>
(e.g. --neurons.k_sp=4); the base config comes from --config, else the
LOOMING_NET_CONFIG environment variable, else built-in defaults.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

from .arena import (EventKind, arena_model_config, run_experiment,
                    success_rates)
from .config import ConfigError, KNOWN_KEYS, ModelConfig, load_config, set_key
from .neurons import NeuronId
from .pipeline import CollisionModel
from .seqio import SequenceFormatError, read_sequence, write_pgm_dir, write_sequence
from .stimuli import Kind, Speed, StimulusSpec, generate

ENV_CONFIG = "LOOMING_NET_CONFIG"

POTENTIALS_COLUMNS = ("frame", "u_lgmd1", "u_lgmd2", "u_lptc_r", "u_lptc_l",
                      "s_lgmd1", "s_lgmd2", "s_lptc_r", "s_lptc_l")
DECISIONS_COLUMNS = ("frame", "verdict", "effective_spikes", "trigger")
EVENTS_COLUMNS = ("frame", "agent_id", "kind", "context")


def _split_overrides(argv: list[str]) -> tuple[list[str], list[tuple[str, str]]]:
    """Pull --<config key>=<value> tokens out of the argument list."""
    rest, overrides = [], []
    for token in argv:
        if token.startswith("--") and "=" in token:
            key = token[2:].split("=", 1)[0]
            if key in KNOWN_KEYS:
                overrides.append(tuple(token[2:].split("=", 1)))
                continue
        rest.append(token)
    return rest, overrides


def _base_config(config_path: str | None) -> ModelConfig:
    path = config_path or os.environ.get(ENV_CONFIG)
    return load_config(path) if path else ModelConfig()


def _apply_overrides(config: ModelConfig,
                     overrides: list[tuple[str, str]]) -> ModelConfig:
    for key, raw in overrides:
        config = set_key(config, key, raw)
    return config.validate()


def _write_csv(path: Path, columns, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        writer.writerows(rows)


def cmd_run(args, overrides) -> int:
    config = _apply_overrides(_base_config(args.config), overrides)
    seq = read_sequence(args.sequence)
    n, height, width = seq.frames.shape
    model = CollisionModel(config, width=width, height=height)
    results = model.run(seq.frames)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pot_rows, dec_rows = [], []
    totals = {nid: 0 for nid in NeuronId}
    trigger_frames = []
    for r in results:
        o = r.outputs
        pot_rows.append((
            r.frame_index,
            f"{o[NeuronId.LGMD1].potential_u:.6f}",
            f"{o[NeuronId.LGMD2].potential_u:.6f}",
            f"{o[NeuronId.LPTC_R].potential_u:.6f}",
            f"{o[NeuronId.LPTC_L].potential_u:.6f}",
            o[NeuronId.LGMD1].spikes, o[NeuronId.LGMD2].spikes,
            o[NeuronId.LPTC_R].spikes, o[NeuronId.LPTC_L].spikes))
        dec_rows.append((r.frame_index, r.decision.verdict.value,
                         r.decision.effective_lgmd_spikes, int(r.trigger)))
        for nid in NeuronId:
            totals[nid] += o[nid].spikes
        if r.trigger:
            trigger_frames.append(r.frame_index)
    _write_csv(out / "potentials.csv", POTENTIALS_COLUMNS, pot_rows)
    _write_csv(out / "decisions.csv", DECISIONS_COLUMNS, dec_rows)

    print(f"frames: {n}")
    for nid in NeuronId:
        print(f"spikes {nid.name.lower()}: {totals[nid]}")
    print(f"trigger frames: {' '.join(map(str, trigger_frames)) or 'none'}")
    return 0


def cmd_stimgen(args, overrides) -> int:
    if overrides:
        raise ConfigError(overrides[0][0], "model config keys do not apply to stimgen")
    spec = StimulusSpec(
        kind=Kind(args.kind.upper()),
        object_luminance=args.object,
        background_luminance=args.background,
        speed=Speed(args.speed.upper()),
        approach_angle_deg=args.angle,
        frames=args.frames,
        seed=args.seed,
    ).validate()
    seq = generate(spec)
    if args.format == "pgm":
        write_pgm_dir(args.out, seq.frames)
    else:
        write_sequence(seq, args.out)
    print(f"wrote {len(seq)} frames to {args.out}")
    return 0


def cmd_arena(args, overrides) -> int:
    seeds = [int(s) for s in args.seeds.split(",") if s != ""]
    variants = [v.strip().upper() for v in args.variants.split(",") if v.strip()]
    n_frames = int(round(args.minutes * 60.0 * 30.0))
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    summary_rows = []
    aggregate: dict[str, list] = {}
    for variant in variants:
        per_seed = []
        for seed in seeds:
            if args.config:
                config = _base_config(args.config).replace(model_variant=variant)
            else:
                config = arena_model_config(variant)
            config = _apply_overrides(config, overrides)
            ledger = run_experiment(args.agents, seed, n_frames, config=config)
            _write_csv(out / f"events_{variant.lower()}_seed{seed}.csv",
                       EVENTS_COLUMNS,
                       [(e.frame, e.agent_id, e.kind.value, e.context)
                        for e in ledger.events])
            sr1, sr2 = success_rates(ledger)
            counts = {k: ledger.count(k) for k in EventKind}
            per_seed.append((sr1, sr2))
            summary_rows.append((
                variant, seed,
                counts[EventKind.AP], counts[EventKind.CP],
                counts[EventKind.AA], counts[EventKind.AT], counts[EventKind.CR],
                "" if sr1 is None else f"{sr1:.2f}",
                "" if sr2 is None else f"{sr2:.2f}"))
        aggregate[variant] = per_seed
    _write_csv(out / "summary.csv",
               ("variant", "seed", "AP", "CP", "AA", "AT", "CR", "SR1", "SR2"),
               summary_rows)

    print(f"{args.agents}-robot scene, {args.minutes:g} min x {len(seeds)} seeds")
    print(f"{'variant':<12} {'SR1':>8} {'SR2':>8}")
    for variant, per_seed in aggregate.items():
        sr1s = [a for a, b in per_seed if a is not None]
        sr2s = [b for a, b in per_seed if b is not None]
        f1 = f"{sum(sr1s) / len(sr1s):.1f}" if sr1s else "--"
        f2 = f"{sum(sr2s) / len(sr2s):.1f}" if sr2s else "--"
        print(f"{variant:<12} {f1:>8} {f2:>8}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="looming-net",
        description="Four-neuron visual collision sensing: pipeline, stimuli, arena.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the model on a stored sequence")
    p_run.add_argument("sequence", help="LNSQ file or directory of PGM frames")
    p_run.add_argument("--config", help="model config file")
    p_run.add_argument("--out-dir", default=".", help="report output directory")
    p_run.set_defaults(func=cmd_run)

    p_gen = sub.add_parser("stimgen", help="generate a synthetic stimulus")
    p_gen.add_argument("kind", choices=[k.value.lower() for k in Kind])
    p_gen.add_argument("--speed", default="S80",
                       choices=[s.value for s in Speed] + [s.value.lower() for s in Speed])
    p_gen.add_argument("--frames", type=int, default=None)
    p_gen.add_argument("--object", type=int, default=40, help="object luminance")
    p_gen.add_argument("--background", type=int, default=200,
                       help="background luminance")
    p_gen.add_argument("--angle", type=float, default=0.0,
                       help="approach angle in degrees (angular approaches)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--format", choices=("lnsq", "pgm"), default="lnsq")
    p_gen.add_argument("--out", required=True, help="output file or directory")
    p_gen.set_defaults(func=cmd_stimgen)

    p_arena = sub.add_parser("arena", help="run closed-loop arena experiments")
    p_arena.add_argument("--agents", type=int, default=4)
    p_arena.add_argument("--seeds", default="0,1,2,3,4",
                         help="comma-separated run seeds")
    p_arena.add_argument("--minutes", type=float, default=10.0,
                         help="simulated minutes per run")
    p_arena.add_argument("--variants", default="HYBRID,LGMDS_ONLY,LGMD2_ONLY")
    p_arena.add_argument("--config", help="model config file (arena defaults otherwise)")
    p_arena.add_argument("--out-dir", default=".", help="report output directory")
    p_arena.set_defaults(func=cmd_arena)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    rest, overrides = _split_overrides(argv)
    args = build_parser().parse_args(rest)
    try:
        return args.func(args, overrides)
    except (ConfigError, SequenceFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
