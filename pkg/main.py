#!/usr/bin/env python3
"""motifseek: planted motif discovery from the command line."""

import argparse
import os
import sys

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from config import MotifConfig, load_config, validate_config
from motifseek.bench import ExperimentConfig, run_accuracy_experiment, run_scaling_benchmark
from motifseek.errors import MotifSeekError
from motifseek.events import EventLog, fan_out, render_event
from motifseek.fasta import FastaRecord, read_fasta, write_fasta, write_outputs, write_truth
from motifseek.genmodel import generate_instance, parse_model
from motifseek.oracle import brute_force_consensus
from motifseek.params import AlgorithmType, derive_and_validate_params
from motifseek.pipeline import recover_with_restarts
from motifseek.streams import RandomStreams

console = Console()

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--seed", type=int, help="master seed (overrides the config)")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--quiet", action="store_true", help="do not print progress events")

    parser = argparse.ArgumentParser(prog="motifseek", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate a planted dataset")
    gen.add_argument("-n", type=int, default=600, help="sequence length")
    gen.add_argument("-k", type=int, default=20, help="number of sequences")
    gen.add_argument("--motif-len", type=int, default=15)
    gen.add_argument("--alpha", type=float, help="mutation rate (default 1/motif-len)")
    gen.add_argument("--model", default="theta", choices=["theta", "psi"])

    rec = sub.add_parser("recover", parents=[common], help="recover the motif from a FASTA")
    rec.add_argument("fasta")
    rec.add_argument("--algo", choices=[a.value for a in AlgorithmType])
    rec.add_argument("--pairs", type=int, help="Z1 pairs (default k // 4)")
    rec.add_argument("--restarts", type=int, help="independent Z1/Z2 shuffles (overrides the config)")
    rec.add_argument("--refine-rounds", type=int, help="consensus refinement rounds (overrides the config)")

    bench = sub.add_parser("bench", help="run an experiment")
    kinds = bench.add_subparsers(dest="kind", required=True)
    acc = kinds.add_parser("accuracy", parents=[common], help="accuracy over seeded trials")
    acc.add_argument("--trials", type=int, default=50)
    acc.add_argument("-n", type=int, default=600)
    acc.add_argument("-k", type=int, default=20)
    acc.add_argument("--motif-len", type=int, default=15)
    acc.add_argument("--alpha", type=float)
    acc.add_argument("--window", type=int)
    acc.add_argument("--algo", choices=[a.value for a in AlgorithmType])
    acc.add_argument("--model", default="theta", choices=["theta", "psi"])
    acc.add_argument("--timing", action="store_true", help="add a wall_time column")
    acc.add_argument("--restarts", type=int, help="independent Z1/Z2 shuffles per trial")
    acc.add_argument("--refine-rounds", type=int, help="consensus refinement rounds per trial")
    scale = kinds.add_parser("scaling", parents=[common], help="work counters against n")
    scale.add_argument(
        "--ns",
        type=int,
        nargs="+",
        default=[2**12, 2**13, 2**14, 2**15, 2**16],
    )
    scale.add_argument("--seeds", type=int, default=5)
    scale.add_argument("--algo", choices=[a.value for a in AlgorithmType])

    orc = sub.add_parser("oracle", parents=[common], help="brute-force consensus of a FASTA")
    orc.add_argument("fasta")
    orc.add_argument("-m", "--motif-len", type=int, required=True)
    return parser


# ── Commands ────────────────────────────────────────────────────────────


def cmd_gen(args, config: MotifConfig, on_event) -> int:
    alphabet = config.resolve_alphabet()
    alpha = args.alpha if args.alpha is not None else 1.0 / args.motif_len
    model = parse_model(args.model, config.kappa)
    streams = RandomStreams(config.seed)
    motif, planted = generate_instance(
        streams, args.k, args.n, args.motif_len, alpha, model, alphabet
    )
    os.makedirs(args.out, exist_ok=True)
    ids = [f"seq{i + 1}" for i in range(len(planted))]
    write_fasta(
        [FastaRecord(i, p.seq) for i, p in zip(ids, planted)],
        os.path.join(args.out, "sequences.fasta"),
        alphabet,
    )
    write_truth(planted, ids, os.path.join(args.out, "truth.tsv"))
    write_fasta([FastaRecord("motif", motif)], os.path.join(args.out, "motif.fasta"), alphabet)
    console.print(
        f"[green]Wrote {len(planted)} sequences of length {args.n} "
        f"with motif {alphabet.decode(motif)} to {args.out}[/green]"
    )
    return EXIT_OK


def cmd_recover(args, config: MotifConfig, on_event) -> int:
    alphabet = config.resolve_alphabet()
    records = read_fasta(args.fasta, alphabet)
    n = max(len(r.seq) for r in records)
    params, violations = derive_and_validate_params(
        alphabet.size, config.x, config.ledger_overrides(), n
    )
    if violations:
        console.print(
            f"[yellow]Outside guarantee regime: {', '.join(violations)}[/yellow]"
        )
    algo = AlgorithmType.parse(args.algo or config.algorithm_type)
    result = recover_with_restarts(
        [r.seq for r in records],
        algo,
        params,
        RandomStreams(config.seed),
        restarts=config.restarts,
        refine_rounds=config.refine_rounds,
        pairs=args.pairs,
        on_event=on_event,
        alphabet_size=alphabet.size,
    )
    if result.failed:
        console.print(f"[red]FAILURE: {result.failure_reason}[/red]")
        return EXIT_FAILURE

    z2_ids = [records[i].id for i in result.z2_indices]
    write_outputs(result, z2_ids, args.out, alphabet)
    console.print(
        Panel(
            f"[bold]{alphabet.decode(result.consensus)}[/bold]\n"
            f"[dim]length {len(result.consensus)}, anchor {result.anchor}, "
            f"{result.counters.window_comparisons} window comparisons[/dim]",
            title="Consensus",
            border_style="green",
        )
    )
    return EXIT_OK


def cmd_bench(args, config: MotifConfig, on_event) -> int:
    os.makedirs(args.out, exist_ok=True)
    algo = AlgorithmType.parse(args.algo or config.algorithm_type)
    alphabet = config.resolve_alphabet()

    if args.kind == "scaling":
        path = os.path.join(args.out, f"scaling_{algo.value}.tsv")
        report = run_scaling_benchmark(
            args.ns,
            algo,
            seeds=args.seeds,
            seed=config.seed,
            alpha=config.alpha or 0.0,
            overrides={k: v for k, v in config.ledger_overrides().items() if k != "alpha"},
            alphabet=alphabet,
            report_path=path,
            on_event=on_event,
        )
        table = Table(title=f"Scaling ({algo.value})", border_style="cyan")
        for column in ("n", "motif_len", "window_comparisons", "preprocessing_work"):
            table.add_column(column, justify="right")
        for p in report.points:
            table.add_row(
                str(p.n), str(p.motif_len), f"{p.window_comparisons:.0f}",
                f"{p.preprocessing_work:.0f}",
            )
        console.print(table)
        console.print(
            f"log-log slope: preprocessing {report.preprocessing_slope:.3f}, "
            f"window comparisons {report.window_slope:.3f}"
        )
        console.print(f"[dim]Report written to {path}[/dim]")
        return EXIT_OK

    overrides = {k: v for k, v in config.ledger_overrides().items() if k != "alpha"}
    experiment = ExperimentConfig(
        trials=args.trials,
        n=args.n,
        k=args.k,
        motif_len=args.motif_len,
        alpha=args.alpha if args.alpha is not None else config.alpha,
        algo=algo,
        seed=config.seed,
        overrides=overrides,
        report_path=os.path.join(args.out, f"accuracy_{algo.value}.tsv"),
        window=args.window,
        model=parse_model(args.model, config.kappa),
        alphabet=alphabet,
        x=config.x,
        refine_rounds=config.refine_rounds,
        restarts=config.restarts,
        include_timing=args.timing,
    )
    report = run_accuracy_experiment(experiment, on_event)
    table = Table(title=f"Accuracy ({algo.value})", border_style="cyan")
    table.add_column("Trials", justify="right")
    table.add_column("Accuracy", justify="right")
    table.add_column("Mean mismatches", justify="right")
    table.add_column("Mean window comparisons", justify="right")
    table.add_row(
        str(len(report.rows)),
        f"{report.accuracy:.1f}%",
        f"{report.mean_mismatches:.2f}",
        f"{report.mean_counters()['window_comparisons']:.0f}",
    )
    console.print(table)
    console.print(f"[dim]Report written to {experiment.report_path}[/dim]")
    return EXIT_OK


def cmd_oracle(args, config: MotifConfig, on_event) -> int:
    alphabet = config.resolve_alphabet()
    records = read_fasta(args.fasta, alphabet)
    result = brute_force_consensus(
        [r.seq for r in records], args.motif_len, alphabet.size, RandomStreams(config.seed)
    )
    os.makedirs(args.out, exist_ok=True)
    write_fasta(
        [FastaRecord("oracle_consensus", result.consensus)],
        os.path.join(args.out, "oracle.fasta"),
        alphabet,
    )
    offsets = ", ".join(str(o) for o in result.offsets)
    console.print(
        Panel(
            f"[bold]{alphabet.decode(result.consensus)}[/bold]\n"
            f"[dim]{result.label.value}, cost {result.cost}, offsets {offsets}[/dim]",
            title="Oracle consensus",
            border_style="cyan",
        )
    )
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "recover": cmd_recover,
    "bench": cmd_bench,
    "oracle": cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.seed is not None:
            config.seed = args.seed
        for key in ("restarts", "refine_rounds"):
            value = getattr(args, key, None)
            if value is not None:
                setattr(config, key, value)
        validate_config(config)
        log = EventLog(config.event_log_path, enabled=config.enable_event_log)
        on_event = fan_out(None if args.quiet else render_event, log)
        return COMMANDS[args.command](args, config, on_event)
    except MotifSeekError as e:
        console.print(f"[red]Error: {e}[/red]")
        return EXIT_USAGE
    except OSError as e:
        console.print(f"[red]Error: {e}[/red]")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
