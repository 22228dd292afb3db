"""Command-line entry point: ``sbm-lab <subcommand> ...``.

Exit status is 0 on success, 2 on usage errors (argparse) and 1 when a
command fails at runtime.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time

from . import __version__
from .entropy import DEFAULT_TOLERANCE, compare_partitions, partition_entropy
from .experiment import (SweepConfig, crossover, emit_csv, emit_svg,
                         local_search_min_entropy, run_sweep)
from .graph import (SbmModel, counts_from_density, read_graph, read_partition,
                    write_partition, format_graph)
from .sampler import SAMPLERS, SeedSpec
from .threshold import (SplitMergeSpec, eq2_lower_bound, find_threshold,
                        s1_of_c, s2_of_c)

log = logging.getLogger("sbm_lab")


def _u64(text):
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return value


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_entropy(args):
    g = read_graph(args.graph)
    p = read_partition(args.partition)
    s = partition_entropy(g, p)
    print("entropy_nats\tdisplay")
    print(f"{s:.6f}\t{round(s)}")


def cmd_compare(args):
    g = read_graph(args.graph)
    a = read_partition(args.partition)
    b = read_partition(args.partition_b)
    res = compare_partitions(g, a, b, args.tolerance)
    s_a = partition_entropy(g, a)
    s_b = partition_entropy(g, b)
    print("winner\tdelta_nats\tentropy_first\tentropy_second\ttolerance")
    print(f"{res.winner}\t{res.delta:.6f}\t{s_a:.6f}\t{s_b:.6f}\t{res.tolerance:g}")


def cmd_sample(args):
    if args.config:
        cfg = SweepConfig.from_json(args.config)
        d = cfg.d_values[0] if args.d is None else args.d
        model = counts_from_density(cfg.density_model(d))
        partition = None
    elif args.graph and args.partition:
        partition = read_partition(args.partition)
        model = SbmModel.of_graph(read_graph(args.graph), partition)
    else:
        raise ValueError("sample needs --config, or both --graph and --partition")
    g = SAMPLERS[args.mode](model, SeedSpec(args.seed, args.index), partition)
    _write(format_graph(g), args.out)


def cmd_sweep(args):
    cfg = SweepConfig.from_json(args.config)
    overrides = cfg.to_dict()
    if args.samples is not None:
        overrides["samples_per_d"] = args.samples
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.mode is not None:
        overrides["sampler"] = args.mode
    if args.tolerance is not None:
        overrides["tolerance"] = args.tolerance
    cfg = SweepConfig.from_dict(overrides)
    start = time.perf_counter()
    records = run_sweep(cfg)
    elapsed = time.perf_counter() - start
    _write(emit_csv(records), args.out)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(emit_svg({cfg.sampler: records}))
    cross = crossover(records)
    print(f"crossover\t{'none' if cross is None else cross}\truntime_s\t{elapsed:.3f}",
          file=sys.stderr)


def cmd_threshold(args):
    spec = SplitMergeSpec(args.s, args.q, args.m0, tuple(args.m))
    c = find_threshold(spec, args.c_max)
    print("c_star\tS1\tS2\tbound")
    if c is None:
        print("none\tnan\tnan\tnan")
        return
    try:
        bound = f"{eq2_lower_bound(spec, c):.6f}"
    except ValueError:
        bound = "nan"
    print(f"{c}\t{s1_of_c(spec, c):.6f}\t{s2_of_c(spec, c):.6f}\t{bound}")


def cmd_search(args):
    g = read_graph(args.graph)
    p = read_partition(args.partition)
    best = local_search_min_entropy(g, p, args.budget, SeedSpec(args.seed), args.tolerance)
    before, after = partition_entropy(g, p), partition_entropy(g, best)
    if args.out:
        write_partition(best, args.out)
    else:
        sys.stdout.write(" ".join(map(str, best.assignment.tolist())) + "\n")
    print(f"entropy_initial\t{before:.6f}\tentropy_final\t{after:.6f}", file=sys.stderr)


def build_parser():
    parser = argparse.ArgumentParser(prog="sbm-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="entropy of a partition of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("compare", help="compare the entropies of two partitions")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--partition-b", required=True)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sample", help="draw a graph from a microcanonical ensemble")
    p.add_argument("--graph")
    p.add_argument("--partition")
    p.add_argument("--config")
    p.add_argument("--d", type=float, help="swept density when sampling from --config")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--index", type=int, default=0, help="task index mixed into the seed")
    p.add_argument("--mode", choices=sorted(SAMPLERS), default="uniform")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("sweep", help="planted-vs-inverted recovery sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=_u64)
    p.add_argument("--mode", choices=sorted(SAMPLERS))
    p.add_argument("--tolerance", type=float)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="density threshold of a split/merge pair")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m0", type=float, required=True)
    p.add_argument("--m", type=float, nargs="+", required=True)
    p.add_argument("--c-max", type=int, default=100)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("search", help="swap local search for a lower-entropy partition")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"sbm-lab {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
