"""Planted-vs-inverted recovery sweeps and block-size-preserving local search."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from . import kernels
from ._config import max_threads
from .entropy import DEFAULT_TOLERANCE, classify
from .graph import (DensityModel, MultiGraph, Partition, build_block_matrix,
                    counts_from_density, find_big_block, split_merge_invert)
from .sampler import SAMPLERS, SeedSpec

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepConfig:
    sizes: tuple
    density: np.ndarray
    d_values: tuple
    swept_entry: tuple = (0, 0)
    samples_per_d: int = 1000
    master_seed: int = 0
    sampler: str = "uniform"
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        D = np.array(self.density, dtype=np.float64)
        D.setflags(write=False)
        object.__setattr__(self, "density", D)
        object.__setattr__(self, "d_values", tuple(float(d) for d in self.d_values))
        object.__setattr__(self, "swept_entry", tuple(int(i) for i in self.swept_entry))
        p = len(self.sizes)
        if D.shape != (p, p):
            raise ValueError(f"density matrix shape {D.shape} does not match {p} blocks")
        if not self.d_values:
            raise ValueError("d_values must not be empty")
        if any(d < 0 or not math.isfinite(d) for d in self.d_values):
            raise ValueError("d_values must be finite and non-negative")
        if self.samples_per_d < 1:
            raise ValueError("samples_per_d must be at least 1")
        i, j = self.swept_entry
        if len(self.swept_entry) != 2 or not (0 <= i < p and 0 <= j < p):
            raise ValueError(f"swept_entry {self.swept_entry} is outside the {p}x{p} matrix")
        if self.sampler not in SAMPLERS:
            raise ValueError(f"sampler must be one of {sorted(SAMPLERS)}, got {self.sampler!r}")
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        known = {"sizes", "density", "swept_entry", "d_values", "samples_per_d",
                 "seed", "sampler", "tolerance"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key in ("sizes", "density", "d_values"):
            if key not in data:
                raise ValueError(f"config is missing {key!r}")
        return cls(
            sizes=data["sizes"],
            density=data["density"],
            d_values=data["d_values"],
            swept_entry=data.get("swept_entry", (0, 0)),
            samples_per_d=int(data.get("samples_per_d", 1000)),
            master_seed=int(data.get("seed", 0)),
            sampler=data.get("sampler", "uniform"),
            tolerance=float(data.get("tolerance", DEFAULT_TOLERANCE)),
        )

    @classmethod
    def from_json(cls, path) -> "SweepConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "sizes": list(self.sizes),
            "density": self.density.tolist(),
            "swept_entry": list(self.swept_entry),
            "d_values": list(self.d_values),
            "samples_per_d": self.samples_per_d,
            "seed": self.master_seed,
            "sampler": self.sampler,
            "tolerance": self.tolerance,
        }

    def density_model(self, d: float) -> DensityModel:
        D = self.density.copy()
        D[self.swept_entry] = d
        return DensityModel(np.asarray(self.sizes), D)


def sbm8_config(d_values=(0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40),
                samples_per_d=1000, seed=0, sampler="uniform") -> SweepConfig:
    """One 100-node block at density d, ten 10-node blocks at 0.15, 0.01 between."""
    p = 11
    D = np.full((p, p), 0.01)
    np.fill_diagonal(D, 0.15)
    D[0, 0] = 0.0
    return SweepConfig((100,) + (10,) * 10, D, d_values, (0, 0),
                       samples_per_d, seed, sampler)


def sbm7_config(d_values=(0.02, 0.04, 0.06, 0.08, 0.10, 0.15, 0.20, 0.25, 0.30),
                samples_per_d=1000, seed=0, sampler="uniform") -> SweepConfig:
    """Reconstructed: one 40-node block at d and four 10-node blocks.

    The small-block densities (0.08 inside, 0.01 between) are an assumption,
    chosen so the recovery rate crosses 50% near d = 0.08; the original matrix
    is only given as a figure.
    """
    p = 5
    D = np.full((p, p), 0.01)
    np.fill_diagonal(D, 0.08)
    D[0, 0] = 0.0
    return SweepConfig((40,) + (10,) * 4, D, d_values, (0, 0),
                       samples_per_d, seed, sampler)


@dataclass(frozen=True)
class SweepRecord:
    d: float
    n_samples: int
    n_correct_lower: int
    n_ties: int

    @property
    def pct_correct(self) -> float:
        return 100.0 * self.n_correct_lower / self.n_samples


def planted_and_inverted(sizes) -> tuple[Partition, Partition]:
    planted = Partition.contiguous(sizes)
    big, q = find_big_block(planted)
    return planted, split_merge_invert(planted, big, q)


def _pool_size(threads: Optional[int]) -> int:
    cap = max_threads()
    return cap if threads is None else max(1, min(threads, cap))


def sample_entropies(config: SweepConfig, d: float,
                     threads: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """Entropies of the planted and inverted partitions for every sample at ``d``.

    Sample ``k`` is seeded with ``derive_seed(master_seed, k)`` regardless of
    ``d`` or thread count.
    """
    planted, inverted = planted_and_inverted(config.sizes)
    model = counts_from_density(config.density_model(d))
    sample = SAMPLERS[config.sampler]

    def one(k):
        g = sample(model, SeedSpec(config.master_seed, k), planted)
        return (kernels.entropy_sum(planted.sizes, build_block_matrix(g, planted)),
                kernels.entropy_sum(inverted.sizes, build_block_matrix(g, inverted)))

    n = config.samples_per_d
    workers = _pool_size(threads)
    if workers == 1:
        pairs = [one(k) for k in range(n)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pairs = list(pool.map(one, range(n)))
    arr = np.array(pairs, dtype=np.float64).reshape(n, 2)
    return arr[:, 0], arr[:, 1]


def recovery_rate(config: SweepConfig, d: float, threads: Optional[int] = None) -> SweepRecord:
    """Count samples where the planted partition has strictly lower entropy."""
    s_planted, s_inverted = sample_entropies(config, d, threads)
    verdicts = [classify(x, config.tolerance) for x in s_planted - s_inverted]
    return SweepRecord(float(d), config.samples_per_d,
                       verdicts.count("first"), verdicts.count("tie"))


def run_sweep(config: SweepConfig, threads: Optional[int] = None) -> list[SweepRecord]:
    start = time.perf_counter()
    records = [recovery_rate(config, d, threads) for d in config.d_values]
    log.info("sweep of %d densities x %d samples took %.2fs",
             len(config.d_values), config.samples_per_d, time.perf_counter() - start)
    return records


def crossover(records: Sequence[SweepRecord], level: float = 50.0) -> Optional[float]:
    """First swept density whose pct_correct falls below ``level``."""
    for r in records:
        if r.pct_correct < level:
            return r.d
    return None


def local_search_min_entropy(graph: MultiGraph, initial: Partition, budget: int,
                             seed, tolerance: float = DEFAULT_TOLERANCE) -> Partition:
    """Hill-climb over swaps of two nodes in different blocks.

    Pairs are visited in one seeded random order, cyclically; a swap is kept
    iff it lowers the entropy by more than ``tolerance``. Stops after
    ``budget`` evaluated swaps or a full cycle without improvement. Block
    sizes never change.
    """
    if initial.n != graph.n:
        raise ValueError(f"partition covers {initial.n} nodes but graph has {graph.n}")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    seed = seed if isinstance(seed, SeedSpec) else SeedSpec(int(seed))
    rng = seed.rng()
    u, v = np.triu_indices(graph.n, k=1)
    order = rng.permutation(u.shape[0])
    pair_u = np.ascontiguousarray(u[order], dtype=np.int64)
    pair_v = np.ascontiguousarray(v[order], dtype=np.int64)

    assignment = initial.assignment.copy()
    M = build_block_matrix(graph, initial).copy()
    kernels.hill_climb(graph.W, assignment, M, initial.sizes.copy(),
                       pair_u, pair_v, int(budget), float(tolerance))
    return Partition(assignment)


# --- output -----------------------------------------------------------------

CSV_COLUMNS = ("d", "n_samples", "n_correct_lower", "n_ties", "pct_correct")


def _fmt_d(d: float) -> str:
    short = f"{d:.2f}"
    return short if float(short) == d else repr(float(d))


def emit_csv(records: Sequence[SweepRecord]) -> str:
    if not records:
        raise ValueError("no records to write")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([_fmt_d(r.d), r.n_samples, r.n_correct_lower, r.n_ties, repr(r.pct_correct)])
    return buf.getvalue()


def parse_csv(text: str) -> list[SweepRecord]:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [SweepRecord(float(r["d"]), int(r["n_samples"]),
                        int(r["n_correct_lower"]), int(r["n_ties"])) for r in rows]


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def emit_svg(series, width: int = 640, height: int = 400,
             title: str = "planted partition has lower entropy") -> str:
    """Line chart of pct_correct against d.

    ``series`` is a list of records or a mapping ``label -> records``; one
    polyline is drawn per series.
    """
    if not isinstance(series, dict):
        series = {"pct_correct": series}
    if not series or any(len(v) == 0 for v in series.values()):
        raise ValueError("no records to plot")
    left, right, top, bottom = 60, 20, 40, 50
    pw, ph = width - left - right, height - top - bottom
    ds = [r.d for recs in series.values() for r in recs]
    d_lo, d_hi = min(ds), max(ds)
    if d_hi == d_lo:
        d_lo, d_hi = d_lo - 0.5, d_hi + 0.5

    def x(d):
        return left + pw * (d - d_lo) / (d_hi - d_lo)

    def y(pct):
        return top + ph * (1.0 - pct / 100.0)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" '
           f'font-size="14">{escape(title)}</text>',
           f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
           f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>']
    for pct in (0, 25, 50, 75, 100):
        out.append(f'<text x="{left - 6}" y="{y(pct) + 4:.1f}" text-anchor="end" '
                   f'font-size="11">{pct}</text>')
    for d in sorted(set(ds)):
        out.append(f'<text x="{x(d):.1f}" y="{top + ph + 16}" text-anchor="middle" '
                   f'font-size="11">{_fmt_d(d)}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 12}" text-anchor="middle" '
               f'font-size="12">density d of the big block</text>')
    out.append(f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" font-size="12" '
               f'transform="rotate(-90 16 {top + ph / 2:.1f})">% correct lower</text>')
    for k, (label, recs) in enumerate(series.items()):
        color = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{x(r.d):.2f},{y(r.pct_correct):.2f}" for r in recs)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}">'
                   f'<title>{escape(str(label))}</title></polyline>')
        out.append(f'<text x="{left + pw - 4}" y="{top + 14 + 14 * k}" text-anchor="end" '
                   f'font-size="11" fill="{color}">{escape(str(label))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
