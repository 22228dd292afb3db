"""Graphs, partitions and block models.

Graphs are directed multigraphs with self-loops stored as dense integer
weight matrices. An undirected edge list is imported by writing both
orientations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels


def _frozen(array, dtype):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class MultiGraph:
    """Directed multigraph on nodes ``0..n-1``; ``W[i, j]`` counts edges i->j."""

    W: np.ndarray

    def __post_init__(self):
        W = np.asarray(self.W)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ValueError(f"weight matrix must be square, got shape {W.shape}")
        if W.size and not np.issubdtype(W.dtype, np.integer):
            if not np.all(W == np.round(W)):
                raise ValueError("edge multiplicities must be integers")
        W = _frozen(W, np.int64)
        if (W < 0).any():
            raise ValueError("edge multiplicities must be non-negative")
        object.__setattr__(self, "W", W)

    @property
    def n(self) -> int:
        return self.W.shape[0]

    @property
    def total_edges(self) -> int:
        return int(self.W.sum())

    @classmethod
    def empty(cls, n: int) -> "MultiGraph":
        return cls(np.zeros((n, n), dtype=np.int64))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple], directed: bool = True) -> "MultiGraph":
        """Build from ``(i, j)`` or ``(i, j, w)`` tuples; repeated pairs accumulate."""
        W = np.zeros((n, n), dtype=np.int64)
        for edge in edges:
            i, j = int(edge[0]), int(edge[1])
            w = int(edge[2]) if len(edge) > 2 else 1
            W[i, j] += w
            if not directed and i != j:
                W[j, i] += w
        return cls(W)

    def with_edge(self, i: int, j: int, w: int = 1) -> "MultiGraph":
        W = self.W.copy()
        W[i, j] += w
        return MultiGraph(W)

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return np.array_equal(self.W, other.W)

    def __hash__(self):
        return hash(self.W.tobytes())


@dataclass(frozen=True, eq=False)
class Partition:
    """Assignment of every node to one of ``p`` non-empty blocks."""

    assignment: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.assignment)
        if a.ndim != 1:
            raise ValueError("assignment must be one-dimensional")
        a = _frozen(a, np.int64)
        if a.size == 0:
            raise ValueError("partition of an empty node set")
        if a.min() < 0:
            raise ValueError("block ids must be non-negative")
        sizes = np.bincount(a)
        if (sizes == 0).any():
            missing = np.flatnonzero(sizes == 0).tolist()
            raise ValueError(f"block ids must be contiguous from 0; empty blocks {missing}")
        object.__setattr__(self, "assignment", a)
        object.__setattr__(self, "_sizes", _frozen(sizes, np.int64))

    @property
    def n(self) -> int:
        return self.assignment.shape[0]

    @property
    def p(self) -> int:
        return self._sizes.shape[0]

    @property
    def sizes(self) -> np.ndarray:
        return self._sizes

    def members(self, block: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == block)

    def blocks(self) -> list[list[int]]:
        return [self.members(b).tolist() for b in range(self.p)]

    @classmethod
    def from_blocks(cls, blocks: Sequence[Iterable[int]]) -> "Partition":
        blocks = [list(b) for b in blocks]
        n = sum(len(b) for b in blocks)
        a = np.full(n, -1, dtype=np.int64)
        for k, block in enumerate(blocks):
            for node in block:
                if not 0 <= node < n or a[node] != -1:
                    raise ValueError(f"node {node} missing, duplicated or out of range")
                a[node] = k
        return cls(a)

    @classmethod
    def contiguous(cls, sizes: Sequence[int]) -> "Partition":
        """Blocks of the given sizes over ascending node ids."""
        sizes = np.asarray(sizes, dtype=np.int64)
        return cls(np.repeat(np.arange(sizes.shape[0]), sizes))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(np.arange(n))

    def relabel(self, perm: Sequence[int]) -> "Partition":
        """Rename block ``b`` to ``perm[b]``."""
        perm = np.asarray(perm, dtype=np.int64)
        return Partition(perm[self.assignment])

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.assignment, other.assignment)

    def __hash__(self):
        return hash(self.assignment.tobytes())


@dataclass(frozen=True, eq=False)
class SbmModel:
    """Block sizes plus the integer block-to-block edge counts ``M``."""

    sizes: np.ndarray
    M: np.ndarray

    def __post_init__(self):
        sizes = _frozen(self.sizes, np.int64)
        M = np.asarray(self.M)
        if M.size and not np.issubdtype(M.dtype, np.integer) and not np.all(M == np.round(M)):
            raise ValueError("block edge counts must be integers")
        M = _frozen(M, np.int64)
        if sizes.ndim != 1 or (sizes <= 0).any():
            raise ValueError("block sizes must be a vector of positive integers")
        p = sizes.shape[0]
        if M.shape != (p, p):
            raise ValueError(f"block matrix shape {M.shape} does not match {p} blocks")
        if (M < 0).any():
            raise ValueError("block edge counts must be non-negative")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "M", M)

    @property
    def p(self) -> int:
        return self.sizes.shape[0]

    @property
    def n(self) -> int:
        return int(self.sizes.sum())

    def partition(self) -> Partition:
        return Partition.contiguous(self.sizes)

    @classmethod
    def of_graph(cls, graph: MultiGraph, partition: Partition) -> "SbmModel":
        return cls(partition.sizes, build_block_matrix(graph, partition))


@dataclass(frozen=True, eq=False)
class DensityModel:
    """Block sizes plus real per-pair densities; values above 1 are allowed."""

    sizes: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        sizes = _frozen(self.sizes, np.int64)
        D = _frozen(self.D, np.float64)
        p = sizes.shape[0]
        if sizes.ndim != 1 or (sizes <= 0).any():
            raise ValueError("block sizes must be a vector of positive integers")
        if D.shape != (p, p):
            raise ValueError(f"density matrix shape {D.shape} does not match {p} blocks")
        if not np.isfinite(D).all():
            raise ValueError("densities must be finite")
        if (D < 0).any():
            raise ValueError("densities must be non-negative")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "D", D)


def _check_dims(graph: MultiGraph, partition: Partition):
    if partition.n != graph.n:
        raise ValueError(f"partition covers {partition.n} nodes but graph has {graph.n}")


def build_block_matrix(graph: MultiGraph, partition: Partition) -> np.ndarray:
    """Edge counts between every ordered pair of blocks."""
    _check_dims(graph, partition)
    return kernels.block_matrix(graph.W, partition.assignment, partition.p)


def is_member(graph: MultiGraph, model: SbmModel, partition: Partition) -> bool:
    """True iff ``graph`` lies in the microcanonical ensemble of ``model``."""
    _check_dims(graph, partition)
    if partition.p != model.p or not np.array_equal(partition.sizes, model.sizes):
        raise ValueError("partition block sizes do not match the model")
    return bool(np.array_equal(build_block_matrix(graph, partition), model.M))


def split_merge_invert(partition: Partition, big_block: int, q: int) -> Partition:
    """Split the big block into ``q`` equal blocks and merge the ``q`` others.

    The big block is cut into consecutive runs of ascending node ids. New block
    ids follow the smallest member node of each block, so the result does not
    depend on how the input was labelled.
    """
    sizes = partition.sizes
    if q < 1:
        raise ValueError("q must be a positive integer")
    if not 0 <= big_block < partition.p:
        raise ValueError(f"big_block {big_block} is not a block id")
    s = int(sizes[big_block])
    if s % q:
        raise ValueError(f"big block of size {s} is not divisible by q={q}")
    small = [b for b in range(partition.p) if b != big_block]
    if len(small) != q:
        raise ValueError(f"expected {q} small blocks, found {len(small)}")
    if any(int(sizes[b]) != s // q for b in small):
        raise ValueError(f"small blocks must all have size {s // q}")

    big_nodes = partition.members(big_block)
    merged = np.flatnonzero(partition.assignment != big_block)
    groups = [big_nodes[k * (s // q):(k + 1) * (s // q)] for k in range(q)] + [merged]
    groups.sort(key=lambda g: g[0])
    a = np.empty(partition.n, dtype=np.int64)
    for k, g in enumerate(groups):
        a[g] = k
    return Partition(a)


def find_big_block(partition: Partition) -> tuple[int, int]:
    """Return ``(big_block, q)`` if the size profile admits inversion."""
    sizes = partition.sizes
    big = int(np.argmax(sizes))
    q = partition.p - 1
    ambiguous = q > 1 and (sizes == sizes[big]).sum() != 1
    if q < 1 or ambiguous:
        raise ValueError(f"size profile {sizes.tolist()} has no unique big block")
    s = int(sizes[big])
    if s % q or any(int(sizes[b]) != s // q for b in range(partition.p) if b != big):
        raise ValueError(f"size profile {sizes.tolist()} is not one block of s and q blocks of s/q")
    return big, q


def counts_from_density(model: DensityModel) -> SbmModel:
    """Round ``s_a * s_b * D[a, b]`` half-to-even for every ordered block pair."""
    sizes = model.sizes.astype(np.float64)
    M = np.rint(np.outer(sizes, sizes) * model.D).astype(np.int64)
    return SbmModel(model.sizes, M)


# --- text formats -----------------------------------------------------------

def write_graph(graph: MultiGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(graph))


def format_graph(graph: MultiGraph) -> str:
    lines = [f"n {graph.n}"]
    rows, cols = np.nonzero(graph.W)
    for i, j in zip(rows.tolist(), cols.tolist()):
        lines.append(f"{i} {j} {int(graph.W[i, j])}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> MultiGraph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise ValueError(f"first line must be 'n <node-count>', got {lines[0]!r}")
    n = int(head[1])
    W = np.zeros((n, n), dtype=np.int64)
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'i j w', got {line!r}")
        i, j, w = (int(x) for x in parts)
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"line {lineno}: node id out of range 0..{n - 1}")
        if w < 0:
            raise ValueError(f"line {lineno}: negative weight")
        W[i, j] += w
    return MultiGraph(W)


def read_graph(path) -> MultiGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def format_partition(partition: Partition) -> str:
    return " ".join(str(b) for b in partition.assignment.tolist()) + "\n"


def parse_partition(text: str) -> Partition:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty partition file")
    return Partition(np.array([int(t) for t in tokens], dtype=np.int64))


def write_partition(partition: Partition, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_partition(partition))


def read_partition(path) -> Partition:
    with open(path) as fh:
        return parse_partition(fh.read())
