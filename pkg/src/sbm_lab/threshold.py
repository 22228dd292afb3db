"""Closed-form entropies of a split/merge pair as the big block densifies.

Configuration 1 has one block of ``s`` nodes holding ``c * m0`` edges and
``q`` blocks of ``s / q`` nodes holding ``m_i`` edges each. Configuration 2
splits the big block into ``q`` equal blocks and merges the small ones, so
the ``c * m0`` edges spread evenly over ``q**2`` sub-blocks. Off-diagonal
blocks are empty in both.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .entropy import log_multiset
from .graph import SbmModel


@dataclass(frozen=True)
class SplitMergeSpec:
    s: int
    q: int
    m0: float
    m: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))
        if self.q < 1:
            raise ValueError("q must be at least 1")
        if self.s < self.q or self.s % self.q:
            raise ValueError(f"s={self.s} must be a positive multiple of q={self.q}")
        if self.m0 < 0 or any(mi < 0 for mi in self.m):
            raise ValueError("edge counts must be non-negative")
        if len(self.m) != self.q:
            raise ValueError(f"expected {self.q} small-block edge counts, got {len(self.m)}")

    @property
    def small_size(self) -> int:
        return self.s // self.q

    @property
    def const1(self) -> float:
        """Small blocks' contribution to S1; independent of c."""
        return float(np.sum(log_multiset(self.small_size ** 2, np.asarray(self.m, dtype=float))))

    @property
    def const2(self) -> float:
        """Merged block's contribution to S2; independent of c."""
        return log_multiset(self.s ** 2, float(sum(self.m)))


def s1_of_c(spec: SplitMergeSpec, c: float) -> float:
    return log_multiset(spec.s ** 2, c * spec.m0) + spec.const1


def s2_of_c(spec: SplitMergeSpec, c: float) -> float:
    q2 = spec.q ** 2
    return spec.const2 + q2 * log_multiset(spec.small_size ** 2, c * spec.m0 / q2)


def entropy_gap(spec: SplitMergeSpec, c: float) -> float:
    """``S1(c) - S2(c)``; positive once the split configuration wins."""
    return s1_of_c(spec, c) - s2_of_c(spec, c)


def eq2_lower_bound(spec: SplitMergeSpec, c: int) -> float:
    """``q^2 * sum_k ln(1 + (q^2-1) s^2 / (q^2 k + s^2 - q^2)) + C1 - C2``.

    The sum runs over ``k = 1 .. c*m0/q^2``, which must be an integer.
    """
    q2 = spec.q ** 2
    total = c * spec.m0
    if total != int(total) or int(total) % q2:
        raise ValueError(f"q^2={q2} must divide c*m0={total}")
    k = np.arange(1, int(total) // q2 + 1, dtype=np.float64)
    s2 = float(spec.s ** 2)
    terms = np.log1p((q2 - 1) * s2 / (q2 * k + s2 - q2))
    return float(q2 * terms.sum()) + spec.const1 - spec.const2


def explicit_models(spec: SplitMergeSpec, c: int) -> tuple[SbmModel, SbmModel]:
    """Block models of both configurations; needs ``q^2 | c*m0``."""
    q, q2 = spec.q, spec.q ** 2
    total = c * spec.m0
    if total != int(total) or int(total) % q2:
        raise ValueError(f"q^2={q2} must divide c*m0={total}")
    total = int(total)
    small = spec.small_size

    sizes1 = np.array([spec.s] + [small] * q)
    M1 = np.zeros((q + 1, q + 1), dtype=np.int64)
    M1[0, 0] = total
    M1[np.arange(1, q + 1), np.arange(1, q + 1)] = np.asarray(spec.m, dtype=np.int64)

    sizes2 = np.array([small] * q + [spec.s])
    M2 = np.zeros((q + 1, q + 1), dtype=np.int64)
    M2[:q, :q] = total // q2
    M2[q, q] = int(sum(spec.m))
    return SbmModel(sizes1, M1), SbmModel(sizes2, M2)


def find_threshold(spec: SplitMergeSpec, c_max: int) -> Optional[int]:
    """Smallest integer c in [1, c_max] with S2 < S1 at every integer up to c_max.

    Scans downward from ``c_max``; ``None`` if S2 >= S1 at ``c_max``.
    """
    if c_max < 1:
        raise ValueError("c_max must be at least 1")
    cs = np.arange(1, c_max + 1, dtype=np.float64)
    q2 = spec.q ** 2
    s1 = log_multiset(spec.s ** 2, cs * spec.m0) + spec.const1
    s2 = spec.const2 + q2 * log_multiset(spec.small_size ** 2, cs * spec.m0 / q2)
    wins = s2 < s1
    if not wins[-1]:
        return None
    losing = np.flatnonzero(~wins)
    return int(losing[-1]) + 2 if losing.size else 1
