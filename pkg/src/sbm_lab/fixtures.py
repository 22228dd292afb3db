"""Small worked examples: the split/merge counterexamples and SBM_8.

SBM_3 and SBM_4 are reconstructions with empty off-diagonal blocks. The
reference entropies 17851 / 16403 include off-block edges of unknown density,
so only the ordering of the two is meaningful here.
"""
import numpy as np

from .graph import MultiGraph, Partition, SbmModel


def shared_graph() -> MultiGraph:
    """12-node graph generated by both SBM_1 and SBM_2.

    Nodes 0-5 are fully connected with multiplicity 10 (self-loops included);
    {6,7,8} and {9,10,11} are each fully connected with multiplicity 1.
    """
    W = np.zeros((12, 12), dtype=np.int64)
    W[0:6, 0:6] = 10
    W[6:9, 6:9] = 1
    W[9:12, 9:12] = 1
    return MultiGraph(W)


def sbm1_partition() -> Partition:
    return Partition.from_blocks([range(0, 6), range(6, 9), range(9, 12)])


def sbm2_partition() -> Partition:
    return Partition.from_blocks([range(0, 3), range(3, 6), range(6, 12)])


def sbm1_model() -> SbmModel:
    return SbmModel([6, 3, 3], np.diag([360, 9, 9]))


def sbm2_model() -> SbmModel:
    M = np.zeros((3, 3), dtype=np.int64)
    M[:2, :2] = 90
    M[2, 2] = 18
    return SbmModel([3, 3, 6], M)


def sbm3_reconstruction() -> SbmModel:
    """One 128-node block at density 0.6, 32 four-node blocks at 0.4."""
    sizes = np.array([128] + [4] * 32)
    M = np.zeros((33, 33), dtype=np.int64)
    M[0, 0] = round(0.6 * 128 ** 2)
    M[np.arange(1, 33), np.arange(1, 33)] = round(0.4 * 16)
    return SbmModel(sizes, M)


def sbm4_reconstruction() -> SbmModel:
    """SBM_3 inverted: the 128-node block cut into 32 blocks of 4.

    The big block's edges are spread as evenly as integers allow over the
    32 x 32 sub-blocks (row-major, larger share first).
    """
    big = round(0.6 * 128 ** 2)
    small = round(0.4 * 16)
    share, extra = divmod(big, 32 * 32)
    sub = np.full(32 * 32, share, dtype=np.int64)
    sub[:extra] += 1
    M = np.zeros((33, 33), dtype=np.int64)
    M[:32, :32] = sub.reshape(32, 32)
    M[32, 32] = 32 * small
    return SbmModel(np.array([4] * 32 + [128]), M)
