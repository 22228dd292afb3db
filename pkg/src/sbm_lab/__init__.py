"""Microcanonical stochastic block model entropy, sampling and selection."""
from .entropy import (ComparisonResult, compare_partitions, log_likelihood,
                      log_multiset, model_entropy, partition_entropy)
from .experiment import (SweepConfig, SweepRecord, emit_csv, emit_svg,
                         local_search_min_entropy, recovery_rate, run_sweep)
from .graph import (DensityModel, MultiGraph, Partition, SbmModel,
                    build_block_matrix, counts_from_density, is_member,
                    split_merge_invert)
from .kernels import BACKEND
from .sampler import SeedSpec, derive_seed, sample_iid, sample_uniform
from .threshold import (SplitMergeSpec, eq2_lower_bound, find_threshold,
                        s1_of_c, s2_of_c)

__version__ = "0.1.0"
