"""Fair independent sets on cycles, their splitting variants, and the
reductions linking them to Schrijver graphs, the octahedral Tucker lemma
and consensus halving, with exact verifiers and desk-scale solvers."""

from __future__ import annotations

from .core import (
    CyclePartitionInstance,
    PathPartitionInstance,
    SignVector,
    StableKSubset,
    alt,
    negate,
    precedes,
    reduce_to_alternating,
    truncate_alternation,
)
from .errors import (
    BoundExceeded,
    DomainError,
    FairSetsError,
    InstanceError,
    InternalConsistencyError,
    OracleViolation,
    UsageError,
)
from .measures import ConHalvInstance, CutLabelSolution, PiecewiseConstantDensity
from .problems import IndependentSetSolution, OTuckerInstance, SchrijverInstance, SplitSolution

__version__ = "0.1.0"
