"""Solution containers and exact verifiers for the six search problems.

Each problem has a ``check_*`` function returning the first violated clause
as a human-readable string (or ``None``) and a boolean ``verify_*`` wrapper.
Malformed input raises; a wrong but well-formed solution only returns False.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import (
    CyclePartitionInstance,
    PathPartitionInstance,
    SignVector,
    StableKSubset,
    precedes,
)
from .errors import InstanceError, UsageError
from .measures import ConHalvInstance, CutLabelSolution, as_fraction, check_conhalv, verify_conhalv
from .oracles import ColoringOracle, LambdaOracle

__all__ = [
    "IndependentSetSolution",
    "SplitSolution",
    "SchrijverInstance",
    "OTuckerInstance",
    "ConHalvInstance",
    "CutLabelSolution",
    "check_fisc",
    "check_fsplitc",
    "check_fsplitp",
    "check_schrijver",
    "check_otucker",
    "check_conhalv",
    "verify_fisc",
    "verify_fsplitc",
    "verify_fsplitp",
    "verify_schrijver",
    "verify_otucker",
    "verify_conhalv",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class IndependentSetSolution:
    vertices: frozenset[int]

    def __init__(self, vertices: Iterable[int]) -> None:
        object.__setattr__(self, "vertices", frozenset(vertices))


@dataclass(frozen=True)
class SplitSolution:
    s1: frozenset[int]
    s2: frozenset[int]

    def __init__(self, s1: Iterable[int], s2: Iterable[int]) -> None:
        object.__setattr__(self, "s1", frozenset(s1))
        object.__setattr__(self, "s2", frozenset(s2))


@dataclass(frozen=True)
class SchrijverInstance:
    n: int
    k: int
    coloring: ColoringOracle

    def __post_init__(self) -> None:
        if self.k < 1 or self.n < 2 * self.k:
            raise UsageError(f"need n >= 2k >= 2, got n={self.n}, k={self.k}")
        if (self.coloring.n, self.coloring.k) != (self.n, self.k):
            raise UsageError("coloring is defined on a different Schrijver graph")

    @property
    def num_colors(self) -> int:
        return self.n - 2 * self.k + 1


@dataclass(frozen=True)
class OTuckerInstance:
    n: int
    lam: LambdaOracle

    def __post_init__(self) -> None:
        if self.n < 2:
            raise UsageError("need n >= 2")
        if self.lam.n != self.n:
            raise UsageError("labeling is defined for a different n")


def _fair_floor(size: int) -> Fraction:
    return HALF * size - 1


def check_fisc(inst: CyclePartitionInstance, sol: IndependentSetSolution) -> str | None:
    s = sol.vertices
    edge = inst.adjacent_pair(s)
    if edge is not None:
        return f"independence violated at edge {edge}"
    for i, (c, size) in enumerate(zip(inst.counts(s), inst.sizes), 1):
        if c < _fair_floor(size):
            return f"part {i}: |S ∩ V_{i}| = {c} < |V_{i}|/2 - 1 = {_fair_floor(size)}"
    return None


def verify_fisc(inst: CyclePartitionInstance, sol: IndependentSetSolution) -> bool:
    return check_fisc(inst, sol) is None


def _check_pair_basics(inst, sol: SplitSolution) -> str | None:
    inst.check_vertices(sol.s1 | sol.s2)
    common = sol.s1 & sol.s2
    if common:
        return f"S1 and S2 share vertex {min(common)}"
    for name, s in (("S1", sol.s1), ("S2", sol.s2)):
        edge = inst.adjacent_pair(s)
        if edge is not None:
            return f"{name}: independence violated at edge {edge}"
    return None


def check_fsplitc(inst: CyclePartitionInstance, sol: SplitSolution, eps: Fraction | int = 0) -> str | None:
    eps = as_fraction(eps)
    if (inst.n - inst.m) % 2:
        raise InstanceError(f"FSplitC needs n and m of equal parity (n={inst.n}, m={inst.m})")
    bad = _check_pair_basics(inst, sol)
    if bad:
        return bad
    c1, c2 = inst.counts(sol.s1), inst.counts(sol.s2)
    for i, size in enumerate(inst.sizes):
        if c1[i] + c2[i] != size - 1:
            return f"part {i + 1}: covers {c1[i] + c2[i]} of {size} vertices, expected {size - 1}"
    floor = lambda size: (HALF - eps) * size - 1  # noqa: E731
    for name, c in (("S1", c1), ("S2", c2)):
        for i, size in enumerate(inst.sizes):
            if c[i] < floor(size):
                return f"{name} part {i + 1}: count {c[i]} < (1/2 - eps)|V_{i + 1}| - 1 = {floor(size)}"
    return None


def verify_fsplitc(inst: CyclePartitionInstance, sol: SplitSolution, eps: Fraction | int = 0) -> bool:
    return check_fsplitc(inst, sol, eps) is None


def check_fsplitp(inst: PathPartitionInstance, sol: SplitSolution, eps: Fraction | int = 0) -> str | None:
    eps = as_fraction(eps)
    if not inst.all_parts_odd():
        raise InstanceError("FSplitP' needs every part of odd size")
    bad = _check_pair_basics(inst, sol)
    if bad:
        return bad
    covered = len(sol.s1) + len(sol.s2)
    if covered < inst.n - inst.m:
        return f"covers {covered} vertices, needs at least n - m = {inst.n - inst.m}"
    for i, (c, size) in enumerate(zip(inst.counts(sol.s1), inst.sizes), 1):
        lo, hi = (HALF - eps) * size - 1, (HALF + eps) * size
        if not lo <= c <= hi:
            return f"S1 part {i}: count {c} outside [{lo}, {hi}]"
    return None


def verify_fsplitp(inst: PathPartitionInstance, sol: SplitSolution, eps: Fraction | int = 0) -> bool:
    return check_fsplitp(inst, sol, eps) is None


def check_schrijver(inst: SchrijverInstance, s1: StableKSubset, s2: StableKSubset) -> str | None:
    for s in (s1, s2):
        if (s.n, s.k) != (inst.n, inst.k):
            raise UsageError(f"{s} is not a vertex of S({inst.n}, {inst.k})")
    c1, c2 = inst.coloring(s1), inst.coloring(s2)
    if not s1.isdisjoint(s2):
        return f"sets {set(s1.elements)} and {set(s2.elements)} are not disjoint"
    if c1 != c2:
        return f"colors differ: {c1} vs {c2}"
    return None


def verify_schrijver(inst: SchrijverInstance, s1: StableKSubset, s2: StableKSubset) -> bool:
    return check_schrijver(inst, s1, s2) is None


def check_otucker(inst: OTuckerInstance, x: SignVector, y: SignVector) -> str | None:
    x, y = SignVector(x), SignVector(y)
    for v in (x, y):
        if len(v) != inst.n:
            raise UsageError(f"{v} has length {len(v)}, expected {inst.n}")
        if v.is_zero():
            raise UsageError("OTucker vectors must be nonzero")
    lx = inst.lam.check_antipodal(x)
    ly = inst.lam.check_antipodal(y)
    if not precedes(x, y):
        return f"{x} does not precede {y}"
    if lx != -ly:
        return f"lambda(x) = {lx} is not -lambda(y) = {-ly}"
    return None


def verify_otucker(inst: OTuckerInstance, x: SignVector, y: SignVector) -> bool:
    return check_otucker(inst, x, y) is None
