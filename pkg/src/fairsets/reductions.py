"""Forward instance maps and backward solution maps between the search problems.

Chain covered here::

    ConHalv -> FSplitP' -> FISC -> FSplitC -> OTucker
                  |          \\-> Schrijver -> OTucker
                  \\-> FSplitC (eps > 0)

Every back-map returns a solution of the source problem; when it meets a case
that a valid target solution cannot produce it raises
:class:`InternalConsistencyError` instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    MINUS,
    PLUS,
    CyclePartitionInstance,
    PathPartitionInstance,
    SignVector,
    StableKSubset,
    alt,
    truncate_alternation,
)
from .errors import InstanceError, InternalConsistencyError, UsageError
from .measures import ZERO_Q, ONE_Q, ConHalvInstance, CutLabelSolution, quantile_subdivide
from .oracles import (
    ColoringOracle,
    FiscColoring,
    FSplitCLambda,
    LambdaOracle,
    RelabelContext,
    SchrijverLambda,
    TableColoring,
    TableLambda,
    relabel_odd_parts,
)
from .problems import (
    IndependentSetSolution,
    OTuckerInstance,
    SchrijverInstance,
    SplitSolution,
    check_fisc,
)

__all__ = [
    "ColoringOracle",
    "LambdaOracle",
    "TableColoring",
    "TableLambda",
    "FiscColoring",
    "SchrijverLambda",
    "FSplitCLambda",
    "RelabelContext",
    "DiscretizationContext",
    "conhalv_to_fsplitp",
    "conhalv_backmap",
    "fsplitp_to_fisc",
    "fisc_backmap_to_fsplitp",
    "fisc_to_fsplitc",
    "fsplitc_backmap_to_fisc",
    "fsplitp_to_fsplitc",
    "fsplitc_backmap_to_fsplitp",
    "fisc_to_schrijver",
    "schrijver_backmap_to_fisc",
    "schrijver_to_otucker",
    "otucker_backmap_to_schrijver",
    "fsplitc_to_otucker",
    "otucker_backmap_to_fsplitc",
]


# --- ConHalv -> FSplitP' ---------------------------------------------------


@dataclass(frozen=True)
class DiscretizationContext:
    """Everything the ConHalv back-map needs about the constructed path.

    ``positions[v - 1]`` is the location in [0, 1] of path vertex ``v``;
    vertices of part ``m + 1`` are the interleaved connectors.
    """

    eps: Fraction
    delta: Fraction
    m: int
    block_bound: int
    positions: tuple[Fraction, ...]
    part_of: tuple[int, ...]
    imperfect_vertices: frozenset[int]
    parity_extra_vertices: frozenset[int]

    @property
    def interleave_part_index(self) -> int:
        return self.m + 1

    @property
    def n(self) -> int:
        return len(self.positions)


def discretization_step(eps: Fraction, m: int, block_bound: int) -> Fraction:
    return Fraction(eps) / (4 * (2 * block_bound + m + 3))


def conhalv_to_fsplitp(inst: ConHalvInstance) -> tuple[PathPartitionInstance, DiscretizationContext]:
    """Discretize the measures into an (eps/4)-FSplitP' path with m + 1 odd parts."""
    if inst.eps <= 0:
        raise UsageError("the discretization needs eps > 0")
    m, p = inst.m, inst.block_bound
    if inst.cut_budget < m + 1:
        raise UsageError(f"the reduction targets m + 1 = {m + 1} cuts, budget is {inst.cut_budget}")
    delta = discretization_step(inst.eps, m, p)

    # (position, part, creation index, imperfect, parity extra)
    originals: list[tuple[Fraction, int, int, bool, bool]] = []
    for i, d in enumerate(inst.measures, 1):
        subs = quantile_subdivide(d, delta)
        own = [(s.midpoint, i, c, s.imperfect, False) for c, s in enumerate(subs)]
        if len(own) % 2 == 0:
            own.append((ZERO_Q, i, len(own), False, True))
        originals.extend(own)
    originals.sort(key=lambda o: (o[0], o[1], o[2]))

    positions: list[Fraction] = []
    part_of: list[int] = []
    imperfect: set[int] = set()
    parity: set[int] = set()
    prev = None
    for pos, part, _, imp, extra in originals:
        positions.append(ZERO_Q if prev is None else (prev + pos) / 2)
        part_of.append(m + 1)
        positions.append(pos)
        part_of.append(part)
        v = len(positions)
        if imp:
            imperfect.add(v)
        if extra:
            parity.add(v)
        prev = pos
    if len(originals) % 2 == 0:
        positions.append(ONE_Q)
        part_of.append(m + 1)

    path = PathPartitionInstance.from_part_of(part_of)
    ctx = DiscretizationContext(
        eps=inst.eps,
        delta=delta,
        m=m,
        block_bound=p,
        positions=tuple(positions),
        part_of=tuple(part_of),
        imperfect_vertices=frozenset(imperfect),
        parity_extra_vertices=frozenset(parity),
    )
    return path, ctx


def conhalv_backmap(ctx: DiscretizationContext, sol: SplitSolution) -> CutLabelSolution:
    """Read the uncovered path vertices as cuts and label the pieces between them."""
    n, connector = ctx.n, ctx.interleave_part_index
    s1, s2 = set(sol.s1), set(sol.s2)
    uncovered = [v for v in range(1, n + 1) if v not in s1 and v not in s2]
    budget = ctx.m + 1
    if len(uncovered) > budget:
        raise UsageError(f"{len(uncovered)} uncovered vertices, at most {budget} allowed")
    for v in sorted(s2, reverse=True)[: budget - len(uncovered)]:
        s2.discard(v)
    if len(s2) + len(s1) + budget != n:
        raise UsageError("S2 is too small to pad the uncovered set")
    cut_vertices = sorted(v for v in range(1, n + 1) if v not in s1 and v not in s2)

    labels: list[int] = []
    bounds = [0] + cut_vertices + [n + 1]
    for a, b in zip(bounds, bounds[1:]):
        sides = set()
        for v in range(a + 1, b):
            if ctx.part_of[v - 1] != connector:
                sides.add(1 if v in s1 else 2)
        if sides == {1, 2}:
            raise InternalConsistencyError(f"piece between vertices {a} and {b} mixes S1 and S2 originals")
        labels.append(MINUS if sides == {2} else PLUS)

    points = [ZERO_Q] + [ctx.positions[u - 1] for u in cut_vertices] + [ONE_Q]
    pieces = [(points[j], points[j + 1], labels[j]) for j in range(len(labels))]
    return _normalize_pieces(pieces)


def _normalize_pieces(pieces: list[tuple[Fraction, Fraction, int]]) -> CutLabelSolution:
    """Drop zero-width pieces and merge equal-label neighbours."""
    merged: list[list] = []
    for lo, hi, label in pieces:
        if lo == hi:
            continue
        if merged and merged[-1][2] == label:
            merged[-1][1] = hi
        else:
            merged.append([lo, hi, label])
    return CutLabelSolution(tuple(p[0] for p in merged[1:]), tuple(p[2] for p in merged))


# --- FSplitP' -> FISC and FSplitP' -> FSplitC ------------------------------


def _require_odd_parts(inst: PathPartitionInstance) -> None:
    if not inst.all_parts_odd():
        raise InstanceError("every part must have odd size")


def fsplitp_to_fisc(inst: PathPartitionInstance) -> CyclePartitionInstance:
    """Close the path into a cycle; the partition is unchanged."""
    _require_odd_parts(inst)
    return CyclePartitionInstance(inst.n, inst.parts)


def fisc_backmap_to_fsplitp(inst: PathPartitionInstance, sol: IndependentSetSolution) -> SplitSolution:
    """Trim S to (|V_i| - 1)/2 per part and pair it with its clockwise successors."""
    cycle = fsplitp_to_fisc(inst)
    problem = check_fisc(cycle, sol)
    if problem:
        raise UsageError(f"not a FISC solution on the closed path: {problem}")
    s1: list[int] = []
    for part in inst.parts:
        inside = sorted(v for v in part if v in sol.vertices)
        s1.extend(inside[: (len(part) - 1) // 2])
    n = inst.n
    s2 = [(v % n) + 1 for v in s1]
    return SplitSolution(s1, s2)


def fsplitp_to_fsplitc(inst: PathPartitionInstance) -> CyclePartitionInstance:
    """Same closing construction, used for eps-FSplitC with eps > 0."""
    return fsplitp_to_fisc(inst)


def fsplitc_backmap_to_fsplitp(sol: SplitSolution) -> SplitSolution:
    """Identity: a cycle split is already a path split of the source."""
    return sol


# --- FISC -> FSplitC -------------------------------------------------------


def fisc_to_fsplitc(inst: CyclePartitionInstance) -> tuple[CyclePartitionInstance, int | None]:
    """Fix the parity of n by inserting vertex n + 1 (between n and 1) into the first even part."""
    if (inst.n - inst.m) % 2 == 0:
        return inst, None
    target = next(i for i, p in enumerate(inst.parts) if len(p) % 2 == 0)
    added = inst.n + 1
    parts = tuple(p + (added,) if i == target else p for i, p in enumerate(inst.parts))
    return CyclePartitionInstance(added, parts), added


def fsplitc_backmap_to_fisc(added_vertex: int | None, sol: SplitSolution) -> IndependentSetSolution:
    """Pick a side that does not hold both neighbours of the added vertex, then drop it."""
    if added_vertex is None:
        return IndependentSetSolution(sol.s1)
    n = added_vertex - 1
    neighbours = {n, 1}
    for side in (sol.s1, sol.s2):
        if not neighbours <= side:
            return IndependentSetSolution(v for v in side if v != added_vertex)
    raise InternalConsistencyError("both sides contain both neighbours of the added vertex")


# --- FISC -> Schrijver -----------------------------------------------------


def fisc_to_schrijver(inst: CyclePartitionInstance) -> tuple[SchrijverInstance, RelabelContext]:
    """Odd-trim the parts, renumber, and color S(2k + m, k) by the first overfull part."""
    coloring = FiscColoring(inst)
    ctx = coloring.context
    return SchrijverInstance(ctx.n_prime, ctx.k, coloring), ctx


def schrijver_backmap_to_fisc(ctx: RelabelContext, s1: StableKSubset, s2: StableKSubset) -> IndependentSetSolution:
    for s in (s1, s2):
        counts = [0] * ctx.m
        for v in s.elements:
            counts[ctx.new_part_of[v - 1] - 1] += 1
        if tuple(counts) != ctx.r:
            raise InternalConsistencyError(f"edge side {s.elements} has part counts {counts}, expected {ctx.r}")
    return IndependentSetSolution(ctx.new_to_old[v - 1] for v in s1.elements)


# --- Schrijver -> OTucker --------------------------------------------------


def schrijver_to_otucker(inst: SchrijverInstance) -> OTuckerInstance:
    return OTuckerInstance(inst.n, SchrijverLambda(inst.coloring))


def otucker_backmap_to_schrijver(
    inst: SchrijverInstance, x: SignVector, y: SignVector
) -> tuple[StableKSubset, StableKSubset]:
    lam = SchrijverLambda(inst.coloring)
    x, y = SignVector(x), SignVector(y)
    for w in (x, y):
        if lam.is_tie(w):
            return lam.edge_of(w)
    two_k = 2 * inst.k
    if alt(x) < two_k or alt(y) < two_k:
        raise InternalConsistencyError("a Tucker pair cannot involve a short-alternation vector here")
    zx = truncate_alternation(x, two_k)
    zy = truncate_alternation(y, two_k)
    if lam(x) > 0:
        a, b = zx.plus, zy.minus
    else:
        a, b = zx.minus, zy.plus
    return (
        StableKSubset(inst.n, inst.k, tuple(sorted(a))),
        StableKSubset(inst.n, inst.k, tuple(sorted(b))),
    )


# --- FSplitC -> OTucker ----------------------------------------------------


def fsplitc_to_otucker(inst: CyclePartitionInstance) -> OTuckerInstance:
    return OTuckerInstance(inst.n, FSplitCLambda(inst))


def otucker_backmap_to_fsplitc(inst: CyclePartitionInstance, x: SignVector, y: SignVector) -> SplitSolution:
    lam = FSplitCLambda(inst)
    x, y = SignVector(x), SignVector(y)
    jx, jy = lam.unbalanced_parts(x), lam.unbalanced_parts(y)
    if bool(jx) == bool(jy):
        raise InternalConsistencyError("exactly one vector of a Tucker pair should have J empty")
    w = y if jx else x
    return SplitSolution(w.plus, w.minus)
