"""Exhaustive desk-scale solvers and the end-to-end pipelines.

Every solver is exhaustive over its search space and returns the first
solution in a fixed order, so results are reproducible:

* vertex sets compare as sorted tuples (``(1, 3) < (1, 3, 5) < (1, 4)``);
  pairs compare by ``(S1, S2)``;
* sign vectors compare lexicographically with ``0 < + < -``; OTucker pairs
  are ordered by ``(y, x)``;
* stable k-subsets compare as sorted tuples; Schrijver edges by
  ``(later set, earlier set)``.

Paths longer than the full-enumeration bound use a structured search over
uncovered-vertex placements (see :func:`_structured_path_split`), ordered by
number of uncovered vertices, then placement, then segment phases.

Sizes above the configured bounds are refused with :class:`BoundExceeded`.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .core import (
    MINUS,
    PLUS,
    CyclePartitionInstance,
    PathPartitionInstance,
    SignVector,
    StableKSubset,
    precedes,
    stable_subset_count,
    stable_subsets,
)
from .errors import BoundExceeded, InternalConsistencyError, OracleViolation, UsageError
from .measures import ConHalvInstance, CutLabelSolution, as_fraction, split_masses
from .problems import (
    IndependentSetSolution,
    OTuckerInstance,
    SchrijverInstance,
    SplitSolution,
    check_conhalv,
    check_fisc,
    check_fsplitc,
    check_fsplitp,
    check_otucker,
    check_schrijver,
)
from . import reductions as red
from .generators import KINDS, generate_instance  # noqa: F401  (re-exported)

MAX_FISC_N = 24
MAX_FSPLIT_N = 18
MAX_PATH_N = 600
MAX_OTUCKER_N = 10
MAX_SCHRIJVER_VERTICES = 10**5
MAX_CHROMATIC_VERTICES = 60

HALF = Fraction(1, 2)


class Route(str, Enum):
    VIA_SCHRIJVER = "via_schrijver"
    VIA_OTUCKER = "via_otucker"


@dataclass
class NodeCounter:
    nodes: int = 0

    def tick(self, k: int = 1) -> None:
        self.nodes += k


@dataclass(frozen=True)
class SolverReport:
    solution: Any
    nodes_explored: int
    elapsed: float


def run_with_report(solver: Callable[..., Any], *args: Any, **kwargs: Any) -> SolverReport:
    """Run a ``brute_*`` solver and record node count and wall time."""
    counter = NodeCounter()
    start = time.perf_counter()
    solution = solver(*args, counter=counter, **kwargs)
    return SolverReport(solution, counter.nodes, time.perf_counter() - start)


def _counter(counter: NodeCounter | None) -> NodeCounter:
    return counter if counter is not None else NodeCounter()


def _refuse(what: str, size: int, bound: int) -> None:
    if size > bound:
        raise BoundExceeded(f"{what} = {size} exceeds the configured bound {bound}")


# --- FISC ------------------------------------------------------------------


def brute_fisc(
    inst: CyclePartitionInstance, *, max_n: int = MAX_FISC_N, counter: NodeCounter | None = None
) -> IndependentSetSolution:
    """Lexicographically first fair independent set of the cycle."""
    _refuse("n", inst.n, max_n)
    counter = _counter(counter)
    n, m = inst.n, inst.m
    part = [p - 1 for p in inst.part_of]
    need = [max(0, math.ceil(HALF * s - 1)) for s in inst.sizes]
    # later[v][i]: vertices of part i strictly after v (v in 0..n)
    later = [[0] * m for _ in range(n + 1)]
    for v in range(n - 1, -1, -1):
        later[v] = later[v + 1][:]
        later[v][part[v]] += 1  # vertex v + 1
    counts = [0] * m
    chosen: list[int] = []

    def search(last: int) -> bool:
        counter.tick()
        if all(c >= r for c, r in zip(counts, need)):
            return True
        if any(counts[i] + later[last][i] < need[i] for i in range(m)):
            return False
        for v in range(last + 2 if chosen else 1, n + 1):
            if v == n and (n == 1 or (chosen and chosen[0] == 1)):
                continue
            chosen.append(v)
            counts[part[v - 1]] += 1
            if search(v):
                return True
            counts[part[v - 1]] -= 1
            chosen.pop()
        return False

    if not search(0):
        raise InternalConsistencyError(f"no fair independent set found for {inst}")
    sol = IndependentSetSolution(chosen)
    assert check_fisc(inst, sol) is None
    return sol


# --- FSplitC / FSplitP' ----------------------------------------------------


def _independent_sets(n: int, closed: bool, allowed: list[bool], part: list[int], m: int,
                      prune: Callable[[list[int], int], bool], accept: Callable[[list[int], list[int]], bool],
                      counter: NodeCounter) -> list[int] | None:
    """Pre-order DFS over independent sets in sorted-tuple order.

    ``prune(counts, last)`` cuts a subtree; ``accept(chosen, counts)`` stops the
    search at the current node.  Returns the accepted set or None.
    """
    counts = [0] * m
    chosen: list[int] = []

    def search(last: int) -> bool:
        counter.tick()
        if prune(counts, last):
            return False
        if accept(chosen, counts):
            return True
        for v in range(last + 2 if chosen else 1, n + 1):
            if not allowed[v]:
                continue
            if closed and v == n and (n == 1 or (chosen and chosen[0] == 1)):
                continue
            chosen.append(v)
            counts[part[v - 1]] += 1
            if search(v):
                return True
            counts[part[v - 1]] -= 1
            chosen.pop()
        return False

    return chosen if search(0) else None


def _full_split_search(inst, eps: Fraction, counter: NodeCounter) -> SplitSolution | None:
    n, m, closed = inst.n, inst.m, inst.closed
    sizes = inst.sizes
    part = [p - 1 for p in inst.part_of]
    later = [[0] * m for _ in range(n + 1)]
    for v in range(n - 1, -1, -1):
        later[v] = later[v + 1][:]
        later[v][part[v]] += 1
    lower = [(HALF - eps) * s - 1 for s in sizes]
    if closed:
        # both sides need the lower band and together cover |V_i| - 1
        hi1 = [s - 1 - max(0, math.ceil(lo)) for s, lo in zip(sizes, lower)]
        target_cover = None
    else:
        hi1 = [math.floor((HALF + eps) * s) for s in sizes]
        target_cover = n - m
    lo1 = [max(0, math.ceil(lo)) for lo in lower]

    def prune1(counts: list[int], last: int) -> bool:
        return any(c > h for c, h in zip(counts, hi1)) or any(
            counts[i] + later[last][i] < lo1[i] for i in range(m)
        )

    result: list[SplitSolution] = []

    def accept1(chosen: list[int], counts: list[int]) -> bool:
        if any(c < lo for c, lo in zip(counts, lo1)):
            return False
        s1 = set(chosen)
        allowed = [False] + [v not in s1 for v in range(1, n + 1)]
        if closed:
            want = [s - 1 - c for s, c in zip(sizes, counts)]
            if any(w < lo for w, lo in zip(want, lo1)):
                return False

            def prune2(c2: list[int], last: int) -> bool:
                return any(c2[i] > want[i] or c2[i] + later[last][i] < want[i] for i in range(m))

            def accept2(ch: list[int], c2: list[int]) -> bool:
                return c2 == want
        else:
            need = target_cover - len(chosen)
            free_after = [0] * (n + 2)
            for v in range(n, 0, -1):
                free_after[v - 1] = free_after[v] + (1 if allowed[v] else 0)

            def prune2(c2: list[int], last: int) -> bool:
                return sum(c2) + free_after[last] < need

            def accept2(ch: list[int], c2: list[int]) -> bool:
                return len(ch) >= need

        s2 = _independent_sets(n, closed, allowed, part, m, prune2, accept2, counter)
        if s2 is None:
            return False
        result.append(SplitSolution(chosen, s2))
        return True

    allowed_all = [False] + [True] * n
    if _independent_sets(n, closed, allowed_all, part, m, prune1, accept1, counter) is None:
        return None
    return result[0]


def _structured_path_split(inst: PathPartitionInstance, eps: Fraction, counter: NodeCounter) -> SplitSolution | None:
    """Exhaustive FSplitP' search over (uncovered set U, segment phases).

    Removing U from the path leaves segments that must alternate between S1
    and S2, so a solution is determined by U (at most m vertices) and which
    side takes the first vertex of every segment.  Candidates are scanned by
    |U|, then U in lexicographic order, then phases in binary order with the
    first segment most significant.  The last two elements of U are scanned
    with numpy arrays; earlier ones in Python loops.
    """
    n, m = inst.n, inst.m
    sizes = inst.sizes
    lo = np.array([max(0, math.ceil((HALF - eps) * s - 1)) for s in sizes], dtype=np.int64)
    hi = np.array([math.floor((HALF + eps) * s) for s in sizes], dtype=np.int64)
    # prefix[par, t, i]: vertices v <= t of part i with v % 2 == par
    prefix = np.zeros((2, n + 2, m), dtype=np.int64)
    for v in range(1, n + 2):
        prefix[:, v] = prefix[:, v - 1]
        if v <= n:
            prefix[v % 2, v, inst.part_of[v - 1] - 1] += 1

    def seg(start, end, phase: int):
        """S1 counts on segment [start, end] when S1 takes ``start`` iff phase == 0."""
        par = (np.asarray(start) + phase) % 2
        return prefix[par, np.asarray(end)] - prefix[par, np.asarray(start) - 1]

    def ok(total) -> np.ndarray:
        return np.all((total >= lo) & (total <= hi), axis=-1)

    def build(cuts: tuple[int, ...], phases: tuple[int, ...]) -> SplitSolution:
        s1: list[int] = []
        s2: list[int] = []
        bounds = (0,) + cuts + (n + 1,)
        for (a, b), ph in zip(zip(bounds, bounds[1:]), phases):
            for v in range(a + 1, b):
                ((s1 if (v - a - 1 + ph) % 2 == 0 else s2)).append(v)
        return SplitSolution(s1, s2)

    idx = np.arange(n + 1)
    for j in range(0, m + 1):
        if j == 0:
            for ph in (0, 1):
                counter.tick()
                if ok(seg(1, n, ph)):
                    return build((), (ph,))
            continue
        free = min(j, 2)
        for prefix_cuts in itertools.combinations(range(1, n + 1), j - free):
            a = prefix_cuts[-1] + 1 if prefix_cuts else 1
            if a + free - 1 > n:
                continue
            fixed_bounds = (0,) + prefix_cuts
            fixed_totals = []
            for phs in itertools.product((0, 1), repeat=len(prefix_cuts)):
                t = np.zeros(m, dtype=np.int64)
                for (s, e), ph in zip(zip(fixed_bounds, fixed_bounds[1:]), phs):
                    t = t + seg(s + 1, e - 1, ph)
                fixed_totals.append((phs, t))
            if free == 1:
                u = idx[a:]
                first = [seg(a, u - 1, ph) for ph in (0, 1)]
                last = [seg(u + 1, n, ph) for ph in (0, 1)]
                best = None
                for phs, t in fixed_totals:
                    for p1, p2 in itertools.product((0, 1), repeat=2):
                        counter.tick(len(u))
                        hit = np.flatnonzero(ok(t + first[p1] + last[p2]))
                        if hit.size:
                            cand = (int(hit[0]), phs + (p1, p2))
                            if best is None or cand[0] < best[0]:
                                best = cand
                if best is not None:
                    return build(prefix_cuts + (int(u[best[0]]),), best[1])
            else:
                u = idx[a:][:, None]
                w = idx[a:][None, :]
                valid = (w > u) & (w <= n)
                first = [seg(a, u - 1, ph) for ph in (0, 1)]
                middle = [seg(u + 1, w - 1, ph) for ph in (0, 1)]
                last = [seg(w + 1, n, ph) for ph in (0, 1)]
                best = None
                for phs, t in fixed_totals:
                    for p1, p2, p3 in itertools.product((0, 1), repeat=3):
                        counter.tick(int(valid.sum()))
                        mask = ok(t + first[p1] + middle[p2] + last[p3]) & valid
                        flat = np.flatnonzero(mask)
                        if flat.size:
                            cand = (int(flat[0]), phs + (p1, p2, p3))
                            if best is None or cand[0] < best[0]:
                                best = cand
                if best is not None:
                    r, c = divmod(best[0], valid.shape[1])
                    return build(prefix_cuts + (a + r, a + c), best[1])
    return None


def brute_fsplit(
    inst: CyclePartitionInstance | PathPartitionInstance,
    eps: Fraction | int | str = 0,
    *,
    max_n: int = MAX_FSPLIT_N,
    max_path_n: int = MAX_PATH_N,
    counter: NodeCounter | None = None,
) -> SplitSolution:
    """First eps-FSplitC (cycle) or eps-FSplitP' (path) solution.

    Instances up to ``max_n`` vertices are searched over all (S1, S2) pairs in
    sorted-tuple order; longer paths (up to ``max_path_n``) use the structured
    placement search.
    """
    eps = as_fraction(eps)
    counter = _counter(counter)
    check = check_fsplitc if inst.closed else check_fsplitp
    if inst.closed and (inst.n - inst.m) % 2:
        from .errors import InstanceError

        raise InstanceError(f"FSplitC needs n and m of equal parity (n={inst.n}, m={inst.m})")
    if not inst.closed and not inst.all_parts_odd():
        from .errors import InstanceError

        raise InstanceError("FSplitP' needs every part of odd size")
    if inst.n <= max_n:
        sol = _full_split_search(inst, eps, counter)
    elif not inst.closed:
        _refuse("path length", inst.n, max_path_n)
        sol = _structured_path_split(inst, eps, counter)
    else:
        _refuse("n", inst.n, max_n)
        sol = None
    if sol is None:
        raise InternalConsistencyError(f"no split found for {inst} at eps={eps}")
    problem = check(inst, sol, eps)
    if problem:
        raise InternalConsistencyError(f"solver produced an invalid split: {problem}")
    return sol


# --- OTucker ---------------------------------------------------------------


def brute_otucker(
    inst: OTuckerInstance,
    *,
    max_n: int = MAX_OTUCKER_N,
    lazy_budget: int = 20_000,
    counter: NodeCounter | None = None,
) -> tuple[SignVector, SignVector]:
    """First pair ``x ⪯ y`` with ``λ(x) = -λ(y)`` in ``(y, x)`` lexicographic order.

    A lazy scan handles the common case where an early ``y`` works; after
    ``lazy_budget`` pairs the labeling is tabulated once and the rest of the
    order is searched with a min-transform over ``⪯``.  Both phases follow the
    same order, so the answer does not depend on the budget.
    """
    n = inst.n
    _refuse("n", n, max_n)
    counter = _counter(counter)
    inst.lam.validate()
    found = _otucker_lazy(inst, lazy_budget, counter)
    if found is None:
        found = _otucker_tabulated(inst, counter)
    x, y = found
    if check_otucker(inst, x, y) is not None:
        raise InternalConsistencyError("search and verifier disagree")
    return x, y


def _otucker_lazy(inst: OTuckerInstance, budget: int, counter: NodeCounter):
    n, lam = inst.n, inst.lam
    cache: dict[int, int] = {}
    powers = [3 ** (n - 1 - i) for i in range(n)]

    def value(code: int) -> int:
        v = cache.get(code)
        if v is None:
            x = SignVector.from_code(code, n)
            v = lam.check_antipodal(x)
            cache[code] = v
            cache[(-x).code()] = -v
        return v

    spent = 0
    for ycode in range(1, 3**n):
        target = -value(ycode)
        weights = []
        c = ycode
        for p in powers:
            d, c = divmod(c, p)
            if d:
                weights.append(d * p)
        k = len(weights)
        # submasks in increasing code order: bit k-1-i selects weights[i]
        for mask in range(1, 1 << k):
            counter.tick()
            spent += 1
            xcode = sum(weights[i] for i in range(k) if mask >> (k - 1 - i) & 1)
            if value(xcode) == target:
                return SignVector.from_code(xcode, n), SignVector.from_code(ycode, n)
        if spent > budget:
            return None
    raise OracleViolation("no Tucker pair exists, so the labeling is not a valid antipodal map into ±[n-1]")


def _otucker_tabulated(inst: OTuckerInstance, counter: NodeCounter):
    n, lam = inst.n, inst.lam
    size = 3**n
    values = np.zeros(size, dtype=np.int64)
    for code, entries in enumerate(itertools.product((0, PLUS, MINUS), repeat=n)):
        if code:
            values[code] = lam(SignVector(entries))
    counter.tick(size)
    digits = np.array(list(itertools.product((0, 1, 2), repeat=n)), dtype=np.int64)
    powers = 3 ** np.arange(n - 1, -1, -1, dtype=np.int64)
    negated = ((3 - digits) % 3) @ powers
    bad = np.flatnonzero(values[negated] != -values)
    if bad.size:
        x = SignVector.from_code(int(bad[0]), n)
        raise OracleViolation(f"lambda({x}) = {values[bad[0]]} but lambda({-x}) = {values[negated[bad[0]]]}", query=x)
    # least[y, l]: smallest code x ⪯ y with λ(x) = l - (n - 1)
    width = 2 * n - 1
    none = np.int64(size)
    least = np.full((size, width), none, dtype=np.int64)
    codes = np.arange(1, size)
    least[codes, values[1:] + n - 1] = codes
    for i in range(n):
        view = least.reshape(3**i, 3, 3 ** (n - 1 - i), width)
        np.minimum(view[:, 1], view[:, 0], out=view[:, 1])
        np.minimum(view[:, 2], view[:, 0], out=view[:, 2])
    answer = least[codes, n - 1 - values[1:]]
    hit = np.flatnonzero(answer < none)
    if not hit.size:
        raise OracleViolation("no Tucker pair exists, so the labeling is not a valid antipodal map into ±[n-1]")
    ycode = int(codes[hit[0]])
    return SignVector.from_code(int(answer[hit[0]]), n), SignVector.from_code(ycode, n)


# --- Schrijver -------------------------------------------------------------


def brute_schrijver(
    inst: SchrijverInstance, *, max_vertices: int = MAX_SCHRIJVER_VERTICES, counter: NodeCounter | None = None
) -> tuple[StableKSubset, StableKSubset]:
    """First monochromatic edge: minimise the later set, then the earlier one."""
    n, k = inst.n, inst.k
    _refuse("stable subset count", stable_subset_count(n, k), max_vertices)
    counter = _counter(counter)
    buckets: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
    for elements in stable_subsets(n, k):
        counter.tick()
        s = StableKSubset(n, k, elements)
        c = inst.coloring(s)
        bits = sum(1 << v for v in elements)
        for other_bits, other in buckets.get(c, ()):
            if not other_bits & bits:
                e1 = StableKSubset(n, k, other)
                if check_schrijver(inst, e1, s) is not None:
                    raise InternalConsistencyError("search and verifier disagree")
                return e1, s
        buckets.setdefault(c, []).append((bits, elements))
    raise OracleViolation(
        f"no monochromatic edge: the coloring is not a map into [{inst.num_colors}] on S({n}, {k})"
    )


def kneser_coloring(n: int, k: int) -> dict[tuple[int, ...], int]:
    """The proper coloring ``c(S) = min(min S, n - 2k + 2)`` of S(n, k)."""
    top = n - 2 * k + 2
    return {s: min(s[0], top) for s in stable_subsets(n, k)}


def chromatic_number(
    n: int, k: int, *, max_vertices: int = MAX_CHROMATIC_VERTICES, counter: NodeCounter | None = None
) -> int:
    """Exact chromatic number of S(n, k) by DSATUR branch and bound."""
    if k < 1 or n < 2 * k:
        raise UsageError(f"need n >= 2k >= 2, got n={n}, k={k}")
    _refuse("stable subset count", stable_subset_count(n, k), max_vertices)
    counter = _counter(counter)
    verts = [frozenset(s) for s in stable_subsets(n, k)]
    size = len(verts)
    adj = [[j for j in range(size) if j != i and verts[i].isdisjoint(verts[j])] for i in range(size)]
    return _exact_chromatic(size, adj, counter)


def _exact_chromatic(size: int, adj: list[list[int]], counter: NodeCounter) -> int:
    # greedy DSATUR upper bound
    colors = [-1] * size
    for _ in range(size):
        v = max(
            (u for u in range(size) if colors[u] < 0),
            key=lambda u: (len({colors[w] for w in adj[u] if colors[w] >= 0}), len(adj[u])),
        )
        used = {colors[w] for w in adj[v]}
        colors[v] = next(c for c in range(size) if c not in used)
    best = max(colors) + 1 if size else 0

    colors = [-1] * size

    def pick() -> int | None:
        best_v, best_key = None, None
        for u in range(size):
            if colors[u] < 0:
                key = (len({colors[w] for w in adj[u] if colors[w] >= 0}), len(adj[u]))
                if best_key is None or key > best_key:
                    best_v, best_key = u, key
        return best_v

    def search(used: int) -> None:
        nonlocal best
        counter.tick()
        v = pick()
        if v is None:
            best = min(best, used)
            return
        taken = {colors[w] for w in adj[v]}
        for c in range(min(used + 1, best - 1)):
            if c in taken:
                continue
            colors[v] = c
            search(max(used, c + 1))
            colors[v] = -1
            if best <= used:
                return

    search(0)
    return best


# --- Pipelines -------------------------------------------------------------


def pipeline_solve_fisc(
    inst: CyclePartitionInstance,
    route: Route | str = Route.VIA_SCHRIJVER,
    *,
    max_otucker_n: int = MAX_OTUCKER_N,
    max_vertices: int = MAX_SCHRIJVER_VERTICES,
) -> IndependentSetSolution:
    """Solve FISC through the Schrijver reduction, optionally via OTucker too."""
    route = Route(route)
    if all(s <= 2 for s in inst.sizes):
        # every fairness floor is <= 0, so k = 0 and the empty set works
        return IndependentSetSolution(())
    sch, ctx = red.fisc_to_schrijver(inst)
    if route is Route.VIA_SCHRIJVER:
        e1, e2 = brute_schrijver(sch, max_vertices=max_vertices)
    else:
        ot = red.schrijver_to_otucker(sch)
        x, y = brute_otucker(ot, max_n=max_otucker_n)
        e1, e2 = red.otucker_backmap_to_schrijver(sch, x, y)
    sol = red.schrijver_backmap_to_fisc(ctx, e1, e2)
    problem = check_fisc(inst, sol)
    if problem:
        raise InternalConsistencyError(f"pipeline result fails FISC: {problem}")
    return sol


def pipeline_solve_conhalv(
    inst: ConHalvInstance, *, max_path_n: int = MAX_PATH_N
) -> CutLabelSolution:
    """ConHalv -> (eps/4)-FSplitP' -> structured split -> cuts and labels."""
    path, ctx = red.conhalv_to_fsplitp(inst)
    split = brute_fsplit(path, inst.eps / 4, max_path_n=max_path_n)
    sol = red.conhalv_backmap(ctx, split)
    problem = check_conhalv(inst, sol)
    if problem:
        raise InternalConsistencyError(f"pipeline result fails ConHalv: {problem}")
    for i, d in enumerate(inst.measures, 1):
        plus, _ = split_masses(d, sol)
        if abs(plus - HALF) > inst.eps / 2:
            raise InternalConsistencyError(f"measure {i}: |mu(I+) - 1/2| = {abs(plus - HALF)} exceeds eps/2")
    return sol


def pipeline_solve_fsplitc_via_otucker(
    inst: CyclePartitionInstance, *, max_otucker_n: int = MAX_OTUCKER_N
) -> SplitSolution:
    """FSplitC (eps = 0) through the OTucker labeling; n = m short-circuits to (∅, ∅)."""
    if inst.n == inst.m:
        return SplitSolution((), ())
    ot = red.fsplitc_to_otucker(inst)
    x, y = brute_otucker(ot, max_n=max_otucker_n)
    sol = red.otucker_backmap_to_fsplitc(inst, x, y)
    problem = check_fsplitc(inst, sol, 0)
    if problem:
        raise InternalConsistencyError(f"pipeline result fails FSplitC: {problem}")
    return sol


def is_within_precedes(x: SignVector, y: SignVector) -> bool:
    return precedes(x, y)
