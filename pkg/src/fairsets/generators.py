"""Seeded pseudo-random instances for every problem kind.

``params`` maps a name to an int or to an inclusive ``(lo, hi)`` range; the
generator draws from ranges with ``random.Random(seed)``, so the same seed and
params always give the same instance.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Mapping

from .core import CyclePartitionInstance, PathPartitionInstance, all_sign_vectors, stable_subsets
from .errors import UsageError
from .measures import ConHalvInstance, PiecewiseConstantDensity, as_fraction
from .oracles import TableColoring, TableLambda
from .problems import OTuckerInstance, SchrijverInstance

KINDS = (
    "fisc",
    "cycle_plus_triangles",
    "all_singleton",
    "single_part",
    "fsplitc",
    "fsplitp",
    "conhalv",
    "schrijver",
    "otucker",
)

MAX_TABLE_N = 12


def _range(params: Mapping[str, Any], name: str, default: Any = None) -> tuple[int, int]:
    value = params.get(name, default)
    if value is None:
        raise UsageError(f"missing parameter {name!r}")
    if isinstance(value, int) and not isinstance(value, bool):
        lo = hi = value
    else:
        try:
            lo, hi = (int(v) for v in value)
        except (TypeError, ValueError):
            raise UsageError(f"parameter {name!r} must be an int or a (lo, hi) pair, got {value!r}") from None
    if lo > hi:
        raise UsageError(f"parameter {name!r}: empty range [{lo}, {hi}]")
    return lo, hi


def _draw(rng: random.Random, params: Mapping[str, Any], name: str, minimum: int, default: Any = None) -> int:
    lo, hi = _range(params, name, default)
    if lo < minimum:
        raise UsageError(f"parameter {name!r} must be at least {minimum}, got range [{lo}, {hi}]")
    return rng.randint(lo, hi)


def random_partition(rng: random.Random, n: int, m: int) -> list[list[int]]:
    """Uniformly random vertex assignment with every one of the m parts nonempty."""
    if not 1 <= m <= n:
        raise UsageError(f"need 1 <= m <= n, got n={n}, m={m}")
    order = list(range(1, n + 1))
    rng.shuffle(order)
    parts: list[list[int]] = [[v] for v in order[:m]]
    for v in order[m:]:
        parts[rng.randrange(m)].append(v)
    return [sorted(p) for p in parts]


def random_odd_partition(rng: random.Random, n: int, m: int) -> list[list[int]]:
    """Random partition into m parts of odd size (needs n ≡ m mod 2)."""
    if not 1 <= m <= n or (n - m) % 2:
        raise UsageError(f"odd parts need 1 <= m <= n and n ≡ m (mod 2), got n={n}, m={m}")
    sizes = [1] * m
    for _ in range((n - m) // 2):
        sizes[rng.randrange(m)] += 2
    order = list(range(1, n + 1))
    rng.shuffle(order)
    parts, start = [], 0
    for s in sizes:
        parts.append(sorted(order[start : start + s]))
        start += s
    return parts


def _parity_draw(rng: random.Random, params: Mapping[str, Any]) -> tuple[int, int]:
    """Draw n, then m of the same parity with 1 <= m <= n."""
    n_lo, n_hi = _range(params, "n")
    m_lo, m_hi = _range(params, "m")
    options = [
        (n, m) for n in range(max(n_lo, 1), n_hi + 1) for m in range(max(m_lo, 1), min(m_hi, n) + 1) if (n - m) % 2 == 0
    ]
    if not options:
        raise UsageError(f"no (n, m) with n ≡ m (mod 2) in n∈[{n_lo}, {n_hi}], m∈[{m_lo}, {m_hi}]")
    ns = sorted({n for n, _ in options})
    n = rng.choice(ns)
    m = rng.choice([m for nn, m in options if nn == n])
    return n, m


def random_density(rng: random.Random, blocks: int, grid: int = 12) -> PiecewiseConstantDensity:
    """Density with the given number of blocks on a 1/grid lattice and small integer weights."""
    if not 1 <= blocks <= grid // 2:
        raise UsageError(f"blocks must be in [1, {grid // 2}], got {blocks}")
    points = sorted(rng.sample(range(grid + 1), 2 * blocks))
    intervals = [(Fraction(points[2 * j], grid), Fraction(points[2 * j + 1], grid)) for j in range(blocks)]
    weights = [rng.randint(1, 5) for _ in range(blocks)]
    return PiecewiseConstantDensity.from_weights(intervals, weights)


def random_coloring_table(rng: random.Random, n: int, k: int, colors: int | None = None) -> TableColoring:
    top = n - 2 * k + 1 if colors is None else colors
    return TableColoring(n, k, {s: rng.randint(1, top) for s in stable_subsets(n, k)})


def random_lambda_table(rng: random.Random, n: int) -> TableLambda:
    table: dict = {}
    for x in all_sign_vectors(n):
        if x not in table:
            v = rng.choice([i for i in range(-(n - 1), n) if i])
            table[x] = v
            table[-x] = -v
    return TableLambda(n, table)


def generate_instance(kind: str, params: Mapping[str, Any] | None = None, seed: int = 0):
    """Deterministic instance of ``kind`` for ``seed``; see :data:`KINDS`."""
    params = dict(params or {})
    rng = random.Random(seed)
    if kind == "fisc":
        n = _draw(rng, params, "n", 1)
        lo, hi = _range(params, "m", (1, n))
        m = rng.randint(max(lo, 1), min(hi, n)) if max(lo, 1) <= min(hi, n) else _fail_m(n, lo, hi)
        return CyclePartitionInstance(n, random_partition(rng, n, m))
    if kind == "cycle_plus_triangles":
        t = _draw(rng, params, "t", 1)
        order = list(range(1, 3 * t + 1))
        rng.shuffle(order)
        return CyclePartitionInstance(3 * t, [sorted(order[3 * j : 3 * j + 3]) for j in range(t)])
    if kind == "all_singleton":
        n = _draw(rng, params, "n", 1)
        return CyclePartitionInstance(n, [[v] for v in range(1, n + 1)])
    if kind == "single_part":
        n = _draw(rng, params, "n", 1)
        return CyclePartitionInstance(n, [list(range(1, n + 1))])
    if kind == "fsplitc":
        n, m = _parity_draw(rng, params)
        return CyclePartitionInstance(n, random_partition(rng, n, m))
    if kind == "fsplitp":
        n, m = _parity_draw(rng, params)
        return PathPartitionInstance(n, random_odd_partition(rng, n, m))
    if kind == "conhalv":
        m = _draw(rng, params, "measures", 1, 1)
        eps = as_fraction(params.get("eps", "1/2"))
        if eps <= 0:
            raise UsageError("eps must be positive for generated ConHalv instances")
        lo, hi = _range(params, "blocks", 2)
        if lo < 1:
            raise UsageError("blocks must be at least 1")
        measures = tuple(random_density(rng, rng.randint(lo, hi)) for _ in range(m))
        return ConHalvInstance(measures, eps, int(params.get("cut_budget", m + 1)))
    if kind == "schrijver":
        n = _draw(rng, params, "n", 2)
        k_lo, k_hi = _range(params, "k", 1)
        if k_lo < 1:
            raise UsageError(f"parameter 'k' must be at least 1, got range [{k_lo}, {k_hi}]")
        # a k range is clipped to what the drawn n admits
        k = rng.randint(k_lo, max(k_lo, min(k_hi, n // 2)))
        if n < 2 * k or n > MAX_TABLE_N:
            raise UsageError(f"table colorings need 2k <= n <= {MAX_TABLE_N}, got n={n}, k={k}")
        return SchrijverInstance(n, k, random_coloring_table(rng, n, k))
    if kind == "otucker":
        n = _draw(rng, params, "n", 2)
        if n > MAX_TABLE_N:
            raise UsageError(f"table labelings need n <= {MAX_TABLE_N}")
        return OTuckerInstance(n, random_lambda_table(rng, n))
    raise UsageError(f"unknown instance kind {kind!r}; expected one of {', '.join(KINDS)}")


def _fail_m(n: int, lo: int, hi: int) -> int:
    raise UsageError(f"no part count in [{lo}, {hi}] fits n = {n}")
