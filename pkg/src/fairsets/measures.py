"""Exact piecewise-constant probability measures on [0, 1].

Everything here is ``fractions.Fraction``; no float ever enters a mass
computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .core import MINUS, PLUS
from .errors import UsageError

ZERO_Q = Fraction(0)
ONE_Q = Fraction(1)


def as_fraction(value: object) -> Fraction:
    """Parse ``"p/q"`` strings, ints and Fractions; floats are rejected."""
    if isinstance(value, float):
        raise UsageError(f"floats are not exact: {value!r}")
    try:
        return Fraction(value)  # type: ignore[arg-type]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational: {value!r}") from exc


class Block(NamedTuple):
    lo: Fraction
    hi: Fraction
    value: Fraction

    @property
    def mass(self) -> Fraction:
        return self.value * (self.hi - self.lo)


@dataclass(frozen=True)
class PiecewiseConstantDensity:
    """Density given by its blocks; zero outside them, total mass exactly 1."""

    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        blocks = tuple(Block(*(as_fraction(c) for c in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise UsageError("a density needs at least one block")
        prev_hi = ZERO_Q
        for b in blocks:
            if not (ZERO_Q <= b.lo < b.hi <= ONE_Q):
                raise UsageError(f"block [{b.lo}, {b.hi}] not inside [0, 1]")
            if b.lo < prev_hi:
                raise UsageError("blocks must be sorted and disjoint")
            if b.value <= 0:
                raise UsageError("block values must be positive")
            prev_hi = b.hi
        total = sum((b.mass for b in blocks), ZERO_Q)
        if total != 1:
            raise UsageError(f"total mass is {total}, not 1")

    @classmethod
    def uniform(cls) -> PiecewiseConstantDensity:
        return cls(((ZERO_Q, ONE_Q, ONE_Q),))

    @classmethod
    def from_weights(
        cls, intervals: Sequence[tuple[Fraction, Fraction]], weights: Sequence[int | Fraction]
    ) -> PiecewiseConstantDensity:
        """Blocks on ``intervals`` with values proportional to ``weights``."""
        norm = sum(as_fraction(w) * (hi - lo) for (lo, hi), w in zip(intervals, weights))
        return cls(tuple((lo, hi, as_fraction(w) / norm) for (lo, hi), w in zip(intervals, weights)))


@dataclass(frozen=True)
class ConHalvInstance:
    measures: tuple[PiecewiseConstantDensity, ...]
    eps: Fraction
    cut_budget: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "measures", tuple(self.measures))
        object.__setattr__(self, "eps", as_fraction(self.eps))
        if not self.measures:
            raise UsageError("need at least one measure")
        if self.eps < 0:
            raise UsageError("eps must be nonnegative")
        if self.cut_budget < 0:
            raise UsageError("cut budget must be nonnegative")

    @property
    def m(self) -> int:
        return len(self.measures)

    @property
    def block_bound(self) -> int:
        return max(len(d.blocks) for d in self.measures)


@dataclass(frozen=True)
class CutLabelSolution:
    """Cuts ``0 < c_1 < ... < c_t < 1`` and a sign for each of the t+1 pieces."""

    cuts: tuple[Fraction, ...]
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        cuts = tuple(as_fraction(c) for c in self.cuts)
        labels = tuple(self.labels)
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "labels", labels)
        if len(labels) != len(cuts) + 1:
            raise UsageError(f"{len(cuts)} cuts need {len(cuts) + 1} labels, got {len(labels)}")
        if any(lab not in (PLUS, MINUS) for lab in labels):
            raise UsageError("labels must be +1 or -1")
        points = (ZERO_Q,) + cuts + (ONE_Q,)
        if any(a >= b for a, b in zip(points, points[1:])):
            raise UsageError("cuts must be strictly increasing inside (0, 1)")

    def pieces(self) -> list[tuple[Fraction, Fraction, int]]:
        points = (ZERO_Q,) + self.cuts + (ONE_Q,)
        return [(points[j], points[j + 1], self.labels[j]) for j in range(len(self.labels))]


def mass(d: PiecewiseConstantDensity, lo: Fraction, hi: Fraction) -> Fraction:
    """Exact integral of ``d`` over ``[lo, hi]``."""
    lo, hi = as_fraction(lo), as_fraction(hi)
    if not (ZERO_Q <= lo <= hi <= ONE_Q):
        raise UsageError(f"interval [{lo}, {hi}] not inside [0, 1]")
    total = ZERO_Q
    for b in d.blocks:
        a, c = max(lo, b.lo), min(hi, b.hi)
        if a < c:
            total += b.value * (c - a)
    return total


def split_masses(d: PiecewiseConstantDensity, sol: CutLabelSolution) -> tuple[Fraction, Fraction]:
    """``(mu(I+), mu(I-))`` for the two pieces described by ``sol``."""
    plus = minus = ZERO_Q
    for lo, hi, label in sol.pieces():
        if label == PLUS:
            plus += mass(d, lo, hi)
        else:
            minus += mass(d, lo, hi)
    return plus, minus


def check_conhalv(inst: ConHalvInstance, sol: CutLabelSolution) -> str | None:
    """First violated clause, or None when ``sol`` solves ``inst``."""
    if len(sol.cuts) > inst.cut_budget:
        return f"uses {len(sol.cuts)} cuts, budget is {inst.cut_budget}"
    for i, d in enumerate(inst.measures, 1):
        plus, minus = split_masses(d, sol)
        if abs(plus - minus) > inst.eps:
            return f"measure {i}: |mu(I+) - mu(I-)| = {abs(plus - minus)} > eps = {inst.eps}"
    return None


def verify_conhalv(inst: ConHalvInstance, sol: CutLabelSolution) -> bool:
    return check_conhalv(inst, sol) is None


class SubInterval(NamedTuple):
    midpoint: Fraction
    imperfect: bool
    lo: Fraction
    hi: Fraction
    mass: Fraction


def quantile_subdivide(d: PiecewiseConstantDensity, delta: Fraction) -> list[SubInterval]:
    """Cut every block into pieces of mass ``delta``; the last one may be lighter."""
    delta = as_fraction(delta)
    if delta <= 0:
        raise UsageError("delta must be positive")
    out: list[SubInterval] = []
    for b in d.blocks:
        count = math.ceil(b.mass / delta)
        width = delta / b.value
        for j in range(count):
            lo = b.lo + j * width
            hi = min(lo + width, b.hi)
            piece = b.value * (hi - lo)
            out.append(SubInterval((lo + hi) / 2, piece < delta, lo, hi, piece))
    return out


def total_mass(pieces: Iterable[SubInterval]) -> Fraction:
    return sum((p.mass for p in pieces), ZERO_Q)
