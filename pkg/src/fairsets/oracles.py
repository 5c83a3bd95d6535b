"""Evaluable colorings of Schrijver graphs and antipodal labelings of sign vectors.

An oracle is a small immutable descriptor that can be evaluated.  Explicit
tables exist for tiny n; the derived kinds keep their source instance and
evaluate the construction rule on demand.  Every evaluation is range-checked
and raises :class:`OracleViolation` when the contract is broken.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar, Iterable, Mapping

from .core import (
    MINUS,
    PLUS,
    CyclePartitionInstance,
    SignVector,
    StableKSubset,
    all_sign_vectors,
    alt,
    truncate_alternation,
)
from .errors import DomainError, InstanceError, OracleViolation


def _elements(s: StableKSubset | Iterable[int]) -> tuple[int, ...]:
    if isinstance(s, StableKSubset):
        return s.elements
    return tuple(sorted(s))


class ColoringOracle:
    """A map from stable k-subsets of [n] into ``[n - 2k + 1]``."""

    kind: ClassVar[str]
    n: int
    k: int

    @property
    def num_colors(self) -> int:
        return self.n - 2 * self.k + 1

    def raw_color(self, elements: tuple[int, ...]) -> int:
        raise NotImplementedError

    def __call__(self, s: StableKSubset | Iterable[int]) -> int:
        elements = _elements(s)
        c = self.raw_color(elements)
        if not (isinstance(c, int) and 1 <= c <= self.num_colors):
            raise OracleViolation(
                f"color {c!r} of {set(elements)} outside [1, {self.num_colors}]", query=elements
            )
        return c


@dataclass(frozen=True, eq=True)
class TableColoring(ColoringOracle):
    kind: ClassVar[str] = "table"
    n: int
    k: int
    table: Mapping[tuple[int, ...], int] = field(hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", {tuple(sorted(key)): v for key, v in self.table.items()})

    def raw_color(self, elements: tuple[int, ...]) -> int:
        try:
            return self.table[elements]
        except KeyError:
            raise OracleViolation(f"table has no color for {set(elements)}", query=elements) from None


@dataclass(frozen=True)
class RelabelContext:
    """How a FISC cycle was trimmed to odd parts and renumbered.

    ``new_to_old[j - 1]`` is the original id of relabeled vertex ``j``;
    ``new_part_of`` gives the part of each relabeled vertex.
    """

    removed_vertices: tuple[int | None, ...]
    new_to_old: tuple[int, ...]
    new_part_of: tuple[int, ...]
    r: tuple[int, ...]
    k: int

    @property
    def n_prime(self) -> int:
        return len(self.new_to_old)

    @property
    def m(self) -> int:
        return len(self.r)


def relabel_odd_parts(inst: CyclePartitionInstance) -> RelabelContext:
    """Drop the highest vertex of every even part and renumber along the cycle."""
    removed: list[int | None] = []
    for part in inst.parts:
        removed.append(part[-1] if len(part) % 2 == 0 else None)
    gone = {v for v in removed if v is not None}
    new_to_old = tuple(v for v in range(1, inst.n + 1) if v not in gone)
    new_part_of = tuple(inst.part_of[v - 1] for v in new_to_old)
    r = tuple((len(p) - (1 if len(p) % 2 == 0 else 0) - 1) // 2 for p in inst.parts)
    return RelabelContext(tuple(removed), new_to_old, new_part_of, r, sum(r))


@dataclass(frozen=True)
class FiscColoring(ColoringOracle):
    """c(S) = least part i holding more than r_i elements of S, else m + 1."""

    kind: ClassVar[str] = "schrijver_from_fisc"
    source: CyclePartitionInstance
    context: RelabelContext = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        ctx = relabel_odd_parts(self.source)
        if ctx.k < 1:
            raise DomainError("every part has at most two vertices, so k = 0; the empty set is already fair")
        object.__setattr__(self, "context", ctx)

    @property
    def n(self) -> int:  # type: ignore[override]
        return self.context.n_prime

    @property
    def k(self) -> int:  # type: ignore[override]
        return self.context.k

    def raw_color(self, elements: tuple[int, ...]) -> int:
        ctx = self.context
        counts = [0] * ctx.m
        for v in elements:
            counts[ctx.new_part_of[v - 1] - 1] += 1
        for i, (c, r) in enumerate(zip(counts, ctx.r), 1):
            if c > r:
                return i
        return ctx.m + 1


class LambdaOracle:
    """An antipodal map from nonzero sign vectors of length n into ``±[n - 1]``."""

    kind: ClassVar[str]
    n: int

    def raw_value(self, x: SignVector) -> int:
        raise NotImplementedError

    def __call__(self, x: SignVector) -> int:
        if len(x) != self.n:
            raise OracleViolation(f"query of length {len(x)} for n = {self.n}", query=x)
        v = self.raw_value(x)
        if not (isinstance(v, int) and v != 0 and abs(v) <= self.n - 1):
            raise OracleViolation(f"lambda({x}) = {v!r} outside ±[1, {self.n - 1}]", query=x)
        return v

    def check_antipodal(self, x: SignVector) -> int:
        """λ(x), after confirming λ(-x) = -λ(x) at this point."""
        v = self(x)
        w = self(-x)
        if w != -v:
            raise OracleViolation(f"lambda({x}) = {v} but lambda({-x}) = {w}", query=x)
        return v

    def validate(self) -> None:
        """Exhaustive contract check where that is cheap; a no-op for derived kinds."""


@dataclass(frozen=True)
class TableLambda(LambdaOracle):
    kind: ClassVar[str] = "table"
    n: int
    table: Mapping[SignVector, int] = field(hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", {SignVector(key): v for key, v in self.table.items()})

    def raw_value(self, x: SignVector) -> int:
        try:
            return self.table[x]
        except KeyError:
            raise OracleViolation(f"table has no value for {x}", query=x) from None

    def validate(self) -> None:
        for x in all_sign_vectors(self.n):
            self.check_antipodal(x)


@dataclass(frozen=True)
class SchrijverLambda(LambdaOracle):
    """Labeling built from a coloring of S(n, k) (alternation-length rule)."""

    kind: ClassVar[str] = "otucker_from_schrijver"
    coloring: ColoringOracle

    @property
    def n(self) -> int:  # type: ignore[override]
        return self.coloring.n

    @property
    def k(self) -> int:
        return self.coloring.k

    def edge_of(self, x: SignVector) -> tuple[StableKSubset, StableKSubset]:
        """``(z^+, z^-)`` for ``z = A_2k(x)``; requires ``alt(x) >= 2k``."""
        z = truncate_alternation(x, 2 * self.k)
        return (
            StableKSubset(self.n, self.k, tuple(sorted(z.plus))),
            StableKSubset(self.n, self.k, tuple(sorted(z.minus))),
        )

    def is_tie(self, x: SignVector) -> bool:
        if alt(x) < 2 * self.k:
            return False
        zp, zm = self.edge_of(x)
        return self.coloring(zp) == self.coloring(zm)

    def raw_value(self, x: SignVector) -> int:
        a = alt(x)
        sign = x.first_nonzero()
        if a <= 2 * self.k - 1:
            return sign * a
        zp, zm = self.edge_of(x)
        cp, cm = self.coloring(zp), self.coloring(zm)
        if cp < cm:
            return cp + 2 * self.k - 1
        if cm < cp:
            return -(cm + 2 * self.k - 1)
        return sign * (self.n - 1)


@dataclass(frozen=True)
class FSplitCLambda(LambdaOracle):
    """Labeling built from an FSplitC cycle (largest-unbalanced-part rule)."""

    kind: ClassVar[str] = "otucker_from_fsplitc"
    source: CyclePartitionInstance

    def __post_init__(self) -> None:
        if (self.source.n - self.source.m) % 2:
            raise InstanceError("n and m must have the same parity")
        if self.source.n <= self.source.m:
            raise DomainError("the labeling needs n > m; for n = m the empty split already works")

    @property
    def n(self) -> int:  # type: ignore[override]
        return self.source.n

    def part_counts(self, x: SignVector) -> tuple[list[int], list[int], list[int]]:
        """Per part: plus count, minus count, sign of the smallest covered vertex."""
        m = self.source.m
        cp, cm, first = [0] * m, [0] * m, [0] * m
        part_of = self.source.part_of
        for v, e in enumerate(x):
            if e:
                i = part_of[v] - 1
                if e == PLUS:
                    cp[i] += 1
                else:
                    cm[i] += 1
                if not first[i]:
                    first[i] = e
        return cp, cm, first

    def unbalanced_parts(self, x: SignVector) -> list[int]:
        """J(x): parts split exactly in half, or with a strict majority of one sign."""
        cp, cm, _ = self.part_counts(x)
        out = []
        for i, size in enumerate(self.source.sizes):
            if (2 * cp[i] == size and 2 * cm[i] == size) or 2 * max(cp[i], cm[i]) > size:
                out.append(i + 1)
        return out

    def raw_value(self, x: SignVector) -> int:
        cp, cm, first = self.part_counts(x)
        n, m = self.source.n, self.source.m
        sizes = self.source.sizes
        for i in range(m - 1, -1, -1):
            size = sizes[i]
            if 2 * cp[i] == size and 2 * cm[i] == size:
                return first[i] * (i + 1 + n - m - 1)
            if 2 * max(cp[i], cm[i]) > size:
                sign = PLUS if 2 * cp[i] > size else MINUS
                return sign * (i + 1 + n - m - 1)
        return x.first_nonzero() * alt(x)
