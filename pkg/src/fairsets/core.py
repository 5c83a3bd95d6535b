"""Sign vectors, stable subsets and partitioned cycles/paths.

Sign vectors are tuples over ``{+1, -1, 0}``.  Vertices of cycles and paths
are always numbered ``1..n`` in edge order; the cycle additionally carries
the edge ``n - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, UsageError

PLUS = 1
MINUS = -1
ZERO = 0

_FROM_SYMBOL = {"+": PLUS, "-": MINUS, "−": MINUS, "0": ZERO}
_TO_SYMBOL = {PLUS: "+", MINUS: "-", ZERO: "0"}


class SignVector(tuple):
    """An element of ``{+,-,0}^n``.

    Accepts any iterable of ``1, -1, 0`` or of the characters ``+ - 0``, so
    ``SignVector("+-0")`` and ``SignVector((1, -1, 0))`` are equal.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int | str] = ()) -> SignVector:
        values = []
        for e in entries:
            if isinstance(e, str):
                if e not in _FROM_SYMBOL:
                    raise UsageError(f"bad sign symbol {e!r}")
                values.append(_FROM_SYMBOL[e])
            elif e in (PLUS, MINUS, ZERO) and not isinstance(e, bool):
                values.append(int(e))
            else:
                raise UsageError(f"bad sign entry {e!r}")
        if not values:
            raise UsageError("sign vectors need length n >= 1")
        return super().__new__(cls, values)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def plus(self) -> frozenset[int]:
        """1-based positions holding ``+``."""
        return frozenset(i for i, e in enumerate(self, 1) if e == PLUS)

    @property
    def minus(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self, 1) if e == MINUS)

    def is_zero(self) -> bool:
        return not any(self)

    def first_nonzero(self) -> int:
        for e in self:
            if e:
                return e
        return ZERO

    def __neg__(self) -> SignVector:
        return negate(self)

    def __str__(self) -> str:
        return "".join(_TO_SYMBOL[e] for e in self)

    def __repr__(self) -> str:
        return f"SignVector({str(self)!r})"

    def code(self) -> int:
        """Rank in lexicographic order with symbol order ``0 < + < -``."""
        c = 0
        for e in self:
            c = 3 * c + (0 if e == ZERO else 1 if e == PLUS else 2)
        return c

    @classmethod
    def from_code(cls, code: int, n: int) -> SignVector:
        digits = []
        for _ in range(n):
            code, d = divmod(code, 3)
            digits.append((ZERO, PLUS, MINUS)[d])
        return cls(reversed(digits))

    @classmethod
    def from_supports(cls, n: int, plus: Iterable[int], minus: Iterable[int] = ()) -> SignVector:
        entries = [ZERO] * n
        for i in plus:
            entries[i - 1] = PLUS
        for i in minus:
            if entries[i - 1] == PLUS:
                raise UsageError(f"position {i} is in both supports")
            entries[i - 1] = MINUS
        return cls(entries)


def all_sign_vectors(n: int, *, nonzero: bool = True) -> Iterator[SignVector]:
    """All vectors of length ``n`` in lexicographic order (``0 < + < -``)."""
    start = 1 if nonzero else 0
    for code in range(start, 3**n):
        yield SignVector.from_code(code, n)


def _check_same_length(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise UsageError(f"length mismatch: {len(x)} vs {len(y)}")


def precedes(x: Sequence[int], y: Sequence[int]) -> bool:
    """``x ⪯ y``: every nonzero entry of x equals the matching entry of y."""
    _check_same_length(x, y)
    return all(a == 0 or a == b for a, b in zip(x, y))


def alt(x: Sequence[int]) -> int:
    """Length of the longest alternating subsequence of nonzero entries."""
    count = 0
    last = ZERO
    for e in x:
        if e and e != last:
            count += 1
            last = e
    return count


def negate(x: Sequence[int]) -> SignVector:
    return SignVector(-e for e in x)


def reduce_to_alternating(x: Sequence[int]) -> SignVector:
    """Keep the first nonzero entry and each nonzero entry that changes sign."""
    if not any(x):
        raise DomainError("A(x) is undefined for the zero vector")
    out = []
    last = ZERO
    for e in x:
        if e and e != last:
            out.append(e)
            last = e
        else:
            out.append(ZERO)
    return SignVector(out)


def truncate_alternation(x: Sequence[int], r: int) -> SignVector:
    """A(x) with all but its first ``r`` nonzero entries set to zero."""
    a = reduce_to_alternating(x)
    total = alt(a)
    if not 0 <= r <= total:
        raise DomainError(f"r={r} outside [0, alt(x)={total}]")
    out = []
    kept = 0
    for e in a:
        if e and kept < r:
            out.append(e)
            kept += 1
        else:
            out.append(ZERO)
    return SignVector(out)


def is_stable(elements: Iterable[int], n: int) -> bool:
    """True iff no two elements are consecutive modulo n."""
    s = set(elements)
    for v in s:
        if not 1 <= v <= n:
            raise UsageError(f"element {v} outside [1, {n}]")
    return not any((v % n) + 1 in s for v in s)


@dataclass(frozen=True)
class StableKSubset:
    """A vertex of the Schrijver graph S(n, k)."""

    n: int
    k: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elements = tuple(sorted(self.elements))
        object.__setattr__(self, "elements", elements)
        if self.k < 1 or self.n < 2 * self.k:
            raise UsageError(f"need n >= 2k >= 2, got n={self.n}, k={self.k}")
        if len(elements) != self.k or len(set(elements)) != self.k:
            raise UsageError(f"expected {self.k} distinct elements, got {elements}")
        if not is_stable(elements, self.n):
            raise UsageError(f"{elements} has consecutive elements modulo {self.n}")

    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def isdisjoint(self, other: StableKSubset) -> bool:
        return self.as_set().isdisjoint(other.elements)


@dataclass(frozen=True)
class _PartitionInstance:
    n: int
    parts: tuple[tuple[int, ...], ...]
    part_of: tuple[int, ...] = field(init=False, repr=False, compare=False)

    closed = True

    def __post_init__(self) -> None:
        parts = tuple(tuple(sorted(p)) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if self.n < 1:
            raise UsageError("need at least one vertex")
        if not parts:
            raise UsageError("need at least one part")
        owner = [0] * self.n
        for i, part in enumerate(parts, 1):
            if not part:
                raise UsageError(f"part {i} is empty")
            for v in part:
                if not 1 <= v <= self.n:
                    raise UsageError(f"vertex {v} outside [1, {self.n}]")
                if owner[v - 1]:
                    raise UsageError(f"vertex {v} is in parts {owner[v - 1]} and {i}")
                owner[v - 1] = i
        missing = [v for v, o in enumerate(owner, 1) if not o]
        if missing:
            raise UsageError(f"vertices {missing} are in no part")
        object.__setattr__(self, "part_of", tuple(owner))

    @classmethod
    def from_part_of(cls, part_of: Sequence[int]):
        m = max(part_of)
        parts = [[] for _ in range(m)]
        for v, i in enumerate(part_of, 1):
            parts[i - 1].append(v)
        return cls(len(part_of), tuple(tuple(p) for p in parts))

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def edges(self) -> list[tuple[int, int]]:
        edges = [(v, v + 1) for v in range(1, self.n)]
        if self.closed and self.n != 2:
            edges.append((self.n, 1))
        return edges

    def check_vertices(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if not 1 <= v <= self.n:
                raise UsageError(f"vertex {v} outside [1, {self.n}]")

    def adjacent_pair(self, vertices: Iterable[int]) -> tuple[int, int] | None:
        """First edge with both ends in ``vertices``, or None if independent."""
        s = set(vertices)
        self.check_vertices(s)
        for u, v in self.edges():
            if u in s and v in s:
                return (u, v)
        return None

    def is_independent(self, vertices: Iterable[int]) -> bool:
        return self.adjacent_pair(vertices) is None

    def counts(self, vertices: Iterable[int]) -> list[int]:
        """``|S ∩ V_i|`` for every part, as a 0-based list."""
        c = [0] * self.m
        for v in vertices:
            c[self.part_of[v - 1] - 1] += 1
        return c


class CyclePartitionInstance(_PartitionInstance):
    """A cycle on ``[n]`` with a partition of its vertices."""

    closed = True


class PathPartitionInstance(_PartitionInstance):
    """A path ``1 - 2 - ... - n`` with a partition of its vertices."""

    closed = False

    def all_parts_odd(self) -> bool:
        return all(len(p) % 2 == 1 for p in self.parts)


def stable_subset_count(n: int, k: int) -> int:
    """Number of stable k-subsets of [n] (vertices of S(n, k))."""
    if k == 0:
        return 1
    if n < 2 * k:
        return 0
    return n * math.comb(n - k, k) // (n - k)


def stable_subsets(n: int, k: int):
    """Stable k-subsets of [n] in lexicographic order."""

    def rec(start: int, left: int, acc: list[int]):
        if left == 0:
            yield tuple(acc)
            return
        for v in range(start, n + 1):
            if n - v + 1 < 2 * left - 1:
                break
            if v == n and acc and acc[0] == 1:
                continue
            acc.append(v)
            yield from rec(v + 2, left - 1, acc)
            acc.pop()

    yield from rec(1, k, [])
