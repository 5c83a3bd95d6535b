"""Shared corpora and small independent reference implementations for the tests."""

from __future__ import annotations

import itertools

from fairsets.core import SignVector
from fairsets.solvers import generate_instance

# acceptance criterion -> (passed, detail); printed by conftest at session end
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def record(name: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS[name] = (passed, detail)
    print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")


def fisc_corpus(count: int = 500, n: tuple[int, int] = (1, 14), m: tuple[int, int] = (1, 4)):
    return [generate_instance("fisc", {"n": n, "m": m}, seed) for seed in range(count)]


def fsplitc_corpus(count: int = 500, n: tuple[int, int] = (1, 14), m: tuple[int, int] = (1, 4)):
    return [generate_instance("fsplitc", {"n": n, "m": m}, seed) for seed in range(count)]


def fsplitp_corpus(count: int = 500, n: tuple[int, int] = (1, 14), m: tuple[int, int] = (1, 4)):
    return [generate_instance("fsplitp", {"n": n, "m": m}, seed) for seed in range(count)]


def alt_by_enumeration(x) -> int:
    """Longest alternating subsequence by trying every index subset (slow reference)."""
    n = len(x)
    for size in range(n, 0, -1):
        for idx in itertools.combinations(range(n), size):
            sub = [x[i] for i in idx]
            if all(sub) and all(a != b for a, b in zip(sub, sub[1:])):
                return size
    return 0


def cyclically_stable(elements, n: int) -> bool:
    s = set(elements)
    return all(not (v in s and (v % n) + 1 in s) for v in range(1, n + 1)) if n > 1 else len(s) <= 1


def sign_vectors(n: int):
    for entries in itertools.product((0, 1, -1), repeat=n):
        if any(entries):
            yield SignVector(entries)
