"""Joint (Z1, Z2) label structure given the function value and X3.

For a3 and b, the pair index set collects every pair of side-1 and side-2
a3-classes that contains a message pair with f = b. Each listed pair carries
its h-count, the number of message pairs it covers. Class ids are 1-based
positions in the corresponding ``scalar_partition``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .demand_function import DemandFunction, Pmf, preimage_count
from .equivalence import scalar_partition
from .errors import DemandFunctionError, InvariantError


@dataclass(frozen=True)
class PairEntry:
    v: int
    w: int
    h: int


@dataclass(frozen=True)
class PairIndexSet:
    a3: int
    b: int
    pairs: tuple[PairEntry, ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(e.v, e.w): e.h for e in self.pairs}


@dataclass(frozen=True)
class HVector:
    counts: tuple[int, ...]
    total: int

    def pmf(self) -> Pmf:
        return Pmf.from_counts(self.counts)


def a3_support(f: DemandFunction, b: int) -> set[int]:
    a = range(f.a_size)
    return {z for z in a if any(f(x, y, z) == b for x in a for y in a)}


def preimage_count_given_a3(f: DemandFunction, b: int, a3: int) -> int:
    a = range(f.a_size)
    return sum(1 for x in a for y in a if f(x, y, a3) == b)


def pair_index_set(f: DemandFunction, a3: int, b: int) -> PairIndexSet:
    if preimage_count_given_a3(f, b, a3) == 0:
        raise DemandFunctionError(f"f never equals {b} when x3 = {a3}")
    side1 = scalar_partition(f, 1, a3).classes
    side2 = scalar_partition(f, 2, a3).classes
    pairs = []
    for v, c1 in enumerate(side1, start=1):
        for w, c2 in enumerate(side2, start=1):
            hits = sum(1 for x in c1 for y in c2 if f(x, y, a3) == b)
            if hits == 0:
                continue
            h = len(c1) * len(c2)
            # a class pair is all-or-nothing for a given b
            if __debug__ and hits != h:
                raise InvariantError(
                    f"class pair ({v},{w}) at a3={a3} only partly maps to b={b}")
            pairs.append(PairEntry(v, w, h))
    return PairIndexSet(a3, b, tuple(pairs))


def h_vector(f: DemandFunction, a3: int, b: int) -> HVector:
    counts = sorted((e.h for e in pair_index_set(f, a3, b).pairs), reverse=True)
    return HVector(tuple(counts), sum(counts))


def a3_conditional_pmf(f: DemandFunction, b: int) -> dict[int, Fraction]:
    """P(X3 = a3 | f = b) over the support of X3 given b."""
    total = preimage_count(f, b)
    if total == 0:
        raise DemandFunctionError(f"value {b} has zero probability")
    out = {}
    for a3 in range(f.a_size):
        n = preimage_count_given_a3(f, b, a3)
        if n:
            out[a3] = Fraction(n, total)
    return out
