"""Equivalence partitions of the message alphabet induced by a demand function.

Two values of X_u are a3-equivalent on side u when swapping one for the other
never changes f, whatever the other side's message is, given X3 = a3. The
classes of that relation lower-bound how many distinct labels edge (s_u, t)
must carry.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .demand_function import DemandFunction
from .errors import ResourceCapError

DEFAULT_CAP = 10 ** 7


@dataclass(frozen=True)
class Partition:
    """Disjoint symbol classes, largest first; ties go to the smallest member."""

    classes: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def class_of(self, symbol: int) -> int:
        """1-based index of the class containing ``symbol``."""
        for i, cls in enumerate(self.classes, start=1):
            if symbol in cls:
                return i
        raise KeyError(symbol)

    def labels(self) -> dict[int, int]:
        return {x: i for i, cls in enumerate(self.classes, start=1) for x in cls}

    def __str__(self) -> str:
        return " u ".join("{" + ",".join(map(str, c)) + "}" for c in self.classes)


@dataclass(frozen=True)
class ClassSizeVector:
    """Class sizes in non-increasing order; zero padding is left implicit."""

    sizes: tuple[int, ...]
    alphabet_total: int

    def __post_init__(self) -> None:
        if any(s <= 0 for s in self.sizes):
            raise ValueError("class sizes must be positive")
        if list(self.sizes) != sorted(self.sizes, reverse=True):
            raise ValueError("class sizes must be non-increasing")
        if sum(self.sizes) != self.alphabet_total:
            raise ValueError("class sizes must sum to the alphabet total")


def group_by_key(symbols: Iterable[int], key) -> Partition:
    """Partition ``symbols`` by equal ``key(symbol)`` values."""
    groups: dict[Hashable, list[int]] = defaultdict(list)
    for x in symbols:
        groups[key(x)].append(x)
    classes = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda c: (-len(c), c[0]))
    return Partition(tuple(classes))


def _check_side(u: int) -> None:
    if u not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {u!r}")


def scalar_partition(f: DemandFunction, u: int, a3: int) -> Partition:
    _check_side(u)
    a = range(f.a_size)
    if u == 1:
        key = lambda x: tuple(f(x, y, a3) for y in a)
    else:
        key = lambda x: tuple(f(y, x, a3) for y in a)
    return group_by_key(a, key)


def v_count(f: DemandFunction, u: int, a3: int) -> int:
    return len(scalar_partition(f, u, a3))


def d_vector(f: DemandFunction, u: int, a3: int) -> ClassSizeVector:
    return ClassSizeVector(scalar_partition(f, u, a3).sizes(), f.a_size)


def x3_partition(f: DemandFunction) -> Partition:
    """Classes of X3 values that no (x1, x2) pair can tell apart through f."""
    a = range(f.a_size)
    return group_by_key(a, lambda z: tuple(f(x, y, z) for x in a for y in a))


def product_sizes(factors: Sequence[Sequence[int]]) -> list[int]:
    """All products taking one entry from each factor, sorted non-increasing."""
    out = [1]
    for sizes in factors:
        out = [p * s for p in out for s in sizes]
    out.sort(reverse=True)
    return out


def block_d_vector(f: DemandFunction, u: int, a3_vec: Sequence[int],
                   cap: int = DEFAULT_CAP) -> ClassSizeVector:
    """Class sizes of the componentwise relation on A^k given X3^k = a3_vec."""
    if len(a3_vec) < 1:
        raise ValueError("block length must be at least 1")
    factors = [d_vector(f, u, a3).sizes for a3 in a3_vec]
    n_classes = 1
    for sizes in factors:
        n_classes *= len(sizes)
    if n_classes > cap:
        raise ResourceCapError(f"block partition has {n_classes} classes, cap is {cap}")
    return ClassSizeVector(tuple(product_sizes(factors)), f.a_size ** len(a3_vec))


def direct_block_partition(f: DemandFunction, u: int, a3_vec: Sequence[int]) -> Partition:
    """Block partition of A^k built straight from the definition, for oracle use.

    Symbols are block indices in lexicographic order of ``product(range(a), repeat=k)``.
    """
    k = len(a3_vec)
    blocks = list(itertools.product(range(f.a_size), repeat=k))
    if u == 1:
        key = lambda i: tuple(f.block(blocks[i], y, a3_vec) for y in blocks)
    else:
        _check_side(u)
        key = lambda i: tuple(f.block(y, blocks[i], a3_vec) for y in blocks)
    return group_by_key(range(len(blocks)), key)
