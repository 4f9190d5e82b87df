"""Brute-force k-block recomputation of the bound ingredients.

Everything here enumerates A^k (and B^k) explicitly, so it is only usable for
small alphabets and block lengths. It exists to check the single-letter
formulas in ``bounds`` and the label-count claims in ``equivalence``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .demand_function import DemandFunction
from .equivalence import DEFAULT_CAP, block_d_vector, direct_block_partition, scalar_partition
from .errors import InvariantError, ResourceCapError
from .majorization import entropy_lower_bound, entropy_of_counts
from .pair_structure import pair_index_set, preimage_count_given_a3

BlockPairs = dict[tuple[frozenset, frozenset], int]


@dataclass(frozen=True)
class OracleConfig:
    k: int = 2
    enumeration_cap: int = DEFAULT_CAP
    z_size: int = 2

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("block length k must be at least 1")
        if self.z_size < 2:
            raise ValueError("z_size must be at least 2")

    def require(self, states: int, what: str) -> None:
        if states > self.enumeration_cap:
            raise ResourceCapError(
                f"{what} needs {states} states, cap is {self.enumeration_cap}")


def gamma_block(f: DemandFunction, u: int, cfg: OracleConfig) -> float:
    """(1/k) * mean over a3 in A^k of H(d_u(a3) / |A|^k)."""
    k, a = cfg.k, f.a_size
    cfg.require(a ** (2 * k), "gamma_block sweep")
    acc = 0.0
    for a3_vec in itertools.product(range(a), repeat=k):
        d = block_d_vector(f, u, a3_vec, cfg.enumeration_cap)
        acc += entropy_lower_bound(d, cfg.z_size)
    return acc / (a ** k) / k


def _component_pairs(f: DemandFunction) -> dict[tuple[int, int], dict[tuple[int, int], int]]:
    out = {}
    for a3 in range(f.a_size):
        for b in range(f.b_size):
            if preimage_count_given_a3(f, b, a3):
                out[(a3, b)] = pair_index_set(f, a3, b).as_dict()
    return out


def product_block_pairs(f: DemandFunction, a3_vec: Sequence[int],
                        b_vec: Sequence[int]) -> BlockPairs:
    """Block pair index set assembled from per-component pair sets.

    Keys are the pair of block classes, each given as the frozenset of its
    member blocks, so the result is comparable with ``direct_block_pairs``.
    """
    comps = []
    for a3, b in zip(a3_vec, b_vec):
        if preimage_count_given_a3(f, b, a3) == 0:
            return {}
        c1 = scalar_partition(f, 1, a3).classes
        c2 = scalar_partition(f, 2, a3).classes
        comps.append([(c1[v - 1], c2[w - 1], h)
                      for (v, w), h in pair_index_set(f, a3, b).as_dict().items()])
    out: BlockPairs = {}
    for choice in itertools.product(*comps):
        cls1 = frozenset(itertools.product(*(c[0] for c in choice)))
        cls2 = frozenset(itertools.product(*(c[1] for c in choice)))
        h = 1
        for c in choice:
            h *= c[2]
        out[(cls1, cls2)] = h
    return out


def direct_block_pairs(f: DemandFunction, a3_vec: Sequence[int]) -> dict[tuple[int, ...], BlockPairs]:
    """Pair index sets for every b^k, by exhaustive sweep over A^k x A^k.

    Block classes come from ``direct_block_partition`` (the relation applied
    to whole blocks), not from per-component classes.
    """
    k = len(a3_vec)
    blocks = list(itertools.product(range(f.a_size), repeat=k))
    p1 = direct_block_partition(f, 1, a3_vec)
    p2 = direct_block_partition(f, 2, a3_vec)
    lab1, lab2 = p1.labels(), p2.labels()
    sets1 = [frozenset(blocks[i] for i in c) for c in p1.classes]
    sets2 = [frozenset(blocks[i] for i in c) for c in p2.classes]
    counts: dict[tuple[int, ...], Counter] = {}
    for i, x1 in enumerate(blocks):
        for j, x2 in enumerate(blocks):
            b = f.block(x1, x2, a3_vec)
            counts.setdefault(b, Counter())[(lab1[i], lab2[j])] += 1
    return {b: {(sets1[v - 1], sets2[w - 1]): n for (v, w), n in c.items()}
            for b, c in counts.items()}


def h_block_check(f: DemandFunction, b_vec: Sequence[int], a3_vec: Sequence[int]) -> bool:
    """Product-form block pair set (with h-counts) equals direct enumeration."""
    if len(b_vec) != len(a3_vec):
        raise ValueError("b_vec and a3_vec must have the same length")
    if len(a3_vec) > 3:
        raise ResourceCapError("h_block_check is limited to k <= 3")
    direct = direct_block_pairs(f, a3_vec).get(tuple(b_vec), {})
    return product_block_pairs(f, a3_vec, b_vec) == direct


def alpha_block(f: DemandFunction, cfg: OracleConfig) -> float:
    """(1/k) * sum over (b, a3) of P(b, a3) * H(h_{b,a3} / |A123(b, a3)|).

    Block h-vectors are products of per-component h-vectors. For k <= 2 each
    (a3, b) is also checked against direct enumeration; a mismatch raises
    ``InvariantError``.
    """
    k, a, bsz = cfg.k, f.a_size, f.b_size
    cfg.require(bsz ** k * a ** k, "alpha_block sweep")
    cross_check = k <= 2
    if cross_check:
        cfg.require(a ** (3 * k), "alpha_block direct cross-check")
    comp = _component_pairs(f)
    n_tuples = a ** (3 * k)
    acc = 0.0
    for a3_vec in itertools.product(range(a), repeat=k):
        direct = direct_block_pairs(f, a3_vec) if cross_check else None
        for b_vec in itertools.product(range(bsz), repeat=k):
            keys = list(zip(a3_vec, b_vec))
            if any(key not in comp for key in keys):
                if direct is not None and tuple(b_vec) in direct:
                    raise InvariantError(f"direct sweep reaches b={b_vec} at a3={a3_vec}")
                continue
            factors = [sorted(comp[key].values(), reverse=True) for key in keys]
            n_pairs = 1
            for fac in factors:
                n_pairs *= len(fac)
            cfg.require(n_pairs, "block h-vector")
            h = [1]
            for fac in factors:
                h = [p * q for p in h for q in fac]
            h.sort(reverse=True)
            if direct is not None:
                got = sorted(direct.get(tuple(b_vec), {}).values(), reverse=True)
                if got != h:
                    raise InvariantError(f"h-vector mismatch at b={b_vec}, a3={a3_vec}")
            acc += sum(h) / n_tuples * entropy_of_counts(h, cfg.z_size)
    return acc / k


def min_labels_search(f: DemandFunction, u: int, a3: int, max_alphabet: int = 4) -> int:
    """Fewest labels on edge (s_u, t) that still let the terminal decode, k = 1.

    The terminal sees the label of x_u, the other source's message in full,
    and a3. A labelling fails if two inputs sharing a label disagree on f for
    some value of the other message.
    """
    if u not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {u!r}")
    a = f.a_size
    if a > max_alphabet:
        raise ResourceCapError(f"label search limited to |A| <= {max_alphabet}, got {a}")

    def value(x: int, other: int) -> int:
        return f(x, other, a3) if u == 1 else f(other, x, a3)

    def decodable(labels: tuple[int, ...]) -> bool:
        for x in range(a):
            for y in range(x + 1, a):
                if labels[x] != labels[y]:
                    continue
                # adversarial other-source value separating x and y
                if any(value(x, o) != value(y, o) for o in range(a)):
                    return False
        return True

    for n_labels in range(1, a + 1):
        if any(decodable(lab) for lab in itertools.product(range(n_labels), repeat=a)):
            return n_labels
    raise InvariantError("identity labelling must always decode")
