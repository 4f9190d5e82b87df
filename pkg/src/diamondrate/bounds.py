"""Outer bound on the rate region of the diamond network.

All quantities are single-letter: for i.i.d. uniform sources the block
class-size and h-vectors factor over components, so the per-block averages
collapse to one component. ``block_oracle`` recomputes them at block length
k by enumeration.

Rates are in units of ``k log|A|``; entropies inside ``gamma``/``alpha``/``h_f``
are in base ``z_size``. The epsilon slack terms and the logarithmic
non-singular-code corrections are taken to zero, matching how the limiting
bounds are normally quoted.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable

from .demand_function import DemandFunction, Pmf, function_pmf, preimage_count
from .equivalence import d_vector, x3_partition
from .majorization import entropy, entropy_of_counts, entropy_lower_bound
from .pair_structure import a3_support, h_vector, preimage_count_given_a3

LIMIT_NOTE = ("bounds reported in the limit eps, eps' -> 0; "
              "O(log k / k) non-singular-code corrections dropped")


@dataclass(frozen=True)
class RateBoundReport:
    a_size: int
    b_size: int
    z_size: int
    r3_sum_lb: float
    r1_lb: float
    r2_lb: float
    sum_rate_avg_lb: float
    gamma_1: float
    gamma_2: float
    alpha: float
    h_f: float
    note: str = field(default=LIMIT_NOTE)

    def to_dict(self) -> dict:
        return asdict(self)


def _check_z(z_size: int) -> None:
    if z_size < 2:
        raise ValueError("codeword alphabet size must be at least 2")


def gamma(f: DemandFunction, u: int, z_size: int = 2) -> float:
    """Per-symbol lower bound on H(Z_u | X3), base ``z_size``."""
    _check_z(z_size)
    total = sum(entropy_lower_bound(d_vector(f, u, a3), z_size) for a3 in range(f.a_size))
    return total / f.a_size


def alpha(f: DemandFunction, z_size: int = 2) -> float:
    """Per-symbol lower bound on H(Z1, Z2 | f, X3), base ``z_size``."""
    _check_z(z_size)
    n = f.a_size ** 3
    acc = 0.0
    for b in range(f.b_size):
        if preimage_count(f, b) == 0:
            continue
        for a3 in sorted(a3_support(f, b)):
            # P(f=b) * P(a3 | b) = |A123(b, a3)| / |A|^3
            weight = preimage_count_given_a3(f, b, a3) / n
            acc += weight * entropy_of_counts(h_vector(f, a3, b).counts, z_size)
    return acc


def r3_sum_bound(f: DemandFunction) -> float:
    """Lower bound on R31 + R32 from the distinguishable classes of X3."""
    sizes = x3_partition(f).sizes()
    return entropy_of_counts(sizes, f.a_size)


def rate_report(f: DemandFunction, z_size: int = 2) -> RateBoundReport:
    _check_z(z_size)
    log_a = math.log(f.a_size) / math.log(z_size)
    g1, g2 = gamma(f, 1, z_size), gamma(f, 2, z_size)
    al = alpha(f, z_size)
    h_f = entropy(function_pmf(f), z_size)
    return RateBoundReport(
        a_size=f.a_size, b_size=f.b_size, z_size=z_size,
        r3_sum_lb=r3_sum_bound(f),
        r1_lb=g1 / log_a, r2_lb=g2 / log_a,
        sum_rate_avg_lb=(al + h_f) / (2 * log_a),
        gamma_1=g1, gamma_2=g2, alpha=al, h_f=h_f,
    )


def ns_code_length_lower_bound(h: float, z_size: int = 2) -> float:
    """Lower bound on the expected length of any non-singular code of entropy ``h``.

    May be negative, in which case it is vacuous. Never clamped.
    """
    _check_z(z_size)
    return h - 2 * math.log(h + z_size) / math.log(z_size)


def best_ns_code_expected_length(p: Pmf | Iterable, z_size: int = 2) -> Fraction:
    """Expected length of the optimal non-singular (not prefix-free) code.

    Most likely symbols get the shortest non-empty strings: ``z`` strings of
    length 1, then ``z**2`` of length 2, and so on.
    """
    _check_z(z_size)
    weights = sorted((Fraction(w) for w in p), reverse=True)
    total = Fraction(0)
    length, room = 1, z_size
    for w in weights:
        if room == 0:
            length += 1
            room = z_size ** length
        total += w * length
        room -= 1
    return total
