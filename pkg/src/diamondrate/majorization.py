"""Majorization order on weight vectors and entropy in an arbitrary base.

Prefix sums are compared in exact rational arithmetic; only the final
logarithm in ``entropy`` is floating point.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import accumulate
from typing import Iterable

from .equivalence import ClassSizeVector


def _sorted_desc(v: Iterable) -> list[Fraction]:
    return sorted((Fraction(x) for x in v), reverse=True)


def is_majorized(p: Iterable, q: Iterable) -> bool:
    """True iff p is majorized by q (shorter vector zero-padded)."""
    ps, qs = _sorted_desc(p), _sorted_desc(q)
    n = max(len(ps), len(qs))
    ps += [Fraction(0)] * (n - len(ps))
    qs += [Fraction(0)] * (n - len(qs))
    pre_p, pre_q = list(accumulate(ps)), list(accumulate(qs))
    if pre_p[-1] != pre_q[-1]:
        return False
    return all(a <= b for a, b in zip(pre_p, pre_q))


def _log(x: Fraction) -> float:
    # big-int safe: math.log accepts arbitrarily large ints
    return math.log(x.numerator) - math.log(x.denominator)


def entropy(p: Iterable, base: int = 2) -> float:
    """Shannon entropy of a probability vector, ``0 log 0 = 0``."""
    if base < 2:
        raise ValueError("entropy base must be at least 2")
    h = 0.0
    for w in p:
        w = Fraction(w)
        if w > 0:
            h -= float(w) * _log(w)
    return max(h / math.log(base), 0.0)


def entropy_of_counts(counts: Iterable[int], base: int = 2) -> float:
    counts = [c for c in counts if c > 0]
    total = sum(counts)
    return entropy((Fraction(c, total) for c in counts), base)


def entropy_lower_bound(d: ClassSizeVector, base: int = 2) -> float:
    """Entropy of ``d / total``, the minimum over every pmf it majorizes."""
    return entropy((Fraction(s, d.alphabet_total) for s in d.sizes), base)
