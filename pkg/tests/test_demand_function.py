import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given

from diamondrate import (DemandFunction, DemandFunctionError, emit, function_pmf, load,
                         preimage_count)
from conftest import demand_functions


def gf3_polynomial(x1, x2, x3):
    # closed-form polynomial over GF(3) for the running-example table
    return (x1**2*x2**2*x3 - x1**2*x2*x3**2 + x1*x2**2*x3**2 + x1**2*x2*x3 + x1*x2**2*x3
            + x1**2*x3**2 - x2**2*x3**2 + x1**2*x3 + x2**2*x3 + x1*x3**2 - x2*x3**2
            - x1*x3 - x2*x3 - x3**2 + x1 - x2 + x3) % 3


def test_gf3_fixture_matches_polynomial(gf3):
    for x in itertools.product(range(3), repeat=3):
        assert gf3(*x) == gf3_polynomial(*x)


def test_load_gf3(gf3):
    assert (gf3.a_size, gf3.b_size) == (3, 3)
    assert gf3(0, 1, 0) == 2


def test_load_arith(arith):
    assert arith(1, 1, 1) == 3


def test_row_major_layout():
    doc = {"a_size": 2, "b_size": 8, "table": list(range(8))}
    f = load(json.dumps(doc))
    assert f(1, 0, 1) == 1 * 4 + 0 * 2 + 1


@pytest.mark.parametrize("table, arg", [
    ([0] * 8, 1),
    ([x2 ^ x3 for x1 in range(2) for x2 in range(2) for x3 in range(2)], 1),
    ([x1 ^ x3 for x1 in range(2) for x2 in range(2) for x3 in range(2)], 2),
    ([x1 * x2 for x1 in range(2) for x2 in range(2) for x3 in range(2)], 3),
])
def test_constancy_rejected(table, arg):
    with pytest.raises(DemandFunctionError, match=f"constant in argument {arg}"):
        load(json.dumps({"a_size": 2, "b_size": 2, "table": table}))


@pytest.mark.parametrize("doc", [
    "not json",
    "[1, 2]",
    '{"a_size": 2, "b_size": 2}',
    '{"a_size": 2, "b_size": 2, "table": [0, 1]}',
    '{"a_size": 2, "b_size": 2, "table": [0, 1, 1, 0, 1, 0, 0, 2]}',
    '{"a_size": 1, "b_size": 2, "table": [0]}',
    '{"a_size": 2, "b_size": 2, "table": [0, 1, 1, 0, 1, 0, 0, true]}',
])
def test_malformed_documents(doc):
    with pytest.raises(DemandFunctionError):
        load(doc)


def test_function_pmf_gf3(gf3):
    assert function_pmf(gf3).weights == (Fraction(12, 27), Fraction(12, 27), Fraction(3, 27))


def test_function_pmf_arith(arith):
    counts = [0] * 4
    for bits in itertools.product(range(2), repeat=3):
        counts[sum(bits)] += 1
    assert function_pmf(arith).weights == tuple(Fraction(c, 8) for c in counts)
    assert counts == [1, 3, 3, 1]


def test_function_pmf_gf2(gf2):
    assert function_pmf(gf2).weights == (Fraction(1, 2), Fraction(1, 2))


def test_preimage_counts(gf3, arith):
    assert preimage_count(gf3, 2) == 3
    assert preimage_count(gf3, 0) == 12
    assert preimage_count(arith, 0) == 1


@given(demand_functions())
def test_preimage_counts_partition_the_cube(f):
    counts = [preimage_count(f, b) for b in range(f.b_size)]
    assert sum(counts) == f.a_size ** 3
    assert function_pmf(f).weights == tuple(Fraction(c, f.a_size ** 3) for c in counts)


@given(demand_functions())
def test_emit_load_round_trip(f):
    assert load(emit(f)) == f


def test_from_callable_equals_fixture(gf2):
    assert DemandFunction.from_callable(lambda x, y, z: (x + y + z) % 2, 2, 2,
                                        name="gf2-sum") == gf2
