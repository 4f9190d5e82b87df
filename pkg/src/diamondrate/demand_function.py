"""Demand-function tables f: A x A x A -> B and uniform-source probabilities.

Alphabets are index sets ``{0, ..., n-1}``. The table is dense and stored
row-major in ``(x1, x2, x3)`` order, i.e. entry ``x1*a^2 + x2*a + x3``.
"""
from __future__ import annotations

import itertools
import json
from importlib import resources
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DemandFunctionError


@dataclass(frozen=True)
class Pmf:
    """Exact probability vector. Weights are ``Fraction`` and sum to 1."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        ws = tuple(Fraction(w) for w in self.weights)
        if not ws:
            raise ValueError("pmf must have at least one atom")
        if any(w < 0 for w in ws):
            raise ValueError("pmf weights must be non-negative")
        if sum(ws) != 1:
            raise ValueError(f"pmf weights sum to {sum(ws)}, not 1")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> "Pmf":
        counts = list(counts)
        total = sum(counts)
        if total <= 0:
            raise ValueError("counts must have a positive total")
        return cls(tuple(Fraction(c, total) for c in counts))

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i: int) -> Fraction:
        return self.weights[i]


@dataclass(frozen=True)
class DemandFunction:
    a_size: int
    b_size: int
    table: tuple[int, ...]
    name: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        _validate(self)

    def __call__(self, x1: int, x2: int, x3: int) -> int:
        a = self.a_size
        return self.table[(x1 * a + x2) * a + x3]

    def block(self, x1: Sequence[int], x2: Sequence[int], x3: Sequence[int]) -> tuple[int, ...]:
        """Componentwise evaluation on length-k blocks."""
        return tuple(self(p, q, r) for p, q, r in zip(x1, x2, x3))

    @classmethod
    def from_callable(cls, fn: Callable[[int, int, int], int], a_size: int, b_size: int,
                      name: str | None = None) -> "DemandFunction":
        table = [fn(x1, x2, x3) for x1, x2, x3 in itertools.product(range(a_size), repeat=3)]
        return cls(a_size, b_size, tuple(table), name)

    def symmetric(self) -> bool:
        """True if f is invariant under swapping its first two arguments."""
        a = range(self.a_size)
        return all(self(x, y, z) == self(y, x, z) for x in a for y in a for z in a)

    def canonical(self) -> dict:
        out = {"a_size": self.a_size, "b_size": self.b_size, "table": list(self.table)}
        if self.name is not None:
            out["name"] = self.name
        return out


def _validate(f: DemandFunction) -> None:
    if not isinstance(f.a_size, int) or f.a_size < 2:
        raise DemandFunctionError(f"a_size must be an integer > 1, got {f.a_size!r}")
    if not isinstance(f.b_size, int) or f.b_size < 2:
        raise DemandFunctionError(f"b_size must be an integer > 1, got {f.b_size!r}")
    expected = f.a_size ** 3
    if len(f.table) != expected:
        raise DemandFunctionError(f"table has {len(f.table)} entries, expected {expected}")
    for i, v in enumerate(f.table):
        if not 0 <= v < f.b_size:
            raise DemandFunctionError(f"table[{i}] = {v} is outside [0, {f.b_size})")
    for arg in (1, 2, 3):
        if _is_constant_in(f, arg):
            raise DemandFunctionError(f"constant in argument {arg}")


def _is_constant_in(f: DemandFunction, arg: int) -> bool:
    a = range(f.a_size)
    for others in itertools.product(a, repeat=2):
        values = set()
        for x in a:
            args = list(others)
            args.insert(arg - 1, x)
            values.add(f(*args))
        if len(values) > 1:
            return False
    return True


def loads(text: str) -> DemandFunction:
    """Parse the JSON demand-function document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DemandFunctionError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DemandFunctionError("top-level JSON value must be an object")
    for key in ("a_size", "b_size", "table"):
        if key not in doc:
            raise DemandFunctionError(f"missing field {key!r}")
    a_size, b_size, table = doc["a_size"], doc["b_size"], doc["table"]
    if not isinstance(a_size, int) or isinstance(a_size, bool):
        raise DemandFunctionError("a_size must be an integer")
    if not isinstance(b_size, int) or isinstance(b_size, bool):
        raise DemandFunctionError("b_size must be an integer")
    if not isinstance(table, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in table):
        raise DemandFunctionError("table must be a flat array of integers")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise DemandFunctionError("name must be a string")
    return DemandFunction(a_size, b_size, tuple(table), name)


load = loads


def load_path(path) -> DemandFunction:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


FIXTURES = ("gf3", "arithsum", "gf2sum")


def load_fixture(name: str) -> DemandFunction:
    """Load one of the bundled tables by stem (``"gf3"``) or file name."""
    stem = name[:-5] if name.endswith(".json") else name
    if stem not in FIXTURES:
        raise DemandFunctionError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return loads(resources.files(__package__).joinpath("fixtures").joinpath(f"{stem}.json").read_text("utf-8"))


def emit(f: DemandFunction) -> str:
    """Serialize to the same JSON document format ``loads`` accepts."""
    return json.dumps(f.canonical(), sort_keys=True)


def preimage_count(f: DemandFunction, b: int) -> int:
    return sum(1 for v in f.table if v == b)


def function_pmf(f: DemandFunction) -> Pmf:
    """Distribution of f(X1, X2, X3) under i.i.d. uniform sources."""
    return Pmf.from_counts(preimage_count(f, b) for b in range(f.b_size))
