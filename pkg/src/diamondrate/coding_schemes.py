"""Executable variable-length codes on the diamond network.

A codeword is a tuple of ints in ``range(z_size)``; a message block is a
tuple of ints in ``range(a_size)``. Edge encoders follow the network: the
two relays see X3's description, and each relay combines it with its own
block before sending to the terminal.
"""
from __future__ import annotations

import heapq
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .demand_function import DemandFunction, Pmf
from .equivalence import DEFAULT_CAP
from .errors import ResourceCapError

Word = tuple[int, ...]


@dataclass(frozen=True)
class SourceNetworkCode:
    name: str
    k: int
    a_size: int
    z_size: int
    enc_31: Callable[[Word], Word]
    enc_32: Callable[[Word], Word]
    enc_1: Callable[[Word, Word], Word]
    enc_2: Callable[[Word, Word], Word]
    dec: Callable[[Word, Word], Word]
    # exact (E l31, E l32, E l1, E l2) when the scheme's structure gives them
    analytic_lengths: tuple[Fraction, Fraction, Fraction, Fraction] | None = None


@dataclass(frozen=True)
class ExpectedLengthReport:
    k: int
    a_size: int
    z_size: int
    e_len_31: Fraction
    e_len_32: Fraction
    e_len_1: Fraction
    e_len_2: Fraction
    method: str = "enumeration"

    def _scale(self) -> float:
        return math.log(self.z_size) / (self.k * math.log(self.a_size))

    def lengths(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.e_len_31, self.e_len_32, self.e_len_1, self.e_len_2)

    def rates(self) -> tuple[float, float, float, float]:
        """(R31, R32, R1, R2) in units of k log|A|."""
        return tuple(float(e) * self._scale() for e in self.lengths())

    def exact_rates(self) -> tuple[Fraction, ...] | None:
        """Rates as fractions when |Z| = |A|, else None."""
        if self.z_size != self.a_size:
            return None
        return tuple(e / self.k for e in self.lengths())

    def max_rate(self) -> float:
        """Computation-rate analogue k log|A| / (max(E l1, E l2) log|Z|)."""
        return 1.0 / (float(max(self.e_len_1, self.e_len_2)) * self._scale())

    def to_dict(self) -> dict:
        return {
            "k": self.k, "a_size": self.a_size, "z_size": self.z_size,
            "e_len": {e: str(v) for e, v in zip(("31", "32", "1", "2"), self.lengths())},
            "rates": dict(zip(("R31", "R32", "R1", "R2"), self.rates())),
            "max_rate": self.max_rate(),
            "method": self.method,
        }


def _blocks(a_size: int, k: int) -> list[Word]:
    return list(itertools.product(range(a_size), repeat=k))


def check_zero_error(code: SourceNetworkCode, f: DemandFunction, cap: int = DEFAULT_CAP) -> bool:
    """Exhaustively confirm the terminal recovers f^k on every message triple."""
    a, k, bsz = f.a_size, code.k, f.b_size
    if code.a_size != a:
        return False
    if a ** (3 * k) > cap:
        raise ResourceCapError(f"zero-error sweep needs {a ** (3 * k)} states, cap is {cap}")
    blocks = _blocks(a, k)
    digits = np.array(blocks, dtype=np.int64).reshape(len(blocks), k)
    table = np.array(f.table, dtype=np.int64).reshape(a, a, a)
    place = bsz ** np.arange(k, dtype=np.int64)
    cache: dict[tuple[Word, Word], int] = {}

    def decode(z1: Word, z2: Word) -> int:
        key = (z1, z2)
        if key not in cache:
            try:
                out = tuple(code.dec(z1, z2))
            except (ValueError, KeyError, IndexError):
                out = ()
            ok = len(out) == k and all(0 <= v < bsz for v in out)
            cache[key] = sum(v * bsz ** i for i, v in enumerate(out)) if ok else -1
        return cache[key]

    for x3 in blocks:
        z31, z32 = code.enc_31(x3), code.enc_32(x3)
        z1s = [code.enc_1(x1, z31) for x1 in blocks]
        z2s = [code.enc_2(x2, z32) for x2 in blocks]
        expected = np.zeros((len(blocks), len(blocks)), dtype=np.int64)
        for i in range(k):
            expected += table[digits[:, i][:, None], digits[:, i][None, :], x3[i]] * place[i]
        got = np.array([[decode(z1, z2) for z2 in z2s] for z1 in z1s], dtype=np.int64)
        if not np.array_equal(got, expected):
            return False
    return True


def expected_lengths(code: SourceNetworkCode, f: DemandFunction | None = None,
                     cap: int = DEFAULT_CAP) -> ExpectedLengthReport:
    """Exact expected codeword lengths under uniform i.i.d. messages.

    Enumerates A^k x A^k when that fits under ``cap``; otherwise falls back to
    the scheme's analytic lengths, or raises ``ResourceCapError``.
    """
    a, k = code.a_size, code.k
    if f is not None and f.a_size != a:
        raise ValueError("code and demand function disagree on |A|")
    if a ** (2 * k) > cap:
        if code.analytic_lengths is None:
            raise ResourceCapError(f"length sweep needs {a ** (2 * k)} states, cap is {cap}")
        return ExpectedLengthReport(k, a, code.z_size, *code.analytic_lengths, method="analytic")
    blocks = _blocks(a, k)
    n = len(blocks)
    s31 = s32 = s1 = s2 = 0
    for x3 in blocks:
        z31, z32 = code.enc_31(x3), code.enc_32(x3)
        s31 += len(z31)
        s32 += len(z32)
        s1 += sum(len(code.enc_1(x, z31)) for x in blocks)
        s2 += sum(len(code.enc_2(x, z32)) for x in blocks)
    return ExpectedLengthReport(k, a, code.z_size, Fraction(s31, n), Fraction(s32, n),
                                Fraction(s1, n * n), Fraction(s2, n * n))


def codeword_distribution(code: SourceNetworkCode, edge: str) -> Pmf:
    """Exact distribution of the codeword on one edge ("31", "32", "1" or "2")."""
    blocks = _blocks(code.a_size, code.k)
    counts: Counter = Counter()
    for x3 in blocks:
        if edge == "31":
            counts[code.enc_31(x3)] += 1
        elif edge == "32":
            counts[code.enc_32(x3)] += 1
        elif edge == "1":
            z31 = code.enc_31(x3)
            counts.update(code.enc_1(x, z31) for x in blocks)
        elif edge == "2":
            z32 = code.enc_32(x3)
            counts.update(code.enc_2(x, z32) for x in blocks)
        else:
            raise ValueError(f"unknown edge {edge!r}")
    return Pmf.from_counts(counts.values())


# -- Huffman ---------------------------------------------------------------

def huffman_code(weights: Sequence, z_size: int = 2) -> list[Word]:
    """Optimal prefix-free code for positive ``weights`` over ``range(z_size)``.

    Ties are broken toward the node with the smallest index (leaves keep
    their input position, merged nodes are numbered after all leaves). A
    single symbol gets the empty codeword.
    """
    if z_size < 2:
        raise ValueError("z_size must be at least 2")
    n = len(weights)
    if n == 0:
        raise ValueError("need at least one symbol")
    if n == 1:
        return [()]
    heap = [(w, i) for i, w in enumerate(weights)]
    next_id = n
    while (len(heap) - 1) % (z_size - 1):
        heap.append((0, next_id))
        next_id += 1
    heapq.heapify(heap)
    children: dict[int, list[int]] = {}
    while len(heap) > 1:
        group = [heapq.heappop(heap) for _ in range(z_size)]
        children[next_id] = [node for _, node in group]
        heapq.heappush(heap, (sum(w for w, _ in group), next_id))
        next_id += 1
    codes: list[Word] = [()] * n
    stack = [(heap[0][1], ())]
    while stack:
        node, prefix = stack.pop()
        if node in children:
            for digit, child in enumerate(children[node]):
                stack.append((child, prefix + (digit,)))
        elif node < n:
            codes[node] = prefix
    return codes


def huffman_expected_length(p: Pmf | Sequence, z_size: int = 2) -> Fraction:
    ws = [Fraction(w) for w in p if Fraction(w) > 0]
    total = sum(ws)
    codes = huffman_code(ws, z_size)
    return sum((w * len(c) for w, c in zip(ws, codes)), Fraction(0)) / total


def _prefix_decode(word: Word, table: dict[Word, Word]) -> tuple[Word, Word]:
    """Strip one codeword from the front of ``word``; return (symbol, rest)."""
    for end in range(len(word) + 1):
        head = word[:end]
        if head in table:
            return table[head], word[end:]
    raise ValueError("no codeword is a prefix of the input")


# -- schemes ---------------------------------------------------------------

def gf2_scheme(k: int, c: int) -> SourceNetworkCode:
    """Binary XOR code: X3's first c bits go via s1, the rest via s2."""
    if k < 1 or not 0 <= c <= k:
        raise ValueError(f"need k >= 1 and 0 <= c <= k, got k={k}, c={c}")

    def enc_1(x1: Word, z31: Word) -> Word:
        return tuple((x1[i] + z31[i]) % 2 for i in range(c)) + tuple(x1[c:])

    def enc_2(x2: Word, z32: Word) -> Word:
        return tuple(x2[:c]) + tuple((x2[c + j] + z32[j]) % 2 for j in range(k - c))

    def dec(z1: Word, z2: Word) -> Word:
        if len(z1) != k or len(z2) != k:
            raise ValueError("codeword length mismatch")
        return tuple((p + q) % 2 for p, q in zip(z1, z2))

    return SourceNetworkCode(
        name="gf2", k=k, a_size=2, z_size=2,
        enc_31=lambda x3: tuple(x3[:c]), enc_32=lambda x3: tuple(x3[c:]),
        enc_1=enc_1, enc_2=enc_2, dec=dec,
        analytic_lengths=(Fraction(c), Fraction(k - c), Fraction(k), Fraction(k)),
    )


def identity_scheme(f: DemandFunction, k: int) -> SourceNetworkCode:
    """Forward everything; the terminal evaluates f itself. Uses |Z| = |A|."""
    def dec(z1: Word, z2: Word) -> Word:
        if len(z1) != 2 * k or len(z2) != 2 * k:
            raise ValueError("codeword length mismatch")
        return f.block(z1[:k], z2[:k], z1[k:])

    return SourceNetworkCode(
        name="identity", k=k, a_size=f.a_size, z_size=f.a_size,
        enc_31=tuple, enc_32=tuple,
        enc_1=lambda x1, z31: tuple(x1) + tuple(z31),
        enc_2=lambda x2, z32: tuple(x2) + tuple(z32),
        dec=dec,
        analytic_lengths=(Fraction(k), Fraction(k), Fraction(2 * k), Fraction(2 * k)),
    )


SUM_WEIGHTS = (1, 2, 1)  # X + X3 for uniform bits, in units of 1/4


def half_block_pmf(m: int) -> tuple[list[Word], list[int]]:
    """Outcomes of m i.i.d. ternary sums with their weights in units of 4^-m."""
    outcomes = _blocks(3, m)
    weights = [math.prod(SUM_WEIGHTS[s] for s in o) for o in outcomes]
    return outcomes, weights


def arith_scheme(k: int, cap: int = DEFAULT_CAP) -> SourceNetworkCode:
    """Binary arithmetic-sum code with Huffman-compressed partial sums.

    s1 sends Huffman(X1 + X3 on the first half) followed by X1's second half
    raw; s2 sends X2's first half raw followed by Huffman(X2 + X3 on the
    second half). Both relays receive all of X3.
    """
    if k < 2 or k % 2:
        raise ValueError(f"k must be a positive even integer, got {k}")
    half = k // 2
    if 3 ** half > cap:
        raise ResourceCapError(f"Huffman table needs {3 ** half} entries, cap is {cap}")
    outcomes, weights = half_block_pmf(half)
    codes = huffman_code(weights, 2)
    book = dict(zip(outcomes, codes))
    inverse = {c: o for o, c in book.items()}
    huff_len = Fraction(sum(w * len(c) for w, c in zip(weights, codes)), 4 ** half)

    def enc_1(x1: Word, z31: Word) -> Word:
        return book[tuple(x1[i] + z31[i] for i in range(half))] + tuple(x1[half:])

    def enc_2(x2: Word, z32: Word) -> Word:
        return tuple(x2[:half]) + book[tuple(x2[i] + z32[i] for i in range(half, k))]

    def dec(z1: Word, z2: Word) -> Word:
        s13, x1_tail = _prefix_decode(z1, inverse)
        x2_head, rest = z2[:half], z2[half:]
        s23, leftover = _prefix_decode(rest, inverse)
        if len(x1_tail) != half or len(x2_head) != half or leftover:
            raise ValueError("malformed codeword")
        return (tuple(s + x for s, x in zip(s13, x2_head))
                + tuple(x + s for x, s in zip(x1_tail, s23)))

    e_relay = huff_len + half
    return SourceNetworkCode(
        name="arith", k=k, a_size=2, z_size=2,
        enc_31=tuple, enc_32=tuple, enc_1=enc_1, enc_2=enc_2, dec=dec,
        analytic_lengths=(Fraction(k), Fraction(k), e_relay, e_relay),
    )


def is_prefix_free(words: Sequence[Word]) -> bool:
    ordered = sorted(words)
    return all(nxt[:len(cur)] != cur for cur, nxt in zip(ordered, ordered[1:])) \
        and len(set(words)) == len(words)


def arith_structure_check(k: int, cap: int = DEFAULT_CAP) -> bool:
    """Zero-error argument for ``arith_scheme`` that avoids the 2^(3k) sweep.

    The decoder is correct when (1) the half-block Huffman code is prefix-free
    and round-trips every outcome, so both parses are unique, and (2) the
    per-component recombination is right, which the k = 2 scheme confirms
    exhaustively over all (x1, x2, x3) bits.
    """
    half = k // 2
    code = arith_scheme(k, cap)
    outcomes, weights = half_block_pmf(half)
    words = huffman_code(weights, 2)
    if not is_prefix_free(words):
        return False
    inverse = dict(zip(words, outcomes))
    tail = (1,) * half
    for o, w in zip(outcomes, words):
        if _prefix_decode(w + tail, inverse) != (o, tail):
            return False
    arith = DemandFunction.from_callable(lambda x, y, z: x + y + z, 2, 4)
    if not check_zero_error(arith_scheme(2), arith, cap):
        return False
    # spot-check the assembled k-block coder on structured inputs
    zeros, ones = (0,) * k, (1,) * k
    alt = tuple(i % 2 for i in range(k))
    for x1, x2, x3 in itertools.product((zeros, ones, alt), repeat=3):
        z1 = code.enc_1(x1, code.enc_31(x3))
        z2 = code.enc_2(x2, code.enc_32(x3))
        if code.dec(z1, z2) != arith.block(x1, x2, x3):
            return False
    return True
