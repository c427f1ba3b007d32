"""Exponent tuples: the right-to-left order on N^{l(l+1)/2}, the triangular
index K of the theta monomials, the flat PBW index I, and the maps between them.

K is stored in the tuple order (k_1^l, k_2^{l-1}, k_1^{l-1}, ..., k_l^1, ..., k_1^1):
block b (1-based) carries superscript j = l - b + 1 and lists its entries from
subscript b down to subscript 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Iterable, Sequence

from weylmod.errors import InvalidInputError
from weylmod.rootsys import AlphaVector, check_rank, num_positive_roots

ExponentVector = tuple[int, ...]


class Order(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Layout:
    rank: int
    size: int
    positions: dict[tuple[int, int], int]
    cells: tuple[tuple[int, int], ...]

    def position(self, i: int, j: int) -> int | None:
        return self.positions.get((i, j))


@lru_cache(maxsize=None)
def layout(l: int) -> Layout:
    """Table (subscript i, superscript j) <-> flat position of k_i^j."""
    l = check_rank(l)
    positions: dict[tuple[int, int], int] = {}
    cells: list[tuple[int, int]] = []
    for b in range(1, l + 1):
        j = l - b + 1
        for i in range(b, 0, -1):
            positions[(i, j)] = len(cells)
            cells.append((i, j))
    return Layout(rank=l, size=len(cells), positions=positions, cells=tuple(cells))


def _check_vector(values: Iterable[int], l: int, what: str) -> tuple[int, ...]:
    vec = tuple(int(v) for v in values)
    if len(vec) != num_positive_roots(l):
        raise InvalidInputError(f"{what} has length {len(vec)}, expected {num_positive_roots(l)} for rank {l}.")
    if any(v < 0 for v in vec):
        raise InvalidInputError(f"{what} {list(vec)} has a negative entry.")
    return vec


@dataclass(frozen=True)
class MonomialIndex:
    rank: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        check_rank(self.rank)
        object.__setattr__(self, "entries", _check_vector(self.entries, self.rank, "K"))

    @classmethod
    def zero(cls, l: int) -> "MonomialIndex":
        return cls(l, (0,) * num_positive_roots(l))

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> "MonomialIndex":
        l = len(blocks)
        for b, block in enumerate(blocks, start=1):
            if len(block) != b:
                raise InvalidInputError(f"Block {b} must have {b} entries (got {len(block)}).")
        return cls(l, tuple(int(v) for block in blocks for v in block))

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out = []
        start = 0
        for b in range(1, self.rank + 1):
            out.append(self.entries[start:start + b])
            start += b
        return tuple(out)

    def k(self, i: int, j: int) -> int:
        """k_i^j; subscript 0 and cells outside the triangle read as 0."""
        pos = layout(self.rank).position(i, j)
        return 0 if pos is None else self.entries[pos]

    def __add__(self, other: "MonomialIndex") -> "MonomialIndex":
        if self.rank != other.rank:
            raise InvalidInputError("Cannot add monomial indices of different rank.")
        return MonomialIndex(self.rank, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __str__(self) -> str:
        return "(" + "; ".join(",".join(str(v) for v in block) for block in self.blocks) + ")"


def sort_key(values: Sequence[int]) -> tuple[int, ...]:
    """Lexicographic key realising the right-to-left order."""
    return tuple(reversed(tuple(values)))


def compare(left: Sequence[int], right: Sequence[int]) -> Order:
    if len(left) != len(right):
        raise InvalidInputError(f"Cannot compare tuples of lengths {len(left)} and {len(right)}.")
    for a, b in zip(reversed(tuple(left)), reversed(tuple(right))):
        if a < b:
            return Order.LESS
        if a > b:
            return Order.GREATER
    return Order.EQUAL


def is_in_pi(K: MonomialIndex) -> bool:
    return all(all(x >= y for x, y in zip(block, block[1:])) for block in K.blocks)


def i_of_k(K: MonomialIndex) -> ExponentVector:
    """Leading PBW exponent of theta^K: per block, consecutive differences then the smallest entry."""
    if not is_in_pi(K):
        raise InvalidInputError(f"K={K} is not in Pi (a block is not weakly decreasing).")
    out: list[int] = []
    for block in K.blocks:
        out.extend(x - y for x, y in zip(block, block[1:]))
        out.append(block[-1])
    return tuple(out)


def k_of_i(I: Sequence[int], l: int | None = None) -> MonomialIndex:
    """Inverse of i_of_k: prefix sums (from the smallest subscript) within each group."""
    if l is None:
        l = _rank_of_length(len(I))
    vec = _check_vector(I, l, "I")
    blocks = []
    start = 0
    for b in range(1, l + 1):
        group = vec[start:start + b]
        start += b
        # group lists roots (b,b), (b-1,b), ..., (1,b); k_i is the sum of the last i entries.
        sums = []
        running = 0
        for d in reversed(group):
            running += d
            sums.append(running)
        blocks.append(tuple(reversed(sums)))
    return MonomialIndex.from_blocks(blocks)


def _rank_of_length(n: int) -> int:
    l = 1
    while num_positive_roots(l) < n:
        l += 1
    if num_positive_roots(l) != n:
        raise InvalidInputError(f"Length {n} is not l(l+1)/2 for any rank l.")
    return l


def content(K: MonomialIndex) -> AlphaVector:
    """c_i = sum over j of k_i^j: the total exponent of f_i in theta^K."""
    c = [0] * K.rank
    for (i, _j), value in zip(layout(K.rank).cells, K.entries):
        c[i - 1] += value
    return tuple(c)


def split(K: MonomialIndex) -> tuple[MonomialIndex, MonomialIndex]:
    """K = K2 + K1 with K2 in Pi_{l-1} (last block zero) and K1 in Pi' (only the last block)."""
    l = K.rank
    tail = num_positive_roots(l) - l
    k2 = MonomialIndex(l, K.entries[:tail] + (0,) * l)
    k1 = MonomialIndex(l, (0,) * tail + K.entries[tail:])
    return k2, k1


def lift(K: MonomialIndex) -> MonomialIndex:
    """Embed a rank l-1 index into Pi_{l-1} at rank l by appending a zero last block."""
    l = K.rank + 1
    return MonomialIndex(l, K.entries + (0,) * l)


def render_theta(K: MonomialIndex) -> str:
    parts = []
    for (i, _j), value in zip(layout(K.rank).cells, K.entries):
        if value:
            parts.append(f"f{i}^({value})")
    return " ".join(parts) if parts else "1"
