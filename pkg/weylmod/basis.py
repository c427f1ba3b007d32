"""Index sets that depend on lambda: the bounds lambda_i^j, the basis index set
Pi_lambda and the branching index set Pi'_lambda.

Blocks are visited in application order. Superscript j = 1 is the rightmost
block of theta^K and acts on the highest weight vector first; inside a block
f_1 acts first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from weylmod.config import DEFAULT_MAX_BASIS_ELEMENTS
from weylmod.errors import InvalidInputError, ResourceCapError
from weylmod.monomial import MonomialIndex, content, layout
from weylmod.rootsys import AlphaVector, Weight, cartan_matrix, check_coords, check_dominant, num_positive_roots


@dataclass(frozen=True)
class BoundContext:
    """lambda together with the entries k_i^j fixed so far, keyed by (i, j)."""

    lam: Weight
    fixed: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", check_dominant(self.lam))
        cells = layout(len(self.lam)).positions
        for cell, value in self.fixed.items():
            if cell not in cells:
                raise InvalidInputError(f"k_{cell[0]}^{cell[1]} is not a cell at rank {len(self.lam)}.")
            if value < 0:
                raise InvalidInputError(f"k_{cell[0]}^{cell[1]} = {value} is negative.")

    @property
    def rank(self) -> int:
        return len(self.lam)

    @classmethod
    def from_index(cls, lam: Sequence[int], K: MonomialIndex) -> "BoundContext":
        cells = layout(K.rank).cells
        return cls(tuple(lam), dict(zip(cells, K.entries)))

    def value(self, i: int, j: int) -> int:
        if i < 1 or (i, j) not in layout(self.rank).positions:
            return 0
        try:
            return self.fixed[(i, j)]
        except KeyError:
            raise InvalidInputError(f"Bound needs k_{i}^{j}, which is not fixed yet.") from None


def bound(ctx: BoundContext, i: int, j: int) -> int:
    """lambda_i^j = lambda_i + sum_{q<=j} k_{i-1}^q + sum_{q<j} k_{i+1}^q - 2 sum_{q<j} k_i^q."""
    l = ctx.rank
    if (i, j) not in layout(l).positions:
        raise InvalidInputError(f"(i, j) = ({i}, {j}) is not a cell at rank {l}.")
    total = ctx.lam[i - 1]
    total += sum(ctx.value(i - 1, q) for q in range(1, j + 1))
    total += sum(ctx.value(i + 1, q) for q in range(1, j))
    total -= 2 * sum(ctx.value(i, q) for q in range(1, j))
    return total


def applied_weight(lam: Sequence[int], K: MonomialIndex, i: int, j: int) -> Weight:
    """Weight of the partial vector just before f_i^(k_i^j) acts, from the Cartan matrix."""
    lam = check_dominant(lam)
    l = len(lam)
    c = cartan_matrix(l)
    weight = list(lam)
    for q in range(1, j + 1):
        top = l - q + 1 if q < j else i - 1
        for m in range(1, top + 1):
            k = K.k(m, q)
            for t in range(l):
                weight[t] -= k * int(c[m - 1, t])
    return tuple(weight)


def _walk(
    lam: Weight,
    target: AlphaVector | None,
    entries: list[int],
    done: list[int],
    j: int,
    i: int,
    cur: list[int],
) -> Iterator[tuple[int, ...]]:
    l = len(lam)
    if j > l:
        yield tuple(entries)
        return
    top = l - j + 1
    if i > top:
        for m in range(1, top + 1):
            done[m] += cur[m]
        yield from _walk(lam, target, entries, done, j + 1, 1, [0] * (l + 2))
        for m in range(1, top + 1):
            done[m] -= cur[m]
        return
    low = cur[i - 1]
    high = lam[i - 1] + done[i - 1] + cur[i - 1] + done[i + 1] - 2 * done[i]
    if target is not None:
        remaining = target[i - 1] - done[i]
        if i == top:
            # last block holding subscript i: the content must be met exactly here
            low = max(low, remaining)
        high = min(high, remaining)
    pos = layout(l).positions[(i, j)]
    for k in range(low, high + 1):
        entries[pos] = k
        cur[i] = k
        yield from _walk(lam, target, entries, done, j, i + 1, cur)
    cur[i] = 0
    entries[pos] = 0


def enumerate_basis(
    lam: Sequence[int],
    content_filter: Sequence[int] | None = None,
    *,
    max_elements: int = DEFAULT_MAX_BASIS_ELEMENTS,
) -> Iterator[MonomialIndex]:
    """Depth-first stream of Pi_lambda, optionally only the K with content(K) equal to the filter."""
    lam = check_dominant(lam)
    l = len(lam)
    target = None
    if content_filter is not None:
        target = check_coords(content_filter, l, "content filter")
        if any(a < 0 for a in target):
            return
    entries = [0] * num_positive_roots(l)
    emitted = 0
    for flat in _walk(lam, target, entries, [0] * (l + 2), 1, 1, [0] * (l + 2)):
        emitted += 1
        if emitted > max_elements:
            raise ResourceCapError("basis element count", max_elements)
        yield MonomialIndex(l, flat)


def count_basis(
    lam: Sequence[int],
    content_filter: Sequence[int] | None = None,
    *,
    max_elements: int = DEFAULT_MAX_BASIS_ELEMENTS,
) -> int:
    return sum(1 for _ in enumerate_basis(lam, content_filter, max_elements=max_elements))


def content_histogram(
    lam: Sequence[int],
    *,
    max_elements: int = DEFAULT_MAX_BASIS_ELEMENTS,
) -> dict[AlphaVector, int]:
    hist: dict[AlphaVector, int] = {}
    for K in enumerate_basis(lam, max_elements=max_elements):
        a = content(K)
        hist[a] = hist.get(a, 0) + 1
    return hist


@dataclass(frozen=True)
class PiPrimeElement:
    p: tuple[int, ...]

    def __post_init__(self) -> None:
        p = tuple(int(v) for v in self.p)
        if not p:
            raise InvalidInputError("P needs at least one entry.")
        if p[0] < 0 or any(b < a for a, b in zip(p, p[1:])):
            raise InvalidInputError(f"P={list(p)} must satisfy 0 <= p_1 <= ... <= p_l.")
        object.__setattr__(self, "p", p)

    @property
    def rank(self) -> int:
        return len(self.p)

    def sort_key(self) -> tuple[int, ...]:
        # As a full K-tuple the last block reads (p_l, ..., p_1); right-to-left puts p_1 first.
        return self.p

    def as_index(self) -> MonomialIndex:
        l = self.rank
        return MonomialIndex(l, (0,) * (num_positive_roots(l) - l) + tuple(reversed(self.p)))

    def display_order(self) -> tuple[int, ...]:
        return tuple(reversed(self.p))

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.display_order()) + ")"


def in_pi_prime(lam: Sequence[int], P: PiPrimeElement) -> bool:
    lam = check_dominant(lam)
    if len(lam) != P.rank:
        return False
    prev = 0
    for lam_i, p_i in zip(lam, P.p):
        if p_i - prev > lam_i:
            return False
        prev = p_i
    return True


def enumerate_pi_prime(lam: Sequence[int]) -> list[PiPrimeElement]:
    lam = check_dominant(lam)
    rows: list[tuple[int, ...]] = [()]
    for lam_i in lam:
        grown = []
        for row in rows:
            prev = row[-1] if row else 0
            grown.extend(row + (p,) for p in range(prev, prev + lam_i + 1))
        rows = grown
    return sorted((PiPrimeElement(row) for row in rows), key=PiPrimeElement.sort_key)
