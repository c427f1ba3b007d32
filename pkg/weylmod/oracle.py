"""Independent multiplicity oracles: Freudenthal's recursion and Gelfand-Tsetlin
pattern counting."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from weylmod.rootsys import (
    AlphaVector,
    Weight,
    cartan_matrix,
    check_coords,
    check_dominant,
    positive_roots_ordered,
)
from weylmod.state.cache import MemoTable

# lambda -> {mu: multiplicity}, only positive multiplicities stored
FREUDENTHAL = MemoTable("freudenthal")


@lru_cache(maxsize=None)
def _root_data(l: int) -> tuple[tuple[int, int, tuple[int, ...]], ...]:
    """(i, j, omega-coordinates of alpha_ij) for each positive root."""
    c = cartan_matrix(l)
    out = []
    for root in positive_roots_ordered(l):
        omega = c[:, root.i - 1:root.j].sum(axis=1)
        out.append((root.i, root.j, tuple(int(v) for v in omega)))
    return tuple(out)


def _freudenthal_table(lam: Weight) -> dict[Weight, int]:
    l = len(lam)
    c = cartan_matrix(l)
    roots = _root_data(l)
    lam_vec = np.asarray(lam, dtype=np.int64)
    mult_by_alpha: dict[AlphaVector, int] = {(0,) * l: 1}
    table: dict[Weight, int] = {lam: 1}
    level = [(0,) * l]
    while level:
        candidates = sorted({a[:t] + (a[t] + 1,) + a[t + 1:] for a in level for t in range(l)})
        level = []
        for a in candidates:
            nu = tuple(int(v) for v in lam_vec - c @ np.asarray(a, dtype=np.int64))
            denom = sum(a_i * (lam_i + nu_i + 2) for a_i, lam_i, nu_i in zip(a, lam, nu))
            if denom <= 0:
                continue
            numer = 0
            for i, j, beta in roots:
                k_max = min(a[i - 1:j])
                for k in range(1, k_max + 1):
                    higher = a[:i - 1] + tuple(v - k for v in a[i - 1:j]) + a[j:]
                    m = mult_by_alpha.get(higher)
                    if not m:
                        continue
                    shifted = [nu_t + k * b_t for nu_t, b_t in zip(nu, beta)]
                    numer += sum(shifted[i - 1:j]) * m
            numer *= 2
            value, rem = divmod(numer, denom)
            assert rem == 0, f"Freudenthal division not exact at lambda={lam}, mu={nu}"
            if value > 0:
                mult_by_alpha[a] = value
                table[nu] = value
                level.append(a)
    return table


def freudenthal_character(lam: Sequence[int]) -> dict[Weight, int]:
    lam = check_dominant(lam)
    cached = FREUDENTHAL.get(lam)
    if cached is None:
        cached = FREUDENTHAL.put(lam, _freudenthal_table(lam))
    return dict(cached)


def freudenthal_mult(lam: Sequence[int], mu: Sequence[int]) -> int:
    lam = check_dominant(lam)
    mu = check_coords(mu, len(lam), "mu")
    return freudenthal_character(lam).get(mu, 0)


@dataclass(frozen=True)
class GTPattern:
    """Rows from the top (length l+1) down to a single entry."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        for r, row in enumerate(rows):
            if len(row) != len(rows) - r:
                raise ValueError(f"GT row {r + 1} must have length {len(rows) - r}.")
        for upper, lower in zip(rows, rows[1:]):
            if not all(upper[t] >= lower[t] >= upper[t + 1] for t in range(len(lower))):
                raise ValueError(f"Rows {upper} and {lower} do not interlace.")
        object.__setattr__(self, "rows", rows)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)


def top_row(lam: Sequence[int]) -> tuple[int, ...]:
    """The partition (lambda_1 + ... + lambda_l, ..., lambda_l, 0)."""
    lam = check_dominant(lam)
    out = []
    running = 0
    for v in reversed(lam):
        running += v
        out.append(running)
    return tuple(reversed(out)) + (0,)


def omega_to_epsilon(lam: Sequence[int], mu: Sequence[int]) -> tuple[int, ...] | None:
    """epsilon-coordinates (w_1, ..., w_{l+1}) of mu, normalised to the same total as the top row."""
    lam = check_dominant(lam)
    l = len(lam)
    mu = check_coords(mu, l, "mu")
    total = sum(top_row(lam))
    last, rem = divmod(total - sum(m * mu_m for m, mu_m in enumerate(mu, start=1)), l + 1)
    if rem:
        return None
    w = [last] * (l + 1)
    for i in range(l - 1, -1, -1):
        w[i] = w[i + 1] + mu[i]
    return tuple(w)


def row_sum_targets(lam: Sequence[int], mu: Sequence[int]) -> tuple[int, ...] | None:
    """Required sums of the rows of length 1, 2, ..., l."""
    w = omega_to_epsilon(lam, mu)
    if w is None:
        return None
    out = []
    running = 0
    for v in w[:-1]:
        running += v
        out.append(running)
    return tuple(out)


def _lower_rows(upper: tuple[int, ...], target: int | None):
    n = len(upper) - 1
    row = [0] * n

    def fill(t: int, remaining: int | None):
        if t == n:
            if remaining is None or remaining == 0:
                yield tuple(row)
            return
        low, high = upper[t + 1], upper[t]
        if remaining is not None:
            rest_low = sum(upper[t + 2:])
            rest_high = sum(upper[t + 1:n])
            low = max(low, remaining - rest_high)
            high = min(high, remaining - rest_low)
        for v in range(low, high + 1):
            row[t] = v
            yield from fill(t + 1, None if remaining is None else remaining - v)

    yield from fill(0, target)


@lru_cache(maxsize=1 << 16)
def _count(upper: tuple[int, ...], targets: tuple[int, ...] | None) -> int:
    if len(upper) == 1:
        return 1
    target = None if targets is None else targets[len(upper) - 2]
    return sum(_count(lower, targets) for lower in _lower_rows(upper, target))


def gt_count(lam: Sequence[int], mu: Sequence[int]) -> int:
    targets = row_sum_targets(lam, mu)
    if targets is None:
        return 0
    return _count(top_row(lam), targets)


def gt_total(lam: Sequence[int]) -> int:
    return _count(top_row(lam), None)


def gt_patterns(lam: Sequence[int], mu: Sequence[int] | None = None) -> list[GTPattern]:
    """All patterns with the top row of lambda (and the row sums of mu when given)."""
    targets = None
    if mu is not None:
        targets = row_sum_targets(lam, mu)
        if targets is None:
            return []
    out: list[GTPattern] = []

    def walk(rows: list[tuple[int, ...]]):
        upper = rows[-1]
        if len(upper) == 1:
            out.append(GTPattern(tuple(rows)))
            return
        target = None if targets is None else targets[len(upper) - 2]
        for lower in _lower_rows(upper, target):
            walk(rows + [lower])

    walk([top_row(lam)])
    return out
