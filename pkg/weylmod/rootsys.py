"""Type A_l root data: Cartan matrix, the fixed positive-root order, coordinate
conversions between the fundamental-weight and simple-root bases, and the Weyl
dimension formula."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from weylmod.errors import InvalidInputError

Weight = tuple[int, ...]
AlphaVector = tuple[int, ...]

# Exponents and coordinates are machine-width; anything larger is a caller bug.
COORD_LIMIT = 2**62


@dataclass(frozen=True, order=True)
class RootInterval:
    """The positive root alpha_i + ... + alpha_j, 1 <= i <= j <= l."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if not (1 <= self.i <= self.j):
            raise InvalidInputError(f"Invalid root interval ({self.i}, {self.j}).")

    @property
    def is_simple(self) -> bool:
        return self.i == self.j

    @property
    def height(self) -> int:
        return self.j - self.i + 1

    def concatenates(self, other: "RootInterval") -> bool:
        """True when self ends immediately before other starts."""
        return self.j + 1 == other.i

    def label(self) -> str:
        return f"f{self.i}" if self.is_simple else f"f{self.i}_{self.j}"


def check_rank(l: int) -> int:
    if isinstance(l, bool) or not isinstance(l, (int, np.integer)) or int(l) < 1:
        raise InvalidInputError(f"Rank must be a positive integer (got {l!r}).")
    return int(l)


def check_coords(values: Iterable[int], l: int, what: str = "weight") -> tuple[int, ...]:
    coords = tuple(int(v) for v in values)
    if len(coords) != l:
        raise InvalidInputError(f"{what} {list(coords)} must have length {l}.")
    if any(abs(v) >= COORD_LIMIT for v in coords):
        raise OverflowError(f"{what} {list(coords)} exceeds machine-width coordinates.")
    return coords


def is_dominant(weight: Sequence[int]) -> bool:
    return all(int(v) >= 0 for v in weight)


def check_dominant(weight: Sequence[int]) -> Weight:
    lam = check_coords(weight, len(weight))
    if not lam:
        raise InvalidInputError("A weight needs at least one coordinate.")
    if not is_dominant(lam):
        raise InvalidInputError(f"lambda={list(lam)} is not dominant (negative coordinate).")
    return lam


@lru_cache(maxsize=None)
def _cartan(l: int) -> np.ndarray:
    c = 2 * np.eye(l, dtype=np.int64)
    idx = np.arange(l - 1)
    c[idx, idx + 1] = -1
    c[idx + 1, idx] = -1
    c.setflags(write=False)
    return c


def cartan_matrix(l: int) -> np.ndarray:
    return _cartan(check_rank(l))


@lru_cache(maxsize=None)
def _roots(l: int) -> tuple[RootInterval, ...]:
    out = []
    for b in range(1, l + 1):
        for i in range(b, 0, -1):
            out.append(RootInterval(i, b))
    return tuple(out)


def positive_roots_ordered(l: int) -> tuple[RootInterval, ...]:
    """alpha_1; alpha_2, alpha_12; ...; alpha_b, alpha_{b-1 b}, ..., alpha_{1 b}; ..."""
    return _roots(check_rank(l))


def root_position(i: int, j: int) -> int:
    """0-based position of alpha_{i j} in positive_roots_ordered."""
    return j * (j - 1) // 2 + (j - i)


def num_positive_roots(l: int) -> int:
    return l * (l + 1) // 2


def weight_to_alpha(l: int, d: Sequence[int]) -> AlphaVector | None:
    """Solve C a = d exactly; None unless every a_i is a nonnegative integer."""
    n = check_rank(l)
    rhs = check_coords(d, n, "difference")
    # Thomas sweep on the tridiagonal (-1, 2, -1) system.
    cp = [Fraction(0)] * n
    dp = [Fraction(0)] * n
    cp[0] = Fraction(-1, 2)
    dp[0] = Fraction(rhs[0], 2)
    for t in range(1, n):
        denom = 2 + cp[t - 1]
        cp[t] = Fraction(-1) / denom
        dp[t] = (rhs[t] + dp[t - 1]) / denom
    x = [Fraction(0)] * n
    x[n - 1] = dp[n - 1]
    for t in range(n - 2, -1, -1):
        x[t] = dp[t] - cp[t] * x[t + 1]
    if any(v.denominator != 1 or v < 0 for v in x):
        return None
    return tuple(int(v) for v in x)


def alpha_to_weight(l: int, a: Sequence[int]) -> Weight:
    n = check_rank(l)
    coeffs = check_coords(a, n, "alpha vector")
    if any(abs(v) >= COORD_LIMIT // 4 for v in coeffs):
        raise OverflowError(f"alpha vector {list(coeffs)} would overflow machine-width coordinates.")
    out = _cartan(n) @ np.asarray(coeffs, dtype=np.int64)
    return tuple(int(v) for v in out)


def restrict_weight(weight: Sequence[int]) -> Weight:
    lam = tuple(int(v) for v in weight)
    if len(lam) < 2:
        raise InvalidInputError("Rank 1 has no subalgebra to restrict to.")
    return lam[:-1]


def simple_reflection(weight: Sequence[int], i: int) -> Weight:
    """s_i mu = mu - <mu, alpha_i^vee> alpha_i, in omega-coordinates (i is 1-based)."""
    mu = tuple(int(v) for v in weight)
    l = len(mu)
    if not 1 <= i <= l:
        raise InvalidInputError(f"Simple reflection index {i} outside 1..{l}.")
    column = _cartan(l)[:, i - 1]
    return tuple(int(m - mu[i - 1] * c) for m, c in zip(mu, column))


def weyl_dim(weight: Sequence[int]) -> int:
    lam = check_dominant(weight)
    num = 1
    den = 1
    for root in _roots(len(lam)):
        num *= sum(lam[m - 1] + 1 for m in range(root.i, root.j + 1))
        den *= root.height
    value, rem = divmod(num, den)
    assert rem == 0, "Weyl dimension formula must divide exactly"
    return value


def highest_root_box(weight: Sequence[int]) -> AlphaVector:
    """alpha-coordinates of lambda - w0(lambda); every weight of V(lambda) lies in this box."""
    lam = check_dominant(weight)
    diff = tuple(a + b for a, b in zip(lam, reversed(lam)))
    box = weight_to_alpha(len(lam), diff)
    assert box is not None
    return box


def dominant_weights(l: int, max_coord: int) -> list[Weight]:
    n = check_rank(l)
    return [tuple(w) for w in itertools.product(range(max_coord + 1), repeat=n)]
