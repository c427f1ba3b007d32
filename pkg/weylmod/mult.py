"""Weight multiplicities of V(lambda): the recursion through branching components,
direct counting of basis elements, and whole characters."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal, NamedTuple, Sequence

from weylmod.basis import PiPrimeElement, content_histogram, count_basis
from weylmod.branch import BranchComponent, branch
from weylmod.config import DEFAULT_MAX_BASIS_ELEMENTS
from weylmod.errors import InvalidInputError
from weylmod.oracle import freudenthal_character, freudenthal_mult
from weylmod.rootsys import (
    AlphaVector,
    Weight,
    alpha_to_weight,
    check_coords,
    check_dominant,
    highest_root_box,
    restrict_weight,
    weight_to_alpha,
    weyl_dim,
)
from weylmod.state.cache import MemoTable

MultMethod = Literal["recursive", "count", "freudenthal"]
MULT_METHODS: tuple[str, ...] = ("recursive", "count", "freudenthal")
DIM_METHODS: tuple[str, ...] = ("enum", "weyl")


class MemoKey(NamedTuple):
    rank: int
    lam: Weight
    mu: Weight


MEMO = MemoTable("mult", MemoKey._make)


@dataclass(frozen=True)
class Character:
    rank: int
    lam: Weight
    table: dict[Weight, int] = field(default_factory=dict)

    def multiplicity(self, mu: Sequence[int]) -> int:
        return self.table.get(tuple(mu), 0)

    def total(self) -> int:
        return sum(self.table.values())

    def weights(self) -> list[Weight]:
        """Support ordered by depth below lambda, then by decreasing coordinates."""

        def key(mu: Weight):
            a = weight_to_alpha(self.rank, tuple(x - y for x, y in zip(self.lam, mu)))
            return (sum(a) if a is not None else -1, tuple(-v for v in mu))

        return sorted(self.table, key=key)


@dataclass(frozen=True)
class RecursiveTerm:
    s: int
    P: PiPrimeElement
    highest_weight: Weight
    mult: int


def _difference(lam: Weight, mu: Weight) -> AlphaVector | None:
    return weight_to_alpha(len(lam), tuple(x - y for x, y in zip(lam, mu)))


@lru_cache(maxsize=4096)
def _components(lam: Weight) -> tuple[BranchComponent, ...]:
    return tuple(branch(lam))


def _selected(lam: Weight, a: AlphaVector) -> list[BranchComponent]:
    """Components whose P satisfies p_l = a_l and p_i <= a_i."""
    return [
        comp
        for comp in _components(lam)
        if comp.P.p[-1] == a[-1] and all(p_i <= a_i for p_i, a_i in zip(comp.P.p, a))
    ]


def mult_recursive(lam: Sequence[int], mu: Sequence[int], *, memo: MemoTable | None = None) -> int:
    memo = MEMO if memo is None else memo
    lam = check_dominant(lam)
    l = len(lam)
    mu = check_coords(mu, l, "mu")
    key = MemoKey(l, lam, mu)
    hit = memo.get(key)
    if hit is not None:
        return hit
    a = _difference(lam, mu)
    if a is None:
        value = 0
    elif l == 1:
        value = 1 if a[0] <= lam[0] else 0
    else:
        restricted = restrict_weight(mu)
        value = sum(mult_recursive(comp.highest_weight, restricted, memo=memo) for comp in _selected(lam, a))
    return memo.put(key, value)


def recursive_terms(lam: Sequence[int], mu: Sequence[int], *, memo: MemoTable | None = None) -> list[RecursiveTerm]:
    """The summands of the recursion at the top level, in increasing order of P."""
    lam = check_dominant(lam)
    mu = check_coords(mu, len(lam), "mu")
    if len(lam) < 2:
        raise InvalidInputError("The recursion has no branching step at rank 1.")
    a = _difference(lam, mu)
    if a is None:
        return []
    restricted = restrict_weight(mu)
    return [
        RecursiveTerm(comp.s, comp.P, comp.highest_weight, mult_recursive(comp.highest_weight, restricted, memo=memo))
        for comp in _selected(lam, a)
    ]


def mult_count(
    lam: Sequence[int],
    mu: Sequence[int],
    *,
    max_elements: int = DEFAULT_MAX_BASIS_ELEMENTS,
) -> int:
    lam = check_dominant(lam)
    mu = check_coords(mu, len(lam), "mu")
    a = _difference(lam, mu)
    if a is None:
        return 0
    return count_basis(lam, a, max_elements=max_elements)


def multiplicity(
    lam: Sequence[int],
    mu: Sequence[int],
    method: MultMethod = "recursive",
    *,
    max_elements: int = DEFAULT_MAX_BASIS_ELEMENTS,
) -> int:
    if method == "recursive":
        return mult_recursive(lam, mu)
    if method == "count":
        return mult_count(lam, mu, max_elements=max_elements)
    if method == "freudenthal":
        return freudenthal_mult(lam, mu)
    raise InvalidInputError(f"Unknown multiplicity method {method!r}; expected one of {', '.join(MULT_METHODS)}.")


def character(
    lam: Sequence[int],
    method: MultMethod = "count",
    *,
    max_elements: int = DEFAULT_MAX_BASIS_ELEMENTS,
) -> Character:
    lam = check_dominant(lam)
    l = len(lam)
    table: dict[Weight, int] = {}
    if method == "count":
        for a, n in content_histogram(lam, max_elements=max_elements).items():
            shift = alpha_to_weight(l, a)
            table[tuple(x - y for x, y in zip(lam, shift))] = n
    elif method == "recursive":
        for a in itertools.product(*(range(b + 1) for b in highest_root_box(lam))):
            shift = alpha_to_weight(l, a)
            mu = tuple(x - y for x, y in zip(lam, shift))
            m = mult_recursive(lam, mu)
            if m:
                table[mu] = m
    elif method == "freudenthal":
        table = freudenthal_character(lam)
    else:
        raise InvalidInputError(f"Unknown character method {method!r}; expected one of {', '.join(MULT_METHODS)}.")
    return Character(rank=l, lam=lam, table=table)


def dim(lam: Sequence[int], method: str = "weyl", *, max_elements: int = DEFAULT_MAX_BASIS_ELEMENTS) -> int:
    lam = check_dominant(lam)
    if method == "weyl":
        return weyl_dim(lam)
    if method == "enum":
        return count_basis(lam, max_elements=max_elements)
    raise InvalidInputError(f"Unknown dimension method {method!r}; expected one of {', '.join(DIM_METHODS)}.")
