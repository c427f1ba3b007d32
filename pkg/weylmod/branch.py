"""Restriction of V(lambda) to the rank l-1 subalgebra: one component per P in
Pi'_lambda, taken in increasing order."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod
from typing import Sequence

from weylmod.basis import PiPrimeElement, enumerate_basis, enumerate_pi_prime, in_pi_prime
from weylmod.config import DEFAULT_MAX_BASIS_ELEMENTS
from weylmod.errors import InvalidInputError
from weylmod.monomial import MonomialIndex, lift
from weylmod.rootsys import Weight, check_dominant, weyl_dim


@dataclass(frozen=True)
class BranchComponent:
    s: int
    P: PiPrimeElement
    highest_weight: Weight
    dim: int


def component_weight(lam: Sequence[int], P: PiPrimeElement) -> Weight:
    """(lambda - P alpha) restricted: coordinate j is lambda_j - 2 p_j + p_{j-1} + p_{j+1}."""
    lam = check_dominant(lam)
    l = len(lam)
    p = (0,) + P.p + (0,)
    return tuple(lam[j - 1] - 2 * p[j] + p[j - 1] + p[j + 1] for j in range(1, l))


def branch(lam: Sequence[int]) -> list[BranchComponent]:
    lam = check_dominant(lam)
    if len(lam) < 2:
        raise InvalidInputError("Branching needs rank >= 2.")
    out = []
    for s, P in enumerate(enumerate_pi_prime(lam), start=1):
        hw = component_weight(lam, P)
        if any(v < 0 for v in hw):
            raise AssertionError(f"component {s} of {list(lam)} has non-dominant weight {list(hw)}")
        out.append(BranchComponent(s=s, P=P, highest_weight=hw, dim=weyl_dim(hw)))
    return out


def check_dim_sum(lam: Sequence[int]) -> bool:
    return sum(c.dim for c in branch(lam)) == weyl_dim(lam)


def primitive_coefficient(lam: Sequence[int], P: PiPrimeElement) -> int:
    """prod_k C(lambda_k + p_{k-1}, p_k): the scalar e_1^(p_1)...e_l^(p_l) theta^P v = c v."""
    lam = check_dominant(lam)
    if not in_pi_prime(lam, P):
        raise InvalidInputError(f"P={P} is not in Pi'_lambda for lambda={list(lam)}.")
    p = (0,) + P.p
    return prod(comb(lam[k - 1] + p[k - 1], p[k]) for k in range(1, len(lam) + 1))


def component_basis(
    lam: Sequence[int],
    s: int,
    *,
    max_elements: int = DEFAULT_MAX_BASIS_ELEMENTS,
) -> list[MonomialIndex]:
    """Basis indices of the s-th filtration quotient: lift(K) + P_s over the component's own Pi."""
    components = branch(lam)
    if not 1 <= s <= len(components):
        raise InvalidInputError(f"Component index {s} outside 1..{len(components)}.")
    comp = components[s - 1]
    shift = comp.P.as_index()
    return [lift(K) + shift for K in enumerate_basis(comp.highest_weight, max_elements=max_elements)]
