import pytest

from weylmod.basis import PiPrimeElement, enumerate_basis, enumerate_pi_prime
from weylmod.branch import branch, check_dim_sum, component_basis, component_weight, primitive_coefficient
from weylmod.errors import InvalidInputError
from weylmod.rootsys import dominant_weights, restrict_weight, weyl_dim

A4_COMPONENTS = [
    (1, 1, 1), (1, 1, 2), (1, 2, 0), (1, 2, 1),
    (2, 0, 1), (2, 0, 2), (2, 1, 0), (2, 1, 1),
    (0, 1, 1), (0, 1, 2), (0, 2, 0), (0, 2, 1),
    (1, 0, 1), (1, 0, 2), (1, 1, 0), (1, 1, 1),
]


def test_branch_rank_two_example():
    comps = branch((2, 3))
    assert [c.highest_weight for c in comps] == [(w,) for w in (2, 3, 4, 5, 1, 2, 3, 4, 0, 1, 2, 3)]
    assert [c.s for c in comps] == list(range(1, 13))
    assert [c.dim for c in comps] == [3, 4, 5, 6, 2, 3, 4, 5, 1, 2, 3, 4]
    assert comps[3].P.display_order() == (3, 0)


def test_branch_rank_four_example():
    comps = branch((1, 1, 1, 1))
    assert [c.highest_weight for c in comps] == A4_COMPONENTS
    assert sum(c.dim for c in comps) == 1024


def test_branch_trivial_and_natural_modules():
    comps = branch((0, 0))
    assert [(c.highest_weight, c.dim) for c in comps] == [((0,), 1)]
    assert [c.highest_weight for c in branch((1, 0))] == [(1,), (0,)]


def test_check_dim_sum_examples():
    assert check_dim_sum((2, 3))
    assert check_dim_sum((1, 1, 1, 1))
    assert check_dim_sum((1, 0))


def test_branch_sweep_dominance_and_dimension():
    for l, top in ((2, 3), (3, 2)):
        for lam in dominant_weights(l, top):
            comps = branch(lam)
            assert comps[0].highest_weight == restrict_weight(lam)
            assert all(min(c.highest_weight) >= 0 for c in comps)
            assert sum(c.dim for c in comps) == weyl_dim(lam)


def test_branch_needs_rank_two():
    with pytest.raises(InvalidInputError):
        branch((3,))
    with pytest.raises(InvalidInputError):
        branch((1, -1))


def test_component_weight_formula():
    assert component_weight((2, 3), PiPrimeElement((1, 4))) == (4,)
    assert component_weight((1, 1, 1, 1), PiPrimeElement((0, 1, 1, 1))) == (2, 0, 1)


def test_primitive_coefficient_nonzero():
    assert primitive_coefficient((2, 3), PiPrimeElement((1, 4))) == 2
    for lam in [(2, 3), (1, 1, 1), (0, 2, 1)]:
        for P in enumerate_pi_prime(lam):
            assert primitive_coefficient(lam, P) > 0
    with pytest.raises(InvalidInputError):
        primitive_coefficient((1, 1), PiPrimeElement((0, 2)))


def test_component_bases_partition_the_basis():
    for lam in [(2, 3), (1, 1, 1), (2, 0, 1)]:
        comps = branch(lam)
        seen = []
        for comp in comps:
            block = component_basis(lam, comp.s)
            assert len(block) == comp.dim
            assert all(K.entries[-len(lam):] == comp.P.as_index().entries[-len(lam):] for K in block)
            seen.extend(K.entries for K in block)
        assert len(seen) == len(set(seen))
        assert set(seen) == {K.entries for K in enumerate_basis(lam)}
    with pytest.raises(InvalidInputError):
        component_basis((2, 3), 13)
