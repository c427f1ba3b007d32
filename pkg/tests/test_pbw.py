import itertools
import random

import pytest

from weylmod.errors import InvalidInputError, ResourceCapError
from weylmod.monomial import MonomialIndex, i_of_k, is_in_pi
from weylmod.pbw import (
    FactorWord,
    PBWPolynomial,
    leading,
    multiply,
    parse_word,
    render_polynomial,
    render_word,
    straighten,
    structure_table,
    swap_pair,
    theta_expand,
    theta_word,
    verify_leading_term,
    word_of_exponent,
)
from weylmod.rootsys import RootInterval, positive_roots_ordered


def W(l, *factors):
    return FactorWord(l, tuple((RootInterval(*root), power) for root, power in factors))


def K(*blocks):
    return MonomialIndex.from_blocks(blocks)


def _random_word(rng, l, max_factors=6, max_power=3):
    roots = positive_roots_ordered(l)
    return FactorWord(l, tuple((rng.choice(roots), rng.randint(1, max_power)) for _ in range(rng.randint(1, max_factors))))


def test_straighten_commutator_examples():
    assert straighten(W(2, ((2, 2), 1), ((1, 1), 1))).terms == {(1, 1, 0): 1, (0, 0, 1): 1}
    assert straighten(W(2, ((2, 2), 2), ((1, 1), 1))).terms == {(1, 2, 0): 1, (0, 1, 1): 1}
    assert straighten(W(2, ((1, 1), 2))).terms == {(2, 0, 0): 1}


def test_straighten_merges_with_binomials():
    assert straighten(W(2, ((1, 1), 1), ((1, 1), 1))).terms == {(2, 0, 0): 2}
    assert straighten(W(1, ((1, 1), 2), ((1, 1), 3))).terms == {(5,): 10}


def test_straighten_higher_root_relation():
    # f_3 f_{12} = f_{12} f_3 + f_{13}
    assert straighten(W(3, ((3, 3), 1), ((1, 2), 1))).terms == {(0, 0, 1, 1, 0, 0): 1, (0, 0, 0, 0, 0, 1): 1}
    # f_{23} and f_1 concatenate too; f_2 and f_{12} commute
    assert straighten(W(3, ((2, 3), 1), ((1, 1), 1))).terms == {(1, 0, 0, 0, 1, 0): 1, (0, 0, 0, 0, 0, 1): 1}
    assert straighten(W(3, ((1, 2), 1), ((2, 2), 1))).terms == {(0, 1, 1, 0, 0, 0): 1}


def test_structure_table_signs():
    table = structure_table(2)
    # positions: f1 -> 0, f2 -> 1, f12 -> 2
    assert table[(1, 0)] == (1, 2)
    assert table[(0, 1)] == (-1, 2)
    assert (0, 2) not in table


def test_swap_pair_reversed_order_rule():
    out = swap_pair(2, RootInterval(1, 1), 1, RootInterval(2, 2), 1)
    assert [(render_word(w), c) for w, c in out] == [("f2^(1) f1^(1)", 1), ("f1_2^(1)", -1)]
    total = PBWPolynomial(2)
    for word, coeff in out:
        total = total + straighten(word).scaled(coeff)
    assert total.terms == {(1, 1, 0): 1}


def test_swap_pair_agrees_with_straightening():
    rng = random.Random(3)
    for _ in range(60):
        l = rng.randint(2, 3)
        roots = positive_roots_ordered(l)
        x, y = rng.sample(roots, 2)
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        direct = straighten(FactorWord(l, ((x, a), (y, b))))
        rewritten = PBWPolynomial(l)
        for word, coeff in swap_pair(l, x, a, y, b):
            rewritten = rewritten + straighten(word).scaled(coeff)
        assert rewritten == direct


def test_confluence_and_integrality_on_random_words():
    rng = random.Random(20240611)
    for _ in range(200):
        word = _random_word(rng, rng.randint(1, 3))
        left = straighten(word, strategy="leftmost")
        right = straighten(word, strategy="rightmost")
        assert left == right
        assert all(isinstance(c, int) and c != 0 for c in left.terms.values())


def test_associativity_against_partial_normal_forms():
    rng = random.Random(11)
    for _ in range(80):
        l = rng.randint(2, 3)
        u, v = _random_word(rng, l, 3), _random_word(rng, l, 3)
        whole = straighten(u + v)
        assert multiply(straighten(u), straighten(v)) == whole
        stepwise = PBWPolynomial(l)
        for I, c in straighten(u).terms.items():
            stepwise = stepwise + straighten(word_of_exponent(I, l) + v).scaled(c)
        assert stepwise == whole


def test_theta_expand_examples():
    assert theta_expand(K((0,), (1, 1))).terms == {(0, 0, 1): 1, (1, 1, 0): 1}
    assert theta_expand(K((0,), (2, 1))).terms == {(0, 1, 1): 1, (1, 2, 0): 1}
    assert theta_expand(K((0,), (0, 0))).terms == {(0, 0, 0): 1}
    with pytest.raises(InvalidInputError):
        theta_expand(K((0,), (1, 2)))


def test_theta_word_reads_blocks_left_to_right():
    assert render_word(theta_word(K((1,), (2, 1)))) == "f1^(1) f2^(2) f1^(1)"
    assert theta_word(MonomialIndex.zero(2)).factors == ()


def test_product_of_lower_part_and_last_block():
    k2, k1 = K((1,), (0, 0), (0, 0, 0)), K((0,), (0, 0), (2, 1, 1))
    joined = straighten(theta_word(k2) + theta_word(k1))
    assert joined == theta_expand(k2 + k1)


def test_leading_examples():
    assert leading(PBWPolynomial(2, {(1, 1, 0): 1, (0, 0, 1): 1})) == ((0, 0, 1), 1)
    assert leading(PBWPolynomial(2, {(0, 0, 0): 5})) == ((0, 0, 0), 5)
    assert leading(theta_expand(K((1,), (2, 1)))) == ((1, 1, 1), 1)
    with pytest.raises(InvalidInputError):
        leading(PBWPolynomial(2))


def test_leading_term_sweep_rank_three():
    count = 0
    for vec in itertools.product(range(3), repeat=6):
        index = MonomialIndex(3, vec)
        if is_in_pi(index):
            assert verify_leading_term(index)
            count += 1
    assert count == 3 * 6 * 10


def test_leading_term_spot_checks_rank_four():
    for blocks in [((1,), (1, 0), (2, 1, 1), (1, 1, 0, 0)), ((0,), (2, 2), (1, 1, 1), (2, 1, 1, 1))]:
        index = K(*blocks)
        assert verify_leading_term(index)
        assert leading(theta_expand(index))[0] == i_of_k(index)


def test_term_cap_raises():
    with pytest.raises(ResourceCapError) as err:
        straighten(W(2, ((2, 2), 3), ((1, 1), 3)), max_terms=1)
    assert err.value.cap == 1


def test_unknown_strategy_rejected():
    with pytest.raises(InvalidInputError):
        straighten(W(2, ((2, 2), 1)), strategy="outermost")


def test_parse_and_render_words():
    w = parse_word("f2^2,f1_3^1", 3)
    assert w.factors == ((RootInterval(2, 2), 2), (RootInterval(1, 3), 1))
    assert render_word(w) == "f2^(2) f1_3^(1)"
    assert parse_word("f1", 1).factors == ((RootInterval(1, 1), 1),)
    for bad in ["g2", "f2^x", "", "f3_1"]:
        with pytest.raises(InvalidInputError):
            parse_word(bad, 3)
    with pytest.raises(InvalidInputError):
        parse_word("f4", 3)


def test_render_polynomial_puts_leading_term_first():
    assert render_polynomial(straighten(W(2, ((2, 2), 1), ((1, 1), 1)))) == "f1_2^(1) + f1^(1) f2^(1)"
    assert render_polynomial(PBWPolynomial(2)) == "0"
    assert render_polynomial(PBWPolynomial(2, {(1, 1, 0): 1, (0, 0, 1): -2})) == "-2 f1_2^(1) + f1^(1) f2^(1)"


def test_factor_word_validation():
    with pytest.raises(InvalidInputError):
        W(2, ((1, 1), 0))
    with pytest.raises(InvalidInputError):
        W(2, ((1, 3), 1))
