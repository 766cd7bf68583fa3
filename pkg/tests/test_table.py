"""Enumeration, exact word lengths, and table axioms."""

from __future__ import annotations

import random

import pytest

from oracles import word_ball_lengths, word_ball_sizes
from conftest import table_of

from solgrow.catalog import catalog
from solgrow.elements import GenSet, MatFp, Perm
from solgrow.errors import CapExceeded
from solgrow.table import enumerate_group, subgroup_table


def test_sym3_hand_enumeration():
    # X = {(0 1), (0 1 2)}: hand enumeration gives lengths {0:1, 1:3, 2:2}.
    T = table_of("s3")
    assert T.n == 6
    assert sorted(T.word_length) == [0, 1, 1, 1, 2, 2]
    assert T.growth_counts() == [1, 4, 6]


def test_order_two_group():
    T = enumerate_group(GenSet([Perm([1, 0])]))
    assert T.n == 2
    assert sorted(T.word_length) == [0, 1]


def test_q8_matrix_generators():
    T = table_of("q8")
    assert T.n == 8
    involutions = [i for i in range(T.n) if i != 0 and T.mul(i, i) == 0]
    assert len(involutions) == 1
    i_gen = T.generators[0]
    assert T.order_of(i_gen) == 4
    sq = T.mul(i_gen, i_gen)
    assert sq == involutions[0]


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        enumerate_group(catalog("s4"), cap=10)


@pytest.mark.parametrize("name", ["s3", "s4", "q8", "sl2(3)", "agl1(5)", "c2wrc2"])
def test_word_lengths_match_word_oracle(name):
    T = table_of(name)
    oracle = word_ball_lengths(T.gen_set, T.diameter())
    assert all(oracle[T.encodings[i]] == T.word_length[i] for i in range(T.n))


@pytest.mark.parametrize("name", ["s3", "s4", "q8", "gl2(3)", "f2^3:c7"])
def test_cayley_descent(name):
    # every nonidentity element has a generator step reducing its length
    T = table_of(name)
    steps = [g for g in T.generators] + [T.inv_idx[g] for g in T.generators]
    for x in range(1, T.n):
        assert any(T.word_length[T.mul(x, s)] == T.word_length[x] - 1 for s in steps)


@pytest.mark.parametrize("name", ["s4", "sl2(3)", "f3^2:q8"])
def test_table_axioms(name):
    T = table_of(name)
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (rng.randrange(T.n) for _ in range(3))
        assert T.mul(T.mul(a, b), c) == T.mul(a, T.mul(b, c))
    for x in range(T.n):
        assert T.mul(x, 0) == x and T.mul(0, x) == x
        assert T.mul(x, T.inv_idx[x]) == 0 and T.mul(T.inv_idx[x], x) == 0


@pytest.mark.parametrize("name", ["s4", "gl2(3)"])
def test_growth_counts_monotone(name):
    T = table_of(name)
    counts = T.growth_counts()
    assert counts[0] == 1
    assert all(counts[i] < counts[i + 1] for i in range(len(counts) - 1))
    k = 2 * len(T.generators)
    assert all(
        counts[i + 1] <= counts[i] * (k + 1) for i in range(len(counts) - 1)
    )


def test_word_reconstruction():
    T = table_of("s4")
    for x in range(T.n):
        w = T.word(x)
        assert len(w) == T.word_length[x]
        assert T.evaluate_word(w) == x


@pytest.mark.parametrize("name", ["sl2(3)", "s4"])  # matrix and perm dense paths
def test_dense_table_agrees_with_elementwise(name):
    T = table_of(name)
    pairs = [(i, j) for i in range(T.n) for j in range(T.n)]
    direct = {
        (i, j): T.index[(T.elements[i] * T.elements[j]).encode()] for i, j in pairs
    }
    assert T.ensure_dense()
    assert all(T.mul(i, j) == direct[i, j] for i, j in pairs)


def test_lagrange_for_subgroup_tables():
    from solgrow.soluble import soluble_subgroups

    T = table_of("s4")
    for S in soluble_subgroups(T):
        assert T.n % S.order == 0
        sub = subgroup_table(T, S)
        assert sub.n == S.order
        assert sub.growth_counts()[-1] == S.order


def test_mixed_variant_rejected():
    from solgrow.errors import MixedVariants

    with pytest.raises(MixedVariants):
        GenSet([Perm([1, 0]), MatFp(1, 2, [[1]])])


def test_word_ball_sizes_match_histogram():
    T = table_of("f2^3:c7")
    sizes = word_ball_sizes(T.gen_set, T.diameter())
    assert sizes == T.growth_counts()
