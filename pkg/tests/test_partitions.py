"""Distributions of block sizes and the symmetrization coefficients."""

from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from hilbcalc.partitions import (EMPTY, Distribution, MultiDistribution, aut_count, coprod,
                                 nu_coeff, partitions_of, promote, remove_block, scroll_ratio,
                                 splits, unite)
from hilbcalc.staircase import DomainError

D = Distribution.from_sizes


def test_coprod_examples():
    assert coprod(D([2, 2]), D([1, 1, 1])) == D([2, 2, 1, 1, 1])
    assert coprod(D([]), D([4, 1])) == D([4, 1])
    assert coprod(D([3]), D([3])) == D([3, 3])


def test_remove_block_examples():
    assert remove_block(D([2, 2, 1]), 2) == D([2, 1])
    assert remove_block(D([3]), 2) is EMPTY
    assert remove_block(D([1]), 1) == D([])


def test_promote_examples():
    assert promote(D([3, 1, 1]), 2) == D([3, 2, 1])
    assert promote(D([2]), 1) == D([3])
    assert promote(D([2, 2]), 1) == D([3, 2])


def test_promote_out_of_range():
    with pytest.raises(DomainError):
        promote(D([2]), 3)


def test_unite_examples():
    assert unite(D([2, 2]), 2, 2) == D([4])
    assert unite(D([2, 1, 1]), 2, 1) == D([3, 1])
    assert unite(D([1, 1, 1]), 1, 1) == D([2, 1])


def test_unite_needs_blocks():
    with pytest.raises(DomainError):
        unite(D([2, 1]), 2, 2)


def test_aut_count_examples():
    assert aut_count(D([2, 2, 1])) == 2
    assert aut_count(D([3, 2, 1])) == 1
    for m in range(1, 7):
        assert aut_count(D([1] * m)) == factorial(m)


@pytest.mark.parametrize("m", range(6, 12))
def test_nu_examples_from_double_diagonal(m):
    dist = D([2, 2] + [1] * (m - 4))
    assert nu_coeff(dist, 2, 2) == Fraction(1, 2)
    assert nu_coeff(dist, 1, 1) == Fraction(3, (m - 4) * (m - 5))
    # summed over all pairs of blocks these give the coefficients 2, 3/2 and 2
    assert nu_coeff(dist, 2, 2) * 2 * 2 * 1 == 2
    assert nu_coeff(dist, 1, 1) * comb(m - 4, 2) == Fraction(3, 2)
    assert nu_coeff(dist, 2, 1) * 2 * 1 * (2 * (m - 4)) == 2


def test_nu_mixed_sizes():
    assert nu_coeff(D([2, 1]), 2, 1) == 1


def test_nu_missing_pair():
    with pytest.raises(DomainError):
        nu_coeff(D([2, 1]), 2, 2)


def test_scroll_ratio_examples():
    m = 7
    for a in range(m - 1):
        phi = MultiDistribution(2, D([1] * a), D([1] * (m - 2 - a)))
        assert scroll_ratio(phi, D([2] + [1] * (m - 2)), separating=False) == 1
    phi = MultiDistribution(2, D([2, 1]), D([1]))
    assert scroll_ratio(phi, D([2, 2, 1, 1]), separating=True) == Fraction(1, 2)
    assert scroll_ratio(MultiDistribution(3, D([]), D([])), D([3]), separating=False) == 1


def test_scroll_ratio_mismatch():
    with pytest.raises(DomainError):
        scroll_ratio(MultiDistribution(2, D([1]), D([])), D([2, 1, 1]), separating=False)


def test_partitions_of_four():
    assert [p.sizes() for p in partitions_of(4)] == [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]]


sizes = st.lists(st.integers(min_value=1, max_value=5), max_size=6)


@settings(max_examples=200, deadline=None)
@given(sizes, sizes)
def test_property_coprod_commutative_and_additive(a, b):
    left, right = coprod(D(a), D(b)), coprod(D(b), D(a))
    assert left == right
    assert left.total_length == sum(a) + sum(b)


@settings(max_examples=100, deadline=None)
@given(sizes)
def test_property_splits_recombine(a):
    d = D(a)
    parts = list(splits(d))
    assert all(coprod(x, y) == d for x, y in parts)
    count = 1
    for _, k in d.items:
        count *= k + 1
    assert len(parts) == count


@settings(max_examples=200, deadline=None)
@given(sizes.filter(lambda s: len(s) >= 2), st.data())
def test_property_unite_preserves_length(a, data):
    d = D(a)
    i, j = data.draw(st.sampled_from([(i, j) for i in range(len(a)) for j in range(i + 1, len(a))]))
    united = unite(d, a[i], a[j])
    assert united.total_length == d.total_length
    assert united.block_count == d.block_count - 1
