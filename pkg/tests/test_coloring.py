import itertools

import pytest
from hypothesis import given, strategies as st

from unipred.coloring import (
    ColorExhausted,
    GreedyPartition,
    chromatic_number,
    color_classes,
    exact_coloring,
    is_antichain,
    max_chain,
    prefix_free_partition,
)


def tree(branching, depth):
    return [t for n in range(depth + 1) for t in itertools.product(range(branching), repeat=n)]


def comparable(a, b):
    n = min(len(a), len(b))
    return a[:n] == b[:n]


def test_incomparable_items_share_color_zero():
    items = [(0, 1), (1,), (0, 0, 1), (2, 2)]
    assert set(prefix_free_partition(items, 1).values()) == {0}


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_chain_gets_colors_in_order(m):
    chain = [(0,) * i for i in range(2**m)]
    coloring = prefix_free_partition(chain, 2**m)
    assert [coloring[c] for c in chain] == list(range(2**m))


def test_chain_longer_than_colors_is_exhausted():
    with pytest.raises(ColorExhausted) as info:
        prefix_free_partition([(), (0,), (0, 0)], 2)
    assert info.value.item == (0, 0)
    assert len(info.value.path) == 2


def test_later_shorter_item_avoids_colors_below_it():
    partition = GreedyPartition(2)
    partition.add((0, 0))
    assert partition.add((0,)) == 1
    assert partition.add((1,)) == 0


@given(st.sets(st.sampled_from(tree(3, 3)), max_size=25), st.randoms(use_true_random=False))
def test_greedy_properties_on_random_item_sets(items, rnd):
    items = list(items)
    rnd.shuffle(items)
    chain = max_chain(items)
    if not items:
        return
    coloring = prefix_free_partition(items, chain)
    classes = color_classes(coloring)
    assert all(is_antichain(c) for c in classes.values())
    for a, b in itertools.combinations(items, 2):
        if comparable(a, b):
            assert coloring[a] != coloring[b]
    assert len(classes) <= chain


def test_chromatic_number_equals_longest_chain_on_small_trees():
    nodes = tree(2, 2)
    for mask in range(1, 1 << len(nodes)):
        items = [nodes[i] for i in range(len(nodes)) if mask >> i & 1]
        assert chromatic_number(items) == max_chain(items)


def test_exact_coloring_detects_infeasible():
    assert exact_coloring([(), (0,), (0, 0)], 2) is None
    assert exact_coloring([(), (0,), (1,)], 2) is not None
