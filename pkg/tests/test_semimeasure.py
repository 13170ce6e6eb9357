import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import seq_strategy
from unipred.coloring import max_chain
from unipred.core import BINARY, SINGLETON, Observation, Stream
from unipred.languages import CatalogueLanguage
from unipred.semimeasure import (
    AprioriMixture,
    ComplexitySemimeasure,
    GeometricSemimeasure,
    ShenSemimeasure,
    TimeSemimeasure,
    UniformInitialSegment,
    assign_descriptions,
    default_mixture,
    neg_log_bounds,
    parse_shen,
    path_sum,
    sandwich_constants,
    shen_gap_report,
    shen_witness,
)

CAT = CatalogueLanguage(BINARY)
ONE = CatalogueLanguage(SINGLETON)


class Constant(TimeSemimeasure):
    def __init__(self, v):
        self.v = Fraction(v)

    def value(self, sigma, budget=None):
        return Fraction(0) if budget == 0 else self.v


class Indicator(TimeSemimeasure):
    def __init__(self, members, v):
        self.members, self.v = set(members), Fraction(v)

    def value(self, sigma, budget=None):
        return self.v if sigma in self.members else Fraction(0)


def test_mixture_weights():
    assert AprioriMixture([Constant(Fraction(1, 4))]).value(()) == Fraction(1, 8)
    assert AprioriMixture([Constant(0), Constant(Fraction(1, 4))]).value(()) == Fraction(1, 16)


@given(seq_strategy(BINARY, 12))
def test_mixture_dominates_each_component(s):
    M = default_mixture(CAT)
    total = M.value(s)
    for k, P in enumerate(M.components, 1):
        assert total >= M.weight(k) * P.value(s)


@pytest.mark.parametrize("P", [ComplexitySemimeasure(CAT), GeometricSemimeasure(),
                               UniformInitialSegment(8), ShenSemimeasure(), default_mixture(CAT)], ids=repr)
def test_budget_zero_gives_zero(P):
    assert P.value(Stream.constant(BINARY).prefix(3), budget=0) == 0


@pytest.mark.parametrize("seed", range(5))
def test_path_sums_at_most_one(seed):
    path = Stream.iid(BINARY, seed).prefix(64)
    for P in (ComplexitySemimeasure(CAT), GeometricSemimeasure(), UniformInitialSegment(64), default_mixture(CAT)):
        assert path_sum(P, path) <= 1


def test_complexity_path_values_match_direct_values():
    P = ComplexitySemimeasure(CAT)
    path = Stream.iid(BINARY, 3).prefix(10)
    assert P.path_values(path) == [P.value(path[:l]) for l in range(11)]


def test_shen_witness_literal():
    A, B = Observation(0, 0), Observation(0, 1)
    assert shen_witness(2, 1) == (A, A, B, A)
    assert parse_shen((A, A, B, A)) == (2, 1)
    assert parse_shen((A, B)) is None
    assert parse_shen((A, B, A, A)) is None


@pytest.mark.parametrize("n, j", [(0, 1), (2, 0), (2, 3)])
def test_shen_witness_range(n, j):
    with pytest.raises(ValueError):
        shen_witness(n, j)


@pytest.mark.parametrize("n", [1, 5, 32])
def test_shen_path_sum_is_one(n):
    path = shen_witness(n, n) + (Observation(0, 0),) * 3
    assert path_sum(ShenSemimeasure(), path) == 1


def test_neg_log_bounds():
    assert neg_log_bounds(Fraction(1, 3)) == (1, 2)
    assert neg_log_bounds(Fraction(1, 4)) == (2, 2)
    assert neg_log_bounds(Fraction(1)) == (0, 0)
    with pytest.raises(ValueError):
        neg_log_bounds(Fraction(0))


def test_sandwich_constants_frozen():
    M = default_mixture(CAT)
    assert sandwich_constants(M, list(BINARY.sequences_up_to(3)), CAT) == {"count": 84, "c_lower": 0, "c_upper": -3}


def test_shen_gap_rows():
    rows = shen_gap_report(default_mixture(CAT), CAT, 4)
    assert [(r["n"], r["j"]) for r in rows] == [(1, 1), (2, 1), (2, 2), (3, 1), (3, 3), (4, 1), (4, 4)]
    assert [r["gap"] for r in rows] == [5, 7, 7, 6, 6, 6, 7]


def test_assign_descriptions_examples():
    A = Observation(0, 0)
    universe = [(A,) * l for l in range(4)]
    assert assign_descriptions(Indicator(universe[:1], 1), 0, universe) == {}  # threshold is strict
    assert assign_descriptions(Indicator(universe, Fraction(1, 2)), 0, universe) == {}
    assert assign_descriptions(Indicator(universe[:2], Fraction(1, 2)), 2, universe) == {(): "00", (A,): "01"}
    chain = Indicator(universe[1:], Fraction(1, 3))
    assert assign_descriptions(chain, 2, universe) == {(A,): "00", (A, A): "01", (A, A, A): "10"}


def check_assignment(members, universe):
    c = max_chain(members) if members else 1
    k = c.bit_length()
    descriptions = assign_descriptions(Indicator(members, Fraction(1, c)), k, universe)
    assert set(descriptions) == set(members)
    assert all(len(d) == k for d in descriptions.values())
    for a, b in itertools.combinations(members, 2):
        if a[: len(b)] == b or b[: len(a)] == a:
            assert descriptions[a] != descriptions[b]


def test_assign_descriptions_exhaustive_depth_two():
    universe = list(SINGLETON.sequences_up_to(2))
    for mask in range(1 << len(universe)):
        check_assignment([s for i, s in enumerate(universe) if mask >> i & 1], universe)


@given(st.data())
def test_assign_descriptions_depth_three(data):
    universe = list(SINGLETON.sequences_up_to(3))
    members = data.draw(st.lists(st.sampled_from(universe), unique=True))
    check_assignment([s for s in universe if s in members], universe)
