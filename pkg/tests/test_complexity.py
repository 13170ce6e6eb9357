import pytest
from hypothesis import given, strategies as st

from conftest import seq_strategy
from unipred.complexity import (
    PLAIN,
    PREFIX,
    PathComplexity,
    Unknown,
    at_most,
    catalogue_description_length,
    law_complexity,
    log_attained_level_check,
    prefix_from_plain,
    system_complexity,
    time_complexity,
    time_complexity_bruteforce,
)
from unipred.core import BINARY, SINGLETON, Observation, Situation, seq
from unipred.languages import CatalogueLanguage, MergedLanguage, TableLanguage, FiniteLaw, PrefixFreeLanguage
from unipred.laws import LengthLaw, NotAttained, SequenceSystem
from unipred.universal import build_universal, default_registry

ONE = CatalogueLanguage(SINGLETON)


def test_len1_complexity_by_exhaustive_search():
    assert law_complexity(ONE, LengthLaw(SINGLETON, 1), depth=12) == 2
    assert catalogue_description_length(("LEN", 1, 1)) == 2


def test_prefix_variant_dominates_plain_for_catalogue_laws():
    for m in range(1, 9):
        law = LengthLaw(SINGLETON, m)
        plain = law_complexity(ONE, law, PLAIN, depth=12)
        prefix = law_complexity(ONE, law, PREFIX, depth=16)
        assert prefix >= plain
        assert prefix == prefix_from_plain(plain)


def test_system_complexity_of_divisibility_family():
    for k in (1, 2, 5):
        assert system_complexity(ONE, ("DIV", 1, k)) == 1 + k.bit_length()


def test_plain_prefix_constants_on_bounded_universe():
    # C <= K + c1 and K <= C + 2 log C + c2; c2 decided as 2^(K - C - c2) <= C^2
    c1 = c2 = None
    for s in SINGLETON.sequences_up_to(6):
        if not s:
            continue
        C = time_complexity(s, ONE, PLAIN)
        K = time_complexity(s, ONE, PREFIX)
        need1 = C - K
        need2 = next(c for c in range(-8, 16) if 2 ** max(0, K - C - c) <= C * C and K - C - c <= 2 * C)
        c1 = need1 if c1 is None else max(c1, need1)
        c2 = need2 if c2 is None else max(c2, need2)
    assert c1 <= 0
    assert c2 <= 4


@pytest.mark.parametrize("space, max_length", [(SINGLETON, 5), (BINARY, 3)])
def test_fast_search_equals_bruteforce(space, max_length):
    lang = CatalogueLanguage(space, [[seq((0, 1), (0, 1))], [seq((0, 0))]])
    for s in space.sequences_up_to(max_length):
        for variant in (PLAIN, PREFIX):
            depth = 10 if variant == PLAIN else 14
            fast = time_complexity(s, lang, variant, depth)
            slow = time_complexity_bruteforce(s, lang, variant, depth)
            assert fast == slow, (s, variant)


@given(seq_strategy(BINARY, 10))
def test_complexity_at_most_length_description(s):
    if s:
        assert time_complexity(s, CatalogueLanguage(BINARY)) <= 1 + len(s).bit_length()


def test_unknown_when_depth_too_small():
    value = time_complexity(seq((0, 0), (0, 0), (0, 0)), ONE, depth=1)
    assert value == Unknown(1)
    assert not at_most(value, 1)
    assert time_complexity((), ONE) == Unknown(64)


def test_budgeted_complexity_is_nonincreasing_in_budget():
    s = seq((0, 1), (0, 1), (0, 0))
    values = [time_complexity(s, ONE, budget=b) for b in (1, 10, 30, 100, None)]
    known = [v for v in values if not isinstance(v, Unknown)]
    assert known == sorted(known, reverse=True)
    assert values[-1] == 3


@given(seq_strategy(BINARY, 40))
def test_path_tracker_matches_search(path):
    lang = CatalogueLanguage(BINARY)
    tracker = PathComplexity(lang)
    for l, o in enumerate(path, 1):
        assert tracker.peek(o) == tracker.step(o) == time_complexity(path[:l], lang)


def test_merged_language_cost():
    table = TableLanguage(SINGLETON, {"1": FiniteLaw([seq((0, 1))])})
    merged = MergedLanguage([ONE, table])
    s = seq((0, 1))
    assert time_complexity(s, merged) <= time_complexity(s, table) + merged.overhead(2)
    assert time_complexity(s, merged) <= time_complexity(s, ONE) + merged.overhead(1)


def test_constant_prefix_complexity_tracks_integer_code():
    path = PathComplexity(ONE)
    for n in range(1, 300):
        assert path.step(Observation(0, 0)) == 1 + n.bit_length()


def test_log_level_report():
    universal = build_universal(default_registry(ONE))
    s = Situation((), 0)
    report = log_attained_level_check(universal, s, 0, ONE, constant=2)
    # LEN(1) is the first slice of DIV(1), registry position 2, so index 5
    assert (report.level, report.complexity) == (5, 2)
    assert report.within
    assert not log_attained_level_check(universal, s, 0, ONE, constant=0).within
    empty = build_universal([SequenceSystem([])])
    assert log_attained_level_check(empty, s, 0, ONE, 2) is NotAttained


def test_prefix_language_wraps_plain_descriptions():
    pf = PrefixFreeLanguage(ONE)
    s = seq((0, 0))
    assert time_complexity(s, pf) == prefix_from_plain(time_complexity(s, ONE))
