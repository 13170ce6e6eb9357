import itertools

import pytest
from hypothesis import given, strategies as st

from unipred.core import BINARY, SINGLETON, Observation, Situation, seq
from unipred.laws import (
    VACUOUS,
    CertificateExceeded,
    DivisibilitySystem,
    EnumeratedLaw,
    EnumeratedSystem,
    FiniteLaw,
    LengthLaw,
    NotAttained,
    PrefixFreeViolation,
    SequenceSystem,
    attained_level,
    certify_strong,
    check_prefix_free,
    dovetail_active,
    dovetail_share,
    enumerate_law,
    falsified_before,
    n_part,
    prediction_set_law,
    prediction_set_system,
    refines,
    strong_prediction_set,
)
from unipred.languages import CatalogueLanguage

A, B = Observation(0, 0), Observation(0, 1)


def test_len2_over_one_object_lists_all_four():
    law = LengthLaw(SINGLETON, 2)
    assert enumerate_law(law, 10**6) == frozenset({(A, A), (A, B), (B, A), (B, B)})


@pytest.mark.parametrize(
    "law",
    [LengthLaw(BINARY, 2), FiniteLaw([seq((0, 1))]), CatalogueLanguage(BINARY).decode_law("1001101"), VACUOUS],
)
def test_budget_zero_emits_nothing(law):
    assert enumerate_law(law, 0) == frozenset()


def test_user_enumerator_comparable_pair_is_rejected():
    law = EnumeratedLaw(lambda: [(), seq((0, 0))], "bad")
    with pytest.raises(PrefixFreeViolation) as info:
        enumerate_law(law, 5)
    assert info.value.pair == ((), seq((0, 0)))


def test_check_prefix_free_reports_pair_in_either_order():
    short, long = seq((0, 0)), seq((0, 0), (1, 1))
    for items in ([short, long], [long, short]):
        with pytest.raises(PrefixFreeViolation) as info:
            check_prefix_free(items)
        assert set(info.value.pair) == {short, long}
    check_prefix_free([short, seq((0, 1)), short])


@given(st.integers(0, 300), st.integers(0, 300))
def test_enumeration_monotone_in_budget(b1, b2):
    lo, hi = sorted((b1, b2))
    for law in (LengthLaw(BINARY, 2), CatalogueLanguage(BINARY).decode_law(CatalogueLanguage.describe_pattern(2, 3))):
        assert enumerate_law(law, lo) <= enumerate_law(law, hi)


def test_catalogue_laws_prefix_free_at_small_budgets():
    lang = CatalogueLanguage(BINARY)
    for d in itertools.chain.from_iterable(
        (format(i, f"0{n}b") for i in range(2**n)) for n in range(2, 10)
    ):
        emitted = lang.decode_law(d).emitted(341)  # every sequence of length <= 4
        check_prefix_free(emitted, d)


def test_prediction_set_law_examples():
    s = Situation(seq((0, 0)), 1)
    assert prediction_set_law(VACUOUS, s) == {0, 1}
    forbid_one = FiniteLaw([s.extend(1)])
    assert prediction_set_law(forbid_one, s) == {0}
    both = LengthLaw(BINARY, 2)
    assert prediction_set_law(both, s) == frozenset()


@given(st.integers(0, 100), st.integers(0, 100))
def test_prediction_set_law_shrinks_with_budget(b1, b2):
    lo, hi = sorted((b1, b2))
    law = LengthLaw(BINARY, 2)
    s = Situation(seq((1, 0)), 1)
    assert prediction_set_law(law, s, hi) <= prediction_set_law(law, s, lo)


def test_n_part_of_length_slices():
    system = SequenceSystem([LengthLaw(SINGLETON, n) for n in (1, 2, 3)])
    expected = {s for s in SINGLETON.sequences_up_to(3) if s}
    assert n_part(system, 3, 10**6) == expected
    assert n_part(system, 1, 10**6) == system.component(1).emitted(None)
    assert n_part(system, 3, 0) == frozenset()
    for N in (1, 2):
        assert n_part(system, N, 10**6) <= n_part(system, N + 1, 10**6)


def test_attained_level_linear_scan():
    target = seq((0, 1), (1, 1))
    laws = [FiniteLaw([seq((0, 0))]) for _ in range(8)]
    laws[2] = FiniteLaw([target])
    laws[6] = FiniteLaw([target, seq((1, 1))])
    system = SequenceSystem(laws)
    s = Situation(seq((0, 1)), 1)
    assert attained_level(system, s, 1) == 3
    assert attained_level(system, s, 0) is NotAttained
    assert prediction_set_system(system, s, 2) == {0, 1}
    assert prediction_set_system(system, s, 3) == {0}


def test_attained_level_nonincreasing_in_budget():
    pairs = [(5, seq((0, 1))), (1, seq((1, 1))), (3, seq((0, 1)))]
    system = EnumeratedSystem(lambda: pairs)
    s = Situation((), 0)
    levels = [attained_level(system, s, 1, b) for b in range(4)]
    assert levels == [NotAttained, 5, 5, 3]


def test_refines_examples():
    assert refines(LengthLaw(SINGLETON, 1), LengthLaw(SINGLETON, 3), 10**6)
    assert not refines(LengthLaw(SINGLETON, 3), LengthLaw(SINGLETON, 1), 10**6)
    assert refines(LengthLaw(SINGLETON, 2), VACUOUS, 10**6)


def test_strong_prediction_set():
    family = DivisibilitySystem(BINARY, 1)
    cert = certify_strong(family, 10**4, 3)
    assert strong_prediction_set(cert, Situation((), 0), 10**4) == frozenset()
    vacuous = certify_strong(SequenceSystem([]), 10, 3)
    assert strong_prediction_set(vacuous, Situation((), 0), 10) == {0, 1}
    with pytest.raises(CertificateExceeded):
        strong_prediction_set(cert, Situation((), 0), 10**5)


def test_falsified_history_refrains_from_prediction():
    law = LengthLaw(SINGLETON, 1)
    s = Situation(seq((0, 0), (0, 1)), 0)
    assert falsified_before(law, s)
    assert prediction_set_law(law, s) == {0, 1}


def test_certify_strong_rejects_non_nested():
    with pytest.raises(ValueError):
        certify_strong(SequenceSystem([LengthLaw(SINGLETON, 3), LengthLaw(SINGLETON, 1)]), 10**4, 2)


@given(st.integers(1, 40), st.integers(0, 2000))
def test_dovetail_share_sums_to_budget(n, budget):
    shares = [dovetail_share(k, budget) for k in range(1, dovetail_active(budget) + 2)]
    assert sum(shares) == budget
    assert shares[-1] == 0
    assert dovetail_share(n, budget) <= dovetail_share(n, budget + 1)


def test_enumerated_system_rejects_comparable_component():
    system = EnumeratedSystem(lambda: [(1, seq((0, 0))), (1, seq((0, 0), (0, 1)))])
    with pytest.raises(PrefixFreeViolation):
        system.component(1)
