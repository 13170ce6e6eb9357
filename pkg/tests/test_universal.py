import pytest
from hypothesis import given, strategies as st

from unipred.core import BINARY, SINGLETON, Stream, seq
from unipred.languages import CatalogueLanguage, FiniteLaw, PrefixFreeLanguage, TableLanguage, strings_up_to
from unipred.laws import VACUOUS, DivisibilitySystem, LengthLaw, NotAttained, SequenceSystem, n_part, refines
from unipred.universal import (
    MAX_INDEX,
    NoWitness,
    Undefined,
    build_universal,
    build_weighted_universal,
    check_interleaving_containment,
    decode_index,
    default_registry,
    demonstrate_tightness,
    divisibility_family,
    equal_label_system,
    interleave_index,
    level_domination_holds,
    registry_constant,
)

CAT = CatalogueLanguage(BINARY)


@pytest.mark.parametrize("n, expected", [(3, Undefined), (4, (1, 2)), (5, (2, 1)), (1, Undefined), (2, (1, 1))])
def test_decode_index_examples(n, expected):
    assert decode_index(n) == expected


@pytest.mark.parametrize("k, n, expected", [(1, 1, 2), (2, 1, 5), (1, 2, 4)])
def test_interleave_index_examples(k, n, expected):
    assert interleave_index(k, n) == expected
    assert decode_index(expected) == (k, n)


@given(st.integers(1, 40), st.integers(1, 2**20))
def test_interleave_round_trip_and_constant(k, n):
    index = interleave_index(k, n)
    assert decode_index(index) == (k, n)
    assert index <= registry_constant(k) * n
    assert bin(index)[2:] == bin(n)[2:] + "0" + "1" * (k - 1)


def test_interleave_overflow_is_reported():
    with pytest.raises(OverflowError):
        interleave_index(64, 1)
    assert interleave_index(1, 2**61) <= MAX_INDEX


def test_single_member_registry_occupies_even_indices():
    laws = [LengthLaw(SINGLETON, n) for n in range(1, 40)]
    universal = build_universal([SequenceSystem(laws)])
    for n in range(1, 65):
        if n % 2 == 0:
            assert universal.component(n) == laws[n // 2 - 1]
        else:
            assert universal.component(n) is VACUOUS
    assert universal.component(1) is VACUOUS


def test_level_one_two_parts_inside_first_four():
    family = DivisibilitySystem(SINGLETON, 1)
    universal = build_universal([family, DivisibilitySystem(SINGLETON, 2)])
    budget = 200
    assert n_part(family, 2, budget) <= n_part(universal, 4, budget * universal.slack)


def test_default_registry_shape():
    registry = default_registry(CAT)
    assert len(registry) == 4
    kinds = [type(s).__name__ for s in registry.systems]
    assert kinds.count("DivisibilitySystem") == 2
    assert kinds[0] == "DescriptionIndexedSystem"
    assert registry.constants() == {1: 4, 2: 8, 3: 16, 4: 32}


def test_containment_small_run():
    universal = build_universal(default_registry(CAT))
    checks, violations = check_interleaving_containment(universal, Stream.iid(BINARY, 5), 48, 8, [0, 5, 300, None])
    assert checks > 0 and violations == []


def test_level_domination_pointwise():
    universal = build_universal(default_registry(CAT))
    stream = Stream.periodic(BINARY, [(0, 1), (1, 1), (0, 0)])
    seen = 0
    for l in range(1, 100):
        for k in range(1, 5):
            held = level_domination_holds(universal, k, stream.prefix(l))
            assert held is not False
            seen += held is True
    assert seen > 100


@pytest.mark.parametrize("k, lengths", [(1, [1, 3, 5]), (2, [2, 6, 10]), (3, [4, 12, 20])])
def test_divisibility_slice_lengths(k, lengths):
    family = divisibility_family(BINARY, k)
    assert [family.slice_length(j) for j in (1, 2, 3)] == lengths
    assert all(family.index_of_length(L) == j for j, L in enumerate(lengths, 1))


def test_divisibility_slices_refine_and_are_disjoint_across_k():
    family = DivisibilitySystem(SINGLETON, 1)
    assert refines(family.component(1), family.component(2), 10**4)
    for length in range(1, 300):
        owners = [k for k in range(1, 10) if DivisibilitySystem(SINGLETON, k).index_of_length(length)]
        assert len(owners) == 1


def test_weighted_split_example():
    table = TableLanguage(SINGLETON, {"0": FiniteLaw([seq((0, 1))])})
    weighted = build_weighted_universal(table)
    assert weighted.split(0b10) == (1, "0")
    assert weighted.split(0b11) is None
    assert weighted.component(0b11) is VACUOUS
    assert weighted.index_bound(1, "01") == 7


def test_weighted_universal_places_every_description():
    pf = PrefixFreeLanguage(CatalogueLanguage(SINGLETON))
    weighted = build_weighted_universal(pf)
    domain = [D for D in strings_up_to(10) if pf.in_system_domain(D)]
    assert domain
    for D in domain:
        system = pf.decode_system(D)
        for n in range(1, 33):
            index = weighted.index_for(n, D)  # binary(index) = binary(n) · reverse(D)
            assert index <= weighted.index_bound(n, D)
            assert weighted.split(index) == (n, D[::-1])
            assert weighted.component(index) == system.component(n)


def test_equal_label_system_components():
    system = equal_label_system(BINARY, 16)
    assert system.component(2).items == (seq((0, 0), (0, 0)), seq((0, 1), (0, 1)))


def scan_first_uncovered(universal, K_prime, N, stream, top):
    limit = 2**K_prime * N
    for k in range(1, top + 1):
        family = DivisibilitySystem(stream.space, k)
        for j in range(1, N + 1):
            level = universal.min_index(stream.prefix(family.slice_length(j)))
            if level is NotAttained or level > limit:
                return k, family.slice_length(j)
    return None


@pytest.mark.parametrize("K", [3, 4, 5])
def test_tightness_witness_is_first_uncovered_slice(K):
    universal = build_universal(default_registry(CAT))
    stream = Stream.constant(BINARY)
    witness = demonstrate_tightness(universal, K, 1, stream, CAT)
    K_prime = K - witness.a
    assert (witness.k, witness.prefix_length) == scan_first_uncovered(universal, K_prime, 1, stream, 2**K_prime + 1)
    assert not witness.contained
    assert witness.plain_complexity <= K


def test_tightness_needs_divisibility_candidates():
    universal = build_universal(default_registry(CAT))
    with pytest.raises(NoWitness):
        demonstrate_tightness(universal, 3, 1, Stream.constant(BINARY), CAT, candidates=[SequenceSystem([])])


@pytest.mark.parametrize("K_prime, N", [(1, 1), (2, 3), (4, 2)])
def test_universal_levels_hold_few_prefixes_of_one_path(K_prime, N):
    universal = build_universal(default_registry(CAT))
    stream = Stream.constant(BINARY)
    limit = 2**K_prime * N
    hits = [l for l in range(1, 400) if (lv := universal.min_index(stream.prefix(l))) is not NotAttained and lv <= limit]
    assert len(hits) <= limit
