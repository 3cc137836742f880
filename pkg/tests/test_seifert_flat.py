import math
import random
from collections import Counter
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from instanton_obstruct.errors import NotCoprime, PrecisionFailure, TooFewFibers, Unsupported, InvalidSeifertData
from instanton_obstruct import seifert_flat
from instanton_obstruct.seifert_flat import (
    SeifertData,
    build_filtered_generators,
    cs_invariant,
    cs_trivial,
    enumerate_flat_connections,
    floer_grading,
    is_admissible,
    r_invariant,
    validate_seifert,
)

from oracles import exhaustive_e_cs, numeric_connection_count, r_invariant_float, r_invariant_mp


def test_validate_accepts_coprime():
    y = validate_seifert([2, 3, 5])
    assert y.multiplicities == (2, 3, 5)
    assert y.a == 30


def test_validate_k12_sphere():
    assert validate_seifert((2, 3, 71)).a == 426


def test_validate_rejects_common_factor():
    with pytest.raises(NotCoprime) as info:
        validate_seifert((2, 4, 5))
    assert (info.value.i, info.value.j) == (0, 1)


def test_validate_rejects_short_and_small():
    with pytest.raises(TooFewFibers):
        validate_seifert((2, 3))
    with pytest.raises(InvalidSeifertData):
        validate_seifert((1, 3, 5))


@pytest.mark.parametrize("aa, count", [((2, 3, 5), 2), ((2, 3, 7), 2), ((2, 3, 11), 4)])
def test_connection_counts(aa, count):
    assert numeric_connection_count(aa) == count
    assert len(enumerate_flat_connections(validate_seifert(aa))) == count


@pytest.mark.parametrize(
    "aa, values",
    [
        ((2, 3, 5), {Fraction(119, 120), Fraction(71, 120)}),
        ((2, 3, 7), {Fraction(143, 168), Fraction(47, 168)}),
    ],
)
def test_cs_values(aa, values):
    y = validate_seifert(aa)
    conns = enumerate_flat_connections(y)
    assert {cs_invariant(y, c) for c in conns} == values
    assert set(exhaustive_e_cs(aa)) == values


def test_trivial_connection_has_zero_cs():
    assert cs_trivial(validate_seifert((2, 3, 5))) == 0


def test_sigma235_gradings_pinned():
    y = validate_seifert((2, 3, 5))
    by_e = {c.e_label: floer_grading(y, c) for c in enumerate_flat_connections(y)}
    assert by_e == {1: 1, 7: 5}


@pytest.mark.parametrize("k", range(1, 13))
def test_example_family_gradings_are_odd(k):
    y = validate_seifert((2, 3, 6 * k - 1))
    conns = enumerate_flat_connections(y)
    assert len(conns) == 2 * k
    assert all(c.grading % 2 == 1 for c in conns)


def test_grading_parity_convention_independent():
    y = validate_seifert((2, 3, 11))
    for c in enumerate_flat_connections(y):
        g = floer_grading(y, c)
        raw = r_invariant(y, c.e_label)
        for variant in (-raw, raw + 2, raw - 4, -raw + 6):
            assert variant % 8 % 2 == g % 2


@pytest.mark.parametrize("aa", [(2, 3, 5), (2, 3, 13), (2, 5, 7), (3, 4, 5), (2, 7, 9), (3, 5, 7)])
def test_gradings_match_float_and_high_precision_sums(aa):
    y = validate_seifert(aa)
    for c in enumerate_flat_connections(y):
        raw = r_invariant(y, c.e_label)
        assert raw == round(r_invariant_float(aa, c.e_label))
        assert raw == int(mpmath.nint(r_invariant_mp(aa, c.e_label)))
        assert c.grading == raw % 8


def test_precision_gate_fails_loudly(monkeypatch):
    y = validate_seifert((2, 3, 5))
    monkeypatch.setattr(seifert_flat, "INTEGER_TOLERANCE", seifert_flat._ctx.mpf("1e-80"))
    with pytest.raises(PrecisionFailure):
        r_invariant(y, 1)


def test_four_fibers_unsupported():
    assert seifert_flat.SUPPORTS_MANY_FIBERS is False
    with pytest.raises(Unsupported):
        enumerate_flat_connections(validate_seifert((2, 3, 5, 7)))


def test_sorted_by_cs_then_grading():
    conns = enumerate_flat_connections(validate_seifert((2, 5, 11)))
    keys = [(c.cs_value, c.grading) for c in conns]
    assert keys == sorted(keys)


def test_build_filtered_generators_sigma235():
    c = build_filtered_generators(validate_seifert((2, 3, 5)))
    assert sorted(g.grading for g in c.generators) == [1, 5]
    assert not c.differential and not c.differential_incomplete


def test_build_filtered_generators_k12():
    c = build_filtered_generators(validate_seifert((2, 3, 71)))
    assert len(c) == 24
    assert all(g.grading % 2 for g in c.generators)
    assert not c.differential_incomplete


def test_mixed_parity_flags_incomplete_differential():
    # Sigma(2,5,7) has gradings 1, 3, 5, 7 -- find a sphere with both parities
    for aa in [(3, 4, 5), (2, 5, 7), (2, 7, 9), (3, 5, 7), (2, 5, 13), (3, 4, 7)]:
        y = validate_seifert(aa)
        parities = {c.grading % 2 for c in enumerate_flat_connections(y)}
        assert build_filtered_generators(y).differential_incomplete == (len(parities) > 1)


def coprime_triples(max_product=600):
    triples = [
        (a1, a2, a3)
        for a1 in range(2, 12)
        for a2 in range(a1 + 1, 40)
        for a3 in range(a2 + 1, max_product // (a1 * a2) + 1)
        if math.gcd(a1, a2) == math.gcd(a1, a3) == math.gcd(a2, a3) == 1
    ]
    return st.sampled_from(triples).flatmap(lambda t: st.permutations(t).map(tuple))


@settings(max_examples=40, deadline=None)
@given(coprime_triples())
def test_cs_denominators_and_range(aa):
    y = validate_seifert(aa)
    for c in enumerate_flat_connections(y):
        assert 0 <= c.cs_value < 1
        assert (4 * y.a) % c.cs_value.denominator == 0
        assert 0 <= c.grading < 8


@settings(max_examples=40, deadline=None)
@given(coprime_triples())
def test_one_representative_per_flip_orbit(aa):
    y = validate_seifert(aa)
    conns = enumerate_flat_connections(y)
    reps = [c.rotation_numbers for c in conns]
    assert len(set(reps)) == len(reps)
    for ls in reps:
        flipped = tuple(ai - l for ai, l in zip(aa, ls))
        # the global flip never names a second connection
        assert flipped not in set(reps) - {ls}
        assert is_admissible(y, ls)
    # every pair flip of an admissible tuple stays admissible with the same cs and grading
    by_rep = {c.rotation_numbers: c for c in conns}
    for ls, c in by_rep.items():
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            other = list(ls)
            other[i] = aa[i] - other[i]
            other[j] = aa[j] - other[j]
            assert is_admissible(y, other)
            e = seifert_flat.e_from_rotation_numbers(y, other)
            assert seifert_flat.cs_from_e(y, e) == c.cs_value
            assert seifert_flat.grading_from_e(y, e) == c.grading


@settings(max_examples=25, deadline=None)
@given(coprime_triples(max_product=400))
def test_cs_multiset_matches_exhaustive_e(aa):
    y = validate_seifert(aa)
    assert Counter(c.cs_value for c in enumerate_flat_connections(y)) == exhaustive_e_cs(aa)


def test_count_matches_numeric_oracle_random_sample():
    rng = random.Random(7)
    from oracles import random_coprime_triple

    for _ in range(20):
        aa = random_coprime_triple(rng)
        assert len(enumerate_flat_connections(validate_seifert(aa))) == numeric_connection_count(aa)


def test_results_are_immutable_values():
    c = enumerate_flat_connections(validate_seifert((2, 3, 5)))[0]
    with pytest.raises(AttributeError):
        c.grading = 3
    assert hash(SeifertData((2, 3, 5))) == hash(validate_seifert((2, 3, 5)))
