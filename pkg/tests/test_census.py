from collections import Counter

import pytest

from arith.factor import factorize
from arith.modular import multiplicative_order
from arith.primes import primes_in_range
import selfpower.census as census
from selfpower.census import (
    OracleBudgetError,
    fixed_point_profile,
    fixed_points_bruteforce,
    fixed_points_by_order,
    g_count_bruteforce,
    g_count_formula,
    is_fixed_point_by_order,
    kth_residue_fixed_point,
)


@pytest.mark.parametrize("p,expected", [(5, [1]), (7, [1, 4]), (2, [1])])
def test_fixed_points_bruteforce(p, expected):
    assert fixed_points_bruteforce(p) == expected


def test_profile_examples():
    seven = fixed_point_profile(7)
    assert seven.counts == {1: 1, 2: 0, 3: 1, 6: 0}
    assert seven.total == 2
    assert seven.ord2 == 3
    assert seven.p_mod_8 == 7

    five = fixed_point_profile(5)
    assert five.counts == {1: 1, 2: 0, 4: 0}
    assert five.total == 1

    two = fixed_point_profile(2)
    assert two.counts == {1: 1}
    assert two.ord2 is None


def test_profile_matches_bruteforce_below_10000(small_primes):
    assert len(small_primes) == 1229
    for p in small_primes:
        pm1 = factorize(p - 1)
        profile = fixed_point_profile(p, pm1)
        oracle = fixed_points_bruteforce(p)
        assert profile.total == len(oracle)
        assert profile.counts[1] == 1
        by_order = Counter(multiplicative_order(x, p, pm1) for x in oracle)
        assert {d: by_order.get(d, 0) for d in profile.counts} == profile.counts


def test_wide_modulus_path_matches_vectorized(monkeypatch):
    primes = primes_in_range(2, 2000)
    vectorized = [fixed_point_profile(p).counts for p in primes]
    monkeypatch.setattr(census, "VECTOR_MODULUS_LIMIT", 2)
    assert [fixed_point_profile(p).counts for p in primes] == vectorized


def test_order_characterization_matches_bruteforce():
    for p in primes_in_range(2, 3000):
        assert fixed_points_by_order(p) == fixed_points_bruteforce(p)


@pytest.mark.parametrize("x,p,expected", [(4, 7, True), (1, 101, True), (100, 101, False), (6, 7, False)])
def test_is_fixed_point_by_order(x, p, expected):
    assert is_fixed_point_by_order(x, p) is expected


@pytest.mark.parametrize("p,expected", [(2, 1), (3, 3), (5, 8)])
def test_g_count_examples(p, expected):
    assert g_count_formula(p) == expected
    assert g_count_bruteforce(p) == expected


def test_g_count_formula_matches_bruteforce_to_61():
    for p in primes_in_range(2, 61):
        g = g_count_formula(p)
        assert g == g_count_bruteforce(p)
        assert g >= p - 1


def test_g_count_bruteforce_refuses_large_p():
    with pytest.raises(OracleBudgetError):
        g_count_bruteforce(100003)


def test_kth_residue_examples():
    assert kth_residue_fixed_point(7, 3, 1) is False
    assert kth_residue_fixed_point(7, 2, 1) is True
    with pytest.raises(ValueError):
        kth_residue_fixed_point(7, 4, 1)
    with pytest.raises(ValueError):
        kth_residue_fixed_point(7, 3, 3)


def test_cubic_candidates_fixed_iff_cubic_residue():
    for p in primes_in_range(7, 5000):
        if (p - 1) % 3:
            continue
        for m in (1, 2):
            x = m * (p - 1) // 3 + 1
            cubic = pow(x, (p - 1) // 3, p) == 1
            assert kth_residue_fixed_point(p, 3, m) is cubic
            assert (x in fixed_points_bruteforce(p)) is cubic
