import math

import pytest

from stats.chisq import chi_squared_sf, chi_squared_test


def test_reference_value():
    assert chi_squared_sf(4.66, 3) == pytest.approx(0.198, abs=0.0005)


def test_zero_statistic():
    for dof in (1, 2, 3, 10):
        assert chi_squared_sf(0.0, dof) == 1.0


def test_two_degrees_of_freedom_closed_form():
    for x in (0.1, 1.0, 4.66, 10.0, 40.0):
        assert chi_squared_sf(x, 2) == pytest.approx(math.exp(-x / 2), abs=1e-10)


def test_monotone_in_statistic():
    values = [chi_squared_sf(x / 4, 3) for x in range(100)]
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_rejects_negative_statistic():
    with pytest.raises(ValueError):
        chi_squared_sf(-1.0, 3)


def test_exact_match_gives_zero_statistic():
    result = chi_squared_test(["0", "1", "2"], [30, 50, 20], [30.0, 50.0, 20.0])
    assert result.stat == 0
    assert result.pvalue == 1.0
    assert result.dof == 2
    assert not result.merged


def test_thin_tail_is_merged():
    result = chi_squared_test(["0", "1", "2", ">2"], [40, 45, 15, 0], [44.0, 44.4, 11.1, 0.5])
    assert result.merged
    assert result.labels == ["0", "1", ">=2"]
    assert result.observed == [40, 45, 15]
    assert result.expected == pytest.approx([44.0, 44.4, 11.6])
    assert result.dof == 2


def test_zero_expected_category_is_merged():
    result = chi_squared_test(["0", "1", "2", ">2"], [44, 45, 11, 0], [44.4, 44.4, 11.2, 0.0])
    assert result.dof == 2
    assert sum(result.observed) == 100
