import numpy as np
import pytest

from arith.primes import primes_in_range
from data_models import OrderCell, OrderFilter, SortKey, SpecialOrder
from selfpower.census import fixed_point_profile
from stats.gof import gof_aggregate, order_cells, sliding_window_gof, sort_cells, special_order_gof
from stats.predictions import binomial_category_probs
from stats.simulate import resample_cells, resample_special


@pytest.fixture(scope="module")
def profiles():
    return [fixed_point_profile(p) for p in primes_in_range(20_000, 24_000)]


def _synthetic_cells(count, orders=(5, 7, 9, 11, 13)):
    phi = {5: 4, 7: 6, 9: 6, 11: 10, 13: 12}
    # p is chosen large enough that no order is p-1 or (p-1)/2.
    return [OrderCell(p=100003, d=d, phi_d=phi[d], f_d=0) for d in orders] * (count // len(orders))


def test_order_cells_cover_every_divisor(profiles):
    cells = order_cells(profiles[:10])
    assert len(cells) == sum(len(pr.counts) for pr in profiles[:10])
    assert all(cell.f_d == next(pr for pr in profiles if pr.p == cell.p).counts[cell.d] for cell in cells)


def test_filter_applies_fixed_exclusions():
    keep = OrderFilter()
    assert not keep.admits(OrderCell(p=101, d=1, phi_d=1, f_d=1))
    assert not keep.admits(OrderCell(p=101, d=50, phi_d=20, f_d=0))
    assert not keep.admits(OrderCell(p=101, d=100, phi_d=40, f_d=0))
    assert keep.admits(OrderCell(p=101, d=4, phi_d=2, f_d=1))
    assert not OrderFilter(exclude_small=True).admits(OrderCell(p=101, d=4, phi_d=2, f_d=1))
    assert OrderFilter(orders=[5]).admits(OrderCell(p=101, d=5, phi_d=4, f_d=1))
    assert not OrderFilter(orders=[5]).admits(OrderCell(p=101, d=10, phi_d=4, f_d=1))


def test_aggregate_sums_cell_predictions(profiles):
    cells = order_cells(profiles)
    result = gof_aggregate(cells)
    admitted = [c for c in cells if OrderFilter().admits(c)]
    expected = np.sum([binomial_category_probs(c.d, c.phi_d).probs for c in admitted], axis=0)
    assert sum(result.observed) == len(admitted)
    assert round(sum(result.expected)) == len(admitted)
    if not result.merged:
        assert result.expected == pytest.approx(expected.tolist())
        assert result.dof == 3
    assert 0 <= result.pvalue <= 1


def test_aggregate_rejects_empty_input():
    with pytest.raises(ValueError):
        gof_aggregate([])
    with pytest.raises(ValueError):
        gof_aggregate([OrderCell(p=101, d=2, phi_d=1, f_d=0)])


def test_full_window_reproduces_aggregate(profiles):
    cells = sort_cells([c for c in order_cells(profiles) if OrderFilter().admits(c)], SortKey.prime)
    [only] = sliding_window_gof(cells, window=len(cells))
    aggregate = gof_aggregate(cells)
    assert only.stat == pytest.approx(aggregate.stat, rel=1e-9)
    assert only.pvalue == pytest.approx(aggregate.pvalue, abs=1e-9)
    assert only.max_order == max(c.d for c in cells)


def test_window_placement_and_errors(profiles):
    cells = sort_cells([c for c in order_cells(profiles) if OrderFilter().admits(c)])
    results = sliding_window_gof(cells, window=100)
    assert len(results) == len(cells) - 99
    assert [r.max_order for r in results] == sorted(r.max_order for r in results)
    assert results[0].max_order == cells[99].d
    with pytest.raises(ValueError):
        sliding_window_gof(cells[:50], window=100)


def test_smallest_orders_diverge(profiles):
    # F_3 never reaches 2 although the binomial model expects it a ninth of the time.
    cells = sort_cells([c for c in order_cells(profiles) if OrderFilter().admits(c)])
    results = sliding_window_gof(cells, window=100)
    assert min(r.pvalue for r in results if r.max_order <= 4) < 0.01


def test_sort_keys():
    cells = [
        OrderCell(p=13, d=6, phi_d=2, f_d=0),
        OrderCell(p=11, d=5, phi_d=4, f_d=0),
        OrderCell(p=13, d=3, phi_d=2, f_d=1),
    ]
    assert [c.d for c in sort_cells(cells, SortKey.order)] == [3, 5, 6]
    assert [(c.p, c.d) for c in sort_cells(cells, SortKey.prime)] == [(11, 5), (13, 3), (13, 6)]
    assert [c.d for c in sort_cells(cells, SortKey.phi_over_d)] == [6, 3, 5]


def test_pvalues_uniform_under_the_model():
    rng = np.random.default_rng(12345)
    cells = _synthetic_cells(500)
    pvalues = [gof_aggregate(resample_cells(cells, rng)).pvalue for _ in range(600)]
    assert np.mean(np.array(pvalues) < 0.05) == pytest.approx(0.05, abs=0.03)


def test_disjoint_windows_uniform_under_the_model():
    rng = np.random.default_rng(2024)
    cells = resample_cells(_synthetic_cells(100_002, orders=(7, 11, 13)), rng)
    results = sliding_window_gof(cells, window=100, step=100)
    assert len(results) == 1000
    assert np.mean([r.pvalue < 0.05 for r in results]) == pytest.approx(0.05, abs=0.03)


def test_special_order_gof_counts(profiles):
    result = special_order_gof(profiles, SpecialOrder.small_3)
    qualifying = [pr for pr in profiles if 3 in pr.counts]
    assert sum(result.observed) == len(qualifying)
    assert sum(result.expected) == pytest.approx(len(qualifying))
    assert result.labels == ["0", "1"]
    assert result.dof == 1
    assert not result.low_sample


def test_special_order_gof_low_sample_flag():
    few = [fixed_point_profile(p) for p in (7, 13, 19, 31, 37)]
    assert special_order_gof(few, SpecialOrder.small_3).low_sample


def test_special_order_gof_rejects_impossible_outcome(profiles):
    target = next(pr for pr in profiles if 6 in pr.counts)
    counts = dict(target.counts)
    counts[6] = 1
    broken = target.model_copy(update={"counts": counts})
    with pytest.raises(ValueError):
        special_order_gof([broken], SpecialOrder.small_6)


def test_special_order_gof_accepts_resampled_data(profiles):
    rng = np.random.default_rng(99)
    for which in SpecialOrder:
        resampled = resample_special(profiles, which, rng)
        result = special_order_gof(resampled, which)
        assert 0 <= result.pvalue <= 1
        assert sum(result.observed) == len(resampled)
