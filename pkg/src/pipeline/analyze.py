import math
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from data_models import FixedPointProfile, OrderFilter, SortKey, SpecialOrder
from pipeline.reports import fmt_float, fmt_pvalue, gof_rows, gof_summary, write_csv
from stats.chisq import DEFAULT_EXPECTED_FLOOR
from stats.gof import (
    DEFAULT_WINDOW,
    gof_aggregate,
    order_cells,
    sliding_window_gof,
    sort_cells,
    special_order_gof,
)
from stats.moments import z_statistic
from stats.normality import DEFAULT_BIN_WIDTH, DEFAULT_RJ_REPLICATES, DEFAULT_SEED, normality_suite
from stats.predictions import special_order_cell
from stats.simulate import resample_cells

SMALL_ORDER_MODELS = (SpecialOrder.small_3, SpecialOrder.small_4, SpecialOrder.small_6)
LARGE_ORDER_MODELS = (SpecialOrder.third, SpecialOrder.quarter_1mod8, SpecialOrder.quarter_5mod8)


def analyze_normality(
    profiles: Sequence[FixedPointProfile],
    out_dir: Path,
    bin_width: float = DEFAULT_BIN_WIDTH,
    replicates: int = DEFAULT_RJ_REPLICATES,
    seed: int = DEFAULT_SEED,
) -> List[str]:
    zs = [z_statistic(profile) for profile in profiles if profile.p > 3]
    report = normality_suite(zs, bin_width=bin_width, replicates=replicates, seed=seed)

    write_csv(
        out_dir / "zrecords.csv",
        ["p", "f_total", "mean", "variance", "z"],
        ([r.p, r.f_total, fmt_float(r.mean), fmt_float(r.variance), fmt_float(r.z)] for r in zs),
    )
    write_csv(
        out_dir / "histogram.csv",
        ["lower", "upper", "count"],
        ([fmt_float(b.lower), fmt_float(b.upper), b.count] for b in report.bins),
    )
    write_csv(
        out_dir / "probability_plot.csv",
        ["z", "normal_score"],
        ([fmt_float(z), fmt_float(s)] for z, s in report.plot_points),
    )
    verdict = "reject normality" if report.rj_reject else "do not reject normality"
    return [
        f"z-statistics: n = {report.n}, mean = {fmt_float(report.mean)}, sd = {fmt_float(report.sd)}",
        f"Ryan-Joiner R = {fmt_float(report.ryan_joiner_stat)}, "
        f"critical (0.05, {report.rj_critical_method}) = {fmt_float(report.rj_critical)}: {verdict}",
    ]


def analyze_gof(
    profiles: Sequence[FixedPointProfile],
    out_dir: Path,
    exclude_special: bool = False,
    orders: Optional[List[int]] = None,
    expected_floor: float = DEFAULT_EXPECTED_FLOOR,
) -> List[str]:
    cells = order_cells(profiles)
    lines: List[str] = []
    targets = [[d] for d in orders] if orders else [None]
    for target in targets:
        exclusions = OrderFilter(exclude_small=exclude_special, orders=target)
        result = gof_aggregate(cells, exclusions, expected_floor)
        name = f"gof_d{target[0]}.csv" if target else "gof.csv"
        write_csv(out_dir / name, ["category", "observed", "expected"], gof_rows(result))
        title = f"binomial model, d = {target[0]}" if target else "binomial model, all admitted orders"
        lines.extend(gof_summary(title, result))
    return lines


def analyze_window(
    profiles: Sequence[FixedPointProfile],
    out_dir: Path,
    window: int = DEFAULT_WINDOW,
    step: int = 1,
    sort_key: SortKey = SortKey.order,
    exclude_special: bool = False,
    synthetic: bool = False,
    seed: int = DEFAULT_SEED,
    expected_floor: float = DEFAULT_EXPECTED_FLOOR,
) -> List[str]:
    exclusions = OrderFilter(exclude_small=exclude_special)
    cells = [cell for cell in order_cells(profiles) if exclusions.admits(cell)]
    if synthetic:
        cells = resample_cells(cells, np.random.default_rng(seed))
    cells = sort_cells(cells, sort_key)
    results = sliding_window_gof(cells, window=window, step=step, expected_floor=expected_floor)

    write_csv(
        out_dir / "window.csv",
        ["window_index", "max_order", "log10_max_order", "stat", "pvalue"],
        (
            [r.window_index, r.max_order, fmt_float(math.log10(r.max_order)), fmt_float(r.stat), fmt_pvalue(r.pvalue)]
            for r in results
        ),
    )
    pvalues = np.array([r.pvalue for r in results])
    lines = [
        f"sliding window: {len(cells)} cells sorted by {sort_key.value}, window {window}, step {step}"
        + (f", resampled from the binomial model (seed {seed})" if synthetic else ""),
        f"  windows: {len(results)}, fraction with p < 0.05: {fmt_float(float(np.mean(pvalues < 0.05)))}",
    ]
    small = [r.pvalue for r in results if r.max_order <= 10]
    if small:
        lines.append(f"  min p-value among windows with max order <= 10: {fmt_float(min(small))}")
    quarter_scale = (min(cell.p for cell in cells) - 1) // 4
    large = [r.pvalue for r in results if r.max_order >= quarter_scale]
    if large:
        lines.append(
            f"  min p-value among windows with max order >= {quarter_scale}: {fmt_float(min(large))}"
        )
    return lines


def _special_rows(profiles: Sequence[FixedPointProfile], models: Sequence[SpecialOrder]):
    rows, lines = [], []
    for which in models:
        qualifying = [cell for cell in (special_order_cell(pr, which) for pr in profiles) if cell]
        if not qualifying:
            lines.append(f"{which.value}: no qualifying primes")
            continue
        observed = [sum(1 for value, _ in qualifying if value == k) for k in range(3)]
        expected = [
            sum(
                pred.probs[pred.labels.index(str(k))] if str(k) in pred.labels else 0.0
                for _, pred in qualifying
            )
            for k in range(3)
        ]
        result = special_order_gof(profiles, which)
        rows.append(
            [which.value, len(qualifying), *observed, *(fmt_float(e) for e in expected), fmt_pvalue(result.pvalue)]
        )
        lines.extend(gof_summary(f"{which.value}: {len(qualifying)} primes", result))
    return rows, lines


_SPECIAL_HEADER = ["model", "primes", "f0", "f1", "f2", "expected0", "expected1", "expected2", "pvalue"]


def analyze_small_orders(profiles: Sequence[FixedPointProfile], out_dir: Path) -> List[str]:
    rows, lines = _special_rows(profiles, SMALL_ORDER_MODELS)
    write_csv(out_dir / "small_orders.csv", _SPECIAL_HEADER, rows)
    return lines


def analyze_large_orders(profiles: Sequence[FixedPointProfile], out_dir: Path) -> List[str]:
    rows, lines = _special_rows(profiles, LARGE_ORDER_MODELS)
    write_csv(out_dir / "large_orders.csv", _SPECIAL_HEADER, rows)
    return lines
