import logging
from typing import Iterable, List, Optional, Sequence

import numpy as np

from arith.factor import divisor_factorizations, euler_phi
from data_models import (
    FixedPointProfile,
    GofResult,
    OrderCell,
    OrderFilter,
    SortKey,
    SpecialOrder,
    WindowResult,
)
from stats.chisq import DEFAULT_EXPECTED_FLOOR, chi_squared_test
from stats.predictions import BINOMIAL_LABELS, binomial_category_matrix, special_order_cell

logger = logging.getLogger(__name__)

MIN_SPECIAL_SAMPLE = 30
DEFAULT_WINDOW = 100


def order_cells(profiles: Iterable[FixedPointProfile]) -> List[OrderCell]:
    """One cell per (p, d | p-1), ascending by p then d."""
    cells = []
    for profile in profiles:
        for fd in divisor_factorizations(profile.pm1):
            cells.append(
                OrderCell(p=profile.p, d=fd.n, phi_d=euler_phi(fd), f_d=profile.counts[fd.n])
            )
    return cells


def sort_cells(cells: Iterable[OrderCell], key: SortKey = SortKey.order) -> List[OrderCell]:
    if key is SortKey.order:
        return sorted(cells, key=lambda c: (c.d, c.p))
    if key is SortKey.prime:
        return sorted(cells, key=lambda c: (c.p, c.d))
    return sorted(cells, key=lambda c: (c.phi_d / c.d, c.d, c.p))


def _category_arrays(cells: Sequence[OrderCell]):
    d = np.array([c.d for c in cells], dtype=np.int64)
    phi_d = np.array([c.phi_d for c in cells], dtype=np.int64)
    probs = binomial_category_matrix(d, phi_d)
    observed = np.zeros_like(probs, dtype=np.int64)
    observed[np.arange(len(cells)), np.minimum([c.f_d for c in cells], 3)] = 1
    return d, probs, observed


def gof_aggregate(
    cells: Iterable[OrderCell],
    exclusions: Optional[OrderFilter] = None,
    expected_floor: float = DEFAULT_EXPECTED_FLOOR,
) -> GofResult:
    """
    Chi-squared of the binomial model summed over (p, d) cells, categories
    F_d = 0, 1, 2, >2.
    """
    exclusions = exclusions or OrderFilter()
    kept = [cell for cell in cells if exclusions.admits(cell)]
    if not kept:
        raise ValueError("no cells left for the goodness-of-fit test")
    _, probs, observed = _category_arrays(kept)
    result = chi_squared_test(
        BINOMIAL_LABELS,
        observed.sum(axis=0).tolist(),
        probs.sum(axis=0).tolist(),
        expected_floor=expected_floor,
    )
    return result.model_copy(
        update={"policy": f"{exclusions.describe()}; {result.policy}"}
    )


def special_order_gof(
    profiles: Iterable[FixedPointProfile],
    which: SpecialOrder,
    expected_floor: float = DEFAULT_EXPECTED_FLOOR,
) -> GofResult:
    """Observed F_d(p) for the chosen special order against the summed per-prime predictions."""
    outcomes: List[int] = []
    expected: Optional[np.ndarray] = None
    labels: List[str] = []
    for profile in profiles:
        cell = special_order_cell(profile, which)
        if cell is None:
            continue
        value, prediction = cell
        if expected is None:
            labels = prediction.labels
            expected = np.zeros(len(labels))
        expected += prediction.probs
        outcomes.append(prediction.category_of(value))

    if expected is None:
        raise ValueError(f"no profile qualifies for the {which.value} model")
    observed = np.bincount(outcomes, minlength=len(labels))
    low_sample = len(outcomes) < MIN_SPECIAL_SAMPLE
    if low_sample:
        logger.warning("%s: only %d qualifying primes", which.value, len(outcomes))
    result = chi_squared_test(labels, observed.tolist(), expected.tolist(), expected_floor)
    return result.model_copy(update={"low_sample": low_sample})


def sliding_window_gof(
    cells: Sequence[OrderCell],
    window: int = DEFAULT_WINDOW,
    step: int = 1,
    expected_floor: float = DEFAULT_EXPECTED_FLOOR,
) -> List[WindowResult]:
    """
    gof_aggregate over every run of `window` consecutive cells, advancing
    `step` cells at a time. Cells must already be filtered and sorted; each
    window is placed at the largest order it contains.
    """
    if window < 1 or step < 1:
        raise ValueError(f"window and step must be positive, got {window}, {step}")
    if window > len(cells):
        raise ValueError(f"window {window} is larger than the {len(cells)} cells")
    d, probs, observed = _category_arrays(cells)
    zero = np.zeros((1, probs.shape[1]))
    cum_expected = np.vstack([zero, np.cumsum(probs, axis=0)])
    cum_observed = np.vstack([zero.astype(np.int64), np.cumsum(observed, axis=0)])
    max_orders = np.lib.stride_tricks.sliding_window_view(d, window).max(axis=1)

    results = []
    for index, start in enumerate(range(0, len(cells) - window + 1, step)):
        end = start + window
        gof = chi_squared_test(
            BINOMIAL_LABELS,
            (cum_observed[end] - cum_observed[start]).tolist(),
            (cum_expected[end] - cum_expected[start]).tolist(),
            expected_floor=expected_floor,
        )
        results.append(
            WindowResult(
                window_index=index,
                max_order=int(max_orders[start]),
                stat=gof.stat,
                pvalue=gof.pvalue,
            )
        )
    return results
