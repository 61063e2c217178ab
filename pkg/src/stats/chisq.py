import logging
from typing import List, Sequence

from scipy.special import gammaincc

from data_models import GofResult

logger = logging.getLogger(__name__)

DEFAULT_EXPECTED_FLOOR = 1.0


def chi_squared_sf(stat: float, dof: int) -> float:
    """Upper tail of the chi-squared distribution: Q(dof/2, stat/2)."""
    if stat < 0:
        raise ValueError(f"chi-squared statistic must be non-negative, got {stat}")
    if dof < 1:
        raise ValueError(f"degrees of freedom must be positive, got {dof}")
    return float(min(1.0, max(0.0, gammaincc(dof / 2.0, stat / 2.0))))


def _merged_label(left: str, right: str) -> str:
    low = left.split("|")[0]
    if right.startswith(">"):
        return f">={low}" if not low.startswith(">") else low
    return f"{left}|{right}"


def chi_squared_test(
    labels: Sequence[str],
    observed: Sequence[int],
    expected: Sequence[float],
    expected_floor: float = DEFAULT_EXPECTED_FLOOR,
) -> GofResult:
    """
    Pearson chi-squared of observed against expected category counts.

    While more than two categories remain and one has an expected count
    below `expected_floor`, the rightmost such category is folded into its
    left neighbour (the leftmost one into its right neighbour), losing one
    degree of freedom each time.
    """
    labels: List[str] = list(labels)
    observed = [int(o) for o in observed]
    expected = [float(e) for e in expected]
    if not (len(labels) == len(observed) == len(expected)):
        raise ValueError("labels, observed and expected must have equal length")

    merged = False
    while len(expected) > 2:
        thin = [i for i, e in enumerate(expected) if e < expected_floor]
        if not thin:
            break
        i = thin[-1]
        j = i - 1 if i > 0 else 1
        left, right = min(i, j), max(i, j)
        labels[left] = _merged_label(labels[left], labels[right])
        observed[left] += observed.pop(right)
        expected[left] += expected.pop(right)
        labels.pop(right)
        merged = True

    if len(expected) < 2:
        raise ValueError("need at least two categories for a chi-squared test")
    if any(e <= 0 for e in expected):
        raise ValueError(f"expected counts must be positive after merging: {expected}")

    stat = sum((o - e) ** 2 / e for o, e in zip(observed, expected))
    dof = len(expected) - 1
    if merged:
        logger.debug("merged thin categories into %s (dof %d)", labels, dof)
    return GofResult(
        labels=labels,
        observed=observed,
        expected=expected,
        stat=stat,
        dof=dof,
        pvalue=chi_squared_sf(stat, dof),
        merged=merged,
        policy=f"categories with expected count < {expected_floor:g} merged into a neighbour",
    )
