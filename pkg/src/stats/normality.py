import math
from typing import List, Sequence, Tuple

import numpy as np
from scipy.stats import norm

from data_models import HistogramBin, NormalityReport, ZRecord

MIN_SAMPLE = 30
DEFAULT_BIN_WIDTH = 0.25
DEFAULT_RANGE = (-4.0, 4.0)
DEFAULT_RJ_REPLICATES = 2000
DEFAULT_SEED = 20240101

# Above this size the published approximation is no longer below 1.
_RJ_APPROXIMATION_MAX_N = 300


def normal_scores(n: int) -> np.ndarray:
    """Blom scores Phi^-1((i - 3/8) / (n + 1/4)), i = 1..n."""
    ranks = np.arange(1, n + 1)
    return norm.ppf((ranks - 0.375) / (n + 0.25))


def ryan_joiner_critical(
    n: int,
    alpha: float = 0.05,
    replicates: int = DEFAULT_RJ_REPLICATES,
    seed: int = DEFAULT_SEED,
) -> Tuple[float, str]:
    """
    Critical value of the probability-plot correlation. Uses the published
    0.05-level approximation 1.0063 - 0.1288/sqrt(n) - 0.6118/n + 1.3505/n^2
    for small samples and the simulated alpha-quantile under normal data
    otherwise (or whenever alpha is not 0.05).
    """
    if n <= _RJ_APPROXIMATION_MAX_N and alpha == 0.05:
        value = 1.0063 - 0.1288 / math.sqrt(n) - 0.6118 / n + 1.3505 / n**2
        return value, "approximation"

    rng = np.random.default_rng(seed)
    scores = normal_scores(n)
    scores = (scores - scores.mean()) / np.linalg.norm(scores - scores.mean())
    draws = np.sort(rng.standard_normal((replicates, n)), axis=1)
    draws -= draws.mean(axis=1, keepdims=True)
    draws /= np.linalg.norm(draws, axis=1, keepdims=True)
    correlations = draws @ scores
    return float(np.quantile(correlations, alpha)), "simulated"


def histogram(
    values: Sequence[float],
    bin_width: float = DEFAULT_BIN_WIDTH,
    value_range: Tuple[float, float] = DEFAULT_RANGE,
) -> List[HistogramBin]:
    """Equal-width bins over value_range plus an overflow bin on each side."""
    lo, hi = value_range
    if bin_width <= 0 or hi <= lo:
        raise ValueError(f"invalid histogram layout: width {bin_width}, range {value_range}")
    # width rounded to a whole number of bins so the last edge is exactly hi
    edges = np.linspace(lo, hi, max(1, round((hi - lo) / bin_width)) + 1)
    values = np.asarray(values, dtype=np.float64)
    counts, _ = np.histogram(values[(values >= lo) & (values < hi)], bins=edges)
    bins = [HistogramBin(lower=-math.inf, upper=lo, count=int(np.sum(values < lo)))]
    bins += [
        HistogramBin(lower=float(a), upper=float(b), count=int(c))
        for a, b, c in zip(edges[:-1], edges[1:], counts)
    ]
    bins.append(HistogramBin(lower=hi, upper=math.inf, count=int(np.sum(values >= hi))))
    return bins


def normality_suite(
    zs: Sequence[ZRecord],
    bin_width: float = DEFAULT_BIN_WIDTH,
    value_range: Tuple[float, float] = DEFAULT_RANGE,
    alpha: float = 0.05,
    replicates: int = DEFAULT_RJ_REPLICATES,
    seed: int = DEFAULT_SEED,
) -> NormalityReport:
    """
    Summary statistics, histogram, normal probability plot and Ryan-Joiner
    test of the z-statistics.
    """
    if len(zs) < MIN_SAMPLE:
        raise ValueError(f"normality analysis needs at least {MIN_SAMPLE} records, got {len(zs)}")
    values = np.array([record.z for record in zs], dtype=np.float64)
    if np.ptp(values) == 0:
        raise ValueError("all z-statistics are equal; the sample is degenerate")

    ordered = np.sort(values)
    scores = normal_scores(len(values))
    rj = float(np.corrcoef(ordered, scores)[0, 1])
    critical, method = ryan_joiner_critical(len(values), alpha, replicates, seed)
    return NormalityReport(
        n=len(values),
        mean=float(values.mean()),
        sd=float(values.std(ddof=1)),
        bins=histogram(values, bin_width, value_range),
        plot_points=list(zip(ordered.tolist(), scores.tolist())),
        ryan_joiner_stat=rj,
        rj_critical=critical,
        rj_critical_method=method,
        rj_reject=rj < critical,
    )
