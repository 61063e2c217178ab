import logging
from typing import Optional, Tuple

import numpy as np
from scipy.stats import binom

from arith.factor import euler_phi, factorize
from data_models import FixedPointProfile, ModelPrediction, SpecialOrder

logger = logging.getLogger(__name__)

BINOMIAL_LABELS = ["0", "1", "2", ">2"]

_SMALL_ORDER_MODELS = {
    3: (["0", "1"], [1 / 3, 2 / 3]),
    4: (["0", "1"], [1 / 2, 1 / 2]),
    6: (["0", "2"], [5 / 6, 1 / 6]),
}


def binomial_category_matrix(d: np.ndarray, phi_d: np.ndarray) -> np.ndarray:
    """
    Row i holds Pr[F = 0], Pr[F = 1], Pr[F = 2], Pr[F > 2] for a binomial
    with phi_d[i] trials and success probability 1/d[i]. The PMF is taken in
    log space; the open category is the complement of the first three.
    """
    d = np.asarray(d, dtype=np.float64)
    phi_d = np.asarray(phi_d, dtype=np.int64)
    if np.any(d < 3):
        raise ValueError("binomial categories need d >= 3 (orders 1 and 2 are exact)")
    if np.any(phi_d < 1):
        raise ValueError("phi(d) must be at least 1")
    k = np.arange(3)
    head = np.exp(binom.logpmf(k[None, :], phi_d[:, None], 1.0 / d[:, None]))
    tail = np.clip(1.0 - head.sum(axis=1), 0.0, 1.0)
    return np.column_stack([head, tail])


def binomial_category_probs(d: int, phi_d: int) -> ModelPrediction:
    """F_d(p) ~ Binomial(phi(d), 1/d), bucketed into 0, 1, 2 and >2."""
    row = binomial_category_matrix(np.array([d]), np.array([phi_d]))[0]
    return ModelPrediction(labels=BINOMIAL_LABELS, probs=row.tolist())


def small_order_prediction(d: int) -> ModelPrediction:
    """Corrected model for d = 3, 4, 6: order-d elements sit uniformly across residues mod d."""
    if d not in _SMALL_ORDER_MODELS:
        raise ValueError(f"small-order model exists only for d in (3, 4, 6), got {d}")
    labels, probs = _SMALL_ORDER_MODELS[d]
    return ModelPrediction(labels=labels, probs=probs)


def large_order_third_prediction(p: int) -> ModelPrediction:
    """
    Two candidates, (p+2)/3 and (2p+1)/3, each of order (p-1)/3 with chance
    q = phi((p-1)/3)/(p-1).
    """
    if (p - 1) % 3:
        raise ValueError(f"3 does not divide p-1 for p={p}")
    q = euler_phi(factorize((p - 1) // 3)) / (p - 1)
    return ModelPrediction(
        labels=["0", "1", "2"],
        probs=[(1 - q) ** 2, 2 * q * (1 - q), q * q],
    )


def large_order_quarter_prediction(p: int) -> ModelPrediction:
    """
    For p = 1 (mod 8) the candidates (p+1)/2 and (3p+1)/4 never both have
    order (p-1)/4, so they are treated as one trial with chance r next to the
    independent (p+3)/4 with chance q. For p = 5 (mod 8) only one can be fixed.
    """
    if (p - 1) % 4:
        raise ValueError(f"4 does not divide p-1 for p={p}")
    phi_quarter = euler_phi(factorize((p - 1) // 4))
    q = phi_quarter / (p - 1)
    if p % 8 == 5:
        return ModelPrediction(labels=["0", "1"], probs=[1 - q, q])

    r = 3 * phi_quarter / ((p - 1) / 2)
    if r > 1:
        logger.warning("p=%d: paired-candidate probability %.4f clamped to 1", p, r)
        r = 1.0
    return ModelPrediction(
        labels=["0", "1", "2"],
        probs=[(1 - q) * (1 - r), q * (1 - r) + (1 - q) * r, q * r],
    )


def special_order_cell(
    profile: FixedPointProfile, which: SpecialOrder
) -> Optional[Tuple[int, ModelPrediction]]:
    """
    (F_d(p), prediction) for the order `which` selects, or None when that
    order does not apply to this prime.
    """
    p = profile.p
    if which in (SpecialOrder.small_3, SpecialOrder.small_4, SpecialOrder.small_6):
        d = int(which.value.split("-")[1])
        if d not in profile.counts:
            return None
        return profile.counts[d], small_order_prediction(d)
    if which is SpecialOrder.third:
        if p <= 3 or (p - 1) % 3:
            return None
        return profile.counts[(p - 1) // 3], large_order_third_prediction(p)
    wanted_residue = 1 if which is SpecialOrder.quarter_1mod8 else 5
    if p % 8 != wanted_residue:
        return None
    return profile.counts[(p - 1) // 4], large_order_quarter_prediction(p)

