from typing import Iterable, List, Sequence

import numpy as np

from data_models import FixedPointProfile, OrderCell, SpecialOrder
from stats.predictions import special_order_cell


def resample_cells(cells: Sequence[OrderCell], rng: np.random.Generator) -> List[OrderCell]:
    """Same (p, d) cells with F_d redrawn from Binomial(phi(d), 1/d)."""
    draws = rng.binomial(
        [c.phi_d for c in cells], [1.0 / c.d for c in cells]
    )
    return [c.model_copy(update={"f_d": int(f)}) for c, f in zip(cells, draws)]


def resample_special(
    profiles: Iterable[FixedPointProfile],
    which: SpecialOrder,
    rng: np.random.Generator,
) -> List[FixedPointProfile]:
    """
    Profiles whose special-order count is redrawn from its per-prime
    prediction; every other count is left alone.
    """
    out = []
    for profile in profiles:
        cell = special_order_cell(profile, which)
        if cell is None:
            continue
        _, prediction = cell
        label = prediction.labels[rng.choice(len(prediction.labels), p=prediction.probs)]
        d = _special_order_index(profile.p, which)
        counts = dict(profile.counts)
        total = profile.total - counts[d] + int(label)
        counts[d] = int(label)
        out.append(profile.model_copy(update={"counts": counts, "total": total}))
    return out


def _special_order_index(p: int, which: SpecialOrder) -> int:
    if which.value.startswith("small-"):
        return int(which.value.split("-")[1])
    if which is SpecialOrder.third:
        return (p - 1) // 3
    return (p - 1) // 4
