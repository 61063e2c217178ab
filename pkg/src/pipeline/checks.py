import logging
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from arith.factor import factorize
from arith.modular import multiplicative_order
from arith.primes import primes_in_range
from data_models import FixedPointProfile
from selfpower.census import (
    DEFAULT_ORACLE_BUDGET,
    fixed_point_profile,
    fixed_points_bruteforce,
    g_count_bruteforce,
    g_count_formula,
)
from selfpower.theorems import THEOREM_IDS, verify_exact_theorems

logger = logging.getLogger(__name__)

ORACLE_MAX_P = 10**5
DEFAULT_G_MAX_P = 61


class VerifySummary(BaseModel):
    profiles: int
    per_theorem: Dict[str, int]
    violations: List[Tuple[int, str, str]]

    @property
    def passed(self) -> bool:
        return not self.violations


class OracleSummary(BaseModel):
    primes_checked: int
    g_primes_checked: int
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None


def verify_profiles(profiles: Sequence[FixedPointProfile]) -> VerifySummary:
    violations = []
    for profile in profiles:
        report = verify_exact_theorems(profile)
        violations.extend((profile.p, theorem, detail) for theorem, detail in report.violations)
    tally = Counter(theorem for _, theorem, _ in violations)
    return VerifySummary(
        profiles=len(profiles),
        per_theorem={theorem: tally.get(theorem, 0) for theorem in THEOREM_IDS},
        violations=violations,
    )


def _profile_mismatch(p: int) -> Optional[str]:
    pm1 = factorize(p - 1)
    profile = fixed_point_profile(p, pm1)
    oracle = fixed_points_bruteforce(p)
    if profile.total != len(oracle):
        return f"p={p}: profile total {profile.total} != brute force {len(oracle)}"
    partition = Counter(multiplicative_order(x, p, pm1) for x in oracle)
    for d, count in profile.counts.items():
        if partition.get(d, 0) != count:
            return f"p={p}: F_{d} = {count} but brute force has {partition.get(d, 0)} of order {d}"
    return None


def oracle_check(
    max_p: int,
    g_max_p: int = DEFAULT_G_MAX_P,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> OracleSummary:
    """
    Census against brute force for every prime <= max_p, and the closed form
    for G(p) against its brute force for primes <= g_max_p within budget.
    Stops at the first counterexample.
    """
    if max_p > ORACLE_MAX_P:
        raise ValueError(f"max_p {max_p} exceeds the oracle limit {ORACLE_MAX_P}")
    checked = g_checked = 0
    for p in primes_in_range(2, max_p):
        mismatch = _profile_mismatch(p)
        if mismatch is not None:
            return OracleSummary(primes_checked=checked, g_primes_checked=g_checked, counterexample=mismatch)
        checked += 1
        if p <= g_max_p and (p - 1) * p <= budget:
            formula, brute = g_count_formula(p), g_count_bruteforce(p, budget)
            if formula != brute:
                return OracleSummary(
                    primes_checked=checked,
                    g_primes_checked=g_checked,
                    counterexample=f"p={p}: G formula {formula} != brute force {brute}",
                )
            g_checked += 1
    logger.debug("oracle: %d primes, %d G identities", checked, g_checked)
    return OracleSummary(primes_checked=checked, g_primes_checked=g_checked)
