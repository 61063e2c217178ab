from typing import List, Tuple

from arith.primes import is_prime
from data_models import FixedPointProfile, TheoremReport
from selfpower.census import kth_residue_fixed_point

THEOREM_IDS = (
    "F1",
    "F2",
    "Fp-1",
    "Fhalf",
    "F3",
    "F4",
    "F6",
    "Fquarter",
    "Fthird",
    "cubic-residue",
    "safe-prime",
)


def _cubic_residue_violations(p: int) -> List[Tuple[str, str]]:
    # (p+2)/3 and (2p+1)/3 are the progression members m(p-1)/3 + 1.
    found = []
    third = (p - 1) // 3
    for m in (1, 2):
        x = m * third + 1
        fixed = pow(x, x, p) == x
        residue = pow(x, third, p) == 1
        if fixed != residue or kth_residue_fixed_point(p, 3, m) != fixed:
            found.append(
                ("cubic-residue", f"x={x}: fixed={fixed}, cubic residue={residue}")
            )
    return found


def verify_exact_theorems(profile: FixedPointProfile) -> TheoremReport:
    """
    Check a census against every exact result on F_d(p). Checks on a divisor
    index only fire when that index exists and is distinct from the small
    orders it could coincide with for tiny p.
    """
    p = profile.p
    counts = profile.counts
    violations: List[Tuple[str, str]] = []

    def expect(theorem: str, d: int, ok: bool, allowed: str) -> None:
        if not ok:
            violations.append((theorem, f"F_{d}({p}) = {counts[d]}, expected {allowed}"))

    expect("F1", 1, counts[1] == 1, "1")
    if 2 in counts:
        expect("F2", 2, counts[2] == 0, "0")
    if p - 1 >= 2:
        expect("Fp-1", p - 1, counts[p - 1] == 0, "0")

    half = (p - 1) // 2
    if p > 2 and half >= 3:
        qualifies = profile.p_mod_8 in (1, 7) and profile.ord2 == half
        want = 1 if qualifies else 0
        expect(
            "Fhalf",
            half,
            counts[half] == want,
            f"{want} (p mod 8 = {profile.p_mod_8}, ord_p 2 = {profile.ord2})",
        )

    if 3 in counts:
        expect("F3", 3, counts[3] in (0, 1), "0 or 1")
    if 4 in counts:
        expect("F4", 4, counts[4] in (0, 1), "0 or 1")
    if 6 in counts:
        expect("F6", 6, counts[6] in (0, 2), "0 or 2")

    if (p - 1) % 4 == 0:
        quarter = (p - 1) // 4
        bound = 2 if profile.p_mod_8 == 1 else 1
        expect("Fquarter", quarter, counts[quarter] <= bound, f"<= {bound}")

    if p > 3 and (p - 1) % 3 == 0:
        third = (p - 1) // 3
        expect("Fthird", third, counts[third] <= 2, "<= 2")
        violations.extend(_cubic_residue_violations(p))

    if p > 5 and is_prime(half) and profile.total not in (1, 2):
        violations.append(("safe-prime", f"F({p}) = {profile.total}, expected 1 or 2"))

    return TheoremReport(p=p, violations=violations)
