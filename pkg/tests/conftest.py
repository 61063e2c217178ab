import pytest

from arith.primes import primes_in_range
from pipeline.sweep import PRESETS, profiles_for


@pytest.fixture(scope="session")
def small_primes():
    return primes_in_range(2, 10_000)


@pytest.fixture(scope="session")
def six_digit_profiles():
    lo, hi = PRESETS["six-digit"]
    return list(profiles_for(primes_in_range(lo, hi), workers=1))
