import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, List

from arith.primes import DEFAULT_SEGMENT_SIZE, primes_in_range
from data_models import FixedPointProfile, SweepConfig
from pipeline.store import write_profiles
from selfpower.census import fixed_point_profile

logger = logging.getLogger(__name__)

PRESETS = {
    "six-digit": (100003, 102667),
    "seven-digit": (1000003, 1007977),
}


def _worker(p: int) -> FixedPointProfile:
    return fixed_point_profile(p)


def profiles_for(primes: List[int], workers: int = 1) -> Iterator[FixedPointProfile]:
    """
    Profiles in the order of `primes`, whatever the worker count.
    Executor.map yields results in submission order.
    """
    if workers > 1 and len(primes) > 1:
        chunksize = max(1, len(primes) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as executor:
            yield from executor.map(_worker, primes, chunksize=chunksize)
    else:
        for p in primes:
            yield _worker(p)


def sweep(config: SweepConfig, segment_size: int = DEFAULT_SEGMENT_SIZE) -> int:
    """
    Census every prime in [lo, hi] and write the profile file. Re-running
    rewrites the file byte for byte.
    """
    primes = primes_in_range(config.lo, config.hi, segment_size)
    logger.info(
        "sweeping %d primes in [%d, %d] with %d worker(s)",
        len(primes),
        config.lo,
        config.hi,
        config.workers,
    )
    return write_profiles(
        config.output, config.lo, config.hi, profiles_for(primes, config.workers)
    )
