from enum import Enum
from math import prod
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from arith.primes import is_prime


class Factorization(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    factors: List[Tuple[int, int]] = []

    @model_validator(mode="after")
    def _check_decomposition(self) -> "Factorization":
        previous = 1
        for prime, exponent in self.factors:
            if prime <= previous:
                raise ValueError(f"primes must be strictly increasing: {self.factors}")
            if exponent < 1:
                raise ValueError(f"exponent of {prime} must be positive, got {exponent}")
            if not is_prime(prime):
                raise ValueError(f"{prime} is not prime")
            previous = prime
        if prod(q**e for q, e in self.factors) != self.n:
            raise ValueError(f"factors {self.factors} do not multiply to {self.n}")
        return self

    @property
    def primes(self) -> List[int]:
        return [q for q, _ in self.factors]


class FixedPointProfile(BaseModel):
    """
    The fixed-point census of one prime: F_d(p) for every d | p-1.
    `ord2` is None only for p = 2.
    """

    model_config = ConfigDict(frozen=True)

    p: int
    pm1: Factorization
    counts: Dict[int, int]
    total: int
    ord2: Optional[int]
    p_mod_8: int

    @model_validator(mode="after")
    def _check_census(self) -> "FixedPointProfile":
        # Local import: arith.factor depends on this module.
        from arith.factor import divisor_factorizations, euler_phi

        if self.pm1.n != self.p - 1:
            raise ValueError(f"pm1 factors {self.pm1.n}, expected {self.p - 1}")
        divisor_fs = divisor_factorizations(self.pm1)
        if sorted(self.counts) != [f.n for f in divisor_fs]:
            raise ValueError(f"counts for p={self.p} must have one entry per divisor of p-1")
        for fd in divisor_fs:
            value = self.counts[fd.n]
            if not 0 <= value <= euler_phi(fd):
                raise ValueError(f"F_{fd.n}({self.p}) = {value} is outside [0, phi({fd.n})]")
        if self.total != sum(self.counts.values()):
            raise ValueError(f"total {self.total} != sum of counts for p={self.p}")
        if self.total < 1:
            raise ValueError(f"total must be at least 1 (x = 1 is always fixed), p={self.p}")
        if self.p_mod_8 != self.p % 8:
            raise ValueError(f"p_mod_8 {self.p_mod_8} does not match p={self.p}")
        return self


class TheoremReport(BaseModel):
    p: int
    violations: List[Tuple[str, str]] = []

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.violations


class ZRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    f_total: int
    mean: float
    variance: float
    z: float


class ModelPrediction(BaseModel):
    """
    Category probabilities. Labels are outcome values ("0", "1", ...) with an
    optional open last category of the form ">k".
    """

    model_config = ConfigDict(frozen=True)

    labels: List[str]
    probs: List[float]

    @model_validator(mode="after")
    def _check_distribution(self) -> "ModelPrediction":
        if len(self.labels) != len(self.probs):
            raise ValueError("labels and probs must have the same length")
        if any(not 0.0 <= prob <= 1.0 for prob in self.probs):
            raise ValueError(f"probabilities must lie in [0, 1]: {self.probs}")
        if abs(sum(self.probs) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {sum(self.probs)!r}, not 1")
        return self

    def category_of(self, value: int) -> int:
        """Index of the category holding the outcome `value`."""
        for index, label in enumerate(self.labels):
            if label.startswith(">"):
                if value > int(label[1:]):
                    return index
            elif value == int(label):
                return index
        raise ValueError(f"outcome {value} is outside the model support {self.labels}")


class GofResult(BaseModel):
    labels: List[str]
    observed: List[int]
    expected: List[float]
    stat: float
    dof: int = Field(ge=1)
    pvalue: float = Field(ge=0.0, le=1.0)
    merged: bool = False
    low_sample: bool = False
    policy: str = ""


class WindowResult(BaseModel):
    window_index: int
    max_order: int
    stat: float
    pvalue: float


class OrderCell(BaseModel):
    """One (p, d) observation: F_d(p) with phi(d) trials."""

    model_config = ConfigDict(frozen=True)

    p: int
    d: int
    phi_d: int
    f_d: int


class OrderFilter(BaseModel):
    """
    Which (p, d) cells enter a binomial goodness-of-fit test. Orders 1, 2,
    p-1 and (p-1)/2 are always excluded.
    """

    exclude_small: bool = False
    orders: Optional[List[int]] = None

    def admits(self, cell: OrderCell) -> bool:
        if cell.d in (1, 2, cell.p - 1, (cell.p - 1) // 2):
            return False
        if self.exclude_small and cell.d in (3, 4, 6):
            return False
        return self.orders is None or cell.d in self.orders

    def describe(self) -> str:
        parts = ["excluded d in {1, 2, p-1, (p-1)/2}"]
        if self.exclude_small:
            parts.append("excluded d in {3, 4, 6}")
        if self.orders is not None:
            parts.append(f"only d in {sorted(self.orders)}")
        return "; ".join(parts)


class SpecialOrder(str, Enum):
    small_3 = "small-3"
    small_4 = "small-4"
    small_6 = "small-6"
    third = "third"
    quarter_1mod8 = "quarter-1mod8"
    quarter_5mod8 = "quarter-5mod8"


class SortKey(str, Enum):
    order = "order"
    prime = "prime"
    phi_over_d = "phi-over-d"


class HistogramBin(BaseModel):
    lower: float
    upper: float
    count: int


class NormalityReport(BaseModel):
    n: int
    mean: float
    sd: float
    bins: List[HistogramBin]
    plot_points: List[Tuple[float, float]]
    ryan_joiner_stat: float
    rj_critical: float
    rj_critical_method: str
    rj_reject: bool


class SweepConfig(BaseModel):
    lo: int = Field(ge=2)
    hi: int
    workers: int = Field(default=1, ge=1)
    output: str
    format: str = "jsonl"

    @model_validator(mode="after")
    def _check_range(self) -> "SweepConfig":
        if self.lo > self.hi:
            raise ValueError(f"empty range: lo={self.lo} > hi={self.hi}")
        if self.format != "jsonl":
            raise ValueError(f"unsupported format {self.format!r}")
        return self


class ProfileRecord(BaseModel):
    """Serialized form of a FixedPointProfile, one JSON line per prime."""

    p: int
    factors: List[Tuple[int, int]]
    counts: List[Tuple[int, int]]
    ord2: Optional[int]
    pmod8: int

    @model_validator(mode="after")
    def _check_sorted(self) -> "ProfileRecord":
        orders = [d for d, _ in self.counts]
        if orders != sorted(set(orders)):
            raise ValueError(f"counts for p={self.p} must be sorted ascending by d")
        return self
