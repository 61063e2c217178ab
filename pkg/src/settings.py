import os

from pydantic import BaseModel, Field


class Settings(BaseModel):
    """
    Defaults for the CLI, read from SELFPOWER_* environment variables (a
    `.env` file is loaded first by main.py). Command-line flags win.
    """

    workers: int = Field(default=1, ge=1)
    sieve_segment: int = Field(default=1 << 16, ge=1)
    window: int = Field(default=100, ge=1)
    window_step: int = Field(default=1, ge=1)
    bin_width: float = Field(default=0.25, gt=0)
    expected_floor: float = Field(default=1.0, ge=0)
    oracle_budget: int = Field(default=10**7, ge=1)
    rj_replicates: int = Field(default=2000, ge=100)
    seed: int = 20240101

    @classmethod
    def from_env(cls) -> "Settings":
        values = {}
        for name in cls.model_fields:
            raw = os.getenv(f"SELFPOWER_{name.upper()}")
            if raw is not None and raw.strip():
                values[name] = raw.strip()
        return cls(**values)
