"""
Runtime configuration for Pfaffian Atlas.
Values come from the environment (optionally a .env file); nothing is required.
"""

import os
import logging
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

logger = logging.getLogger(__name__)


def _env_bool(name: str, default: bool = False) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


class Settings(BaseModel):
    """Caps, budgets and defaults shared by the library and the CLI."""

    log_level: str = "WARNING"
    generator_cap: int = Field(5000, ge=1, description="Max natural generators per enumeration")
    max_generators: int = Field(200, ge=1, description="Max Buchberger input size")
    max_pairs: int = Field(50000, ge=1, description="Max S-pairs processed by Buchberger")
    max_n: int = Field(8, ge=2, description="Largest ambient size accepted by Buchberger")
    facet_cap: int = Field(100000, ge=1, description="Max facets enumerated")
    shelling_cap: int = Field(3000, ge=1, description="Max facets ordered by shelling_order")
    seed: int = 0
    samples: int = Field(100000, ge=0, description="Random subsets drawn by the face oracle check")
    run_slow: bool = False


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Build settings from environment variables.

    Returns:
        Settings populated from PFAFFIAN_ATLAS_* variables, defaults elsewhere
    """
    settings = Settings(
        log_level=os.getenv("PFAFFIAN_ATLAS_LOG_LEVEL", "WARNING"),
        generator_cap=int(os.getenv("PFAFFIAN_ATLAS_GENERATOR_CAP", 5000)),
        max_generators=int(os.getenv("PFAFFIAN_ATLAS_MAX_GENERATORS", 200)),
        max_pairs=int(os.getenv("PFAFFIAN_ATLAS_MAX_PAIRS", 50000)),
        max_n=int(os.getenv("PFAFFIAN_ATLAS_MAX_N", 8)),
        facet_cap=int(os.getenv("PFAFFIAN_ATLAS_FACET_CAP", 100000)),
        shelling_cap=int(os.getenv("PFAFFIAN_ATLAS_SHELLING_CAP", 3000)),
        seed=int(os.getenv("PFAFFIAN_ATLAS_SEED", 0)),
        samples=int(os.getenv("PFAFFIAN_ATLAS_SAMPLES", 100000)),
        run_slow=_env_bool("PFAFFIAN_ATLAS_RUN_SLOW"),
    )
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings
