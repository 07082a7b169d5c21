"""Runtime configuration.

Defaults come from the environment (optionally a .env file). The CLI builds a
RunConfig on top of these, clamping every cap to its hard limit.
"""

import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Load environment variables
load_dotenv()

# Hard limits; caps requested above these are clamped.
HARD_ELEMENT_CAP = 10**7
HARD_TABLE_CAP = 5040
HARD_AUT_ORDER_CAP = 5040
HARD_AUTSET_CAP = 10**4
HARD_MAX_DEGREE = 7
HARD_WORKERS = 64

ELEMENT_CAP = int(os.getenv("MAOLPERM_ELEMENT_CAP", 10**6))
TABLE_CAP = int(os.getenv("MAOLPERM_TABLE_CAP", 5040))
AUT_ORDER_CAP = int(os.getenv("MAOLPERM_AUT_ORDER_CAP", 2000))
AUTSET_CAP = int(os.getenv("MAOLPERM_AUTSET_CAP", 10**4))
MAX_DEGREE = int(os.getenv("MAOLPERM_MAX_DEGREE", 6))
WORKERS = int(os.getenv("MAOLPERM_WORKERS", 1))
CACHE_DIR = os.getenv("MAOLPERM_CACHE_DIR") or None
LOG_LEVEL = os.getenv("MAOLPERM_LOG_LEVEL", "WARNING")


def _clamp(name: str, value: int, hard: int, floor: int = 1) -> int:
    if value > hard:
        logger.warning(f"{name}={value} exceeds hard limit {hard}; clamped")
        return hard
    if value < floor:
        logger.warning(f"{name}={value} below {floor}; clamped")
        return floor
    return value


@dataclass(frozen=True)
class RunConfig:
    """Settings for one CLI run."""

    subcommand: str = ""
    element_cap: int = ELEMENT_CAP
    table_cap: int = TABLE_CAP
    aut_order_cap: int = AUT_ORDER_CAP
    autset_cap: int = AUTSET_CAP
    max_degree: int = MAX_DEGREE
    output_format: str = "text"
    output_path: Path | None = None
    workers: int = WORKERS
    cache_dir: Path | None = Path(CACHE_DIR) if CACHE_DIR else None

    def clamped(self) -> "RunConfig":
        """Return a copy with every cap inside its hard limit."""
        return replace(
            self,
            element_cap=_clamp("element_cap", self.element_cap, HARD_ELEMENT_CAP),
            table_cap=_clamp("table_cap", self.table_cap, HARD_TABLE_CAP),
            aut_order_cap=_clamp("aut_order_cap", self.aut_order_cap, HARD_AUT_ORDER_CAP),
            autset_cap=_clamp("autset_cap", self.autset_cap, HARD_AUTSET_CAP),
            max_degree=_clamp("max_degree", self.max_degree, HARD_MAX_DEGREE),
            workers=_clamp("workers", self.workers, HARD_WORKERS),
        )


def install(run: RunConfig) -> None:
    """Make the caps of run the defaults read by every library call."""
    global ELEMENT_CAP, TABLE_CAP, AUT_ORDER_CAP, AUTSET_CAP, MAX_DEGREE, WORKERS, CACHE_DIR
    ELEMENT_CAP = run.element_cap
    TABLE_CAP = run.table_cap
    AUT_ORDER_CAP = run.aut_order_cap
    AUTSET_CAP = run.autset_cap
    MAX_DEGREE = run.max_degree
    WORKERS = run.workers
    CACHE_DIR = str(run.cache_dir) if run.cache_dir else None
    logger.debug(f"installed run config {run}")
