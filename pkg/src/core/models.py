"""Pydantic models for run configuration, limits and shared verdicts."""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


# ============================================================================
# ENUMS
# ============================================================================

class Verdict(str, Enum):
    """Answer of a decision procedure."""
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"
    NO_WITHIN_BOUND = "no-within-bound"


class Subcommand(str, Enum):
    """Formalism namespaces of the CLI."""
    PTA = "pta"
    PIMC = "pimc"
    MTS = "mts"
    PPN = "ppn"


class OutputMode(str, Enum):
    """How results are written."""
    TEXT = "text"
    JSON = "json"


# ============================================================================
# LIMITS
# ============================================================================

# camelCase spellings used by --limits and PARAVERSE_LIMITS
LIMIT_ALIASES: Dict[str, str] = {
    "maxStates": "max_states",
    "maxDepth": "max_depth",
    "tokenCap": "token_cap",
    "valuationBound": "valuation_bound",
    "searchBound": "search_bound",
}


class Limits(BaseModel):
    """Exploration budgets shared by every engine."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    max_states: int = Field(100000, gt=0, description="Stored symbolic states or markings")
    max_depth: int = Field(1000, gt=0, description="Breadth-first exploration depth")
    token_cap: int = Field(200, gt=0, description="Per-place token cap for explicit net search")
    valuation_bound: int = Field(5, gt=0, description="Largest value tried when enumerating valuations")
    search_bound: int = Field(20, gt=0, description="Box size for integer-point search")

    @classmethod
    def parse_overrides(cls, text: str) -> Dict[str, int]:
        """
        Parse a `k=v,...` override string.

        Args:
            text: Comma-separated assignments, keys in camelCase or snake_case

        Returns:
            Mapping from snake_case field name to integer value

        Examples:
            >>> Limits.parse_overrides("maxStates=10, tokenCap=50")
            {'max_states': 10, 'token_cap': 50}
        """
        overrides: Dict[str, int] = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            if "=" not in item:
                raise ValueError(f"Limit override must look like key=value: {item!r}")
            key, value = (part.strip() for part in item.split("=", 1))
            name = LIMIT_ALIASES.get(key, key)
            if name not in cls.model_fields:
                raise ValueError(f"Unknown limit: {key}")
            try:
                overrides[name] = int(value)
            except ValueError:
                raise ValueError(f"Limit {key} must be an integer, got {value!r}")
        return overrides

    def merged(self, overrides: Dict[str, Any]) -> "Limits":
        """Return a copy with the given fields replaced (validated)."""
        data = self.model_dump()
        data.update(overrides)
        return Limits(**data)


# ============================================================================
# RUN CONFIGURATION
# ============================================================================

class RunConfig(BaseModel):
    """Everything one CLI invocation needs."""
    subcommand: Subcommand
    model_path: Path
    query: str = Field(..., description="Query text or path to a query file")
    limits: Limits = Field(default_factory=Limits)
    output_mode: OutputMode = OutputMode.TEXT
    output_path: Optional[Path] = Field(None, description="File for results; stdout when unset or '-'")
    json_indent: int = Field(2, ge=0)
    verbose: bool = False
    log_level: str = "WARNING"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    @field_validator('query')
    @classmethod
    def validate_query(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("Query must not be empty")
        return v

    def query_text(self) -> str:
        """The query itself, read from disk when `query` names a file."""
        candidate = Path(self.query)
        if len(self.query) < 4096 and "\n" not in self.query and candidate.is_file():
            return candidate.read_text(encoding="utf-8")
        return self.query
