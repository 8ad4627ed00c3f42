from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from app.config import settings


class Suite(str, Enum):
    EXACT = "exact"
    GROUP = "group"
    VARIETY = "variety"
    BOUNDARY = "boundary"
    THETA = "theta"
    ALL = "all"


# Ordem de execução: grupo antes das órbitas, F antes das restrições
SUITE_ORDER = (Suite.EXACT, Suite.GROUP, Suite.VARIETY, Suite.BOUNDARY, Suite.THETA)


class ThetaConfig(BaseModel):
    truncation: int = Field(default=settings.THETA_TRUNCATION, ge=1)
    tolerance: float = Field(default=settings.THETA_TOLERANCE, gt=0, lt=1)
    guard_factor: float = Field(default=settings.THETA_GUARD_FACTOR, ge=1)
    sample_count: int = Field(default=settings.SAMPLE_COUNT, ge=1)
    sample_radius: float = Field(default=settings.SAMPLE_RADIUS, ge=0, lt=1)


class RunConfig(BaseModel):
    suites: List[Suite]
    theta: ThetaConfig = Field(default_factory=ThetaConfig)
    cache_path: str = settings.GROUP_CACHE_PATH
    report_path: Optional[str] = settings.REPORT_PATH
    seed: int = settings.SAMPLE_SEED
    slow: bool = settings.SLOW_CHECKS
    refresh_cache: bool = False

    @field_validator("suites", mode="before")
    @classmethod
    def parse_suites(cls, value):
        if isinstance(value, str):
            value = [v.strip() for v in value.split(",") if v.strip()]
        if not value:
            raise ValueError("Nenhuma suíte selecionada")
        return value

    def selected(self) -> List[Suite]:
        """Suítes expandidas ('all') na ordem de dependência"""
        chosen = set(self.suites)
        if Suite.ALL in chosen:
            return list(SUITE_ORDER)
        return [s for s in SUITE_ORDER if s in chosen]
