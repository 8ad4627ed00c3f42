import os
from typing import Optional
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

load_dotenv()


def _env_bool(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Settings(BaseSettings):
    # App
    APP_NAME: str = "Picard Fourfold Verifier"
    ENVIRONMENT: str = os.getenv("ENVIRONMENT", "development")

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE: Optional[str] = os.getenv("LOG_FILE")

    # Paths
    GROUP_CACHE_PATH: str = os.getenv("GROUP_CACHE_PATH", "./cache/weyl_e6_group.json")
    REPORT_PATH: Optional[str] = os.getenv("REPORT_PATH")

    # Theta
    THETA_TRUNCATION: int = int(os.getenv("THETA_TRUNCATION", 8))
    THETA_TOLERANCE: float = float(os.getenv("THETA_TOLERANCE", 1e-8))
    THETA_GUARD_FACTOR: float = float(os.getenv("THETA_GUARD_FACTOR", 1e3))

    # Amostragem
    SAMPLE_SEED: int = int(os.getenv("SAMPLE_SEED", 20240101))
    SAMPLE_COUNT: int = int(os.getenv("SAMPLE_COUNT", 100))
    SAMPLE_RADIUS: float = float(os.getenv("SAMPLE_RADIUS", 0.2))

    # Verificações exaustivas
    SLOW_CHECKS: bool = _env_bool("SLOW_CHECKS")

    class Config:
        env_file = ".env"


settings = Settings()
