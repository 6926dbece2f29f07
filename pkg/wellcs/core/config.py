from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="WELLCS_", case_sensitive=True, extra="ignore"
    )

    # App
    APP_NAME: str = "wellcs"
    VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Execution
    DEFAULT_THREADS: int = 1
    TIME_CHUNK: int = 64
    SPACE_CHUNK: int = 1024

    # Grids
    DEFAULT_SPACE_POINTS: int = 8192
    MIN_POINTS_PER_HALF_WAVE: int = 8
    REALIZATION_POINTS_PER_HALF_WAVE: int = 20

    # Numerical contracts
    REL_TAIL_TOL: float = 1e-12
    HERMITICITY_TOL: float = 1e-8
    FOURIER_TAIL_TOL: float = 1e-14
    FD_ORDER: int = 4

    # Equivalence sweep
    EQUIVALENCE_WARN_Z0: float = 2.0


@lru_cache()
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
