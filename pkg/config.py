"""
geogates Configuration Module
"""
import os
from dotenv import load_dotenv
from typing import Any, Dict

load_dotenv()


def _float_env(name: str, default: float) -> float:
    return float(os.getenv(name, str(default)))


def _int_env(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


class Config:
    """Application configuration"""

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE: str = os.getenv("GEOGATES_LOG_FILE", "")  # empty: console only

    # Reports
    REPORT_DIR: str = os.getenv("GEOGATES_REPORT_DIR", "reports")
    SWEEP_WORKERS: int = _int_env("GEOGATES_SWEEP_WORKERS", 2)

    # Tolerances
    HERMITIAN_TOL: float = _float_env("GEOGATES_HERMITIAN_TOL", 1e-10)
    UNITARITY_TOL: float = _float_env("GEOGATES_UNITARITY_TOL", 1e-10)
    NORM_TOL: float = _float_env("GEOGATES_NORM_TOL", 1e-12)
    NORM_DRIFT_TOL: float = _float_env("GEOGATES_NORM_DRIFT_TOL", 1e-9)
    CYCLICITY_TOL: float = _float_env("GEOGATES_CYCLICITY_TOL", 1e-6)
    GAP_TOL: float = _float_env("GEOGATES_GAP_TOL", 1e-9)
    DIAGONAL_TOL: float = _float_env("GEOGATES_DIAGONAL_TOL", 1e-10)
    FACTORIZATION_TOL: float = _float_env("GEOGATES_FACTORIZATION_TOL", 1e-8)
    RESIDUAL_TOL: float = _float_env("GEOGATES_RESIDUAL_TOL", 1e-9)

    # Numeric profile
    DEFAULT_STEPS: int = _int_env("GEOGATES_DEFAULT_STEPS", 20000)
    MIN_STEPS: int = 100
    MAX_PHASE_STEP: float = _float_env("GEOGATES_MAX_PHASE_STEP", 0.05)  # max |E|*dt
    DEFAULT_SLOWNESS: float = _float_env("GEOGATES_DEFAULT_SLOWNESS", 1e-3)
    BERRY_GRID_POINTS: int = _int_env("GEOGATES_BERRY_GRID_POINTS", 10000)
    HISTORY_SAMPLES: int = _int_env("GEOGATES_HISTORY_SAMPLES", 2001)

    @classmethod
    def validate(cls) -> bool:
        """Validate numeric configuration"""
        from src.utils.errors import ConfigError

        for name in ("HERMITIAN_TOL", "UNITARITY_TOL", "NORM_TOL", "NORM_DRIFT_TOL",
                     "CYCLICITY_TOL", "GAP_TOL", "DIAGONAL_TOL", "FACTORIZATION_TOL",
                     "RESIDUAL_TOL", "MAX_PHASE_STEP", "DEFAULT_SLOWNESS"):
            if getattr(cls, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(cls, name)}")
        if cls.DEFAULT_STEPS < cls.MIN_STEPS:
            raise ConfigError(f"DEFAULT_STEPS must be at least {cls.MIN_STEPS}")
        if cls.BERRY_GRID_POINTS < 1000:
            raise ConfigError("BERRY_GRID_POINTS must be at least 1000")
        if cls.HISTORY_SAMPLES < 2:
            raise ConfigError("HISTORY_SAMPLES must be at least 2")
        if cls.SWEEP_WORKERS < 1:
            raise ConfigError("GEOGATES_SWEEP_WORKERS must be at least 1")
        return True

    @classmethod
    def tolerances(cls) -> Dict[str, float]:
        """Tolerances recorded in every report"""
        return {
            "hermitian": cls.HERMITIAN_TOL,
            "unitarity": cls.UNITARITY_TOL,
            "norm": cls.NORM_TOL,
            "norm_drift": cls.NORM_DRIFT_TOL,
            "cyclicity": cls.CYCLICITY_TOL,
            "gap": cls.GAP_TOL,
            "diagonal": cls.DIAGONAL_TOL,
            "factorization": cls.FACTORIZATION_TOL,
            "residual": cls.RESIDUAL_TOL,
        }

    @classmethod
    def numeric_profile(cls) -> Dict[str, Any]:
        """Step counts and resolutions recorded in every report"""
        return {
            "default_steps": cls.DEFAULT_STEPS,
            "max_phase_step": cls.MAX_PHASE_STEP,
            "default_slowness": cls.DEFAULT_SLOWNESS,
            "berry_grid_points": cls.BERRY_GRID_POINTS,
            "history_samples": cls.HISTORY_SAMPLES,
        }
