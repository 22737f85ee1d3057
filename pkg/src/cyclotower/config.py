"""
Configuration management for cyclotower.

This module provides typed configuration loading from environment variables
and .env files. Every value here is a default that a CLI flag may override.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

from .logging import get_logger

logger = get_logger(__name__)


class Config:
    """Effort budgets, seeds and logging settings."""

    def __init__(self, env_file: str | None = None):
        """Initialize configuration from environment variables."""
        if env_file:
            load_dotenv(env_file)
        else:
            # Look for .env in current directory and parent directories
            env_path = Path.cwd()
            while env_path != env_path.parent:
                env_file_path = env_path / ".env"
                if env_file_path.exists():
                    load_dotenv(env_file_path)
                    break
                env_path = env_path.parent

        self._load_config()
        logger.debug("Configuration loaded")

    def _load_config(self) -> None:
        """Load and validate all configuration values."""
        self.log_level: str = os.getenv("LOG_LEVEL", "WARNING").upper()
        self.log_format: str = os.getenv("LOG_FORMAT", "text")

        # Monte-Carlo p-th power test
        self.mc_trials: int = self._get_int_env("CYCLOTOWER_MC_TRIALS", 40,
            "Usable primes sampled by the p-th power test")
        self.mc_prime_cap: int = self._get_int_env("CYCLOTOWER_MC_PRIME_CAP", 10_000_000,
            "Largest prime the p-th power test may sample")
        self.seed: int = self._get_int_env("CYCLOTOWER_SEED", 20240101,
            "Seed for every randomized step")

        # Frobenius fingerprint
        self.fingerprint_budget: int = self._get_int_env("CYCLOTOWER_FINGERPRINT_BUDGET", 50,
            "Usable primes sampled per fingerprint")
        self.fingerprint_start: int = self._get_int_env("CYCLOTOWER_FINGERPRINT_START", 3,
            "First prime tried by the fingerprint survey")
        self.fingerprint_min_clean: int = self._get_int_env("CYCLOTOWER_FINGERPRINT_MIN_CLEAN", 50,
            "Clean samples needed before exponent 3 is accepted")

        # Candidate search and factoring effort
        self.search_box: int = self._get_int_env("CYCLOTOWER_SEARCH_BOX", 2,
            "Half-width of the coefficient box scanned by search")
        self.search_limit: int = self._get_int_env("CYCLOTOWER_SEARCH_LIMIT", 100,
            "Maximum number of passing candidates returned by search")
        self.factor_bound: int = self._get_int_env("CYCLOTOWER_FACTOR_BOUND", 0,
            "Effort limit handed to the integer factorizer (0 = unbounded)")

        self._validate_config()

    def _get_int_env(self, key: str, default: int, description: str) -> int:
        """Get an integer environment variable with default."""
        value = os.getenv(key)
        if value is None:
            return default

        try:
            return int(value.replace("_", ""))
        except ValueError:
            logger.warning(f"Invalid integer value for {key} ({description}): {value}, using default: {default}")
            return default

    def _validate_config(self) -> None:
        """Validate configuration values."""
        valid_log_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if self.log_level not in valid_log_levels:
            raise ValueError(f"Invalid log level: {self.log_level}. Must be one of: {valid_log_levels}")

        valid_log_formats = ["text", "json"]
        if self.log_format not in valid_log_formats:
            raise ValueError(f"Invalid log format: {self.log_format}. Must be one of: {valid_log_formats}")

        if self.mc_trials < 1:
            raise ValueError(f"MC trials must be positive: {self.mc_trials}")

        if self.mc_prime_cap < 100:
            raise ValueError(f"MC prime cap too small: {self.mc_prime_cap}")

        if self.fingerprint_budget < 1:
            raise ValueError(f"Fingerprint budget must be positive: {self.fingerprint_budget}")

        if self.fingerprint_start < 2:
            raise ValueError(f"Fingerprint start must be >= 2: {self.fingerprint_start}")

        if self.fingerprint_min_clean < 1:
            raise ValueError(f"Fingerprint minimum must be positive: {self.fingerprint_min_clean}")

        if self.search_box < 0:
            raise ValueError(f"Search box must be non-negative: {self.search_box}")

        if self.search_limit < 0:
            raise ValueError(f"Search limit must be non-negative: {self.search_limit}")

        if self.factor_bound < 0:
            raise ValueError(f"Factor bound must be non-negative: {self.factor_bound}")

        logger.debug("Configuration validation passed")

    def __str__(self) -> str:
        """Return string representation of configuration."""
        return f"Config(seed={self.seed}, mc_trials={self.mc_trials})"

    def __repr__(self) -> str:
        """Return detailed string representation of configuration."""
        return (f"Config("
                f"log_level={self.log_level!r}, "
                f"log_format={self.log_format!r}, "
                f"mc_trials={self.mc_trials}, "
                f"mc_prime_cap={self.mc_prime_cap}, "
                f"seed={self.seed}, "
                f"fingerprint_budget={self.fingerprint_budget}, "
                f"fingerprint_start={self.fingerprint_start}, "
                f"fingerprint_min_clean={self.fingerprint_min_clean}, "
                f"search_box={self.search_box}, "
                f"search_limit={self.search_limit}, "
                f"factor_bound={self.factor_bound})")
