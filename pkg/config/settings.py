from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from utils.log import get_logger

logger = get_logger(__name__)

ENV_PREFIX = "CEND_"


class Settings(BaseSettings):
    """
    Runtime knobs of the kernel, read from the environment or a .env file.

    Every field maps to ``CEND_<FIELD NAME IN UPPER CASE>``.
    """
    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX, env_file=".env", env_file_encoding="utf-8", env_ignore_empty=True, extra="ignore"
    )

    log_level: str = "WARNING"
    seed: int = 20060126
    random_v_degree: int = Field(4, ge=0)
    random_d_degree: int = Field(3, ge=0)
    random_size: int = Field(2, ge=1)
    check_margin: int = Field(2, ge=0)
    module_degree_cap: int = Field(16, ge=1)
    sweep_max_k: int = Field(8, ge=1)
    psi_d_degree: int = Field(2, ge=0)
    psi_v_slack: int = Field(2, ge=0)
    iteration_cap: int = Field(32, ge=1)

    @classmethod
    def from_env(cls, dotenv_path=None, **overrides):
        """
        Load settings from environment variables

        Args:
            dotenv_path: optional explicit .env file; ./.env otherwise
            overrides: values that win over the environment (e.g. CLI flags)
        """
        values = {k: v for k, v in overrides.items() if v is not None}
        if dotenv_path is not None:
            values["_env_file"] = dotenv_path
        settings = cls(**values)
        logger.debug("settings loaded: %s", settings.model_dump())
        return settings


_settings = None


def get_settings():
    """Process-wide settings, loaded once"""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def use_settings(settings):
    """Replace the process-wide settings (CLI overrides, tests)"""
    global _settings
    _settings = settings
    return settings
