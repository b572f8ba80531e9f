# ABOUTME: Engine configuration and settings
# ABOUTME: Numeric knobs live in a pydantic-settings model built from CLI flags or defaults

from functools import lru_cache

from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings. Only explicit init arguments are read (no env vars, no files)."""
    model_config = SettingsConfigDict(frozen=True)

    schema_version: str = "1.0"
    default_digits: int = 6
    search_bound: int = 3
    refinement_cap: int = 400
    irreducibility_primes: int = 12
    riemann_k_min: int = 16
    riemann_k_max: int = 4096
    convergence_threshold: float = 1e-4
    pi_tolerance: float = 1e-8
    pi_max_level: int = 22
    pi_reference_digits: int = 30

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


@lru_cache
def get_settings() -> Settings:
    """Returns cached settings instance."""
    return Settings()
