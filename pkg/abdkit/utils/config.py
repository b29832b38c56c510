import os
from dataclasses import dataclass

DEFAULT_ORACLE_LIMIT = 2**24
DEFAULT_PP_MAX_AUX = 2


def _env_int(key: str, default: int) -> int:
    value = os.getenv(key, "")
    if not value:
        return default
    try:
        return int(value, 0)
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {value!r}")


@dataclass(frozen=True)
class Settings:
    """
    Runtime knobs read from the environment.

    "oracle_limit" caps the 2^|H| * 2^|V| work the brute-force oracle may spend.
    "pp_max_aux" bounds the auxiliary variables tried by the pp-definition search.
    """

    oracle_limit: int = DEFAULT_ORACLE_LIMIT
    pp_max_aux: int = DEFAULT_PP_MAX_AUX


def get_settings(**overrides) -> Settings:
    settings = Settings(
        oracle_limit=_env_int("ABDKIT_ORACLE_LIMIT", DEFAULT_ORACLE_LIMIT),
        pp_max_aux=_env_int("ABDKIT_PP_MAX_AUX", DEFAULT_PP_MAX_AUX),
    )
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if overrides:
        settings = Settings(**{**settings.__dict__, **overrides})
    return settings
