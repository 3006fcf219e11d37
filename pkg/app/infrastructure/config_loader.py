from __future__ import annotations
import os
from dotenv import load_dotenv
from app.config import OUTPUT_FORMATS, WorkbenchConfig
from app.shared.errors import ConfigError


load_dotenv()

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

def _get_int_env(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer") from exc
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}")
    return value

def load_workbench_config() -> WorkbenchConfig:
    """Session defaults from WORKBENCH_* variables; command-line flags override them."""

    defaults = WorkbenchConfig()

    output_format = os.getenv("WORKBENCH_FORMAT", defaults.output_format).lower()
    if output_format not in OUTPUT_FORMATS:
        raise ConfigError(f"WORKBENCH_FORMAT must be one of {', '.join(OUTPUT_FORMATS)}")

    log_level = os.getenv("WORKBENCH_LOG_LEVEL", defaults.log_level).upper()
    if log_level not in _LOG_LEVELS:
        raise ConfigError(f"WORKBENCH_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}")

    return WorkbenchConfig(
        window=_get_int_env("WORKBENCH_WINDOW", defaults.window, minimum=1),
        coeff_height=_get_int_env("WORKBENCH_COEFF_HEIGHT", defaults.coeff_height, minimum=1),
        depth=_get_int_env("WORKBENCH_DEPTH", defaults.depth),
        max_items=_get_int_env("WORKBENCH_MAX_ITEMS", defaults.max_items, minimum=1),
        product_width=_get_int_env("WORKBENCH_PRODUCT_WIDTH", defaults.product_width, minimum=1),
        sum_width=_get_int_env("WORKBENCH_SUM_WIDTH", defaults.sum_width, minimum=1),
        output_format=output_format,
        log_level=log_level,
    )
