from .config import Settings, get_settings
from .logging_utils import init_logger, set_log_level

__all__ = ["Settings", "get_settings", "init_logger", "set_log_level"]
