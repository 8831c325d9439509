import os
from dotenv import load_dotenv

# Load .env file into environment automatically (if it exists in project root)
load_dotenv()

OUTPUT_DIR_VAR = "SKYLINK_OUTPUT_DIR"
LOG_LEVEL_VAR = "SKYLINK_LOG_LEVEL"
LOG_DIR_VAR = "SKYLINK_LOG_DIR"
WORKERS_VAR = "SKYLINK_WORKERS"


def get_env_variable(key: str, default=None, optional=True):
    """
    get_env_variable() 🔍

    Attempts to load an environment variable from the system or `.env` file.

    Args:
        key (str): The name of the environment variable.
        default (any): A fallback value if the variable is missing.
        optional (bool): If False and the key is missing, raise a KeyError.

    Returns:
        str | any: The environment variable value, or fallback/default.

    Raises:
        KeyError: If the variable is required but missing and no default is given.
    """
    value = os.environ.get(key, default)
    if value is None and not optional:
        raise KeyError(f"❌ Required environment variable '{key}' is missing.")
    return value


def get_int_variable(key: str, default: int) -> int:
    """
    get_int_variable() 🔢

    Integer flavour of get_env_variable(). Blank or malformed values fall
    back to the default instead of failing a run.
    """
    raw = get_env_variable(key)
    if raw is None or not str(raw).strip():
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def output_dir_override() -> str | None:
    """Directory forced by SKYLINK_OUTPUT_DIR, if any."""
    value = get_env_variable(OUTPUT_DIR_VAR)
    return value or None


def log_level() -> str:
    return str(get_env_variable(LOG_LEVEL_VAR, "INFO")).upper()


def log_dir() -> str | None:
    return get_env_variable(LOG_DIR_VAR) or None


def default_workers() -> int:
    return max(1, get_int_variable(WORKERS_VAR, 1))
