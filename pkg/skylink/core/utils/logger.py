import logging
import logging.handlers
import os
from contextlib import contextmanager
from contextvars import ContextVar
from datetime import datetime
from typing import Iterator, Optional

from rich.console import Console
from rich.logging import RichHandler

_scenario: ContextVar[str] = ContextVar("scenario", default="N/A")
_seed: ContextVar[str] = ContextVar("seed", default="N/A")


# 🛡️ Safe formatter to prevent logging errors from missing fields (e.g., scenario, seed)
class SafeFormatter(logging.Formatter):
    def format(self, record):
        if not hasattr(record, "scenario"):
            record.scenario = "N/A"
        if not hasattr(record, "seed"):
            record.seed = "N/A"
        return super().format(record)


# 🧠 Context filter adds scenario/seed info to every log automatically
class RunContextFilter(logging.Filter):
    def filter(self, record):
        record.scenario = _scenario.get()
        record.seed = _seed.get()
        return True


@contextmanager
def run_context(scenario: Optional[str] = None, seed: Optional[int] = None) -> Iterator[None]:
    """
    Stamp every log record emitted inside the block with the run identity.
    """
    tokens = []
    if scenario is not None:
        tokens.append((_scenario, _scenario.set(str(scenario))))
    if seed is not None:
        tokens.append((_seed, _seed.set(str(seed))))
    try:
        yield
    finally:
        for var, token in reversed(tokens):
            var.reset(token)


# 🛠️ Initialize structured logging with rotation and run metadata
def setup_logging(
    log_level: str = "INFO",
    log_dir: Optional[str] = None,
    app_name: str = "skylink",
) -> None:
    """
    Set up logging with console + optional rotating file outputs.
    - Includes dynamic run context (scenario/seed)
    - Console goes to stderr so command output stays clean
    """
    level = getattr(logging, log_level.upper(), logging.INFO)
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # setup_logging may be called once per command invocation
    for handler in list(root_logger.handlers):
        if getattr(handler, "_skylink", False):
            root_logger.removeHandler(handler)
            handler.close()

    context_filter = RunContextFilter()

    # 🖥️ Rich console output
    console_handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    console_handler.setFormatter(SafeFormatter("(scenario=%(scenario)s seed=%(seed)s) %(message)s"))
    console_handler.addFilter(context_filter)
    console_handler._skylink = True
    root_logger.addHandler(console_handler)

    # 🔁 Rotating file handler (keeps 10x 10MB logs)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, f"{app_name}_{datetime.now().strftime('%Y%m%d')}.log")
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=10,
        )
        file_handler.setFormatter(SafeFormatter(
            "[%(asctime)s] [%(levelname)s] [%(name)s] "
            "(scenario=%(scenario)s seed=%(seed)s) %(message)s"
        ))
        file_handler.addFilter(context_filter)
        file_handler._skylink = True
        root_logger.addHandler(file_handler)

    # 📉 Reduce noise from external libraries
    logging.getLogger("PIL").setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
