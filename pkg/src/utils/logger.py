import logging
import time
from functools import wraps
from datetime import datetime
from typing import Callable, Any

from .config import LOG_SETTINGS


def setup_logger(name: str) -> logging.Logger:
    """Setup and return a logger with the specified name"""
    logger = logging.getLogger(name)
    logger.setLevel(LOG_SETTINGS["LEVEL"])
    if logger.handlers:
        return logger

    log_format = logging.Formatter('%(asctime)s - %(name)s - %(message)s', datefmt='%H:%M:%S')

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(log_format)
    logger.addHandler(console_handler)

    if LOG_SETTINGS["TO_FILE"]:
        logs_dir = LOG_SETTINGS["LOGS_DIR"]
        logs_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(
            logs_dir / f"{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
        )
        file_handler.setFormatter(log_format)
        logger.addHandler(file_handler)

    return logger


def timing_decorator(logger: logging.Logger) -> Callable:
    """Decorator to measure and log execution time of functions"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            start_time = time.perf_counter()
            result = func(*args, **kwargs)
            execution_time = time.perf_counter() - start_time
            if execution_time >= 0.5:
                logger.info(f"Timing: {func.__qualname__} in {execution_time:.2f} seconds")
            else:
                logger.debug(f"Timing: {func.__qualname__} in {execution_time:.4f} seconds")
            return result
        return wrapper
    return decorator


default_logger = setup_logger('bforge')
