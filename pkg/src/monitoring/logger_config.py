"""
Structured logging configuration for the Hom-Lie toolkit.
"""

import functools
import logging
import logging.handlers
import os
import sys
from datetime import datetime
from typing import Any, Callable, Dict, Optional, TypeVar

import structlog

F = TypeVar("F", bound=Callable[..., Any])


class HomLieLogger:
    """Configures structured logging for the toolkit.

    Output goes to stderr so that stdout stays reserved for JSON results.
    Nothing is configured at import time; the CLI calls ``setup_logging``.
    """

    @staticmethod
    def setup_logging(
        log_level: Optional[str] = None,
        log_format: Optional[str] = None,
        log_file: Optional[str] = None
    ) -> None:
        """Set up structured logging for the application."""

        log_level = (log_level or os.getenv('LOG_LEVEL', 'INFO')).upper()
        log_format = log_format or os.getenv('LOG_FORMAT', 'console')
        log_file = log_file or os.getenv('LOG_FILE')
        level = getattr(logging, log_level)

        handlers: list = []

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        handlers.append(console_handler)

        if log_file:
            log_dir = os.path.dirname(log_file)
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)

            file_handler = logging.handlers.RotatingFileHandler(
                log_file,
                maxBytes=10 * 1024 * 1024,  # 10MB
                backupCount=5
            )
            file_handler.setLevel(level)
            handlers.append(file_handler)

        renderer = HomLieLogger._get_renderer(log_format)
        formatter = structlog.stdlib.ProcessorFormatter(
            processor=renderer,
            foreign_pre_chain=[
                structlog.stdlib.add_logger_name,
                structlog.stdlib.add_log_level,
                structlog.processors.TimeStamper(fmt="iso"),
            ],
        )
        for handler in handlers:
            handler.setFormatter(formatter)

        structlog.configure(
            processors=[
                structlog.stdlib.filter_by_level,
                structlog.stdlib.add_logger_name,
                structlog.stdlib.add_log_level,
                structlog.stdlib.PositionalArgumentsFormatter(),
                structlog.processors.TimeStamper(fmt="iso"),
                structlog.processors.StackInfoRenderer(),
                structlog.processors.format_exc_info,
                HomLieLogger._add_correlation_id,
                structlog.processors.UnicodeDecoder(),
                structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
            ],
            context_class=dict,
            logger_factory=structlog.stdlib.LoggerFactory(),
            wrapper_class=structlog.stdlib.BoundLogger,
            cache_logger_on_first_use=True,
        )

        root_logger = logging.getLogger()
        root_logger.setLevel(level)
        root_logger.handlers.clear()
        root_logger.handlers.extend(handlers)

        logger = structlog.get_logger(__name__)
        logger.debug(
            "Logging initialized",
            log_level=log_level,
            log_format=log_format,
            log_file=log_file or "stderr"
        )

    @staticmethod
    def _add_correlation_id(logger: Any, method_name: str, event_dict: Dict[str, Any]) -> Dict[str, Any]:
        """Drop an empty correlation id rather than logging ``None``."""
        if event_dict.get('correlation_id') is None:
            event_dict.pop('correlation_id', None)
        return event_dict

    @staticmethod
    def _get_renderer(log_format: str) -> Any:
        """Get the appropriate renderer based on format."""
        if log_format.lower() == 'json':
            return structlog.processors.JSONRenderer(sort_keys=True)
        return structlog.dev.ConsoleRenderer(colors=False)


class CorrelationLogger:
    """Logger with correlation ID support for tracing one command or computation."""

    def __init__(self, correlation_id: Optional[str] = None, name: Optional[str] = None):
        self.correlation_id = correlation_id
        self.logger = structlog.get_logger(name)

        if correlation_id:
            self.logger = self.logger.bind(correlation_id=correlation_id)

    def bind(self, **kwargs: Any) -> "CorrelationLogger":
        bound = CorrelationLogger.__new__(CorrelationLogger)
        bound.correlation_id = self.correlation_id
        bound.logger = self.logger.bind(**kwargs)
        return bound

    def info(self, message: str, **kwargs: Any) -> None:
        self.logger.info(message, **kwargs)

    def warning(self, message: str, **kwargs: Any) -> None:
        self.logger.warning(message, **kwargs)

    def error(self, message: str, **kwargs: Any) -> None:
        self.logger.error(message, **kwargs)

    def debug(self, message: str, **kwargs: Any) -> None:
        self.logger.debug(message, **kwargs)

    def exception(self, message: str, **kwargs: Any) -> None:
        self.logger.exception(message, **kwargs)


class OperationLogger:
    """Context manager for logging operation lifecycle."""

    def __init__(self, operation_name: str, correlation_id: Optional[str] = None, **context: Any):
        self.operation_name = operation_name
        self.correlation_id = correlation_id
        self.context = context
        self.start_time: Optional[datetime] = None
        self.logger = CorrelationLogger(correlation_id)

    def __enter__(self) -> CorrelationLogger:
        self.start_time = datetime.now()

        self.logger.info(
            f"Operation started: {self.operation_name}",
            operation=self.operation_name,
            **self.context
        )

        return self.logger

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> bool:
        assert self.start_time is not None
        duration = (datetime.now() - self.start_time).total_seconds()

        if exc_type is None:
            self.logger.info(
                f"Operation completed: {self.operation_name}",
                operation=self.operation_name,
                duration_seconds=duration,
                **self.context
            )
        else:
            self.logger.error(
                f"Operation failed: {self.operation_name}",
                operation=self.operation_name,
                duration_seconds=duration,
                error_type=exc_type.__name__,
                error_message=str(exc_val) if exc_val else None,
                **self.context
            )

        return False  # Don't suppress exceptions


def get_logger(correlation_id: Optional[str] = None) -> CorrelationLogger:
    """Get a logger with optional correlation ID."""
    return CorrelationLogger(correlation_id)


def log_operation(operation_name: str, correlation_id: Optional[str] = None, **context: Any) -> Callable[[F], F]:
    """Decorator logging the lifecycle of a library operation."""
    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            with OperationLogger(operation_name, correlation_id, **context):
                return func(*args, **kwargs)
        return wrapper  # type: ignore[return-value]
    return decorator
