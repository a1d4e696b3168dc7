import logging
import logging.handlers
from pathlib import Path
import colorlog


def setup_logger(name: str, config: dict) -> logging.Logger:
    """
    Setup a logger with file and console handlers.

    Args:
        name: Logger name
        config: Logging configuration from config.yaml

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, config.get('level', 'INFO')))

    # Prevent duplicate handlers
    if logger.handlers:
        return logger

    log_file = config.get('log_file', './logs/converse_fatou.log')
    log_dir = Path(log_file).parent
    log_dir.mkdir(parents=True, exist_ok=True)

    # File handler with rotation
    file_handler = logging.handlers.RotatingFileHandler(
        log_file,
        maxBytes=config.get('max_bytes', 10485760),  # 10MB
        backupCount=config.get('backup_count', 5),
        encoding='utf-8'
    )
    file_formatter = logging.Formatter(
        config.get('format', '%(asctime)s - %(name)s - %(levelname)s - %(message)s'),
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    file_handler.setFormatter(file_formatter)
    logger.addHandler(file_handler)

    # Console handler with colors
    console_handler = colorlog.StreamHandler()
    console_formatter = colorlog.ColoredFormatter(
        '%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        log_colors={
            'DEBUG': 'cyan',
            'INFO': 'green',
            'WARNING': 'yellow',
            'ERROR': 'red',
            'CRITICAL': 'red,bg_white',
        }
    )
    console_handler.setFormatter(console_formatter)
    logger.addHandler(console_handler)

    return logger


class ScenarioLogger:
    """
    Structured single-line records for harness stages.
    """

    def __init__(self, stage_name: str, config: dict):
        self.stage_name = stage_name
        self.logger = setup_logger(f"harness.{stage_name}", config)

    def log_start(self, run_id: str, input_summary: str):
        self.logger.info(f"[{self.stage_name}] START | Run: {run_id} | Input: {input_summary}")

    def log_end(self, run_id: str, output_summary: str, duration: float):
        self.logger.info(
            f"[{self.stage_name}] END | Run: {run_id} | "
            f"Output: {output_summary} | Duration: {duration:.2f}s"
        )

    def log_error(self, run_id: str, error: Exception):
        self.logger.error(
            f"[{self.stage_name}] ERROR | Run: {run_id} | "
            f"Error: {type(error).__name__}: {str(error)}",
            exc_info=True
        )

    def log_trace(self, trace_name: str, points: int, classification: str):
        self.logger.info(
            f"[{self.stage_name}] TRACE | Trace: {trace_name} | "
            f"Points: {points} | Classification: {classification}"
        )

    def log_decision(self, scenario_id: str, verdict: str, expected: str):
        self.logger.info(
            f"[{self.stage_name}] VERDICT | Scenario: {scenario_id} | "
            f"Verdict: {verdict} | Expected: {expected}"
        )

    def log_warning(self, run_id: str, message: str):
        self.logger.warning(f"[{self.stage_name}] WARNING | Run: {run_id} | {message}")


def log_stage_transition(logger: logging.Logger, from_stage: str, to_stage: str, run_id: str):
    """Log workflow stage transition."""
    logger.info(f"WORKFLOW | Transition: {from_stage} -> {to_stage} | Run: {run_id}")
