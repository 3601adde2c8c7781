"""
Slope Engine Command Line
Exact Schubert calculus and divisor-class slopes on moduli spaces of curves.

Sub-commands:
  slope   evaluate one family at one parameter point
  table   sweep a family over a parameter grid (CSV or JSON)
  verify  run the cross-check suites
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from pydantic import ValidationError

from commands import COMMANDS
from config import get_settings
from errors import EXIT_PARAMETER_ERROR, SlopeEngineError
from models import ErrorResponse

logger = logging.getLogger(__name__)


def configure_logging(level: Optional[str] = None) -> None:
    """Log to stderr, and to SLOPE_LOG_FILE when set; stdout carries data only"""
    settings = get_settings()
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))
    logging.basicConfig(
        level=getattr(logging, (level or settings.log_level).upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slope-engine",
        description="Exact Schubert calculus and slopes of divisors on moduli spaces of curves",
    )
    parser.add_argument("--log-level", default=None, choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def report_error(message: str, error_code: str, details: Optional[dict] = None) -> int:
    """Print an ErrorResponse on stderr and return the parameter-error exit code"""
    response = ErrorResponse(message=message, error_code=error_code, details=details or {})
    print(response.model_dump_json(), file=sys.stderr)
    return EXIT_PARAMETER_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return int(e.code or 0)

    try:
        configure_logging(args.log_level)
    except ValidationError as e:
        return report_error("invalid SLOPE_* configuration", "CONFIGURATION", {"errors": str(e)})

    logger.info(f"Starting {args.command}")
    try:
        code = args.handler(args)
    except SlopeEngineError as e:
        logger.error(f"{args.command} failed: {e.error_code} {e.message}")
        return report_error(e.message, e.error_code, e.details)
    logger.info(f"Finished {args.command} with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
