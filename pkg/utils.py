"""
Utility functions for the G2 Monge-Ampere pipeline.

Logging setup, configuration loading and the rational/JSON helpers shared by
the command line and the HTTP server.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Iterable, List

from sympy import Rational
from sympy.polys.domains import QQ

logger = logging.getLogger(__name__)

TOOL_VERSION = "1.0.0"


def setup_logging(log_level: str = 'INFO') -> logging.Logger:
    """
    Setup logging configuration.

    Log records go to a timestamped file under logs/ and to stderr, so that
    stdout stays reserved for command output.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)

    Returns:
        Configured logger
    """
    log_dir = Path('logs')
    log_dir.mkdir(exist_ok=True)

    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    log_file = log_dir / f'g2mae_{timestamp}.log'

    logging.basicConfig(
        level=getattr(logging, log_level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(log_file, encoding='utf-8'),
            logging.StreamHandler()
        ]
    )

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging initialized. Log file: {log_file}")

    return logger


def load_config(config_path: str = 'config.json') -> Dict[str, Any]:
    """
    Load configuration from JSON file.

    Missing keys are filled from get_default_config().

    Args:
        config_path: Path to configuration file

    Returns:
        Configuration dictionary
    """
    config_file = Path(config_path)
    config = get_default_config()

    if not config_file.exists():
        logger.warning(f"Config file not found: {config_path}. Using defaults.")
        return config

    try:
        with open(config_file, 'r', encoding='utf-8') as f:
            config.update(json.load(f))
        logger.debug(f"Configuration loaded from {config_path}")
    except Exception as e:
        logger.error(f"Failed to load config: {e}")
        return get_default_config()

    return config


def get_default_config() -> Dict[str, Any]:
    """
    Get default configuration.

    Returns:
        Default configuration dictionary
    """
    return {
        'log_level': 'INFO',
        'seed': 0,
        'samples': 100,
        'darboux_signs': 'alternating',
        'tool_version': TOOL_VERSION,
    }


def to_qq(value: Any):
    """
    Convert an int, string "p/q", sympy Rational or QQ element to a QQ element.

    Raises:
        ValueError: if the value is not an exact rational
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        value = Rational(value.strip())
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    if QQ.of_type(value):
        return value
    try:
        return QQ.from_sympy(Rational(value))
    except (TypeError, ValueError) as e:
        raise ValueError(f"not a rational: {value!r}") from e


def format_rational(value: Any) -> str:
    """Render an exact rational as "p/q", or "p" when the denominator is 1."""
    if QQ.of_type(value):
        value = QQ.to_sympy(value)
    return str(Rational(value))


def matrix_to_strings(rows: Iterable[Iterable[Any]]) -> List[List[str]]:
    """Render a matrix (sympy Matrix or nested lists) as nested lists of rational strings."""
    if hasattr(rows, 'tolist'):
        rows = rows.tolist()
    return [[format_rational(x) for x in row] for row in rows]


def dump_json(document: Any) -> str:
    """Serialize a document deterministically (sorted keys, fixed separators)."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=True)


def print_summary(title: str, checks: List[Dict[str, Any]]):
    """
    Print a formatted summary of certificate results.

    Args:
        title: Banner title
        checks: Dictionaries with 'name', 'passed' and optional 'detail'
    """
    print("\n" + "=" * 80)
    print(title.upper())
    print("=" * 80)

    for check in checks:
        mark = "✓" if check['passed'] else "✗"
        line = f"{mark} {check['name']}"
        if check.get('detail'):
            line += f": {check['detail']}"
        print(line)

    passed = sum(1 for c in checks if c['passed'])
    print("-" * 80)
    print(f"Passed: {passed}/{len(checks)}")
    print("=" * 80 + "\n")
