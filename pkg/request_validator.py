"""
Request validator for the G2 Monge-Ampere pipeline.
Validates command-line flags and HTTP query parameters before any computation runs.
"""

import re
from typing import Iterable, List, Tuple
import logging

from exterior import U_NAMES

logger = logging.getLogger(__name__)


class RequestValidator:
    """Validates user input; every check returns (is_valid, error_message)."""

    ALGEBRAS = ('g2', 'sl')
    FORMATS = ('expanded', 'minors', 'json')
    DICTIONARIES = ('alternating', 'literal')
    SIMPLE_ROOTS = {'a1': 1, 'a2': 2}
    FLAG_PATTERN = re.compile(r'^\d+(,\d+)*$')
    RATIONAL_PATTERN = re.compile(r'^-?\d+(/\d+)?$')
    MAX_SEED = 2 ** 64
    MAX_SAMPLES = 10000

    def validate_algebra(self, algebra: str) -> Tuple[bool, str]:
        if algebra not in self.ALGEBRAS:
            return False, f"Unknown algebra {algebra!r}; expected one of {', '.join(self.ALGEBRAS)}"
        return True, ""

    def validate_flag(self, flag: str) -> Tuple[bool, str]:
        """
        Validate flag dimensions such as "1,1" or "2,1,2".

        Args:
            flag: Comma-separated positive integers

        Returns:
            Tuple of (is_valid, error_message)
        """
        if not flag or not self.FLAG_PATTERN.match(flag.replace(' ', '')):
            return False, f"Flag dimensions must be comma-separated integers, got {flag!r}"
        dims = self.parse_flag(flag)
        if any(d < 1 for d in dims):
            return False, "Flag dimensions must be positive"
        if sum(dims) < 2:
            return False, "Flag dimensions must sum to at least 2"
        return True, ""

    def validate_pi1(self, pi1: str) -> Tuple[bool, str]:
        names = [p.strip() for p in pi1.split(',') if p.strip()] if pi1 else []
        if not names:
            return False, "pi1 must name at least one simple root (a1, a2)"
        unknown = [n for n in names if n not in self.SIMPLE_ROOTS]
        if unknown:
            return False, f"Unknown simple roots: {', '.join(unknown)}; expected a1, a2"
        return True, ""

    def validate_degree(self, degree) -> Tuple[bool, str]:
        if isinstance(degree, bool) or not isinstance(degree, int) or not 1 <= degree <= 5:
            return False, f"Degree must be an integer in 1..5, got {degree!r}"
        return True, ""

    def validate_format(self, fmt: str) -> Tuple[bool, str]:
        if fmt not in self.FORMATS:
            return False, f"Unknown format {fmt!r}; expected one of {', '.join(self.FORMATS)}"
        return True, ""

    def validate_dictionary(self, name: str) -> Tuple[bool, str]:
        if name not in self.DICTIONARIES:
            return False, f"Unknown dictionary {name!r}; expected one of {', '.join(self.DICTIONARIES)}"
        return True, ""

    def validate_equation_name(self, name: str, valid_names: Iterable[str]) -> Tuple[bool, str]:
        valid_names = list(valid_names)
        if name not in valid_names:
            return False, f"Unknown equation {name!r}; valid names: {', '.join(valid_names)}"
        return True, ""

    def validate_point(self, point: str) -> Tuple[bool, str]:
        """
        Validate a point string: 15 rationals p/q in u00,u01,...,u44 order.

        Returns:
            Tuple of (is_valid, error_message)
        """
        parts = [p.strip() for p in point.split(',')] if point else []
        if len(parts) != len(U_NAMES):
            return False, f"A point needs {len(U_NAMES)} comma-separated rationals ({', '.join(U_NAMES)}), got {len(parts)}"
        for name, part in zip(U_NAMES, parts):
            if not self.RATIONAL_PATTERN.match(part):
                return False, f"Invalid rational for {name}: {part!r}"
            if '/' in part and int(part.split('/')[1]) == 0:
                return False, f"Zero denominator for {name}"
        return True, ""

    def validate_seed(self, seed) -> Tuple[bool, str]:
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < self.MAX_SEED:
            return False, f"Seed must be a non-negative integer below 2^64, got {seed!r}"
        return True, ""

    def validate_samples(self, samples) -> Tuple[bool, str]:
        if isinstance(samples, bool) or not isinstance(samples, int) or not 1 <= samples <= self.MAX_SAMPLES:
            return False, f"Samples must be an integer in 1..{self.MAX_SAMPLES}, got {samples!r}"
        return True, ""

    @staticmethod
    def parse_flag(flag: str) -> List[int]:
        return [int(p) for p in flag.replace(' ', '').split(',')]

    def parse_pi1(self, pi1: str) -> List[int]:
        return sorted({self.SIMPLE_ROOTS[p.strip()] for p in pi1.split(',') if p.strip()})

    @staticmethod
    def parse_point(point: str) -> List[str]:
        return [p.strip() for p in point.split(',')]
