"""
Validation helpers for command-line values
"""

import logging
import re
from typing import Iterable, List, Optional

from core.errors import InputError

logger = logging.getLogger(__name__)

SKIPPABLE = ("homology", "cup-form", "burnside", "fast-path", "milnor", "dbc", "surgery", "properties")

RANGE_PATTERN = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


def validate_modulus(d: int, minimum: int = 2) -> int:
    """
    Validate a modulus value.

    Args:
        d: Modulus given on the command line
        minimum: Smallest accepted value

    Returns:
        int: The modulus

    Raises:
        InputError: when d is not an integer >= minimum
    """
    if not isinstance(d, int) or isinstance(d, bool) or d < minimum:
        raise InputError(f"--d must be an integer >= {minimum}, got {d!r}")
    return d


def validate_positive(value: Optional[int], flag: str, minimum: int = 1) -> int:
    if value is None:
        raise InputError(f"{flag} is required")
    if value < minimum:
        raise InputError(f"{flag} must be >= {minimum}, got {value}")
    return value


def parse_d_range(text: str) -> List[int]:
    """
    Parse an inclusive range such as ``3..7``.

    Returns:
        list: Every d in the range

    Raises:
        InputError: for malformed ranges, or ranges reaching below 2
    """
    match = RANGE_PATTERN.match(text or "")
    if not match:
        raise InputError(f"--d-range must look like a..b, got {text!r}")
    low, high = int(match.group(1)), int(match.group(2))
    if low < 2 or high < low:
        raise InputError(f"--d-range needs 2 <= a <= b, got {low}..{high}")
    return list(range(low, high + 1))


def validate_skips(values: Optional[Iterable[str]]) -> frozenset:
    """Normalise repeated or comma-separated --skip values."""
    skips = set()
    for value in values or ():
        for item in value.split(","):
            item = item.strip().lower()
            if not item:
                continue
            if item not in SKIPPABLE:
                raise InputError(f"unknown --skip value {item!r}; choose from {', '.join(SKIPPABLE)}")
            skips.add(item)
    if skips:
        logger.info(f"Skipping: {', '.join(sorted(skips))}")
    return frozenset(skips)


def validate_budget(budget: Optional[int]) -> Optional[int]:
    if budget is not None and budget < 1:
        raise InputError(f"--budget must be positive, got {budget}")
    return budget
