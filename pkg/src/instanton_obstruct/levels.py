"""Exact filtration levels: rationals plus a distinguished infinity."""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Union


@functools.total_ordering
class _Infinity:
    """Positive infinity compared exactly against rationals and ints."""

    _instance: "_Infinity | None" = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        if other is self or isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash("instanton_obstruct.inf")

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

Level = Union[Fraction, _Infinity]


def is_inf(value: object) -> bool:
    return value is INF


def parse_level(text: str | int | Fraction | _Infinity) -> Level:
    """Parse ``"p/q"``, an integer, or ``"inf"`` without touching floats."""
    if text is INF:
        return INF
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a level: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a level: {text!r}")
    s = text.strip().lower()
    if s in ("inf", "infinity", "+inf", "∞"):
        return INF
    if any(ch in s for ch in ".eE"):
        raise ValueError(f"decimal input {text!r} rejected; write an exact fraction p/q")
    return Fraction(s)


def format_level(value: Level) -> str:
    """Lowest-terms ``p/q`` (or ``p`` for integers); infinity prints as ``inf``."""
    if value is INF:
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def level_min(*values: Level) -> Level:
    return min(values, key=lambda v: (1, 0) if v is INF else (0, v))
