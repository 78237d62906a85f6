"""Angle expressions for the command line: ``pi``, ``pi/2``, ``3pi/4``, ``-2*pi/3``, ``0.25``."""

from __future__ import annotations

import math
import re

__all__ = ["parse_angle", "parse_angle_list"]

_PI_EXPR = re.compile(
    r"""^\s*(?P<sign>[+-]?)\s*(?P<coef>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi
        \s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$""",
    re.IGNORECASE | re.VERBOSE,
)


def parse_angle(text: str) -> float:
    """Radians from a float literal or ``[sign][coef][*]pi[/den]``."""
    m = _PI_EXPR.match(text)
    if m:
        value = float(m["coef"] or 1.0) * math.pi / float(m["den"] or 1.0)
        return -value if m["sign"] == "-" else value
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}; use e.g. 0.5, pi, pi/2, 3pi/4") from None


def parse_angle_list(text: str) -> list[float]:
    return [parse_angle(t) for t in text.split(",") if t.strip()]
