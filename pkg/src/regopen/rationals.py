"""Exact rational arithmetic helpers.

gmpy2's mpq is used when available (roughly an order of magnitude faster
on the op chains the region calculus produces); fractions.Fraction is the
drop-in fallback.  The two agree on hashing, ordering, equality and str()
formatting, so the backend never leaks into results.
"""
from __future__ import annotations

import re
from typing import Any, Optional, Union

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Q  # type: ignore[assignment]

# annotations use this alias; the runtime type depends on the backend
Rational = Any

_RAT_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def rat(num: Union[int, str, Rational], den: Optional[int] = None) -> Rational:
    """Build a rational from an int, an exact string, or a num/den pair."""
    if den is not None:
        return Q(num, den)
    if type(num) is Q:
        return num
    if isinstance(num, str):
        return parse_rat(num)
    return Q(num)


def parse_rat(s: str) -> Rational:
    """Parse "p/q" or "n" (q positive). Raises ValueError otherwise."""
    m = _RAT_RE.match(s.strip())
    if not m:
        raise ValueError(f"not a rational literal: {s!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Q(num)
    den = int(m.group(2))
    if den == 0:
        raise ValueError(f"zero denominator: {s!r}")
    return Q(num, den)


def rat_str(x: Rational) -> str:
    """Lowest-terms string form: "p/q", or "n" when integral."""
    return str(x)


def is_dyadic(x: Rational) -> bool:
    den = int(x.denominator)
    return den & (den - 1) == 0


def dyadic_exponent(x: Rational) -> int:
    """Smallest e with x * 2^e integral. Raises ValueError if none exists."""
    den = int(x.denominator)
    if den & (den - 1) != 0:
        raise ValueError(f"not dyadic: {x}")
    return den.bit_length() - 1


ZERO = rat(0)
ONE = rat(1)
HALF = rat(1, 2)
