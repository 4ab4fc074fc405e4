"""Exact rational scalars and closed intervals.

Every quantity in this package is a `fractions.Fraction`: arbitrary
precision, stored in lowest terms with positive denominator. There is no
floating point anywhere in the core. The only textual form that crosses a
process boundary is "p/q" (bare integers allowed as "p").
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotContainedError, PlacementInfeasibleError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def as_rational(value: int | Fraction) -> Fraction:
    """Coerce an int to Fraction. Floats are rejected, never converted."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"exact rational required, got {value!r}")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (or a bare integer "p") into an exact Fraction.

    Anything else, decimals included, is rejected so exactness is never
    silently lost at a boundary.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    """Render in lowest terms as "p/q", bare "p" when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with exact rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def center(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, inner: "Interval") -> bool:
        """Closed containment; shared endpoints count as inside."""
        return self.lo <= inner.lo and inner.hi <= self.hi

    def contains_point(self, point: Fraction) -> bool:
        return self.lo <= point <= self.hi

    def disjoint_from(self, other: "Interval") -> bool:
        """Strict disjointness; closed intervals touching at a point overlap."""
        return self.hi < other.lo or other.hi < self.lo

    def as_pair(self) -> tuple[str, str]:
        return format_rational(self.lo), format_rational(self.hi)

    def __str__(self) -> str:
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"


def interval_from_strings(lo: str, hi: str) -> Interval:
    return Interval(parse_rational(lo), parse_rational(hi))


@dataclass(frozen=True)
class Anchor:
    """Placement rule for a subinterval: aligned, centered, or at an offset."""

    kind: str  # "left" | "right" | "center" | "offset"
    at: Fraction | None = None

    @classmethod
    def left(cls) -> "Anchor":
        return cls("left")

    @classmethod
    def right(cls) -> "Anchor":
        return cls("right")

    @classmethod
    def centered(cls, point: Fraction) -> "Anchor":
        return cls("center", as_rational(point))

    @classmethod
    def offset(cls, amount: Fraction) -> "Anchor":
        return cls("offset", as_rational(amount))


def place_subinterval(host: Interval, length: Fraction, anchor: Anchor) -> Interval:
    """Build the subinterval of `host` with exactly `length` at the anchor.

    Raises PlacementInfeasibleError when the placement does not fit; the
    result always satisfies host.contains(result) and result.length == length.
    """
    length = as_rational(length)
    if length <= 0 or length > host.length:
        raise PlacementInfeasibleError(
            f"length {format_rational(length)} does not fit in {host}"
        )
    if anchor.kind == "left":
        return Interval(host.lo, host.lo + length)
    if anchor.kind == "right":
        return Interval(host.hi - length, host.hi)
    if anchor.kind == "center":
        half = length / 2
        result = Interval(anchor.at - half, anchor.at + half)
        if not host.contains(result):
            raise PlacementInfeasibleError(
                f"interval of length {format_rational(length)} centered at "
                f"{format_rational(anchor.at)} exceeds {host}"
            )
        return result
    if anchor.kind == "offset":
        if anchor.at < 0 or anchor.at > host.length - length:
            raise PlacementInfeasibleError(
                f"offset {format_rational(anchor.at)} out of range for {host}"
            )
        lo = host.lo + anchor.at
        return Interval(lo, lo + length)
    raise ValueError(f"unknown anchor kind {anchor.kind!r}")


def gap_components(outer: Interval, removed: Interval) -> list[Interval]:
    """Closed components of outer minus removed, left to right (0, 1, or 2).

    A side component is emitted iff the removed interval leaves positive room
    on that side; removing a degenerate interior interval yields the two
    closed halves that share its point. Component lengths always sum to
    outer.length - removed.length exactly.
    """
    if not outer.contains(removed):
        raise NotContainedError(f"{removed} is not contained in {outer}")
    pieces: list[Interval] = []
    if removed.lo > outer.lo:
        pieces.append(Interval(outer.lo, removed.lo))
    if removed.hi < outer.hi:
        pieces.append(Interval(removed.hi, outer.hi))
    return pieces
