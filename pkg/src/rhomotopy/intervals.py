"""Intervals of the real line written as differences ``R \\ L`` of left rays.

Textual syntax (used by the CLI)::

    {l}          singleton
    [a,b] (a,b] [a,b) (a,b)
    (-inf,b] (-inf,b)
    [a,inf) (a,inf)
    R            the whole line

Endpoints are parsed by a caller-supplied ``number`` function so that the
interval shares the numeric backend of the space it will query.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import EmptyInterval, ParseError

EMPTY, BELOW, BELOW_EQ, ALL = "empty", "below", "below_eq", "all"


@dataclass(frozen=True)
class LeftRay:
    """One of ``∅``, ``(-inf, a)``, ``(-inf, a]`` or ``R``."""

    kind: str
    a: object = None

    def __post_init__(self):
        if self.kind not in (EMPTY, BELOW, BELOW_EQ, ALL):
            raise ValueError(f"unknown ray kind {self.kind!r}")
        if (self.kind in (BELOW, BELOW_EQ)) != (self.a is not None):
            raise ValueError("bounded rays need an endpoint, others must not have one")

    @classmethod
    def empty(cls):
        return cls(EMPTY)

    @classmethod
    def all(cls):
        return cls(ALL)

    @classmethod
    def below(cls, a):
        return cls(BELOW, a)

    @classmethod
    def below_eq(cls, a):
        return cls(BELOW_EQ, a)

    def contains(self, x, tol=0) -> bool:
        if self.kind == EMPTY:
            return False
        if self.kind == ALL:
            return True
        if self.kind == BELOW:
            return x < self.a - tol
        return x <= self.a + tol

    def subset_of(self, other: "LeftRay") -> bool:
        if self.kind == EMPTY or other.kind == ALL:
            return True
        if other.kind == EMPTY or self.kind == ALL:
            return False
        if self.kind == BELOW_EQ and other.kind == BELOW:
            return self.a < other.a
        return self.a <= other.a

    def shift(self, r) -> "LeftRay":
        if self.kind in (EMPTY, ALL):
            return self
        return LeftRay(self.kind, self.a + r)

    def __str__(self):
        if self.kind == EMPTY:
            return "∅"
        if self.kind == ALL:
            return "R"
        return f"(-inf,{self.a}{')' if self.kind == BELOW else ']'}"


@dataclass(frozen=True)
class Interval:
    """A nonempty interval ``R \\ L`` with ``L`` a proper subset of ``R``."""

    R: LeftRay
    L: LeftRay

    def __post_init__(self):
        if not (self.L.subset_of(self.R) and not self.R.subset_of(self.L)):
            raise EmptyInterval(f"{self.R} \\ {self.L} is empty")

    def contains(self, x, tol=0) -> bool:
        return self.R.contains(x, tol) and not self.L.contains(x, tol)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    @property
    def bounded_above(self) -> bool:
        return self.R.kind != ALL

    @property
    def sup(self):
        return math.inf if self.R.kind == ALL else self.R.a

    def endpoints(self):
        return [ray.a for ray in (self.L, self.R) if ray.a is not None]

    def __str__(self):
        return format_interval(self)


def singleton(x) -> Interval:
    return Interval(LeftRay.below_eq(x), LeftRay.below(x))


def closed(a, b) -> Interval:
    if b < a:
        raise EmptyInterval(f"[{a},{b}] is empty")
    return Interval(LeftRay.below_eq(b), LeftRay.below(a))


def left_closed_ray(x) -> Interval:
    """The ray ``(-inf, x]``."""
    return Interval(LeftRay.below_eq(x), LeftRay.empty())


def full() -> Interval:
    return Interval(LeftRay.all(), LeftRay.empty())


def from_bounds(lo, lo_closed: bool, hi, hi_closed: bool) -> Interval:
    """Interval with endpoints ``lo``/``hi``; ``None`` means infinite."""
    R = LeftRay.all() if hi is None else (LeftRay.below_eq(hi) if hi_closed else LeftRay.below(hi))
    L = LeftRay.empty() if lo is None else (LeftRay.below(lo) if lo_closed else LeftRay.below_eq(lo))
    return Interval(R, L)


def precedes(I: Interval, J: Interval) -> bool:
    """The order ``I ≼ J``: both rays of I are contained in those of J."""
    return I.R.subset_of(J.R) and I.L.subset_of(J.L)


def lower_expand(I: Interval, r) -> Interval:
    """``I_r = R \\ (L - r)``."""
    return Interval(I.R, I.L.shift(-r))


def upper_expand(I: Interval, r) -> Interval:
    """``I^r = (R + r) \\ L``."""
    return Interval(I.R.shift(r), I.L)


def format_interval(I: Interval) -> str:
    R, L = I.R, I.L
    if R.kind == ALL and L.kind == EMPTY:
        return "R"
    if R.kind == BELOW_EQ and L.kind == BELOW and R.a == L.a:
        return "{" + _fmt(R.a) + "}"
    left = "(-inf" if L.kind == EMPTY else ("[" if L.kind == BELOW else "(") + _fmt(L.a)
    right = "inf)" if R.kind == ALL else _fmt(R.a) + ("]" if R.kind == BELOW_EQ else ")")
    return f"{left},{right}"


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def default_number(text: str):
    """Parse an int, a fraction ``p/q`` or a float literal."""
    text = text.strip()
    if re.fullmatch(r"[+-]?\d+", text):
        return int(text)
    if re.fullmatch(r"[+-]?\d+/\d+", text):
        return Fraction(text)
    return float(text)


_INF = {"inf", "+inf", "infinity", "∞", "+∞"}
_NEG_INF = {"-inf", "-infinity", "-∞"}


def parse_interval(text: str, number: Optional[Callable[[str], object]] = None) -> Interval:
    number = number or default_number
    s = text.strip()
    if s in ("R", "ℝ"):
        return full()
    try:
        if s.startswith("{") and s.endswith("}"):
            return singleton(number(s[1:-1]))
        if len(s) < 5 or s[0] not in "[(" or s[-1] not in "])" or "," not in s:
            raise ParseError(f"cannot parse interval {text!r}")
        lo_txt, hi_txt = (p.strip() for p in s[1:-1].split(",", 1))
        lo_closed, hi_closed = s[0] == "[", s[-1] == "]"
        if lo_txt.lower() in _NEG_INF:
            if lo_closed:
                raise ParseError("-inf cannot be a closed endpoint")
            lo = None
        else:
            lo = number(lo_txt)
        if hi_txt.lower() in _INF:
            if hi_closed:
                raise ParseError("inf cannot be a closed endpoint")
            hi = None
        else:
            hi = number(hi_txt)
        return from_bounds(lo, lo_closed, hi, hi_closed)
    except ValueError as exc:
        if isinstance(exc, (ParseError, EmptyInterval)):
            raise
        raise ParseError(f"cannot parse interval {text!r}: {exc}") from exc
