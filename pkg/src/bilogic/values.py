"""Truth values of the four-valued bilattice and its fuzzy square.

A truth value is a pair of degrees: how true a proposition is (``pos``)
and, independently, how false it is (``neg``).  In the four-valued
carrier both components are exact bits, giving the values T, F, N, B.
In the fuzzy carrier both components range over the unit interval;
components may be binary floats (general evaluation) or exact
``Fraction`` grid degrees (search), and the arithmetic itself is never
toleranced.

All operations here are pure functions on immutable values and are safe
to call concurrently.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Degree = Union[int, float, Fraction]

#: Absolute tolerance used when *classifying* float-valued results
#: (designated / normal / gappy / glutty).  Exact carriers compare exactly.
CLASSIFY_TOL = 1e-9


class Mode(enum.Enum):
    """Logic mode; also serves as the carrier tag of a truth value."""

    BD4 = "bd4"
    LBD = "lbd"


def _is_one(x: Degree) -> bool:
    if isinstance(x, float):
        return abs(x - 1.0) <= CLASSIFY_TOL
    return x == 1


@dataclass(frozen=True, slots=True)
class TruthValue:
    """A ``<pos,neg>`` pair over the four-valued or fuzzy carrier."""

    pos: Degree
    neg: Degree
    carrier: Mode

    def __post_init__(self):
        pos, neg = self.pos, self.neg
        if isinstance(pos, bool):
            pos = int(pos)
        if isinstance(neg, bool):
            neg = int(neg)
        if self.carrier is Mode.BD4:
            if pos not in (0, 1) or neg not in (0, 1):
                raise ValueError(
                    f"four-valued components must be 0 or 1, got <{pos},{neg}>"
                )
            pos, neg = int(pos), int(neg)
        else:
            if not (0 <= pos <= 1) or not (0 <= neg <= 1):
                raise ValueError(
                    f"fuzzy components must lie in [0, 1], got <{pos},{neg}>"
                )
        object.__setattr__(self, "pos", pos)
        object.__setattr__(self, "neg", neg)

    def to_fuzzy(self) -> "TruthValue":
        """Embed into the fuzzy carrier (corners map to corners)."""
        if self.carrier is Mode.LBD:
            return self
        return TruthValue(self.pos, self.neg, Mode.LBD)

    @property
    def is_designated(self) -> bool:
        """True to the full degree (positive component equal to 1)."""
        return _is_one(self.pos)

    @property
    def is_normal(self) -> bool:
        """Components sum to 1 (four-valued: T or F)."""
        s = self.pos + self.neg
        if isinstance(s, float):
            return abs(s - 1.0) <= CLASSIFY_TOL
        return s == 1

    @property
    def is_gappy(self) -> bool:
        s = self.pos + self.neg
        if isinstance(s, float):
            return s < 1.0 - CLASSIFY_TOL
        return s < 1

    @property
    def is_glutty(self) -> bool:
        s = self.pos + self.neg
        if isinstance(s, float):
            return s > 1.0 + CLASSIFY_TOL
        return s > 1

    @property
    def is_corner(self) -> bool:
        """Exactly one of T, F, N, B (exact comparison, no tolerance)."""
        return self.pos in (0, 1) and self.neg in (0, 1)

    def corner_name(self) -> str | None:
        if not self.is_corner:
            return None
        return {(1, 0): "T", (0, 1): "F", (0, 0): "N", (1, 1): "B"}[
            (int(self.pos), int(self.neg))
        ]

    def __str__(self) -> str:
        name = self.corner_name()
        if name is not None:
            return name
        return f"<{_fmt_degree(self.pos)},{_fmt_degree(self.neg)}>"


def _fmt_degree(x: Degree) -> str:
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return repr(x)


@dataclass(frozen=True, slots=True)
class Classification:
    designated: bool
    normal: bool
    gappy: bool
    glutty: bool


TRUE = TruthValue(1, 0, Mode.BD4)
FALSE = TruthValue(0, 1, Mode.BD4)
NEITHER = TruthValue(0, 0, Mode.BD4)
BOTH = TruthValue(1, 1, Mode.BD4)

#: Canonical table order of the four values.
CORNERS = (TRUE, BOTH, NEITHER, FALSE)

_CORNER_BY_NAME = {"T": TRUE, "F": FALSE, "N": NEITHER, "B": BOTH}

_VALUE_RE = re.compile(r"^<\s*([^,<>\s]+)\s*,\s*([^,<>\s]+)\s*>$")


def parse_value(text: str, carrier: Mode = Mode.BD4, exact: bool = False) -> TruthValue:
    """Parse ``T``/``F``/``N``/``B`` or a ``<pos,neg>`` pair.

    Numeric components become ints when integral, otherwise floats, or
    exact Fractions when ``exact`` is set.
    """
    text = text.strip()
    corner = _CORNER_BY_NAME.get(text)
    if corner is not None:
        return corner if carrier is Mode.BD4 else corner.to_fuzzy()
    m = _VALUE_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse truth value {text!r}")
    return TruthValue(
        _parse_degree(m.group(1), exact), _parse_degree(m.group(2), exact), carrier
    )


def _parse_degree(text: str, exact: bool) -> Degree:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError) as err:
        raise ValueError(f"cannot parse degree {text!r}") from err
    if q.denominator == 1:
        return int(q)
    return q if exact else float(q)


def _align(u: TruthValue, v: TruthValue) -> tuple[TruthValue, TruthValue]:
    """Lift a four-valued operand to the fuzzy carrier when mixed."""
    if u.carrier is v.carrier:
        return u, v
    return u.to_fuzzy(), v.to_fuzzy()


# ---------------------------------------------------------------------------
# Primitive connectives.  The component formulas are written so that exact
# inputs (ints, Fractions) give exact outputs; clamping with the literals
# 0 and 1 is exact in every carrier.
# ---------------------------------------------------------------------------


def bd_neg(u: TruthValue) -> TruthValue:
    """Bilattice negation: swaps the truth and falsity components."""
    return TruthValue(u.neg, u.pos, u.carrier)


def weak_and(u: TruthValue, v: TruthValue) -> TruthValue:
    """Lattice conjunction: meet in the truth order."""
    u, v = _align(u, v)
    return TruthValue(min(u.pos, v.pos), max(u.neg, v.neg), u.carrier)


def weak_or(u: TruthValue, v: TruthValue) -> TruthValue:
    """Lattice disjunction: join in the truth order."""
    u, v = _align(u, v)
    return TruthValue(max(u.pos, v.pos), min(u.neg, v.neg), u.carrier)


def bd_delta(u: TruthValue) -> TruthValue:
    """Indicator of designated values; the result is always fully normal."""
    return TruthValue(u.pos, 1 - u.pos, u.carrier)


def strong_and(u: TruthValue, v: TruthValue) -> TruthValue:
    """Lukasiewicz strong conjunction; four-valued inputs embed at corners."""
    u, v = u.to_fuzzy(), v.to_fuzzy()
    return TruthValue(max(u.pos + v.pos - 1, 0), min(u.neg + v.neg, 1), Mode.LBD)


def strong_or(u: TruthValue, v: TruthValue) -> TruthValue:
    """Lukasiewicz strong disjunction, the dual of strong_and."""
    u, v = u.to_fuzzy(), v.to_fuzzy()
    return TruthValue(min(u.pos + v.pos, 1), max(u.neg + v.neg - 1, 0), Mode.LBD)


def baaz_delta(u: TruthValue) -> TruthValue:
    """Crisp designatedness test: T when pos is exactly 1, else F."""
    u = u.to_fuzzy()
    if u.pos == 1:
        return TruthValue(1, 0, Mode.LBD)
    return TruthValue(0, 1, Mode.LBD)


# ---------------------------------------------------------------------------
# Derived connectives, in closed form.  Their defining expansions live in
# the syntax module's desugaring; agreement of the two routes is a tested
# property, not an assumption.
# ---------------------------------------------------------------------------


def bivalent_neg(u: TruthValue) -> TruthValue:
    """Classical-style negation: flips designatedness, always normal."""
    return TruthValue(1 - u.pos, u.pos, u.carrier)


def implies(u: TruthValue, v: TruthValue) -> TruthValue:
    """Material implication; weak on the four-valued carrier, strong on fuzzy."""
    u, v = _align(u, v)
    if u.carrier is Mode.BD4:
        return TruthValue(max(u.neg, v.pos), min(u.pos, v.neg), Mode.BD4)
    return TruthValue(min(u.neg + v.pos, 1), max(u.pos + v.neg - 1, 0), Mode.LBD)


def circ(u: TruthValue) -> TruthValue:
    """Normality indicator: designated exactly at values whose components sum to 1."""
    d = abs(u.pos + u.neg - 1)
    return TruthValue(1 - d, d, u.carrier)


def leq_t(u: TruthValue, v: TruthValue) -> bool:
    """Truth order: more true and less false."""
    u, v = _align(u, v)
    return u.pos <= v.pos and u.neg >= v.neg


def leq_i(u: TruthValue, v: TruthValue) -> bool:
    """Information order: more true and more false."""
    u, v = _align(u, v)
    return u.pos <= v.pos and u.neg <= v.neg


def classify(u: TruthValue) -> Classification:
    return Classification(u.is_designated, u.is_normal, u.is_gappy, u.is_glutty)


# ---------------------------------------------------------------------------
# Grid degrees: exact rationals on the uniform grid {0, 1/g, ..., 1}.
# Backed by fractions.Fraction; the connectives above are closed over any
# fixed grid, so no rounding ever occurs during search.
# ---------------------------------------------------------------------------


def grid_degree(numerator: int, g: int) -> Fraction:
    """The exact degree numerator/g; numerator must lie in 0..g."""
    if g < 1:
        raise ValueError(f"grid granularity must be >= 1, got {g}")
    if not 0 <= numerator <= g:
        raise ValueError(f"grid numerator must lie in 0..{g}, got {numerator}")
    return Fraction(numerator, g)


def grid_degrees(g: int) -> tuple[Fraction, ...]:
    """All g+1 degrees of the grid, ascending."""
    return tuple(grid_degree(k, g) for k in range(g + 1))


def on_grid(x: Degree, g: int) -> bool:
    """Whether x is representable as k/g with k in 0..g."""
    if not 0 <= x <= 1:
        return False
    q = Fraction(x) * g
    return q.denominator == 1


def grid_values(g: int) -> tuple[TruthValue, ...]:
    """All (g+1)^2 fuzzy grid values in canonical enumeration order.

    Rows run from fully true downward (pos descending), columns from not
    false upward (neg ascending); at g=1 this reproduces the four-valued
    order T, B, N, F.
    """
    if g < 1:
        raise ValueError(f"grid granularity must be >= 1, got {g}")
    out = []
    for i in range(g, -1, -1):
        for j in range(g + 1):
            out.append(TruthValue(grid_degree(i, g), grid_degree(j, g), Mode.LBD))
    return tuple(out)
