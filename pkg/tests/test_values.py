"""Unit tests for the truth-value algebra."""

import itertools
from fractions import Fraction

import pytest

from bilogic import (
    BOTH,
    CORNERS,
    FALSE,
    NEITHER,
    TRUE,
    Mode,
    TruthValue,
    baaz_delta,
    bd_delta,
    bd_neg,
    bivalent_neg,
    circ,
    classify,
    grid_degree,
    grid_degrees,
    grid_values,
    implies,
    leq_i,
    leq_t,
    on_grid,
    parse_value,
    strong_and,
    strong_or,
    weak_and,
    weak_or,
)

from tables import BINARY_TABLES, CORNER, ORDER, UNARY_TABLES


def fz(p, n):
    """Exact fuzzy value from decimal strings, e.g. fz('0.7', '0.4')."""
    return TruthValue(Fraction(p), Fraction(n), Mode.LBD)


FUZZY_CORNERS = tuple(c.to_fuzzy() for c in CORNERS)


# ---------------------------------------------------------------------------
# Construction and constants
# ---------------------------------------------------------------------------


def test_named_constants():
    assert (TRUE.pos, TRUE.neg) == (1, 0)
    assert (FALSE.pos, FALSE.neg) == (0, 1)
    assert (NEITHER.pos, NEITHER.neg) == (0, 0)
    assert (BOTH.pos, BOTH.neg) == (1, 1)


def test_four_valued_components_must_be_bits():
    with pytest.raises(ValueError):
        TruthValue(0.5, 0, Mode.BD4)
    with pytest.raises(ValueError):
        TruthValue(1, 2, Mode.BD4)


def test_fuzzy_components_must_be_in_unit_interval():
    with pytest.raises(ValueError):
        TruthValue(1.2, 0, Mode.LBD)
    with pytest.raises(ValueError):
        TruthValue(0, -0.1, Mode.LBD)
    with pytest.raises(ValueError):
        TruthValue(float("nan"), 0, Mode.LBD)


def test_rendering_and_parsing():
    assert str(TRUE) == "T" and str(BOTH) == "B"
    assert str(fz("0.7", "0.5")) == "<0.7,0.5>"
    assert parse_value("B") == BOTH
    assert parse_value("<0.7,0.5>", Mode.LBD) == TruthValue(0.7, 0.5, Mode.LBD)
    assert parse_value("<1,0>", Mode.LBD) == TRUE.to_fuzzy()
    with pytest.raises(ValueError):
        parse_value("X")


# ---------------------------------------------------------------------------
# Connectives on the corners (table fidelity is re-run in acceptance)
# ---------------------------------------------------------------------------

_UNARY_OPS = {"~": bd_neg, "#": bd_delta, "!": bivalent_neg, "%": circ}
_BINARY_OPS = {"&": weak_and, "|": weak_or, "=>": implies}


@pytest.mark.parametrize("symbol", sorted(_UNARY_OPS))
def test_unary_tables(symbol):
    table = UNARY_TABLES[symbol]
    for a in ORDER:
        assert _UNARY_OPS[symbol](CORNER[a]) == CORNER[table[a]]


@pytest.mark.parametrize("symbol", sorted(_BINARY_OPS))
def test_binary_tables(symbol):
    table = BINARY_TABLES[symbol]
    for a in ORDER:
        for j, b in enumerate(ORDER):
            assert _BINARY_OPS[symbol](CORNER[a], CORNER[b]) == CORNER[table[a][j]]


def test_negation_examples():
    assert bd_neg(BOTH) == BOTH
    assert bd_neg(fz("0.3", "0.8")) == fz("0.8", "0.3")
    for u in CORNERS + (fz("0.2", "0.9"), fz("1", "0.5")):
        assert bd_neg(bd_neg(u)) == u


def test_weak_connective_examples():
    assert weak_and(BOTH, NEITHER) == FALSE
    assert weak_or(BOTH, NEITHER) == TRUE
    for u in CORNERS:
        assert weak_and(TRUE, u) == u
        assert weak_or(FALSE, u) == u
    assert weak_and(fz("0.7", "0.2"), fz("0.4", "0.6")) == fz("0.4", "0.6")
    assert weak_or(fz("0.7", "0.2"), fz("0.4", "0.6")) == fz("0.7", "0.2")


def test_delta_indicator_examples():
    assert bd_delta(BOTH) == TRUE
    assert bd_delta(NEITHER) == FALSE
    assert bd_delta(TRUE) == TRUE
    assert bd_delta(fz("0.6", "0.9")) == fz("0.6", "0.4")
    assert bd_delta(fz("0.6", "0.9")).is_normal


def test_strong_connective_examples():
    assert strong_and(fz("0.7", "0.4"), fz("0.6", "0.5")) == fz("0.3", "0.9")
    assert strong_or(fz("0.7", "0.4"), fz("0.6", "0.5")) == fz("1", "0")
    assert strong_and(BOTH, NEITHER) == FALSE.to_fuzzy()
    # unit laws on fully normal values
    for k in range(11):
        u = TruthValue(Fraction(k, 10), Fraction(10 - k, 10), Mode.LBD)
        assert strong_and(u, TRUE) == u
        assert strong_or(u, FALSE) == u


def test_strong_de_morgan_exhaustive_on_grid():
    vals = grid_values(6)
    for u, v in itertools.product(vals, repeat=2):
        assert bd_neg(strong_or(u, v)) == strong_and(bd_neg(u), bd_neg(v))
        assert bd_neg(strong_and(u, v)) == strong_or(bd_neg(u), bd_neg(v))


def test_weak_de_morgan_exhaustive_on_grid():
    vals = CORNERS + grid_values(6)
    for u, v in itertools.product(vals, repeat=2):
        assert bd_neg(weak_and(u, v)) == weak_or(bd_neg(u), bd_neg(v))
        assert bd_neg(weak_or(u, v)) == weak_and(bd_neg(u), bd_neg(v))


def test_baaz_delta():
    assert baaz_delta(fz("1", "0.7")) == TRUE.to_fuzzy()
    assert baaz_delta(fz("0.9", "0")) == FALSE.to_fuzzy()
    assert baaz_delta(TRUE.to_fuzzy()) == TRUE.to_fuzzy()
    for u in grid_values(5):
        out = baaz_delta(u)
        assert out in (TRUE.to_fuzzy(), FALSE.to_fuzzy())
        assert out.is_normal


def test_derived_connective_examples():
    assert bivalent_neg(BOTH) == FALSE
    assert circ(BOTH) == FALSE
    assert implies(NEITHER, BOTH) == TRUE
    assert circ(TRUE) == TRUE and circ(FALSE) == TRUE
    assert circ(fz("0.7", "0.5")) == fz("0.8", "0.2")


def test_derived_connectives_via_float_arithmetic():
    u = TruthValue(0.25, 0.5, Mode.LBD)
    out = circ(u)
    assert out.pos == pytest.approx(0.75) and out.neg == pytest.approx(0.25)
    out = implies(TruthValue(0.75, 0.25, Mode.LBD), TruthValue(0.5, 0.5, Mode.LBD))
    assert out.pos == pytest.approx(0.75) and out.neg == pytest.approx(0.25)


# ---------------------------------------------------------------------------
# Orders and classification
# ---------------------------------------------------------------------------


def test_truth_order_hasse():
    assert leq_t(FALSE, NEITHER) and leq_t(NEITHER, TRUE)
    assert leq_t(FALSE, BOTH) and leq_t(BOTH, TRUE)
    assert not leq_t(NEITHER, BOTH) and not leq_t(BOTH, NEITHER)
    for u in CORNERS:
        assert leq_t(u, u) and leq_i(u, u)


def test_information_order_hasse():
    assert leq_i(NEITHER, TRUE) and leq_i(NEITHER, FALSE)
    assert leq_i(TRUE, BOTH) and leq_i(FALSE, BOTH)
    assert not leq_i(TRUE, FALSE) and not leq_i(FALSE, TRUE)


def test_order_examples_fuzzy():
    assert leq_i(fz("0.2", "0.5"), fz("0.4", "0.5"))
    assert not leq_t(fz("0.2", "0.5"), fz("0.4", "0.6"))


def test_lattice_laws_on_corners():
    for u, v, w in itertools.product(CORNERS, repeat=3):
        assert weak_and(u, v) == weak_and(v, u)
        assert weak_or(u, v) == weak_or(v, u)
        assert weak_and(u, weak_and(v, w)) == weak_and(weak_and(u, v), w)
        assert weak_or(u, weak_or(v, w)) == weak_or(weak_or(u, v), w)
        assert weak_and(u, weak_or(u, v)) == u
        assert weak_or(u, weak_and(u, v)) == u
    for u in CORNERS:
        assert weak_and(u, u) == u and weak_or(u, u) == u


def test_lattice_laws_on_grid():
    # Floats are exact here: meet and join only compare and copy components.
    vals = [TruthValue(i / 10, j / 10, Mode.LBD) for i in range(11) for j in range(11)]
    for u, v in itertools.product(vals, repeat=2):
        m, j = weak_and(u, v), weak_or(u, v)
        assert leq_t(m, u) and leq_t(m, v) and leq_t(u, j) and leq_t(v, j)
        assert weak_and(u, weak_or(u, v)) == u
        assert weak_or(u, weak_and(u, v)) == u
    for u, v, w in itertools.product(vals[::8], repeat=3):
        assert weak_and(u, weak_and(v, w)) == weak_and(weak_and(u, v), w)
        assert weak_or(u, weak_or(v, w)) == weak_or(weak_or(u, v), w)


def test_meet_join_characterize_truth_order():
    vals = grid_values(4)
    for u, v in itertools.product(vals, repeat=2):
        assert leq_t(u, v) == (weak_and(u, v) == u)
        assert leq_t(u, v) == (weak_or(u, v) == v)


def test_classification():
    assert classify(BOTH).designated and classify(BOTH).glutty
    c = classify(TRUE)
    assert c.designated and c.normal and not c.gappy and not c.glutty
    c = classify(fz("1", "0.4"))
    assert c.designated and c.glutty and not c.normal
    c = classify(fz("0.2", "0.3"))
    assert c.gappy and not c.designated
    assert not classify(NEITHER).designated and not classify(FALSE).designated


def test_classification_float_tolerance():
    almost_one = 1.0 - 1e-12
    assert TruthValue(almost_one, 0.0, Mode.LBD).is_designated
    assert TruthValue(0.5, 0.5 - 1e-12, Mode.LBD).is_normal
    assert not TruthValue(0.5, 0.4, Mode.LBD).is_normal


# ---------------------------------------------------------------------------
# Corner agreement and normality preservation (full sweeps in acceptance)
# ---------------------------------------------------------------------------


def test_corner_agreement_strong_equals_weak():
    for u, v in itertools.product(FUZZY_CORNERS, repeat=2):
        assert strong_and(u, v) == weak_and(u, v)
        assert strong_or(u, v) == weak_or(u, v)


def test_corner_agreement_baaz_equals_delta_indicator():
    for u in FUZZY_CORNERS:
        assert baaz_delta(u) == bd_delta(u)


def test_normality_preservation_and_standard_operations():
    g = 8
    normals = [TruthValue(Fraction(k, g), Fraction(g - k, g), Mode.LBD) for k in range(g + 1)]
    for u, v in itertools.product(normals, repeat=2):
        a, b = u.pos, v.pos
        checks = [
            (weak_and(u, v), min(a, b)),
            (weak_or(u, v), max(a, b)),
            (strong_and(u, v), max(a + b - 1, 0)),
            (strong_or(u, v), min(a + b, 1)),
            (implies(u, v), min(1 - a + b, 1)),
        ]
        for out, expected_pos in checks:
            assert out.is_normal
            assert out.pos == expected_pos
    for u in normals:
        assert bd_neg(u).is_normal and bd_neg(u).pos == 1 - u.pos
        assert circ(u) == TRUE.to_fuzzy()


def test_circ_closed_form_matches_expansion_on_grid():
    for u in grid_values(20):
        t, nt = bd_delta(u), bd_delta(bd_neg(u))
        expansion = strong_and(strong_or(t, nt), strong_or(bd_neg(t), bd_neg(nt)))
        assert circ(u) == expansion


# ---------------------------------------------------------------------------
# Grid degrees
# ---------------------------------------------------------------------------


def test_grid_degree_validation():
    assert grid_degree(3, 10) == Fraction(3, 10)
    with pytest.raises(ValueError):
        grid_degree(11, 10)
    with pytest.raises(ValueError):
        grid_degree(-1, 10)
    with pytest.raises(ValueError):
        grid_degree(0, 0)
    assert grid_degrees(2) == (Fraction(0), Fraction(1, 2), Fraction(1))


def test_grid_values_canonical_order():
    assert grid_values(1) == FUZZY_CORNERS
    vals = grid_values(2)
    assert len(vals) == 9
    assert vals[0] == TRUE.to_fuzzy() and vals[-1] == FALSE.to_fuzzy()


def test_grid_closure_no_rounding():
    g = 7
    vals = grid_values(g)
    outputs = []
    for u, v in itertools.product(vals, repeat=2):
        outputs += [
            weak_and(u, v), weak_or(u, v), strong_and(u, v), strong_or(u, v),
            implies(u, v),
        ]
    for u in vals:
        outputs += [bd_neg(u), bd_delta(u), baaz_delta(u), bivalent_neg(u), circ(u)]
    for out in outputs:
        assert on_grid(out.pos, g) and on_grid(out.neg, g)


def test_mixed_carrier_embedding():
    out = weak_and(BOTH, fz("0.5", "0.5"))
    assert out.carrier is Mode.LBD
    assert out == fz("0.5", "1")
    out = strong_or(fz("0.5", "0.5"), NEITHER)
    assert out == fz("0.5", "0")
