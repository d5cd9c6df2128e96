"""Unit tests for the grammar, parser, desugaring, and pretty-printer."""

import random

import pytest

from bilogic import (
    EXISTENCE,
    Atom,
    BaazDelta,
    BdDelta,
    BivalentNeg,
    Circ,
    Const,
    Implies,
    InnerExists,
    InnerForall,
    Mode,
    Neg,
    OuterExists,
    OuterForall,
    ParseError,
    Signature,
    SignatureError,
    StrongAnd,
    StrongOr,
    Var,
    WeakAnd,
    WeakOr,
    ast_dump,
    collect_signature,
    desugar,
    free_vars,
    iter_formula_lines,
    parse,
    pretty_print,
)
from bilogic.syntax import random_formula


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def test_parse_atoms_and_connectives():
    f = parse("P(c) & ~Q(c)")
    assert f == WeakAnd(Atom("P", (Const("c"),)), Neg(Atom("Q", (Const("c"),))))
    assert parse("p") == Atom("p", ())
    assert parse("E!(c)") == Atom(EXISTENCE, (Const("c"),))


def test_parse_quantifiers_bind_variables():
    f = parse("forall x. P(x)")
    assert f == InnerForall("x", Atom("P", (Var("x"),)))
    f = parse("Sigma x. R(x, c)")
    assert f == OuterExists("x", Atom("R", (Var("x"), Const("c"))))
    # identifiers not bound by a quantifier are constants
    f = parse("Pi x. P(x, y)")
    assert f.body.args == (Var("x"), Const("y"))


def test_declared_variables_parse_as_variables():
    f = parse("P(x, y)", variables=["x"])
    assert f.args == (Var("x"), Const("y"))


def test_precedence_chain():
    f = parse("a && b & c || d | e => f", mode=Mode.LBD)
    assert f == Implies(
        WeakOr(
            StrongOr(WeakAnd(StrongAnd(Atom("a", ()), Atom("b", ())), Atom("c", ())),
                     Atom("d", ())),
            Atom("e", ()),
        ),
        Atom("f", ()),
        ), f
    # => is right-associative
    f = parse("a => b => c", mode=Mode.LBD)
    assert f == Implies(Atom("a", ()), Implies(Atom("b", ()), Atom("c", ())))


def test_quantifier_scope_extends_right():
    f = parse("P(c) & forall x. Q(x) | R(x)")
    assert isinstance(f, WeakAnd)
    assert isinstance(f.rhs, InnerForall)
    assert isinstance(f.rhs.body, WeakOr)
    # parenthesized quantifier closes its scope
    f = parse("(Pi x. Q(x)) | R(c)")
    assert isinstance(f, WeakOr) and isinstance(f.lhs, OuterForall)


def test_unary_operators_bind_tightest():
    f = parse("~p & #q")
    assert f == WeakAnd(Neg(Atom("p", ())), BdDelta(Atom("q", ())))
    f = parse("~~p")
    assert f == Neg(Neg(Atom("p", ())))
    f = parse("!p | %q", mode=Mode.LBD)
    assert f == WeakOr(BivalentNeg(Atom("p", ())), Circ(Atom("q", ())))


def test_unicode_aliases():
    ascii_form = parse("forall x. P(x) => ~Q(x) & #R(x)")
    unicode_form = parse("∀ x. P(x) → ∼Q(x) ∧ ▲R(x)")
    assert ascii_form == unicode_form
    assert parse("Δp || ∘q", mode=Mode.LBD) == parse("@p || %q", mode=Mode.LBD)
    assert parse("¬p ∨ q") == parse("!p | q")
    assert parse("Σ y. E!(y)") == parse("Sigma y. E!(y)")
    assert parse("Π y. E!(y)") == parse("Pi y. E!(y)")
    assert parse("∃ y. P(y)") == parse("exists y. P(y)")


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse("P(c")
    assert err.value.position == 4
    with pytest.raises(ParseError):
        parse("P(c))")
    with pytest.raises(ParseError):
        parse("")
    with pytest.raises(ParseError) as err:
        parse("p & $q")
    assert err.value.position == 5


def test_fuzzy_connectives_rejected_in_bd4():
    for text in ("p && q", "p || q", "@p"):
        with pytest.raises(ParseError) as err:
            parse(text, mode=Mode.BD4)
        assert "bd4" in str(err.value)
        parse(text, mode=Mode.LBD)  # accepted in fuzzy mode


def test_strict_mode_checks_signature():
    sig = Signature({"P": 1}, {"c"})
    assert parse("P(c)", sig) == Atom("P", (Const("c"),))
    with pytest.raises(ParseError):
        parse("Q(c)", sig)  # unknown predicate
    with pytest.raises(ParseError):
        parse("P(d)", sig)  # unknown constant
    with pytest.raises(ParseError):
        parse("P(c, c)", sig)  # arity mismatch


def test_inference_mode_checks_consistency():
    with pytest.raises(ParseError):
        parse("P(c) & P(c, c)")
    with pytest.raises(ParseError):
        parse("P(c) & c")  # c used as constant and predicate


def test_reserved_words():
    with pytest.raises(ParseError):
        parse("forall forall. P(forall)")
    with pytest.raises(ParseError):
        parse("P(Sigma)")


# ---------------------------------------------------------------------------
# Desugaring
# ---------------------------------------------------------------------------


def test_desugar_bivalent_negation():
    assert desugar(parse("!p")) == Neg(BdDelta(Atom("p", ())))


def test_desugar_implication_per_mode():
    p, q = Atom("p", ()), Atom("q", ())
    assert desugar(parse("p => q"), Mode.BD4) == WeakOr(Neg(p), q)
    assert desugar(parse("p => q", mode=Mode.LBD), Mode.LBD) == StrongOr(Neg(p), q)


def test_desugar_normality_indicator_per_mode():
    p = Atom("p", ())
    weak = desugar(parse("%p"), Mode.BD4)
    assert weak == WeakAnd(
        WeakOr(BdDelta(p), BdDelta(Neg(p))),
        WeakOr(Neg(BdDelta(p)), Neg(BdDelta(Neg(p)))),
    )
    strong = desugar(parse("%p", mode=Mode.LBD), Mode.LBD)
    assert strong == StrongAnd(
        StrongOr(BdDelta(p), BdDelta(Neg(p))),
        StrongOr(Neg(BdDelta(p)), Neg(BdDelta(Neg(p)))),
    )


def test_desugar_inner_quantifiers():
    guard = Atom(EXISTENCE, (Var("x"),))
    body = Atom("P", (Var("x"),))
    assert desugar(parse("forall x. P(x)"), Mode.BD4) == OuterForall(
        "x", WeakOr(Neg(guard), body)
    )
    assert desugar(parse("forall x. P(x)", mode=Mode.LBD), Mode.LBD) == OuterForall(
        "x", StrongOr(Neg(guard), body)
    )
    # the existential relativizes through weak conjunction in both modes
    assert desugar(parse("exists x. P(x)"), Mode.BD4) == OuterExists(
        "x", WeakAnd(guard, body)
    )
    assert desugar(parse("exists x. P(x)", mode=Mode.LBD), Mode.LBD) == OuterExists(
        "x", WeakAnd(guard, body)
    )


def test_desugar_requires_existence_when_signature_given():
    sig = Signature({"P": 1}, ())
    with pytest.raises(SignatureError):
        desugar(parse("forall x. P(x)"), Mode.BD4, sig)
    desugar(parse("forall x. P(x)"), Mode.BD4, sig.with_existence())


_SUGAR = (BivalentNeg, Implies, Circ, InnerForall, InnerExists)


def _is_primitive(f) -> bool:
    if isinstance(f, _SUGAR):
        return False
    if isinstance(f, Atom):
        return True
    if hasattr(f, "body"):
        return _is_primitive(f.body)
    return _is_primitive(f.lhs) and _is_primitive(f.rhs)


def _contains_strong(f) -> bool:
    if isinstance(f, (StrongAnd, StrongOr, BaazDelta)):
        return True
    if isinstance(f, Atom):
        return False
    if hasattr(f, "body"):
        return _contains_strong(f.body)
    return _contains_strong(f.lhs) or _contains_strong(f.rhs)


def test_desugar_properties_on_random_formulas():
    rng = random.Random(20240811)
    sig = Signature({"P": 1, "Q": 2, "r": 0}, {"c", "d"}).with_existence()
    for mode in (Mode.BD4, Mode.LBD):
        for _ in range(150):
            f = random_formula(rng, sig, mode, depth=5)
            d = desugar(f, mode)
            assert _is_primitive(d)
            assert desugar(d, mode) == d  # idempotent
            assert free_vars(d) == free_vars(f)
            if mode is Mode.BD4 and not _contains_strong(f):
                assert not _contains_strong(d)


# ---------------------------------------------------------------------------
# Free variables and signature collection
# ---------------------------------------------------------------------------


def test_free_vars():
    assert free_vars(Atom("P", (Var("x"), Const("c")))) == {"x"}
    assert free_vars(OuterForall("x", Atom("P", (Var("x"), Var("y"))))) == {"y"}
    assert free_vars(parse("forall x. P(x) & Q(x)")) == frozenset()
    assert free_vars(parse("P(x, c)", variables=["x"])) == {"x"}


def test_collect_signature():
    sig = collect_signature(parse("P(c) & Q(c, d)"))
    assert sig.predicates == {"P": 1, "Q": 2}
    assert sig.constants == {"c", "d"}
    # inner quantifiers imply the existence predicate
    sig = collect_signature(parse("forall x. P(x)"))
    assert sig.predicates == {"P": 1, EXISTENCE: 1}
    assert sig.constants == set()
    # free variables are not constants
    sig = collect_signature(Atom("P", (Var("x"),)))
    assert sig.constants == set()
    with pytest.raises(SignatureError):
        collect_signature(WeakAnd(Atom("P", ()), Atom("P", (Const("c"),))))


def test_signature_merging_and_existence():
    a = Signature({"P": 1}, {"c"})
    b = Signature({"Q": 2}, {"d"})
    merged = a.merged(b)
    assert merged.predicates == {"P": 1, "Q": 2}
    assert merged.constants == {"c", "d"}
    with pytest.raises(SignatureError):
        a.merged(Signature({"P": 2}, ()))
    assert a.with_existence().has_existence
    with pytest.raises(SignatureError):
        Signature({"P": 1}, {"P"})


# ---------------------------------------------------------------------------
# Pretty-printing
# ---------------------------------------------------------------------------


def test_pretty_print_examples():
    a, b, c = Atom("A", ()), Atom("B", ()), Atom("C", ())
    assert pretty_print(WeakAnd(a, WeakOr(b, c))) == "A & (B | C)"
    assert pretty_print(WeakOr(WeakAnd(a, b), c)) == "A & B | C"
    assert pretty_print(Neg(Neg(a))) == "~~A"
    f = InnerForall("x", Implies(Atom("P", (Var("x"),)), Atom("Q", (Var("x"),))))
    assert pretty_print(f) == "forall x. P(x) => Q(x)"


def test_pretty_print_quantifier_parentheses():
    q = OuterForall("x", Atom("P", (Var("x"),)))
    r = Atom("R", ())
    assert pretty_print(WeakAnd(q, r)) == "(Pi x. P(x)) & R"
    assert pretty_print(WeakAnd(r, q)) == "R & Pi x. P(x)"
    assert pretty_print(WeakOr(WeakAnd(r, q), r)) == "R & (Pi x. P(x)) | R"


def test_pretty_print_associativity():
    a, b, c = Atom("A", ()), Atom("B", ()), Atom("C", ())
    assert pretty_print(WeakAnd(WeakAnd(a, b), c)) == "A & B & C"
    assert pretty_print(WeakAnd(a, WeakAnd(b, c))) == "A & (B & C)"
    assert pretty_print(Implies(a, Implies(b, c))) == "A => B => C"
    assert pretty_print(Implies(Implies(a, b), c)) == "(A => B) => C"


def test_ast_dump():
    f = parse("forall x. P(x)")
    assert ast_dump(f) == "InnerForall(x, Atom(P, x))"
    assert ast_dump(parse("p & ~q")) == "WeakAnd(Atom(p), Neg(Atom(q)))"


def test_round_trip_on_random_formulas():
    rng = random.Random(987123)
    sig = Signature({"P": 1, "Q": 2, "r": 0}, {"c", "d"}).with_existence()
    for mode in (Mode.BD4, Mode.LBD):
        for _ in range(250):
            f = random_formula(rng, sig, mode, depth=6)
            text = pretty_print(f)
            assert parse(text, mode=mode) == f, text


# ---------------------------------------------------------------------------
# Formula files
# ---------------------------------------------------------------------------


def test_iter_formula_lines():
    content = "# a comment\nP(c)\n\n  \nQ(c) | P(c)\n#another\n"
    assert list(iter_formula_lines(content)) == [(2, "P(c)"), (5, "Q(c) | P(c)")]
