"""Concrete syntax for the first-order bilattice logics.

Grammar (ASCII forms; unary operators bind tightest, quantifier scope
extends maximally to the right):

    unary:       ~ (negation)   # (designatedness)   @ (crisp test, fuzzy only)
                 ! (bivalent negation, sugar)         % (normality, sugar)
    binary:      &&  >  &  >  ||  >  |  >  =>   (=> right-associative, sugar)
    quantifiers: forall x. / exists x.  (inner)    Pi x. / Sigma x.  (outer)
    atoms:       Name(t1,...,tn); zero-ary written bare; existence E!(t)

Unicode synonyms accepted by the lexer: ¬ ∧ ∨ → ∀ ∃ Π Σ Δ ∘ ▲ ~.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union

from .values import Mode

#: Name of the distinguished unary existence predicate.
EXISTENCE = "E!"

QUANT_KEYWORDS = ("forall", "exists", "Pi", "Sigma")


class ParseError(ValueError):
    """Syntax error with a 1-based source column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position})")
        self.position = position


class SignatureError(ValueError):
    """Inconsistent or conflicting symbol declarations."""


# ---------------------------------------------------------------------------
# Terms and formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Const:
    name: str

    def __str__(self):
        return self.name


Term = Union[Var, Const]


class Formula:
    """Base class for formula AST nodes."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    pred: str
    args: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True, slots=True)
class Neg(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class BdDelta(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class BaazDelta(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class BivalentNeg(Formula):  # sugar: ~# body
    body: Formula


@dataclass(frozen=True, slots=True)
class Circ(Formula):  # sugar: normality indicator
    body: Formula


@dataclass(frozen=True, slots=True)
class WeakAnd(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class WeakOr(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class StrongAnd(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class StrongOr(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):  # sugar
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class OuterForall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class OuterExists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class InnerForall(Formula):  # sugar: relativized to the inner domain
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class InnerExists(Formula):  # sugar
    var: str
    body: Formula


_UNARY_SYMBOL = {Neg: "~", BdDelta: "#", BaazDelta: "@", BivalentNeg: "!", Circ: "%"}
_BINARY_SYMBOL = {Implies: "=>", WeakOr: "|", StrongOr: "||", WeakAnd: "&", StrongAnd: "&&"}
_QUANT_KEYWORD = {
    InnerForall: "forall",
    InnerExists: "exists",
    OuterForall: "Pi",
    OuterExists: "Sigma",
}
#: Binding strength of the binary connectives (higher binds tighter).
_PREC = {Implies: 1, WeakOr: 2, StrongOr: 3, WeakAnd: 4, StrongAnd: 5}
_UNARY_PREC = 6

_FUZZY_ONLY = ("&&", "||", "@")


# ---------------------------------------------------------------------------
# Signature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """Predicate symbols with arities plus constant symbols."""

    predicates: Mapping[str, int]
    constants: frozenset[str]

    def __init__(self, predicates=(), constants=()):
        preds = dict(predicates)
        consts = frozenset(constants)
        for name, arity in preds.items():
            if arity < 0:
                raise SignatureError(f"negative arity for predicate {name}")
        clash = set(preds) & consts
        if clash:
            raise SignatureError(
                f"names used as both predicate and constant: {sorted(clash)}"
            )
        object.__setattr__(self, "predicates", preds)
        object.__setattr__(self, "constants", consts)

    @property
    def has_existence(self) -> bool:
        return self.predicates.get(EXISTENCE) == 1

    def with_existence(self) -> "Signature":
        if self.has_existence:
            return self
        if EXISTENCE in self.predicates:
            raise SignatureError(f"{EXISTENCE} must be unary")
        preds = dict(self.predicates)
        preds[EXISTENCE] = 1
        return Signature(preds, self.constants)

    def merged(self, other: "Signature") -> "Signature":
        preds = dict(self.predicates)
        for name, arity in other.predicates.items():
            if preds.setdefault(name, arity) != arity:
                raise SignatureError(
                    f"predicate {name} used with arities {preds[name]} and {arity}"
                )
        return Signature(preds, self.constants | other.constants)


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_CHAR_ALIASES = {
    "¬": "!",
    "∧": "&",
    "∨": "|",
    "Δ": "@",
    "∘": "%",
    "▲": "#",
    "∼": "~",
}
_WORD_ALIASES = {"∀": "forall", "∃": "exists", "Π": "Pi", "Σ": "Sigma"}


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # "name", "op", "lparen", "rparen", "comma", "dot", "end"
    text: str
    pos: int  # 1-based column


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        pos = i + 1
        if ch.isspace():
            i += 1
            continue
        if ch in _WORD_ALIASES:
            tokens.append(_Token("name", _WORD_ALIASES[ch], pos))
            i += 1
            continue
        ch = _CHAR_ALIASES.get(ch, ch)
        if ch == "→":
            tokens.append(_Token("op", "=>", pos))
            i += 1
            continue
        if text.startswith(("&&", "||", "=>"), i):
            tokens.append(_Token("op", text[i : i + 2], pos))
            i += 2
            continue
        if ch in "~#@!%&|":
            tokens.append(_Token("op", ch, pos))
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("lparen", ch, pos))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ch, pos))
            i += 1
            continue
        if ch == ",":
            tokens.append(_Token("comma", ch, pos))
            i += 1
            continue
        if ch == ".":
            tokens.append(_Token("dot", ch, pos))
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            if name == "E" and j < n and text[j] == "!":
                name = EXISTENCE
                j += 1
            tokens.append(_Token("name", name, pos))
            i = j
            continue
        raise ParseError(f"unexpected character {text[i]!r}", pos)
    tokens.append(_Token("end", "", n + 1))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens, mode, sig, variables):
        self.tokens = tokens
        self.i = 0
        self.mode = mode
        self.sig = sig
        self.variables = frozenset(variables)
        self.bound: list[str] = []
        # Observed arities, used when no signature is given.
        self.seen_preds: dict[str, int] = {}
        self.seen_consts: set[str] = set()

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = repr(tok.text) if tok.kind != "end" else "end of input"
            raise ParseError(f"expected {what}, found {found}", tok.pos)
        return self.take()

    def parse(self) -> Formula:
        f = self.formula()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
        return f

    def formula(self) -> Formula:
        left = self.binary(2)
        tok = self.peek()
        if tok.kind == "op" and tok.text == "=>":
            self.take()
            return Implies(left, self.formula())  # right-associative
        return left

    _BINARY_LEVELS = {2: "|", 3: "||", 4: "&", 5: "&&"}

    def binary(self, level: int) -> Formula:
        if level > 5:
            return self.unary()
        symbol = self._BINARY_LEVELS[level]
        left = self.binary(level + 1)
        while True:
            tok = self.peek()
            if tok.kind != "op" or tok.text != symbol:
                return left
            self.check_mode(tok)
            self.take()
            right = self.binary(level + 1)
            left = _BINARY_NODE[symbol](left, right)

    def check_mode(self, tok: _Token):
        if self.mode is Mode.BD4 and tok.text in _FUZZY_ONLY:
            raise ParseError(
                f"connective {tok.text!r} is not available in bd4 mode", tok.pos
            )

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "op":
            if tok.text in _UNARY_NODE:
                self.check_mode(tok)
                self.take()
                return _UNARY_NODE[tok.text](self.unary())
            raise ParseError(f"unexpected operator {tok.text!r}", tok.pos)
        if tok.kind == "lparen":
            self.take()
            f = self.formula()
            self.expect("rparen", "')'")
            return f
        if tok.kind == "name":
            if tok.text in QUANT_KEYWORDS:
                return self.quantifier()
            return self.atom()
        found = repr(tok.text) if tok.kind != "end" else "end of input"
        raise ParseError(f"expected a formula, found {found}", tok.pos)

    def quantifier(self) -> Formula:
        kw = self.take()
        var = self.expect("name", "a variable name")
        if var.text in QUANT_KEYWORDS:
            raise ParseError(f"{var.text!r} is a reserved word", var.pos)
        self.expect("dot", "'.'")
        self.bound.append(var.text)
        try:
            body = self.formula()
        finally:
            self.bound.pop()
        return _QUANT_NODE[kw.text](var.text, body)

    def atom(self) -> Formula:
        name = self.take()
        args: list[Term] = []
        if self.peek().kind == "lparen":
            self.take()
            if self.peek().kind != "rparen":
                args.append(self.term())
                while self.peek().kind == "comma":
                    self.take()
                    args.append(self.term())
            self.expect("rparen", "')' or ','")
        arity = len(args)
        if self.sig is not None:
            declared = self.sig.predicates.get(name.text)
            if declared is None:
                raise ParseError(f"unknown predicate {name.text!r}", name.pos)
            if declared != arity:
                raise ParseError(
                    f"predicate {name.text!r} expects {declared} argument(s), got {arity}",
                    name.pos,
                )
        else:
            seen = self.seen_preds.setdefault(name.text, arity)
            if seen != arity:
                raise ParseError(
                    f"predicate {name.text!r} used with arities {seen} and {arity}",
                    name.pos,
                )
            if name.text in self.seen_consts:
                raise ParseError(
                    f"{name.text!r} used as both predicate and constant", name.pos
                )
        return Atom(name.text, tuple(args))

    def term(self) -> Term:
        tok = self.expect("name", "a term")
        if tok.text in QUANT_KEYWORDS:
            raise ParseError(f"{tok.text!r} is a reserved word", tok.pos)
        if tok.text in self.bound or tok.text in self.variables:
            return Var(tok.text)
        if self.sig is not None:
            if tok.text not in self.sig.constants:
                raise ParseError(f"unknown constant {tok.text!r}", tok.pos)
        else:
            if tok.text in self.seen_preds:
                raise ParseError(
                    f"{tok.text!r} used as both predicate and constant", tok.pos
                )
            self.seen_consts.add(tok.text)
        return Const(tok.text)


_UNARY_NODE = {"~": Neg, "#": BdDelta, "@": BaazDelta, "!": BivalentNeg, "%": Circ}
_BINARY_NODE = {"&": WeakAnd, "&&": StrongAnd, "|": WeakOr, "||": StrongOr}
_QUANT_NODE = {
    "forall": InnerForall,
    "exists": InnerExists,
    "Pi": OuterForall,
    "Sigma": OuterExists,
}


def parse(
    text: str,
    sig: Optional[Signature] = None,
    mode: Mode = Mode.BD4,
    variables: Iterable[str] = (),
) -> Formula:
    """Parse a formula.

    With a signature, every symbol must be declared and arities are
    enforced (strict mode); without one, arities are inferred from use.
    Identifiers bound by an enclosing quantifier, or listed in
    ``variables``, parse as variables; all other term-position
    identifiers are constants.
    """
    return _Parser(_tokenize(text), mode, sig, variables).parse()


def iter_formula_lines(text: str) -> Iterator[tuple[int, str]]:
    """Yield (line number, formula text) from a formula file.

    Blank lines and lines starting with '#' are skipped.
    """
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        yield lineno, line


# ---------------------------------------------------------------------------
# Desugaring
# ---------------------------------------------------------------------------


def desugar(f: Formula, mode: Mode = Mode.BD4, sig: Optional[Signature] = None) -> Formula:
    """Expand sugar nodes into primitive connectives.

    Bivalent negation becomes ~#, implication and the normality
    indicator expand through the weak connectives in bd4 mode and the
    strong ones in lbd mode, and the inner quantifiers relativize to the
    existence predicate.  The result contains only primitive node kinds
    and desugaring is idempotent.
    """
    disj = StrongOr if mode is Mode.LBD else WeakOr

    def existence_guard(var: str) -> Formula:
        if sig is not None and not sig.has_existence:
            raise SignatureError(
                f"inner quantifier used but the signature lacks {EXISTENCE}"
            )
        return Atom(EXISTENCE, (Var(var),))

    def walk(f: Formula) -> Formula:
        match f:
            case Atom():
                return f
            case Neg(b):
                return Neg(walk(b))
            case BdDelta(b):
                return BdDelta(walk(b))
            case BaazDelta(b):
                return BaazDelta(walk(b))
            case BivalentNeg(b):
                return Neg(BdDelta(walk(b)))
            case Circ(b):
                db = walk(b)
                conj = StrongAnd if mode is Mode.LBD else WeakAnd
                return conj(
                    disj(BdDelta(db), BdDelta(Neg(db))),
                    disj(Neg(BdDelta(db)), Neg(BdDelta(Neg(db)))),
                )
            case WeakAnd(l, r):
                return WeakAnd(walk(l), walk(r))
            case WeakOr(l, r):
                return WeakOr(walk(l), walk(r))
            case StrongAnd(l, r):
                return StrongAnd(walk(l), walk(r))
            case StrongOr(l, r):
                return StrongOr(walk(l), walk(r))
            case Implies(l, r):
                return disj(Neg(walk(l)), walk(r))
            case OuterForall(x, b):
                return OuterForall(x, walk(b))
            case OuterExists(x, b):
                return OuterExists(x, walk(b))
            case InnerForall(x, b):
                return OuterForall(x, disj(Neg(existence_guard(x)), walk(b)))
            case InnerExists(x, b):
                return OuterExists(x, WeakAnd(existence_guard(x), walk(b)))
        raise TypeError(f"not a formula node: {f!r}")

    return walk(f)


# ---------------------------------------------------------------------------
# Analysis
# ---------------------------------------------------------------------------


def free_vars(f: Formula) -> frozenset[str]:
    """Variable names occurring free in f."""
    match f:
        case Atom(_, args):
            return frozenset(t.name for t in args if isinstance(t, Var))
        case Neg(b) | BdDelta(b) | BaazDelta(b) | BivalentNeg(b) | Circ(b):
            return free_vars(b)
        case (
            WeakAnd(l, r)
            | WeakOr(l, r)
            | StrongAnd(l, r)
            | StrongOr(l, r)
            | Implies(l, r)
        ):
            return free_vars(l) | free_vars(r)
        case (
            OuterForall(x, b)
            | OuterExists(x, b)
            | InnerForall(x, b)
            | InnerExists(x, b)
        ):
            return free_vars(b) - {x}
    raise TypeError(f"not a formula node: {f!r}")


def collect_signature(f: Formula) -> Signature:
    """All predicate symbols (with observed arities) and constants in f.

    Inner quantifiers imply the existence predicate, which is included
    even before desugaring.
    """
    preds: dict[str, int] = {}
    consts: set[str] = set()

    def walk(f: Formula):
        match f:
            case Atom(p, args):
                if preds.setdefault(p, len(args)) != len(args):
                    raise SignatureError(
                        f"predicate {p} used with arities {preds[p]} and {len(args)}"
                    )
                for t in args:
                    if isinstance(t, Const):
                        consts.add(t.name)
            case Neg(b) | BdDelta(b) | BaazDelta(b) | BivalentNeg(b) | Circ(b):
                walk(b)
            case (
                WeakAnd(l, r)
                | WeakOr(l, r)
                | StrongAnd(l, r)
                | StrongOr(l, r)
                | Implies(l, r)
            ):
                walk(l)
                walk(r)
            case InnerForall(_, b) | InnerExists(_, b):
                if preds.setdefault(EXISTENCE, 1) != 1:
                    raise SignatureError(f"{EXISTENCE} must be unary")
                walk(b)
            case OuterForall(_, b) | OuterExists(_, b):
                walk(b)
            case _:
                raise TypeError(f"not a formula node: {f!r}")

    walk(f)
    return Signature(preds, consts)


# ---------------------------------------------------------------------------
# Pretty-printing
# ---------------------------------------------------------------------------


def pretty_print(f: Formula) -> str:
    """Render with minimal parentheses; parse(pretty_print(f)) == f."""
    return _pp(f, 0, True)


def _pp(f: Formula, min_prec: int, rightmost: bool) -> str:
    kind = type(f)
    if kind is Atom:
        if not f.args:
            return f.pred
        return f"{f.pred}({', '.join(t.name for t in f.args)})"
    if kind in _QUANT_KEYWORD:
        s = f"{_QUANT_KEYWORD[kind]} {f.var}. {_pp(f.body, 0, True)}"
        # The quantifier swallows everything to its right, so it only
        # needs parentheses when more input follows.
        return s if rightmost else f"({s})"
    if kind in _UNARY_SYMBOL:
        return _UNARY_SYMBOL[kind] + _pp(f.body, _UNARY_PREC, rightmost)
    prec = _PREC[kind]
    wrap = prec < min_prec
    inner_rightmost = True if wrap else rightmost
    if kind is Implies:
        s = (
            _pp(f.lhs, prec + 1, False)
            + f" {_BINARY_SYMBOL[kind]} "
            + _pp(f.rhs, prec, inner_rightmost)
        )
    else:
        s = (
            _pp(f.lhs, prec, False)
            + f" {_BINARY_SYMBOL[kind]} "
            + _pp(f.rhs, prec + 1, inner_rightmost)
        )
    return f"({s})" if wrap else s


def ast_dump(f: Formula) -> str:
    """Compact constructor-style dump, e.g. InnerForall(x, Atom(P, x))."""
    kind = type(f)
    if kind is Atom:
        return f"Atom({', '.join([f.pred] + [t.name for t in f.args])})"
    if kind in _QUANT_KEYWORD:
        return f"{kind.__name__}({f.var}, {ast_dump(f.body)})"
    if kind in _UNARY_SYMBOL:
        return f"{kind.__name__}({ast_dump(f.body)})"
    return f"{kind.__name__}({ast_dump(f.lhs)}, {ast_dump(f.rhs)})"


# ---------------------------------------------------------------------------
# Random formulas (used by the test suite; deterministic under a seeded rng)
# ---------------------------------------------------------------------------


def random_formula(
    rng: random.Random,
    sig: Signature,
    mode: Mode = Mode.BD4,
    depth: int = 4,
    variables: tuple[str, ...] = (),
) -> Formula:
    """A random formula over sig, usable for round-trip and model tests."""
    unary = [Neg, BdDelta, BivalentNeg, Circ]
    binary = [WeakAnd, WeakOr, Implies]
    if mode is Mode.LBD:
        unary.append(BaazDelta)
        binary += [StrongAnd, StrongOr]
    quants = [OuterForall, OuterExists]
    if sig.has_existence:
        quants += [InnerForall, InnerExists]

    def term(vars_in_scope) -> Term:
        pool = list(vars_in_scope) + sorted(sig.constants)
        if not pool:
            raise ValueError("signature has no constants and no variable in scope")
        name = rng.choice(pool)
        return Var(name) if name in vars_in_scope else Const(name)

    def atom(vars_in_scope) -> Formula:
        pred = rng.choice(sorted(sig.predicates))
        arity = sig.predicates[pred]
        return Atom(pred, tuple(term(vars_in_scope) for _ in range(arity)))

    def build(d, vars_in_scope) -> Formula:
        if d <= 0 or rng.random() < 0.25:
            return atom(vars_in_scope)
        roll = rng.random()
        if roll < 0.35:
            return rng.choice(unary)(build(d - 1, vars_in_scope))
        if roll < 0.8:
            node = rng.choice(binary)
            return node(build(d - 1, vars_in_scope), build(d - 1, vars_in_scope))
        var = f"x{len(vars_in_scope)}"
        node = rng.choice(quants)
        return node(var, build(d - 1, vars_in_scope + (var,)))

    return build(depth, tuple(variables))
