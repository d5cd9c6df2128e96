"""Models, variable evaluations, and the Tarski-style evaluator.

A model has a finite non-empty outer domain of named elements, constant
denotations, and one table per predicate mapping argument tuples to
truth values.  Tables may be partial but always carry an explicit
default value.  Models are immutable after construction; evaluation is
pure, so one model can serve any number of concurrent evaluations.

Construction is deliberately lenient: ``validate_model`` reports
problems as data instead of raising, so malformed models can be loaded,
inspected, and reported on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from . import values as V
from .values import Mode, TruthValue
from .syntax import (
    EXISTENCE,
    Atom,
    BaazDelta,
    BdDelta,
    Formula,
    Neg,
    OuterExists,
    OuterForall,
    Signature,
    StrongAnd,
    StrongOr,
    Var,
    WeakAnd,
    WeakOr,
    desugar,
    free_vars,
)


class ModelError(ValueError):
    """A model file or model structure that cannot be used at all."""


class EvalError(ValueError):
    """Evaluation failed: unknown symbol, unassigned variable, bad node."""


#: A variable evaluation: names of free variables mapped to domain elements.
Environment = Mapping[str, str]


@dataclass(frozen=True)
class PredicateTable:
    """Interpretation of one predicate: tuple map plus mandatory default."""

    arity: int
    entries: Mapping[tuple[str, ...], TruthValue]
    default: TruthValue

    def __init__(self, arity, entries=(), default=None):
        if default is None:
            raise ModelError("predicate tables need an explicit default value")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "entries", dict(entries))
        object.__setattr__(self, "default", default)

    def value(self, args: tuple[str, ...]) -> TruthValue:
        return self.entries.get(args, self.default)


@dataclass(frozen=True)
class Model:
    """A finite model: domain, constant map, and predicate tables."""

    mode: Mode
    domain: tuple[str, ...]
    constants: Mapping[str, str]
    predicates: Mapping[str, PredicateTable]

    def __init__(self, mode, domain, constants=(), predicates=()):
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "domain", tuple(domain))
        object.__setattr__(self, "constants", dict(constants))
        object.__setattr__(self, "predicates", dict(predicates))

    def signature(self) -> Signature:
        return Signature(
            {name: table.arity for name, table in self.predicates.items()},
            self.constants.keys(),
        )


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(model: Model, formula: Formula, env: Optional[Environment] = None) -> TruthValue:
    """Truth value of a formula in a model under a variable evaluation.

    The formula is desugared for the model's mode first; free variables
    must all be assigned by ``env``.
    """
    f = desugar(formula, model.mode)
    return _eval(model, f, dict(env) if env else {})


def _eval(model: Model, f: Formula, env: dict) -> TruthValue:
    match f:
        case Atom(pred, args):
            table = model.predicates.get(pred)
            if table is None:
                raise EvalError(f"unknown predicate {pred!r}")
            if table.arity != len(args):
                raise EvalError(
                    f"predicate {pred!r} has arity {table.arity}, got {len(args)} argument(s)"
                )
            return table.value(tuple(_resolve(model, t, env) for t in args))
        case Neg(b):
            return V.bd_neg(_eval(model, b, env))
        case BdDelta(b):
            return V.bd_delta(_eval(model, b, env))
        case WeakAnd(l, r):
            return V.weak_and(_eval(model, l, env), _eval(model, r, env))
        case WeakOr(l, r):
            return V.weak_or(_eval(model, l, env), _eval(model, r, env))
        case BaazDelta(b):
            _require_fuzzy(model, f)
            return V.baaz_delta(_eval(model, b, env))
        case StrongAnd(l, r):
            _require_fuzzy(model, f)
            return V.strong_and(_eval(model, l, env), _eval(model, r, env))
        case StrongOr(l, r):
            _require_fuzzy(model, f)
            return V.strong_or(_eval(model, l, env), _eval(model, r, env))
        case OuterForall(var, body):
            return _fold_quantifier(model, var, body, env, universal=True)
        case OuterExists(var, body):
            return _fold_quantifier(model, var, body, env, universal=False)
    raise EvalError(f"cannot evaluate node kind {type(f).__name__}")


def _resolve(model: Model, term, env: dict) -> str:
    if isinstance(term, Var):
        try:
            return env[term.name]
        except KeyError:
            raise EvalError(f"unassigned free variable {term.name!r}") from None
    elem = model.constants.get(term.name)
    if elem is None:
        raise EvalError(f"unknown constant {term.name!r}")
    return elem


def _require_fuzzy(model: Model, f: Formula):
    if model.mode is Mode.BD4:
        raise EvalError(
            f"fuzzy-only node {type(f).__name__} in a four-valued model"
        )


def _fold_quantifier(model, var, body, env, universal):
    """Universal: <inf of positives, sup of negatives> over the domain; dual for existential."""
    had, old = var in env, env.get(var)
    pos = neg = None
    try:
        for a in model.domain:
            env[var] = a
            v = _eval(model, body, env)
            if pos is None:
                pos, neg = v.pos, v.neg
            elif universal:
                pos, neg = min(pos, v.pos), max(neg, v.neg)
            else:
                pos, neg = max(pos, v.pos), min(neg, v.neg)
    finally:
        if had:
            env[var] = old
        else:
            env.pop(var, None)
    if pos is None:
        raise EvalError("model domain is empty")
    return TruthValue(pos, neg, model.mode)


def eval_all_environments(model: Model, formula: Formula):
    """Evaluate under every assignment of the formula's free variables.

    Returns a dict keyed by sorted (variable, element) pairs; sentences
    produce a single entry under the empty key.
    """
    f = desugar(formula, model.mode)
    fv = sorted(free_vars(formula))
    out = {}
    for combo in itertools.product(model.domain, repeat=len(fv)):
        out[tuple(zip(fv, combo))] = _eval(model, f, dict(zip(fv, combo)))
    return out


# ---------------------------------------------------------------------------
# Dual-domain structure and theory axioms
# ---------------------------------------------------------------------------


def _existence_table(model: Model) -> PredicateTable:
    table = model.predicates.get(EXISTENCE)
    if table is None or table.arity != 1:
        raise ModelError(f"model does not interpret the existence predicate {EXISTENCE}")
    return table


def inner_domain(model: Model) -> tuple[str, ...]:
    """Elements whose existence value is designated, in domain order."""
    table = _existence_table(model)
    return tuple(a for a in model.domain if table.value((a,)).is_designated)


def _existence_failures(model: Model) -> list[str]:
    """Elements at which the existence axiom body is not designated.

    In bd4 the body is the normality indicator of E!; in lbd it is the
    stronger inner-domain bivalence schema, which also rules out fuzzy
    existence degrees.
    """
    table = _existence_table(model)
    bad = []
    for a in model.domain:
        u = table.value((a,))
        body = V.circ(u)
        if model.mode is Mode.LBD:
            body = V.weak_and(body, V.weak_or(u, V.bd_neg(u)))
        if not body.is_designated:
            bad.append(a)
    return bad


def check_existence_axiom(model: Model) -> bool:
    """Whether every element either exists or does not, bivalently."""
    return not _existence_failures(model)


def _inner_tuples(model: Model, arity: int):
    return itertools.product(inner_domain(model), repeat=arity)


def _normality_failures(model: Model) -> list[tuple[str, tuple[str, ...]]]:
    bad = []
    for name in sorted(model.predicates):
        table = model.predicates[name]
        for args in _inner_tuples(model, table.arity):
            if not table.value(args).is_normal:
                bad.append((name, args))
    return bad


def check_normality_axiom(model: Model) -> bool:
    """Whether every predicate is fully normal on all inner-domain tuples."""
    return not _normality_failures(model)


def _noncontradiction_failures(model: Model) -> list[tuple[str, tuple[str, ...]]]:
    bad = []
    for name in sorted(model.predicates):
        table = model.predicates[name]
        for args in _inner_tuples(model, table.arity):
            u = table.value(args)
            if not V.bivalent_neg(V.weak_and(u, V.bd_neg(u))).is_designated:
                bad.append((name, args))
    return bad


def check_noncontradiction_axiom(model: Model) -> bool:
    """Whether no predicate is both true and false on an inner-domain tuple."""
    return not _noncontradiction_failures(model)


AXIOM_SCHEMAS = ("existence", "normality", "noncontradiction")
AXIOM_SCHEMASET = frozenset(AXIOM_SCHEMAS)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    message: str

    def __str__(self):
        return f"[{self.kind}] {self.message}"


def validate_model(
    model: Model,
    sig: Optional[Signature] = None,
    axioms: Iterable[str] = (),
) -> list[Violation]:
    """Structural and (optionally) axiomatic checks; violations are data.

    ``axioms`` may request any of the schemas in ``AXIOM_SCHEMAS``.
    """
    for schema in axioms:
        if schema not in AXIOM_SCHEMASET:
            raise ValueError(f"unknown axiom schema {schema!r}")
    out: list[Violation] = []
    seen = set()
    if not model.domain:
        out.append(Violation("domain", "-", "domain is empty"))
    for a in model.domain:
        if a in seen:
            out.append(Violation("domain", a, f"duplicate domain element {a!r}"))
        seen.add(a)

    for c, elem in sorted(model.constants.items()):
        if elem not in seen:
            out.append(
                Violation("constant", c, f"constant {c!r} maps to {elem!r}, not a domain element")
            )
    if sig is not None:
        for c in sorted(sig.constants):
            if c not in model.constants:
                out.append(Violation("constant", c, f"constant {c!r} is not interpreted"))
        for p in sorted(sig.predicates):
            table = model.predicates.get(p)
            if table is None:
                out.append(Violation("predicate", p, f"predicate {p!r} is not interpreted"))
            elif table.arity != sig.predicates[p]:
                out.append(
                    Violation(
                        "arity",
                        p,
                        f"predicate {p!r} has arity {table.arity}, signature says {sig.predicates[p]}",
                    )
                )

    for name in sorted(model.predicates):
        table = model.predicates[name]
        if table.default.carrier is not model.mode:
            out.append(
                Violation("carrier", name, f"default of {name!r} is not a {model.mode.value} value")
            )
        for args, value in table.entries.items():
            where = f"{name}({','.join(args)})"
            if len(args) != table.arity:
                out.append(
                    Violation("arity", where, f"{where} has {len(args)} argument(s), arity is {table.arity}")
                )
            elif any(a not in seen for a in args):
                out.append(Violation("domain", where, f"{where} uses elements outside the domain"))
            if value.carrier is not model.mode:
                out.append(Violation("carrier", where, f"value of {where} is not a {model.mode.value} value"))

    if out and any(v.kind in ("domain", "arity") for v in out):
        return out  # axiom checks need a structurally sound model

    axioms = [s for s in AXIOM_SCHEMAS if s in set(axioms)]
    if axioms and EXISTENCE not in model.predicates:
        out.append(
            Violation("axiom:existence", EXISTENCE, f"axiom checks requested but {EXISTENCE} is absent")
        )
        return out
    for schema in axioms:
        if schema == "existence":
            for a in _existence_failures(model):
                u = model.predicates[EXISTENCE].value((a,))
                msg = f"existence value of {a!r} is {u}, not bivalent"
                if model.mode is Mode.LBD and V.circ(u).is_designated:
                    msg += " (fully normal, but the inner domain must be crisp)"
                out.append(Violation("axiom:existence", a, msg))
        elif schema == "normality":
            for name, args in _normality_failures(model):
                where = f"{name}({','.join(args)})"
                out.append(
                    Violation("axiom:normality", where, f"{where} is not normal on the inner domain")
                )
        elif schema == "noncontradiction":
            for name, args in _noncontradiction_failures(model):
                where = f"{name}({','.join(args)})"
                out.append(
                    Violation(
                        "axiom:noncontradiction",
                        where,
                        f"{where} is both true and false on the inner domain",
                    )
                )
    return out


# ---------------------------------------------------------------------------
# JSON model files
# ---------------------------------------------------------------------------


def _value_from_json(obj, mode: Mode) -> TruthValue:
    if isinstance(obj, str):
        try:
            return V.parse_value(obj, carrier=mode)
        except ValueError as err:
            raise ModelError(str(err)) from None
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        pos, neg = obj
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (pos, neg)):
            raise ModelError(f"truth value components must be numbers: {obj!r}")
        pos = int(pos) if float(pos).is_integer() else float(pos)
        neg = int(neg) if float(neg).is_integer() else float(neg)
        try:
            return TruthValue(pos, neg, mode)
        except ValueError as err:
            raise ModelError(str(err)) from None
    raise ModelError(f"cannot read truth value {obj!r}")


def _value_to_json(value: TruthValue):
    name = value.corner_name()
    if name is not None:
        return name
    return [float(value.pos), float(value.neg)]


def model_from_json(data: dict) -> Model:
    """Build a model from the JSON model-file structure.

    Malformed structure raises ModelError; semantic problems (constants
    outside the domain and the like) are left for validate_model.
    """
    if not isinstance(data, dict):
        raise ModelError("model file must contain a JSON object")
    try:
        mode = Mode(data.get("mode", "bd4"))
    except ValueError:
        raise ModelError(f"unknown mode {data.get('mode')!r}") from None
    domain = data.get("domain")
    if not isinstance(domain, list) or not all(isinstance(a, str) for a in domain):
        raise ModelError('"domain" must be a list of element names')
    if any("," in a or not a for a in domain):
        raise ModelError("element names must be non-empty and comma-free")
    constants = data.get("constants", {})
    if not isinstance(constants, dict):
        raise ModelError('"constants" must be an object')
    predicates = {}
    raw_preds = data.get("predicates", {})
    if not isinstance(raw_preds, dict):
        raise ModelError('"predicates" must be an object')
    for name, spec in raw_preds.items():
        if not isinstance(spec, dict) or "arity" not in spec or "default" not in spec:
            raise ModelError(f'predicate {name!r} needs "arity" and "default"')
        arity = spec["arity"]
        if not isinstance(arity, int) or arity < 0:
            raise ModelError(f"predicate {name!r} has invalid arity {arity!r}")
        entries = {}
        for key, raw in spec.get("map", {}).items():
            args = tuple(key.split(",")) if key else ()
            entries[args] = _value_from_json(raw, mode)
        default = _value_from_json(spec["default"], mode)
        predicates[name] = PredicateTable(arity, entries, default)
    return Model(mode, domain, constants, predicates)


def model_to_json(model: Model) -> dict:
    """Inverse of model_from_json; deterministic key order."""
    predicates = {}
    for name in sorted(model.predicates):
        table = model.predicates[name]
        predicates[name] = {
            "arity": table.arity,
            "map": {
                ",".join(args): _value_to_json(table.entries[args])
                for args in sorted(table.entries)
            },
            "default": _value_to_json(table.default),
        }
    return {
        "mode": model.mode.value,
        "domain": list(model.domain),
        "constants": {c: model.constants[c] for c in sorted(model.constants)},
        "predicates": predicates,
    }
