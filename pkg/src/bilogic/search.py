"""Truth tables, designated regions, model enumeration, and entailment search.

Entailment is checked by exhaustive scan of all models over the derived
signature up to a domain-size bound, in a fixed canonical order, so
verdicts, witnesses, and the examined-model count are reproducible
across runs and across worker counts.  Fuzzy search walks an exact
rational grid; a positive verdict is always relative to the bound (and
grid) and never a claim of unbounded validity.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

from . import values as V
from .values import CORNERS, FALSE, Mode, TRUE, TruthValue, grid_values
from .syntax import (
    Atom,
    BaazDelta,
    BdDelta,
    EXISTENCE,
    Formula,
    InnerExists,
    InnerForall,
    Neg,
    OuterExists,
    OuterForall,
    Signature,
    StrongAnd,
    StrongOr,
    WeakAnd,
    WeakOr,
    collect_signature,
    desugar,
    free_vars,
)
from .semantics import Model, PredicateTable, evaluate, eval_all_environments, _eval
from .semantics import check_noncontradiction_axiom, check_normality_axiom

#: Hard ceiling on the number of models a single query may scan.
DEFAULT_BUDGET = 10_000_000

HOLDS_UP_TO_BOUND = "holds_up_to_bound"
COUNTERMODEL = "countermodel"


class NotPropositionalError(ValueError):
    """Raised when an operation needs a quantifier-free zero-ary formula."""


class BudgetError(RuntimeError):
    """The requested scan would exceed the enumeration budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"search needs {required} models, more than the budget of {budget}"
        )
        self.required = required
        self.budget = budget


# ---------------------------------------------------------------------------
# Propositional evaluation and truth tables
# ---------------------------------------------------------------------------


def _prop_atoms(f: Formula) -> list[str]:
    """Zero-ary atom names in first-occurrence order; rejects anything else."""
    atoms: list[str] = []

    def walk(f):
        match f:
            case Atom(pred, args):
                if args:
                    raise NotPropositionalError(
                        f"atom {pred!r} is not zero-ary; truth tables are propositional"
                    )
                if pred not in atoms:
                    atoms.append(pred)
            case OuterForall() | OuterExists() | InnerForall() | InnerExists():
                raise NotPropositionalError("quantifiers have no truth table")
            case _ if hasattr(f, "body"):
                walk(f.body)
            case _:
                walk(f.lhs)
                walk(f.rhs)

    walk(f)
    return atoms


def _eval_prop(f: Formula, assignment: dict) -> TruthValue:
    """Evaluate a desugared propositional formula under an atom assignment."""
    match f:
        case Atom(pred, _):
            return assignment[pred]
        case Neg(b):
            return V.bd_neg(_eval_prop(b, assignment))
        case BdDelta(b):
            return V.bd_delta(_eval_prop(b, assignment))
        case BaazDelta(b):
            return V.baaz_delta(_eval_prop(b, assignment))
        case WeakAnd(l, r):
            return V.weak_and(_eval_prop(l, assignment), _eval_prop(r, assignment))
        case WeakOr(l, r):
            return V.weak_or(_eval_prop(l, assignment), _eval_prop(r, assignment))
        case StrongAnd(l, r):
            return V.strong_and(_eval_prop(l, assignment), _eval_prop(r, assignment))
        case StrongOr(l, r):
            return V.strong_or(_eval_prop(l, assignment), _eval_prop(r, assignment))
    raise NotPropositionalError(f"cannot evaluate node kind {type(f).__name__}")


@dataclass(frozen=True)
class TruthTable:
    atoms: tuple[str, ...]
    rows: tuple[tuple[tuple[TruthValue, ...], TruthValue], ...]


def truth_table(f: Formula, mode: Mode = Mode.BD4, grid: Optional[int] = None) -> TruthTable:
    """One row per assignment of values to the formula's atoms.

    Four-valued mode iterates T, B, N, F per atom; fuzzy mode iterates
    the (grid+1)^2 exact grid pairs per atom in canonical order.
    """
    atoms = _prop_atoms(f)
    if mode is Mode.LBD:
        if grid is None:
            raise ValueError("fuzzy truth tables need a grid granularity")
        domain = grid_values(grid)
    else:
        domain = CORNERS
    d = desugar(f, mode)
    rows = []
    for combo in itertools.product(domain, repeat=len(atoms)):
        rows.append((combo, _eval_prop(d, dict(zip(atoms, combo)))))
    return TruthTable(tuple(atoms), tuple(rows))


def designated_set(f: Formula, grid: int) -> set:
    """Exact grid pairs (pos, neg) at which the one-atom formula is designated."""
    atoms = _prop_atoms(f)
    if len(atoms) != 1:
        raise NotPropositionalError(
            f"designated_set needs exactly one atom, found {len(atoms)}"
        )
    d = desugar(f, Mode.LBD)
    name = atoms[0]
    out = set()
    for tv in grid_values(grid):
        if _eval_prop(d, {name: tv}).pos == 1:
            out.add((tv.pos, tv.neg))
    return out


# ---------------------------------------------------------------------------
# Canonical model enumeration
# ---------------------------------------------------------------------------

_BIVALENT = (TRUE, FALSE)


class ModelSpace:
    """All models over a signature at one domain size, in canonical order.

    The domain is e1..en; constants vary lexicographically over the
    domain, then each predicate's table varies tuple-by-tuple over the
    value order (T, B, N, F, or the fuzzy grid); later slots vary
    fastest.  When ``bivalent_existence`` is set and the signature has
    the existence predicate, its values range over T and F only.
    """

    def __init__(
        self,
        sig: Signature,
        size: int,
        mode: Mode = Mode.BD4,
        grid: Optional[int] = None,
        bivalent_existence: bool = True,
    ):
        if size < 1:
            raise ValueError("domain size must be at least 1")
        if mode is Mode.LBD and grid is None:
            raise ValueError("fuzzy enumeration needs a grid granularity")
        self.sig = sig
        self.size = size
        self.mode = mode
        self.grid = grid
        self.bivalent_existence = bivalent_existence
        self.domain = tuple(f"e{i}" for i in range(1, size + 1))
        self.const_names = tuple(sorted(sig.constants))
        values = CORNERS if mode is Mode.BD4 else grid_values(grid)
        corners = _BIVALENT if mode is Mode.BD4 else tuple(c.to_fuzzy() for c in _BIVALENT)
        self.pred_names = tuple(sorted(sig.predicates))
        self.pred_tuples = {}
        self.pred_values = {}
        for name in self.pred_names:
            arity = sig.predicates[name]
            self.pred_tuples[name] = tuple(itertools.product(self.domain, repeat=arity))
            if name == EXISTENCE and bivalent_existence:
                self.pred_values[name] = corners
            else:
                self.pred_values[name] = values
        self._slots = [self.domain] * len(self.const_names)
        for name in self.pred_names:
            self._slots.extend([self.pred_values[name]] * len(self.pred_tuples[name]))
        self._default = FALSE if mode is Mode.BD4 else FALSE.to_fuzzy()

    def __len__(self) -> int:
        count = 1
        for slot in self._slots:
            count *= len(slot)
        return count

    def _assemble(self, choice) -> Model:
        constants = dict(zip(self.const_names, choice))
        predicates = {}
        i = len(self.const_names)
        for name in self.pred_names:
            tuples = self.pred_tuples[name]
            entries = dict(zip(tuples, choice[i : i + len(tuples)]))
            predicates[name] = PredicateTable(self.sig.predicates[name], entries, self._default)
            i += len(tuples)
        return Model(self.mode, self.domain, constants, predicates)

    def __iter__(self) -> Iterator[Model]:
        for choice in itertools.product(*self._slots):
            yield self._assemble(choice)

    def model_at(self, index: int) -> Model:
        """The index-th model of the canonical order, decoded directly."""
        if not 0 <= index < len(self):
            raise IndexError(index)
        digits = []
        for slot in reversed(self._slots):
            index, d = divmod(index, len(slot))
            digits.append(slot[d])
        digits.reverse()
        return self._assemble(tuple(digits))


def count_models(
    sig: Signature,
    size: int,
    mode: Mode = Mode.BD4,
    grid: Optional[int] = None,
    bivalent_existence: bool = True,
) -> int:
    return len(ModelSpace(sig, size, mode, grid, bivalent_existence))


def enumerate_models(
    sig: Signature,
    size: int,
    mode: Mode = Mode.BD4,
    grid: Optional[int] = None,
    bivalent_existence: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Model]:
    """Exhaustive, duplicate-free stream of models in canonical order."""
    space = ModelSpace(sig, size, mode, grid, bivalent_existence)
    if len(space) > budget:
        raise BudgetError(len(space), budget)
    return iter(space)


# ---------------------------------------------------------------------------
# Entailment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EntailmentQuery:
    """Do the premises entail the conclusion over all models up to a bound?

    ``profile`` names the axiom schemas that carve out the model class:
    any subset of existence, normality, noncontradiction.
    """

    premises: tuple[Formula, ...]
    conclusion: Formula
    mode: Mode = Mode.BD4
    max_domain_size: int = 3
    grid: Optional[int] = None
    profile: frozenset[str] = frozenset({"existence"})

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "profile", frozenset(self.profile))
        if self.max_domain_size < 1:
            raise ValueError("max_domain_size must be at least 1")
        if self.mode is Mode.LBD and (self.grid is None or self.grid < 1):
            raise ValueError("fuzzy queries need grid >= 1")

    def signature(self) -> Signature:
        sig = collect_signature(self.conclusion)
        for p in self.premises:
            sig = sig.merged(collect_signature(p))
        return sig


@dataclass(frozen=True)
class Witness:
    model: Model
    environment: dict


@dataclass(frozen=True)
class Verdict:
    outcome: str  # HOLDS_UP_TO_BOUND or COUNTERMODEL
    bound: int
    grid: Optional[int]
    witness: Optional[Witness]
    models_examined: int
    elapsed_ms: float


def _prepared(query: EntailmentQuery):
    sig = query.signature()
    premises = tuple(desugar(p, query.mode, sig) for p in query.premises)
    conclusion = desugar(query.conclusion, query.mode, sig)
    concl_vars = sorted(free_vars(query.conclusion))
    return sig, premises, conclusion, concl_vars


def _check_model(model, premises, conclusion, concl_vars, profile):
    """First countermodel environment in canonical order, else None.

    Models outside the profile's class, and models with a non-designated
    premise under some evaluation, are skipped (returning None).
    """
    if "normality" in profile and not check_normality_axiom(model):
        return None
    if "noncontradiction" in profile and not check_noncontradiction_axiom(model):
        return None
    for p in premises:
        if not all(v.is_designated for v in eval_all_environments(model, p).values()):
            return None
    for combo in itertools.product(model.domain, repeat=len(concl_vars)):
        env = dict(zip(concl_vars, combo))
        if not _eval(model, conclusion, dict(env)).is_designated:
            return env
    return None


def _scan_range(args):
    """Worker job: scan a contiguous canonical index range of one space."""
    (sig, size, mode, grid, bivalent, premises, conclusion, concl_vars, profile, lo, hi) = args
    space = ModelSpace(sig, size, mode, grid, bivalent)
    for i in range(lo, hi):
        env = _check_model(space.model_at(i), premises, conclusion, concl_vars, profile)
        if env is not None:
            return i, env
    return None


def entails(
    query: EntailmentQuery,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Scan sizes 1..max_domain_size for a countermodel.

    Returns the canonically first countermodel if one exists within the
    bound, else a holds-up-to-bound verdict.  The reported model count
    is the canonical sequential count, identical for any worker count.
    """
    t0 = time.perf_counter()
    sig, premises, conclusion, concl_vars = _prepared(query)
    grid = query.grid if query.mode is Mode.LBD else None
    bivalent = "existence" in query.profile
    spaces = [
        ModelSpace(sig, n, query.mode, grid, bivalent)
        for n in range(1, query.max_domain_size + 1)
    ]
    total = sum(len(s) for s in spaces)
    if total > budget:
        raise BudgetError(total, budget)

    examined = 0
    hit = None
    for space in spaces:
        count = len(space)
        if workers > 1 and count >= 4096:
            found = _scan_parallel(space, premises, conclusion, concl_vars, query.profile, workers)
        else:
            found = _scan_range(
                (sig, space.size, query.mode, grid, bivalent,
                 premises, conclusion, concl_vars, query.profile, 0, count)
            )
        if found is not None:
            index, env = found
            hit = Witness(space.model_at(index), env)
            examined += index + 1
            break
        examined += count

    elapsed = (time.perf_counter() - t0) * 1000.0
    if hit is None:
        return Verdict(HOLDS_UP_TO_BOUND, query.max_domain_size, grid, None, examined, elapsed)
    return Verdict(
        COUNTERMODEL, query.max_domain_size, grid, hit, examined, elapsed
    )


def _scan_parallel(space, premises, conclusion, concl_vars, profile, workers):
    """Range-partitioned scan; merges to the canonically first hit."""
    count = len(space)
    chunks = workers * 4
    step = -(-count // chunks)
    jobs = []
    for lo in range(0, count, step):
        jobs.append(
            (space.sig, space.size, space.mode, space.grid, space.bivalent_existence,
             premises, conclusion, concl_vars, profile, lo, min(lo + step, count))
        )
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_scan_range, job) for job in jobs]
        try:
            for fut in futures:
                found = fut.result()
                if found is not None:
                    return found
        finally:
            for fut in futures:
                fut.cancel()
    return None


def tautology_check(
    f: Formula,
    bound: int = 3,
    mode: Mode = Mode.BD4,
    grid: Optional[int] = None,
    profile: frozenset = frozenset({"existence"}),
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Check an empty-premise entailment; f must be a sentence."""
    if free_vars(f):
        raise ValueError(f"tautology check needs a sentence, free: {sorted(free_vars(f))}")
    query = EntailmentQuery((), f, mode, bound, grid, profile)
    return entails(query, workers=workers, budget=budget)


def verify_witness(query: EntailmentQuery, verdict: Verdict) -> bool:
    """Re-evaluate a countermodel verdict against its defining conditions.

    True when the witness model lies in the profile's model class, every
    premise is designated under all evaluations, and the conclusion is
    not designated under the witness environment.
    """
    if verdict.outcome != COUNTERMODEL or verdict.witness is None:
        return False
    model, env = verdict.witness.model, verdict.witness.environment
    if "existence" in query.profile and EXISTENCE in model.predicates:
        table = model.predicates[EXISTENCE]
        if any(table.value((a,)) not in _corner_pair(model.mode) for a in model.domain):
            return False
    if "normality" in query.profile and not check_normality_axiom(model):
        return False
    if "noncontradiction" in query.profile and not check_noncontradiction_axiom(model):
        return False
    for p in query.premises:
        if not all(v.is_designated for v in eval_all_environments(model, p).values()):
            return False
    return not evaluate(model, query.conclusion, env).is_designated


def _corner_pair(mode: Mode):
    return _BIVALENT if mode is Mode.BD4 else tuple(c.to_fuzzy() for c in _BIVALENT)


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    """Enumeration budget, overridable through BILOGIC_BUDGET."""
    raw = os.environ.get("BILOGIC_BUDGET")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"BILOGIC_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("BILOGIC_BUDGET must be positive")
    return value
