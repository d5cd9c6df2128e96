"""Command-line front end.

Subcommands: parse, truthtable, eval, check-theory, entail.
Exit codes: 0 ok/holds, 1 countermodel (or failed theory check),
2 usage or parse error, 3 model validation failure, 4 budget refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .values import Mode, TruthValue, classify
from .syntax import (
    Formula,
    InnerExists,
    InnerForall,
    ParseError,
    SignatureError,
    ast_dump,
    collect_signature,
    desugar,
    free_vars,
    iter_formula_lines,
    parse,
    pretty_print,
)
from .semantics import (
    AXIOM_SCHEMAS,
    AXIOM_SCHEMASET,
    EXISTENCE,
    EvalError,
    ModelError,
    _existence_failures,
    _noncontradiction_failures,
    _normality_failures,
    evaluate,
    model_from_json,
    model_to_json,
    validate_model,
)
from .search import (
    COUNTERMODEL,
    BudgetError,
    EntailmentQuery,
    NotPropositionalError,
    Verdict,
    budget_from_env,
    entails,
    truth_table,
)

EXIT_OK = 0
EXIT_COUNTERMODEL = 1
EXIT_USAGE = 2
EXIT_INVALID_MODEL = 3
EXIT_BUDGET = 4


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated global options shared by all subcommands."""

    mode: Mode
    free_logic: bool
    grid: Optional[int]
    max_size: int
    profile: Optional[frozenset]
    output: str
    workers: int
    witness_out: Optional[str]

    @staticmethod
    def from_args(args) -> "RunConfig":
        mode = Mode(args.mode)
        grid = args.grid
        if grid is not None:
            if mode is Mode.BD4:
                raise UsageError("--grid only applies to lbd mode")
            if grid < 1:
                raise UsageError("--grid must be at least 1")
        elif mode is Mode.LBD:
            grid = 10
        if args.max_size < 1:
            raise UsageError("--max-size must be at least 1")
        if args.workers < 1:
            raise UsageError("--workers must be at least 1")
        profile = None
        if args.profile is not None:
            names = [p.strip() for p in args.profile.split(",") if p.strip()]
            unknown = [p for p in names if p not in AXIOM_SCHEMASET]
            if unknown:
                raise UsageError(
                    f"unknown profile schema(s) {unknown}; choose from {', '.join(AXIOM_SCHEMAS)}"
                )
            profile = frozenset(names)
        return RunConfig(
            mode=mode,
            free_logic=args.free,
            grid=grid,
            max_size=args.max_size,
            profile=profile,
            output=args.output,
            workers=args.workers,
            witness_out=getattr(args, "witness_out", None),
        )


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--mode", choices=["bd4", "lbd"], default="bd4",
                        help="four-valued (bd4) or fuzzy (lbd) logic")
    shared.add_argument("--free", action=argparse.BooleanOptionalAction, default=True,
                        help="free-logic mode: inner quantifiers relativized to E!")
    shared.add_argument("--grid", type=int, default=None, metavar="G",
                        help="fuzzy grid granularity (lbd only; default 10)")
    shared.add_argument("--max-size", type=int, default=3, metavar="N",
                        help="largest domain size searched (default 3)")
    shared.add_argument("--profile", default=None, metavar="SCHEMAS",
                        help="comma-separated axiom schemas: existence,normality,noncontradiction")
    shared.add_argument("--output", choices=["text", "json"], default="text")
    shared.add_argument("--workers", type=int, default=1, metavar="W",
                        help="parallel workers for entailment search")

    top = argparse.ArgumentParser(prog="bilogic",
                                  description="Four-valued and fuzzy bilattice logic toolbox")
    top.add_argument("--version", action="version", version=f"bilogic {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[shared], help="parse a formula and show its structure")
    p.add_argument("formula")

    p = sub.add_parser("truthtable", parents=[shared], help="truth table of a propositional formula")
    p.add_argument("formula")

    p = sub.add_parser("eval", parents=[shared], help="evaluate a formula in a model")
    p.add_argument("model", help="model file (JSON)")
    p.add_argument("formula")
    p.add_argument("--assign", action="append", default=[], metavar="VAR=ELEM",
                   help="assign a free variable (repeatable)")

    p = sub.add_parser("check-theory", parents=[shared], help="check free-logic axiom schemas in a model")
    p.add_argument("model", help="model file (JSON)")

    p = sub.add_parser("entail", parents=[shared], help="bounded entailment / countermodel search")
    p.add_argument("--premise", action="append", default=[], metavar="FORMULA",
                   help="premise formula (repeatable)")
    p.add_argument("--premises-file", default=None, metavar="PATH",
                   help="file with one premise per line ('#' comments)")
    p.add_argument("--conclusion", required=True, metavar="FORMULA")
    p.add_argument("--witness-out", default=None, metavar="PATH",
                   help="write a found countermodel in model-file format")
    return top


def _has_inner_quantifiers(f: Formula) -> bool:
    if isinstance(f, (InnerForall, InnerExists)):
        return True
    if hasattr(f, "body"):
        return _has_inner_quantifiers(f.body)
    if hasattr(f, "lhs"):
        return _has_inner_quantifiers(f.lhs) or _has_inner_quantifiers(f.rhs)
    return False


def _check_free(f: Formula, config: RunConfig):
    if not config.free_logic and _has_inner_quantifiers(f):
        raise UsageError(
            "inner quantifiers (forall/exists) need free-logic mode; drop --no-free"
        )


def _emit(config: RunConfig, payload: dict, text: str):
    if config.output == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load_model(path: str, config: RunConfig):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as err:
        raise UsageError(f"cannot read model file: {err}") from None
    except json.JSONDecodeError as err:
        raise ModelError(f"model file is not valid JSON: {err}") from None
    model = model_from_json(data)
    if model.mode is not config.mode:
        raise UsageError(
            f"model file is {model.mode.value} but the run is {config.mode.value} "
            f"(pass --mode {model.mode.value})"
        )
    return model


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_parse(args, config: RunConfig) -> int:
    f = parse(args.formula, mode=config.mode)
    _check_free(f, config)
    sig = collect_signature(f)
    desugared = desugar(f, config.mode)
    fv = sorted(free_vars(f))
    payload = {
        "input": args.formula,
        "ast": ast_dump(f),
        "pretty": pretty_print(f),
        "desugared": pretty_print(desugared),
        "free_vars": fv,
        "predicates": {p: sig.predicates[p] for p in sorted(sig.predicates)},
        "constants": sorted(sig.constants),
    }
    text = "\n".join([
        f"ast:        {payload['ast']}",
        f"pretty:     {payload['pretty']}",
        f"desugared:  {payload['desugared']}",
        f"free vars:  {', '.join(fv) if fv else '(none)'}",
    ])
    _emit(config, payload, text)
    return EXIT_OK


def cmd_truthtable(args, config: RunConfig) -> int:
    f = parse(args.formula, mode=config.mode)
    table = truth_table(f, config.mode, config.grid)
    payload = {
        "formula": pretty_print(f),
        "mode": config.mode.value,
        "grid": config.grid,
        "atoms": list(table.atoms),
        "rows": [
            {"inputs": [str(v) for v in combo], "value": str(value)}
            for combo, value in table.rows
        ],
    }
    _emit(config, payload, _render_table(f, table, config))
    return EXIT_OK


def _render_table(f, table, config: RunConfig) -> str:
    header = pretty_print(f)
    if config.mode is Mode.BD4 and len(table.atoms) == 2:
        # Matrix layout: rows vary the first atom, columns the second.
        names = ["T", "B", "N", "F"]
        cell = {
            (str(u), str(v)): str(value) for (u, v), value in table.rows
        }
        label = max(len(header), 1)
        lines = [f"{header:>{label}} | " + "  ".join(names)]
        lines.append("-" * len(lines[0]))
        for r in names:
            lines.append(f"{r:>{label}} | " + "  ".join(cell[(r, c)] for c in names))
        return "\n".join(lines)
    widths = [max(len(a), 12 if config.mode is Mode.LBD else 1) for a in table.atoms]
    head = "  ".join(f"{a:>{w}}" for a, w in zip(table.atoms, widths))
    lines = [f"{head} | {header}", "-" * (len(head) + 3 + len(header))]
    for combo, value in table.rows:
        row = "  ".join(f"{str(v):>{w}}" for v, w in zip(combo, widths))
        lines.append(f"{row} | {value}")
    return "\n".join(lines)


def cmd_eval(args, config: RunConfig) -> int:
    assignment = {}
    for item in args.assign:
        if "=" not in item:
            raise UsageError(f"--assign expects VAR=ELEM, got {item!r}")
        var, _, elem = item.partition("=")
        assignment[var.strip()] = elem.strip()
    f = parse(args.formula, mode=config.mode, variables=assignment.keys())
    _check_free(f, config)
    model = _load_model(args.model, config)
    sig = collect_signature(f)
    violations = validate_model(model, sig)
    if violations:
        _emit(config,
              {"violations": [str(v) for v in violations]},
              "\n".join(str(v) for v in violations))
        return EXIT_INVALID_MODEL
    missing = sorted(free_vars(f) - assignment.keys())
    if missing:
        raise UsageError(f"free variable(s) without --assign: {', '.join(missing)}")
    for var, elem in assignment.items():
        if elem not in model.domain:
            raise UsageError(f"--assign {var}={elem}: {elem!r} is not a domain element")
    value = evaluate(model, f, assignment)
    c = classify(value)
    payload = {
        "value": str(value),
        "designated": c.designated,
        "normal": c.normal,
        "gappy": c.gappy,
        "glutty": c.glutty,
    }
    tags = [k for k in ("designated", "normal", "gappy", "glutty") if payload[k]]
    _emit(config, payload, f"{value}  ({', '.join(tags) if tags else 'none'})")
    return EXIT_OK


def cmd_check_theory(args, config: RunConfig) -> int:
    model = _load_model(args.model, config)
    if EXISTENCE not in model.predicates:
        raise UsageError(f"model does not interpret {EXISTENCE}; not a free-logic model")
    profile = config.profile if config.profile is not None else AXIOM_SCHEMASET
    results = {}
    offenders = {}
    if "existence" in profile:
        bad = _existence_failures(model)
        results["existence"] = not bad
        offenders["existence"] = list(bad)
    if "normality" in profile:
        bad = _normality_failures(model)
        results["normality"] = not bad
        offenders["normality"] = [f"{p}({','.join(t)})" for p, t in bad]
    if "noncontradiction" in profile:
        bad = _noncontradiction_failures(model)
        results["noncontradiction"] = not bad
        offenders["noncontradiction"] = [f"{p}({','.join(t)})" for p, t in bad]
    payload = {"schemas": results, "offenders": offenders}
    lines = []
    for schema in AXIOM_SCHEMAS:
        if schema not in results:
            continue
        if results[schema]:
            lines.append(f"{schema}: pass")
        else:
            shown = ", ".join(offenders[schema][:5])
            more = len(offenders[schema]) - 5
            suffix = f" (+{more} more)" if more > 0 else ""
            lines.append(f"{schema}: FAIL at {shown}{suffix}")
    _emit(config, payload, "\n".join(lines))
    return EXIT_OK if all(results.values()) else EXIT_COUNTERMODEL


def _verdict_payload(verdict: Verdict) -> dict:
    witness = None
    if verdict.witness is not None:
        witness = {
            "model": model_to_json(verdict.witness.model),
            "environment": dict(sorted(verdict.witness.environment.items())),
        }
    return {
        "outcome": verdict.outcome,
        "bound": verdict.bound,
        "grid": verdict.grid,
        "witness": witness,
        "models_examined": verdict.models_examined,
        "elapsed_ms": round(verdict.elapsed_ms, 3),
    }


def _render_verdict(verdict: Verdict) -> str:
    if verdict.outcome != COUNTERMODEL:
        scope = f"up to domain size {verdict.bound}"
        if verdict.grid is not None:
            scope += f" (no countermodel on grid {verdict.grid})"
        return (
            f"holds {scope}; {verdict.models_examined} models examined "
            f"in {verdict.elapsed_ms:.1f} ms"
        )
    model = verdict.witness.model
    lines = [
        f"countermodel found (domain size {len(model.domain)}; "
        f"{verdict.models_examined} models examined in {verdict.elapsed_ms:.1f} ms)",
        f"  domain: {', '.join(model.domain)}",
    ]
    for c in sorted(model.constants):
        lines.append(f"  {c} -> {model.constants[c]}")
    for name in sorted(model.predicates):
        table = model.predicates[name]
        cells = ", ".join(
            f"{name}({','.join(t)})={table.entries[t]}" for t in sorted(table.entries)
        )
        lines.append(f"  {cells}" if cells else f"  {name}: (default {table.default})")
    env = verdict.witness.environment
    if env:
        lines.append("  environment: " + ", ".join(f"{k}={v}" for k, v in sorted(env.items())))
    return "\n".join(lines)


def cmd_entail(args, config: RunConfig) -> int:
    texts = list(args.premise)
    if args.premises_file:
        try:
            with open(args.premises_file, "r", encoding="utf-8") as fh:
                content = fh.read()
        except OSError as err:
            raise UsageError(f"cannot read premises file: {err}") from None
        texts.extend(line for _, line in iter_formula_lines(content))
    premises = tuple(parse(t, mode=config.mode) for t in texts)
    conclusion = parse(args.conclusion, mode=config.mode)
    for f in premises + (conclusion,):
        _check_free(f, config)
    profile = config.profile if config.profile is not None else frozenset({"existence"})
    query = EntailmentQuery(
        premises,
        conclusion,
        mode=config.mode,
        max_domain_size=config.max_size,
        grid=config.grid if config.mode is Mode.LBD else None,
        profile=profile,
    )
    verdict = entails(query, workers=config.workers, budget=budget_from_env())
    payload = _verdict_payload(verdict)
    _emit(config, payload, _render_verdict(verdict))
    if verdict.outcome == COUNTERMODEL:
        if config.witness_out:
            doc = model_to_json(verdict.witness.model)
            doc["environment"] = dict(sorted(verdict.witness.environment.items()))
            with open(config.witness_out, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True, indent=2)
                fh.write("\n")
        return EXIT_COUNTERMODEL
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

_HANDLERS = {
    "parse": cmd_parse,
    "truthtable": cmd_truthtable,
    "eval": cmd_eval,
    "check-theory": cmd_check_theory,
    "entail": cmd_entail,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = RunConfig.from_args(args)
        return _HANDLERS[args.command](args, config)
    except ModelError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID_MODEL
    except BudgetError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ParseError, SignatureError, NotPropositionalError,
            EvalError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def main_entry():  # console-script wrapper
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
