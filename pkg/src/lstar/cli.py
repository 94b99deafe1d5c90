"""Command line interface: ``lstar {check,reflect,star,witness,gen,corpus}``.

Exit codes: 0 ok, 1 type error or failed theorem, 2 fuel exhausted, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import LstarError, ParseError, TypeCheckError
from .extensionality import check_extensionality, code_of
from .generate import Generator, root_case
from .internal import check_extensionality_internal
from .kernel import Context, Mode, check, check_context, declare_signature
from .printer import context_names, print_term
from .reduce import DEFAULT_FUEL, Fuel, FuelExhausted, depth_guard
from .report import FUEL_EXHAUSTED, PROVED, WitnessReport
from .source import Judgment, infer_mode, judgments, load
from .universe import check_reflection, reflect, reflect_context

OK, FAILURE, EXHAUSTED, PARSE = 0, 1, 2, 3


@dataclass
class Outcome:
    """One judgment's result, rendered both for humans and as JSON."""

    line: int
    status: str
    record: dict
    text: list[str] = field(default_factory=list)

    @property
    def code(self) -> int:
        return {PROVED: OK, FUEL_EXHAUSTED: EXHAUSTED}.get(self.status, FAILURE)


def default_fuel(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("EXT_FUEL")
    return int(env) if env else DEFAULT_FUEL


def _names(ctx: Context) -> list[str]:
    return context_names(ctx.names)


def _goal_text(j: Judgment) -> str:
    names = _names(j.context)
    return f"{print_term(j.term, names)} : {print_term(j.type, names)}"


def _error_outcome(j: Judgment, mode: Mode, exc: Exception) -> Outcome:
    if isinstance(exc, FuelExhausted):
        status, msg = FUEL_EXHAUSTED, str(exc)
    else:
        status = "failed"
        msg = str(exc) if isinstance(exc, TypeCheckError) and exc.line else f"line {j.line}: {exc}"
    record = {
        "line": j.line,
        "mode": mode.value,
        "goal": _goal_text(j),
        "status": status,
        "errors": [msg],
    }
    plain = msg.removeprefix(f"line {j.line}: ")
    return Outcome(j.line, status, record, [f"line {j.line}: {status}: {plain}"])


def _from_report(j: Judgment, report: WitnessReport, emit: list[str]) -> Outcome:
    record = {"line": j.line, **report.to_json()}
    text = [f"-- line {j.line}: {record['goal']}", *emit]
    if report.proved:
        text.append(f"-- {report.status} in {report.steps} steps")
    else:
        text += [f"-- {report.status}: {e}" for e in record["errors"]]
    return Outcome(j.line, report.status, record, text)


# -- per-judgment actions ------------------------------------------------------


def run_check(j: Judgment, mode: Mode, fuel: int) -> Outcome:
    sig = declare_signature(mode)
    budget = Fuel(fuel)
    try:
        with depth_guard():
            check_context(sig, j.context, budget)
            check(sig, j.context, j.term, j.type, budget)
    except (TypeCheckError, FuelExhausted) as exc:
        return _error_outcome(j, mode, exc)
    names = _names(j.context)
    record = {
        "line": j.line,
        "mode": mode.value,
        "goal": _goal_text(j),
        "status": PROVED,
        "context": [f"{n} : {print_term(e.type, names[:k])}" for k, (n, e) in enumerate(zip(names, j.context))],
        "witness": print_term(j.term, names),
        "goal_type": print_term(j.type, names),
        "errors": [],
        "steps": budget.used,
    }
    return Outcome(j.line, PROVED, record, [f"line {j.line}: ok  {_goal_text(j)}"])


def _block(report: WitnessReport, unicode: bool = False) -> list[str]:
    """The translated judgment as re-checkable ``.lst`` text."""
    names = report.names()
    lines = [f"mode {report.mode}"]
    for k, (n, e) in enumerate(zip(names, report.context)):
        lines.append(f"assume {n} : {print_term(e.type, names[:k], unicode)}")
    lines.append(f"check {print_term(report.witness, names, unicode)}")
    lines.append(f"  : {print_term(report.goal, names, unicode)}")
    if report.display_goal is not None and report.display_goal != report.goal:
        lines.append(f"-- goal normalizes to {print_term(report.display_goal, names, unicode)}")
    return lines


def run_reflect(j: Judgment, mode: Mode, fuel: int) -> Outcome:
    try:
        with depth_guard():
            report = check_reflection(j.context, j.term, j.type, fuel)
    except (TypeCheckError, FuelExhausted, LstarError) as exc:
        return _error_outcome(j, mode, exc)
    return _from_report(j, report, _block(report))


def run_star(j: Judgment, mode: Mode, fuel: int, internal: bool = False) -> Outcome:
    """Star-translate one judgment; lambda-star sources are reflected first."""
    try:
        if mode is Mode.LSTAR_U_EQ:
            raise LstarError("star translates lambda-star and lambda-star-U judgments; this file uses Eq/Rel")
        if mode is Mode.LSTAR:
            ctx, m, a = reflect_context(j.context), reflect(j.term), reflect(j.type)
        else:
            ctx, m, a = j.context, j.term, code_of(j.type)
        theorem = check_extensionality_internal if internal else check_extensionality
        with depth_guard():
            report = theorem(ctx, m, a, fuel)
    except (TypeCheckError, FuelExhausted, LstarError) as exc:
        return _error_outcome(j, mode, exc)
    return _from_report(j, report, _block(report))


def run_witness(j: Judgment, mode: Mode, fuel: int, internal: bool = False) -> Outcome:
    if len(j.context):
        return _error_outcome(j, mode, LstarError("witness needs a closed term; this judgment has assumptions"))
    return run_star(j, mode, fuel, internal)


# -- file level ----------------------------------------------------------------


def _resolve_mode(src, flag: str | None) -> Mode:
    return Mode(flag) if flag else infer_mode(src)


def _process(path: str, action: str, args) -> tuple[int, dict, list[str]]:
    fuel = default_fuel(args.fuel)
    try:
        src = load(path)
    except ParseError as exc:
        return PARSE, {"file": path, "status": "parse-error", "errors": [str(exc)]}, [f"{path}: {exc}"]
    except TypeCheckError as exc:
        return FAILURE, {"file": path, "status": "failed", "errors": [str(exc)]}, [f"{path}: {exc}"]
    except OSError as exc:
        return FAILURE, {"file": path, "status": "failed", "errors": [str(exc)]}, [f"{path}: {exc}"]
    mode = _resolve_mode(src, args.mode)
    internal = mode is Mode.INTERNAL
    outcomes: list[Outcome] = []
    for j in judgments(src):
        match action:
            case "check":
                outcomes.append(run_check(j, mode, fuel))
            case "reflect":
                if mode is not Mode.LSTAR:
                    outcomes.append(_error_outcome(j, mode, LstarError(f"reflect expects a lambda-star file, got mode {mode.value}")))
                else:
                    outcomes.append(run_reflect(j, mode, fuel))
            case "star":
                outcomes.append(run_star(j, infer_mode(src), fuel, internal))
            case "witness":
                outcomes.append(run_witness(j, infer_mode(src), fuel, internal))
    code = max((o.code for o in outcomes), default=OK)
    status = PROVED if code == OK else (FUEL_EXHAUSTED if code == EXHAUSTED else "failed")
    record = {"file": path, "command": action, "mode": mode.value, "status": status, "reports": [o.record for o in outcomes]}
    text = []
    for o in outcomes:
        text += o.text
        if action != "check":
            text.append("")
    return code, record, text


def _emit(args, record, text) -> None:
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        for line in text:
            print(line)


def cmd_file(args) -> int:
    code, record, text = _process(args.file, args.command, args)
    _emit(args, record, text)
    return code


def cmd_gen(args) -> int:
    gen = Generator(args.seed, args.size)
    samples = gen.samples(args.count)
    records, text = [], []
    for k, s in enumerate(samples, 1):
        names = _names(s.context)
        body = [f"assume {n} : {print_term(e.type, names[:i])}" for i, (n, e) in enumerate(zip(names, s.context))]
        body.append(f"check {print_term(s.term, names)} : {print_term(s.type, names)}")
        case = root_case(s.context, s.term, s.type)
        records.append(
            {
                "case": case,
                "context": body[:-1],
                "term": print_term(s.term, names),
                "type": print_term(s.type, names),
            }
        )
        block = [f"-- judgment {k} ({case})", *body]
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"gen-{k:04d}.lst").write_text("\n".join(block) + "\n", encoding="utf-8")
        text += block + [""]
    _emit(args, {"command": "gen", "seed": args.seed, "size": args.size, "judgments": records}, text)
    return OK


CORPUS_ACTIONS = {
    Mode.LSTAR: ("check", "reflect", "star"),
    Mode.LSTAR_U: ("check", "star"),
    Mode.LSTAR_U_EQ: ("check",),
    Mode.INTERNAL: ("check",),
}


def cmd_corpus(args) -> int:
    files = sorted(Path(args.dir).glob("*.lst"))
    overall, records, text = OK, [], []
    for path in files:
        file_code, summary, failures = OK, {}, []
        try:
            mode = _resolve_mode(load(path), args.mode)
        except (ParseError, TypeCheckError) as exc:
            code = PARSE if isinstance(exc, ParseError) else FAILURE
            records.append({"file": path.name, "status": "parse-error" if code == PARSE else "failed", "errors": [str(exc)]})
            text.append(f"FAIL {path.name}: {exc}")
            overall = max(overall, code)
            continue
        for action in CORPUS_ACTIONS[mode]:
            code, record, _ = _process(str(path), action, args)
            file_code = max(file_code, code)
            summary[action] = sum(r.get("status") == PROVED for r in record.get("reports", []))
            failures += [e for r in record.get("reports", []) for e in r.get("errors", [])]
        status = PROVED if file_code == OK else ("fuel-exhausted" if file_code == EXHAUSTED else "failed")
        records.append({"file": path.name, "mode": mode.value, "status": status, "proved": summary, "errors": failures})
        counts = ", ".join(f"{a} {n}" for a, n in summary.items())
        text.append(f"{'PASS' if file_code == OK else 'FAIL'} {path.name} [{mode.value}] {counts}")
        text += [f"  {e}" for e in failures]
        overall = max(overall, file_code)
    _emit(args, {"command": "corpus", "dir": args.dir, "files": records}, text)
    return overall


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[m.value for m in Mode], help="system to check in (default: inferred from the constants used)")
    common.add_argument("--fuel", type=int, default=None, help=f"reduction step budget per judgment (default: $EXT_FUEL or {DEFAULT_FUEL})")
    common.add_argument("--json", action="store_true", help="print a machine-readable report")
    common.add_argument("--seed", type=int, default=0, help="random seed")

    parser = argparse.ArgumentParser(prog="lstar", description="Type checker and translations for lambda-star with a universe of codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("check", "typecheck every goal and definition"),
        ("reflect", "quote a lambda-star file into the universe and re-check"),
        ("star", "emit the relational witness of every goal and re-check it"),
        ("witness", "relational witness of closed terms"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.set_defaults(func=cmd_file)
    g = sub.add_parser("gen", parents=[common], help="random well-typed lambda-star judgments")
    g.add_argument("--count", type=int, default=10)
    g.add_argument("--size", type=int, default=4)
    g.add_argument("--out", help="write one .lst file per judgment into this directory")
    g.set_defaults(func=cmd_gen)
    c = sub.add_parser("corpus", help="run a directory of .lst files")
    csub = c.add_subparsers(dest="corpus_command", required=True)
    r = csub.add_parser("run", parents=[common], help="check, reflect and star every file")
    r.add_argument("dir")
    r.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))
    args = build_parser().parse_args(argv)
    if getattr(args, "size", 1) < 1:
        print("lstar: --size must be at least 1", file=sys.stderr)
        return FAILURE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
