"""From a parsed ``.lst`` file to kernel judgments."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .kernel import EMPTY, Context, Mode
from .parser import Assume, Check, Definition, SourceFile, parse, split_name
from .terms import Term, constants

_MODE_OF_CONSTANT = {
    **dict.fromkeys(("U", "T", "qstar", "qFun", "qSum"), Mode.LSTAR_U),
    **dict.fromkeys(("Eq", "Rel", "reflstar", "qFunE", "qSumE"), Mode.LSTAR_U_EQ),
    **dict.fromkeys(("qEq", "qRel", "qEqE", "qRelE", "rel"), Mode.INTERNAL),
}
_RANK = [Mode.LSTAR, Mode.LSTAR_U, Mode.LSTAR_U_EQ, Mode.INTERNAL]


@dataclass(frozen=True)
class Judgment:
    """``context |- term : type`` as stated at ``line`` of a source file."""

    context: Context
    term: Term
    type: Term
    line: int
    label: str = "check"


def judgments(src: SourceFile) -> list[Judgment]:
    """Every ``check`` goal and every ``def`` (body against its type), in file order."""
    ctx = EMPTY
    out: list[Judgment] = []
    for d in src.decls:
        match d:
            case Assume(name, ty, _):
                base, marker = split_name(name)
                ctx = ctx.extend(base, ty, marker)
            case Definition(name, ty, body, _, line):
                out.append(Judgment(ctx, body, ty, line, f"def {name}"))
            case Check(term, ty, line):
                out.append(Judgment(ctx, term, ty, line))
    return out


def final_context(src: SourceFile) -> Context:
    ctx = EMPTY
    for d in src.decls:
        if isinstance(d, Assume):
            base, marker = split_name(d.name)
            ctx = ctx.extend(base, d.type, marker)
    return ctx


def infer_mode(src: SourceFile) -> Mode:
    """Smallest system whose constants cover everything the file mentions."""
    if src.mode is not None:
        return Mode(src.mode)
    used: set[str] = set()
    for d in src.decls:
        for t in _terms(d):
            used |= constants(t)
    rank = max((_RANK.index(_MODE_OF_CONSTANT[c]) for c in used if c in _MODE_OF_CONSTANT), default=0)
    return _RANK[rank]


def _terms(d):
    match d:
        case Assume(_, ty, _):
            return [ty]
        case Definition(_, ty, body, _, _):
            return [ty, body]
        case Check(term, ty, _):
            return [term, ty]
    return []


def load(path: str | Path) -> SourceFile:
    return parse(Path(path).read_text(encoding="utf-8"))
