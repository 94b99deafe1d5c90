"""Outcome of re-checking a translated judgment."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TypeCheckError
from .kernel import Context, Signature, check, check_context
from .printer import context_names, print_term
from .reduce import Fuel, FuelExhausted, depth_guard, normalize
from .terms import Term

PROVED = "proved"
FAILED = "failed"
FUEL_EXHAUSTED = "fuel-exhausted"


@dataclass
class WitnessReport:
    mode: str
    source_context: Context
    source_term: Term
    source_type: Term
    context: Context
    witness: Term
    goal: Term
    status: str = FAILED
    diagnostics: list[str] = field(default_factory=list)
    steps: int = 0
    errors: list[TypeCheckError] = field(default_factory=list)
    display_goal: Term | None = None

    @property
    def proved(self) -> bool:
        return self.status == PROVED

    def names(self) -> list[str]:
        return context_names(self.context.names)

    def render_context(self, unicode: bool = False) -> list[str]:
        out, names = [], []
        for (display, entry) in zip(self.names(), self.context):
            out.append(f"{display} : {print_term(entry.type, names, unicode)}")
            names.append(display)
        return out

    def to_json(self) -> dict:
        names = self.names()
        src_names = context_names(self.source_context.names)
        goal = self.display_goal if self.display_goal is not None else self.goal
        return {
            "mode": self.mode,
            "goal": f"{print_term(self.source_term, src_names)} : {print_term(self.source_type, src_names)}",
            "status": self.status,
            "context": self.render_context(),
            "witness": print_term(self.witness, names),
            "goal_type": print_term(goal, names),
            "errors": [str(e) for e in self.errors] + list(self.diagnostics),
            "steps": self.steps,
        }


def verify(report: WitnessReport, sig: Signature, fuel: int) -> WitnessReport:
    """Check ``report.witness : report.goal`` in ``report.context`` and record the verdict."""
    budget = Fuel(fuel)
    try:
        with depth_guard():
            check_context(sig, report.context, budget)
            check(sig, report.context, report.witness, report.goal, budget)
    except FuelExhausted as exc:
        report.status = FUEL_EXHAUSTED
        report.diagnostics.append(str(exc))
    except TypeCheckError as exc:
        report.status = FAILED
        report.errors.append(exc)
    else:
        report.status = PROVED
    report.steps = budget.used
    return report


def readable(sig: Signature, t: Term, fuel: int = 10_000) -> Term:
    try:
        with depth_guard():
            return normalize(sig, t, Fuel(fuel))
    except FuelExhausted:
        return t
