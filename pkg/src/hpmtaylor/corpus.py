"""The six worked heat-like and wave-like examples, with their known exact solutions.

Boundary data are stored only where they are given as explicit formulas
(examples 1 and 4); the others are described only by count and type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .closedform import ClosedForm
from .parser import parse_closed_form
from .polyalg import VariableSet
from .problem import ProblemSpec, parse_problem_text

_EMPTY = VariableSet(())


@dataclass(frozen=True)
class BoundaryCheck:
    at: dict  # variable -> Fraction
    expected_text: str

    @property
    def expected(self) -> ClosedForm:
        return parse_closed_form(self.expected_text, _EMPTY)


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    spec: ProblemSpec
    expected_text: str
    boundary_checks: tuple[BoundaryCheck, ...] = ()
    boundary_note: str = ""

    @property
    def expected_closed_form(self) -> ClosedForm:
        return parse_closed_form(self.expected_text, self.spec.variables)

    @property
    def variables(self) -> VariableSet:
        return self.spec.variables


EXPECTED = {
    "example1": "x^2*exp(t)",
    "example2": "y^2*cosh(t) + x^2*sinh(t)",
    "example3": "x^4*y^4*z^4*(exp(t)-1)",
    "example4": "x + x^2*sinh(t)",
    "example5": "x^4*cosh(t) + y^4*sinh(t)",
    "example6": "(x^2+y^2)*(exp(t)-1) + z^2*(exp(-t)-1)",
}

BOUNDARY = {
    "example1": (
        BoundaryCheck({"x": Fraction(0)}, "0"),
        BoundaryCheck({"x": Fraction(1)}, "exp(t)"),
    ),
    "example4": (
        BoundaryCheck({"x": Fraction(0)}, "0"),
        BoundaryCheck({"x": Fraction(1)}, "1 + sinh(t)"),
    ),
}

BOUNDARY_NOTES = {
    "example2": "four Neumann conditions, no explicit formulas available",
    "example3": "six Neumann conditions, no explicit formulas available",
    "example5": "four Neumann conditions, no explicit formulas available",
    "example6": "six boundary conditions, no explicit formulas available",
}

IDS = tuple(EXPECTED)


def problem_text(entry_id: str) -> str:
    if entry_id not in EXPECTED:
        raise KeyError(f"no corpus entry {entry_id!r}; known: {', '.join(IDS)}")
    return resources.files("hpmtaylor.problems").joinpath(f"{entry_id}.pde").read_text(encoding="utf-8")


def get_entry(entry_id: str) -> CorpusEntry:
    spec = parse_problem_text(problem_text(entry_id), f"{entry_id}.pde", name=entry_id)
    return CorpusEntry(
        id=entry_id,
        spec=spec,
        expected_text=EXPECTED[entry_id],
        boundary_checks=BOUNDARY.get(entry_id, ()),
        boundary_note=BOUNDARY_NOTES.get(entry_id, ""),
    )


def load_corpus() -> list[CorpusEntry]:
    return [get_entry(i) for i in IDS]
