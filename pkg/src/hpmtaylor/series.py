"""Time-power-series solutions of heat-like and wave-like problems.

For ``u_t = L u + f`` the coefficients of ``u = sum u_n t^n`` obey

    u_{n+1} = (L u_n + f [n == 0]) / (n + 1)

and for ``u_tt = L u + f``

    u_{n+2} = (L u_n + f [n == 0]) / ((n + 1)(n + 2)).

Only the initial data enter; no boundary values are consulted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping, Union

from .diffop import DiffOp, op_apply
from .polyalg import Number, Polynomial, VariableMismatchError, VariableSet, poly_add, poly_eval, poly_scale
from .timepoly import TimePoly

Kind = Literal["heat", "wave"]
DEFAULT_ORDER = 12


class KindMismatchError(ValueError):
    pass


def _same_vars(*items) -> VariableSet:
    vs = items[0].variables
    for it in items[1:]:
        if it.variables != vs:
            raise VariableMismatchError(f"{it.variables} vs {vs}")
    return vs


@dataclass(frozen=True)
class HeatProblem:
    L: DiffOp
    f: Polynomial
    u0: Polynomial
    kind = "heat"

    def __post_init__(self):
        _same_vars(self.L, self.f, self.u0)

    @property
    def variables(self) -> VariableSet:
        return self.L.variables


@dataclass(frozen=True)
class WaveProblem:
    L: DiffOp
    f: Polynomial
    u0: Polynomial
    u1: Polynomial
    kind = "wave"

    def __post_init__(self):
        _same_vars(self.L, self.f, self.u0, self.u1)

    @property
    def variables(self) -> VariableSet:
        return self.L.variables


Problem = Union[HeatProblem, WaveProblem]


@dataclass(frozen=True)
class SeriesSolution:
    kind: Kind
    coeffs: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a series needs at least u_0")
        _same_vars(*self.coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def variables(self) -> VariableSet:
        return self.coeffs[0].variables

    def as_timepoly(self) -> TimePoly:
        return TimePoly(self.variables, self.coeffs)


def heat_step(L: DiffOp, f: Polynomial, u_n: Polynomial, n: int) -> Polynomial:
    """Return u_{n+1} from u_n."""
    _same_vars(L, f, u_n)
    rhs = op_apply(L, u_n)
    if n == 0:
        rhs = poly_add(rhs, f)
    return poly_scale(rhs, Fraction(1, n + 1))


def wave_step(L: DiffOp, f: Polynomial, u_n: Polynomial, n: int) -> Polynomial:
    """Return u_{n+2} from u_n."""
    _same_vars(L, f, u_n)
    rhs = op_apply(L, u_n)
    if n == 0:
        rhs = poly_add(rhs, f)
    return poly_scale(rhs, Fraction(1, (n + 1) * (n + 2)))


def solve_heat(p: HeatProblem, N: int = DEFAULT_ORDER) -> SeriesSolution:
    if N < 1:
        raise ValueError(f"order must be >= 1 for heat problems, got {N}")
    coeffs = [p.u0]
    for n in range(N):
        coeffs.append(heat_step(p.L, p.f, coeffs[n], n))
    return SeriesSolution("heat", tuple(coeffs))


def solve_wave(p: WaveProblem, N: int = DEFAULT_ORDER) -> SeriesSolution:
    if N < 2:
        raise ValueError(f"order must be >= 2 for wave problems, got {N}")
    coeffs = [p.u0, p.u1]
    for n in range(N - 1):
        coeffs.append(wave_step(p.L, p.f, coeffs[n], n))
    return SeriesSolution("wave", tuple(coeffs))


def solve(p: Problem, N: int = DEFAULT_ORDER) -> SeriesSolution:
    return solve_heat(p, N) if isinstance(p, HeatProblem) else solve_wave(p, N)


def series_eval(s: SeriesSolution, point: Mapping[str, Number], t: Number):
    """Horner evaluation in t; exact when ``t`` and the point are rational."""
    acc = 0
    for u in reversed(s.coeffs):
        acc = acc * t + poly_eval(u, point)
    return acc


def pde_residual(s: SeriesSolution, problem: Problem) -> TimePoly:
    """Residual of the truncated series substituted into the PDE, as a polynomial in t."""
    if s.kind != problem.kind:
        raise KindMismatchError(f"{s.kind} series against {problem.kind} problem")
    u = s.as_timepoly()
    lhs = u.dt(1 if s.kind == "heat" else 2)
    rhs = u.apply(problem.L) + TimePoly(u.variables, (problem.f,))
    return lhs - rhs


def residual_floor(s: SeriesSolution, problem: Problem) -> int | float:
    """Lowest t-power with a nonzero residual coefficient, or ``math.inf``."""
    support = pde_residual(s, problem).support()
    return support[0] if support else math.inf


def check_recurrence(s: SeriesSolution, problem: Problem) -> bool:
    """Re-derive every coefficient past the initial data and compare."""
    if s.kind != problem.kind:
        raise KindMismatchError(f"{s.kind} series against {problem.kind} problem")
    if s.coeffs[0] != problem.u0:
        return False
    if s.kind == "heat":
        return all(s.coeffs[n + 1] == heat_step(problem.L, problem.f, s.coeffs[n], n) for n in range(s.order))
    if s.order >= 1 and s.coeffs[1] != problem.u1:
        return False
    return all(s.coeffs[n + 2] == wave_step(problem.L, problem.f, s.coeffs[n], n) for n in range(s.order - 1))


def residual_contract(kind: Kind, N: int) -> int:
    """Minimum residual floor guaranteed by the recurrence at truncation order N."""
    return N if kind == "heat" else N - 1


def is_finite_floor(floor) -> bool:
    return not (isinstance(floor, float) and math.isinf(floor))
