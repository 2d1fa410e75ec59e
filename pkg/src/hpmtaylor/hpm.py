"""Homotopy-perturbation iteration for the linear heat-like and wave-like problems.

With the standard linear homotopy, initial guess equal to the initial
data and zero integration constants, the p-expansion terms are

    heat: v_0 = u0,           v_{k+1} = I(L v_k + f [k == 0])
    wave: v_0 = u0 + u1 t,    v_{k+1} = I^2(L v_k + f [k == 0])

where ``I`` integrates from 0 to t.  :func:`hpm_equals_taylor` compares
each ``v_k`` with the slice of the power series it should coincide with.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polyalg import Polynomial
from .series import HeatProblem, KindMismatchError, Kind, SeriesSolution, WaveProblem
from .timepoly import TimePoly, time_integrate


@dataclass(frozen=True)
class HpmExpansion:
    kind: Kind
    terms: tuple[TimePoly, ...]

    @property
    def K(self) -> int:
        return len(self.terms) - 1

    @property
    def covered(self) -> int:
        """Highest t-power this many terms account for."""
        return self.K if self.kind == "heat" else 2 * self.K + 1

    def partial_sum(self) -> TimePoly:
        total = TimePoly(self.terms[0].variables)
        for v in self.terms:
            total = total + v
        return total


@dataclass(frozen=True)
class HpmCheck:
    equal: bool
    covered: int
    first_divergence: tuple[int, int] | None = None  # (k, t-power)

    def __bool__(self) -> bool:
        return self.equal


def hpm_heat(p: HeatProblem, K: int) -> HpmExpansion:
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    vs = p.variables
    v = TimePoly(vs, (p.u0,))
    terms = [v]
    for k in range(K):
        rhs = v.apply(p.L)
        if k == 0:
            rhs = rhs + TimePoly(vs, (p.f,))
        v = time_integrate(rhs, 1)
        terms.append(v)
    return HpmExpansion("heat", tuple(terms))


def hpm_wave(p: WaveProblem, K: int) -> HpmExpansion:
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    vs = p.variables
    v = TimePoly(vs, (p.u0, p.u1))
    terms = [v]
    for k in range(K):
        rhs = v.apply(p.L)
        if k == 0:
            rhs = rhs + TimePoly(vs, (p.f,))
        v = time_integrate(rhs, 2)
        terms.append(v)
    return HpmExpansion("wave", tuple(terms))


def hpm_expand(p, K: int) -> HpmExpansion:
    return hpm_heat(p, K) if isinstance(p, HeatProblem) else hpm_wave(p, K)


def taylor_powers(kind: Kind, k: int) -> tuple[int, ...]:
    """t-powers the k-th homotopy term is expected to occupy."""
    if kind == "heat":
        return (k,)
    return (0, 1) if k == 0 else (2 * k, 2 * k + 1)


def hpm_equals_taylor(e: HpmExpansion, s: SeriesSolution) -> HpmCheck:
    """True iff every v_k equals the matching slice of ``s``, t-power by t-power."""
    if e.kind != s.kind:
        raise KindMismatchError(f"{e.kind} expansion against {s.kind} series")
    if s.order < e.covered:
        raise ValueError(f"series order {s.order} below the {e.covered} t-powers covered by {e.K} terms")
    zero = Polynomial.zero(s.variables)
    for k, v in enumerate(e.terms):
        own = taylor_powers(e.kind, k)
        top = max(v.degree, max(own))
        for n in range(top + 1):
            expected = s.coeffs[n] if n in own else zero
            if v[n] != expected:
                return HpmCheck(False, e.covered, (k, n))
    return HpmCheck(True, e.covered)
