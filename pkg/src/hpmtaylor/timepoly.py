"""Polynomials in t whose coefficients are spatial polynomials.

Time is kept out of the spatial :class:`VariableSet`; index ``n`` of
``coeffs`` holds the coefficient of ``t**n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diffop import DiffOp, op_apply
from .polyalg import Polynomial, VariableMismatchError, VariableSet, format_poly, poly_add, poly_scale


@dataclass(frozen=True)
class TimePoly:
    variables: VariableSet
    coeffs: tuple[Polynomial, ...] = ()

    def __post_init__(self):
        cs = list(self.coeffs)
        for c in cs:
            if c.variables != self.variables:
                raise VariableMismatchError(f"{c.variables} vs {self.variables}")
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, p: Polynomial, power: int) -> "TimePoly":
        zero = Polynomial.zero(p.variables)
        return cls(p.variables, (zero,) * power + (p,))

    def __getitem__(self, n: int) -> Polynomial:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return Polynomial.zero(self.variables)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def support(self) -> list[int]:
        """t-powers carrying a nonzero spatial coefficient."""
        return [n for n, c in enumerate(self.coeffs) if not c.is_zero()]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "TimePoly") -> "TimePoly":
        if other.variables != self.variables:
            raise VariableMismatchError(f"{self.variables} vs {other.variables}")
        n = max(len(self.coeffs), len(other.coeffs))
        return TimePoly(self.variables, tuple(poly_add(self[i], other[i]) for i in range(n)))

    def __neg__(self) -> "TimePoly":
        return TimePoly(self.variables, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "TimePoly") -> "TimePoly":
        return self + (-other)

    def apply(self, L: DiffOp) -> "TimePoly":
        return TimePoly(self.variables, tuple(op_apply(L, c) for c in self.coeffs))

    def dt(self, times: int = 1) -> "TimePoly":
        cs = list(self.coeffs)
        for _ in range(times):
            cs = [poly_scale(c, n) for n, c in enumerate(cs)][1:]
        return TimePoly(self.variables, tuple(cs))

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            tpow = "" if n == 0 else ("*t" if n == 1 else f"*t^{n}")
            parts.append(f"({format_poly(c)}){tpow}")
        return " + ".join(parts) or "0"


def time_integrate(tp: TimePoly, times: int = 1) -> TimePoly:
    """Integrate from 0 to t, ``times`` times, with zero integration constants."""
    if times not in (1, 2):
        raise ValueError(f"times must be 1 or 2, got {times}")
    cs = list(tp.coeffs)
    for _ in range(times):
        cs = [Polynomial.zero(tp.variables)] + [poly_scale(c, Fraction(1, n + 1)) for n, c in enumerate(cs)]
    return TimePoly(tp.variables, tuple(cs))


def from_coeffs(variables: VariableSet, coeffs: Sequence[Polynomial]) -> TimePoly:
    return TimePoly(variables, tuple(coeffs))
