"""Linear differential operators with polynomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .polyalg import (
    Polynomial,
    VariableMismatchError,
    VariableSet,
    format_poly,
    poly_add,
    poly_diff_multi,
    poly_mul,
)

DerivIndex = tuple  # tuple[int, ...]; all zeros means plain multiplication


@dataclass(frozen=True)
class DiffOpTerm:
    coefficient: Polynomial
    deriv: DerivIndex

    def __post_init__(self):
        if self.coefficient.is_zero():
            raise ValueError("operator term with zero coefficient")
        if len(self.deriv) != len(self.coefficient.variables) or any(k < 0 for k in self.deriv):
            raise VariableMismatchError(f"bad derivative index {self.deriv}")

    @property
    def order(self) -> int:
        return sum(self.deriv)


@dataclass(frozen=True)
class DiffOp:
    variables: VariableSet
    terms: tuple[DiffOpTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for t in self.terms:
            if t.coefficient.variables != self.variables:
                raise VariableMismatchError(f"term over {t.coefficient.variables}, operator over {self.variables}")

    @classmethod
    def zero(cls, variables: VariableSet) -> "DiffOp":
        return cls(variables, ())

    @classmethod
    def from_terms(cls, variables: VariableSet, terms: Iterable[tuple[Polynomial, dict | tuple]]) -> "DiffOp":
        """Build from ``(coefficient, deriv)`` pairs; ``deriv`` may be ``{"x": 2}`` or a tuple."""
        out = []
        for coef, deriv in terms:
            if isinstance(deriv, dict):
                idx = [0] * len(variables)
                for name, k in deriv.items():
                    idx[variables.index(name)] = k
                deriv = tuple(idx)
            if not coef.is_zero():
                out.append(DiffOpTerm(coef, tuple(deriv)))
        return cls(variables, tuple(out))

    def __call__(self, u: Polynomial) -> Polynomial:
        return op_apply(self, u)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        return op_sum(self, other)

    def __str__(self) -> str:
        return format_operator(self)


def op_apply(L: DiffOp, u: Polynomial) -> Polynomial:
    if u.variables != L.variables:
        raise VariableMismatchError(f"operator over {L.variables}, polynomial over {u.variables}")
    result = Polynomial.zero(u.variables)
    for term in L.terms:
        du = poly_diff_multi(u, term.deriv)
        if not du.is_zero():
            result = poly_add(result, poly_mul(term.coefficient, du))
    return result


def op_sum(a: DiffOp, b: DiffOp) -> DiffOp:
    """Concatenate term lists, merging a term of ``b`` into an existing one only on identical index."""
    if a.variables != b.variables:
        raise VariableMismatchError(f"{a.variables} vs {b.variables}")
    terms = list(a.terms)
    for t in b.terms:
        for i, s in enumerate(terms):
            if s.deriv == t.deriv:
                c = poly_add(s.coefficient, t.coefficient)
                if c.is_zero():
                    del terms[i]
                else:
                    terms[i] = DiffOpTerm(c, s.deriv)
                break
        else:
            terms.append(t)
    return DiffOp(a.variables, tuple(terms))


def op_scale(L: DiffOp, c) -> DiffOp:
    if not c:
        return DiffOp.zero(L.variables)
    return DiffOp(L.variables, tuple(DiffOpTerm(t.coefficient * c, t.deriv) for t in L.terms))


def format_operator(L: DiffOp) -> str:
    """Render in the problem-file operator grammar, e.g. ``(1/2)*x^2*D(x,2)``."""
    if not L.terms:
        return "0"
    parts = []
    for t in L.terms:
        ds = [f"D({n},{k})" for n, k in zip(L.variables.names, t.deriv) if k]
        coef = format_poly(t.coefficient)
        if not ds:
            # zeroth-order term: not expressible in the file grammar, shown for debugging only
            parts.append(f"({coef})")
        elif coef == "1":
            parts.append("*".join(ds))
        else:
            parts.append(f"({coef})*" + "*".join(ds))
    return " + ".join(parts)
