"""Exact multivariate polynomials over the rationals.

Coefficients are ``fractions.Fraction`` (always reduced, positive
denominator).  A polynomial is tied to a :class:`VariableSet`; mixing
polynomials over different variable sets is an error rather than an
implicit embedding.
"""

from __future__ import annotations

import contextlib
import contextvars
import keyword
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

Rational = Fraction
Monomial = tuple  # tuple[int, ...], one exponent per variable
Number = Union[int, Fraction, float]

RESERVED_NAMES = frozenset({"t", "D", "exp", "sinh", "cosh"})


class AlgebraError(ValueError):
    pass


class VariableMismatchError(AlgebraError):
    pass


class UnknownVariableError(AlgebraError):
    pass


class MissingAssignmentError(AlgebraError):
    pass


class LimitExceededError(AlgebraError):
    pass


@dataclass(frozen=True)
class Limits:
    max_degree: int = 64
    max_terms: int = 100_000


_limits: contextvars.ContextVar[Limits] = contextvars.ContextVar("limits", default=Limits())


def current_limits() -> Limits:
    return _limits.get()


@contextlib.contextmanager
def limits(max_degree: int | None = None, max_terms: int | None = None):
    """Temporarily override the degree / term-count guards."""
    old = _limits.get()
    new = Limits(
        max_degree if max_degree is not None else old.max_degree,
        max_terms if max_terms is not None else old.max_terms,
    )
    token = _limits.set(new)
    try:
        yield new
    finally:
        _limits.reset(token)


@dataclass(frozen=True)
class VariableSet:
    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for n in names:
            if not n.isidentifier() or keyword.iskeyword(n):
                raise ValueError(f"invalid variable name {n!r}")
            if n in RESERVED_NAMES:
                raise ValueError(f"variable name {n!r} is reserved")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariableError(f"unknown variable {name!r}; known: {list(self.names)}") from None

    def __repr__(self) -> str:
        return f"VariableSet({list(self.names)})"


def grlex_key(m: Monomial) -> tuple:
    """Sort key putting monomials in descending graded-lex order."""
    return (-sum(m), tuple(-e for e in m))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: VariableSet, terms: Mapping[Monomial, Number] | None = None):
        n = len(variables)
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError(f"monomial {m} does not fit {variables}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        self._init(variables, clean)

    def _init(self, variables: VariableSet, clean: dict) -> None:
        lim = _limits.get()
        if len(clean) > lim.max_terms:
            raise LimitExceededError(f"{len(clean)} terms exceeds cap of {lim.max_terms}")
        for m in clean:
            if sum(m) > lim.max_degree:
                raise LimitExceededError(f"total degree {sum(m)} exceeds cap of {lim.max_degree}")
        self._vars = variables
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: VariableSet, clean: dict) -> "Polynomial":
        # trusted constructor: monomials valid, coefficients nonzero Fractions
        obj = cls.__new__(cls)
        obj._init(variables, clean)
        return obj

    @classmethod
    def zero(cls, variables: VariableSet) -> "Polynomial":
        return cls._raw(variables, {})

    @classmethod
    def const(cls, variables: VariableSet, c: Number) -> "Polynomial":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: VariableSet, name: str, power: int = 1) -> "Polynomial":
        m = [0] * len(variables)
        m[variables.index(name)] = power
        return cls._raw(variables, {tuple(m): Fraction(1)})

    @property
    def variables(self) -> VariableSet:
        return self._vars

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda mc: grlex_key(mc[0]))

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * len(self._vars), Fraction(0))

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        return poly_add(self, _coerce(other, self._vars))

    __radd__ = __add__

    def __sub__(self, other):
        return poly_add(self, -_coerce(other, self._vars))

    def __rsub__(self, other):
        return poly_add(_coerce(other, self._vars), -self)

    def __neg__(self):
        return poly_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return poly_scale(self, other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return poly_scale(self, 1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial.const(self._vars, 1)
        base = self
        while k:
            if k & 1:
                result = poly_mul(result, base)
            k >>= 1
            if k:
                base = poly_mul(base, base)
        return result

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r}, vars={list(self._vars.names)})"


def _coerce(x, variables: VariableSet) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(variables, x)
    raise TypeError(f"cannot combine Polynomial with {type(x).__name__}")


def _check_same(a: Polynomial, b: Polynomial) -> None:
    if a.variables != b.variables:
        raise VariableMismatchError(f"{a.variables} vs {b.variables}")


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same(a, b)
    out = dict(a._terms)
    for m, c in b._terms.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return Polynomial._raw(a.variables, out)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same(a, b)
    out: dict[Monomial, Fraction] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return Polynomial._raw(a.variables, {m: c for m, c in out.items() if c})


def poly_scale(a: Polynomial, c: Number) -> Polynomial:
    c = Fraction(c)
    if not c:
        return Polynomial.zero(a.variables)
    return Polynomial._raw(a.variables, {m: v * c for m, v in a._terms.items()})


def poly_diff(a: Polynomial, var: str, order: int = 1) -> Polynomial:
    """Repeated partial derivative of ``a`` with respect to ``var``."""
    if order < 1:
        raise ValueError(f"derivative order must be positive, got {order}")
    i = a.variables.index(var)
    orders = [0] * len(a.variables)
    orders[i] = order
    return poly_diff_multi(a, tuple(orders))


def poly_diff_multi(a: Polynomial, orders: tuple[int, ...]) -> Polynomial:
    """Mixed partial derivative; ``orders`` holds one derivative order per variable."""
    if len(orders) != len(a.variables):
        raise VariableMismatchError(f"derivative index {orders} does not fit {a.variables}")
    if not any(orders):
        return a
    out: dict[Monomial, Fraction] = {}
    for m, c in a._terms.items():
        if any(e < k for e, k in zip(m, orders)):
            continue
        factor = 1
        for e, k in zip(m, orders):
            factor *= math.perm(e, k)
        out[tuple(e - k for e, k in zip(m, orders))] = c * factor
    return Polynomial._raw(a.variables, out)


def poly_eval(a: Polynomial, point: Mapping[str, Number]):
    """Evaluate at a full assignment; exact when every value is int/Fraction."""
    values = _assignment(a.variables, point, full=True)
    exact = all(isinstance(v, (int, Fraction)) for v in values)
    total = Fraction(0) if exact else 0.0
    for m, c in a._terms.items():
        term = c if exact else float(c)
        for v, e in zip(values, m):
            if e:
                term *= v**e
        total += term
    return total


def poly_substitute(a: Polynomial, point: Mapping[str, Number]) -> Polynomial:
    """Fix the assigned variables to rational values; the result lives over the rest."""
    _assignment(a.variables, point, full=False)
    keep = [i for i, n in enumerate(a.variables.names) if n not in point]
    rest = VariableSet(a.variables.names[i] for i in keep)
    out: dict[Monomial, Fraction] = {}
    for m, c in a._terms.items():
        for i, n in enumerate(a.variables.names):
            if n in point and m[i]:
                c = c * Fraction(point[n]) ** m[i]
        if c:
            mm = tuple(m[i] for i in keep)
            out[mm] = out.get(mm, 0) + c
    return Polynomial._raw(rest, {m: c for m, c in out.items() if c})


def _assignment(variables: VariableSet, point: Mapping[str, Number], full: bool) -> list:
    for k in point:
        if k not in variables:
            raise UnknownVariableError(f"unknown variable {k!r} in assignment")
    if full:
        missing = [n for n in variables if n not in point]
        if missing:
            raise MissingAssignmentError(f"no value for {missing}")
    return [point.get(n) for n in variables]


def poly_is_zero(a: Polynomial) -> bool:
    return a.is_zero()


def format_monomial(variables: VariableSet, m: Monomial) -> str:
    parts = []
    for name, e in zip(variables.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_term(variables: VariableSet, m: Monomial, c: Fraction) -> str:
    mono = format_monomial(variables, m)
    if not mono:
        return str(c)
    num, den = c.numerator, c.denominator
    if num == 1:
        s = mono
    elif num == -1:
        s = "-" + mono
    else:
        s = f"{num}*{mono}"
    return s if den == 1 else f"{s}/{den}"


def format_poly(a: Polynomial) -> str:
    """Canonical compact rendering, e.g. ``x^2+y^2-z^2`` or ``x^2/2``; parseable back."""
    if a.is_zero():
        return "0"
    out = ""
    for m, c in a.sorted_terms():
        s = format_term(a.variables, m, c)
        if out and not s.startswith("-"):
            out += "+"
        out += s
    return out
