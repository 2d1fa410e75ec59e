"""Recognize truncated time series as sums of ``p_j(r) * exp(rate_j * t)``.

Each spatial monomial contributes a coefficient stream ``c_n``.  After
normalizing ``a_n = n! c_n`` an exponential-polynomial of the supported
class becomes a plain sum of geometric sequences ``sum A_j rate_j**n``, so
its minimal linear recurrence has a characteristic polynomial that splits
into distinct rational roots.  The final arbiter is always an exact
re-expansion against the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .polyalg import (
    Monomial,
    Number,
    Polynomial,
    VariableSet,
    format_poly,
    poly_add,
    poly_scale,
    poly_substitute,
)
from .series import SeriesSolution

MIN_ORDER = 6


@dataclass(frozen=True)
class MonomialTrace:
    monomial: Monomial
    seq: tuple[Fraction, ...]


@dataclass(frozen=True)
class ClosedForm:
    """Canonical exponential basis: distinct rates, nonzero spatial parts, sorted by rate."""

    variables: VariableSet
    terms: tuple[tuple[Fraction, Polynomial], ...] = ()

    def __post_init__(self):
        merged: dict[Fraction, Polynomial] = {}
        for rate, p in self.terms:
            if p.variables != self.variables:
                raise ValueError(f"spatial part over {p.variables}, form over {self.variables}")
            rate = Fraction(rate)
            merged[rate] = poly_add(merged[rate], p) if rate in merged else p
        terms = tuple(sorted(((r, p) for r, p in merged.items() if not p.is_zero()), key=lambda rp: rp[0]))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_mapping(cls, variables: VariableSet, parts: Mapping[Number, Polynomial]) -> "ClosedForm":
        return cls(variables, tuple(parts.items()))

    @property
    def rates(self) -> tuple[Fraction, ...]:
        return tuple(r for r, _ in self.terms)

    def part(self, rate: Number) -> Polynomial:
        for r, p in self.terms:
            if r == rate:
                return p
        return Polynomial.zero(self.variables)

    def scale(self, c: Number) -> "ClosedForm":
        return ClosedForm(self.variables, tuple((r, poly_scale(p, c)) for r, p in self.terms))

    def substitute(self, point: Mapping[str, Number]) -> "ClosedForm":
        """Fix some spatial variables; e.g. a boundary value u(1, t) as a form in t alone."""
        subs = [(r, poly_substitute(p, point)) for r, p in self.terms]
        rest = subs[0][1].variables if subs else _remaining(self.variables, point)
        return ClosedForm(rest, tuple(subs))

    def eval(self, point: Mapping[str, Number], t: float) -> float:
        from .polyalg import poly_eval

        return sum(float(poly_eval(p, point)) * math.exp(float(r) * t) for r, p in self.terms)

    @property
    def display(self) -> str:
        return render_hyperbolic(self)

    def __str__(self) -> str:
        return self.display


def _remaining(variables: VariableSet, point) -> VariableSet:
    return VariableSet(n for n in variables if n not in point)


# -- traces -----------------------------------------------------------------


def extract_traces(s: SeriesSolution) -> list[MonomialTrace]:
    monos: set = set()
    for u in s.coeffs:
        monos.update(u.terms)
    from .polyalg import grlex_key

    return [
        MonomialTrace(m, tuple(u.coefficient(m) for u in s.coeffs))
        for m in sorted(monos, key=grlex_key)
    ]


# -- minimal recurrence -------------------------------------------------------


def berlekamp_massey(seq: Sequence[Number]) -> tuple[int, list[Fraction]]:
    """Shortest linear recurrence over Q.

    Returns ``(L, C)`` with connection polynomial ``C = [1, c_1, ..., c_d]``,
    ``d <= L``, such that ``sum_i C[i] a_{n-i} == 0`` for every ``L <= n < len(seq)``.
    """
    a = [Fraction(x) for x in seq]
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(a)):
        d = a[n]
        for i in range(1, L + 1):
            if i < len(C):
                d += C[i] * a[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        need = len(B) + m
        if len(C) < need:
            C.extend([Fraction(0)] * (need - len(C)))
        for i, bi in enumerate(B):
            C[i + m] -= coef * bi
        if 2 * L <= n:
            L = n + 1 - L
            B, b, m = T, d, 1
        else:
            m += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return L, C


def find_min_recurrence(a: Sequence[Number]) -> list[Fraction] | None:
    """Coefficients ``r`` with ``a_n = sum_{i=1..L} r[i-1] * a_{n-i}``, or None.

    None means the shortest recurrence is longer than ``len(a) // 2``, too
    long to be trusted from this much data.
    """
    if len(a) < 4:
        raise ValueError(f"need at least 4 terms, got {len(a)}")
    L, C = berlekamp_massey(a)
    if L > len(a) // 2:
        return None
    return [-C[i] if i < len(C) else Fraction(0) for i in range(1, L + 1)]


# -- exact rational roots ------------------------------------------------------

_TRIAL_LIMIT = 10**6


def _divisors(n: int) -> list[int]:
    """Positive divisors of |n| (n != 0), via trial division up to a bound.

    A cofactor left after trial division is treated as prime; for huge
    composite cofactors this can only miss candidates, never invent roots.
    """
    n = abs(n)
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n and p <= _TRIAL_LIMIT:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    divs = [1]
    for p, e in factors.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def rational_roots(coeffs: Sequence[Number]) -> list[tuple[Fraction, int]] | None:
    """Rational roots with multiplicity of ``sum coeffs[i] * z**i``.

    Returns None if the polynomial does not split completely over Q.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial has no finite root set")
    lcm = math.lcm(*(c.denominator for c in cs))
    ints = [int(c * lcm) for c in cs]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]

    roots: dict[Fraction, int] = {}
    while len(ints) > 1 and ints[0] == 0:
        ints.pop(0)
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1

    while len(ints) > 1:
        found = None
        for q in _divisors(ints[-1]):
            for p in _divisors(ints[0]):
                if math.gcd(p, q) != 1:
                    continue
                for sp in (p, -p):
                    if _vanishes(ints, sp, q):
                        found = Fraction(sp, q)
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots[found] = roots.get(found, 0) + 1
        ints = _deflate(ints, found.numerator, found.denominator)
    return sorted(roots.items())


def _vanishes(ints: list[int], p: int, q: int) -> bool:
    # sum a_i p^i q^(d-i) == 0, all in integers
    d = len(ints) - 1
    return sum(a * p**i * q ** (d - i) for i, a in enumerate(ints)) == 0


def _deflate(ints: list[int], p: int, q: int) -> list[int]:
    # divide by (q z - p); exact because p/q is a root
    d = len(ints) - 1
    out = [0] * d
    rem = 0
    for i in range(d, 0, -1):
        cur = ints[i] + rem
        out[i - 1] = cur // q
        assert cur % q == 0
        rem = out[i - 1] * p
    assert ints[0] + rem == 0
    return out


def _solve_linear(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan elimination over Q; None if singular."""
    n = len(A)
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                factor = M[r][col]
                M[r] = [vr - factor * vc for vr, vc in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


# -- recognition -------------------------------------------------------------


def recognize_sequence(a: Sequence[Number]) -> dict[Fraction, Fraction] | None:
    """Write ``a_n`` (already factorial-normalized) as ``sum A_j rate_j**n``; None if impossible."""
    rec = find_min_recurrence(a)
    if rec is None:
        return None
    L = len(rec)
    if L == 0:
        return {}
    # z^L - r_1 z^{L-1} - ... - r_L, lowest degree first
    char = [-rec[L - 1 - i] for i in range(L)] + [Fraction(1)]
    roots = rational_roots(char)
    if roots is None or any(mult > 1 for _, mult in roots):
        return None
    rates = [r for r, _ in roots]
    A = [[r**n for r in rates] for n in range(L)]  # 0**0 == 1 handles the constant rate
    amps = _solve_linear(A, [Fraction(x) for x in a[:L]])
    if amps is None:
        return None
    if any(sum(Aj * r**n for Aj, r in zip(amps, rates)) != a[n] for n in range(len(a))):
        return None
    return {r: A_ for r, A_ in zip(rates, amps) if A_}


def recognize(s: SeriesSolution) -> ClosedForm | None:
    """Closed form of ``s`` in the exponential basis, or None if not recognized.

    Needs ``s.order >= 6``; below that the evidence is too thin and None is returned.
    """
    if s.order < MIN_ORDER:
        return None
    vs = s.variables
    parts: dict[Fraction, dict] = {}
    for tr in extract_traces(s):
        a = [c * math.factorial(n) for n, c in enumerate(tr.seq)]
        amps = recognize_sequence(a)
        if amps is None:
            return None
        for rate, A_ in amps.items():
            parts.setdefault(rate, {})[tr.monomial] = A_
    cf = ClosedForm(vs, tuple((r, Polynomial(vs, ms)) for r, ms in parts.items()))
    if reexpand(cf, s.order) != list(s.coeffs):
        return None
    return cf


def reexpand(cf: ClosedForm, N: int) -> list[Polynomial]:
    """Taylor coefficients ``u_n = sum_j p_j rate_j**n / n!`` for n = 0..N."""
    out = []
    for n in range(N + 1):
        u = Polynomial.zero(cf.variables)
        for rate, p in cf.terms:
            u = poly_add(u, poly_scale(p, Fraction(rate) ** n / math.factorial(n)))
        out.append(u)
    return out


# -- rendering ---------------------------------------------------------------


def _rate_arg(rate: Fraction) -> str:
    num, den = abs(rate.numerator), rate.denominator
    s = "t" if num == 1 else f"{num}*t"
    if den != 1:
        s += f"/{den}"
    return ("-" if rate < 0 else "") + s


def _is_simple(p: Polynomial) -> bool:
    # a single term with an integer coefficient can stand bare in a product
    return len(p.terms) == 1 and all(c.denominator == 1 for c in p.terms.values())


def _product(p: Polynomial, func: str) -> str:
    if p.is_constant():
        c = p.constant_value()
        if c == 1:
            return func
        if c == -1:
            return "-" + func
    sp = format_poly(p)
    if not _is_simple(p):
        sp = f"({sp})"
    return f"{sp}*{func}"


def _join(items: list[str]) -> str:
    out = ""
    for s in items:
        if not out:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out or "0"


def _nterms(*polys: Polynomial) -> int:
    return sum(len(p.terms) for p in polys)


def render_hyperbolic(cf: ClosedForm) -> str:
    """Deterministic display string in the exp/sinh/cosh grammar.

    A rate pair ``+a, -a`` is shown as cosh/sinh when that does not add
    spatial terms.  A constant part equal to minus the sum of the remaining
    exponential parts is folded in as ``p*(exp(a*t)-1)``.  The stored
    exponential basis is never changed.
    """
    const = cf.part(0)
    hyper: dict[Fraction, tuple[Polynomial, Polynomial]] = {}
    expo: list[tuple[Fraction, Polynomial]] = []
    for rate, p in cf.terms:
        if rate <= 0:
            continue
        q = cf.part(-rate)
        if not q.is_zero():
            c, s = poly_add(p, q), poly_add(p, -q)
            if _nterms(c, s) <= _nterms(p, q):
                hyper[rate] = (c, s)
                continue
    for rate, p in cf.terms:
        if rate != 0 and abs(rate) not in hyper:
            expo.append((rate, p))

    fold = False
    if expo and not const.is_zero():
        total = Polynomial.zero(cf.variables)
        for _, p in expo:
            total = poly_add(total, p)
        fold = poly_add(total, const).is_zero()

    entries: list[tuple[tuple, str]] = []
    if not const.is_zero() and not fold:
        sc = format_poly(const)
        if len(const.terms) > 1 and len(cf.terms) > 1:
            sc = f"({sc})"
        entries.append(((Fraction(0), 0), sc))
    for rate, (c, s) in hyper.items():
        if not c.is_zero():
            entries.append(((rate, 0), _product(c, f"cosh({_rate_arg(rate)})")))
        if not s.is_zero():
            entries.append(((rate, 1), _product(s, f"sinh({_rate_arg(rate)})")))
    for rate, p in expo:
        func = f"exp({_rate_arg(rate)})"
        if fold:
            func = f"({func}-1)"
        entries.append(((abs(rate), 0 if rate > 0 else 1), _product(p, func)))
    entries.sort(key=lambda e: e[0])
    return _join([s for _, s in entries])
