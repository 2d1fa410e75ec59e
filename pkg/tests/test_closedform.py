import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
import hypothesis.strategies as st

from hpmtaylor.closedform import (
    ClosedForm,
    berlekamp_massey,
    extract_traces,
    find_min_recurrence,
    rational_roots,
    recognize,
    recognize_sequence,
    reexpand,
    render_hyperbolic,
)
from hpmtaylor.corpus import get_entry
from hpmtaylor.polyalg import Polynomial
from hpmtaylor.series import SeriesSolution, solve

from conftest import X, XY, XYZ, polynomials, small_fractions

F = Fraction
x1 = Polynomial.var(X, "x")
bx, by = Polynomial.var(XY, "x"), Polynomial.var(XY, "y")
x, y, z = (Polynomial.var(XYZ, n) for n in "xyz")


def series(name, N):
    return solve(get_entry(name).spec.build(), N)


# -- brute-force oracle for the minimal recurrence ---------------------------


def brute_min_order(a):
    """Smallest L admitting r with a_n = sum r_i a_{n-i} for L <= n < len(a)."""
    q = [sp.Rational(v.numerator, v.denominator) for v in a]
    for L in range(len(a) + 1):
        rows = [[q[n - 1 - i] for i in range(L)] for n in range(L, len(a))]
        rhs = [q[n] for n in range(L, len(a))]
        if not rows:
            return L
        if L == 0:
            if all(v == 0 for v in rhs):
                return 0
            continue
        M = sp.Matrix(rows)
        if M.rank() == M.row_join(sp.Matrix(rhs)).rank():
            return L
    return len(a)


def test_bm_examples():
    assert find_min_recurrence([1] * 6) == [1]
    assert find_min_recurrence([1, 0, 1, 0, 1, 0]) == [0, 1]
    assert find_min_recurrence([0, 0, 0, 0]) == []
    with pytest.raises(ValueError):
        find_min_recurrence([1, 2, 3])


def test_bm_insufficient_evidence():
    # 1/(n+1) normalized by n! is not C-finite: the recurrence keeps growing
    a = [F(math.factorial(n), n + 1) for n in range(9)]
    assert find_min_recurrence(a) is None


seqs = st.lists(st.integers(-3, 3).map(Fraction), min_size=4, max_size=9)


@settings(max_examples=40)
@given(seqs)
def test_bm_matches_brute_force(a):
    L, C = berlekamp_massey(a)
    assert L == brute_min_order(a)
    for n in range(L, len(a)):
        assert sum(C[i] * a[n - i] for i in range(len(C))) == 0


def test_rational_roots():
    # (z - 1)(z + 1) z = z^3 - z
    assert rational_roots([0, -1, 0, 1]) == [(F(-1), 1), (F(0), 1), (F(1), 1)]
    # (2z - 1)^2 (z + 3)
    p = sp.Poly(sp.expand((2 * sp.Symbol("z") - 1) ** 2 * (sp.Symbol("z") + 3)))
    coeffs = [int(c) for c in reversed(p.all_coeffs())]
    assert rational_roots(coeffs) == [(F(-3), 1), (F(1, 2), 2)]
    assert rational_roots([-1, -1, 1]) is None  # golden ratio
    assert rational_roots([1, 0, 1]) is None  # +-i


def test_recognize_sequence_rejects_repeated_root():
    assert recognize_sequence([n for n in range(10)]) is None  # n * 1^n


# -- traces ------------------------------------------------------------------


def test_extract_traces_examples():
    (tr,) = extract_traces(series("example1", 4))
    assert tr.monomial == (2,)
    assert tr.seq == (1, 1, F(1, 2), F(1, 6), F(1, 24))
    trs = {t.monomial: t.seq for t in extract_traces(series("example2", 4))}
    assert trs == {(0, 2): (1, 0, F(1, 2), 0, F(1, 24)), (2, 0): (0, 1, 0, F(1, 6), 0)}
    assert extract_traces(SeriesSolution("heat", (Polynomial.zero(X),) * 5)) == []


# -- recognition ---------------------------------------------------------------


def test_recognize_example1():
    cf = recognize(series("example1", 8))
    assert cf.terms == ((F(1), x1**2),)
    assert cf.display == "x^2*exp(t)"


def test_recognize_example3():
    cf = recognize(series("example3", 8))
    f = x**4 * y**4 * z**4
    assert cf.terms == ((F(0), -f), (F(1), f))
    assert cf.display == "x^4*y^4*z^4*(exp(t)-1)"


def test_recognize_example6():
    cf = recognize(series("example6", 8))
    assert dict(cf.terms) == {F(1): x**2 + y**2, F(-1): z**2, F(0): -(x**2) - y**2 - z**2}


@pytest.mark.parametrize("name", [f"example{i}" for i in range(1, 7)])
def test_corpus_rates_and_round_trip(name):
    s = series(name, 12)
    cf = recognize(s)
    assert set(cf.rates) <= {F(-1), F(0), F(1)}
    assert reexpand(cf, s.order) == list(s.coeffs)
    assert cf == get_entry(name).expected_closed_form


def test_evidence_floor():
    assert recognize(series("example1", 5)) is None
    assert recognize(series("example1", 6)) is not None


def test_negative_control():
    coeffs = tuple(Polynomial(XY, {(1, 0): F(1, n + 1), (0, 2): F(1, n + 1)}) for n in range(13))
    assert recognize(SeriesSolution("heat", coeffs)) is None


def test_repeated_root_not_recognized():
    # t*exp(t): c_n = 1/(n-1)! for n >= 1
    coeffs = (Polynomial.zero(X),) + tuple(x1 / math.factorial(n - 1) for n in range(1, 13))
    assert recognize(SeriesSolution("heat", coeffs)) is None


def test_irrational_rate_not_recognized():
    # cosh(sqrt(2) t): a_n = 2^(n/2) for even n, 0 for odd n
    coeffs = tuple(x1 * F(2 ** (n // 2), math.factorial(n)) if n % 2 == 0 else Polynomial.zero(X) for n in range(13))
    assert recognize(SeriesSolution("heat", coeffs)) is None


rates = st.sampled_from([F(-2), F(-1), F(-1, 2), F(0), F(1, 3), F(1), F(2), F(3)])


@st.composite
def closed_forms(draw):
    rs = draw(st.lists(rates, min_size=0, max_size=3, unique=True))
    return ClosedForm(XY, tuple((r, draw(polynomials(XY, max_degree=3, max_terms=3))) for r in rs))


@settings(max_examples=40)
@given(closed_forms())
def test_round_trip_property(cf):
    s = SeriesSolution("heat", tuple(reexpand(cf, 12)))
    got = recognize(s)
    assert got == cf
    assert reexpand(got, 12) == list(s.coeffs)


@settings(max_examples=30)
@given(closed_forms(), small_fractions.filter(bool))
def test_scale_equivariance(cf, alpha):
    s = SeriesSolution("heat", tuple(reexpand(cf, 10)))
    scaled = SeriesSolution("heat", tuple(u * alpha for u in s.coeffs))
    a, b = recognize(s), recognize(scaled)
    assert b.rates == a.rates
    assert b == a.scale(alpha)


# -- reexpand / render ---------------------------------------------------------


def test_reexpand_examples():
    assert reexpand(ClosedForm(X, ((1, x1**2),)), 2) == [x1**2, x1**2, x1**2 / 2]
    p = x1**3 + 1
    assert reexpand(ClosedForm(X, ((0, p),)), 4) == [p] + [Polynomial.zero(X)] * 4
    assert reexpand(ClosedForm(X, ()), 3) == [Polynomial.zero(X)] * 4


def test_render_hyperbolic_examples():
    cf2 = ClosedForm(XY, ((1, (bx**2 + by**2) / 2), (-1, (by**2 - bx**2) / 2)))
    assert render_hyperbolic(cf2) == "y^2*cosh(t) + x^2*sinh(t)"
    cf5 = ClosedForm(XY, ((1, bx**4 / 2 + by**4 / 2), (-1, bx**4 / 2 - by**4 / 2)))
    assert render_hyperbolic(cf5) == "x^4*cosh(t) + y^4*sinh(t)"
    assert render_hyperbolic(ClosedForm(X, ((1, x1**2),))) == "x^2*exp(t)"


def test_render_keeps_exponentials_when_hyperbolic_is_longer():
    cf = ClosedForm(XY, ((1, bx), (-1, by)))
    assert render_hyperbolic(cf) == "x*exp(t) + y*exp(-t)"


def test_render_misc():
    assert render_hyperbolic(ClosedForm(X, ())) == "0"
    assert render_hyperbolic(ClosedForm(X, ((F(1, 2), -x1 / 3),))) == "(-x/3)*exp(t/2)"
    assert render_hyperbolic(ClosedForm(X, ((2, -x1),))) == "-x*exp(2*t)"
    assert render_hyperbolic(ClosedForm(X, ((0, x1), (-3, Polynomial.const(X, 1))))) == "x + exp(-3*t)"
