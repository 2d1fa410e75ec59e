from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from hpmtaylor.diffop import DiffOp, DiffOpTerm, op_apply, op_sum
from hpmtaylor.polyalg import Polynomial, VariableMismatchError

from conftest import X, XY, XYZ, nonzero_fractions, polynomials, small_fractions

x = Polynomial.var(X, "x")
bx, by = Polynomial.var(XY, "x"), Polynomial.var(XY, "y")

L1 = DiffOp.from_terms(X, [(x**2 / 2, {"x": 2})])
L2 = DiffOp.from_terms(XY, [(by**2 / 2, {"x": 2}), (bx**2 / 2, {"y": 2})])


def test_example1_operator():
    assert op_apply(L1, x**2) == x**2


def test_example2_operator():
    assert op_apply(L2, by**2) == bx**2


def test_zero_input():
    assert op_apply(L2, Polynomial.zero(XY)).is_zero()


def test_sum_with_zero_operator():
    S = op_sum(L2, DiffOp.zero(XY))
    assert S.terms == L2.terms


def test_example5_built_by_sum():
    a = DiffOp.from_terms(XY, [(bx**2 / 12, {"x": 2})])
    b = DiffOp.from_terms(XY, [(by**2 / 12, {"y": 2})])
    L5 = op_sum(a, b)
    assert len(L5.terms) == 2
    assert op_apply(L5, bx**4) == bx**4


def test_sum_merges_only_identical_index():
    a = DiffOp.from_terms(X, [(x**2 / 2, {"x": 2})])
    S = op_sum(a, a)
    assert len(S.terms) == 1 and S.terms[0].coefficient == x**2
    assert op_sum(a, DiffOp.from_terms(X, [(-x**2 / 2, {"x": 2})])).terms == ()
    assert len(op_sum(a, DiffOp.from_terms(X, [(x, {"x": 1})])).terms) == 2


def test_construction_keeps_duplicate_terms():
    L = DiffOp.from_terms(X, [(x**2 / 2, {"x": 2}), (x**2 / 2, {"x": 2})])
    assert len(L.terms) == 2
    assert op_apply(L, x**3) == 6 * x**3


def test_mixed_partial_and_zeroth_order():
    L = DiffOp.from_terms(XY, [(Polynomial.const(XY, 1), {"x": 1, "y": 1}), (bx, {})])
    assert op_apply(L, bx**2 * by**3) == 6 * bx * by**2 + bx**3 * by**3


def test_mismatch_and_invalid_terms():
    with pytest.raises(VariableMismatchError):
        op_apply(L1, bx)
    with pytest.raises(VariableMismatchError):
        op_sum(L1, L2)
    with pytest.raises(ValueError):
        DiffOpTerm(Polynomial.zero(X), (2,))


@st.composite
def operators(draw, vs=XY):
    terms = []
    for _ in range(draw(st.integers(0, 3))):
        deriv = tuple(draw(st.integers(0, 2)) for _ in vs)
        coef = draw(polynomials(vs, max_degree=3, max_terms=3))
        if not coef.is_zero():
            terms.append(DiffOpTerm(coef, deriv))
    return DiffOp(vs, tuple(terms))


@given(operators(), polynomials(XY), polynomials(XY), small_fractions, small_fractions)
def test_linearity(L, u, v, a, b):
    assert op_apply(L, a * u + b * v) == a * op_apply(L, u) + b * op_apply(L, v)


@given(operators(), operators(), polynomials(XY))
def test_sum_is_pointwise(a, b, u):
    assert op_apply(op_sum(a, b), u) == op_apply(a, u) + op_apply(b, u)


@given(operators(XYZ), polynomials(XYZ))
def test_degree_bookkeeping(L, u):
    for term in L.terms:
        single = DiffOp(XYZ, (term,))
        out = op_apply(single, u)
        k, dc, d = term.order, term.coefficient.degree, u.degree
        if all(any(e < o for e, o in zip(m, term.deriv)) for m in u.terms):
            assert out.is_zero()
        elif d >= k:
            assert out.degree <= d + dc - k
