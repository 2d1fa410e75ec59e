import random
from fractions import Fraction

import hypothesis
import hypothesis.strategies as st
import pytest

from hpmtaylor.diffop import DiffOp, DiffOpTerm
from hpmtaylor.polyalg import Polynomial, VariableSet
from hpmtaylor.series import HeatProblem, WaveProblem

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

XYZ = VariableSet(["x", "y", "z"])
XY = VariableSet(["x", "y"])
X = VariableSet(["x"])

small_fractions = st.builds(
    Fraction,
    st.integers(-9, 9),
    st.integers(1, 6),
)
nonzero_fractions = small_fractions.filter(bool)


@st.composite
def polynomials(draw, variables=XYZ, max_degree=6, max_terms=8):
    n = len(variables)
    monos = st.lists(st.integers(0, max_degree), min_size=n, max_size=n).map(tuple)
    monos = monos.filter(lambda m: sum(m) <= max_degree)
    terms = draw(st.dictionaries(monos, small_fractions, max_size=max_terms))
    return Polynomial(variables, terms)


variable_sets = st.sampled_from([X, XY, XYZ])


def random_poly(rng: random.Random, vs: VariableSet, max_degree: int, max_terms: int = 4) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        while True:
            m = tuple(rng.randint(0, max_degree) for _ in vs)
            if sum(m) <= max_degree:
                break
        terms[m] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return Polynomial(vs, terms)


def random_operator(rng: random.Random, vs: VariableSet, max_terms: int = 3) -> DiffOp:
    # coefficient degree <= derivative order keeps the recurrence from raising degrees
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        deriv = [0] * len(vs)
        deriv[rng.randrange(len(vs))] = rng.randint(1, 2)
        if len(vs) > 1 and rng.random() < 0.2:
            deriv[rng.randrange(len(vs))] += 1
        coef = random_poly(rng, vs, sum(deriv), 2)
        if not coef.is_zero():
            terms.append(DiffOpTerm(coef, tuple(deriv)))
    return DiffOp(vs, tuple(terms))


def random_problem(rng: random.Random, kind: str, max_degree: int = 4):
    vs = rng.choice([X, XY])
    L = random_operator(rng, vs)
    f = random_poly(rng, vs, max_degree)
    u0 = random_poly(rng, vs, max_degree)
    if kind == "heat":
        return HeatProblem(L, f, u0)
    return WaveProblem(L, f, u0, random_poly(rng, vs, max_degree))


@pytest.fixture
def rng():
    return random.Random(20240501)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(RESULTS, key=lambda s: int(s[1:4])):
        terminalreporter.write_line(f"{RESULTS[label]:<14} {label}")
