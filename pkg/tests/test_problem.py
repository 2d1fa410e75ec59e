import pytest

from hpmtaylor.corpus import IDS, get_entry, problem_text
from hpmtaylor.polyalg import Polynomial
from hpmtaylor.problem import ProblemFileError, ProblemSpec, load_problem, parse_problem_text
from hpmtaylor.series import HeatProblem, WaveProblem

EXAMPLE1 = """\
# Example 1
kind: heat
vars: x
L: (1/2)*x^2*D(x,2)
f: 0
u0: x^2
"""


def test_load_example1(tmp_path):
    path = tmp_path / "ex1.pde"
    path.write_text(EXAMPLE1)
    spec = load_problem(path)
    assert spec.name == "ex1" and spec.order == 12
    p = spec.build()
    assert isinstance(p, HeatProblem)
    x = Polynomial.var(p.variables, "x")
    assert p.u0 == x**2 and p.f.is_zero()
    assert p.L.terms[0].coefficient == x**2 / 2


def test_load_example4_wave():
    spec = parse_problem_text(EXAMPLE1.replace("heat", "wave").replace("u0: x^2", "u0: x\nu1: x^2"))
    p = spec.build()
    assert isinstance(p, WaveProblem)
    assert p.u1 == Polynomial.var(p.variables, "x") ** 2


@pytest.mark.parametrize(
    "text, message, line",
    [
        (EXAMPLE1.replace("u0: x^2\n", ""), "missing required key 'u0'", None),
        (EXAMPLE1 + "u0: x\n", "duplicate key 'u0'", 7),
        (EXAMPLE1 + "bc: u(0,t)=0\n", "unknown key 'bc'", 7),
        (EXAMPLE1 + "order: 3\n", "order must lie in", 7),
        (EXAMPLE1 + "order: twelve\n", "order must be an integer", 7),
        (EXAMPLE1.replace("kind: heat", "kind: diffusion"), "kind must be heat or wave", 2),
        (EXAMPLE1.replace("kind: heat", "kind: wave"), "missing required key 'u1'", None),
        (EXAMPLE1 + "u1: x\n", "u1 is only allowed", 7),
        (EXAMPLE1.replace("u0: x^2", "u0: x^-2"), "malformed u0", 6),
        (EXAMPLE1.replace("D(x,2)", "x"), "malformed L", 4),
        (EXAMPLE1.replace("vars: x", "vars: x, x"), "duplicate variable", 3),
        (EXAMPLE1 + "just text\n", "expected 'key: value'", 7),
        (EXAMPLE1.replace("f: 0", "f:"), "empty value", 5),
    ],
)
def test_malformed_files(text, message, line):
    with pytest.raises(ProblemFileError) as info:
        parse_problem_text(text, "p.pde")
    assert message in str(info.value)
    assert info.value.line == line


def test_unreadable_file(tmp_path):
    with pytest.raises(ProblemFileError):
        load_problem(tmp_path / "missing.pde")


def test_spec_invariants():
    from hpmtaylor.polyalg import VariableSet

    vs = VariableSet(["x"])
    with pytest.raises(ValueError):
        ProblemSpec("wave", vs, "D(x,2)")
    with pytest.raises(ValueError):
        ProblemSpec("heat", vs, "D(x,2)", u1_text="x")
    with pytest.raises(ValueError):
        ProblemSpec("heat", vs, "D(x,2)", order=65)


@pytest.mark.parametrize("entry_id", IDS)
def test_corpus_files_round_trip_through_dumps(entry_id):
    spec = get_entry(entry_id).spec
    again = parse_problem_text(spec.dumps())
    assert again == spec
    assert again.build() == spec.build()


def test_comments_and_blank_lines():
    text = "\n# leading comment\n" + problem_text("example6") + "\n\n"
    assert parse_problem_text(text).kind == "wave"
