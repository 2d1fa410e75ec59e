"""Line-oriented problem files.

    # Example 1
    kind: heat
    vars: x
    L: (1/2)*x^2*D(x,2)
    f: 0
    u0: x^2
    order: 12

One ``key: value`` per line, ``#`` starts a comment.  Keys: kind, vars,
L, f, u0, u1 (wave only), order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .parser import ParseError, parse_operator, parse_poly
from .polyalg import AlgebraError, VariableSet
from .series import DEFAULT_ORDER, HeatProblem, Problem, WaveProblem

KEYS = ("kind", "vars", "L", "f", "u0", "u1", "order")
REQUIRED = ("kind", "vars", "L", "u0")
MIN_FILE_ORDER, MAX_ORDER = 4, 64


class ProblemFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<text>"):
        self.line = line
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class ProblemSpec:
    kind: str
    variables: VariableSet
    operator_text: str
    f_text: str = "0"
    u0_text: str = "0"
    u1_text: str | None = None
    order: int = DEFAULT_ORDER
    name: str = field(default="problem", compare=False)

    def __post_init__(self):
        if self.kind not in ("heat", "wave"):
            raise ValueError(f"kind must be heat or wave, got {self.kind!r}")
        if self.kind == "wave" and self.u1_text is None:
            raise ValueError("wave problems need u1")
        if self.kind == "heat" and self.u1_text is not None:
            raise ValueError("heat problems take no u1")
        if not MIN_FILE_ORDER <= self.order <= MAX_ORDER:
            raise ValueError(f"order must lie in [{MIN_FILE_ORDER}, {MAX_ORDER}], got {self.order}")

    def build(self) -> Problem:
        vs = self.variables
        L = parse_operator(self.operator_text, vs)
        f = parse_poly(self.f_text, vs)
        u0 = parse_poly(self.u0_text, vs)
        if self.kind == "heat":
            return HeatProblem(L, f, u0)
        return WaveProblem(L, f, u0, parse_poly(self.u1_text, vs))

    def dumps(self) -> str:
        lines = [
            f"kind: {self.kind}",
            f"vars: {', '.join(self.variables.names)}",
            f"L: {self.operator_text}",
            f"f: {self.f_text}",
            f"u0: {self.u0_text}",
        ]
        if self.u1_text is not None:
            lines.append(f"u1: {self.u1_text}")
        lines.append(f"order: {self.order}")
        return "\n".join(lines) + "\n"


def parse_problem_text(text: str, source: str = "<text>", name: str | None = None) -> ProblemSpec:
    values: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if not sep:
            raise ProblemFileError(f"expected 'key: value', got {line!r}", lineno, source)
        if key not in KEYS:
            raise ProblemFileError(f"unknown key {key!r}", lineno, source)
        if key in values:
            raise ProblemFileError(f"duplicate key {key!r}", lineno, source)
        if not value:
            raise ProblemFileError(f"empty value for {key!r}", lineno, source)
        values[key] = (value, lineno)

    for key in REQUIRED:
        if key not in values:
            raise ProblemFileError(f"missing required key {key!r}", None, source)

    kind, kline = values["kind"]
    if kind not in ("heat", "wave"):
        raise ProblemFileError(f"kind must be heat or wave, got {kind!r}", kline, source)
    if kind == "wave" and "u1" not in values:
        raise ProblemFileError("missing required key 'u1' for a wave problem", None, source)
    if kind == "heat" and "u1" in values:
        raise ProblemFileError("u1 is only allowed for wave problems", values["u1"][1], source)

    vtext, vline = values["vars"]
    try:
        variables = VariableSet(v for v in vtext.replace(",", " ").split())
    except ValueError as exc:
        raise ProblemFileError(str(exc), vline, source) from None

    order = DEFAULT_ORDER
    if "order" in values:
        otext, oline = values["order"]
        try:
            order = int(otext)
        except ValueError:
            raise ProblemFileError(f"order must be an integer, got {otext!r}", oline, source) from None
        if not MIN_FILE_ORDER <= order <= MAX_ORDER:
            raise ProblemFileError(f"order must lie in [{MIN_FILE_ORDER}, {MAX_ORDER}]", oline, source)

    spec = ProblemSpec(
        kind=kind,
        variables=variables,
        operator_text=values["L"][0],
        f_text=values.get("f", ("0", 0))[0],
        u0_text=values["u0"][0],
        u1_text=values["u1"][0] if "u1" in values else None,
        order=order,
        name=name or Path(source).stem,
    )
    # parse every expression now so malformed values fail at load time
    checks = [("L", parse_operator, spec.operator_text)]
    checks += [(k, parse_poly, values[k][0]) for k in ("f", "u0", "u1") if k in values]
    for key, fn, expr in checks:
        try:
            fn(expr, variables)
        except (ParseError, AlgebraError) as exc:
            raise ProblemFileError(f"malformed {key}: {exc}", values[key][1], source) from None
    return spec


def load_problem(path: str | Path) -> ProblemSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError(f"cannot read file: {exc.strerror}", None, str(path)) from None
    return parse_problem_text(text, str(path), name=path.stem)
