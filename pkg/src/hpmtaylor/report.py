"""Pipelines behind the CLI commands and their reports.

A report is a plain dict of strings, ints and bools so the JSON and text
renderings are produced from the very same values.  Rationals are
serialized as ``p/q`` strings; nothing is converted to float except the
explicitly labelled ``approx`` fields of ``eval``.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .closedform import ClosedForm, recognize, reexpand
from .corpus import CorpusEntry, load_corpus
from .hpm import hpm_equals_taylor, hpm_expand
from .polyalg import format_poly
from .problem import ProblemSpec
from .series import (
    HeatProblem,
    SeriesSolution,
    is_finite_floor,
    residual_contract,
    residual_floor,
    series_eval,
    solve,
)

TIMING_KEYS = ("elapsed_s",)


def _floor_value(floor) -> int | str:
    return floor if is_finite_floor(floor) else "inf"


def closed_form_dict(cf: ClosedForm) -> dict:
    return {
        "display": cf.display,
        "terms": [{"rate": str(r), "spatial": format_poly(p)} for r, p in cf.terms],
    }


def _series_block(spec: ProblemSpec, order: int):
    problem = spec.build()
    s = solve(problem, order)
    floor = residual_floor(s, problem)
    return problem, s, {
        "coefficients": [format_poly(u) for u in s.coeffs],
        "residual_floor": _floor_value(floor),
        "residual_ok": floor >= residual_contract(s.kind, order),
    }


def default_hpm_terms(kind: str, order: int) -> int:
    """Largest K whose homotopy terms fit inside a series of the given order."""
    return order if kind == "heat" else max(1, (order - 1) // 2)


def _hpm_block(problem, K: int) -> dict:
    e = hpm_expand(problem, K)
    s = solve(problem, max(e.covered, 1 if isinstance(problem, HeatProblem) else 2))
    check = hpm_equals_taylor(e, s)
    return {
        "terms": K,
        "covered_t_powers": check.covered,
        "equal": check.equal,
        "first_divergence": list(check.first_divergence) if check.first_divergence else None,
    }


def run_solve(spec: ProblemSpec, order: int | None = None, recognize_form: bool = False) -> dict:
    start = time.perf_counter()
    order = spec.order if order is None else order
    problem, s, block = _series_block(spec, order)
    report: dict[str, Any] = {
        "name": spec.name,
        "kind": spec.kind,
        "variables": list(spec.variables.names),
        "order": order,
        **block,
    }
    if recognize_form:
        cf = recognize(s)
        report["recognized"] = cf is not None
        report["closed_form"] = closed_form_dict(cf) if cf is not None else None
    report["elapsed_s"] = round(time.perf_counter() - start, 6)
    return report


def run_hpm_check(spec: ProblemSpec, terms: int) -> dict:
    start = time.perf_counter()
    report = {
        "name": spec.name,
        "kind": spec.kind,
        "variables": list(spec.variables.names),
        "hpm": _hpm_block(spec.build(), terms),
    }
    report["elapsed_s"] = round(time.perf_counter() - start, 6)
    return report


def run_eval(spec: ProblemSpec, point: Mapping[str, Fraction], t: Fraction, order: int | None = None) -> dict:
    start = time.perf_counter()
    order = spec.order if order is None else order
    problem = spec.build()
    s = solve(problem, order)
    value = series_eval(s, point, t)
    report: dict[str, Any] = {
        "name": spec.name,
        "kind": spec.kind,
        "order": order,
        "at": {k: str(v) for k, v in point.items()},
        "t": str(t),
        "value": str(value),
        "approx": float(value),
    }
    cf = recognize(s)
    if cf is not None:
        report["closed_form"] = cf.display
        report["closed_form_approx"] = cf.eval(point, float(t))
    report["elapsed_s"] = round(time.perf_counter() - start, 6)
    return report


def run_boundary_check(entry: CorpusEntry, cf: ClosedForm | None = None) -> list[dict]:
    """Restrict the recognized solution to each stated boundary point and compare exactly."""
    if cf is None:
        cf = recognize(solve(entry.spec.build(), entry.spec.order))
    out = []
    for bc in entry.boundary_checks:
        got = cf.substitute(bc.at) if cf is not None else None
        out.append(
            {
                "at": {k: str(v) for k, v in bc.at.items()},
                "expected": bc.expected.display,
                "got": got.display if got is not None else None,
                "ok": got is not None and got == bc.expected,
            }
        )
    return out


def _corpus_integrity(entry: CorpusEntry, problem, order: int) -> bool:
    """The stored exact solution must itself solve the problem to the series order."""
    expected = entry.expected_closed_form
    coeffs = reexpand(expected, order)
    s = SeriesSolution(entry.spec.kind, tuple(coeffs))
    if coeffs[0] != problem.u0:
        return False
    if entry.spec.kind == "wave" and coeffs[1] != problem.u1:
        return False
    return residual_floor(s, problem) >= residual_contract(s.kind, order)


def run_entry(entry: CorpusEntry, order: int | None = None) -> dict:
    start = time.perf_counter()
    order = entry.spec.order if order is None else order
    problem, s, block = _series_block(entry.spec, order)
    cf = recognize(s)
    expected = entry.expected_closed_form
    report: dict[str, Any] = {
        "name": entry.id,
        "kind": entry.spec.kind,
        "variables": list(entry.variables.names),
        "order": order,
        **block,
        "recognized": cf is not None,
        "closed_form": closed_form_dict(cf) if cf is not None else None,
        "expected_closed_form": expected.display,
        "closed_form_match": cf == expected,
        "corpus_integrity": _corpus_integrity(entry, problem, order),
        "hpm": _hpm_block(problem, default_hpm_terms(entry.spec.kind, order)),
        "boundary": run_boundary_check(entry, cf),
        "boundary_note": entry.boundary_note,
    }
    ok = (
        report["residual_ok"]
        and report["closed_form_match"]
        and report["corpus_integrity"]
        and report["hpm"]["equal"]
        and all(b["ok"] for b in report["boundary"])
    )
    report["verdict"] = "PASS" if ok else "FAIL"
    report["elapsed_s"] = round(time.perf_counter() - start, 6)
    return report


def run_corpus(order: int | None = None, entries: Sequence[CorpusEntry] | None = None, workers: int = 1) -> dict:
    entries = load_corpus() if entries is None else list(entries)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            reports = list(pool.map(lambda e: run_entry(e, order), entries))
    else:
        reports = [run_entry(e, order) for e in entries]
    verdict = "PASS" if all(r["verdict"] == "PASS" for r in reports) else "FAIL"
    return {"entries": reports, "verdict": verdict}


def with_expected(entry: CorpusEntry, expected_text: str) -> CorpusEntry:
    return replace(entry, expected_text=expected_text)


# -- rendering ---------------------------------------------------------------


def strip_timing(report):
    if isinstance(report, dict):
        return {k: strip_timing(v) for k, v in report.items() if k not in TIMING_KEYS}
    if isinstance(report, list):
        return [strip_timing(v) for v in report]
    return report


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)


def _fmt(v) -> str:
    if v is None or v == "":
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float) and not math.isinf(v):
        return repr(v)
    return str(v)


def to_text(report: dict, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if key == "coefficients":
            lines.append(f"{indent}coefficients:")
            lines += [f"{indent}  u_{n} = {c}" for n, c in enumerate(value)]
        elif key == "entries":
            for entry in value:
                lines.append(f"{indent}[{entry['verdict']}] {entry['name']}")
                lines.append(to_text(entry, indent + "  "))
        elif key == "closed_form" and isinstance(value, dict):
            lines.append(f"{indent}closed_form: {value['display']}")
            lines += [f"{indent}  rate {t['rate']}: {t['spatial']}" for t in value["terms"]]
        elif key == "boundary":
            lines.append(f"{indent}boundary:")
            for b in value:
                at = ", ".join(f"{k}={v}" for k, v in b["at"].items())
                lines.append(f"{indent}  u({at}, t) = {_fmt(b['got'])}  expected {b['expected']}  ok={_fmt(b['ok'])}")
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(to_text(value, indent + "  "))
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: {', '.join(_fmt(v) for v in value)}")
        else:
            lines.append(f"{indent}{key}: {_fmt(value)}")
    return "\n".join(line for line in lines if line)
