"""Exact time-power-series solutions of heat-like and wave-like problems."""

from .closedform import ClosedForm, find_min_recurrence, recognize, reexpand, render_hyperbolic
from .diffop import DiffOp, DiffOpTerm, op_apply, op_sum
from .hpm import hpm_equals_taylor, hpm_heat, hpm_wave
from .parser import ParseError, parse_closed_form, parse_operator, parse_poly
from .polyalg import Polynomial, VariableSet
from .problem import ProblemSpec, load_problem
from .series import HeatProblem, SeriesSolution, WaveProblem, residual_floor, series_eval, solve_heat, solve_wave

__all__ = [
    "ClosedForm", "DiffOp", "DiffOpTerm", "HeatProblem", "ParseError", "Polynomial", "ProblemSpec",
    "SeriesSolution", "VariableSet", "WaveProblem", "find_min_recurrence", "hpm_equals_taylor",
    "hpm_heat", "hpm_wave", "load_problem", "op_apply", "op_sum", "parse_closed_form",
    "parse_operator", "parse_poly", "recognize", "reexpand", "render_hyperbolic",
    "residual_floor", "series_eval", "solve_heat", "solve_wave",
]
