"""Top-level package for evenset.

evenset computes maximum weight independent sets in (C4, prism)-free
perfect graphs of bounded degree. It can be used as a CLI (``evenset``) or
as a library::

    from evenset import Graph, solve, tame_separator
"""

from .errors import EvensetError, NotPawFriendlyEvidence
from .formats import parse_dimacs, render_dimacs, separator_from_json, separator_to_json
from .generate import generate
from .models import EvenSetSeparator, Graph, IteratedEvenSet, Weights
from .recognition import check_preconditions, is_berge, is_even_pair
from .separator import build_separator_no_balanced, tame_separator, verify_separator
from .sfm import SfmOracle, check_submodularity, minimize_brute, minimize_mnp
from .solver import SolveOptions, SolverResult, alpha_extend, brute_force_mwis, solve, verify_solution

__all__ = [
    "EvensetError",
    "NotPawFriendlyEvidence",
    "parse_dimacs",
    "render_dimacs",
    "separator_from_json",
    "separator_to_json",
    "generate",
    "EvenSetSeparator",
    "Graph",
    "IteratedEvenSet",
    "Weights",
    "check_preconditions",
    "is_berge",
    "is_even_pair",
    "build_separator_no_balanced",
    "tame_separator",
    "verify_separator",
    "SfmOracle",
    "check_submodularity",
    "minimize_brute",
    "minimize_mnp",
    "SolveOptions",
    "SolverResult",
    "alpha_extend",
    "brute_force_mwis",
    "solve",
    "verify_solution",
]
