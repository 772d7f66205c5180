"""Exact solvers for multiway partitioning and makespan minimization on uniform machines.

Jobs are described in high-multiplicity form: a list of distinct sizes
(ascending) and a parallel list of counts. Assignments are lists of rows, one
per machine, each row giving how many jobs of each size that machine runs.
Makespan values cross the boundary as exact rational strings "n/d"; this layer
converts them to fractions.Fraction.
"""

from fractions import Fraction

from ._core import (
    BudgetExceeded,
    brute_mcilp,
    brute_partition,
    gen_feasible_partition,
    gen_uniform_random,
    normalize_jobs,
    solve_mcilp,
    solve_partition,
    verify_partition,
)
from ._core import brute_makespan as _brute_makespan
from ._core import solve_makespan as _solve_makespan
from ._core import verify_makespan as _verify_makespan

__all__ = [
    "BudgetExceeded",
    "brute_makespan",
    "brute_mcilp",
    "brute_partition",
    "gen_feasible_partition",
    "gen_uniform_random",
    "normalize_jobs",
    "solve_makespan",
    "solve_mcilp",
    "solve_partition",
    "verify_makespan",
    "verify_partition",
]

__version__ = "0.1.0"


def solve_makespan(sizes, counts, speeds):
    """Exact minimum makespan as (Fraction, assignment rows)."""
    value, assignment = _solve_makespan(sizes, counts, speeds)
    return Fraction(value), assignment


def brute_makespan(sizes, counts, speeds, **kwargs):
    """Exhaustive reference optimum as a Fraction."""
    return Fraction(_brute_makespan(sizes, counts, speeds, **kwargs))


def verify_makespan(sizes, counts, speeds, assignment):
    """Exact makespan of a complete assignment as a Fraction."""
    return Fraction(_verify_makespan(sizes, counts, speeds, assignment))
