"""Feedback-based quantum optimisation for constrained binary problems."""

from ._core import (
    Error,
    InputError,
    Problem,
    brute_force,
    load_problem,
    next_control,
    operators,
    parse_problem,
    pauli_commutator,
    run,
    verify,
)

__all__ = [
    "Error",
    "InputError",
    "Problem",
    "brute_force",
    "load_problem",
    "next_control",
    "operators",
    "parse_problem",
    "pauli_commutator",
    "run",
    "verify",
]
