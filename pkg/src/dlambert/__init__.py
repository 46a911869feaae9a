"""Counting, enumerating and checking solutions of x * g**x = c (mod p**e)."""

from .modarith import PrimePower, Residue
from .solver import DwpInstance, SolutionSet, brute_force, count_solutions, solve_all

__all__ = [
    "DwpInstance",
    "PrimePower",
    "Residue",
    "SolutionSet",
    "brute_force",
    "count_solutions",
    "solve_all",
]
