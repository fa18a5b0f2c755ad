"""Periods of genus-2 division-polynomial sequences modulo primes."""

from .curve import Curve, IntegralPoint, discriminant, eval_F, excluded_primes, factorize, screen_prime
from .sequence import SequenceSeed, seed_from_table, term_exact

__all__ = [
    "Curve",
    "IntegralPoint",
    "SequenceSeed",
    "discriminant",
    "eval_F",
    "excluded_primes",
    "factorize",
    "screen_prime",
    "seed_from_table",
    "term_exact",
]
