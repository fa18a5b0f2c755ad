"""Quintic genus-2 models Y^2 = F(X), integral points, and prime screening."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import sympy

if TYPE_CHECKING:
    from .sequence import SequenceSeed


class CurveError(ValueError):
    pass


class DegenerateSeedError(ValueError):
    """c3 c4 c5 c6 c7 (c4^3 - c3^3 c5) vanishes, so the prime screen is undefined."""


@dataclass(frozen=True)
class Curve:
    """Y^2 = X^5 + a4 X^4 + a3 X^3 + a2 X^2 + a1 X + a0 over the integers."""

    a4: int
    a3: int
    a2: int
    a1: int
    a0: int
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.check and discriminant(self) == 0:
            raise CurveError(f"singular model, disc(F) = 0: {self.coeffs}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficients of F from the constant term up, including the leading 1."""
        return (self.a0, self.a1, self.a2, self.a3, self.a4, 1)


@dataclass(frozen=True)
class IntegralPoint:
    x: int
    y: int


def eval_F(curve: Curve, x: int) -> int:
    acc = 0
    for a in reversed(curve.coeffs):
        acc = acc * x + a
    return acc


def validate_point(curve: Curve, pt: IntegralPoint) -> bool:
    return pt.y * pt.y == eval_F(curve, pt.x)


def _bareiss_det(m: list[list[int]]) -> int:
    # fraction-free elimination; every division below is exact
    a = [row[:] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def sylvester_matrix(f: list[int], g: list[int]) -> list[list[int]]:
    """Sylvester matrix of two polynomials given high-degree-first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + f + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + g + [0] * (size - n - 1 - i))
    return rows


def discriminant(curve: Curve) -> int:
    """disc(F) = (-1)^(5*4/2) Res(F, F') = Res(F, F'), since F is monic of degree 5."""
    f = list(reversed(curve.coeffs))
    df = [c * (5 - i) for i, c in enumerate(f[:-1])]
    return _bareiss_det(sylvester_matrix(f, df))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; the sign is dropped."""
    if n == 0:
        raise ValueError("cannot factor 0")
    return dict(sorted(sympy.factorint(abs(n)).items()))


def prime_divisors(n: int) -> list[int]:
    return list(factorize(n)) if n else []


def exclusion_product(seed: SequenceSeed) -> int:
    c = seed.c
    return c[3] * c[4] * c[5] * c[6] * c[7] * (c[4] ** 3 - c[3] ** 3 * c[5])


GOOD = "good"
EXCLUDED = "excluded"
BAD_REDUCTION = "bad-reduction"
CHAR_TWO = "char-two"


@dataclass(frozen=True)
class ScreenResult:
    p: int
    status: str
    reasons: tuple[str, ...] = ()
    # p odd and p does not divide disc(F) c3 c4 c5: the window recurrence runs mod p
    weak_good: bool = False
    # which seed quantities p divides, e.g. ("c6", "c7")
    divides: tuple[str, ...] = ()

    @property
    def good(self) -> bool:
        return self.status == GOOD


def screen_prime(curve: Curve, seed: SequenceSeed, p: int) -> ScreenResult:
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return ScreenResult(p, CHAR_TWO, ("p-equals-2",))
    c = seed.c
    quantities = {
        "c3": c[3], "c4": c[4], "c5": c[5], "c6": c[6], "c7": c[7],
        "c4^3-c3^3c5": c[4] ** 3 - c[3] ** 3 * c[5],
    }
    divides = tuple(k for k, v in quantities.items() if v % p == 0)
    reasons = []
    disc_hit = discriminant(curve) % p == 0
    if disc_hit:
        reasons.append("divides-disc")
    if divides:
        reasons.append("divides-c-product")
    weak_hit = any(k in divides for k in ("c3", "c4", "c5"))
    if weak_hit:
        reasons.append("divides-weak-product")
    if disc_hit:
        status = BAD_REDUCTION
    elif divides:
        status = EXCLUDED
    else:
        status = GOOD
    return ScreenResult(p, status, tuple(reasons), not (disc_hit or weak_hit), divides)


def excluded_primes(curve: Curve, seed: SequenceSeed) -> list[int]:
    prod = exclusion_product(seed)
    if prod == 0:
        raise DegenerateSeedError("c3 c4 c5 c6 c7 (c4^3 - c3^3 c5) = 0")
    primes = {2}
    primes.update(prime_divisors(discriminant(curve)))
    primes.update(prime_divisors(prod))
    return sorted(primes)
