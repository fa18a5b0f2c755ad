"""Jacobian of y^2 = f(x), deg f = 5, over F_p in Mumford coordinates.

Polynomials are tuples of residues, constant term first, with no trailing
zeros (the zero polynomial is ``()``).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np
from sympy.ntheory import sqrt_mod

from .curve import Curve, IntegralPoint, discriminant, factorize

Poly = tuple[int, ...]

MAX_COUNT_PRIME = 2000


class BadReduction(ValueError):
    pass


class InconsistentOrder(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# polynomials over F_p
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _trim(out)


def pneg(a: Poly, p: int) -> Poly:
    return tuple(-x % p for x in a)


def psub(a: Poly, b: Poly, p: int) -> Poly:
    return padd(a, pneg(b, p), p)


def pmul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def pscale(a: Poly, k: int, p: int) -> Poly:
    return _trim([x * k % p for x in a])


def pdivmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1 - db, -1, -1):
        coef = r[i + db] * inv % p
        q[i] = coef
        if coef:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] - coef * y) % p
    return _trim(q), _trim(r[:db])


def pmonic(a: Poly, p: int) -> Poly:
    return pscale(a, pow(a[-1], -1, p), p) if a else a


def pxgcd(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Monic g = s a + t b."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    if not r0:
        return (), (), ()
    k = pow(r0[-1], -1, p)
    return pscale(r0, k, p), pscale(s0, k, p), pscale(t0, k, p)


def peval(a: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


# ---------------------------------------------------------------------------
# F_p and F_{p^2}
# ---------------------------------------------------------------------------

def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def least_nonresidue(p: int) -> int:
    return next(k for k in range(2, p) if legendre(k, p) == -1)


@dataclass(frozen=True)
class Fp2:
    """a + b t in F_p[t] / (t^2 - nu)."""

    a: int
    b: int
    p: int
    nu: int

    def __add__(self, o: Fp2) -> Fp2:
        return Fp2((self.a + o.a) % self.p, (self.b + o.b) % self.p, self.p, self.nu)

    def __sub__(self, o: Fp2) -> Fp2:
        return Fp2((self.a - o.a) % self.p, (self.b - o.b) % self.p, self.p, self.nu)

    def __mul__(self, o: Fp2 | int) -> Fp2:
        p = self.p
        if isinstance(o, int):
            return Fp2(self.a * o % p, self.b * o % p, p, self.nu)
        return Fp2((self.a * o.a + self.nu * self.b * o.b) % p, (self.a * o.b + self.b * o.a) % p,
                   p, self.nu)

    def norm(self) -> int:
        return (self.a * self.a - self.nu * self.b * self.b) % self.p

    def conj(self) -> Fp2:
        return Fp2(self.a, -self.b % self.p, self.p, self.nu)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_square(self) -> bool:
        # the norm map F_{p^2}^* -> F_p^* sends squares onto squares
        return self.is_zero() or legendre(self.norm(), self.p) == 1

    def sqrt(self) -> Fp2:
        p, nu = self.p, self.nu
        if self.is_zero():
            return self
        if self.b == 0:
            if legendre(self.a, p) == 1:
                return Fp2(sqrt_mod(self.a, p), 0, p, nu)
            # a = nu * s^2  ->  sqrt = s t
            return Fp2(0, sqrt_mod(self.a * pow(nu, -1, p) % p, p), p, nu)
        n = sqrt_mod(self.norm(), p)
        if n is None:
            raise ValueError("not a square in F_p^2")
        inv2 = pow(2, -1, p)
        for sign in (1, -1):
            x0sq = (self.a + sign * n) * inv2 % p
            if legendre(x0sq, p) == 1:
                x0 = sqrt_mod(x0sq, p)
                x1 = self.b * pow(2 * x0, -1, p) % p
                return Fp2(x0, x1, p, nu)
        raise ValueError("not a square in F_p^2")


# ---------------------------------------------------------------------------
# reduced curve, point counts, group order
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReducedCurve:
    p: int
    f: Poly       # monic quintic, constant term first

    def __str__(self) -> str:
        terms = []
        for i in range(5, -1, -1):
            c = self.f[i] if i < len(self.f) else 0
            if c:
                mono = {0: "", 1: "X"}.get(i, f"X^{i}")
                terms.append(mono if c == 1 and i else f"{c}{mono}")
        return f"Y^2 = {' + '.join(terms)} over F_{self.p}"


def reduce_curve(curve: Curve, p: int) -> ReducedCurve:
    if p == 2:
        raise BadReduction("characteristic 2 is not supported")
    if discriminant(curve) % p == 0:
        raise BadReduction(f"{p} divides disc(F)")
    return ReducedCurve(p, tuple(a % p for a in curve.coeffs))


def _check_count_size(p: int) -> None:
    if p > MAX_COUNT_PRIME:
        raise ValueError(f"brute-force point counting is limited to p <= {MAX_COUNT_PRIME}")


def _char_table(p: int) -> np.ndarray:
    chi = -np.ones(p, dtype=np.int64)
    chi[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    chi[0] = 0
    return chi


def count_points(rc: ReducedCurve) -> int:
    """|C(F_p)| including the point at infinity."""
    p = rc.p
    _check_count_size(p)
    x = np.arange(p, dtype=np.int64)
    val = np.zeros(p, dtype=np.int64)
    for c in reversed(rc.f):
        val = (val * x + c) % p
    return int(1 + p + _char_table(p)[val].sum())


def count_points_ext(rc: ReducedCurve) -> int:
    """|C(F_{p^2})|, from the norm criterion for squares in F_{p^2}."""
    p = rc.p
    _check_count_size(p)
    nu = least_nonresidue(p)
    a, b = np.divmod(np.arange(p * p, dtype=np.int64), p)
    va = np.zeros_like(a)
    vb = np.zeros_like(a)
    for c in reversed(rc.f):
        va, vb = (va * a + nu * (vb * b % p) + c) % p, (va * b + vb * a) % p
    norm = (va * va - nu * (vb * vb % p)) % p
    return int(1 + p * p + _char_table(p)[norm].sum())


@dataclass(frozen=True)
class GroupOrderInfo:
    p: int
    N1: int
    N2: int
    order: int

    @property
    def weil_ok(self) -> bool:
        return (abs(self.N1 - (self.p + 1)) <= math.floor(4 * math.sqrt(self.p))
                and self.order <= (1 + math.sqrt(self.p)) ** 4)


def jacobian_order(curve: Curve, p: int) -> GroupOrderInfo:
    rc = reduce_curve(curve, p)
    n1, n2 = count_points(rc), count_points_ext(rc)
    t1 = p + 1 - n1
    t2 = p * p + 1 - n2
    if (t1 * t1 - t2) % 2:
        raise ArithmeticError("t1^2 - t2 must be even")
    order = 1 - t1 + (t1 * t1 - t2) // 2 - p * t1 + p * p
    return GroupOrderInfo(p, n1, n2, order)


# ---------------------------------------------------------------------------
# Mumford divisors and the group law
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MumfordDivisor:
    u: Poly
    v: Poly

    @property
    def is_identity(self) -> bool:
        return self.u == (1,)


IDENTITY = MumfordDivisor((1,), ())


class Jacobian:
    """Cantor composition and reduction on Jac(C)(F_p)."""

    def __init__(self, rc: ReducedCurve):
        self.rc = rc
        self.p = rc.p
        self.f = rc.f

    @classmethod
    def of(cls, curve: Curve, p: int) -> Jacobian:
        return cls(reduce_curve(curve, p))

    def is_valid(self, D: MumfordDivisor) -> bool:
        p = self.p
        if not D.u or D.u[-1] != 1 or len(D.u) > 3 or len(D.v) >= len(D.u):
            return False
        return not pdivmod(psub(pmul(D.v, D.v, p), self.f, p), D.u, p)[1]

    def embed(self, pt: IntegralPoint) -> MumfordDivisor:
        p = self.p
        return MumfordDivisor(_trim([-pt.x % p, 1]), _trim([pt.y % p]))

    def neg(self, D: MumfordDivisor) -> MumfordDivisor:
        return MumfordDivisor(D.u, pneg(D.v, self.p))

    def add(self, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
        p, f = self.p, self.f
        u1, v1, u2, v2 = D1.u, D1.v, D2.u, D2.v
        d1, e1, e2 = pxgcd(u1, u2, p)
        d, c1, c2 = pxgcd(d1, padd(v1, v2, p), p)
        s1, s2, s3 = pmul(c1, e1, p), pmul(c1, e2, p), c2
        dd = pmul(d, d, p)
        u, r = pdivmod(pmul(u1, u2, p), dd, p)
        assert not r
        num = padd(padd(pmul(pmul(s1, u1, p), v2, p), pmul(pmul(s2, u2, p), v1, p), p),
                   pmul(s3, padd(pmul(v1, v2, p), f, p), p), p)
        v, r = pdivmod(num, d, p)
        assert not r
        v = pdivmod(v, u, p)[1]
        while len(u) > 3:
            u, r = pdivmod(psub(f, pmul(v, v, p), p), u, p)
            assert not r
            u = pmonic(u, p)
            v = pdivmod(pneg(v, p), u, p)[1]
        return MumfordDivisor(pmonic(u, p), v)

    def mul(self, n: int, D: MumfordDivisor) -> MumfordDivisor:
        if n < 0:
            n, D = -n, self.neg(D)
        acc = IDENTITY
        for bit in bin(n)[2:]:
            acc = self.add(acc, acc)
            if bit == "1":
                acc = self.add(acc, D)
        return acc

    def random_point_divisor(self, rng: random.Random) -> MumfordDivisor:
        """A uniformly chosen reduced divisor of degree <= 2, by rejection."""
        p, f = self.p, self.f
        while True:
            kind = rng.random()
            if kind < 1 / (p * p):
                return IDENTITY
            u1, u0 = rng.randrange(p), rng.randrange(p)
            if kind < 1 / p:
                x = u0
                fx = peval(f, x, p)
                if legendre(fx, p) < 0:
                    continue
                y = sqrt_mod(fx, p) if fx else 0
                y = y if rng.random() < 0.5 else -y % p
                return MumfordDivisor(_trim([-x % p, 1]), _trim([y]))
            u = (u0, u1, 1)
            disc = (u1 * u1 - 4 * u0) % p
            chi = legendre(disc, p)
            if chi == 0:
                continue
            if chi == 1:
                s = sqrt_mod(disc, p)
                inv2 = pow(2, -1, p)
                x1, x2 = (-u1 + s) * inv2 % p, (-u1 - s) * inv2 % p
                ys = []
                for x in (x1, x2):
                    fx = peval(f, x, p)
                    if legendre(fx, p) < 0:
                        break
                    y = sqrt_mod(fx, p) if fx else 0
                    ys.append(y if rng.random() < 0.5 else -y % p)
                if len(ys) < 2:
                    continue
                slope = (ys[0] - ys[1]) * pow(x1 - x2, -1, p) % p
                v = _trim([(ys[0] - slope * x1) % p, slope])
            else:
                nu = least_nonresidue(p)
                half = (disc * pow(nu, -1, p)) % p
                s = sqrt_mod(half, p)
                inv2 = pow(2, -1, p)
                x = Fp2(-u1 * inv2 % p, s * inv2 % p, p, nu)
                fx = Fp2(0, 0, p, nu)
                for c in reversed(f):
                    fx = fx * x + Fp2(c, 0, p, nu)
                if not fx.is_square():
                    continue
                y = fx.sqrt()
                if rng.random() < 0.5:
                    y = y * (p - 1)
                slope = y.b * pow(x.b, -1, p) % p
                v = _trim([(y.a - slope * x.a) % p, slope])
            D = MumfordDivisor(u, v)
            assert self.is_valid(D)
            return D


def embed(curve: Curve, pt: IntegralPoint, p: int) -> MumfordDivisor:
    return Jacobian.of(curve, p).embed(pt)


def in_theta(D: MumfordDivisor) -> bool:
    return len(D.u) <= 2


def order_of(jac: Jacobian, D: MumfordDivisor, info: GroupOrderInfo) -> int:
    if not jac.mul(info.order, D).is_identity:
        raise InconsistentOrder("group order does not annihilate the divisor")
    n = info.order
    for q in factorize(n):
        while n % q == 0 and jac.mul(n // q, D).is_identity:
            n //= q
    return n
