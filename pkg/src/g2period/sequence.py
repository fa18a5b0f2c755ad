"""Exact and modular evaluation of c_n = psi_n(x_P) via the Somos 8-11 relations.

Every relation used here has the shape

    L * c[n + A] * c[n - B] = sum_i K_i * c[n + a_i] * c[n - b_i]

with integer coefficients built from c3..c9.  A window of 11 consecutive
terms determines its right neighbour through whichever relation has a
nonzero pivot ``c[n - B]``, and its left neighbour symmetrically through the
pivot ``c[n + A]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .curve import Curve, eval_F

DEFAULT_EXACT_CAP = 300
WINDOW = 11          # terms needed to determine a neighbour
JUMP_HALF_WIDTH = 8


class SequenceError(ArithmeticError):
    pass


class SeedInconsistentError(SequenceError):
    pass


class LaurentViolation(SequenceError):
    """An exact division left a remainder: the seed is not genuine curve data."""


class AllZeroWindow(SequenceError):
    """Four consecutive zeros left no usable pivot."""


# kept as an alias so modular callers can catch the name they expect
StuckWindow = AllZeroWindow


@dataclass(frozen=True)
class SequenceSeed:
    """x_P together with c_0..c_9 (c_0 = c_1 = 0, c_2 = 1)."""

    x_P: int
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.c) != 10 or self.c[:3] != (0, 0, 1):
            raise SeedInconsistentError("seed must be c_0..c_9 with c_0 = c_1 = 0, c_2 = 1")

    @property
    def nondegenerate(self) -> bool:
        c = self.c
        return c[3] * c[4] * c[5] * c[6] * c[7] * (c[4] ** 3 - c[3] ** 3 * c[5]) != 0

    def term(self, n: int) -> int:
        """Seed term with oddness applied; only |n| <= 9."""
        return self.c[n] if n >= 0 else -self.c[-n]


def seed_from_table(x_P: int, c4_to_c9: Sequence[int], curve: Curve | None = None,
                    c3: int | None = None) -> SequenceSeed:
    if len(c4_to_c9) != 6:
        raise ValueError("expected six values c4..c9")
    if curve is not None:
        expected = 4 * eval_F(curve, x_P)
        if c3 is not None and c3 != expected:
            raise SeedInconsistentError(f"c3 = {c3} but 4 F(x_P) = {expected}")
        c3 = expected
    if c3 is None:
        raise ValueError("c3 must be given when no curve is attached")
    return SequenceSeed(x_P, (0, 0, 1, c3, *(int(v) for v in c4_to_c9)))


@dataclass(frozen=True)
class Relation:
    name: str
    span: int                                   # A + B
    outer: tuple[int, int]                      # (A, B)
    inner: tuple[tuple[int, int], ...]          # (a_i, b_i)
    left: int                                   # L
    coeffs: tuple[int, int, int, int]           # K_i

    def reduce(self, p: int) -> Relation:
        return Relation(self.name, self.span, self.outer, self.inner,
                        self.left % p, tuple(k % p for k in self.coeffs))


@dataclass(frozen=True)
class SomosCoefficients:
    relations: tuple[Relation, Relation, Relation, Relation]   # S8, S9, S10, S11

    def reduce(self, p: int) -> SomosCoefficients:
        return SomosCoefficients(tuple(r.reduce(p) for r in self.relations))

    def __getitem__(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)


_EVEN_INNER = ((3, 3), (2, 2), (1, 1), (0, 0))
_ODD_INNER = ((4, 3), (3, 2), (2, 1), (1, 0))


def somos_coefficients(seed: SequenceSeed) -> SomosCoefficients:
    _, _, _, c3, c4, c5, c6, c7, c8, c9 = seed.c
    s8 = Relation("S8", 8, (4, 4), _EVEN_INNER, c4,
                  (c3 * c5, c4 ** 3 - c3 ** 3 * c5, c3 ** 2 * c6, -c4 * c6))
    s9 = Relation("S9", 9, (5, 4), _ODD_INNER, c3 * c5,
                  (c3 ** 2 * c6, c4 * (c5 ** 2 - c3 ** 2 * c6), c3 * c4 * c7, -c5 * c7))
    s10 = Relation("S10", 10, (5, 5), _EVEN_INNER, c4,
                   (c4 * c6, c4 * (c5 ** 2 - c3 ** 2 * c6), c3 ** 3 * c7 - c8, -c3 * c4 * c7))
    s11 = Relation("S11", 11, (6, 5), _ODD_INNER, c3 * c5,
                   (c3 * c4 * c7, c5 ** 2 * c6 - c3 * c4 ** 2 * c7, c3 * (c3 * c4 * c8 - c9),
                    -c3 * c5 * c8))
    return SomosCoefficients((s8, s9, s10, s11))


def relation_residual(rel: Relation, get: Callable[[int], int], n: int) -> int:
    """LHS - RHS of ``rel`` at index n."""
    A, B = rel.outer
    lhs = rel.left * get(n + A) * get(n - B)
    rhs = sum(k * get(n + a) * get(n - b) for k, (a, b) in zip(rel.coeffs, rel.inner))
    return lhs - rhs


def _solve(rel: Relation, get: Callable[[int], int], n: int, right: bool) -> tuple[int, int]:
    """(numerator, denominator) for the unknown outer term of ``rel`` at n."""
    A, B = rel.outer
    pivot = get(n - B) if right else get(n + A)
    rhs = sum(k * get(n + a) * get(n - b) for k, (a, b) in zip(rel.coeffs, rel.inner))
    return rhs, rel.left * pivot


# ---------------------------------------------------------------------------
# exact integers
# ---------------------------------------------------------------------------

class ExactSequence:
    """Lazily extended exact terms c_0, c_1, ... of one seed."""

    def __init__(self, seed: SequenceSeed, cap: int = DEFAULT_EXACT_CAP):
        self.seed = seed
        self.cap = cap
        self.coeffs = somos_coefficients(seed)
        self.terms: list[int] = list(seed.c)
        self.used: dict[int, str] = {}          # index -> relation that produced it

    def _get(self, n: int) -> int:
        return self.terms[n] if n >= 0 else -self.terms[-n]

    def extend_to(self, n: int) -> None:
        if n > self.cap:
            raise ValueError(f"index {n} beyond exact cap {self.cap}")
        while len(self.terms) <= n:
            t = len(self.terms)
            for rel in self.coeffs.relations:
                A, _ = rel.outer
                num, den = _solve(rel, self._get, t - A, right=True)
                if den != 0:
                    q, rem = divmod(num, den)
                    if rem:
                        raise LaurentViolation(
                            f"{rel.name} division for c_{t} leaves remainder {rem}")
                    self.terms.append(q)
                    self.used[t] = rel.name
                    break
            else:
                raise AllZeroWindow(f"c_{t - 11}..c_{t - 8} all vanish")

    def __getitem__(self, n: int) -> int:
        self.extend_to(abs(n))
        return self._get(n)


_exact_cache: dict[tuple[SequenceSeed, int], ExactSequence] = {}


def exact_sequence(seed: SequenceSeed, cap: int = DEFAULT_EXACT_CAP) -> ExactSequence:
    key = (seed, cap)
    if key not in _exact_cache:
        _exact_cache[key] = ExactSequence(seed, cap)
    return _exact_cache[key]


def term_exact(seed: SequenceSeed, n: int, cap: int = DEFAULT_EXACT_CAP) -> int:
    return exact_sequence(seed, cap)[n]


@dataclass
class RelationReport:
    ok: bool
    checked: int
    counterexample: tuple | None = None


def verify_relations_exact(seed: SequenceSeed, n_range: Iterable[int], m_range: Iterable[int],
                           cap: int = DEFAULT_EXACT_CAP) -> RelationReport:
    """Check both two-parameter bilinear identities for every (m, n) pair."""
    seq = exact_sequence(seed, cap)
    c = seq.__getitem__
    c3, c4, c5 = seed.c[3], seed.c[4], seed.c[5]
    checked = 0
    m_values = list(m_range)
    for n in n_range:
        for m in m_values:
            even_l = c4 * c(n + m) * c(n - m)
            even_r = (c(m + 1) * c(m - 1) * c(n + 3) * c(n - 3)
                      + (c4 * c(m) ** 2 - c3 ** 2 * c(m + 1) * c(m - 1)) * c(n + 2) * c(n - 2)
                      + (c3 ** 2 * c(m + 2) * c(m - 2) - c(m + 3) * c(m - 3)) * c(n + 1) * c(n - 1)
                      - c4 * c(m + 2) * c(m - 2) * c(n) ** 2)
            if even_l != even_r:
                return RelationReport(False, checked, ("even", m, n))
            odd_l = c3 * c5 * c(n + m + 1) * c(n - m)
            odd_r = (c3 * c(m + 2) * c(m - 1) * c(n + 4) * c(n - 3)
                     + (c5 * c(m + 1) * c(m) - c3 * c4 * c(m + 2) * c(m - 1)) * c(n + 3) * c(n - 2)
                     + (c3 * c4 * c(m + 3) * c(m - 2) - c3 * c(m + 4) * c(m - 3)) * c(n + 2) * c(n - 1)
                     - c5 * c(m + 3) * c(m - 2) * c(n + 1) * c(n))
            if odd_l != odd_r:
                return RelationReport(False, checked, ("odd", m, n))
            checked += 2
    return RelationReport(True, checked)


def verify_somos_exact(seed: SequenceSeed, n_range: Iterable[int],
                       cap: int = DEFAULT_EXACT_CAP) -> RelationReport:
    """Check the four one-parameter relations S8..S11 at every n."""
    seq = exact_sequence(seed, cap)
    checked = 0
    for n in n_range:
        for rel in seq.coeffs.relations:
            if relation_residual(rel, seq.__getitem__, n) != 0:
                return RelationReport(False, checked, (rel.name, n))
            checked += 1
    return RelationReport(True, checked)


def check_seed(seed: SequenceSeed, steps: int = 20) -> RelationReport:
    """Extend ``steps`` terms past c_9 and confirm all four relations on the result.

    Raises LaurentViolation when a division is inexact.  Uses a private
    extension so a bad seed never lands in the shared cache.
    """
    seq = ExactSequence(seed, cap=9 + steps)
    seq.extend_to(9 + steps)
    top = 9 + steps
    checked = 0
    for rel in seq.coeffs.relations:
        A, B = rel.outer
        for n in range(-top + B, top - A + 1):
            if relation_residual(rel, seq.__getitem__, n) != 0:
                return RelationReport(False, checked, (rel.name, n))
            checked += 1
    return RelationReport(True, checked)


# ---------------------------------------------------------------------------
# modulo p
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    """Residues of c_{base-h}, ..., c_{base+h} modulo p."""

    base: int
    half_width: int
    values: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if len(self.values) != 2 * self.half_width + 1:
            raise ValueError("window length must be 2h + 1")

    def __getitem__(self, n: int) -> int:
        """Residue at absolute index n."""
        i = n - self.base + self.half_width
        if not 0 <= i < len(self.values):
            raise IndexError(n)
        return self.values[i]

    @property
    def center(self) -> int:
        return self.values[self.half_width]

    def has_four_zeros(self) -> bool:
        run = 0
        for v in self.values:
            run = run + 1 if v == 0 else 0
            if run >= 4:
                return True
        return False


class ModRecurrence:
    """The four relations reduced mod p, prepared for fast stepping.

    Relations whose left multiplier vanishes mod p are dropped; the rest are
    tried in the order S8, S9, S10, S11.  ``next_right`` / ``next_left`` work
    on an 11-long list ``w`` holding c_m..c_{m+10}.
    """

    def __init__(self, seed: SequenceSeed, p: int):
        self.seed = seed
        self.p = p
        self.coeffs = somos_coefficients(seed).reduce(p)
        self._inv = self._inverse_table(p) if p < 200_000 else None
        right, left = [], []
        for rel in self.coeffs.relations:
            if rel.left == 0:
                continue
            A, B = rel.outer
            # right: target m+11 = n+A, so n = m+11-A; offsets into w are relative to m
            n = 11 - A
            right.append((n - B, rel.left, tuple(
                (k, n + a, n - b) for k, (a, b) in zip(rel.coeffs, rel.inner))))
            # left: target m-1 = n-B, so n = m-1+B
            n = B - 1
            left.append((n + A, rel.left, tuple(
                (k, n + a, n - b) for k, (a, b) in zip(rel.coeffs, rel.inner))))
        self._right = tuple(right)
        self._left = tuple(left)

    @property
    def usable(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.coeffs.relations if r.left)

    @staticmethod
    def _inverse_table(p: int) -> list[int]:
        inv = [0, 1] + [0] * (p - 2)
        for i in range(2, p):
            inv[i] = (p - (p // i) * inv[p % i] % p) % p
        return inv

    def inverse(self, x: int) -> int:
        return self._inv[x] if self._inv is not None else pow(x, -1, self.p)

    def _next(self, w: Sequence[int], plan) -> int:
        p = self.p
        for pivot, left, terms in plan:
            pv = w[pivot]
            if pv:
                (k0, a0, b0), (k1, a1, b1), (k2, a2, b2), (k3, a3, b3) = terms
                rhs = k0 * w[a0] * w[b0] + k1 * w[a1] * w[b1] + k2 * w[a2] * w[b2] + k3 * w[a3] * w[b3]
                return rhs * self.inverse(left * pv % p) % p
        raise StuckWindow("no relation has an invertible pivot")

    def next_right(self, w: Sequence[int]) -> int:
        return self._next(w, self._right)

    def next_left(self, w: Sequence[int]) -> int:
        return self._next(w, self._left)

    def scan(self, start: Sequence[int]):
        """Yield c_{m+11}, c_{m+12}, ... given start = c_m..c_{m+10}."""
        w = list(start)
        nxt = self.next_right
        while True:
            v = nxt(w)
            del w[0]
            w.append(v)
            yield v


def _recurrence(seed: SequenceSeed, p: int) -> ModRecurrence:
    return ModRecurrence(seed, p)


def window_init(seed: SequenceSeed, p: int, h: int = JUMP_HALF_WIDTH) -> Window:
    if h < 5:
        raise ValueError("half-width must be at least 5")
    if h <= 9:
        vals = tuple(seed.term(n) % p for n in range(-h, h + 1))
    else:
        seq = exact_sequence(seed)
        vals = tuple(seq[n] % p for n in range(-h, h + 1))
    return Window(0, h, vals, p)


def step(window: Window, rec: ModRecurrence, direction: str = "right") -> Window:
    """Shift ``window`` by one index, computing the new edge entry."""
    vals = window.values
    if direction == "right":
        new = rec.next_right(vals[-WINDOW:])
        return Window(window.base + 1, window.half_width, vals[1:] + (new,), window.modulus)
    if direction == "left":
        new = rec.next_left(vals[:WINDOW])
        return Window(window.base - 1, window.half_width, (new,) + vals[:-1], window.modulus)
    raise ValueError(direction)


def terms_mod_p(seed: SequenceSeed, p: int, n_max: int) -> list[int]:
    """[c_0, ..., c_{n_max}] mod p by a linear scan."""
    out = [seed.c[n] % p for n in range(min(n_max, 9) + 1)]
    if n_max > 9:
        rec = _recurrence(seed, p)
        start = [seed.term(n) % p for n in range(-1, 10)]
        gen = rec.scan(start)
        for _ in range(n_max - 9):
            out.append(next(gen))
    return out


def term_mod_p(seed: SequenceSeed, p: int, n: int) -> int:
    """c_n mod p in O(|n|) steps."""
    v = terms_mod_p(seed, p, abs(n))[-1]
    return v if n >= 0 else -v % p


# doubling schedule: target offset t (around 2m) -> (offset of m' from m, delta)
def _build_schedule() -> dict[int, tuple[int, int]]:
    sched: dict[int, tuple[int, int]] = {}
    for j in range(-2, 3):
        for delta in (-3, -2, 2, 3):
            sched.setdefault(2 * j + delta, (j, delta))
    return sched


_SCHEDULE = _build_schedule()


def _schedule_self_check() -> None:
    h = JUMP_HALF_WIDTH
    targets = set(_SCHEDULE)
    assert targets == set(range(-(h - 1), h)), targets
    for j, delta in _SCHEDULE.values():
        n = j + delta
        used = {j + i for i in range(-3, 4)} | {n + i for i in range(-3, 4)}
        assert all(-h <= u <= h for u in used), (j, delta)


_schedule_self_check()


class Jumper:
    """Window evaluation of c_N mod p in O(log N) doubling rounds.

    Each round instantiates the two-parameter even identity at (m', m' + delta)
    and solves for c_{2m'+delta}; the divisor is c4 * c_delta with
    delta in {+-2, +-3}, so c3 and c4 must be units mod p.
    """

    def __init__(self, seed: SequenceSeed, p: int):
        c3, c4 = seed.c[3] % p, seed.c[4] % p
        if p == 2 or c3 == 0 or c4 == 0:
            raise ValueError(f"jump evaluation needs c3 c4 invertible mod {p}")
        self.seed = seed
        self.p = p
        self.rec = _recurrence(seed, p)
        self.c3, self.c4 = c3, c4
        self.c3sq = c3 * c3 % p
        cdelta = {2: 1, -2: p - 1, 3: c3, -3: p - c3}
        self._inv_div = {d: pow(c4 * cd % p, -1, p) for d, cd in cdelta.items()}
        self.origin = window_init(seed, p, JUMP_HALF_WIDTH)

    def double(self, w: Window, odd: bool = False) -> Window:
        """W(m) -> W(2m), or W(2m + 1) when ``odd``."""
        p, h, m = self.p, JUMP_HALF_WIDTH, w.base
        vals = w.values
        g = lambda off: vals[off + h]                          # noqa: E731  c_{m+off}
        c3sq, c4 = self.c3sq, self.c4
        out = [0] * (2 * h + 1)
        for t, (j, delta) in _SCHEDULE.items():
            n = j + delta
            a1 = g(j + 1) * g(j - 1)
            a2 = g(j + 2) * g(j - 2)
            rhs = (a1 * g(n + 3) * g(n - 3)
                   + (c4 * g(j) * g(j) - c3sq * a1) * g(n + 2) * g(n - 2)
                   + (c3sq * a2 - g(j + 3) * g(j - 3)) * g(n + 1) * g(n - 1)
                   - c4 * a2 * g(n) * g(n))
            out[t + h] = rhs * self._inv_div[delta] % p
        # outer entries c_{2m-8}, c_{2m+8} from one step each way
        out[-1] = self.rec.next_right(out[-1 - WINDOW:-1])
        out[0] = self.rec.next_left(out[1:1 + WINDOW])
        res = Window(2 * m, h, tuple(out), p)
        return step(res, self.rec, "right") if odd else res

    def window(self, N: int) -> Window:
        if N < 0:
            w = self.window(-N)
            return Window(N, w.half_width, tuple(-v % self.p for v in reversed(w.values)), self.p)
        w = self.origin
        if N == 0:
            return w
        bits = bin(N)[2:]
        w = step(w, self.rec, "right")                  # leading bit
        for b in bits[1:]:
            w = self.double(w, b == "1")
        return w

    def term(self, n: int) -> int:
        return self.window(n).center


def jump_window(seed: SequenceSeed, p: int, N: int) -> Window:
    return Jumper(seed, p).window(N)


class NotFoundBelowCap(SequenceError):
    pass


def hasse_weil_cap(p: int) -> int:
    return math.ceil((1 + math.sqrt(p)) ** 4)


def find_triple_zero(seed: SequenceSeed, p: int, cap: int | None = None) -> int:
    """Least r >= 3 with c_{r-1} = c_r = c_{r+1} = 0 mod p."""
    if cap is None:
        cap = hasse_weil_cap(p)
    vals = [seed.c[n] % p for n in range(10)]
    run = 0
    for n in range(2, 10):
        run = run + 1 if vals[n] == 0 else 0
        if run >= 3 and n - 1 >= 3:
            return n - 1
    rec = _recurrence(seed, p)
    start = [seed.term(n) % p for n in range(-1, 10)]
    n = 9
    for v in rec.scan(start):
        n += 1
        if v == 0:
            run += 1
            if run >= 3:
                return n - 1
        else:
            run = 0
        if n > cap + 1:
            break
    raise NotFoundBelowCap(f"no triple zero below {cap} mod {p}")
