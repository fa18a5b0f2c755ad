"""Per-prime period analysis: ord_p(D_P), alpha_p, beta_p, d and Per_p(c)."""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import sympy
from sympy.ntheory import n_order

from .curve import (BAD_REDUCTION, CHAR_TWO, GOOD, Curve, IntegralPoint, factorize,
                    screen_prime)
from .jacobian import Jacobian, in_theta, jacobian_order, order_of
from .sequence import (DEFAULT_EXACT_CAP, Jumper, ModRecurrence, SequenceError, SequenceSeed,
                       StuckWindow, exact_sequence, find_triple_zero, terms_mod_p)

CHECK_NAMES = (
    "divisibility-chain",
    "alpha-r-beta-sq",
    "translation-identity",
    "hasse-weil",
    "theta-equivalence",
    "period-cross-check",
    "triple-zero",
    "d-cross-check",
)

DEFAULT_BRUTE_CAP = 10 ** 8
THETA_MAX_R = 2000          # theta-equivalence walks 2r multiples of D_P


class CapExceeded(RuntimeError):
    pass


class HypothesisViolated(ArithmeticError):
    pass


@dataclass
class PeriodReport:
    p: int
    status: str
    reasons: tuple[str, ...] = ()
    jac_order: int | None = None
    r: int | None = None
    alpha: int | None = None
    beta: int | None = None
    d: int | None = None
    period: int | None = None
    ratio: int | None = None
    period_method: str | None = None
    checks: dict[str, bool | None] = field(default_factory=lambda: dict.fromkeys(CHECK_NAMES))
    notes: list[str] = field(default_factory=list)

    @property
    def best_effort(self) -> bool:
        return self.status != GOOD

    def failed_checks(self) -> list[str]:
        return [k for k, v in self.checks.items() if v is False]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["reasons"] = list(self.reasons)
        out["best_effort"] = self.best_effort
        return out


# ---------------------------------------------------------------------------
# alpha, beta, d
# ---------------------------------------------------------------------------

def alpha_beta(c3: int, c_r2: int, c_r3: int, p: int) -> tuple[int, int]:
    """alpha = c_{r+3} / (c3 c_{r+2}),  beta = c3^2 c_{r+2}^3 / c_{r+3}^2  (mod p)."""
    c3, c_r2, c_r3 = c3 % p, c_r2 % p, c_r3 % p
    if c3 == 0 or c_r2 == 0 or c_r3 == 0:
        raise HypothesisViolated("alpha/beta denominator vanishes mod p")
    alpha = c_r3 * pow(c3 * c_r2, -1, p) % p
    beta = c3 * c3 * pow(c_r2, 3, p) * pow(c_r3 * c_r3, -1, p) % p
    return alpha, beta


def least_d(alpha: int, beta: int, p: int) -> int:
    """Least d >= 1 with alpha^d = beta^(d^2) = 1: ord(alpha) | d and ord(beta) | d^2."""
    a, b = n_order(alpha % p, p), n_order(beta % p, p)
    d = 1
    for q in set(factorize(a)) | set(factorize(b)):
        va = factorize(a).get(q, 0)
        vb = factorize(b).get(q, 0)
        d *= q ** max(va, (vb + 1) // 2)
    return d


def least_d_bruteforce(alpha: int, beta: int, p: int) -> int:
    d = 1
    while not (pow(alpha, d, p) == 1 and pow(beta, d * d, p) == 1):
        d += 1
    return d


# ---------------------------------------------------------------------------
# term access that picks the cheapest valid route for the prime
# ---------------------------------------------------------------------------

class ModTerms:
    """c_n mod p by jump (c3 c4 units), else linear scan, else exact terms."""

    def __init__(self, seed: SequenceSeed, p: int, exact_cap: int = DEFAULT_EXACT_CAP):
        self.seed, self.p, self.exact_cap = seed, p, exact_cap
        try:
            self.jumper: Jumper | None = Jumper(seed, p)
        except ValueError:
            self.jumper = None
        self._scan: list[int] | None = None

    def __call__(self, n: int) -> int:
        if self.jumper is not None:
            return self.jumper.term(n)
        if abs(n) <= self.exact_cap:
            v = exact_sequence(self.seed, self.exact_cap)[n] % self.p
            return v
        if self._scan is None or len(self._scan) <= abs(n):
            self._scan = terms_mod_p(self.seed, self.p, abs(n) * 2)
        v = self._scan[abs(n)]
        return v if n >= 0 else -v % self.p


# ---------------------------------------------------------------------------
# periods
# ---------------------------------------------------------------------------

def brute_period(seed: SequenceSeed, p: int, cap: int | None = None,
                 exact_cap: int = DEFAULT_EXACT_CAP) -> tuple[int, int]:
    """(period, preperiod) of c mod p by watching the 11-term window repeat.

    Whenever every step is determined both ways the window map is a
    bijection, so the orbit returns to its start and the preperiod is 0.  If
    the recurrence sticks mod p, falls back to exact terms up to
    ``exact_cap``, which may report an eventual period.
    """
    if cap is None:
        cap = min((p - 1) * math.ceil((1 + math.sqrt(p)) ** 4), DEFAULT_BRUTE_CAP)
    rec = ModRecurrence(seed, p)
    start = [seed.term(n) % p for n in range(-1, 10)]
    try:
        return _brute_scan(rec, start, cap), 0
    except StuckWindow:
        pass
    seq = exact_sequence(seed, exact_cap)
    vals = [seq[n] % p for n in range(exact_cap + 1)]
    return _eventual_period(vals, cap)


def _brute_scan(rec: ModRecurrence, start: list[int], cap: int) -> int:
    last = start[-1]
    w = list(start)
    nxt = rec.next_right
    s = 0
    while s < cap:
        v = nxt(w)
        del w[0]
        w.append(v)
        s += 1
        if v == last and w == start:
            return s
    raise CapExceeded(f"no period <= {cap} mod {rec.p}")


def _eventual_period(vals: list[int], cap: int) -> tuple[int, int]:
    n = len(vals)
    for s in range(1, min(cap, n // 2) + 1):
        k = n - s
        while k > 0 and vals[k - 1] == vals[k - 1 + s]:
            k -= 1
        # demand the repeat be witnessed over at least two periods and a full window
        if n - k >= max(2 * s, s + 11):
            return s, k
    raise CapExceeded(f"no eventual period visible in {n} exact terms")


def certify_period(jumper: Jumper, r: int, d: int) -> bool:
    """d r is the exact period: the window at d r matches index 0, and at d r / q does not."""
    origin = jumper.origin.values
    if jumper.window(d * r).values != origin:
        return False
    return all(jumper.window(d * r // q).values != origin for q in factorize(d))


def translation_identity_ok(terms: ModTerms, r: int, alpha: int, beta: int, p: int,
                            rng: random.Random, extra: int = 50) -> bool:
    pairs = [(k, n) for k in range(-2, 4) for n in range(-10, 11)]
    pairs += [(rng.randint(-50, 50), rng.randint(-200, 200)) for _ in range(extra)]
    for k, n in pairs:
        lhs = terms(k * r + n)
        rhs = pow(alpha, k * n, p) * pow(beta, k * k, p) * terms(n) % p
        if lhs != rhs:
            return False
    return True


def theta_equivalence_ok(jac: Jacobian, point: IntegralPoint, seed: SequenceSeed, p: int,
                         r: int) -> bool:
    cs = terms_mod_p(seed, p, 2 * r)
    D = jac.embed(point)
    acc = jac.add(D, D)
    for n in range(3, 2 * r + 1):
        acc = jac.add(acc, D)
        if in_theta(acc) != (cs[n] == 0):
            return False
    return True


# ---------------------------------------------------------------------------
# the per-prime driver
# ---------------------------------------------------------------------------

def analyze(curve: Curve, point: IntegralPoint, seed: SequenceSeed, p: int, *,
            theta_max_r: int = THETA_MAX_R, brute_cap: int | None = None,
            exact_cap: int = DEFAULT_EXACT_CAP) -> PeriodReport:
    scr = screen_prime(curve, seed, p)
    rep = PeriodReport(p, scr.status, scr.reasons)
    if scr.status == CHAR_TWO:
        return rep
    checks = rep.checks

    if scr.status == BAD_REDUCTION:
        try:
            rep.period, pre = brute_period(seed, p, brute_cap, exact_cap)
            rep.period_method = "brute"
            if pre:
                rep.notes.append(f"preperiod {pre}")
        except (CapExceeded, SequenceError) as exc:
            rep.notes.append(f"period not found: {exc}")
        return rep

    info = jacobian_order(curve, p)
    jac = Jacobian.of(curve, p)
    r = order_of(jac, jac.embed(point), info)
    rep.jac_order, rep.r = info.order, r
    terms = ModTerms(seed, p, exact_cap)

    # the triple-zero criterion needs y_P nonzero mod p and a running recurrence
    if point.y % p and scr.weak_good:
        try:
            checks["triple-zero"] = find_triple_zero(seed, p) == r
        except SequenceError as exc:
            checks["triple-zero"] = False
            rep.notes.append(str(exc))

    try:
        rep.alpha, rep.beta = alpha_beta(seed.c[3], terms(r + 2), terms(r + 3), p)
    except HypothesisViolated:
        rep.notes.append("alpha, beta undefined: a denominator vanishes mod p")
    if rep.alpha is not None:
        rep.d = least_d(rep.alpha, rep.beta, p)
        if p < 400:
            checks["d-cross-check"] = rep.d == least_d_bruteforce(rep.alpha, rep.beta, p)
        checks["alpha-r-beta-sq"] = pow(rep.alpha, r, p) == rep.beta * rep.beta % p
        checks["translation-identity"] = translation_identity_ok(
            terms, r, rep.alpha, rep.beta, p, random.Random(p))

    if rep.d is not None and terms.jumper is not None:
        ok = certify_period(terms.jumper, r, rep.d)
        checks["period-cross-check"] = ok
        if ok:
            rep.period, rep.period_method = rep.d * r, "d*r"
        else:
            rep.notes.append("d*r failed window certification")
    if rep.period is None:
        try:
            rep.period, pre = brute_period(seed, p, brute_cap, exact_cap)
            rep.period_method = "brute"
            if pre:
                rep.notes.append(f"preperiod {pre}")
        except (CapExceeded, SequenceError) as exc:
            rep.notes.append(f"period not found: {exc}")

    if rep.period is not None:
        if rep.period % r == 0:
            rep.ratio = rep.period // r
        checks["divisibility-chain"] = rep.period % r == 0 and ((p - 1) * r) % rep.period == 0
        checks["hasse-weil"] = info.weil_ok and rep.period <= (p - 1) * (1 + math.sqrt(p)) ** 4
    if r <= theta_max_r and point.y % p and scr.weak_good:
        checks["theta-equivalence"] = theta_equivalence_ok(jac, point, seed, p, r)
    return rep


def negative_example_p3(curve: Curve, point: IntegralPoint, seed: SequenceSeed) -> dict:
    """At p = 3 the order divides the period but the period does not divide 2 * ord."""
    rep = analyze(curve, point, seed, 3)
    return {
        "report": rep,
        "jac_order": rep.jac_order,
        "ord": rep.r,
        "period": rep.period,
        "ratio": rep.ratio,
        "ord_divides_period": rep.period % rep.r == 0,
        "period_divides_(p-1)ord": (2 * rep.r) % rep.period == 0,
        "excluded": rep.status != GOOD,
    }


def analyze_many(curve: Curve, point: IntegralPoint, seed: SequenceSeed, primes, *,
                 jobs: int = 1, **kwargs) -> list[PeriodReport]:
    """Reports in ascending prime order; ``jobs > 1`` fans primes out to processes."""
    primes = sorted(primes)
    if jobs <= 1 or len(primes) <= 1:
        return [analyze(curve, point, seed, p, **kwargs) for p in primes]
    from concurrent.futures import ProcessPoolExecutor
    from functools import partial

    work = partial(analyze, curve, point, seed, **kwargs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(work, primes))


def d_statistics(curve: Curve, point: IntegralPoint, seed: SequenceSeed, prime_bound: int,
                 reports: list[PeriodReport] | None = None, jobs: int = 1) -> dict:
    """Descriptive summary of d = Per/ord over every prime where both are known.

    Excluded primes with a full row (7, 41, 47, 379 for the built-in curve)
    are included and listed separately.
    """
    if reports is None:
        reports = analyze_many(curve, point, seed, sympy.primerange(2, prime_bound + 1),
                               jobs=jobs)
    rows = [(r.p, r.ratio, r.status) for r in reports if r.ratio is not None and r.r is not None]
    good = [(p, d) for p, d, st in rows if st == GOOD]
    hist = Counter(str(Fraction(d, p - 1)) for p, d in good)
    return {
        "prime_bound": prime_bound,
        "d": {p: d for p, d, _ in rows},
        "good_primes": [p for p, _ in good],
        "excluded_with_d": [p for p, _, st in rows if st != GOOD],
        "d_equals_1": [p for p, d, _ in rows if d == 1],
        "d_equals_p_minus_1": [p for p, d, _ in rows if d == p - 1],
        "d_divides_p_minus_1": all((p - 1) % d == 0 for p, d in good),
        "histogram": dict(sorted(hist.items(), key=lambda kv: Fraction(kv[0]))),
    }
