"""Bundled invariant suites behind ``g2period verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import sympy

from .curve import GOOD, Curve, IntegralPoint, screen_prime
from .jacobian import IDENTITY, Jacobian, jacobian_order
from .periodicity import analyze_many
from .sequence import (SequenceError, SequenceSeed, check_seed, exact_sequence, terms_mod_p,
                       verify_relations_exact, verify_somos_exact)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    expected_fail: int = 0
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, what: str, expected: bool = False) -> None:
        if ok:
            self.passed += 1
        elif expected:
            self.expected_fail += 1
            self.messages.append(f"expected-fail: {what}")
        else:
            self.failed += 1
            self.messages.append(f"FAIL: {what}")


def sequence_suite(seed: SequenceSeed, cap: int, good_primes: list[int]) -> SuiteResult:
    res = SuiteResult("sequence-identity")
    try:
        rep = check_seed(seed, 20)
    except SequenceError as exc:
        res.record(False, f"seed extension: {type(exc).__name__}: {exc}")
        return res
    res.record(rep.ok, f"Somos 8-11 on the first 20 extension steps: {rep.counterexample}")
    if not rep.ok:
        return res
    seq = exact_sequence(seed, cap)
    top = min(200, cap)
    res.record(all(seq[-n] == -seq[n] for n in range(top + 1)), "oddness")
    rep = verify_somos_exact(seed, range(-50, 51), cap)
    res.record(rep.ok, f"Somos 8-11 for |n| <= 50: {rep.counterexample}")
    rep = verify_relations_exact(seed, range(-20, 21), range(-20, 21), cap)
    res.record(rep.ok, f"two-parameter identities for |m|, |n| <= 20: {rep.counterexample}")
    for p in good_primes:
        if p >= 100:
            break
        mod = terms_mod_p(seed, p, top)
        res.record(mod == [seq[n] % p for n in range(top + 1)], f"reduction mod {p}")
    return res


def group_law_suite(curve: Curve, primes: list[int], samples: int = 100,
                    rng_seed: int = 0) -> SuiteResult:
    res = SuiteResult("group-law")
    rng = random.Random(rng_seed)
    for p in primes:
        jac = Jacobian.of(curve, p)
        order = jacobian_order(curve, p).order
        ok = True
        for _ in range(samples):
            a, b, c = (jac.random_point_divisor(rng) for _ in range(3))
            ok &= jac.add(jac.add(a, b), c) == jac.add(a, jac.add(b, c))
            ok &= jac.add(a, b) == jac.add(b, a)
            ok &= jac.add(a, IDENTITY) == a
            ok &= jac.add(a, jac.neg(a)).is_identity
            ok &= jac.mul(order, a).is_identity
        res.record(ok, f"group axioms and Lagrange mod {p}")
    return res


def periodicity_suites(curve: Curve, point: IntegralPoint, seed: SequenceSeed,
                       primes: list[int], jobs: int = 1) -> tuple[SuiteResult, SuiteResult]:
    per = SuiteResult("periodicity")
    theta = SuiteResult("theta-equivalence")
    for rep in analyze_many(curve, point, seed, primes, jobs=jobs):
        for name, val in rep.checks.items():
            if val is None:
                continue
            suite = theta if name == "theta-equivalence" else per
            suite.record(val, f"{name} at p = {rep.p} ({rep.status})", expected=rep.best_effort)
    return per, theta


def run_all(curve: Curve, point: IntegralPoint, seed: SequenceSeed, pmax: int,
            cap: int, jobs: int = 1) -> list[SuiteResult]:
    primes = list(sympy.primerange(2, pmax + 1))
    good = [p for p in primes if screen_prime(curve, seed, p).status == GOOD]
    seq = sequence_suite(seed, cap, good)
    if not seq.ok:
        return [seq]
    return [seq, group_law_suite(curve, good[:5]),
            *periodicity_suites(curve, point, seed, primes, jobs)]
