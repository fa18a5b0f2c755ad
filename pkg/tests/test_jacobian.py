import math
import random
from collections import Counter

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from g2period.curve import IntegralPoint, screen_prime
from g2period.jacobian import (IDENTITY, BadReduction, Fp2, InconsistentOrder, Jacobian,
                               MumfordDivisor, count_points, count_points_ext, embed, in_theta,
                               jacobian_order, least_nonresidue, order_of, pdivmod, pmul, psub,
                               reduce_curve)
from g2period.sequence import find_triple_zero, terms_mod_p


def enumerate_jacobian(f, p):
    """Every reduced (u, v): the group order by brute force."""
    count = 1
    for u0 in range(p):                     # deg u = 1
        for v0 in range(p):
            u = (u0, 1)
            v = (v0,) if v0 else ()
            if not pdivmod(psub(pmul(v, v, p), f, p), u, p)[1]:
                count += 1
    for u0 in range(p):                     # deg u = 2
        for u1 in range(p):
            u = (u0, u1, 1)
            for v0 in range(p):
                for v1 in range(p):
                    v = (v0, v1) if v1 else ((v0,) if v0 else ())
                    if not pdivmod(psub(pmul(v, v, p), f, p), u, p)[1]:
                        count += 1
    return count


def count_ext_by_squaring(f, p):
    nu = least_nonresidue(p)
    elems = [Fp2(a, b, p, nu) for a in range(p) for b in range(p)]
    roots = Counter((z * z).a * p + (z * z).b for z in elems)
    total = 1
    for x in elems:
        fx = Fp2(0, 0, p, nu)
        for c in reversed(f):
            fx = fx * x + Fp2(c, 0, p, nu)
        total += roots[fx.a * p + fx.b]
    return total


def test_reduce_curve(curve):
    assert reduce_curve(curve, 7).f == (2, 5, 0, 0, 4, 1)
    with pytest.raises(BadReduction):
        reduce_curve(curve, 29)
    with pytest.raises(BadReduction):
        reduce_curve(curve, 2)


@pytest.mark.parametrize("p", [3, 7, 11, 13])
def test_counts_against_brute_force(curve, p):
    rc = reduce_curve(curve, p)
    fx = [sum(c * pow(x, i, p) for i, c in enumerate(rc.f)) % p for x in range(p)]
    roots = Counter(y * y % p for y in range(p))
    n1 = 1 + sum(roots[v] for v in fx)
    assert count_points(rc) == n1 == jacobian_order(curve, p).N1
    assert count_points_ext(rc) == count_ext_by_squaring(rc.f, p)
    assert jacobian_order(curve, p).order == enumerate_jacobian(rc.f, p)


@pytest.mark.parametrize("p,expected", [(7, 28), (13, 127), (31, 997), (3, 12)])
def test_jacobian_order_published(curve, p, expected):
    info = jacobian_order(curve, p)
    assert info.order == expected
    assert info.N1 <= 2 * p + 1
    assert info.N2 >= info.N1


def test_embed(curve, point):
    D = embed(curve, point, 7)
    assert D == MumfordDivisor((0, 1), (3,))
    assert not D.is_identity and in_theta(D)
    jac = Jacobian.of(curve, 7)
    conj = jac.embed(IntegralPoint(point.x, -point.y))
    assert jac.add(D, conj).is_identity


@pytest.mark.parametrize("p,r", [(7, 7), (11, 56), (101, 275), (379, 143613)])
def test_order_of(curve, point, p, r):
    jac = Jacobian.of(curve, p)
    D = jac.embed(point)
    assert order_of(jac, D, jacobian_order(curve, p)) == r
    assert jac.mul(r, D).is_identity


def test_order_of_inconsistent(curve, point):
    jac = Jacobian.of(curve, 11)
    info = jacobian_order(curve, 11)
    bogus = type(info)(info.p, info.N1, info.N2, info.order + 1)
    with pytest.raises(InconsistentOrder):
        order_of(jac, jac.embed(point), bogus)


def test_in_theta_identity():
    assert in_theta(IDENTITY)


@pytest.mark.parametrize("p", [11, 13, 101])
def test_group_law_random(curve, p):
    jac = Jacobian.of(curve, p)
    order = jacobian_order(curve, p).order
    rng = random.Random(p)
    for _ in range(200):
        a, b, c = (jac.random_point_divisor(rng) for _ in range(3))
        assert jac.is_valid(a)
        assert jac.add(jac.add(a, b), c) == jac.add(a, jac.add(b, c))
        assert jac.add(a, b) == jac.add(b, a)
        assert jac.add(a, jac.neg(a)).is_identity
        assert jac.add(a, IDENTITY) == a
        assert jac.mul(order, a).is_identity
        assert jac.mul(-3, a) == jac.neg(jac.add(a, jac.add(a, a)))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 13, 97, 389]), st.integers(0, 10**6), st.integers(0, 10**6))
def test_fp2_sqrt(p, a, b):
    z = Fp2(a % p, b % p, p, least_nonresidue(p))
    sq = z * z
    assert sq.is_square()
    root = sq.sqrt()
    assert root * root == sq


def test_weil_bounds_below_400(curve, seed):
    for p in sympy.primerange(3, 400):
        if screen_prime(curve, seed, p).status == "bad-reduction":
            continue
        info = jacobian_order(curve, p)
        assert abs(info.N1 - (p + 1)) <= math.floor(4 * math.sqrt(p))
        assert info.order <= (1 + math.sqrt(p)) ** 4


def test_order_equals_triple_zero_and_divides_group(curve, point, seed, reports_400):
    for p, rep in reports_400.items():
        if rep.status != "good":
            continue
        assert rep.jac_order % rep.r == 0
        assert find_triple_zero(seed, p) == rep.r


@pytest.mark.parametrize("p", [11, 13, 19, 23, 59, 101])
def test_theta_equivalence(curve, point, seed, p):
    jac = Jacobian.of(curve, p)
    D = jac.embed(point)
    r = order_of(jac, D, jacobian_order(curve, p))
    cs = terms_mod_p(seed, p, 2 * r)
    acc = jac.add(D, D)
    for n in range(3, 2 * r + 1):
        acc = jac.add(acc, D)
        assert in_theta(acc) == (cs[n] == 0), n
