import random
from fractions import Fraction

import pytest

from twistordisc.mpoly import MultiPoly, parse_poly
from twistordisc.resultants import (
    ZeroPolynomialError,
    cubic_discriminant,
    discriminant,
    gcd_poly,
    principal_subresultants,
    psc_oracle,
    resultant,
    resultant_sylvester,
    squarefree_part,
    univariate_gcd_field,
)

L = ("lam",)
LT = ("lam", "t")


def P(text, variables=L):
    return parse_poly(text, variables)


def rand_upoly(rng, deg, variables=L, lo=-6, hi=6):
    while True:
        terms = {}
        for e in range(deg + 1):
            c = rng.randint(lo, hi)
            if c:
                terms[(e,) + (0,) * (len(variables) - 1)] = c
        p = MultiPoly(variables, terms)
        if p.degree_in(variables[0]) == deg:
            return p


class TestResultant:
    def test_linear_pair(self):
        assert resultant(P("lam-1"), P("lam+1"), "lam") == MultiPoly.constant((), 2)

    def test_common_factor_vanishes(self):
        p = P("lam^2+3*lam+1")
        assert resultant(p, p, "lam").is_zero()

    def test_substituted_root(self):
        p = parse_poly("lam^2-t", LT)
        q = parse_poly("lam-1", LT)
        assert resultant(p, q, "lam") == parse_poly("1-t", ("t",))

    def test_matches_sylvester_oracle(self):
        rng = random.Random(101)
        for _ in range(120):
            dp = rng.randint(1, 5)
            dq = rng.randint(1, 5)
            p, q = rand_upoly(rng, dp), rand_upoly(rng, dq)
            assert resultant(p, q, "lam") == resultant_sylvester(p, q, "lam")

    def test_swap_sign_rule(self):
        rng = random.Random(55)
        for _ in range(100):
            p = rand_upoly(rng, rng.randint(1, 4))
            q = rand_upoly(rng, rng.randint(1, 4))
            rpq = resultant(p, q, "lam")
            rqp = resultant(q, p, "lam")
            sign = (-1) ** (p.degree_in("lam") * q.degree_in("lam"))
            assert rpq == rqp.scale(sign)

    def test_multiplicative_in_second_argument(self):
        rng = random.Random(77)
        for _ in range(60):
            p = rand_upoly(rng, rng.randint(1, 3))
            q1 = rand_upoly(rng, rng.randint(1, 3))
            q2 = rand_upoly(rng, rng.randint(1, 3))
            assert resultant(p, q1 * q2, "lam") == resultant(p, q1, "lam") * resultant(p, q2, "lam")

    def test_zero_input_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            resultant(MultiPoly.zero(L), P("lam"), "lam")


class TestDiscriminant:
    def test_quadratic(self):
        p = parse_poly("lam^2+b*lam+c", ("lam", "b", "c"))
        assert discriminant(p, "lam") == parse_poly("b^2-4*c", ("b", "c"))

    def test_cubic_lambda3_plus_1(self):
        assert discriminant(P("lam^3+1"), "lam") == MultiPoly.constant((), -27)

    def test_repeated_root_gives_zero(self):
        p = P("lam-1") * P("lam-1") * P("lam+2")
        assert discriminant(p, "lam").is_zero()

    def test_matches_cubic_formula(self):
        rng = random.Random(13)
        for _ in range(200):
            a = rng.randint(1, 6)
            b, c, d = (rng.randint(-6, 6) for _ in range(3))
            p = MultiPoly(L, {(3,): a, (2,): b, (1,): c, (0,): d})
            got = discriminant(p, "lam")
            want = cubic_discriminant(Fraction(a), Fraction(b), Fraction(c), Fraction(d))
            assert got == MultiPoly.constant((), want)

    def test_zero_iff_repeated_root_oracle(self):
        # Brute-force oracle: deg gcd(p, p') >= 1 detected over Q.
        rng = random.Random(501)
        hits = 0
        for _ in range(500):
            deg = rng.randint(2, 6)
            if rng.random() < 0.4:
                r = rand_upoly(rng, 1)
                p = r * r * rand_upoly(rng, deg - 2) if deg > 2 else r * r
            else:
                p = rand_upoly(rng, deg)
            if p.degree_in("lam") < 2:
                continue
            disc = discriminant(p, "lam")
            coeffs = [Fraction(p.coefficient((e,))) for e in range(p.degree_in("lam") + 1)]
            dcoeffs = [e * coeffs[e] for e in range(1, len(coeffs))]
            g = univariate_gcd_field(coeffs, dcoeffs)
            has_repeat = len(g) - 1 >= 1
            assert disc.is_zero() == has_repeat
            hits += 1
        assert hits >= 400


class TestSquarefree:
    def test_strips_repeated_factor(self):
        p = P("lam-1") * P("lam-1") * P("lam+2")
        sf = squarefree_part(p, "lam")
        assert sf == P("lam-1") * P("lam+2")

    def test_already_squarefree(self):
        p = P("lam^3-lam+1")
        assert squarefree_part(p, "lam") == p

    def test_stabiliser_shape(self):
        t = ("T",)
        inner = parse_poly("3+10*T+3*T^2", t)
        p = parse_poly("T^2", t) * inner ** 4
        sf = squarefree_part(p.scale(8), "T")
        assert sf == parse_poly("T", t) * inner


class TestSubresultants:
    def test_psc0_is_resultant(self):
        assert principal_subresultants(P("lam-1"), P("lam+1"), "lam")[0] == MultiPoly.constant((), 2)

    def test_coprime_linear_pair_has_only_psc0(self):
        out = principal_subresultants(P("lam-1"), P("lam+1"), "lam")
        assert len(out) == 1

    def test_double_root_drops_exactly_one(self):
        p = parse_poly("lam^2-2*t*lam+t^2", LT)  # (lam - t)^2
        dp = p.derivative("lam")
        out = principal_subresultants(p, dp, "lam")
        assert out[0].is_zero()
        assert not out[1].is_zero()

    def test_matches_determinant_oracle(self):
        rng = random.Random(271)
        for _ in range(150):
            dp = rng.randint(1, 5)
            dq = rng.randint(1, dp)
            p, q = rand_upoly(rng, dp), rand_upoly(rng, dq)
            got = principal_subresultants(p, q, "lam")
            for j in range(min(dp, dq)):
                assert got[j] == psc_oracle(p, q, "lam", j), (p, q, j)

    def test_matches_oracle_with_defects(self):
        # Gap-prone inputs: sparse high-degree pairs trigger defective steps.
        rng = random.Random(272)
        for _ in range(80):
            p = MultiPoly(L, {(rng.randint(3, 6),): rng.randint(1, 4), (0,): rng.randint(-4, 4), (1,): rng.randint(-2, 2)})
            q = MultiPoly(L, {(rng.randint(2, 4),): rng.randint(1, 4), (0,): rng.randint(-4, 4)})
            dp, dq = p.degree_in("lam"), q.degree_in("lam")
            if dq > dp:
                p, q = q, p
                dp, dq = dq, dp
            got = principal_subresultants(p, q, "lam")
            for j in range(dq):
                assert got[j] == psc_oracle(p, q, "lam", j), (p, q, j)


class TestGcd:
    def test_multivariate(self):
        p = parse_poly("lam^2-t^2", LT)
        q = parse_poly("lam^2+2*t*lam+t^2", LT)
        g = gcd_poly(p, q, "lam")
        assert g == parse_poly("lam+t", LT)

    def test_coprime(self):
        g = gcd_poly(P("lam^2+1"), P("lam-3"), "lam")
        assert g.total_degree() == 0
