import json
import random
from fractions import Fraction

import pytest

from twistordisc.mpoly import (
    ExactDivisionError,
    MultiPoly,
    UniView,
    VarSetMismatch,
    parse_poly,
    poly_dumps,
    poly_from_json,
    poly_loads,
    poly_to_json,
)
from twistordisc.scalars import Complex, QuadExt

XY = ("x", "y")


def P(text, variables=XY):
    return parse_poly(text, variables)


def rand_poly(rng, variables=XY, deg=3, nterms=5):
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(0, deg) for _ in variables)
        terms[exps] = rng.randint(-9, 9)
    return MultiPoly(variables, terms)


class TestArithmetic:
    def test_difference_of_squares(self):
        assert P("x+y") * P("x-y") == P("x^2-y^2")

    def test_multiply_by_zero(self):
        p = P("x^2+3*y")
        assert (p * MultiPoly.zero(XY)).is_zero()

    def test_binomial_cube(self):
        assert P("x+1") ** 3 == P("x^3+3*x^2+3*x+1")

    def test_varset_mismatch(self):
        with pytest.raises(VarSetMismatch):
            P("x") + parse_poly("z", ("z",))

    def test_ring_axioms_randomised(self):
        rng = random.Random(41)
        for _ in range(150):
            a, b, c = (rand_poly(rng) for _ in range(3))
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            assert a + b == b + a


class TestSubstitutionEval:
    def test_shift(self):
        p = parse_poly("x^2+1", ("x", "t"))
        got = p.substitute("x", parse_poly("t+1", ("x", "t")))
        assert got == parse_poly("t^2+2*t+2", ("x", "t"))

    def test_identity_substitution(self):
        p = P("x")
        assert p.substitute("x", P("x")) == p

    def test_rational_substitution_clears_denominators(self):
        variables = ("s", "y")
        p = parse_poly("s^2+y^2", variables)
        num = parse_poly("1-s", variables)
        den = parse_poly("1+s", variables)
        cleared, k = p.substitute_rational("s", num, den)
        assert k == 2
        assert cleared == num * num + parse_poly("y^2", variables) * den * den

    def test_eval(self):
        assert P("x^2+y^2").eval([3, 4]) == 25

    def test_eval_at_zero_gives_constant_term(self):
        rng = random.Random(2)
        for _ in range(20):
            p = rand_poly(rng)
            assert p.eval([0, 0]) == p.constant_term()

    def test_eval_homomorphism(self):
        rng = random.Random(19)
        for _ in range(100):
            p, q = rand_poly(rng), rand_poly(rng)
            pt = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(2)]
            assert (p * q).eval(pt) == p.eval(pt) * q.eval(pt)

    def test_eval_length_mismatch(self):
        with pytest.raises(VarSetMismatch):
            P("x").eval([1])


class TestDerivative:
    def test_power_rule(self):
        assert P("x^3").derivative("x") == P("3*x^2")

    def test_constant(self):
        assert P("5").derivative("x").is_zero()

    def test_mixed(self):
        assert P("x^2*y").derivative("y") == P("x^2")

    def test_unknown_variable(self):
        with pytest.raises(VarSetMismatch):
            P("x").derivative("q")


class TestDivision:
    def test_exact(self):
        p = P("x^2-y^2")
        assert p.divexact(P("x-y")) == P("x+y")

    def test_inexact_raises(self):
        with pytest.raises(ExactDivisionError):
            P("x^2+1").divexact(P("x+1"))

    def test_monomial_content(self):
        p = P("x^3*y+x^2*y^2")
        stripped, mono = p.strip_monomial_content()
        assert mono == (2, 1)
        assert stripped == P("x+y")

    def test_primitive_part(self):
        p = P("4/3*x+8/3*y")
        prim, content = p.primitive_part()
        assert prim == P("x+2*y")
        assert content == Fraction(4, 3)
        assert prim.scale(content) == p


class TestUniView:
    def test_round_trip(self):
        rng = random.Random(9)
        variables = ("t", "x", "y")
        for _ in range(30):
            p = rand_poly(rng, variables, deg=4, nterms=8)
            uv = UniView.of(p, "t")
            assert uv.to_poly(variables) == p

    def test_coefficients(self):
        p = parse_poly("x^2*t^2+y*t+3", ("t", "x", "y"))
        uv = UniView.of(p, "t")
        assert uv.degree() == 2
        assert uv.coeffs[0] == parse_poly("3", ("x", "y"))
        assert uv.coeffs[1] == parse_poly("y", ("x", "y"))
        assert uv.coeffs[2] == parse_poly("x^2", ("x", "y"))


class TestJson:
    def test_bit_exact_round_trip(self):
        rng = random.Random(31)
        for _ in range(40):
            p = rand_poly(rng)
            text = poly_dumps(p)
            assert poly_dumps(poly_loads(text)) == text
            assert poly_loads(text) == p

    def test_scalar_tower_round_trip(self):
        p = MultiPoly(
            ("u", "v"),
            {
                (1, 0): QuadExt(Fraction(1, 2), Fraction(3)),
                (0, 2): Complex(Fraction(-2), Fraction(5, 7)),
            },
        )
        data = poly_to_json(p)
        q = poly_from_json(data)
        assert q.terms[(1, 0)] == QuadExt(Fraction(1, 2), Fraction(3))
        assert q.terms[(0, 2)] == Complex(Fraction(-2), Fraction(5, 7))

    def test_json_shape(self):
        p = P("x^2-1/2*y")
        data = poly_to_json(p)
        assert data["vars"] == ["x", "y"]
        assert {"coeff": "-1/2", "exps": [0, 1]} in data["terms"]
        json.dumps(data)
