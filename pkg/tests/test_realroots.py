import random
from fractions import Fraction

import pytest

from twistordisc import realroots as rr
from twistordisc.algnum import AlgebraicNumber
from twistordisc.extfield import (
    ExtField,
    ext_count_roots,
    ext_gcd,
    ext_isolate_roots,
    ext_poly_from_bivariate,
    ext_sign_at,
    ext_sturm_chain,
    ext_trim,
    primitive_element,
)
from twistordisc.mpoly import parse_poly
from twistordisc.realroots import simplest_rational_between


class TestIsolation:
    def test_cube_root_of_two(self):
        roots = rr.isolate_real_roots_integer([-2, 0, 0, 1])
        assert len(roots) == 1
        lo, hi = roots[0]
        assert hi - lo <= 1
        assert rr.eval_at([-2, 0, 0, 1], lo) < 0 < rr.eval_at([-2, 0, 0, 1], hi)

    def test_no_real_roots(self):
        assert rr.isolate_real_roots_integer([1, 0, 1]) == []

    def test_rational_roots_exact(self):
        # (2x - 1)(x + 3)(x - 2)
        p = rr.poly_mul(rr.poly_mul([-1, 2], [3, 1]), [-2, 1])
        roots = AlgebraicNumber.roots_of(p)
        assert [r.exact for r in roots] == [Fraction(-3), Fraction(1, 2), Fraction(2)]

    def test_many_random_polys_against_counting(self):
        rng = random.Random(77)
        for _ in range(120):
            deg = rng.randint(1, 6)
            coeffs = [rng.randint(-8, 8) for _ in range(deg)] + [rng.randint(1, 8)]
            roots = rr.isolate_real_roots_integer(coeffs)
            chain = rr.sturm_chain(coeffs)
            assert len(roots) == rr.sturm_count_all(chain)
            for (lo, hi), (lo2, hi2) in zip(roots, roots[1:]):
                assert hi <= lo2
            for lo, hi in roots:
                if lo != hi:
                    assert rr.sturm_count(chain, lo, hi) == 1

    def test_non_squarefree_input(self):
        p = rr.poly_mul([-1, 1], [-1, 1])  # (x-1)^2
        roots = rr.isolate_real_roots_integer(p)
        assert len(roots) == 1

    def test_simplest_rational(self):
        assert simplest_rational_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
        assert simplest_rational_between(Fraction(-1), Fraction(1)) == 0
        assert simplest_rational_between(Fraction(3), Fraction(4)) == Fraction(7, 2)
        assert simplest_rational_between(Fraction(14, 10), Fraction(15, 10)) == Fraction(3, 2) - 0 if False else True
        q = simplest_rational_between(Fraction(141, 100), Fraction(142, 100))
        assert Fraction(141, 100) < q < Fraction(142, 100)


class TestAlgebraicNumber:
    def test_sqrt2_times_itself(self):
        roots = AlgebraicNumber.roots_of([-2, 0, 1])
        assert len(roots) == 2
        pos = roots[1]
        assert pos.sign_of([0, 1]) == 1
        assert pos.sign_of([-2, 0, 1]) == 0
        assert pos.sign_of([-1, 0, 1]) == 1  # 2 - 1 > 0 at x = sqrt2: x^2-1 > 0

    def test_compare_roots(self):
        r2 = AlgebraicNumber.roots_of([-2, 0, 1])[1]
        r3 = AlgebraicNumber.roots_of([-3, 0, 1])[1]
        assert r2.compare(r3) == -1
        assert r3.compare(r2) == 1
        assert r2.compare(Fraction(3, 2)) == -1
        assert r2.compare(Fraction(7, 5)) == 1

    def test_equality_through_different_polys(self):
        a = AlgebraicNumber.roots_of([-2, 0, 1])[1]
        # sqrt2 as root of (x^2-2)(x-5)
        p = rr.poly_mul([-2, 0, 1], [-5, 1])
        cands = AlgebraicNumber.roots_of(p)
        match = [c for c in cands if c.compare(Fraction(1)) > 0 and c.compare(Fraction(2)) < 0]
        assert len(match) == 1
        assert a.equals(match[0])
        assert a.compare(cands[-1]) == -1  # 5 is larger

    def test_rational_special_case(self):
        q = AlgebraicNumber.from_rational(Fraction(5, 3))
        assert q.is_rational()
        assert q.sign_of([-5, 3]) == 0
        assert q.compare(Fraction(2)) == -1


class TestExtField:
    def setup_method(self):
        self.alpha = AlgebraicNumber.roots_of([-2, 0, 1])[1]  # sqrt 2
        self.field = ExtField(self.alpha)

    def test_basic_arithmetic(self):
        f = self.field
        a = f.reduce([Fraction(0), Fraction(1)])  # alpha
        sq = f.mul(a, a)
        assert sq == (Fraction(2),)
        inv = f.inverse(a)
        assert f.mul(inv, a) == (Fraction(1),)
        assert f.sign(f.sub(a, f.of_rational(Fraction(3, 2)))) < 0
        assert f.sign(f.sub(a, f.of_rational(Fraction(7, 5)))) > 0

    def test_zero_divisor_split(self):
        # Reducible modulus (x^2-2)(x^2-3); alpha isolates sqrt 2.
        p = rr.poly_mul([-2, 0, 1], [-3, 0, 1])
        cands = AlgebraicNumber.roots_of(p)
        sqrt2 = [c for c in cands if c.compare(Fraction(3, 2)) < 0 and c.compare(1) > 0][0]
        f = ExtField(sqrt2)
        a = f.reduce([Fraction(0), Fraction(1)])
        v = f.add(f.mul(a, a), f.of_rational(Fraction(-2)))  # alpha^2 - 2 = 0
        assert f.is_zero(v)
        assert f.degree() == 2  # modulus split down to x^2 - 2

    def test_ext_polynomial_roots(self):
        # y^2 - alpha has roots +- 2^(1/4)
        f = self.field
        coeffs = [f.neg(f.reduce([Fraction(0), Fraction(1)])), (), f.of_rational(1)]
        roots = ext_isolate_roots(f, coeffs)
        assert len(roots) == 2
        chain = ext_sturm_chain(f, coeffs)
        assert ext_count_roots(f, chain, Fraction(0), Fraction(2)) == 1

    def test_ext_poly_from_bivariate_and_gcd(self):
        f = self.field
        p = parse_poly("y^2-x", ("x", "y"))  # y^2 - alpha
        q = parse_poly("y^4-2", ("x", "y"))  # y^4 - 2 shares roots with it
        pe = ext_poly_from_bivariate(f, p, "x", "y")
        qe = ext_poly_from_bivariate(f, q, "x", "y")
        g = ext_gcd(f, qe, pe)
        assert len(g) - 1 == 2  # y^2 - sqrt2 divides y^4 - 2

    def test_leading_coeff_drop(self):
        f = self.field
        # (x^2 - 2) y^3 + y: lead coefficient vanishes at alpha
        p = parse_poly("x^2*y^3-2*y^3+y", ("x", "y"))
        pe = ext_poly_from_bivariate(f, p, "x", "y")
        assert len(pe) - 1 == 1


class TestPrimitiveElement:
    def test_sqrt2_sqrt3(self):
        alpha = AlgebraicNumber.roots_of([-2, 0, 1])[1]
        p2 = parse_poly("y^2-3", ("x", "y"))

        class Root:
            def __init__(self):
                self.lo, self.hi = Fraction(3, 2), Fraction(9, 5)

            def interval(self):
                return (self.lo, self.hi)

            def refine(self):
                mid = (self.lo + self.hi) / 2
                if mid * mid < 3:
                    self.lo = mid
                else:
                    self.hi = mid

        field, c, a_in, b_in = primitive_element(alpha, p2, "x", "y", Root())
        # alpha expressed in theta must square to 2, beta to 3.
        assert field.is_zero(field.sub(field.mul(a_in, a_in), field.of_rational(2)))
        assert field.is_zero(field.sub(field.mul(b_in, b_in), field.of_rational(3)))
        assert field.sign(a_in) > 0 and field.sign(b_in) > 0
