import random
from fractions import Fraction

import pytest

from twistordisc.scalars import (
    SQRT3,
    Complex,
    Mobius,
    QuadExt,
    Quaternion,
    S4Point,
    format_scalar,
    mobius_apply,
    mobius_to_projective,
    parse_scalar,
    quat_inv,
    quat_mul,
)

I = Quaternion.from_components(0, 1, 0, 0)
J = Quaternion.from_components(0, 0, 1, 0)
K = Quaternion.from_components(0, 0, 0, 1)
ONE = Quaternion.from_components(1, 0, 0, 0)


def rand_quat(rng, quad=False):
    def r():
        v = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        return QuadExt(v, Fraction(rng.randint(-2, 2))) if quad else v

    return Quaternion(r(), r(), r(), r())


class TestQuaternion:
    def test_i_times_j_is_k(self):
        assert quat_mul(I, J) == K

    def test_j_squared_is_minus_one(self):
        assert quat_mul(J, J) == -ONE

    def test_one_plus_i_times_one_plus_j(self):
        got = quat_mul(ONE + I, ONE + J)
        assert got == Quaternion.from_components(1, 1, 1, 1)

    def test_inverse_of_j(self):
        assert quat_inv(J) == -J

    def test_inverse_of_scalar(self):
        assert quat_inv(Quaternion.of(2)) == Quaternion.from_components(Fraction(1, 2), 0, 0, 0)

    def test_inverse_of_one_plus_i(self):
        got = quat_inv(ONE + I)
        assert got == Quaternion.from_components(Fraction(1, 2), Fraction(-1, 2), 0, 0)

    def test_zero_inverse_raises(self):
        with pytest.raises(ZeroDivisionError):
            quat_inv(Quaternion.of(0))

    def test_associativity_randomised(self):
        rng = random.Random(7)
        for _ in range(1000):
            p, q, r = (rand_quat(rng) for _ in range(3))
            assert (p * q) * r == p * (q * r)

    def test_norm_multiplicative_over_quadext(self):
        rng = random.Random(11)
        for _ in range(200):
            p, q = rand_quat(rng, quad=True), rand_quat(rng, quad=True)
            assert (p * q).norm() == p.norm() * q.norm()


class TestQuadExt:
    def test_conjugate_product(self):
        rng = random.Random(3)
        for _ in range(100):
            v = QuadExt(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9)))
            assert v * v.conj() == v.a * v.a - 3 * v.b * v.b

    def test_sign(self):
        assert (SQRT3 - Fraction(17, 10)).sign() > 0
        assert (SQRT3 - Fraction(174, 100)).sign() < 0
        assert QuadExt(Fraction(-2), Fraction(1)).sign() < 0
        assert QuadExt(Fraction(-1), Fraction(1)).sign() > 0
        assert QuadExt(0, 0).sign() == 0


class TestMobius:
    def test_identity_fixes_j(self):
        m = Mobius.identity()
        assert mobius_apply(m, J) == S4Point.finite(J)

    def test_pole_goes_to_infinity(self):
        # q -> (q - k)^-1 (-q - k)
        m = Mobius(-1, -K, 1, -K)
        assert mobius_apply(m, K).is_infinity()

    def test_triple_point_images(self):
        # The shear sending the unit-sphere special points into a hyperplane
        # maps the six hexagon points to i-axis points.
        m = Mobius(-1, -K, 1, -K)
        half = Fraction(1, 2)
        s32 = SQRT3 * Fraction(1, 2)
        pts = []
        for s1 in (1, -1):
            for s2 in (1, -1):
                pts.append(Quaternion(QuadExt.of(0), QuadExt.of(0), QuadExt.of(s1 * half), s32 * s2))
        pts += [J.lift_quad(), (-J).lift_quad()]
        images = {mobius_apply(m, p) for p in pts}
        expect = set()
        for s in (1, -1):
            for mag in (QuadExt.of(1), QuadExt(Fraction(2), Fraction(1)), QuadExt(Fraction(2), Fraction(-1))):
                q = Quaternion(QuadExt.of(0), mag * s, QuadExt.of(0), QuadExt.of(0))
                expect.add(S4Point.finite(q))
        assert images == expect

    def test_twistor_line_images(self):
        m = Mobius(-1, -K, 1, -K)
        w1 = Quaternion(QuadExt.of(-1), QuadExt.of(0), QuadExt.of(0), QuadExt.of(0))
        img = mobius_apply(m, w1)
        assert img == S4Point.finite(K.lift_quad())

    def test_projective_identity(self):
        m = Mobius.identity()
        mat = mobius_to_projective(m)
        for i in range(4):
            for j in range(4):
                assert bool(mat[i][j]) == (i == j)

    def test_projective_a_equals_i(self):
        m = Mobius(I, 0, 0, 1)
        mat = mobius_to_projective(m)
        assert mat[0][0] == Complex(Fraction(0), Fraction(1))
        assert mat[1][1] == Complex(Fraction(0), Fraction(-1))
        assert not mat[0][1] and not mat[1][0]

    def test_round_trip_inverse(self):
        rng = random.Random(23)
        for _ in range(25):
            m = Mobius(rand_quat(rng), rand_quat(rng), rand_quat(rng), rand_quat(rng))
            if not m.is_invertible():
                continue
            comp = m.then(m.inverse())
            assert comp == Mobius.identity()

    def test_composition_matches_matrix_product(self):
        rng = random.Random(5)
        for _ in range(40):
            m1 = Mobius(rand_quat(rng), rand_quat(rng), rand_quat(rng), rand_quat(rng))
            m2 = Mobius(rand_quat(rng), rand_quat(rng), rand_quat(rng), rand_quat(rng))
            if not (m1.is_invertible() and m2.is_invertible()):
                continue
            q = rand_quat(rng)
            via_comp = mobius_apply(m1.then(m2), q)
            step = mobius_apply(m2, mobius_apply(m1, q))
            assert via_comp == step
            assert mobius_apply(m1.then(m2), S4Point.infinity()) == mobius_apply(
                m2, mobius_apply(m1, S4Point.infinity())
            )


class TestLiterals:
    CASES = ["0", "5", "-3/4", "1/2+1/3*sqrt3", "2-3*I", "1/2*sqrt3*I", "-sqrt3+I", "7/2-5/3*sqrt3-2*I+8/9*sqrt3*I"]

    def test_round_trip(self):
        for text in self.CASES:
            v = parse_scalar(text)
            assert parse_scalar(format_scalar(v)) == v

    def test_canonical_examples(self):
        assert format_scalar(parse_scalar("5")) == "5"
        assert format_scalar(Fraction(-3, 4)) == "-3/4"
        assert format_scalar(QuadExt(Fraction(1, 2), Fraction(1, 3))) == "1/2+1/3*sqrt3"
        assert format_scalar(Complex(Fraction(2), Fraction(-3))) == "2-3*I"
