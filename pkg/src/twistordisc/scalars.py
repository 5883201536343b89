"""Exact scalar tower: rationals, Q(sqrt3), complex numbers, quaternions.

Every value is immutable and every operation is pure, so the whole tower is
safe to share across threads.  The base field of a computation is fixed at
construction time: plain rationals (`fractions.Fraction`) or the real
quadratic extension Q(sqrt3) (`QuadExt`).  Complex numbers and quaternions
are generic over that choice.  Integers and Fractions lift implicitly into
any level of the tower; any other cross-field mixing raises `TypeError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

# The canonical rational scalar.  Fraction already maintains the invariants
# required here: gcd(num, den) = 1, den > 0, canonical zero 0/1.
Rational = Fraction


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


@dataclass(frozen=True)
class QuadExt:
    """Element a + b*sqrt(3) of the real quadratic field Q(sqrt3)."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))

    @staticmethod
    def of(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return QuadExt(_as_fraction(x), Fraction(0))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __add__(self, other):
        o = QuadExt.of(other)
        return QuadExt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QuadExt.of(other))

    def __rsub__(self, other):
        return QuadExt.of(other) + (-self)

    def __mul__(self, other):
        o = QuadExt.of(other)
        return QuadExt(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conj(self) -> "QuadExt":
        """Galois conjugate a - b*sqrt3."""
        return QuadExt(self.a, -self.b)

    def inverse(self) -> "QuadExt":
        n = self.a * self.a - 3 * self.b * self.b
        if not n:
            raise ZeroDivisionError("division by zero in Q(sqrt3)")
        return QuadExt(self.a / n, -self.b / n)

    def __truediv__(self, other):
        return self * QuadExt.of(other).inverse()

    def __rtruediv__(self, other):
        return QuadExt.of(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = QuadExt(Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            o = QuadExt.of(other)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def sign(self) -> int:
        """Exact sign of a + b*sqrt3."""
        a, b = self.a, self.b
        if b == 0:
            return -1 if a < 0 else (1 if a > 0 else 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Signs differ: compare a^2 with 3 b^2.
        d = a * a - 3 * b * b
        big_is_a = d > 0
        if d == 0:
            raise ArithmeticError("sqrt3 is irrational; a^2 = 3 b^2 impossible for nonzero a,b")
        if big_is_a:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __lt__(self, other):
        return (self - QuadExt.of(other)).sign() < 0

    def __le__(self, other):
        return (self - QuadExt.of(other)).sign() <= 0

    def __gt__(self, other):
        return (self - QuadExt.of(other)).sign() > 0

    def __ge__(self, other):
        return (self - QuadExt.of(other)).sign() >= 0

    def to_fraction_pair(self):
        return (self.a, self.b)

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b})"


SQRT3 = QuadExt(Fraction(0), Fraction(1))


def _lift_base(x, like):
    """Lift int/Fraction into the base field of `like` (Fraction or QuadExt)."""
    if isinstance(like, QuadExt):
        return QuadExt.of(x)
    return _as_fraction(x)


def base_zero_like(x):
    return _lift_base(0, x)


def base_one_like(x):
    return _lift_base(1, x)


@dataclass(frozen=True)
class Complex:
    """Complex number over a fixed real base field (Fraction or QuadExt)."""

    re: object
    im: object

    @staticmethod
    def of(x, base_hint=None) -> "Complex":
        if isinstance(x, Complex):
            return x
        if isinstance(x, (int, Fraction)):
            if isinstance(base_hint, QuadExt) or base_hint is QuadExt:
                return Complex(QuadExt.of(x), QuadExt.of(0))
            return Complex(_as_fraction(x), Fraction(0))
        if isinstance(x, QuadExt):
            return Complex(x, QuadExt.of(0))
        raise TypeError(f"cannot interpret {x!r} as a complex scalar")

    def _pair(self, other):
        o = Complex.of(other, base_hint=self.re)
        if isinstance(self.re, QuadExt) != isinstance(o.re, QuadExt):
            # Lift the plain-rational side into Q(sqrt3).
            if isinstance(self.re, QuadExt):
                o = Complex(QuadExt.of(o.re), QuadExt.of(o.im))
                return self, o
            return Complex(QuadExt.of(self.re), QuadExt.of(self.im)), o
        return self, o

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        s, o = self._pair(other)
        return Complex(s.re + o.re, s.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Complex(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-Complex.of(other, base_hint=self.re))

    def __rsub__(self, other):
        return Complex.of(other, base_hint=self.re) + (-self)

    def __mul__(self, other):
        s, o = self._pair(other)
        return Complex(s.re * o.re - s.im * o.im, s.re * o.im + s.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "Complex":
        return Complex(self.re, -self.im)

    def norm(self):
        """re^2 + im^2, an element of the base field."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Complex":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero complex scalar")
        if isinstance(n, QuadExt):
            ninv = n.inverse()
        else:
            ninv = Fraction(1) / n
        return Complex(self.re * ninv, -self.im * ninv)

    def __truediv__(self, other):
        return self * Complex.of(other, base_hint=self.re).inverse()

    def __rtruediv__(self, other):
        return Complex.of(other, base_hint=self.re) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = Complex.of(1, base_hint=self.re)
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadExt, Complex)):
            s, o = self._pair(other)
            return s.re == o.re and s.im == o.im
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"Complex({self.re!r}, {self.im!r})"


@dataclass(frozen=True)
class Quaternion:
    """Quaternion w + x i + y j + z k over a fixed real base field."""

    w: object
    x: object
    y: object
    z: object

    @staticmethod
    def of(v, base_hint=None) -> "Quaternion":
        if isinstance(v, Quaternion):
            return v
        if isinstance(v, Complex):
            zero = base_zero_like(v.re)
            return Quaternion(v.re, v.im, zero, zero)
        if isinstance(v, QuadExt):
            zero = QuadExt.of(0)
            return Quaternion(v, zero, zero, zero)
        if isinstance(v, (int, Fraction)):
            if isinstance(base_hint, QuadExt) or base_hint is QuadExt:
                zero = QuadExt.of(0)
                return Quaternion(QuadExt.of(v), zero, zero, zero)
            return Quaternion(_as_fraction(v), Fraction(0), Fraction(0), Fraction(0))
        raise TypeError(f"cannot interpret {v!r} as a quaternion")

    @staticmethod
    def from_components(w, x, y, z, quad: bool = False) -> "Quaternion":
        if quad:
            return Quaternion(QuadExt.of(w), QuadExt.of(x), QuadExt.of(y), QuadExt.of(z))
        return Quaternion(_as_fraction(w), _as_fraction(x), _as_fraction(y), _as_fraction(z))

    def _pair(self, other):
        o = Quaternion.of(other, base_hint=self.w)
        if isinstance(self.w, QuadExt) != isinstance(o.w, QuadExt):
            if isinstance(self.w, QuadExt):
                return self, o.lift_quad()
            return self.lift_quad(), o
        return self, o

    def lift_quad(self) -> "Quaternion":
        if isinstance(self.w, QuadExt):
            return self
        return Quaternion(QuadExt.of(self.w), QuadExt.of(self.x), QuadExt.of(self.y), QuadExt.of(self.z))

    def __bool__(self):
        return bool(self.w) or bool(self.x) or bool(self.y) or bool(self.z)

    def __add__(self, other):
        s, o = self._pair(other)
        return Quaternion(s.w + o.w, s.x + o.x, s.y + o.y, s.z + o.z)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        return self + (-Quaternion.of(other, base_hint=self.w))

    def __rsub__(self, other):
        return Quaternion.of(other, base_hint=self.w) + (-self)

    def __mul__(self, other):
        """Hamilton product, self * other in that order."""
        s, o = self._pair(other)
        w1, x1, y1, z1 = s.w, s.x, s.y, s.z
        w2, x2, y2, z2 = o.w, o.x, o.y, o.z
        return Quaternion(
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    def __rmul__(self, other):
        return Quaternion.of(other, base_hint=self.w) * self

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero quaternion")
        if isinstance(n, QuadExt):
            ninv = n.inverse()
        else:
            ninv = Fraction(1) / n
        c = self.conj()
        return Quaternion(c.w * ninv, c.x * ninv, c.y * ninv, c.z * ninv)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadExt, Complex, Quaternion)):
            s, o = self._pair(other)
            return s.w == o.w and s.x == o.x and s.y == o.y and s.z == o.z
        return NotImplemented

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z))

    def q1(self) -> Complex:
        """First complex component of q = q1 + q2 j."""
        return Complex(self.w, self.x)

    def q2(self) -> Complex:
        """Second complex component of q = q1 + q2 j."""
        return Complex(self.y, self.z)

    @staticmethod
    def from_complex_pair(q1: Complex, q2: Complex) -> "Quaternion":
        return Quaternion(q1.re, q1.im, q2.re, q2.im)

    def __repr__(self):
        return f"Quaternion({self.w}, {self.x}, {self.y}, {self.z})"


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product of two quaternions over a shared base field."""
    return p * q


def quat_inv(q: Quaternion) -> Quaternion:
    """Multiplicative inverse; raises ZeroDivisionError on the zero quaternion."""
    return q.inverse()


class S4Point:
    """Point of S^4 = H u {infinity} in projective pair form [q1, q2].

    The pair is taken modulo left multiplication by nonzero quaternions, and
    is normalised on construction to (q2^-1 q1, 1), or to (1, 0) for the
    point at infinity.  Infinity is an ordinary value here, not an error.
    """

    __slots__ = ("q1", "q2")

    def __init__(self, q1: Quaternion, q2: Quaternion):
        if not q1 and not q2:
            raise ValueError("projective pair (0, 0) is not a point")
        if q2:
            q1 = q2.inverse() * q1
            q2 = Quaternion.of(1, base_hint=q1.w)
            q1, q2 = q1._pair(q2)
        else:
            q1 = Quaternion.of(1, base_hint=q1.w)
            q2 = Quaternion.of(0, base_hint=q1.w)
        self.q1 = q1
        self.q2 = q2

    @staticmethod
    def finite(q) -> "S4Point":
        q = Quaternion.of(q)
        return S4Point(q, Quaternion.of(1, base_hint=q.w))

    @staticmethod
    def infinity() -> "S4Point":
        return S4Point(Quaternion.of(1), Quaternion.of(0))

    def is_infinity(self) -> bool:
        return not self.q2

    def as_quaternion(self) -> Quaternion:
        if self.is_infinity():
            raise ValueError("the point at infinity has no quaternion coordinate")
        return self.q1

    def __eq__(self, other):
        if not isinstance(other, S4Point):
            return NotImplemented
        if self.is_infinity() or other.is_infinity():
            return self.is_infinity() and other.is_infinity()
        return self.q1 == other.q1

    def __hash__(self):
        if self.is_infinity():
            return hash("inf")
        return hash(self.q1)

    def __repr__(self):
        if self.is_infinity():
            return "S4Point(inf)"
        return f"S4Point({self.q1!r})"


class Mobius:
    """Quaternionic Mobius transformation q -> (q c + d)^-1 (q a + b).

    Acts on S^4 through the projective rule [q1, q2] -> [q1 a + q2 b,
    q1 c + q2 d], which extends the affine formula to infinity.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        vals = [Quaternion.of(v) for v in (a, b, c, d)]
        if any(isinstance(v.w, QuadExt) for v in vals):
            vals = [v.lift_quad() for v in vals]
        self.a, self.b, self.c, self.d = vals

    @staticmethod
    def identity() -> "Mobius":
        return Mobius(1, 0, 0, 1)

    def apply(self, point) -> S4Point:
        """Image of a point (S4Point, Quaternion, or scalar) on S^4."""
        if not isinstance(point, S4Point):
            point = S4Point.finite(point)
        q1, q2 = point.q1, point.q2
        a, b, c, d = self.a, self.b, self.c, self.d
        if isinstance(q1.w, QuadExt):
            a, b, c, d = a.lift_quad(), b.lift_quad(), c.lift_quad(), d.lift_quad()
        else:
            q1 = q1._pair(a)[0]
            q2 = q2._pair(a)[0]
        return S4Point(q1 * a + q2 * b, q1 * c + q2 * d)

    def then(self, other: "Mobius") -> "Mobius":
        """Composition: apply self first, then other."""
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Mobius(
            a1 * a2 + c1 * b2,
            b1 * a2 + d1 * b2,
            a1 * c2 + c1 * d2,
            b1 * c2 + d1 * d2,
        )

    def to_projective(self):
        """4x4 complex matrix of the induced projective map, acting on columns.

        The row pattern encodes the complex conjugation symmetries that
        characterise projective maps arising from conformal maps of S^4:

            [ a1  -conj(a2)  b1  -conj(b2) ]
            [ a2   conj(a1)  b2   conj(b1) ]
            [ c1  -conj(c2)  d1  -conj(d2) ]
            [ c2   conj(c1)  d2   conj(d1) ]
        """
        a1, a2 = self.a.q1(), self.a.q2()
        b1, b2 = self.b.q1(), self.b.q2()
        c1, c2 = self.c.q1(), self.c.q2()
        d1, d2 = self.d.q1(), self.d.q2()
        return [
            [a1, -a2.conj(), b1, -b2.conj()],
            [a2, a1.conj(), b2, b1.conj()],
            [c1, -c2.conj(), d1, -d2.conj()],
            [c2, c1.conj(), d2, d1.conj()],
        ]

    @staticmethod
    def from_projective(m) -> "Mobius":
        """Inverse of to_projective; validates the conjugation pattern."""
        a = Quaternion.from_complex_pair(m[0][0], m[1][0])
        b = Quaternion.from_complex_pair(m[0][2], m[1][2])
        c = Quaternion.from_complex_pair(m[2][0], m[3][0])
        d = Quaternion.from_complex_pair(m[2][2], m[3][2])
        mob = Mobius(a, b, c, d)
        expect = mob.to_projective()
        for i in range(4):
            for j in range(4):
                if expect[i][j] != m[i][j]:
                    raise ValueError("matrix lacks the conformal conjugation pattern")
        return mob

    def det_projective(self) -> Complex:
        """Determinant of the 4x4 projective matrix (exact)."""
        return _complex_det(self.to_projective())

    def is_invertible(self) -> bool:
        return bool(self.det_projective())

    def inverse(self) -> "Mobius":
        """Inverse transformation, via the inverse projective matrix."""
        inv = _complex_mat_inverse(self.to_projective())
        # Rescale so the pattern positions are self-consistent; the inverse of
        # a patterned matrix is patterned up to a real scalar, which the
        # pattern check in from_projective tolerates only if exact.  Clearing
        # denominators by a real scalar keeps the pattern intact.
        return Mobius.from_projective(inv)

    def __eq__(self, other):
        if not isinstance(other, Mobius):
            return NotImplemented
        # Compare as projective transformations: equal iff matrices are
        # proportional by a real scalar.  Sufficient here: compare actions on
        # a spanning set of points.
        probes = [
            S4Point.finite(Quaternion.from_components(0, 0, 0, 0)),
            S4Point.finite(Quaternion.from_components(1, 0, 0, 0)),
            S4Point.finite(Quaternion.from_components(0, 1, 0, 0)),
            S4Point.finite(Quaternion.from_components(0, 0, 1, 0)),
            S4Point.finite(Quaternion.from_components(0, 0, 0, 1)),
            S4Point.finite(Quaternion.from_components(1, 1, 1, 1)),
            S4Point.finite(Quaternion.from_components(-2, 3, 5, -7)),
            S4Point.infinity(),
        ]
        return all(self.apply(p) == other.apply(p) for p in probes)

    def __repr__(self):
        return f"Mobius(a={self.a!r}, b={self.b!r}, c={self.c!r}, d={self.d!r})"


def mobius_apply(m: Mobius, q) -> S4Point:
    """Image of q (a quaternion, scalar, or S4Point, infinity included)."""
    return m.apply(q)


def mobius_to_projective(m: Mobius):
    return m.to_projective()


def _complex_det(m) -> Complex:
    """Exact determinant by fraction-free elimination on a copy."""
    n = len(m)
    a = [row[:] for row in m]
    det = Complex.of(1, base_hint=a[0][0].re)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return Complex.of(0, base_hint=a[0][0].re)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv = a[col][col].inverse()
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                for cc in range(col, n):
                    a[r][cc] = a[r][cc] - f * a[col][cc]
    return det


def _complex_mat_inverse(m):
    """Exact inverse of a small complex matrix by Gauss-Jordan elimination."""
    n = len(m)
    a = [row[:] for row in m]
    one = Complex.of(1, base_hint=a[0][0].re)
    zero = Complex.of(0, base_hint=a[0][0].re)
    ident = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        ident[col], ident[piv] = ident[piv], ident[col]
        inv = a[col][col].inverse()
        a[col] = [v * inv for v in a[col]]
        ident[col] = [v * inv for v in ident[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                ident[r] = [x - f * y for x, y in zip(ident[r], ident[col])]
    return ident


# ---------------------------------------------------------------------------
# Scalar literals.
#
# Grammar (no parentheses): a literal is a +/- separated list of terms, each
# term a product of factors drawn from {rational, sqrt3, I}; e.g.
#   "5", "-3/4", "1/2+1/3*sqrt3", "2-3*I", "1/2*sqrt3*I".
# Printing emits the same grammar, and print/parse round-trips exactly.
# ---------------------------------------------------------------------------


def parse_scalar(text: str):
    """Parse a scalar literal into the smallest tower level that holds it."""
    re_a, re_b, im_a, im_b = _parse_components(text)
    quad = bool(re_b) or bool(im_b)
    if bool(im_a) or bool(im_b):
        if quad:
            return Complex(QuadExt(re_a, re_b), QuadExt(im_a, im_b))
        return Complex(re_a, im_a)
    if quad:
        return QuadExt(re_a, re_b)
    return re_a


def parse_scalar_as(text: str, quad: bool, cplx: bool):
    """Parse a literal into the requested level of the tower."""
    re_a, re_b, im_a, im_b = _parse_components(text)
    if not quad and (re_b or im_b):
        raise ValueError(f"literal {text!r} needs sqrt3 but base field is Q")
    if not cplx and (im_a or im_b):
        raise ValueError(f"literal {text!r} needs I but the target is real")
    re = QuadExt(re_a, re_b) if quad else re_a
    if not cplx:
        return re
    im = QuadExt(im_a, im_b) if quad else im_a
    return Complex(re, im)


def _parse_components(text: str):
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar literal")
    re_a = re_b = im_a = im_b = Fraction(0)
    # Split into signed terms.
    terms = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start and s[i - 1] not in "+-*/":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    for term in terms:
        if not term or term in "+-":
            raise ValueError(f"malformed scalar literal {text!r}")
        sign = 1
        if term[0] == "+":
            term = term[1:]
        elif term[0] == "-":
            sign = -1
            term = term[1:]
        coeff = Fraction(sign)
        has_sqrt3 = False
        has_i = False
        for factor in term.split("*"):
            if factor == "sqrt3":
                if has_sqrt3:
                    raise ValueError(f"repeated sqrt3 in {text!r}")
                has_sqrt3 = True
            elif factor == "I":
                if has_i:
                    raise ValueError(f"repeated I in {text!r}")
                has_i = True
            elif factor:
                coeff *= Fraction(factor)
            else:
                raise ValueError(f"malformed term in {text!r}")
        if has_i and has_sqrt3:
            im_b += coeff
        elif has_i:
            im_a += coeff
        elif has_sqrt3:
            re_b += coeff
        else:
            re_a += coeff
    return re_a, re_b, im_a, im_b


def format_scalar(v) -> str:
    """Canonical literal for any scalar in the tower; parse round-trips."""
    re_a, re_b, im_a, im_b = _components_of(v)
    parts = []
    if re_a:
        parts.append((re_a, ""))
    if re_b:
        parts.append((re_b, "*sqrt3"))
    if im_a:
        parts.append((im_a, "*I"))
    if im_b:
        parts.append((im_b, "*sqrt3*I"))
    if not parts:
        return "0"
    out = []
    for idx, (coeff, suffix) in enumerate(parts):
        mag = -coeff if coeff < 0 else coeff
        if suffix and mag == 1:
            body = suffix[1:]  # drop "*": "sqrt3", "I", "sqrt3*I"
        else:
            body = f"{mag}{suffix}"
        if idx == 0:
            out.append(("-" if coeff < 0 else "") + body)
        else:
            out.append(("-" if coeff < 0 else "+") + body)
    return "".join(out)


def _components_of(v):
    zero = Fraction(0)
    if isinstance(v, int):
        return Fraction(v), zero, zero, zero
    if isinstance(v, Fraction):
        return v, zero, zero, zero
    if isinstance(v, QuadExt):
        return v.a, v.b, zero, zero
    if isinstance(v, Complex):
        ra, rb, _, _ = _components_of(v.re)
        ia, ib, _, _ = _components_of(v.im)
        return ra, rb, ia, ib
    raise TypeError(f"not a scalar: {v!r}")
