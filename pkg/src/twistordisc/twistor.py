"""Twistor geometry: fiber trivialisation, fiber polynomials, discriminants.

A surface of degree d in CP^3 restricts to a degree-d polynomial on each
fiber of the projection to S^4.  Away from infinity the fibers are
parametrised by psi(x, lam) = p1(x) + lam * p2(x) with p2 = j o p1, and the
coefficients of the fiber polynomial in lam are recovered exactly by
interpolation at lam = 0..d.  The discriminant locus is the zero set of the
lam-discriminant, a complex-valued polynomial in the four real coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .mpoly import MultiPoly, parse_poly
from .resultants import ZeroPolynomialError, cubic_discriminant, discriminant
from .scalars import Complex, Mobius, QuadExt, Quaternion, S4Point

ZVARS = ("z1", "z2", "z3", "z4")
XVARS = ("x1", "x2", "x3", "x4")


class CancelledError(RuntimeError):
    pass


class CancelToken:
    """Cooperative cancellation flag checked between long pipeline steps."""

    __slots__ = ("_flag",)

    def __init__(self):
        self._flag = False

    def cancel(self):
        self._flag = True

    def check(self):
        if self._flag:
            raise CancelledError("computation cancelled")


def _czero(quad: bool) -> Complex:
    return Complex(QuadExt.of(0), QuadExt.of(0)) if quad else Complex(Fraction(0), Fraction(0))


def _cof(value, quad: bool) -> Complex:
    c = Complex.of(value, base_hint=QuadExt if quad else None)
    if quad and not isinstance(c.re, QuadExt):
        c = Complex(QuadExt.of(c.re), QuadExt.of(c.im))
    return c


def as_complex_poly(p: MultiPoly, quad: bool = False) -> MultiPoly:
    """Lift every coefficient of p into Complex over the requested base."""
    out = {}
    for exps, coeff in p.terms.items():
        if isinstance(coeff, Complex):
            c = coeff
            if quad and not isinstance(c.re, QuadExt):
                c = Complex(QuadExt.of(c.re), QuadExt.of(c.im))
        else:
            c = _cof(coeff, quad)
        out[exps] = c
    return MultiPoly(p.vars, out)


def poly_is_quad(p: MultiPoly) -> bool:
    for c in p.terms.values():
        if isinstance(c, QuadExt):
            return True
        if isinstance(c, Complex) and isinstance(c.re, QuadExt):
            return True
    return False


def re_im_parts(p: MultiPoly):
    """Split a complex-coefficient polynomial into (re, im) real parts."""
    re = {}
    im = {}
    for exps, coeff in p.terms.items():
        c = coeff if isinstance(coeff, Complex) else Complex.of(coeff)
        if c.re:
            re[exps] = c.re
        if c.im:
            im[exps] = c.im
    return MultiPoly(p.vars, re), MultiPoly(p.vars, im)


def poly_compose(f: MultiPoly, images) -> MultiPoly:
    """f with each of its variables replaced by the given polynomials."""
    images = list(images)
    if len(images) != len(f.vars):
        raise ValueError("one image polynomial per variable is required")
    tvars = images[0].vars
    caches = [{0: MultiPoly.constant(tvars, 1)} for _ in images]

    def power(i, e):
        cache = caches[i]
        if e not in cache:
            top = max(cache)
            acc = cache[top]
            for k in range(top + 1, e + 1):
                acc = acc * images[i]
                cache[k] = acc
        return cache[e]

    out = MultiPoly.zero(tvars)
    for exps, coeff in f.terms.items():
        term = MultiPoly.constant(tvars, coeff)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


@dataclass(frozen=True)
class SurfaceSpec:
    """Homogeneous degree-d surface f(z1..z4) = 0 with complex coefficients.

    f must be squarefree; that precondition is the caller's and is not
    verified here.
    """

    f: MultiPoly
    degree: int
    quad: bool

    @staticmethod
    def from_poly(f: MultiPoly) -> "SurfaceSpec":
        if f.vars != ZVARS:
            f = f.with_vars(ZVARS)
        if f.is_zero():
            raise ValueError("the zero polynomial does not define a surface")
        degs = {sum(e) for e in f.terms}
        if len(degs) != 1:
            raise ValueError(f"surface polynomial is not homogeneous: degrees {sorted(degs)}")
        d = degs.pop()
        if d < 1:
            raise ValueError("surface degree must be at least 1")
        quad = poly_is_quad(f)
        return SurfaceSpec(as_complex_poly(f, quad), d, quad)

    @staticmethod
    def from_literal(text: str) -> "SurfaceSpec":
        return SurfaceSpec.from_poly(parse_poly(text, ZVARS))


def fermat_cubic() -> SurfaceSpec:
    return SurfaceSpec.from_literal("z1^3+z2^3+z3^3+z4^3")


class TwistorChart:
    """The coordinate polynomials of psi(x, lam) = p1(x) + lam p2(x).

    With w1 = x1 + i x2 and w2 = x3 + i x4:
        p1(x) = [w1, w2, 1, 0],   p2(x) = (j o p1)(x) = [-conj(w2), conj(w1), 0, 1],
    so psi has coordinates [w1 - lam conj(w2), w2 + lam conj(w1), 1, lam].
    """

    def __init__(self, quad: bool = False, extra_vars=()):
        self.quad = quad
        self.vars = XVARS + tuple(extra_vars)
        q = quad
        i1 = Complex(QuadExt.of(0), QuadExt.of(1)) if q else Complex(Fraction(0), Fraction(1))
        one = _cof(1, q)
        v = lambda name, c: MultiPoly.var(self.vars, name, c)
        self.w1 = v("x1", one) + v("x2", i1)
        self.w2 = v("x3", one) + v("x4", i1)
        self.w1c = v("x1", one) + v("x2", -i1)
        self.w2c = v("x3", one) + v("x4", -i1)
        self.one = MultiPoly.constant(self.vars, one)
        self.zero = MultiPoly.zero(self.vars)

    def psi_at(self, lam_value):
        """The four coordinate polynomials of psi(x, lam_value) in x only."""
        lam = _cof(lam_value, self.quad)
        return [
            self.w1 - self.w2c.scale(lam),
            self.w2 + self.w1c.scale(lam),
            self.one,
            self.one.scale(lam),
        ]

    def psi_symbolic(self):
        """psi coordinates over the variables x1..x4, lam."""
        chart = TwistorChart(self.quad, extra_vars=("lam",))
        lam = MultiPoly.var(chart.vars, "lam", _cof(1, self.quad))
        return [
            chart.w1 - chart.w2c * lam,
            chart.w2 + chart.w1c * lam,
            chart.one,
            lam,
        ]


@dataclass(frozen=True)
class FiberPoly:
    """Coefficients a_0..a_d of the fiber polynomial in lam, as complex
    polynomials in the real coordinates x1..x4."""

    coeffs: tuple
    degree: int
    quad: bool

    def eval_at(self, x):
        """Fiber polynomial coefficients at a real point, as Complex scalars."""
        return [c.eval(list(x)) if c.terms else _czero(self.quad) for c in self.coeffs]

    def is_zero_at(self, x) -> bool:
        return all(not v for v in self.eval_at(x))


def _vandermonde_inverse(d: int):
    """Exact inverse of the (d+1)x(d+1) Vandermonde matrix at nodes 0..d."""
    n = d + 1
    a = [[Fraction(k**i) for i in range(n)] for k in range(n)]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = a[col][col]
        a[col] = [v / f for v in a[col]]
        inv[col] = [v / f for v in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def fiber_polynomial(s: SurfaceSpec, token: CancelToken = None) -> FiberPoly:
    """Fiber coefficients a_i(x) recovered by interpolation at lam = 0..d.

    Evaluating f on psi(x, lam) at the d+1 nodes lam = 0, 1, ..., d gives a
    Vandermonde system for the a_i, solved exactly over Q.
    """
    d = s.degree
    chart = TwistorChart(s.quad)
    values = []
    for k in range(d + 1):
        if token:
            token.check()
        values.append(poly_compose(s.f, chart.psi_at(k)))
    vinv = _vandermonde_inverse(d)
    coeffs = []
    for i in range(d + 1):
        acc = MultiPoly.zero(chart.vars)
        for k in range(d + 1):
            c = vinv[i][k]
            if c:
                acc = acc + values[k].scale(_cof(c, s.quad))
        coeffs.append(acc)
    return FiberPoly(tuple(coeffs), d, s.quad)


def has_twistor_line_at_infinity(s: SurfaceSpec) -> bool:
    """True iff f vanishes identically on the line z3 = z4 = 0."""
    restricted = s.f.eval_partial({"z3": _czero(s.quad), "z4": _czero(s.quad)})
    return restricted.is_zero()


def twistor_line_check(s: SurfaceSpec, x) -> bool:
    """True iff the fiber over x lies inside the surface.

    x may be an S4Point (infinity included), a Quaternion, or a coordinate
    sequence.  The check uses the full homogeneous coefficient set, so a
    fiber degenerating onto the root at infinity is handled uniformly.
    """
    if isinstance(x, S4Point) and x.is_infinity():
        return has_twistor_line_at_infinity(s)
    coords = _as_coords(x)
    quad = s.quad or any(isinstance(c, QuadExt) for c in coords)
    surf = SurfaceSpec(as_complex_poly(s.f, quad), s.degree, quad) if quad != s.quad else s
    fp = fiber_polynomial(surf)
    return fp.is_zero_at(coords)


def _as_coords(x):
    if isinstance(x, S4Point):
        x = x.as_quaternion()
    if isinstance(x, Quaternion):
        return [x.w, x.x, x.y, x.z]
    return list(x)


@dataclass(frozen=True)
class DiscriminantSet:
    """The lam-discriminant of the fiber polynomial and, for cubics, the
    pair of polynomials cutting out the triple points."""

    disc: MultiPoly
    triple_system: tuple
    fiber: FiberPoly
    degree: int
    quad: bool

    def re_im(self):
        return re_im_parts(self.disc)


def discriminant_locus(s: SurfaceSpec, token: CancelToken = None) -> DiscriminantSet:
    """Discriminant of the fiber polynomial in lam.

    Raises if the surface contains every fiber.  The degree bound
    2 d (d-1), dropping to 2 (d-1)^2 when the surface contains the twistor
    line over infinity, is asserted on the result.
    """
    if s.degree < 2:
        raise ValueError("the discriminant locus needs degree >= 2")
    fp = fiber_polynomial(s, token)
    if all(not c.terms for c in fp.coeffs):
        raise ValueError("surface contains every twistor fiber; discriminant undefined")
    if token:
        token.check()
    d = s.degree
    if d == 3:
        a3, a2, a1, a0 = fp.coeffs[3], fp.coeffs[2], fp.coeffs[1], fp.coeffs[0]
        disc = cubic_discriminant(a3, a2, a1, a0)
        triple = (a2 * a2 - a3 * a1.scale(_cof(3, s.quad)),
                  a3 * a0.scale(_cof(9, s.quad)) - a2 * a1)
    else:
        lam_vars = XVARS + ("lam",)
        poly = MultiPoly.zero(lam_vars)
        for i, c in enumerate(fp.coeffs):
            poly = poly + c.with_vars(lam_vars).mul_monomial((0, 0, 0, 0, i))
        disc = discriminant(poly, "lam").with_vars(XVARS)
        triple = ()
    bound = 2 * d * (d - 1)
    if has_twistor_line_at_infinity(s):
        bound = 2 * (d - 1) ** 2
    if disc.total_degree() > bound:
        raise AssertionError(
            f"discriminant degree {disc.total_degree()} exceeds the bound {bound}"
        )
    return DiscriminantSet(disc, triple, fp, s.degree, s.quad)


def triple_point_system(s: SurfaceSpec):
    """The pair (b^2 - 3ac, 9ad - bc) for a cubic fiber a t^3 + b t^2 + c t + d.

    Both vanish at every triple point.  At points where the fiber cubic
    degenerates (leading coefficient zero) the pair is necessary but not
    sufficient; use is_triple_point for the full homogeneous test.
    """
    if s.degree != 3:
        raise ValueError("the triple point system is defined for cubics only")
    return discriminant_locus(s).triple_system


def is_triple_point(s: SurfaceSpec, x) -> bool:
    """Exact test: the fiber cubic at x is a perfect cube (one root on CP^1).

    Uses all three Hessian coefficients of the binary cubic so roots at
    infinity are treated like any other; a fiber that vanishes identically
    (a twistor line) does not count as a triple point.
    """
    coords = _as_coords(x)
    quad = s.quad or any(isinstance(c, QuadExt) for c in coords)
    surf = SurfaceSpec(as_complex_poly(s.f, quad), s.degree, quad) if quad != s.quad else s
    if surf.degree != 3:
        raise ValueError("triple points are defined for cubics only")
    fp = fiber_polynomial(surf)
    d0, c1, b2, a3 = fp.eval_at(coords)
    if not (a3 or b2 or c1 or d0):
        return False
    three = _cof(3, quad)
    nine = _cof(9, quad)
    h1 = b2 * b2 - three * a3 * c1
    h2 = b2 * c1 - nine * a3 * d0
    h3 = c1 * c1 - three * b2 * d0
    return (not h1) and (not h2) and (not h3)


def transform_surface(s: SurfaceSpec, m: Mobius) -> SurfaceSpec:
    """The image surface under the conformal map m: pull back f along the
    inverse of the induced projective transformation."""
    minv = m.inverse()
    mat = minv.to_projective()
    quad = s.quad or any(isinstance(mat[i][j].re, QuadExt) for i in range(4) for j in range(4))
    f = as_complex_poly(s.f, quad)
    images = []
    for i in range(4):
        acc = MultiPoly.zero(ZVARS)
        for j in range(4):
            c = mat[i][j]
            if quad and not isinstance(c.re, QuadExt):
                c = Complex(QuadExt.of(c.re), QuadExt.of(c.im))
            if c:
                acc = acc + MultiPoly.var(ZVARS, ZVARS[j], c)
        images.append(acc)
    fnew = poly_compose(f, images)
    return SurfaceSpec(fnew, s.degree, quad)


def j_conjugate_surface(s: SurfaceSpec) -> SurfaceSpec:
    """The surface conj(f(j z)) = 0 where j is the antiholomorphic involution
    [z1,z2,z3,z4] -> [-conj z2, conj z1, -conj z4, conj z3]."""
    out = {}
    for exps, coeff in s.f.terms.items():
        e1, e2, e3, e4 = exps
        sign = -1 if (e1 + e3) % 2 else 1
        c = coeff.conj() if isinstance(coeff, Complex) else _cof(coeff, s.quad).conj()
        new = (e2, e1, e4, e3)
        val = c if sign > 0 else -c
        out[new] = out.get(new, _czero(s.quad)) + val
    return SurfaceSpec(MultiPoly(ZVARS, out), s.degree, s.quad)


# ---------------------------------------------------------------------------
# The two Mobius transformations used for the Fermat cubic.
# ---------------------------------------------------------------------------

_K = Quaternion.from_components(0, 0, 0, 1)


def mobius_shear() -> Mobius:
    """q -> (q - k)^-1 (-q - k): carries the unit 3-sphere holding all nine
    special points of the Fermat cubic into the hyperplane x1' = 0."""
    return Mobius(-1, -_K, 1, -_K)


def mobius_align() -> Mobius:
    """Complex Mobius map sending the Fermat twistor points
    (-1, 1/2 + sqrt3/2 i, 1/2 - sqrt3/2 i) to (-1, 1, infinity)."""
    sqrt3 = QuadExt(Fraction(0), Fraction(1))
    a = Quaternion(QuadExt.of(0), sqrt3, QuadExt.of(0), QuadExt.of(0))
    b = Quaternion(QuadExt(Fraction(3, 2), 0), sqrt3 * Fraction(1, 2), QuadExt.of(0), QuadExt.of(0))
    c = Quaternion(QuadExt.of(1), QuadExt.of(0), QuadExt.of(0), QuadExt.of(0))
    d = Quaternion(QuadExt(Fraction(-1, 2), 0), sqrt3 * Fraction(1, 2), QuadExt.of(0), QuadExt.of(0))
    return Mobius(a, b, c, d)


def fermat_twistor_points():
    """The three points of S^4 under the Fermat cubic's twistor lines."""
    half = Fraction(1, 2)
    s32 = QuadExt(Fraction(0), half)
    return [
        S4Point.finite(Quaternion(QuadExt.of(-1), QuadExt.of(0), QuadExt.of(0), QuadExt.of(0))),
        S4Point.finite(Quaternion(QuadExt.of(half), s32, QuadExt.of(0), QuadExt.of(0))),
        S4Point.finite(Quaternion(QuadExt.of(half), -s32, QuadExt.of(0), QuadExt.of(0))),
    ]


def fermat_triple_points():
    """The six triple points: the hexagon of unit vectors in the (j,k) plane.

    The sixth point is (1/2) j - (sqrt3/2) k, completing the hexagon.
    """
    half = Fraction(1, 2)
    s32 = QuadExt(Fraction(0), half)
    pts = []
    for y, z in [
        (QuadExt.of(-half), s32),
        (QuadExt.of(half), s32),
        (QuadExt.of(-1), QuadExt.of(0)),
        (QuadExt.of(1), QuadExt.of(0)),
        (QuadExt.of(-half), -s32),
        (QuadExt.of(half), -s32),
    ]:
        pts.append(S4Point.finite(Quaternion(QuadExt.of(0), QuadExt.of(0), y, z)))
    return pts
