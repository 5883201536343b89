"""Real algebraic numbers: squarefree integer defining polynomial plus an
isolating rational interval, refinable on demand.

Equality and signs are decided exactly: a polynomial value h(alpha) is zero
iff gcd(defining, h) has a root in the isolating interval, and otherwise
interval refinement terminates with a definite sign.  Rational numbers are
carried as a degenerate special case so sample coordinates stay uniform.
"""

from __future__ import annotations

from fractions import Fraction

from . import realroots as rr


class AlgebraicNumber:
    """A real root of an integer polynomial, isolated by (lo, hi)."""

    __slots__ = ("poly", "lo", "hi", "_chain", "exact")

    def __init__(self, poly, lo: Fraction, hi: Fraction, exact: Fraction = None):
        self.poly = tuple(poly)
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._chain = None
        self.exact = exact
        if exact is None and rr.eval_at(self.poly, self.lo) == 0:
            raise ValueError("isolating endpoints must not be roots")
        if exact is None and rr.eval_at(self.poly, self.hi) == 0:
            raise ValueError("isolating endpoints must not be roots")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rational(q) -> "AlgebraicNumber":
        q = Fraction(q)
        return AlgebraicNumber((-q.numerator, q.denominator), q, q, exact=q)

    @staticmethod
    def roots_of(coeffs):
        """All real roots of an integer polynomial, sorted ascending."""
        ints = rr.clear_denominators(coeffs)
        sf = _squarefree_int(ints)
        out = []
        for lo, hi in rr.isolate_real_roots_integer(sf):
            if lo == hi:
                out.append(AlgebraicNumber.from_rational(lo))
                continue
            # Cheap probe: the isolated root is often a simple rational.
            cand = rr.simplest_rational_between(lo, hi)
            if rr.eval_at(sf, cand) == 0:
                out.append(AlgebraicNumber.from_rational(cand))
            else:
                out.append(AlgebraicNumber(sf, lo, hi))
        return out

    def is_rational(self) -> bool:
        return self.exact is not None

    def chain(self):
        if self._chain is None:
            self._chain = rr.sturm_chain(self.poly)
        return self._chain

    # -- refinement -----------------------------------------------------------

    def refine(self):
        """Halve the isolating interval (no-op for exact rationals)."""
        if self.exact is not None:
            return
        mid = (self.lo + self.hi) / 2
        v = rr.eval_at(self.poly, mid)
        if v == 0:
            self.exact = mid
            self.lo = self.hi = mid
            return
        if rr.sturm_count(self.chain(), self.lo, mid) == 1:
            self.hi = mid
        else:
            self.lo = mid

    def refine_below(self, width: Fraction):
        while self.exact is None and self.hi - self.lo >= width:
            self.refine()

    def interval(self):
        return (self.lo, self.hi)

    def midpoint(self) -> Fraction:
        if self.exact is not None:
            return self.exact
        return (self.lo + self.hi) / 2

    def float(self) -> float:
        return float(self.midpoint())

    # -- exact predicates -------------------------------------------------------

    def sign(self) -> int:
        return self.sign_of((0, 1))  # sign of x at alpha

    def sign_of(self, hcoeffs) -> int:
        """Exact sign of h(alpha) for h with rational coefficients."""
        if self.exact is not None:
            v = rr.eval_at([Fraction(c) for c in hcoeffs], self.exact)
            return (v > 0) - (v < 0)
        h = rr.clear_denominators(hcoeffs)
        if not h:
            return 0
        g = _int_gcd_poly(list(self.poly), h)
        if rr.degree(g) >= 1 and rr.sturm_count(rr.sturm_chain(g), self.lo, self.hi) >= 1:
            return 0
        hchain = rr.sturm_chain(h) if rr.degree(h) >= 1 else None
        while True:
            lo_v = rr.eval_at(h, self.lo)
            hi_v = rr.eval_at(h, self.hi)
            s_lo = (lo_v > 0) - (lo_v < 0)
            s_hi = (hi_v > 0) - (hi_v < 0)
            if s_lo == s_hi and s_lo != 0:
                # Constant sign on the interval iff h has no root inside.
                if hchain is None or rr.sturm_count(hchain, self.lo, self.hi) == 0:
                    return s_lo
            self.refine()

    def equals(self, other) -> bool:
        return self.compare(other) == 0

    def compare(self, other) -> int:
        """-1, 0, 1 ordering against another algebraic number or rational."""
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return self.sign_of((-q.numerator, q.denominator))
        if other.exact is not None:
            return self.compare(other.exact)
        if self.exact is not None:
            return -other.sign_of((-self.exact.numerator, self.exact.denominator))
        g = _int_gcd_poly(list(self.poly), list(other.poly))
        gchain = rr.sturm_chain(g) if rr.degree(g) >= 1 else None
        while True:
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1
            lo = max(self.lo, other.lo)
            hi = min(self.hi, other.hi)
            if gchain is not None and lo < hi:
                # Equal iff both roots coincide with a shared root of the gcd
                # inside the overlap.
                if (
                    rr.sturm_count(gchain, lo, hi) >= 1
                    and rr.sturm_count(self.chain(), lo, hi) == 1
                    and rr.sturm_count(other.chain(), lo, hi) == 1
                ):
                    return 0
            self.refine()
            other.refine()

    def __repr__(self):
        if self.exact is not None:
            return f"AlgebraicNumber({self.exact})"
        return f"AlgebraicNumber({list(self.poly)}, ({self.lo}, {self.hi}))"


def _squarefree_int(coeffs):
    """Squarefree part of an integer polynomial (primitive, positive lc)."""
    p = rr.primitive(rr.trim(list(coeffs)))
    if rr.degree(p) <= 1:
        return p if p[-1] > 0 else [-c for c in p]
    g = _int_gcd_poly(p, rr.trim(rr.derivative(p)))
    if rr.degree(g) >= 1:
        q = _int_poly_div(p, g)
        p = rr.primitive(q)
    return p if p[-1] > 0 else [-c for c in p]


def _int_gcd_poly(a, b):
    """Gcd of integer polynomials, primitive with positive leading coeff."""
    a = rr.primitive(rr.trim(list(a)))
    b = rr.primitive(rr.trim(list(b)))
    if not a:
        return b
    if not b:
        return a
    while b:
        r = _prem_int(a, b)
        a, b = b, rr.primitive(r)
    return a if a[-1] > 0 else [-c for c in a]


def _prem_int(a, b):
    db = rr.degree(b)
    lb = b[-1]
    r = list(a)
    while rr.degree(rr.trim(r)) >= db and any(r):
        r = rr.trim(r)
        if rr.degree(r) < db:
            break
        top = r[-1]
        r = [c * lb for c in r]
        shift = rr.degree(r) - db
        for i, bc in enumerate(b):
            r[shift + i] -= top * bc
        r = rr.trim(r)
    return rr.trim(r)


def _int_poly_div(a, b):
    """Exact division of integer polynomials (a = b*q), rational-safe."""
    a = [Fraction(c) for c in rr.trim(list(a))]
    b = [Fraction(c) for c in rr.trim(list(b))]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    while a and len(a) >= len(b):
        f = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = f
        for i, c in enumerate(b):
            a[d + i] -= f * c
        while a and not a[-1]:
            a.pop()
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return rr.clear_denominators(q)
