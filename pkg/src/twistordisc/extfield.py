"""Arithmetic in Q(alpha) with dynamic splitting, and Sturm theory over it.

Elements are polynomials in alpha reduced modulo a squarefree integer
defining polynomial.  The defining polynomial need not be irreducible: any
time a zero test or an inversion meets a zero divisor, the modulus is split
through a gcd and the factor containing alpha (decided by counting roots in
the isolating interval) replaces it.  This is the classical dynamic
evaluation device; it keeps every decision exact without factoring.

On top of the field live univariate polynomials with Q(alpha) coefficients:
euclidean remainders, Sturm chains, root counting and isolation.  These are
what cylindrical decomposition lifting uses at stacks over non-rational
sample coordinates.
"""

from __future__ import annotations

from fractions import Fraction

from . import realroots as rr
from .algnum import AlgebraicNumber, _int_gcd_poly
from .mpoly import MultiPoly


class ExtField:
    """Q(alpha); mutable modulus that only ever shrinks via splitting."""

    def __init__(self, alpha: AlgebraicNumber):
        if alpha.is_rational():
            raise ValueError("use plain rationals for rational coordinates")
        self.alpha = alpha
        self.mod = [Fraction(c) for c in alpha.poly]

    def degree(self) -> int:
        return len(self.mod) - 1

    # -- element plumbing; elements are tuples of Fractions (low degree first)

    def reduce(self, coeffs):
        m = self.mod
        dm = len(m) - 1
        r = [Fraction(c) for c in coeffs]
        while len(r) > dm:
            top = r.pop()
            if top:
                f = top / m[-1]
                for i in range(dm):
                    r[len(r) - dm + i] -= f * m[i]
        while r and not r[-1]:
            r.pop()
        return tuple(r)

    def of_rational(self, q) -> tuple:
        q = Fraction(q)
        return (q,) if q else ()

    def add(self, a, b):
        n = max(len(a), len(b))
        out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        while out and not out[-1]:
            out.pop()
        return tuple(out)

    def neg(self, a):
        return tuple(-c for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self.reduce(out)

    def _split_by(self, g_int):
        """Replace the modulus by its factor containing alpha."""
        lo, hi = self.alpha.lo, self.alpha.hi
        gchain = rr.sturm_chain(g_int)
        if rr.sturm_count(gchain, lo, hi) >= 1:
            new = g_int
        else:
            new = _int_poly_quo(rr.clear_denominators(self.mod), g_int)
        self.alpha = AlgebraicNumber(new, lo, hi)
        self.mod = [Fraction(c) for c in new]

    def is_zero(self, a) -> bool:
        while True:
            r = self.reduce(a)
            if not r:
                return True
            g = _int_gcd_poly(rr.clear_denominators(self.mod), rr.clear_denominators(r))
            if rr.degree(g) < 1:
                return False
            # Zero divisor: split and retry with the shrunken modulus.
            self._split_by(g)
            r2 = self.reduce(r)
            if not r2:
                return True
            a = r2

    def inverse(self, a):
        while True:
            a = self.reduce(a)
            if not a:
                raise ZeroDivisionError("inverse of zero in Q(alpha)")
            inv = _ext_euclid_inverse(self.mod, list(a))
            if inv is not None:
                return self.reduce(inv)
            g = _int_gcd_poly(rr.clear_denominators(self.mod), rr.clear_denominators(a))
            if rr.degree(g) < 1:
                raise AssertionError("euclid failed without a zero divisor")
            self._split_by(g)
            if self.is_zero(a):
                raise ZeroDivisionError("inverse of zero in Q(alpha)")

    def sign(self, a) -> int:
        if self.is_zero(a):
            return 0
        return self.alpha.sign_of(list(self.reduce(a)) or [Fraction(0)])

    def eval_value_interval(self, a):
        """A rational interval containing the value a(alpha), from the
        current isolating interval (no refinement)."""
        lo, hi = self.alpha.lo, self.alpha.hi
        vlo = vhi = Fraction(0)
        # Horner with interval endpoints; alpha interval may span 0.
        pts = [lo, hi]
        vals = [rr.eval_at(list(a) or [0], p) for p in pts]
        # Interval evaluation by monotone sampling is not sound in general;
        # use the crude bound via max |alpha| instead.
        m = max(abs(lo), abs(hi))
        bound = sum(abs(Fraction(c)) * m**i for i, c in enumerate(a))
        return (-bound, bound)


def _ext_euclid_inverse(mod, a):
    """Inverse of a modulo mod over Q, or None when a zero divisor appears."""
    r0, r1 = [Fraction(c) for c in mod], [Fraction(c) for c in a]
    s0, s1 = [], [Fraction(1)]
    while True:
        r1 = _trimq(r1)
        if not r1:
            return None
        if len(r1) == 1:
            inv = 1 / r1[0]
            return [c * inv for c in s1]
        q, r = _divmod_q(r0, r1)
        s_new = _sub_q(s0, _mul_q(q, s1))
        r0, s0 = r1, s1
        r1, s1 = r, s_new


def _trimq(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _divmod_q(a, b):
    a = _trimq(a)
    b = _trimq(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and _trimq(r):
        r = _trimq(r)
        if len(r) < len(b):
            break
        f = r[-1] / b[-1]
        d = len(r) - len(b)
        q[d] += f
        for i, c in enumerate(b):
            r[d + i] -= f * c
        r = _trimq(r) + []
        if len(r) and not r[-1]:
            r.pop()
    return _trimq(q), _trimq(r)


def _mul_q(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trimq(out)


def _sub_q(a, b):
    n = max(len(a), len(b))
    return _trimq([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _int_poly_quo(a, b):
    af = [Fraction(c) for c in a]
    bf = [Fraction(c) for c in b]
    q, r = _divmod_q(af, bf)
    if _trimq(r):
        raise ArithmeticError("inexact integer polynomial division")
    return rr.clear_denominators(q)


# ---------------------------------------------------------------------------
# Polynomials over Q(alpha): lists of field elements, low degree first.
# ---------------------------------------------------------------------------


def ext_poly_from_bivariate(field: ExtField, p: MultiPoly, inner_var: str, outer_var: str):
    """View p(inner, outer) as a polynomial in outer with Q(alpha)
    coefficients, alpha standing for inner.  Zero leading coefficients are
    stripped exactly."""
    d = p.degree_in(outer_var)
    ii = p.vars.index(inner_var)
    oi = p.vars.index(outer_var)
    coeffs = []
    for e in range(d + 1):
        inner = {}
        for exps, c in p.terms.items():
            if exps[oi] == e:
                inner[exps[ii]] = inner.get(exps[ii], 0) + Fraction(c)
        lst = [inner.get(i, Fraction(0)) for i in range(max(inner) + 1)] if inner else []
        coeffs.append(field.reduce(lst))
    return ext_trim(field, coeffs)


def ext_trim(field: ExtField, coeffs):
    c = list(coeffs)
    while c and field.is_zero(c[-1]):
        c.pop()
    return c


def ext_degree(coeffs) -> int:
    return len(coeffs) - 1


def ext_eval_rational(field: ExtField, coeffs, q: Fraction):
    acc = ()
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, field.of_rational(q)), c)
    return acc


def ext_rem(field: ExtField, a, b):
    """Euclidean remainder of a by b over Q(alpha) (true division)."""
    r = list(a)
    db = len(b) - 1
    binv = field.inverse(b[-1])
    while len(r) - 1 >= db:
        r = ext_trim(field, r)
        if len(r) - 1 < db:
            break
        f = field.mul(r[-1], binv)
        d = len(r) - 1 - db
        for i, c in enumerate(b):
            r[d + i] = field.sub(r[d + i], field.mul(f, c))
        r.pop()
    return ext_trim(field, r)


def ext_derivative(field: ExtField, coeffs):
    out = []
    for i in range(1, len(coeffs)):
        out.append(field.mul(coeffs[i], field.of_rational(i)))
    return ext_trim(field, out)


def ext_sturm_chain(field: ExtField, coeffs):
    p = ext_trim(field, coeffs)
    if not p:
        raise ValueError("zero polynomial")
    chain = [p]
    dp = ext_derivative(field, p)
    if dp:
        chain.append(dp)
        while True:
            r = ext_rem(field, chain[-2], chain[-1])
            if not r:
                break
            chain.append([field.neg(c) for c in r])
    return chain


def ext_sign_at(field: ExtField, coeffs, q: Fraction) -> int:
    return field.sign(ext_eval_rational(field, coeffs, q))


def ext_variations(field: ExtField, chain, q: Fraction) -> int:
    signs = [ext_sign_at(field, p, q) for p in chain]
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def ext_count_roots(field: ExtField, chain, a: Fraction, b: Fraction) -> int:
    """Distinct real roots in (a, b]."""
    return ext_variations(field, chain, a) - ext_variations(field, chain, b)


def ext_root_bound(field: ExtField, coeffs) -> Fraction:
    """A rational B with all real roots in (-B, B)."""
    lead = coeffs[-1]
    while True:
        lo, hi = field.alpha.interval()
        lead_lo = rr.eval_at(list(lead) or [0], lo)
        lead_hi = rr.eval_at(list(lead) or [0], hi)
        # Try to certify |lead(alpha)| >= m for a positive rational m.
        s = field.sign(lead)
        if s == 0:
            raise ValueError("zero leading coefficient in root bound")
        chain = rr.sturm_chain(rr.clear_denominators(list(lead))) if len(lead) > 1 else None
        if chain is None or rr.sturm_count(chain, lo, hi) == 0:
            cands = [abs(lead_lo), abs(lead_hi)]
            m = min(cands)
            if m > 0:
                break
        field.alpha.refine()
    total = Fraction(0)
    mabs = max(abs(field.alpha.lo), abs(field.alpha.hi))
    for c in coeffs[:-1]:
        total = max(total, sum(abs(Fraction(x)) * mabs**i for i, x in enumerate(c)))
    return total / m + 1


def ext_isolate_roots(field: ExtField, coeffs):
    """Isolating rational intervals (lo, hi), endpoints non-roots, for the
    distinct real roots of a Q(alpha)[y] polynomial."""
    p = ext_trim(field, coeffs)
    if not p:
        raise ValueError("zero polynomial")
    if len(p) == 1:
        return []
    chain = ext_sturm_chain(field, p)
    bound = ext_root_bound(field, p)
    total = ext_count_roots(field, chain, -bound, bound)
    out = []
    _ext_isolate(field, chain, p, -bound, bound, total, out)
    return out


def _ext_isolate(field, chain, p, lo, hi, count, out):
    if count == 0:
        return
    if count == 1:
        out.append((lo, hi))
        return
    mid = (lo + hi) / 2
    if ext_sign_at(field, p, mid) == 0:
        # Rational root at mid: nudge by halving until separated.
        eps = (hi - lo) / 4
        while True:
            left = ext_count_roots(field, chain, lo, mid - eps)
            right = ext_count_roots(field, chain, mid + eps, hi)
            middle = ext_count_roots(field, chain, mid - eps, mid + eps)
            if middle == 1 and ext_sign_at(field, p, mid - eps) != 0 and ext_sign_at(field, p, mid + eps) != 0:
                _ext_isolate(field, chain, p, lo, mid - eps, left, out)
                out.append((mid - eps, mid + eps))
                _ext_isolate(field, chain, p, mid + eps, hi, right, out)
                return
            eps = eps / 2
    left = ext_count_roots(field, chain, lo, mid)
    _ext_isolate(field, chain, p, lo, mid, left, out)
    _ext_isolate(field, chain, p, mid, hi, count - left, out)


def ext_gcd(field: ExtField, a, b):
    """Monic gcd over Q(alpha)[y]."""
    a = ext_trim(field, list(a))
    b = ext_trim(field, list(b))
    while b:
        a, b = b, ext_rem(field, a, b)
    if not a:
        return []
    inv = field.inverse(a[-1])
    return [field.mul(c, inv) for c in a]


# ---------------------------------------------------------------------------
# Primitive element for a pair (alpha, beta) with beta algebraic over
# Q(alpha) through a bivariate integer polynomial.
# ---------------------------------------------------------------------------


def primitive_element(alpha: AlgebraicNumber, p2: MultiPoly, inner_var: str, outer_var: str,
                      beta_root):
    """Represent the pair (alpha, beta) inside a single extension Q(theta).

    beta_root exposes interval() and refine() and isolates the root beta of
    p2(alpha, .).  Returns (field, c, alpha_in_theta, beta_in_theta) where
    theta = beta + c*alpha generates Q(theta) = Q(alpha, beta) and the last
    two entries are coefficient tuples over Q(theta).
    """
    from .resultants import resultant

    for c in (1, -1, 2, -2, 3, -3, 5, -5, 7, -7):
        # p2(x, s - c x) as a polynomial in (x, s).
        lifted = p2.with_vars((inner_var, outer_var, "s_pe"))
        repl = MultiPoly(
            (inner_var, outer_var, "s_pe"),
            {(0, 0, 1): Fraction(1), (1, 0, 0): Fraction(-c)},
        )
        sub = lifted.substitute(outer_var, repl).with_vars((inner_var, "s_pe"))
        gpoly = MultiPoly((inner_var, "s_pe"), {(i, 0): Fraction(v) for i, v in enumerate(alpha.poly) if v})
        try:
            dtheta = resultant(gpoly, sub, inner_var)
        except Exception:
            continue
        if dtheta.is_zero():
            continue
        dcoeffs = [Fraction(dtheta.coefficient((e,))) for e in range(dtheta.degree_in("s_pe") + 1)]
        dint = rr.clear_denominators(dcoeffs)
        from .algnum import _squarefree_int

        dsf = _squarefree_int(dint)
        # Isolate theta = beta + c alpha by joint refinement.
        theta = None
        chain = rr.sturm_chain(dsf)
        for _ in range(200):
            alo, ahi = alpha.interval()
            blo, bhi = beta_root.interval()
            tlo = blo + (c * alo if c > 0 else c * ahi)
            thi = bhi + (c * ahi if c > 0 else c * alo)
            if tlo < thi and rr.eval_at(dsf, tlo) != 0 and rr.eval_at(dsf, thi) != 0 \
                    and rr.sturm_count(chain, tlo, thi) == 1:
                theta = AlgebraicNumber(dsf, tlo, thi)
                break
            alpha.refine()
            beta_root.refine()
        if theta is None:
            continue
        field = ExtField(theta)
        # alpha is a common root of g(x) and p2(x, theta - c x) over Q(theta).
        g_ext = [field.of_rational(Fraction(v)) for v in alpha.poly]
        sub2 = []
        d2 = sub.degree_in(inner_var)
        for e in range(d2 + 1):
            inner = {}
            for exps, cf in sub.terms.items():
                if exps[0] == e:
                    inner[exps[1]] = inner.get(exps[1], 0) + Fraction(cf)
            lst = [inner.get(i, Fraction(0)) for i in range(max(inner) + 1)] if inner else []
            sub2.append(field.reduce(lst))
        g_ext = ext_trim(field, g_ext)
        sub2 = ext_trim(field, sub2)
        gg = ext_gcd(field, g_ext, sub2)
        if ext_degree(gg) != 1:
            continue
        alpha_in_theta = field.neg(field.mul(gg[0], field.inverse(gg[1])))
        minus_c_alpha = field.mul(alpha_in_theta, field.of_rational(Fraction(-c)))
        beta_in_theta = field.add(field.reduce([Fraction(0), Fraction(1)]), minus_c_alpha)
        return field, c, field.reduce(alpha_in_theta), field.reduce(beta_in_theta)
    raise ArithmeticError("no small primitive element found")
