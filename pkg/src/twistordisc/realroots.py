"""Exact real root isolation for univariate integer polynomials.

Sturm chains with sign-safe primitive pseudo-remainders carry all counting;
isolation bisects with exact rational endpoint evaluation, so the output
intervals are certified: disjoint, sorted, one root each, endpoints
non-roots (rational roots are returned as degenerate points).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def trim(coeffs):
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    return c


def degree(coeffs) -> int:
    return len(coeffs) - 1


def content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, c if isinstance(c, int) else int(c))
    return g or 1


def primitive(coeffs):
    g = content(coeffs)
    return [c // g for c in coeffs]


def clear_denominators(coeffs):
    """Fraction coefficients -> primitive integer list (same roots)."""
    den = 1
    for c in coeffs:
        f = Fraction(c)
        den = den * f.denominator // gcd(den, f.denominator)
    out = [int(Fraction(c) * den) for c in coeffs]
    return primitive(trim(out))


def eval_at(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return trim(out)


def poly_add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_neg(a):
    return [-c for c in a]


def poly_shift_scale(coeffs, num, den):
    """p(num/den * x) cleared: returns den^deg * p(num x / den)., integer."""
    d = degree(coeffs)
    return trim([coeffs[i] * num**i * den ** (d - i) for i in range(d + 1)])


def _sign_safe_prem(a, b):
    """prem with an even (hence positive) power of lc(b): keeps Sturm signs."""
    db = degree(b)
    lb = b[-1]
    r = list(a)
    mults = 0
    while degree(r) >= db and any(r):
        r = trim(r)
        if degree(r) < db:
            break
        top = r[-1]
        r = [c * lb for c in r]
        mults += 1
        shift = degree(r) - db
        for i, bc in enumerate(b):
            r[shift + i] -= top * bc
        r = trim(r)
    if mults % 2 == 1:
        r = [c * lb for c in r]
    return trim(r)


def sturm_chain(coeffs):
    """Sturm chain of an integer polynomial, primitive-normalised."""
    p = primitive(trim(list(coeffs)))
    if not p:
        raise ValueError("zero polynomial has no Sturm chain")
    chain = [p]
    dp = primitive(trim(derivative(p)))
    if dp:
        chain.append(dp)
        while True:
            r = _sign_safe_prem(chain[-2], chain[-1])
            if not r:
                break
            chain.append(primitive(poly_neg(r)))
    return chain


def _variations(signs):
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _sgn(v):
    return (v > 0) - (v < 0)


def sturm_count(chain, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b]."""
    va = _variations([_sgn(eval_at(p, a)) for p in chain])
    vb = _variations([_sgn(eval_at(p, b)) for p in chain])
    return va - vb


def sturm_count_all(chain) -> int:
    pos = _variations([_sgn(p[-1]) for p in chain])
    neg = _variations([_sgn(p[-1] * (-1) ** degree(p)) for p in chain])
    return neg - pos


def root_bound(coeffs) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    coeffs = trim(list(coeffs))
    lead = abs(coeffs[-1])
    m = max((abs(c) for c in coeffs[:-1]), default=0)
    return Fraction(m, lead) + 1


def isolate_real_roots_integer(coeffs):
    """Isolating intervals for the distinct real roots of an integer poly.

    Returns a sorted list of (lo, hi) Fractions with lo < root < hi and
    p(lo), p(hi) != 0, or lo == hi for an exact rational root.  The input
    need not be squarefree; multiplicities are ignored.
    """
    p = primitive(trim(list(coeffs)))
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if degree(p) == 0:
        return []
    chain = sturm_chain(p)
    bound = root_bound(p)
    out = []
    _isolate(chain, p, -bound, bound, sturm_count(chain, -bound, bound), out)
    return out


def _isolate(chain, p, lo, hi, count, out):
    if count == 0:
        return
    if count == 1:
        if eval_at(p, hi) == 0:
            out.append((hi, hi))
            return
        while hi - lo > 1:
            mid = (lo + hi) / 2
            if eval_at(p, mid) == 0:
                out.append((mid, mid))
                return
            if sturm_count(chain, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
        out.append((lo, hi))
        return
    mid = (lo + hi) / 2
    if eval_at(p, mid) == 0:
        # Separate an exact rational root and recurse on both sides.
        eps = _root_free_radius(p, mid)
        left = sturm_count(chain, lo, mid - eps)
        _isolate(chain, p, lo, mid - eps, left, out)
        out.append((mid, mid))
        right = sturm_count(chain, mid + eps, hi)
        _isolate(chain, p, mid + eps, hi, right, out)
        return
    left = sturm_count(chain, lo, mid)
    _isolate(chain, p, lo, mid, left, out)
    _isolate(chain, p, mid, hi, count - left, out)


def _root_free_radius(p, x0: Fraction) -> Fraction:
    """Some eps > 0 such that (x0 - eps, x0 + eps) holds no root but x0."""
    shifted = taylor_shift(p, x0)
    # Lowest nonzero coefficient index = multiplicity m of x0; the deflated
    # polynomial q has q(0) != 0, and eps from its Cauchy-style lower bound.
    m = 0
    while m < len(shifted) and shifted[m] == 0:
        m += 1
    q = shifted[m:]
    if len(q) <= 1:
        return Fraction(1)
    a0 = abs(q[0])
    s = sum(abs(c) for c in q[1:])
    eps = Fraction(a0, a0 + s)
    return eps / 2


def taylor_shift(coeffs, x0: Fraction):
    """Coefficients of p(x + x0) by repeated synthetic division, Fractions."""
    work = [Fraction(c) for c in coeffs]
    res = []
    n = len(work)
    for _ in range(n):
        # Divide work by (x - x0); the remainder is the next coefficient.
        carry = Fraction(0)
        quotient = []
        for c in reversed(work):
            carry = carry * x0 + c
            quotient.append(carry)
        res.append(quotient[-1])
        work = list(reversed(quotient[:-1]))
        if not work:
            break
    return res


def refine_interval(p, lo: Fraction, hi: Fraction, slo=None):
    """One bisection step for an interval certified to hold exactly one root.

    Requires p(lo), p(hi) != 0.  Works for odd and even local behaviour by
    Sturm counting when the sign test is inconclusive.
    """
    mid = (lo + hi) / 2
    vm = eval_at(p, mid)
    if vm == 0:
        return (mid, mid)
    vl = eval_at(p, lo)
    if _sgn(vl) != _sgn(vm):
        return (lo, mid)
    # Root is in (mid, hi) unless signs alone cannot decide (even root).
    vh = eval_at(p, hi)
    if _sgn(vm) != _sgn(vh):
        return (mid, hi)
    chain = sturm_chain(p)
    if sturm_count(chain, lo, mid) == 1:
        return (lo, mid)
    return (mid, hi)


def simplest_rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The continued-fraction simplest rational q with lo < q < hi."""
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_rational_between(-hi, -lo)
    # Now 0 <= lo < hi.
    whole = lo.numerator // lo.denominator
    if Fraction(whole + 1) < hi:
        return Fraction(whole + 1)
    if lo == whole:
        # Open at an integer endpoint: whole + 1/(k+1) for the smallest fit.
        k = (Fraction(1) / (hi - whole)).numerator // (Fraction(1) / (hi - whole)).denominator
        return whole + Fraction(1, k + 1)
    inner = simplest_rational_between(Fraction(1) / (hi - whole), Fraction(1) / (lo - whole))
    return whole + 1 / inner
