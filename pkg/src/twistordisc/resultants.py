"""Resultants, subresultants, discriminants, gcds and squarefree parts.

Resultants are computed by the subresultant polynomial remainder sequence
(never by Sylvester expansion beyond tiny degrees), which keeps coefficient
growth polynomial while using only exact ring divisions.  A fraction-free
Bareiss determinant of the Sylvester matrix doubles as an independent test
oracle for small inputs.
"""

from __future__ import annotations

from fractions import Fraction

from .mpoly import ExactDivisionError, MultiPoly, UniView


class ZeroPolynomialError(ValueError):
    pass


def _prem(a, b):
    """Pseudo-remainder of coefficient lists a, b (b nonzero), plus the
    multiplier power used: returns (rem, k) with lc(b)^k * a = q*b + rem."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    k = 0
    while len(r) - 1 >= db and any(c.terms for c in r):
        while r and not r[-1].terms:
            r.pop()
        if len(r) - 1 < db:
            break
        dr = len(r) - 1
        shift = dr - db
        top = r[-1]
        r = [c * lb for c in r]
        k += 1
        for i, bc in enumerate(b):
            r[shift + i] = r[shift + i] - top * bc
        r.pop()
        while r and not r[-1].terms:
            r.pop()
    return r, k


def _trim(coeffs):
    c = list(coeffs)
    while c and not c[-1].terms:
        c.pop()
    return c


def _coeff_divexact(coeffs, divisor):
    return [c.divexact(divisor) for c in coeffs]


def resultant_uv(a_coeffs, b_coeffs, rest_vars):
    """Resultant of two coefficient lists over the ring of MultiPoly.

    Subresultant PRS, Cohen's variant: only exact divisions are performed.
    Returns a MultiPoly over rest_vars.
    """
    a = _trim(a_coeffs)
    b = _trim(b_coeffs)
    if not a or not b:
        raise ZeroPolynomialError("resultant of a zero polynomial")
    one = MultiPoly.constant(rest_vars, 1)
    sign = 1
    if len(a) < len(b):
        if ((len(a) - 1) * (len(b) - 1)) % 2 == 1:
            sign = -sign
        a, b = b, a
    if len(b) == 1:
        return (b[0] ** (len(a) - 1)).scale(sign)
    g = one
    h = one
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        rem, k = _prem(a, b)
        # prem multiplies by lc(b)^k with k <= delta + 1; pad to delta + 1 so
        # the classical normalisation applies.
        if k < delta + 1:
            lb = b[-1]
            for _ in range(delta + 1 - k):
                rem = [c * lb for c in rem]
        a = b
        denom = g * (h ** delta)
        b = _trim(_coeff_divexact(rem, denom)) if rem else []
        if not b:
            return MultiPoly.zero(rest_vars)
        g = a[-1]
        if delta == 0:
            pass  # h unchanged
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).divexact(h ** (delta - 1))
        if len(b) - 1 == 0:
            da = len(a) - 1
            res = (b[0] ** da).divexact(h ** (da - 1)) if da >= 1 else one
            return res.scale(sign)


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant of p and q with respect to var, over the remaining variables."""
    pv = UniView.of(p, var)
    qv = UniView.of(q, var)
    if pv.degree() < 0 or qv.degree() < 0:
        raise ZeroPolynomialError("resultant of the zero polynomial")
    if pv.degree() == 0 and qv.degree() == 0:
        return MultiPoly.constant(pv.rest_vars, 1)
    return resultant_uv(pv.coeffs, qv.coeffs, pv.rest_vars)


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str):
    """Sylvester matrix as a list of coefficient-list rows (test oracle)."""
    pv = UniView.of(p, var)
    qv = UniView.of(q, var)
    m, n = pv.degree(), qv.degree()
    size = m + n
    rows = []
    pc = list(reversed(pv.coeffs))
    qc = list(reversed(qv.coeffs))
    for i in range(n):
        rows.append([MultiPoly.zero(pv.rest_vars)] * i + pc + [MultiPoly.zero(pv.rest_vars)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([MultiPoly.zero(pv.rest_vars)] * i + qc + [MultiPoly.zero(pv.rest_vars)] * (size - n - 1 - i))
    return rows


def bareiss_det(rows):
    """Fraction-free determinant of a square matrix of MultiPoly entries."""
    n = len(rows)
    if n == 0:
        return None
    a = [row[:] for row in rows]
    vars_ = a[0][0].vars
    denom = MultiPoly.constant(vars_, 1)
    sign = 1
    for k in range(n - 1):
        if not a[k][k].terms:
            piv = None
            for r in range(k + 1, n):
                if a[r][k].terms:
                    piv = r
                    break
            if piv is None:
                return MultiPoly.zero(vars_)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = val.divexact(denom)
            a[i][k] = MultiPoly.zero(vars_)
        denom = a[k][k]
    return a[n - 1][n - 1].scale(sign)


def resultant_sylvester(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant by Bareiss elimination on the Sylvester matrix (oracle)."""
    return bareiss_det(sylvester_matrix(p, q, var))


def discriminant(p: MultiPoly, var: str) -> MultiPoly:
    """(-1)^(d(d-1)/2) Res(p, dp/dvar) / lc(p), all divisions exact.

    For a cubic a t^3 + b t^2 + c t + d this equals
    18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2.
    """
    d = p.degree_in(var)
    if d < 1:
        raise ZeroPolynomialError("discriminant needs degree >= 1 in the main variable")
    pv = UniView.of(p, var)
    lead = pv.leading()
    if not lead.terms:
        raise ZeroPolynomialError("zero leading coefficient after normalisation")
    dp = p.derivative(var)
    if not dp.terms:
        raise ZeroPolynomialError("derivative vanished; polynomial not of stated degree")
    res = resultant(p, dp, var)
    res = res.with_vars(lead.vars)
    quo = res.divexact(lead)
    if (d * (d - 1) // 2) % 2 == 1:
        quo = -quo
    return quo


def cubic_discriminant(a, b, c, d):
    """Explicit discriminant of a*t^3 + b*t^2 + c*t + d over any ring."""
    return (
        a * b * c * d * 18
        - (b * b * b) * d * 4
        + (b * b) * (c * c)
        - a * (c * c * c) * 4
        - (a * a) * (d * d) * 27
    )


def _brown_prs(a, b, rest):
    """Brown's subresultant PRS on coefficient lists with deg a >= deg b >= 1.

    Returns (R, pscs) where R is the remainder sequence and pscs maps a
    degree j to the nonzero scalar subresultant psc_j.  Follows Brown,
    "The Subresultant PRS Algorithm", TOMS 4 (1978), in the arrangement
    used by sympy's dup_inner_subresultants.
    """
    n = len(a) - 1
    m = len(b) - 1
    one = MultiPoly.constant(rest, 1)
    R = [a, b]
    d = n - m

    def padded_prem(f, g, power):
        rem, k = _prem(f, g)
        if k < power:
            lb = g[-1]
            for _ in range(power - k):
                rem = [x * lb for x in rem]
        return _trim(rem)

    h = padded_prem(a, b, d + 1)
    if (d + 1) % 2 == 1:
        h = [-x for x in h]
    lc = b[-1]
    c = lc ** d
    pscs = {m: c} if d > 0 else {}
    c = -c
    while h:
        k = len(h) - 1
        R.append(h)
        prev_deg = len(R[-2]) - 1
        a2, b2, d = R[-2], h, prev_deg - k
        bdiv = (-lc) * (c ** d)
        h = padded_prem(a2, b2, d + 1)
        h = _coeff_divexact(h, bdiv) if h else []
        lc = b2[-1]
        if d > 1:
            c = ((-lc) ** d).divexact(c ** (d - 1))
        else:
            c = -lc
        pscs[k] = -c if isinstance(c, MultiPoly) else -c
    return R, pscs


def principal_subresultants(p: MultiPoly, q: MultiPoly, var: str):
    """Principal subresultant coefficients psc_0 .. of (p, q) in var.

    psc_0 equals the resultant; entries match the determinant definition
    (Sylvester-block minors).  The list covers indices 0..min(m,n)-1, plus
    the conventional top entry psc_min = lc(q)^(m-n) when the degrees m, n
    differ.  Arguments are swapped internally if deg p < deg q, with the
    sign of psc_j adjusted by (-1)^((m-j)(n-j)).
    """
    m = p.degree_in(var)
    n = q.degree_in(var)
    if m < 0 or n < 0:
        raise ZeroPolynomialError("zero input")
    swapped = False
    if m < n:
        p, q = q, p
        m, n = n, m
        swapped = True
    if n == 0:
        return []
    pv = UniView.of(p, var)
    qv = UniView.of(q, var)
    rest = pv.rest_vars
    _, pscs = _brown_prs(_trim(pv.coeffs), _trim(qv.coeffs), rest)
    length = n + 1 if m != n else n
    out = []
    for j in range(length):
        val = pscs.get(j, MultiPoly.zero(rest))
        if swapped and ((m - j) * (n - j)) % 2 == 1:
            val = -val
        out.append(val)
    return out


def psc_oracle(p: MultiPoly, q: MultiPoly, var: str, j: int) -> MultiPoly:
    """Determinant definition of psc_j (test oracle, small inputs only).

    psc_j is the determinant of the square matrix formed by the first
    m+n-2j columns of the rows x^(n-j-1)p .. p, x^(m-j-1)q .. q written in
    the basis x^(m+n-j-1) .. x^0.
    """
    pv = UniView.of(p, var)
    qv = UniView.of(q, var)
    m, n = pv.degree(), qv.degree()
    if j >= min(m, n) or j < 0:
        raise ValueError("psc index out of range")
    size = m + n - 2 * j
    width = m + n - j
    pc = list(reversed(pv.coeffs))
    qc = list(reversed(qv.coeffs))
    zero = MultiPoly.zero(pv.rest_vars)
    rows = []
    for i in range(n - j):
        row = [zero] * i + pc + [zero] * (width - (m + 1) - i)
        rows.append(row[:size])
    for i in range(m - j):
        row = [zero] * i + qc + [zero] * (width - (n + 1) - i)
        rows.append(row[:size])
    return bareiss_det(rows)


def gcd_poly(p: MultiPoly, q: MultiPoly, var: str = None) -> MultiPoly:
    """Gcd over Q[vars] via the primitive Euclidean sequence, recursively.

    `var` is an optional hint for the main variable of the first level.
    The result is primitive with rational content 1 and positive leading
    coefficient; constants collapse to 1.
    """
    p._check_vars(q)
    if p.is_zero():
        g, _ = q.primitive_part()
        return g
    if q.is_zero():
        g, _ = p.primitive_part()
        return g
    main = None
    if var is not None and (p.degree_in(var) > 0 or q.degree_in(var) > 0):
        main = var
    else:
        for v in p.vars:
            if p.degree_in(v) > 0 or q.degree_in(v) > 0:
                main = v
                break
    if main is None:
        return MultiPoly.constant(p.vars, 1)
    if p.degree_in(main) == 0 or q.degree_in(main) == 0:
        # One side is free of the main variable: gcd divides its content.
        free, other = (p, q) if p.degree_in(main) == 0 else (q, p)
        cont = _content_in(other, main)
        return gcd_poly(free.with_vars(cont.vars), cont).with_vars(p.vars)

    a = p if p.degree_in(main) >= q.degree_in(main) else q
    b = q if a is p else p
    av, bv = UniView.of(a, main), UniView.of(b, main)
    rest = av.rest_vars

    cont_a = _content_list(av.coeffs)
    cont_b = _content_list(bv.coeffs)
    acoef = [c.divexact(cont_a) for c in av.coeffs]
    bcoef = [c.divexact(cont_b) for c in bv.coeffs]
    cont = gcd_poly(cont_a, cont_b)

    while True:
        rem, _ = _prem(acoef, bcoef)
        rem = _trim(rem)
        if not rem:
            break
        rem_cont = _content_list(rem)
        acoef, bcoef = bcoef, [c.divexact(rem_cont) for c in rem]
        if len(bcoef) == 1:
            break
    g = UniView(main, rest, bcoef).to_poly(a.vars)
    if g.degree_in(main) == 0:
        g = MultiPoly.constant(a.vars, 1)
    out = g * cont.with_vars(a.vars)
    out, _ = out.primitive_part()
    return out


def _content_in(p: MultiPoly, main: str) -> MultiPoly:
    """Gcd of the coefficients of p viewed as univariate in main."""
    pv = UniView.of(p, main)
    return _content_list(pv.coeffs)


def _content_list(coeffs):
    g = None
    for c in coeffs:
        if not c.terms:
            continue
        g = c if g is None else gcd_poly(g, c)
        if g.total_degree() == 0:
            break
    if g is None:
        raise ZeroPolynomialError("content of the zero polynomial")
    if g.total_degree() == 0:
        return MultiPoly.constant(g.vars, 1)
    gp, _ = g.primitive_part()
    return gp


def squarefree_part(p: MultiPoly, var: str) -> MultiPoly:
    """p / gcd(p, dp/dvar), primitive; the squarefree part up to content."""
    if p.degree_in(var) <= 0:
        pp, _ = p.primitive_part()
        return pp
    dp = p.derivative(var)
    g = gcd_poly(p, dp, var)
    if g.total_degree() <= 0:
        pp, _ = p.primitive_part()
        return pp
    pp, _ = p.primitive_part()
    # Gauss: a primitive divisor of a primitive polynomial divides exactly.
    q = pp.divexact(g)
    qp, _ = q.primitive_part()
    return qp


def univariate_gcd_field(a_coeffs, b_coeffs):
    """Monic gcd of two univariate coefficient lists over a field.

    Coefficients may be Fraction, QuadExt or Complex; used for exact
    repeated-root oracles over Q(i).
    """

    def trim(c):
        c = list(c)
        while c and not c[-1]:
            c.pop()
        return c

    a = trim(a_coeffs)
    b = trim(b_coeffs)
    if not a:
        a, b = b, a
    if not b:
        if not a:
            return []
        inv = _inv_scalar(a[-1])
        return [c * inv for c in a]
    while b:
        # a mod b
        r = list(a)
        db = len(b) - 1
        inv_lb = _inv_scalar(b[-1])
        while len(r) - 1 >= db:
            if not r[-1]:
                r.pop()
                continue
            f = r[-1] * inv_lb
            shift = len(r) - 1 - db
            for i in range(db + 1):
                r[shift + i] = r[shift + i] - f * b[i]
            r.pop()
            r = trim(r)
            if not r:
                break
        a, b = b, trim(r)
    inv = _inv_scalar(a[-1])
    return [c * inv for c in a]


def _inv_scalar(c):
    from .scalars import Complex, QuadExt

    if isinstance(c, (Complex, QuadExt)):
        return c.inverse()
    return Fraction(1) / Fraction(c) if not isinstance(c, Fraction) else Fraction(1) / c
