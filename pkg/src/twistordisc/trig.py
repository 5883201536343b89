"""Exact trigonometric polynomial algebra for polar coordinate changes.

Two interchangeable representations are used.  The multiple-angle form
stores a polynomial in radial variables whose terms carry cos(k th) or
sin(k th) markers per angle; it is produced by polar substitution and is the
form in which harmonic content is inspected.  The reduced form rewrites all
multiples of a fixed base harmonic m through Chebyshev polynomials as a
plain polynomial in cos(m th) and sin(m th), with sin-degree kept at most
one through sin^2 = 1 - cos^2; all heavy arithmetic happens there.
"""

from __future__ import annotations

from fractions import Fraction

from .mpoly import MultiPoly

COS = "c"
SIN = "s"


def _angle_mul_table(p: int, q: int):
    """cos^p * sin^q as a list of (k, kind, Fraction) in multiple angles."""
    acc = {(0, COS): Fraction(1)}
    half = Fraction(1, 2)

    def push(out, k, kind, v):
        if k < 0:
            k = -k
            if kind == SIN:
                v = -v
        if kind == SIN and k == 0:
            return
        key = (k, kind)
        nv = out.get(key, Fraction(0)) + v
        if nv:
            out[key] = nv
        elif key in out:
            del out[key]

    for _ in range(p):
        out = {}
        for (k, kind), v in acc.items():
            # multiply by cos(th)
            push(out, k + 1, kind, v * half)
            push(out, k - 1, kind, v * half)
        acc = out
    for _ in range(q):
        out = {}
        for (k, kind), v in acc.items():
            if kind == COS:
                # cos(k)sin(1) = (sin(k+1) - sin(k-1))/2
                push(out, k + 1, SIN, v * half)
                push(out, k - 1, SIN, -v * half)
            else:
                # sin(k)sin(1) = (cos(k-1) - cos(k+1))/2
                push(out, k - 1, COS, v * half)
                push(out, k + 1, COS, -v * half)
        acc = out
    return [(k, kind, v) for (k, kind), v in acc.items()]


_TABLE_CACHE = {}


def angle_table(p: int, q: int):
    key = (p, q)
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = _angle_mul_table(p, q)
    return _TABLE_CACHE[key]


class TrigForm:
    """Multiple-angle form: {(per-angle (k, kind)): MultiPoly coefficient}.

    kind (k=0, COS) is the constant marker; (0, SIN) never appears.
    """

    __slots__ = ("base_vars", "angles", "data")

    def __init__(self, base_vars, angles, data=None):
        self.base_vars = tuple(base_vars)
        self.angles = tuple(angles)
        self.data = {}
        if data:
            for key, poly in data.items():
                if poly.terms:
                    self.data[key] = poly

    def copy_add(self, key, poly):
        if not poly.terms:
            return
        cur = self.data.get(key)
        if cur is None:
            self.data[key] = poly
        else:
            s = cur + poly
            if s.terms:
                self.data[key] = s
            else:
                del self.data[key]

    def harmonics(self, angle: str):
        """Sorted set of (k, kind) markers present for the given angle."""
        i = self.angles.index(angle)
        out = set()
        for key in self.data:
            out.add(key[i])
        return sorted(out)

    def coefficient(self, key) -> MultiPoly:
        return self.data.get(tuple(key), MultiPoly.zero(self.base_vars))

    def is_zero(self) -> bool:
        return not self.data

    def scale(self, c) -> "TrigForm":
        return TrigForm(self.base_vars, self.angles, {k: p.scale(c) for k, p in self.data.items()})

    def __add__(self, other: "TrigForm") -> "TrigForm":
        out = TrigForm(self.base_vars, self.angles, dict(self.data))
        for k, p in other.data.items():
            out.copy_add(k, p)
        return out

    def __repr__(self):
        bits = []
        for key in sorted(self.data):
            markers = []
            for angle, (k, kind) in zip(self.angles, key):
                if k:
                    markers.append(f"{'cos' if kind == COS else 'sin'}({k}{angle})")
            label = "*".join(markers) if markers else "1"
            bits.append(f"[{label}] {self.data[key]!r}")
        return "TrigForm(" + "; ".join(bits) + ")"


def polar_substitute(p: MultiPoly, planes, base_vars) -> TrigForm:
    """Substitute (xa, xb) -> (rad cos th, rad sin th) for each plane.

    planes: list of (xa, xb, radial_name, angle_name); every variable of p
    must be either a plane coordinate or kept as-is in base_vars.
    """
    plane_of = {}
    for idx, (xa, xb, rad, ang) in enumerate(planes):
        plane_of[xa] = (idx, 0)
        plane_of[xb] = (idx, 1)
    angles = tuple(ang for (_, _, _, ang) in planes)
    keep = [v for v in p.vars if v not in plane_of]
    base_vars = tuple(base_vars)
    for v in keep:
        if v not in base_vars:
            raise ValueError(f"variable {v} is neither polar nor retained")
    rad_index = {idx: base_vars.index(rad) for idx, (_, _, rad, _) in enumerate(planes)}
    keep_index = {v: base_vars.index(v) for v in keep}
    pos = {v: i for i, v in enumerate(p.vars)}
    out = TrigForm(base_vars, angles)
    nb = len(base_vars)
    for exps, coeff in p.terms.items():
        powers = []
        for idx in range(len(planes)):
            xa, xb, _, _ = planes[idx]
            pa = exps[pos[xa]] if xa in pos else 0
            pb = exps[pos[xb]] if xb in pos else 0
            powers.append((pa, pb))
        base = [0] * nb
        for v in keep:
            e = exps[pos[v]]
            if e:
                base[keep_index[v]] += e
        for idx, (pa, pb) in enumerate(powers):
            base[rad_index[idx]] += pa + pb
        # Tensor the per-angle expansions.
        combos = [((), Fraction(1))]
        for idx, (pa, pb) in enumerate(powers):
            table = angle_table(pa, pb)
            combos = [(key + (marker[:2],), v * marker[2]) for key, v in combos for marker in table]
        for key, v in combos:
            out.copy_add(key, MultiPoly(base_vars, {tuple(base): coeff * v}))
    return out


def chebyshev_t(n: int):
    """Coefficient list of T_n: cos(n t) = T_n(cos t)."""
    a, b = [Fraction(1)], [Fraction(0), Fraction(1)]
    if n == 0:
        return a
    for _ in range(n - 1):
        c = [Fraction(0)] + [2 * x for x in b]
        for i, x in enumerate(a):
            c[i] -= x
        a, b = b, c
    return b


def chebyshev_u(n: int):
    """Coefficient list of U_n: sin((n+1) t) = U_n(cos t) sin t."""
    if n < 0:
        return [Fraction(0)]
    a, b = [Fraction(1)], [Fraction(0), Fraction(2)]
    if n == 0:
        return a
    for _ in range(n - 1):
        c = [Fraction(0)] + [2 * x for x in b]
        for i, x in enumerate(a):
            c[i] -= x
        a, b = b, c
    return b


def minimal_harmonic(form: TrigForm, angle: str) -> int:
    """Gcd of the nonzero harmonics occurring for the angle (0 if none)."""
    from math import gcd

    g = 0
    for k, _ in form.harmonics(angle):
        g = gcd(g, k)
    return g


def to_reduced(form: TrigForm, base_harmonics, cs_names) -> MultiPoly:
    """Rewrite a multiple-angle form as a polynomial in cos/sin symbols.

    base_harmonics: per angle, the base multiple m (every harmonic must be a
    multiple of it).  cs_names: per angle, the (cos_sym, sin_sym) variable
    names.  The result lives on base_vars + all cs symbols, with sin-degree
    at most one per angle.
    """
    out_vars = form.base_vars + tuple(n for pair in cs_names for n in pair)
    acc = MultiPoly.zero(out_vars)
    for key, poly in form.data.items():
        factor = MultiPoly.constant(out_vars, 1)
        for i, (k, kind) in enumerate(key):
            m = base_harmonics[i]
            cn, sn = cs_names[i]
            if k == 0:
                continue
            if m == 0 or k % m:
                raise ValueError(f"harmonic {k} is not a multiple of the base {m}")
            j = k // m
            c = MultiPoly.var(out_vars, cn)
            if kind == COS:
                tj = chebyshev_t(j)
                piece = MultiPoly.zero(out_vars)
                for e, cf in enumerate(tj):
                    if cf:
                        piece = piece + (c ** e).scale(cf)
            else:
                uj = chebyshev_u(j - 1)
                piece = MultiPoly.zero(out_vars)
                for e, cf in enumerate(uj):
                    if cf:
                        piece = piece + (c ** e).scale(cf)
                piece = piece * MultiPoly.var(out_vars, sn)
            factor = factor * piece
        acc = acc + poly.with_vars(out_vars) * factor
    return reduce_sin(acc, cs_names)


def reduce_sin(p: MultiPoly, cs_names) -> MultiPoly:
    """Apply sin^2 = 1 - cos^2 until every sin exponent is at most one."""
    for cn, sn in cs_names:
        ci = p.vars.index(cn)
        si = p.vars.index(sn)
        while True:
            work = None
            for exps in p.terms:
                if exps[si] >= 2:
                    work = exps
                    break
            if work is None:
                break
            out = dict(p.terms)
            changed = {}
            for exps, coeff in p.terms.items():
                e = exps[si]
                if e >= 2:
                    del out[exps]
                    t = e // 2
                    r = e % 2
                    # (1 - c^2)^t expansion
                    for i in range(t + 1):
                        from math import comb

                        sign = (-1) ** i
                        cf = coeff * comb(t, i) * sign
                        new = list(exps)
                        new[si] = r
                        new[ci] = exps[ci] + 2 * i
                        key = tuple(new)
                        changed[key] = changed.get(key, 0) + cf
            for key, cf in changed.items():
                cur = out.get(key, 0)
                s = cur + cf
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
            p = MultiPoly(p.vars, out)
    return p


def trig_mul(p: MultiPoly, q: MultiPoly, cs_names) -> MultiPoly:
    """Product in the reduced ring (sin-degree kept at most one)."""
    return reduce_sin(p * q, cs_names)


def reduced_to_form(p: MultiPoly, base_vars, angle_info) -> TrigForm:
    """Inverse of to_reduced: expand cos/sin symbol powers to multiple angles.

    angle_info: list of (angle_name, base_harmonic m, cos_sym, sin_sym).
    """
    angles = tuple(a for (a, _, _, _) in angle_info)
    out = TrigForm(base_vars, angles)
    idx = {v: i for i, v in enumerate(p.vars)}
    bpos = [idx[v] for v in base_vars]
    cs_pos = [(idx[c], idx[s]) for (_, _, c, s) in angle_info]
    for exps, coeff in p.terms.items():
        base = tuple(exps[i] for i in bpos)
        combos = [((), Fraction(1))]
        for ai, (aname, m, _, _) in enumerate(angle_info):
            ci, si = cs_pos[ai]
            pc, ps = exps[ci], exps[si]
            table = angle_table(pc, ps)
            combos = [
                (key + ((k * m, kind),), v * tv)
                for key, v in combos
                for (k, kind, tv) in table
            ]
        for key, v in combos:
            out.copy_add(key, MultiPoly(base_vars, {base: coeff * v}))
    return out


def harmonic_to_cartesian(k: int, kind: str, rad_power: int, xa: MultiPoly, xb: MultiPoly, r2: MultiPoly):
    """rad^rad_power * (cos|sin)(k th) as a polynomial in the plane variables.

    Requires rad_power >= k and rad_power = k (mod 2); r2 = xa^2 + xb^2.
    rad^k cos(k th) = Re (xa + i xb)^k and rad^k sin(k th) = Im (xa + i xb)^k.
    """
    if rad_power < k or (rad_power - k) % 2:
        raise ValueError(f"radial power {rad_power} incompatible with harmonic {k}")
    re = MultiPoly.constant(xa.vars, 1)
    im = MultiPoly.zero(xa.vars)
    for _ in range(k):
        re, im = re * xa - im * xb, re * xb + im * xa
    body = re if kind == COS else im
    return body * (r2 ** ((rad_power - k) // 2))
