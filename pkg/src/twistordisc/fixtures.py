"""Reference forms for the Fermat cubic reduction, used as regression fixtures.

These are independently transcribed copies of the published closed forms the
pipeline must reproduce.  They interlock: the quartic restricts onto each of
the stabilizer equations, which the fixture self-test exercises, so a
transcription slip in any one of them is caught by the others.

Note on the (a, alpha, b, beta) real form: the b^6 harmonic of the real part
is cos(6 beta), matching the cos/sin conventions of the imaginary part; the
variant with sin(6 beta) seen in print is inconsistent with those
conventions and fails the exact comparison.
"""

from __future__ import annotations

from fractions import Fraction

from .mpoly import MultiPoly, parse_poly
from .trig import COS, SIN, TrigForm

TZP = ("T", "Z", "Phi")
ST = ("S", "T")
AB = ("a", "b")


def _p(text, variables):
    return parse_poly(text, variables)


# ---------------------------------------------------------------------------
# The trivariate quartic: the fully reduced equation of the discriminant
# surface in the coordinates (T, Z, Phi); degree 4 in Phi.
# ---------------------------------------------------------------------------

_FINAL_QUARTIC_TEXT = """
426*T^2 - 228*Phi*T^2 - 6*Phi^2*T^2 + 3792*T^3 - 496*Phi*T^3
- 848*Phi^2*T^3 - 16*Phi^3*T^3 + 7584*T^4
+ 96*Phi*T^4 - 1056*Phi^2*T^4 - 480*Phi^3*T^4 + 4608*T^5
+ 1536*Phi*T^5 + 1536*Phi^2*T^5 - 1536*Phi^3*T^5
+ 128*T^6 + 1024*Phi*T^6 + 1792*Phi^2*T^6 - 1024*Phi^3*T^6
+ 128*Phi^4*T^6 + 228*T*Z + 240*Phi*T*Z
+ 12*Phi^2*T*Z + 3936*T^2*Z + 432*Phi*T^2*Z + 1728*Phi^2*T^2*Z
+ 48*Phi^3*T^2*Z + 22944*T^3*Z - 288*Phi*T^3*Z
- 1056*Phi^2*T^3*Z + 1440*Phi^3*T^3*Z + 31104*T^4*Z - 384*Phi*T^4*Z
- 1920*Phi^2*T^4*Z + 1920*Phi^3*T^4*Z + 8448*T^5*Z
+ 4608*Phi^2*T^5*Z - 768*Phi^4*T^5*Z - 6*Z^2 - 12*Phi*Z^2
- 6*Phi^2*Z^2 + 912*T*Z^2 + 48*Phi*T*Z^2 - 912*Phi^2*T*Z^2
- 48*Phi^3*T*Z^2 + 13368*T^2*Z^2 + 1968*Phi*T^2*Z^2
+ 5304*Phi^2*T^2*Z^2 - 1440*Phi^3*T^2*Z^2 + 55344*T^3*Z^2
- 3600*Phi*T^3*Z^2 - 3504*Phi^2*T^3*Z^2 + 3600*Phi^3*T^3*Z^2
+ 47424*T^4*Z^2 - 5568*Phi*T^4*Z^2 - 10176*Phi^2*T^4*Z^2
+ 3264*Phi^3*T^4*Z^2 + 1920*Phi^4*T^4*Z^2 + 4608*T^5*Z^2
+ 1536*Phi*T^5*Z^2 + 1536*Phi^2*T^5*Z^2 - 1536*Phi^3*T^5*Z^2
+ 16*Phi*Z^3 + 32*Phi^2*Z^3 + 16*Phi^3*Z^3 + 1872*T*Z^3
- 1824*Phi*T*Z^3 - 3216*Phi^2*T*Z^3 + 480*Phi^3*T*Z^3
+ 27168*T^2*Z^3 + 4176*Phi*T^2*Z^3 + 6336*Phi^2*T^2*Z^3
- 6960*Phi^3*T^2*Z^3 + 74944*T^3*Z^3 - 1472*Phi*T^3*Z^3
- 4544*Phi^2*T^3*Z^3 + 192*Phi^3*T^3*Z^3 - 2560*Phi^4*T^3*Z^3
+ 31104*T^4*Z^3 - 384*Phi*T^4*Z^3 - 1920*Phi^2*T^4*Z^3
+ 1920*Phi^3*T^4*Z^3 + 24*Z^4 + 48*Phi*Z^4 + 24*Phi^2*Z^4
+ 3696*T*Z^4 - 1584*Phi*T*Z^4 - 2160*Phi^2*T*Z^4 + 3120*Phi^3*T*Z^4
+ 35004*T^2*Z^4 + 8808*Phi*T^2*Z^4 + 12444*Phi^2*T^2*Z^4
- 4800*Phi^3*T^2*Z^4 + 1920*Phi^4*T^2*Z^4 + 55344*T^3*Z^4
- 3600*Phi*T^3*Z^4 - 3504*Phi^2*T^3*Z^4 + 3600*Phi^3*T^3*Z^4
+ 7584*T^4*Z^4 + 96*Phi*T^4*Z^4 - 1056*Phi^2*T^4*Z^4
- 480*Phi^3*T^4*Z^4 - 144*Phi*Z^5 - 288*Phi^2*Z^5 - 144*Phi^3*Z^5
+ 4248*T*Z^5 - 2976*Phi*T*Z^5 - 4344*Phi^2*T*Z^5 + 2112*Phi^3*T*Z^5
- 768*Phi^4*T*Z^5 + 27168*T^2*Z^5 + 4176*Phi*T^2*Z^5
+ 6336*Phi^2*T^2*Z^5 - 6960*Phi^3*T^2*Z^5 + 22944*T^3*Z^5
- 288*Phi*T^3*Z^5 - 1056*Phi^2*T^3*Z^5 + 1440*Phi^3*T^3*Z^5
+ 92*Z^6 + 184*Phi*Z^6 + 220*Phi^2*Z^6 + 256*Phi^3*Z^6 + 128*Phi^4*Z^6
+ 3696*T*Z^6 - 1584*Phi*T*Z^6 - 2160*Phi^2*T*Z^6 + 3120*Phi^3*T*Z^6
+ 13368*T^2*Z^6 + 1968*Phi*T^2*Z^6 + 5304*Phi^2*T^2*Z^6
- 1440*Phi^3*T^2*Z^6 + 3792*T^3*Z^6 - 496*Phi*T^3*Z^6
- 848*Phi^2*T^3*Z^6 - 16*Phi^3*T^3*Z^6 - 144*Phi*Z^7 - 288*Phi^2*Z^7
- 144*Phi^3*Z^7 + 1872*T*Z^7 - 1824*Phi*T*Z^7 - 3216*Phi^2*T*Z^7
+ 480*Phi^3*T*Z^7 + 3936*T^2*Z^7 + 432*Phi*T^2*Z^7
+ 1728*Phi^2*T^2*Z^7 + 48*Phi^3*T^2*Z^7 + 24*Z^8 + 48*Phi*Z^8
+ 24*Phi^2*Z^8 + 912*T*Z^8 + 48*Phi*T*Z^8 - 912*Phi^2*T*Z^8
- 48*Phi^3*T*Z^8 + 426*T^2*Z^8 - 228*Phi*T^2*Z^8 - 6*Phi^2*T^2*Z^8
+ 16*Phi*Z^9 + 32*Phi^2*Z^9 + 16*Phi^3*Z^9 + 228*T*Z^9
+ 240*Phi*T*Z^9 + 12*Phi^2*T*Z^9 - 6*Z^10 - 12*Phi*Z^10 - 6*Phi^2*Z^10
""".replace("\n", " ")


def final_quartic() -> MultiPoly:
    """The reduced trivariate quartic in (T, Z, Phi)."""
    return _p(_FINAL_QUARTIC_TEXT, TZP)


def stabilizer_s_zero() -> MultiPoly:
    """Restriction to the S = 0 face (Z = T): 8 T^2 (3 + 10T + 3T^2)^4."""
    t = ("T",)
    return (_p("T^2", t) * _p("3+10*T+3*T^2", t) ** 4).scale(8)


def stabilizer_phi_minus_one() -> MultiPoly:
    """Restriction to Phi = -1, written in (S, T):
    8 T^2 (3 + 3S^2 + 10T + 3T^2 + 6S(1 + T))^4."""
    inner = _p("3+3*S^2+10*T+3*T^2+6*S+6*S*T", ST)
    return (_p("T^2", ST) * inner ** 4).scale(8)


def stabilizer_t_zero() -> MultiPoly:
    """Restriction to T = 0:
    2 (1+Phi)^2 Z^2 (-3 + 12Z^2 + 46Z^4 + 64 Phi^2 Z^4 + 12Z^6 - 3Z^8
                     + 8 Phi (Z - 9Z^3 - 9Z^5 + Z^7))."""
    zp = ("Z", "Phi")
    inner = _p(
        "-3+12*Z^2+46*Z^4+64*Phi^2*Z^4+12*Z^6-3*Z^8"
        "+8*Phi*Z-72*Phi*Z^3-72*Phi*Z^5+8*Phi*Z^7",
        zp,
    )
    return (_p("1+Phi", zp) ** 2 * _p("Z^2", zp) * inner).scale(2)


def stabilizer_phi_one_factors():
    """Restriction to Phi = 1 factors as 8 * (two cubics in T)."""
    zt = ("T", "Z")
    c1 = _p(
        "1+12*T+24*T^2+16*T^3+36*T*Z+48*T^2*Z-6*Z^2+36*T*Z^2"
        "+24*T^2*Z^2+8*Z^3+60*T*Z^3-3*Z^4",
        zt,
    )
    c2 = _p(
        "24*T^2+16*T^3+60*T*Z+48*T^2*Z-3*Z^2+36*T*Z^2+24*T^2*Z^2"
        "+8*Z^3+36*T*Z^3-6*Z^4+12*T*Z^4+Z^6",
        zt,
    )
    return c1, c2


def stabilizer_phi_one() -> MultiPoly:
    c1, c2 = stabilizer_phi_one_factors()
    return (c1 * c2).scale(8)


def edge_curve_cubic_in_t() -> MultiPoly:
    """The cubic in T (coefficients in Z) whose third real root is the
    one-dimensional solution branch of the Phi = 1 restriction."""
    zt = ("T", "Z")
    _, c2 = stabilizer_phi_one_factors()
    return c2


# ---------------------------------------------------------------------------
# The (a, alpha, b, beta) real equations of the degree-12 discriminant.
# Stored as multiple-angle trig forms over base (a, b), angles (al, be).
# ---------------------------------------------------------------------------


def alphabeta_imaginary() -> TrigForm:
    """-2 a^3 cos(3 be) sin(3 al) + (-1 + a^6 + 3 a^4 b^2 + 3 a^2 b^4 + b^6) sin(3 be)."""
    f = TrigForm(AB, ("al", "be"))
    f.copy_add(((3, SIN), (3, COS)), _p("-2*a^3", AB))
    f.copy_add(((0, COS), (3, SIN)), _p("-1+a^6+3*a^4*b^2+3*a^2*b^4+b^6", AB))
    return f


def alphabeta_real() -> TrigForm:
    """1 + 4a^6 - 4b^6 + a^12 + b^12 + 6a^4 b^2 - 6a^2 b^4 + 6a^10 b^2
    + 6a^2 b^10 + 15a^8 b^4 + 15a^4 b^8 + 20a^6 b^6
    + 2 b^6 cos(6 be) + 2 a^6 cos(6 al)
    + 4 a^3 (1 + a^6 + b^6 + 3a^4 b^2 + 3a^2 b^4) cos(3 al)."""
    f = TrigForm(AB, ("al", "be"))
    f.copy_add(
        ((0, COS), (0, COS)),
        _p(
            "1+4*a^6-4*b^6+a^12+b^12+6*a^4*b^2-6*a^2*b^4"
            "+6*a^10*b^2+6*a^2*b^10+15*a^8*b^4+15*a^4*b^8+20*a^6*b^6",
            AB,
        ),
    )
    f.copy_add(((0, COS), (6, COS)), _p("2*b^6", AB))
    f.copy_add(((6, COS), (0, COS)), _p("2*a^6", AB))
    f.copy_add(((3, COS), (0, COS)), _p("4*a^3+4*a^9+4*a^3*b^6+12*a^7*b^2+12*a^5*b^4", AB))
    return f


def fixture_self_check():
    """Cross-validate the transcriptions against each other.

    Returns a list of (name, ok) pairs; every entry must be ok.  The checks:
    the Z-degree reversal symmetry of the quartic, and its four boundary
    restrictions against the stabilizer forms.
    """
    out = []
    q = final_quartic()

    sym_ok = True
    for (t, z, ph), c in q.terms.items():
        mirror = (t, 2 * (6 - t) - z, ph)
        if q.terms.get(mirror) != c:
            sym_ok = False
            break
    out.append(("degree-reversal symmetry", sym_ok))

    # Z = T restriction (the S = 0 face).
    zt = q.substitute("Z", MultiPoly.var(TZP, "T"))
    zt = zt.eval_partial({"Phi": Fraction(0)}) if False else zt
    zt_t = zt.with_vars(("T", "Phi"))
    expect = stabilizer_s_zero().with_vars(("T", "Phi"))
    out.append(("S=0 face matches", zt_t == expect))

    # T = 0 restriction.
    t0 = q.eval_partial({"T": Fraction(0)})
    out.append(("T=0 face matches", t0 == stabilizer_t_zero().with_vars(t0.vars)))

    # Phi = 1 restriction.
    p1 = q.eval_partial({"Phi": Fraction(1)})
    out.append(("Phi=1 face matches", p1 == stabilizer_phi_one().with_vars(p1.vars)))

    # Phi = -1 restriction, then Z -> S + T.
    pm = q.eval_partial({"Phi": Fraction(-1)})
    pm_st = pm.with_vars(("T", "Z", "S")).substitute(
        "Z", _p("S+T", ("T", "Z", "S"))
    ).with_vars(("S", "T"))
    out.append(("Phi=-1 face matches", pm_st == stabilizer_phi_minus_one()))
    return out
