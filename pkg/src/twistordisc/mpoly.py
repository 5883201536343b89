"""Sparse multivariate polynomials over the exact scalar tower.

Terms are stored as a map from exponent tuples to nonzero coefficients, with
graded-lexicographic order fixing every canonical traversal.  Coefficients
may be int/Fraction, QuadExt, or Complex; all arithmetic stays exact, and a
nonzero remainder in a supposedly exact division always raises instead of
being dropped.  Values are immutable once constructed.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd

from .scalars import (
    Complex,
    QuadExt,
    format_scalar,
    parse_scalar_as,
)


class VarSetMismatch(ValueError):
    pass


class ExactDivisionError(ArithmeticError):
    pass


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Sparse polynomial; `vars` is the ordered variable tuple."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        self.vars = variables
        clean = {}
        if terms:
            n = len(variables)
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} does not match {variables}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if coeff:
                    prev = clean.get(exps)
                    if prev is None:
                        clean[exps] = coeff
                    else:
                        s = prev + coeff
                        if s:
                            clean[exps] = s
                        else:
                            del clean[exps]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(variables) -> "MultiPoly":
        return MultiPoly(variables, {})

    @staticmethod
    def constant(variables, value) -> "MultiPoly":
        variables = tuple(variables)
        if not value:
            return MultiPoly(variables, {})
        return MultiPoly(variables, {(0,) * len(variables): value})

    @staticmethod
    def var(variables, name, coeff=1) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(variables)))
        return MultiPoly(variables, {exps: coeff})

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention here."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def leading_term(self):
        """(exps, coeff) maximal in graded-lex order; None for zero."""
        if not self.terms:
            return None
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def iter_sorted(self):
        for exps in sorted(self.terms, key=_grlex_key, reverse=True):
            yield exps, self.terms[exps]

    def _check_vars(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise VarSetMismatch(f"variable sets differ: {self.vars} vs {other.vars}")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return self + MultiPoly.constant(self.vars, other)
        self._check_vars(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            prev = out.get(exps)
            if prev is None:
                out[exps] = coeff
            else:
                s = prev + coeff
                if s:
                    out[exps] = s
                else:
                    del out[exps]
        p = MultiPoly.__new__(MultiPoly)
        p.vars = self.vars
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MultiPoly.__new__(MultiPoly)
        p.vars = self.vars
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.constant(self.vars, other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check_vars(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.vars)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                prev = out.get(exps)
                if prev is None:
                    out[exps] = c
                else:
                    s = prev + c
                    if s:
                        out[exps] = s
                    else:
                        del out[exps]
        p = MultiPoly.__new__(MultiPoly)
        p.vars = self.vars
        p.terms = out
        return p

    __rmul__ = __mul__

    def scale(self, scalar):
        if not scalar:
            return MultiPoly.zero(self.vars)
        p = MultiPoly.__new__(MultiPoly)
        p.vars = self.vars
        p.terms = {e: c * scalar for e, c in self.terms.items()}
        return p

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.vars, Fraction(1) if not self.terms else _one_like(next(iter(self.terms.values()))))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def mul_monomial(self, exps, coeff=1):
        exps = tuple(exps)
        p = MultiPoly.__new__(MultiPoly)
        p.vars = self.vars
        if not coeff:
            p.terms = {}
            return p
        p.terms = {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self.terms.items()}
        return p

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if not self.terms:
            return not other
        const = self.constant_term()
        return len(self.terms) == 1 and bool(const) and const == other

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus and evaluation ---------------------------------------------

    def derivative(self, name: str) -> "MultiPoly":
        if name not in self.vars:
            raise VarSetMismatch(f"unknown variable {name!r}")
        i = self.vars.index(name)
        out = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e:
                new = list(exps)
                new[i] = e - 1
                out[tuple(new)] = coeff * e
        return MultiPoly(self.vars, out)

    def eval(self, point):
        """Exact value at a point given as a sequence of scalars."""
        point = list(point)
        if len(point) != len(self.vars):
            raise VarSetMismatch(
                f"point has {len(point)} coordinates for {len(self.vars)} variables"
            )
        if not self.terms:
            return 0
        powers = [{0: 1} for _ in point]
        total = None
        for exps, coeff in self.terms.items():
            val = coeff
            for i, e in enumerate(exps):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        p = cache[max(cache)]
                        for k in range(max(cache) + 1, e + 1):
                            p = p * point[i]
                            cache[k] = p
                    val = val * cache[e]
            total = val if total is None else total + val
        return total if total is not None else 0

    def eval_partial(self, assignment: dict) -> "MultiPoly":
        """Substitute scalars for a subset of variables, keeping the rest."""
        keep = [v for v in self.vars if v not in assignment]
        idx = {v: i for i, v in enumerate(self.vars)}
        terms_out = {}
        for exps, coeff in self.terms.items():
            val = coeff
            for v, s in assignment.items():
                e = exps[idx[v]]
                if e:
                    val = val * (s ** e)
                    if not val:
                        break
            if not val:
                continue
            new = tuple(exps[idx[v]] for v in keep)
            prev = terms_out.get(new)
            if prev is None:
                terms_out[new] = val
            else:
                s2 = prev + val
                if s2:
                    terms_out[new] = s2
                else:
                    del terms_out[new]
        return MultiPoly(tuple(keep), terms_out)

    # -- substitution ---------------------------------------------------------

    def substitute(self, name: str, replacement: "MultiPoly") -> "MultiPoly":
        """Exact composition, replacing `name` by a polynomial on self.vars."""
        if name not in self.vars:
            raise VarSetMismatch(f"unknown variable {name!r}")
        self._check_vars(replacement)
        i = self.vars.index(name)
        by_deg = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            rest = list(exps)
            rest[i] = 0
            key = tuple(rest)
            by_deg.setdefault(e, {})[key] = coeff
        # Horner in the substituted variable.
        degs = sorted(by_deg)
        result = MultiPoly.zero(self.vars)
        maxd = degs[-1] if degs else 0
        for e in range(maxd, -1, -1):
            result = result * replacement if result.terms else result
            if e in by_deg:
                result = result + MultiPoly(self.vars, by_deg[e])
        return result

    def substitute_rational(self, name: str, num: "MultiPoly", den: "MultiPoly"):
        """Substitute name -> num/den and clear denominators.

        Returns (cleared, k) with cleared = den^k * self(name -> num/den)
        and k = degree of self in name.
        """
        if name not in self.vars:
            raise VarSetMismatch(f"unknown variable {name!r}")
        self._check_vars(num)
        self._check_vars(den)
        i = self.vars.index(name)
        k = self.degree_in(name)
        if k <= 0:
            return self, 0
        by_deg = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            rest = list(exps)
            rest[i] = 0
            by_deg.setdefault(e, {})[tuple(rest)] = coeff
        den_pows = [MultiPoly.constant(self.vars, 1)]
        for _ in range(k):
            den_pows.append(den_pows[-1] * den)
        result = MultiPoly.zero(self.vars)
        for e in range(k, -1, -1):
            if result.terms:
                result = result * num
            if e in by_deg:
                result = result + MultiPoly(self.vars, by_deg[e]) * den_pows[k - e]
        return result, k

    def rename_vars(self, mapping: dict) -> "MultiPoly":
        newvars = tuple(mapping.get(v, v) for v in self.vars)
        return MultiPoly(newvars, dict(self.terms))

    def with_vars(self, variables) -> "MultiPoly":
        """Re-embed into a (super)set of variables, preserving names."""
        variables = tuple(variables)
        pos = []
        for v in self.vars:
            if v not in variables:
                if self.degree_in(v) > 0:
                    raise VarSetMismatch(f"variable {v} carries degree but is dropped")
                pos.append(None)
            else:
                pos.append(variables.index(v))
        n = len(variables)
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * n
            for j, e in enumerate(exps):
                if e:
                    new[pos[j]] = e
            key = tuple(new)
            prev = out.get(key)
            out[key] = coeff if prev is None else prev + coeff
        return MultiPoly(variables, out)

    def sort_key_terms(self):
        return tuple(sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True))

    # -- content and exact division -------------------------------------------

    def rational_content(self) -> Fraction:
        """Positive rational c with self/c integer, primitive (Fraction coeffs).

        Only meaningful for int/Fraction coefficients; raises otherwise.
        """
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            f = c if isinstance(c, Fraction) else Fraction(c)
            num = gcd(num, f.numerator)
            den = den * f.denominator // gcd(den, f.denominator)
        return Fraction(num, den)

    def primitive_part(self):
        """(primitive, content): strips rational content, sign-normalised.

        The leading graded-lex coefficient of the primitive part is positive.
        """
        if not self.terms:
            return self, Fraction(1)
        content = self.rational_content()
        lead = self.terms[max(self.terms, key=_grlex_key)]
        if (lead if isinstance(lead, Fraction) else Fraction(lead)) < 0:
            content = -content
        inv = 1 / content
        prim = MultiPoly(self.vars, {e: _as_int_if_possible(c * inv) for e, c in self.terms.items()})
        return prim, content

    def monomial_content(self):
        """Componentwise minimum exponent vector across all terms."""
        if not self.terms:
            return (0,) * len(self.vars)
        mins = None
        for exps in self.terms:
            if mins is None:
                mins = list(exps)
            else:
                for i, e in enumerate(exps):
                    if e < mins[i]:
                        mins[i] = e
        return tuple(mins)

    def strip_monomial_content(self):
        """(stripped, monomial): divide out the common monomial factor."""
        mono = self.monomial_content()
        if not any(mono):
            return self, mono
        out = {tuple(a - b for a, b in zip(e, mono)): c for e, c in self.terms.items()}
        return MultiPoly(self.vars, out), mono

    def divexact(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact division; raises ExactDivisionError on nonzero remainder."""
        if not isinstance(divisor, MultiPoly):
            divisor = MultiPoly.constant(self.vars, divisor)
        self._check_vars(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return self
        lead_e = max(divisor.terms, key=_grlex_key)
        lead_c = divisor.terms[lead_e]
        lead_c_inv = _scalar_inverse(lead_c)
        rem = dict(self.terms)
        quo = {}
        while rem:
            e = max(rem, key=_grlex_key)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if any(x < 0 for x in qe):
                raise ExactDivisionError(
                    f"nonzero remainder: leading term x^{e} not divisible by x^{lead_e}"
                )
            qc = c * lead_c_inv
            quo[qe] = qc
            for de, dc in divisor.terms.items():
                key = tuple(a + b for a, b in zip(qe, de))
                prev = rem.get(key)
                val = qc * dc
                if prev is None:
                    rem[key] = -val
                else:
                    s = prev - val
                    if s:
                        rem[key] = s
                    else:
                        del rem[key]
        return MultiPoly(self.vars, {e: _as_int_if_possible(c) for e, c in quo.items()})

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.divexact(self)
            return True
        except (ExactDivisionError, ZeroDivisionError):
            return False

    # -- display ---------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps, coeff in self.iter_sorted():
            factors = []
            cs = format_scalar(coeff) if not isinstance(coeff, int) else str(coeff)
            for v, e in zip(self.vars, exps):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            if factors:
                if cs == "1":
                    bits.append("*".join(factors))
                elif cs == "-1":
                    bits.append("-" + "*".join(factors))
                else:
                    bits.append(cs + "*" + "*".join(factors))
            else:
                bits.append(cs)
        out = bits[0]
        for b in bits[1:]:
            out += b if b.startswith("-") else "+" + b
        return out


def _one_like(coeff):
    if isinstance(coeff, Complex):
        return Complex.of(1, base_hint=coeff.re)
    if isinstance(coeff, QuadExt):
        return QuadExt.of(1)
    if isinstance(coeff, Fraction):
        return Fraction(1)
    return 1


def _scalar_inverse(c):
    if isinstance(c, (Complex, QuadExt)):
        return c.inverse()
    return Fraction(1) / Fraction(c) if not isinstance(c, Fraction) else Fraction(1) / c


def _as_int_if_possible(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


# ---------------------------------------------------------------------------
# UniView: a univariate view with polynomial coefficients.
# ---------------------------------------------------------------------------


class UniView:
    """Coefficient list of a MultiPoly seen as univariate in one variable.

    coeffs[i] is the coefficient of main^i, itself a MultiPoly in the other
    variables; the top coefficient is nonzero unless the whole list is empty.
    """

    __slots__ = ("main", "rest_vars", "coeffs")

    def __init__(self, main, rest_vars, coeffs):
        self.main = main
        self.rest_vars = tuple(rest_vars)
        while coeffs and not coeffs[-1].terms:
            coeffs = coeffs[:-1]
        self.coeffs = list(coeffs)

    @staticmethod
    def of(p: MultiPoly, main: str) -> "UniView":
        if main not in p.vars:
            raise VarSetMismatch(f"unknown variable {main!r}")
        i = p.vars.index(main)
        rest = tuple(v for v in p.vars if v != main)
        deg = p.degree_in(main)
        buckets = [dict() for _ in range(deg + 1)] if deg >= 0 else []
        for exps, coeff in p.terms.items():
            e = exps[i]
            key = tuple(x for j, x in enumerate(exps) if j != i)
            buckets[e][key] = coeff
        return UniView(main, rest, [MultiPoly(rest, b) for b in buckets])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> MultiPoly:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def to_poly(self, variables=None) -> MultiPoly:
        if variables is None:
            variables = (self.main,) + self.rest_vars
        out = MultiPoly.zero(tuple(variables))
        acc = {}
        mi = variables.index(self.main)
        rest_pos = [variables.index(v) for v in self.rest_vars]
        n = len(variables)
        for e, c in enumerate(self.coeffs):
            for exps, coeff in c.terms.items():
                new = [0] * n
                new[mi] = e
                for j, x in enumerate(exps):
                    new[rest_pos[j]] = x
                acc[tuple(new)] = coeff
        out.terms = acc
        return out


# ---------------------------------------------------------------------------
# JSON serialisation: bit-exact round trips.
# ---------------------------------------------------------------------------


def poly_to_json(p: MultiPoly) -> dict:
    """{"vars": [...], "terms": [{"coeff": literal, "exps": [...]}, ...]}."""
    terms = []
    for exps, coeff in p.iter_sorted():
        lit = str(coeff) if isinstance(coeff, int) else format_scalar(coeff)
        terms.append({"coeff": lit, "exps": list(exps)})
    return {"vars": list(p.vars), "terms": terms}


def poly_from_json(data: dict, quad: bool = False, cplx: bool = False) -> MultiPoly:
    """Inverse of poly_to_json; the flags pick the coefficient tower level.

    With both flags False, each literal is parsed into the smallest level
    that represents it exactly.
    """
    variables = tuple(data["vars"])
    terms = {}
    for item in data["terms"]:
        if quad or cplx:
            coeff = parse_scalar_as(item["coeff"], quad=quad, cplx=cplx)
        else:
            from .scalars import parse_scalar

            coeff = parse_scalar(item["coeff"])
            if isinstance(coeff, Fraction) and coeff.denominator == 1:
                coeff = int(coeff)
        terms[tuple(item["exps"])] = coeff
    return MultiPoly(variables, terms)


def poly_dumps(p: MultiPoly) -> str:
    return json.dumps(poly_to_json(p), separators=(",", ":"), sort_keys=False)


def poly_loads(text: str, quad: bool = False, cplx: bool = False) -> MultiPoly:
    return poly_from_json(json.loads(text), quad=quad, cplx=cplx)


def parse_poly(text: str, variables) -> MultiPoly:
    """Parse a human polynomial literal like "z1^3+z2^3-2*z3*z4".

    Supports +, -, *, ^ with integer or rational or sqrt3/I scalar factors.
    """
    variables = tuple(variables)
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial literal")
    terms = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start and s[i - 1] not in "+-*/^":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    result = MultiPoly.zero(variables)
    for term in terms:
        sign = 1
        if term.startswith("+"):
            term = term[1:]
        elif term.startswith("-"):
            sign = -1
            term = term[1:]
        coeff = Fraction(sign)
        exps = [0] * len(variables)
        has_sqrt3 = False
        has_i = False
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"malformed polynomial literal {text!r}")
            if "^" in factor:
                base, _, power = factor.partition("^")
                e = int(power)
            else:
                base, e = factor, 1
            if base in variables:
                exps[variables.index(base)] += e
            elif base == "sqrt3":
                if e % 2 == 0:
                    coeff *= Fraction(3) ** (e // 2)
                else:
                    coeff *= Fraction(3) ** (e // 2)
                    has_sqrt3 = not has_sqrt3
            elif base == "I":
                r = e % 4
                if r in (2, 3):
                    coeff = -coeff
                if r in (1, 3):
                    has_i = not has_i
            else:
                coeff *= Fraction(base) ** e
        if has_i:
            c = Complex(QuadExt(0, 0), QuadExt(0, coeff)) if has_sqrt3 else Complex(Fraction(0), coeff)
        elif has_sqrt3:
            c = QuadExt(Fraction(0), coeff)
        else:
            c = coeff
        result = result + MultiPoly(variables, {tuple(exps): c})
    out = {}
    for e, c in result.terms.items():
        out[e] = _as_int_if_possible(c) if isinstance(c, Fraction) else c
    return MultiPoly(variables, out)
