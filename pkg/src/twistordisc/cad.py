"""Cylindrical algebraic decomposition for up to three variables.

Projection uses the McCallum set (leading coefficients, discriminants,
pairwise resultants, and coefficient completion where the leading
coefficient can vanish), falling back to the heavier Collins-Hong set with
principal subresultant chains when a lifting step detects nullification.
Lifting isolates stack roots exactly: over rational partial samples by
integer Sturm sequences, over one algebraic coordinate in Q(alpha) with
dynamic splitting, and over two algebraic coordinates through a primitive
element.  Every cell carries an exact sign vector for all input polynomials
and a deterministic sample (simplest rationals in sector gaps).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import realroots as rr
from .algnum import AlgebraicNumber, _squarefree_int
from .extfield import (
    ExtField,
    ext_count_roots,
    ext_degree,
    ext_gcd,
    ext_isolate_roots,
    ext_poly_from_bivariate,
    ext_sign_at,
    ext_sturm_chain,
    ext_trim,
)
from .mpoly import MultiPoly, UniView
from .resultants import ZeroPolynomialError, principal_subresultants, resultant, squarefree_part
from .twistor import CancelToken


class CADError(RuntimeError):
    pass


class NullificationError(CADError):
    pass


class WellBasednessError(CADError):
    pass


class BudgetExceeded(CADError):
    pass


@dataclass
class CADConfig:
    max_terms: int = 2_000_000
    budget_seconds: float = None
    token: CancelToken = None
    started: float = field(default_factory=time.monotonic)

    def check(self, nterms: int = 0):
        if self.token is not None:
            self.token.check()
        if nterms > self.max_terms:
            raise BudgetExceeded(f"intermediate polynomial of {nterms} terms exceeds the ceiling")
        if self.budget_seconds is not None and time.monotonic() - self.started > self.budget_seconds:
            raise BudgetExceeded("wall-clock budget exhausted")


# ---------------------------------------------------------------------------
# Projection.
# ---------------------------------------------------------------------------


def _normalise_set(polys):
    """Squarefree primitive integer parts, deduplicated, constants dropped."""
    out = []
    seen = set()
    for p in polys:
        if p.total_degree() <= 0:
            continue
        prim, _ = p.primitive_part()
        key = tuple(prim.sort_key_terms())
        if key in seen:
            continue
        seen.add(key)
        out.append(prim)
    return out


def _squarefree_in(p: MultiPoly, var: str) -> MultiPoly:
    if p.degree_in(var) <= 0:
        prim, _ = p.primitive_part()
        return prim
    return squarefree_part(p, var)


def project(polys, var: str, config: CADConfig = None, collins: bool = False):
    """Projection set eliminating var.

    McCallum's operator by default: discriminants, leading coefficients
    (with full coefficient completion whenever the leading coefficient is
    non-constant), and pairwise resultants.  With collins=True the principal
    subresultant coefficient chains are added (Collins-Hong fallback).
    """
    config = config or CADConfig()
    work = []
    passthrough = []
    for p in polys:
        if p.degree_in(var) >= 1:
            work.append(_squarefree_in(p, var))
        else:
            passthrough.append(p)
    out = list(passthrough)
    rest = tuple(v for v in (polys[0].vars if polys else ()) if v != var)
    for f in work:
        config.check(len(f.terms))
        fv = UniView.of(f, var)
        lead = fv.leading()
        if lead.total_degree() >= 1:
            out.append(lead)
            # Completion: keep lower coefficients so delineability survives
            # leading-coefficient vanishing.
            for c in fv.coeffs[:-1]:
                if c.total_degree() >= 1:
                    out.append(c)
        df = f.derivative(var)
        if df.degree_in(var) >= 0 and f.degree_in(var) >= 2:
            disc = resultant(f, df, var)
            out.append(disc.with_vars(rest))
        if collins and f.degree_in(var) >= 2:
            for psc in principal_subresultants(f, df, var):
                if psc.total_degree() >= 1:
                    out.append(psc.with_vars(rest))
    for i in range(len(work)):
        for j in range(i + 1, len(work)):
            config.check()
            res = resultant(work[i], work[j], var)
            out.append(res.with_vars(rest))
            if collins:
                for psc in principal_subresultants(work[i], work[j], var):
                    if psc.total_degree() >= 1:
                        out.append(psc.with_vars(rest))
    cleaned = []
    for p in out:
        if p.total_degree() <= 0:
            continue
        q = p
        main = next((v for v in q.vars if q.degree_in(v) > 0), None)
        if main is not None:
            q = _squarefree_in(q, main)
        stripped, mono = q.strip_monomial_content()
        cleaned.append(stripped)
        # Keep any common monomial factor as separate linear pieces.
        for k, e in enumerate(mono):
            if e:
                cleaned.append(MultiPoly.var(q.vars, q.vars[k]))
    return _normalise_set(cleaned)


# ---------------------------------------------------------------------------
# Stack roots: uniform wrapper over the three lifting regimes.
# ---------------------------------------------------------------------------


class StackRoot:
    """A root of one or more lifted polynomials over a fixed partial sample.

    kind is "rational", "algebraic" (integer defining polynomial), or "ext"
    (polynomial over Q(alpha) or Q(theta)).  Always exposes interval(),
    refine(), compare_rational(), and to_algebraic() for serialisation.
    """

    def __init__(self, kind, data, lo, hi, exact=None):
        self.kind = kind
        self.data = data
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self.exact = exact
        self.vanishing = set()

    @staticmethod
    def rational(q, poly_ids=()):
        q = Fraction(q)
        root = StackRoot("rational", None, q, q, exact=q)
        root.vanishing |= set(poly_ids)
        return root

    @staticmethod
    def from_algnum(a: AlgebraicNumber, poly_ids=()):
        if a.exact is not None:
            return StackRoot.rational(a.exact, poly_ids)
        root = StackRoot("algebraic", a, a.lo, a.hi)
        root.vanishing |= set(poly_ids)
        return root

    @staticmethod
    def from_ext(field: ExtField, coeffs, chain, lo, hi, poly_ids=()):
        root = StackRoot("ext", (field, coeffs, chain), lo, hi)
        root.vanishing |= set(poly_ids)
        return root

    def interval(self):
        if self.exact is not None:
            return (self.exact, self.exact)
        if self.kind == "algebraic":
            return self.data.interval()
        return (self.lo, self.hi)

    def refine(self):
        if self.exact is not None:
            return
        if self.kind == "algebraic":
            self.data.refine()
            self.lo, self.hi = self.data.interval()
            return
        field, coeffs, chain = self.data
        mid = (self.lo + self.hi) / 2
        if ext_sign_at(field, coeffs, mid) == 0:
            self.exact = mid
            self.lo = self.hi = mid
            return
        if ext_count_roots(field, chain, self.lo, mid) == 1:
            self.hi = mid
        else:
            self.lo = mid

    def midpoint(self):
        lo, hi = self.interval()
        return (lo + hi) / 2

    def compare_rational(self, q: Fraction) -> int:
        q = Fraction(q)
        if self.exact is not None:
            return (self.exact > q) - (self.exact < q)
        if self.kind == "algebraic":
            return self.data.compare(q)
        field, coeffs, chain = self.data
        s = ext_sign_at(field, coeffs, q)
        if s == 0:
            return 0
        while True:
            lo, hi = self.interval()
            if q <= lo:
                return 1
            if q >= hi:
                return -1
            # q inside: root above or below q by counting.
            if ext_count_roots(field, chain, lo, q) == 1:
                return -1
            return 1

    def sign_of_poly(self, coeffs_or_poly) -> int:
        """Exact sign of another univariate polynomial at this root.

        For rational/algebraic kinds the argument is a rational coefficient
        list; for ext kind it is a coefficient list over the same field.
        """
        if self.exact is not None:
            val = 0
            if self.kind == "ext":
                field = self.data[0]
                return ext_sign_at(field, coeffs_or_poly, self.exact)
            acc = Fraction(0)
            for c in reversed(coeffs_or_poly):
                acc = acc * self.exact + c
            return (acc > 0) - (acc < 0)
        if self.kind == "algebraic":
            return self.data.sign_of(coeffs_or_poly)
        field, _, mychain = self.data
        other = ext_trim(field, list(coeffs_or_poly))
        if not other:
            return 0
        if len(other) == 1:
            return field.sign(other[0])
        g = ext_gcd(field, self.data[1], other)
        if ext_degree(g) >= 1:
            gchain = ext_sturm_chain(field, g)
            if ext_count_roots(field, gchain, self.lo, self.hi) >= 1:
                # The shared root in the interval is this root.
                if ext_count_roots(field, self.data[2], self.lo, self.hi) == 1:
                    return 0
        ochain = ext_sturm_chain(field, other)
        while True:
            s_lo = ext_sign_at(field, other, self.lo)
            s_hi = ext_sign_at(field, other, self.hi)
            if s_lo == s_hi and s_lo != 0 and ext_count_roots(field, ochain, self.lo, self.hi) == 0:
                return s_lo
            self.refine()

    def compare(self, other: "StackRoot") -> int:
        if self.exact is not None and other.exact is not None:
            return (self.exact > other.exact) - (self.exact < other.exact)
        if other.exact is not None:
            return self.compare_rational(other.exact)
        if self.exact is not None:
            return -other.compare_rational(self.exact)
        if self.kind == "algebraic" and other.kind == "algebraic":
            return self.data.compare(other.data)
        if self.kind == "ext" and other.kind == "ext" and self.data[0] is other.data[0]:
            field = self.data[0]
            g = ext_gcd(field, self.data[1], other.data[1])
            gchain = ext_sturm_chain(field, g) if ext_degree(g) >= 1 else None
            while True:
                slo, shi = self.interval()
                olo, ohi = other.interval()
                if shi <= olo:
                    return -1
                if ohi <= slo:
                    return 1
                lo, hi = max(slo, olo), min(shi, ohi)
                if gchain is not None and lo < hi:
                    if (
                        ext_count_roots(field, gchain, lo, hi) >= 1
                        and ext_count_roots(field, self.data[2], lo, hi) == 1
                        and ext_count_roots(field, other.data[2], lo, hi) == 1
                    ):
                        return 0
                self.refine()
                other.refine()
        raise CADError("cannot compare stack roots of mixed provenance")

    def to_algebraic(self, candidates: AlgebraicNumber = None):
        """An equal AlgebraicNumber with integer defining polynomial."""
        if self.exact is not None:
            return AlgebraicNumber.from_rational(self.exact)
        if self.kind == "algebraic":
            return self.data
        field, coeffs, chain = self.data
        # Integer candidates from the resultant of the defining tower.
        g = field.alpha.poly
        gx = MultiPoly(("x_rc", "y_rc"), {(i, 0): Fraction(v) for i, v in enumerate(g) if v})
        # Rebuild the bivariate polynomial whose specialisation is coeffs.
        terms = {}
        for j, c in enumerate(coeffs):
            for i, v in enumerate(c):
                if v:
                    terms[(i, j)] = terms.get((i, j), 0) + v
        biv = MultiPoly(("x_rc", "y_rc"), terms)
        rho = resultant(gx, biv, "x_rc")
        rc = [Fraction(rho.coefficient((e,))) for e in range(rho.degree_in("y_rc") + 1)]
        dint = _squarefree_int(rr.clear_denominators(rc))
        chain_rho = rr.sturm_chain(dint)
        while True:
            lo, hi = self.interval()
            if rr.eval_at(dint, lo) != 0 and rr.eval_at(dint, hi) != 0 \
                    and rr.sturm_count(chain_rho, lo, hi) == 1:
                return AlgebraicNumber(dint, lo, hi)
            self.refine()


# ---------------------------------------------------------------------------
# Cells and the tree.
# ---------------------------------------------------------------------------


@dataclass
class Cell:
    index: tuple  # per level: odd = sector, even = section (1-based stacks)
    dimension: int
    sample: list  # per level: Fraction or StackRoot
    signs: dict  # input poly id -> -1 | 0 | 1

    def is_section(self, level: int) -> bool:
        return self.index[level] % 2 == 0


@dataclass
class CADTree:
    order: tuple
    input_polys: list  # (pid, MultiPoly) in the full variable space
    projections: dict  # level -> list of MultiPoly
    cells: list  # leaf cells
    stacks: dict  # base index tuple -> list of child cell indices
    config: CADConfig


def _box_to_polys(box, order):
    """Box constraints as polynomials plus the admissible sign set per id."""
    polys = []
    conds = []
    for (varname, lo, hi) in box:
        v = MultiPoly.var(order, varname)
        if lo is not None:
            polys.append(v - MultiPoly.constant(order, Fraction(lo)))
            conds.append({0, 1})
        if hi is not None:
            polys.append(MultiPoly.constant(order, Fraction(hi)) - v)
            conds.append({0, 1})
    return polys, conds


def build_cad(polys, order, box=(), config: CADConfig = None):
    """Full sign-invariant decomposition for polynomials in the given order.

    order lists the variables base-first: cells are stacks over the base
    axis of order[0], lifted one variable at a time.  Box constraints are
    triples (var, lo, hi) (either bound may be None) whose polynomials join
    the input set so boundary cells appear explicitly.
    """
    config = config or CADConfig()
    order = tuple(order)
    box_polys, _ = _box_to_polys(box, order)
    inputs = []
    for p in list(polys) + box_polys:
        q = p.with_vars(order)
        prim, content = q.primitive_part()
        if content < 0:
            prim = -prim  # keep the sign of the polynomial as supplied
        inputs.append(prim)
    input_ids = list(enumerate(inputs))

    level_sets = {len(order): _normalise_set(inputs)}
    collins = False
    while True:
        try:
            sets = dict(level_sets)
            for lvl in range(len(order), 1, -1):
                var = order[lvl - 1]
                keep = tuple(order[: lvl - 1])
                proj = project([p.with_vars(order[:lvl]) for p in sets[lvl]], var, config, collins=collins)
                sets[lvl - 1] = [p.with_vars(keep) for p in proj]
            tree = _lift_all(input_ids, sets, order, config)
            return tree
        except NullificationError:
            if collins:
                raise
            collins = True


def _lift_all(input_ids, level_sets, order, config):
    n = len(order)
    cells = []
    stacks = {}

    def recurse(level, base_index, base_sample):
        config.check()
        var = order[level - 1]
        polys_here = [p.with_vars(order[:level]) for p in level_sets[level]]
        base_dim = sum(1 for k in base_index if k % 2 == 1)
        stack = _build_stack(polys_here, base_sample, order[:level], config, base_dim)
        stacks[tuple(base_index)] = []
        for pos, entry in enumerate(stack):
            idx = base_index + [pos + 1]
            sample = base_sample + [entry]
            stacks[tuple(base_index)].append(pos + 1)
            if level == n:
                signs = _full_signs(input_ids, sample, order, config)
                dim = sum(1 for k in idx if k % 2 == 1)
                cells.append(Cell(tuple(idx), dim, list(sample), signs))
            else:
                recurse(level + 1, idx, sample)

    recurse(1, [], [])
    return CADTree(order, input_ids, level_sets, cells, stacks, config)


def _build_stack(polys, base_sample, varnames, config, base_dim=0):
    """Sections and sectors of the product of polys over the base sample.

    Returns an ordered list alternating sector sample (Fraction), section
    (StackRoot), sector, ...  Sections carry the ids of the vanishing polys.
    A polynomial vanishing identically over a positive-dimensional base cell
    breaks delineability and raises NullificationError; over a point base
    cell it merely contributes no sections.
    """
    var = varnames[-1]
    roots = []
    specialised = []
    for pid, p in enumerate(polys):
        if p.degree_in(var) <= 0:
            continue  # free of the stack variable: no sections to contribute
        sp, kindinfo = _specialise(p, base_sample, varnames, config)
        specialised.append((pid, sp, kindinfo))
    # kindinfo is shared per-stack: all polys specialise over the same base.
    for pid, sp, kindinfo in specialised:
        try:
            roots.extend(_roots_of_specialised(pid, sp, kindinfo, config))
        except NullificationError:
            if base_dim > 0:
                raise
    merged = _merge_roots(roots)
    if not merged:
        return [Fraction(0)]
    # Refine consecutive sections until their intervals are disjoint.
    for a, b in zip(merged, merged[1:]):
        while not a.interval()[1] < b.interval()[0]:
            a.refine()
            b.refine()
    entries = []
    first_lo = merged[0].interval()[0]
    entries.append(rr.simplest_rational_between(first_lo - 1, first_lo))
    for i, root in enumerate(merged):
        entries.append(root)
        if i + 1 < len(merged):
            entries.append(rr.simplest_rational_between(root.interval()[1], merged[i + 1].interval()[0]))
        else:
            hi = root.interval()[1]
            entries.append(rr.simplest_rational_between(hi, hi + 1))
    return entries


def _specialise(p, base_sample, varnames, config):
    """Substitute the base sample into p and describe the residual setting.

    Returns (object, kindinfo) where kindinfo is ("rational",),
    ("ext", field, innervar) for one algebraic coordinate, or a primitive
    element reduction for two.
    """
    assign = {}
    alg = []
    for name, coord in zip(varnames[:-1], base_sample):
        if isinstance(coord, Fraction):
            assign[name] = coord
        elif isinstance(coord, StackRoot) and coord.exact is not None:
            assign[name] = coord.exact
        else:
            alg.append((name, coord))
    q = p.eval_partial(assign) if assign else p
    var = varnames[-1]
    if not alg:
        coeffs = [Fraction(0)] * (q.degree_in(var) + 1)
        vi = q.vars.index(var)
        for exps, c in q.terms.items():
            coeffs[exps[vi]] += Fraction(c)
        return coeffs, ("rational",)
    if len(alg) == 1:
        name, coord = alg[0]
        field = _field_of(coord)
        biv = q.with_vars((name, var))
        return (field, biv, name, var), ("ext", field)
    if len(alg) == 2:
        (n1, c1), (n2, c2) = alg
        field, a_in, b_in = _pair_field(c1, c2, config)
        # Map q(n1, n2, var) into Q(theta)[var].
        d = q.degree_in(var)
        vi = q.vars.index(var)
        i1 = q.vars.index(n1)
        i2 = q.vars.index(n2)
        coeffs = []
        for e in range(d + 1):
            acc = ()
            for exps, c in q.terms.items():
                if exps[vi] != e:
                    continue
                term = field.of_rational(Fraction(c))
                if exps[i1]:
                    term = field.mul(term, _ext_pow(field, a_in, exps[i1]))
                if exps[i2]:
                    term = field.mul(term, _ext_pow(field, b_in, exps[i2]))
                acc = field.add(acc, term)
            coeffs.append(acc)
        return (field, coeffs), ("ext", field)
    raise CADError("more than two algebraic base coordinates are out of scope")


def _ext_pow(field, elem, n):
    out = field.of_rational(1)
    base = elem
    while n:
        if n & 1:
            out = field.mul(out, base)
        base = field.mul(base, base)
        n >>= 1
    return out


def _field_of(root: StackRoot) -> ExtField:
    if root.kind == "algebraic":
        if not hasattr(root, "_field"):
            root._field = ExtField(root.data)
        return root._field
    if root.kind == "ext":
        raise CADError("nested extension fields need a primitive element first")
    raise CADError("rational coordinate needs no field")


_PAIR_CACHE = {}


def _pair_field(c1: StackRoot, c2: StackRoot, config):
    """Primitive-element field for a pair of algebraic coordinates."""
    key = (id(c1), id(c2))
    if key in _PAIR_CACHE:
        return _PAIR_CACHE[key]
    from .extfield import primitive_element

    a1 = c1.to_algebraic()
    if c2.kind == "ext":
        fld, coeffs, chain = c2.data
        terms = {}
        for j, c in enumerate(coeffs):
            for i, v in enumerate(c):
                if v:
                    terms[(i, j)] = terms.get((i, j), 0) + v
        p2 = MultiPoly(("x_pe", "y_pe"), terms)
        field, cc, a_in, b_in = primitive_element(a1, p2, "x_pe", "y_pe", c2)
    else:
        a2 = c2.to_algebraic()
        p2 = MultiPoly(("x_pe", "y_pe"), {(0, i): Fraction(v) for i, v in enumerate(a2.poly) if v})
        field, cc, a_in, b_in = primitive_element(a1, p2, "x_pe", "y_pe", c2)
    _PAIR_CACHE[key] = (field, a_in, b_in)
    return _PAIR_CACHE[key]


def _roots_of_specialised(pid, sp, kindinfo, config):
    if kindinfo[0] == "rational":
        coeffs = sp
        trimmed = [c for c in coeffs]
        while trimmed and not trimmed[-1]:
            trimmed.pop()
        if not trimmed:
            raise NullificationError(f"polynomial {pid} vanishes identically on a cell")
        if len(trimmed) == 1:
            return []
        return [StackRoot.from_algnum(a, (pid,)) for a in AlgebraicNumber.roots_of(trimmed)]
    field = kindinfo[1]
    if len(sp) == 4:
        field, biv, inner, var = sp
        coeffs = ext_poly_from_bivariate(field, biv, inner, var)
    else:
        field, coeffs = sp
        coeffs = ext_trim(field, list(coeffs))
    if not coeffs:
        raise NullificationError(f"polynomial {pid} vanishes identically on a cell")
    if len(coeffs) == 1:
        return []
    chain = ext_sturm_chain(field, coeffs)
    out = []
    for lo, hi in ext_isolate_roots(field, coeffs):
        out.append(StackRoot.from_ext(field, coeffs, chain, lo, hi, (pid,)))
    return out


def _merge_roots(roots):
    """Sort and merge equal roots from different polynomials."""
    ordered = []
    for root in roots:
        placed = False
        lo = 0
        hi = len(ordered)
        # Linear scan with exact comparison (stacks are small).
        for i, existing in enumerate(ordered):
            c = root.compare(existing)
            if c == 0:
                existing.vanishing |= root.vanishing
                if existing.exact is None and root.exact is not None:
                    existing.exact = root.exact
                    existing.lo = existing.hi = root.exact
                placed = True
                break
            if c < 0:
                ordered.insert(i, root)
                placed = True
                break
        if not placed:
            ordered.append(root)
    return ordered


def _full_signs(input_ids, sample, order, config):
    """Exact sign of every input polynomial at the completed sample."""
    signs = {}
    for pid, p in input_ids:
        signs[pid] = _sign_at_sample(p, sample, order)
    return signs


def _sign_at_sample(p: MultiPoly, sample, order) -> int:
    assign = {}
    alg = []
    for name, coord in zip(order, sample):
        if isinstance(coord, Fraction):
            assign[name] = coord
        elif isinstance(coord, StackRoot) and coord.exact is not None:
            assign[name] = coord.exact
        else:
            alg.append((name, coord))
    q = p.eval_partial(assign) if assign else p
    if not alg:
        c = q.constant_term()
        c = Fraction(c)
        return (c > 0) - (c < 0)
    if len(alg) == 1:
        name, coord = alg[0]
        coeffs = [Fraction(0)] * (q.degree_in(name) + 1)
        vi = q.vars.index(name)
        for exps, c in q.terms.items():
            coeffs[exps[vi]] += Fraction(c)
        return coord.sign_of_poly(coeffs)
    if len(alg) == 2:
        (n1, c1), (n2, c2) = alg
        if c2.kind == "ext" and c2.data[0] is getattr(c1, "_field", None):
            # c2 is a section over the extension anchored at c1.
            field = c2.data[0]
            biv = q.with_vars((n1, n2))
            coeffs = ext_poly_from_bivariate(field, biv, n1, n2)
            return c2.sign_of_poly(coeffs)
        field, a_in, b_in = _pair_field(c1, c2, None)
        acc = ()
        i1 = q.vars.index(n1)
        i2 = q.vars.index(n2)
        for exps, c in q.terms.items():
            term = field.of_rational(Fraction(c))
            if exps[i1]:
                term = field.mul(term, _ext_pow(field, a_in, exps[i1]))
            if exps[i2]:
                term = field.mul(term, _ext_pow(field, b_in, exps[i2]))
            acc = field.add(acc, term)
        return field.sign(acc)
    # Three algebraic coordinates: the third is a section root over the pair.
    (n1, c1), (n2, c2), (n3, c3) = alg
    if c3.kind != "ext":
        raise CADError("unexpected sample structure at depth three")
    field = c3.data[0]
    # Express q in Q(theta)[n3] using the pair mapping stored for (c1, c2).
    key = (id(c1), id(c2))
    if key not in _PAIR_CACHE:
        raise CADError("missing primitive element context for the base pair")
    _, a_in, b_in = _PAIR_CACHE[key]
    d = q.degree_in(n3)
    vi = q.vars.index(n3)
    i1 = q.vars.index(n1)
    i2 = q.vars.index(n2)
    coeffs = []
    for e in range(d + 1):
        acc = ()
        for exps, c in q.terms.items():
            if exps[vi] != e:
                continue
            term = field.of_rational(Fraction(c))
            if exps[i1]:
                term = field.mul(term, _ext_pow(field, a_in, exps[i1]))
            if exps[i2]:
                term = field.mul(term, _ext_pow(field, b_in, exps[i2]))
            acc = field.add(acc, term)
        coeffs.append(acc)
    return c3.sign_of_poly(coeffs)


def cells_satisfying(tree: CADTree, condition: dict):
    """Cells whose sign vector matches {pid: sign or set of signs}."""
    for pid in condition:
        if not any(pid == i for i, _ in tree.input_polys):
            raise CADError(f"unknown polynomial reference {pid}")
    out = []
    for cell in tree.cells:
        ok = True
        for pid, want in condition.items():
            got = cell.signs[pid]
            if isinstance(want, int):
                if got != want:
                    ok = False
                    break
            else:
                if got not in want:
                    ok = False
                    break
        if ok:
            out.append(cell)
    return out


def tree_to_json(tree: CADTree) -> dict:
    """Serialisable summary: cells with index, dimension, sample, signs."""
    cells = []
    for cell in tree.cells:
        sample = []
        for coord in cell.sample:
            if isinstance(coord, Fraction):
                sample.append({"rational": str(coord)})
            else:
                alg = coord.to_algebraic()
                if alg.exact is not None:
                    sample.append({"rational": str(alg.exact)})
                else:
                    sample.append(
                        {
                            "minpoly": [int(c) for c in alg.poly],
                            "interval": [str(alg.lo), str(alg.hi)],
                        }
                    )
        cells.append(
            {
                "index": list(cell.index),
                "dimension": cell.dimension,
                "sample": sample,
                "signs": {str(k): v for k, v in cell.signs.items()},
            }
        )
    return {
        "order": list(tree.order),
        "inputs": [repr(p) for _, p in tree.input_polys],
        "cells": cells,
    }


def summarize(tree: CADTree) -> dict:
    by_dim = {}
    for cell in tree.cells:
        by_dim[cell.dimension] = by_dim.get(cell.dimension, 0) + 1
    return {"cells": len(tree.cells), "by_dimension": dict(sorted(by_dim.items()))}
