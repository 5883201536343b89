"""Adjacency and topology extraction for decomposed semi-algebraic sets.

Sections over neighbouring base cells are matched by a certified probe: a
rational base point is chosen close enough to the boundary that no branch
can cross any of the separating levels of the target stack (all potential
crossings are roots of explicit univariate polynomials, so "close enough"
is exact).  Each branch then lands in exactly one band and its limit is the
unique section of the target stack inside that band.  The same device, one
level up, assembles the boundary cycles of the two-dimensional faces of a
well-based surface, which the quotient and classification machinery of the
cell-complex module then consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import realroots as rr
from .algnum import AlgebraicNumber
from .cad import CADError, CADTree, Cell, StackRoot, WellBasednessError, _build_stack
from .mpoly import MultiPoly
from .surfgraph import CellComplex


@dataclass
class Curve1Complex:
    """Vertices and arcs of a one-dimensional cell collection."""

    vertices: list  # cell index tuples
    arcs: list  # (cell index, endpoint index or None, endpoint index or None)

    def homeomorphism_type(self) -> str:
        if not self.arcs and len(self.vertices) == 1:
            return "point"
        if not self.arcs:
            return f"{len(self.vertices)} points"
        degree = {v: 0 for v in self.vertices}
        open_ends = 0
        for _, a, b in self.arcs:
            for end in (a, b):
                if end is None:
                    open_ends += 1
                else:
                    degree[end] += 1
        if open_ends:
            return "open arcs present"
        if not self._connected():
            return "disconnected"
        ones = sum(1 for d in degree.values() if d == 1)
        twos = sum(1 for d in degree.values() if d == 2)
        if ones == 2 and ones + twos == len(degree):
            return "closed interval"
        if ones == 0 and twos == len(degree) and degree:
            return "circle"
        return "other"

    def _connected(self) -> bool:
        if not self.arcs:
            return len(self.vertices) <= 1
        nodes = set(self.vertices) | {aid for aid, _, _ in self.arcs}
        adj = {n: set() for n in nodes}
        for aid, a, b in self.arcs:
            for end in (a, b):
                if end is not None:
                    adj[aid].add(end)
                    adj[end].add(aid)
        start = next(iter(nodes))
        seen = {start}
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen == nodes


def _level_polys(tree: CADTree, level: int):
    return [p.with_vars(tree.order[:level]) for p in tree.projections[level]]


def _cells_by_index(tree: CADTree):
    return {c.index: c for c in tree.cells}


def _base_root_of_section(tree: CADTree, cell_index, level: int):
    """The StackRoot of the section coordinate at the given level."""
    for cell in tree.cells:
        if cell.index[: level] == tuple(cell_index[: level]):
            coord = cell.sample[level - 1]
            return coord
    raise CADError("cell not found")


def _separators(roots):
    """Rational separators y_0 < gamma_1 < y_1 < ... < gamma_m < y_m."""
    if not roots:
        return [Fraction(0)]
    for a, b in zip(roots, roots[1:]):
        while not a.interval()[1] < b.interval()[0]:
            a.refine()
            b.refine()
    seps = []
    lo0 = roots[0].interval()[0]
    seps.append(rr.simplest_rational_between(lo0 - 1, lo0))
    for a, b in zip(roots, roots[1:]):
        seps.append(rr.simplest_rational_between(a.interval()[1], b.interval()[0]))
    hi = roots[-1].interval()[1]
    seps.append(rr.simplest_rational_between(hi, hi + 1))
    return seps


def _univ_roots(coeffs):
    c = [Fraction(x) for x in coeffs]
    while c and not c[-1]:
        c.pop()
    if len(c) <= 1:
        return []
    return AlgebraicNumber.roots_of(c)


def _first_event_after(alpha: StackRoot, polys_u, upper: Fraction):
    """A rational u* with alpha < u* < upper and u* below every root (> alpha)
    of the given univariate polynomials (coefficient lists)."""
    events = []
    for coeffs in polys_u:
        for root in _univ_roots(coeffs):
            if root.compare(Fraction(upper)) < 0:
                events.append(root)
    while True:
        alo, ahi = alpha.interval()
        cut = upper
        ok = True
        for ev in events:
            c = _compare_alg(ev, ahi)
            if c <= 0:
                # Event at or left of the current interval end: is it right
                # of alpha itself?
                if _root_gt_stackroot(ev, alpha):
                    alpha.refine()
                    ok = False
                    break
                continue
            lo_ev = ev.interval()[0]
            if lo_ev < cut:
                while ev.interval()[0] <= ahi:
                    ev.refine()
                cut = min(cut, ev.interval()[0])
        if not ok:
            continue
        if ahi < cut:
            return rr.simplest_rational_between(ahi, cut)
        alpha.refine()


def _compare_alg(a: AlgebraicNumber, q: Fraction) -> int:
    return a.compare(q)


def _root_gt_stackroot(ev: AlgebraicNumber, alpha: StackRoot) -> bool:
    # True if the event is strictly greater than alpha.
    while True:
        elo, ehi = ev.interval()
        alo, ahi = alpha.interval()
        if elo >= ahi:
            return True
        if ehi <= alo:
            return False
        # Overlap: they may be equal (an event at alpha itself is ignored).
        if alpha.kind == "algebraic" and alpha.data.compare(ev) == 0:
            return False
        if alpha.exact is not None and ev.compare(alpha.exact) == 0:
            return False
        ev.refine()
        alpha.refine()


def _stack_at_rational(tree: CADTree, level: int, base_sample):
    """Stack of the level polynomials over an arbitrary base sample."""
    polys = _level_polys(tree, level)
    return _build_stack(polys, list(base_sample), tree.order[:level], tree.config, base_dim=1)


def section_limits_into_stack(tree: CADTree, level: int, sector_base, probe_value,
                              target_roots):
    """Map each section branch over the probed base point to its limiting
    section (by index) in the target stack, through the band argument.

    Returns a dict {branch position (0-based among sections): target section
    position or None (escape)}.
    """
    probe_stack = _stack_at_rational(tree, level, list(sector_base) + [])
    # probe_stack built over sector_base with last coordinate = probe_value
    # handled by caller passing sector_base including it.
    sections = [e for e in probe_stack if isinstance(e, StackRoot)]
    seps = _separators(target_roots)
    out = {}
    for k, branch in enumerate(sections):
        band = None
        for j in range(len(seps) - 1):
            lo_s, hi_s = seps[j], seps[j + 1]
            if branch.compare_rational(lo_s) > 0 and branch.compare_rational(hi_s) < 0:
                band = j
                break
        out[k] = band
    return out


def curve_topology(tree: CADTree, cells):
    """One-complex of a collection of cells of dimension <= 1 in a 2-var CAD.

    Vertices are the dimension-0 cells, arcs the dimension-1 cells; arc
    endpoints are resolved by stack adjacency.  Ambiguous configurations
    raise WellBasednessError rather than guessing.
    """
    if tree.order is None or len(tree.order) != 2:
        raise CADError("curve_topology expects a two-variable decomposition")
    index_map = {c.index: c for c in cells}
    vertices = [c.index for c in cells if c.dimension == 0]
    arcs = []
    all_cells = _cells_by_index(tree)

    # Stack roots per base index, for targets.
    def stack_roots(base_pos):
        roots = []
        seen = set()
        for cell in tree.cells:
            if cell.index[0] == base_pos and cell.index[1] % 2 == 0:
                if cell.index not in seen:
                    seen.add(cell.index)
                    roots.append((cell.index, cell.sample[1]))
        roots.sort(key=lambda t: t[0][1])
        return roots

    level2 = _level_polys(tree, 2)

    for cell in cells:
        if cell.dimension != 1:
            continue
        i, j = cell.index
        if i % 2 == 1 and j % 2 == 0:
            # Section over a base sector: endpoints over base sections i-1, i+1.
            ends = []
            for direction in (-1, +1):
                target_pos = i + direction
                exists = any(c.index[0] == target_pos for c in tree.cells)
                if not exists:
                    ends.append(None)
                    continue
                end = _arc_end(tree, cell, direction, stack_roots(target_pos), level2)
                if end is not None and end not in index_map:
                    # The limit cell is not part of the requested collection.
                    end = None
                ends.append(end)
            arcs.append((cell.index, ends[0], ends[1]))
        elif i % 2 == 0 and j % 2 == 1:
            # Sector over a base section: vertical segment; endpoints are the
            # sections directly below and above in the same stack.
            below = (i, j - 1) if j - 1 >= 1 else None
            above = (i, j + 1) if any(c.index == (i, j + 1) for c in tree.cells) else None
            e1 = below if below in index_map else None
            e2 = above if above in index_map else None
            arcs.append((cell.index, e1, e2))
        else:
            raise CADError(f"cell {cell.index} is not one-dimensional")
    return Curve1Complex(vertices, arcs)


def _arc_end(tree: CADTree, cell, direction, target_roots, level2):
    """Endpoint cell index of a section arc toward the given direction.

    The arc is the section at stack position cell.index[1] over the base
    sector cell.index[0]; direction selects the base section at index[0] +- 1.
    Returns the full cell index of the limiting section, or None when the
    branch escapes every band of the target stack.
    """
    i, j = cell.index
    target_pos = i + direction
    alpha = None
    sector_sample = None
    for c in tree.cells:
        if c.index[0] == target_pos and alpha is None:
            alpha = c.sample[0]
        if c.index[0] == i and sector_sample is None:
            sector_sample = c.sample[0]
        if alpha is not None and sector_sample is not None:
            break
    if alpha is None or isinstance(alpha, Fraction):
        raise CADError("base neighbour of a sector must be a section")
    sector_sample = Fraction(sector_sample)
    roots_only = [s for _, s in target_roots]
    seps = _separators(roots_only)
    base_var, fiber_var = tree.order
    events = []
    for p in level2:
        for y in seps:
            q = p.eval_partial({fiber_var: y})
            coeffs = [Fraction(0)] * (q.degree_in(base_var) + 1)
            vi = q.vars.index(base_var)
            for exps, cc in q.terms.items():
                coeffs[exps[vi]] += Fraction(cc)
            events.append(coeffs)
    probe = _probe_near(alpha, events, sector_sample, direction)
    stack = _stack_at_rational(tree, 2, [probe])
    sections = [e for e in stack if isinstance(e, StackRoot)]
    pos_in_stack = (j // 2) - 1  # 0-based among sections
    if pos_in_stack < 0 or pos_in_stack >= len(sections):
        raise WellBasednessError(f"stack mismatch probing cell {cell.index}")
    branch = sections[pos_in_stack]
    band = None
    for bi in range(len(seps) - 1):
        if branch.compare_rational(seps[bi]) > 0 and branch.compare_rational(seps[bi + 1]) < 0:
            band = bi
            break
    if band is None:
        return None  # the branch escapes below or above the target stack
    target_index, _ = target_roots[band]
    return target_index


def _probe_near(alpha: StackRoot, events, sector_sample: Fraction, direction):
    """A rational probe strictly between the sector sample and alpha with no
    event root strictly between the probe and alpha.

    direction = +1 means alpha lies right of the sector (probe < alpha);
    direction = -1 means alpha lies left (probe > alpha).  Events are
    StackRoots (or coefficient lists, expanded to roots); events equal to
    alpha are immaterial and skipped.
    """
    expanded = []
    for ev in events:
        if isinstance(ev, StackRoot):
            expanded.append(ev)
        else:
            expanded.extend(StackRoot.from_algnum(a) for a in _univ_roots(ev))
    events = [ev for ev in expanded if _root_distinct_from(ev, alpha)]
    # Separate every event interval from alpha's interval.
    for ev in events:
        while True:
            elo, ehi = ev.interval()
            alo, ahi = alpha.interval()
            if ehi <= alo or elo >= ahi:
                break
            ev.refine()
            alpha.refine()
    while True:
        alo, ahi = alpha.interval()
        if direction == +1:
            win_lo, win_hi = sector_sample, alo
            for ev in events:
                elo, ehi = ev.interval()
                if ehi <= win_lo or elo >= win_hi:
                    continue
                win_lo = max(win_lo, ehi)
            if win_lo < win_hi:
                return rr.simplest_rational_between(win_lo, win_hi)
        else:
            win_lo, win_hi = ahi, sector_sample
            for ev in events:
                elo, ehi = ev.interval()
                if ehi <= win_lo or elo >= win_hi:
                    continue
                win_hi = min(win_hi, elo)
            if win_lo < win_hi:
                return rr.simplest_rational_between(win_lo, win_hi)
        alpha.refine()
        for ev in events:
            ev.refine()


def _root_distinct_from(ev, alpha: StackRoot) -> bool:
    if isinstance(ev, AlgebraicNumber):
        ev = StackRoot.from_algnum(ev)
    try:
        return ev.compare(alpha) != 0
    except CADError:
        pass
    # Mixed provenance: fall back to integer defining polynomials.
    a = ev.to_algebraic()
    b = alpha.to_algebraic()
    return a.compare(b) != 0


def _coord_rational(coord):
    """Fraction value of a sample coordinate if it is exact, else None."""
    if isinstance(coord, Fraction):
        return coord
    if isinstance(coord, StackRoot) and coord.exact is not None:
        return coord.exact
    return None


# ---------------------------------------------------------------------------
# Three-variable zero-set assembly.
#
# The zero set of a well-based surface inside a box decomposes into the CAD
# section cells over the base decomposition.  Incidence between a face and
# the cells over the boundary of its base cell is certified with the same
# probe-and-band device used for curves, applied fibre-wise.  Orientation
# data is never needed downstream: the classification questions asked here
# (sphere, disc) are decided by Euler characteristic, connectivity and
# boundary-circle counts alone.
# ---------------------------------------------------------------------------


@dataclass
class SurfacePiece:
    """Zero cells of one sign condition, with certified incidence."""

    cells: dict  # index -> Cell (dims 0, 1, 2)
    incidence: set  # (higher index, lower index) closure pairs
    quotient_groups: dict  # index -> group id for identified cells

    def faces(self):
        return [i for i, c in self.cells.items() if c.dimension == 2]

    def edges(self):
        return [i for i, c in self.cells.items() if c.dimension == 1]

    def points(self):
        return [i for i, c in self.cells.items() if c.dimension == 0]

    def euler_characteristic(self) -> int:
        groups = {g for g in self.quotient_groups.values()}
        in_groups = set(self.quotient_groups)
        v = sum(1 for i in self.points() if i not in in_groups) + len(groups)
        e = sum(1 for i in self.edges() if i not in in_groups)
        f = sum(1 for i in self.faces() if i not in in_groups)
        return v - e + f

    def _face_count_of_edge(self, eidx):
        return sum(1 for (hi, lo) in self.incidence if lo == eidx and self.cells[hi].dimension == 2)

    def boundary_edges(self):
        return [e for e in self.edges() if e not in self.quotient_groups and self._face_count_of_edge(e) == 1]

    def validate_two_face_rule(self):
        """Every interior edge must meet exactly two faces; returns violations."""
        bad = []
        for e in self.edges():
            if e in self.quotient_groups:
                continue
            n = self._face_count_of_edge(e)
            if n > 2 or n == 0:
                bad.append((e, n))
        return bad

    def connected(self) -> bool:
        keys = [i for i in self.cells if i not in self.quotient_groups]
        groups = {}
        for idx, g in self.quotient_groups.items():
            groups.setdefault(g, []).append(idx)
        nodes = set(keys) | set(groups)
        if not nodes:
            return True
        adj = {n: set() for n in nodes}

        def node_of(idx):
            return self.quotient_groups.get(idx, idx)

        for hi, lo in self.incidence:
            a, b = node_of(hi), node_of(lo)
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        start = next(iter(nodes))
        seen = {start}
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen == nodes

    def boundary_circle_count(self) -> int:
        """Components of the boundary graph (boundary edges and their ends)."""
        bedges = self.boundary_edges()
        if not bedges:
            return 0
        nodes = set()
        adj = {}

        def node_of(idx):
            return self.quotient_groups.get(idx, idx)

        for e in bedges:
            en = node_of(e)
            nodes.add(en)
            adj.setdefault(en, set())
            for hi, lo in self.incidence:
                if hi == e and self.cells[lo].dimension == 0:
                    vn = node_of(lo)
                    nodes.add(vn)
                    adj.setdefault(vn, set()).add(en)
                    adj[en].add(vn)
        start = next(iter(nodes))
        count = 0
        seen = set()
        for n in nodes:
            if n in seen:
                continue
            count += 1
            frontier = [n]
            seen.add(n)
            while frontier:
                cur = frontier.pop()
                for nxt in adj.get(cur, ()):
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
        return count

    def classify_closed_or_disc(self) -> str:
        """"sphere", "disc", or a descriptive label, from chi and boundary."""
        if not self.connected():
            return "disconnected"
        chi = self.euler_characteristic()
        nb = self.boundary_circle_count()
        if nb == 0 and chi == 2:
            return "sphere"
        if nb == 1 and chi == 1:
            return "disc"
        return f"chi={chi}, boundary_circles={nb}"


def _zero_cells_3d(tree: CADTree, zero_pid: int, box_pids):
    out = {}
    for cell in tree.cells:
        if cell.signs[zero_pid] != 0:
            continue
        if any(cell.signs[b] < 0 for b in box_pids):
            continue
        out[cell.index] = cell
    return out


def surface_topology(tree: CADTree, zero_pid: int, box_pids=(), identify=None) -> SurfacePiece:
    """Incidence complex of the zero set of one input polynomial in a box.

    identify: optional callable Cell -> group id (or None) applied as a
    post-pass; all cells in one group are collapsed to a single vertex (the
    polar-seam quotient).  Raises WellBasednessError when a probe cannot
    certify an incidence.
    """
    if len(tree.order) != 3:
        raise CADError("surface_topology expects a three-variable decomposition")
    cells = _zero_cells_3d(tree, zero_pid, box_pids)
    incidence = set()

    by_base = {}
    for idx in cells:
        by_base.setdefault((idx[0], idx[1]), []).append(idx)

    for idx, cell in cells.items():
        i, j, k = idx
        bdim = (i % 2) + (j % 2)
        if bdim == 0 or cell.dimension == 0:
            continue
        # Neighbouring base cells one dimension down.
        for nb in _base_neighbours(tree, (i, j)):
            target = _fiber_limit(tree, cells, idx, nb)
            if target is not None:
                incidence.add((idx, target))
    # Close incidence transitively through dimensions (face > edge > point).
    more = True
    while more:
        more = False
        for (a, b) in list(incidence):
            for (c, d) in list(incidence):
                if b == c and (a, d) not in incidence:
                    incidence.add((a, d))
                    more = True
    groups = {}
    if identify is not None:
        for idx, cell in cells.items():
            g = identify(cell)
            if g is not None:
                groups[idx] = ("quotient", g)
    return SurfacePiece(cells, incidence, groups)


def _base_neighbours(tree: CADTree, base):
    """Base cells one dimension lower meeting the closure of `base`."""
    i, j = base
    out = []
    all_bases = {(c.index[0], c.index[1]) for c in tree.cells}
    if i % 2 == 1 and j % 2 == 1:
        for cand in ((i, j - 1), (i, j + 1)):
            if cand in all_bases:
                out.append(cand)
        # Wall cells: every stack cell over the neighbouring base sections
        # whose closure could meet this sector; certified later fibre-wise.
        for ii in (i - 1, i + 1):
            for cand in sorted(b for b in all_bases if b[0] == ii):
                out.append(cand)
    elif i % 2 == 1 and j % 2 == 0:
        for ii in (i - 1, i + 1):
            for cand in sorted(b for b in all_bases if b[0] == ii and b[1] % 2 == 0):
                out.append(cand)
    elif i % 2 == 0 and j % 2 == 1:
        for cand in ((i, j - 1), (i, j + 1)):
            if cand in all_bases:
                out.append(cand)
    return out


def _fiber_limit(tree: CADTree, cells, face_idx, nb_base):
    """The cell of `cells` that the fibre section face_idx limits onto over
    the neighbouring base cell, or None."""
    i, j, k = face_idx
    ni, nj = nb_base
    targets = sorted(idx for idx in cells if (idx[0], idx[1]) == nb_base)
    if not targets:
        return None
    try:
        probe = _probe_pair(tree, (i, j), nb_base)
    except WellBasednessError:
        raise
    if probe is None:
        return None
    # Lift the full stack at the probe and locate branch k's band against the
    # target stack roots.
    stack = _stack_at_rational(tree, 3, list(probe))
    sections = [e for e in stack if isinstance(e, StackRoot)]
    pos = (k // 2) - 1
    if pos < 0 or pos >= len(sections):
        raise WellBasednessError(f"stack mismatch probing {face_idx} toward {nb_base}")
    branch = sections[pos]
    troots = []
    for idx in sorted(t for t in {c.index for c in tree.cells} if (t[0], t[1]) == nb_base and t[2] % 2 == 0):
        for c in tree.cells:
            if c.index == idx:
                troots.append((idx, c.sample[2]))
                break
    seps = _separators([r for _, r in troots])
    band = None
    for bi in range(len(seps) - 1):
        if branch.compare_rational(seps[bi]) > 0 and branch.compare_rational(seps[bi + 1]) < 0:
            band = bi
            break
    if band is None:
        return None
    idx = troots[band][0]
    return idx if idx in cells else None


def _probe_pair(tree: CADTree, from_base, to_base):
    """A rational base point inside from_base, close enough to to_base that
    no fibre branch crosses a separating level on the way.

    Returns (u, v) rationals, or None if the two base cells do not touch.
    """
    fi, fj = from_base
    ti, tj = to_base
    order = tree.order
    base_cells = {}
    for c in tree.cells:
        base_cells.setdefault((c.index[0], c.index[1]), c)
    src = base_cells[from_base]
    dst = base_cells[to_base]
    level3 = _level_polys(tree, 3)

    troots = []
    for c in tree.cells:
        if (c.index[0], c.index[1]) == to_base and c.index[2] % 2 == 0:
            troots.append(c.sample[2])
    seps = _separators(troots)

    if fi == ti:
        # Shared level-1 coordinate; approach along the fibre of order[1].
        u_coord = src.sample[0]
        u = _coord_rational(u_coord)
        zeta = dst.sample[1]
        zeta_root = StackRoot.rational(zeta) if isinstance(zeta, Fraction) else zeta
        direction = +1 if tj > fj else -1
        sector_sample = _coord_rational(src.sample[1])
        if sector_sample is None:
            raise WellBasednessError("expected a sector sample on the source base cell")
        if u is not None:
            events = []
            for p in level3:
                for t_cut in seps:
                    q = p.eval_partial({order[0]: u, order[2]: t_cut})
                    coeffs = [Fraction(0)] * (q.degree_in(order[1]) + 1)
                    vi = q.vars.index(order[1])
                    for exps, cc in q.terms.items():
                        coeffs[exps[vi]] += Fraction(cc)
                    events.append(coeffs)
            probe_v = _probe_near(zeta_root, events, sector_sample, direction)
            return (u, probe_v)
        # Algebraic shared base coordinate: isolate the event roots over
        # Q(alpha) and probe with the same band argument.
        if not isinstance(u_coord, StackRoot) or u_coord.kind != "algebraic":
            raise WellBasednessError("cannot probe along this shared base coordinate")
        from .cad import _field_of
        from .extfield import ext_isolate_roots, ext_poly_from_bivariate, ext_sturm_chain, ext_trim

        field = _field_of(u_coord)
        events = []
        for p in level3:
            for t_cut in seps:
                q = p.eval_partial({order[2]: t_cut}).with_vars((order[0], order[1]))
                coeffs = ext_poly_from_bivariate(field, q, order[0], order[1])
                coeffs = ext_trim(field, coeffs)
                if len(coeffs) <= 1:
                    continue
                chain = ext_sturm_chain(field, coeffs)
                for lo, hi in ext_isolate_roots(field, coeffs):
                    events.append(StackRoot.from_ext(field, coeffs, chain, lo, hi))
        probe_v = _probe_near(zeta_root, events, sector_sample, direction)
        return (u_coord, probe_v)
    # Wall case: approach along order[0] toward the level-1 section.
    alpha = dst.sample[0]
    if isinstance(alpha, Fraction):
        alpha = StackRoot.rational(alpha)
    sector_u = src.sample[0]
    if not isinstance(sector_u, Fraction):
        raise WellBasednessError("expected a rational sector sample at level 1")
    # Choose a height v shared by both base cells near the wall.
    v = _shared_height(tree, from_base, to_base)
    if v is None:
        return None
    events = []
    for p in level3:
        for t_cut in seps:
            q = p.eval_partial({order[1]: v, order[2]: t_cut})
            coeffs = [Fraction(0)] * (q.degree_in(order[0]) + 1)
            vi = q.vars.index(order[0])
            for exps, cc in q.terms.items():
                coeffs[exps[vi]] += Fraction(cc)
            events.append(coeffs)
    # Also respect the base-level crossings so the probe stays in from_base.
    level2 = _level_polys(tree, 2)
    for p in level2:
        q = p.eval_partial({order[1]: v})
        coeffs = [Fraction(0)] * (q.degree_in(order[0]) + 1)
        vi = q.vars.index(order[0])
        for exps, cc in q.terms.items():
            coeffs[exps[vi]] += Fraction(cc)
        events.append(coeffs)
    direction = +1 if ti > fi else -1
    probe_u = _probe_near(alpha, events, sector_u, direction)
    return (probe_u, v)


def _shared_height(tree: CADTree, from_base, to_base):
    """A rational order[1]-value lying in both base cells' closures near the
    wall: inside the source sector band and inside (or at) the target cell.

    For a target sector, any rational in the overlap works; for a target
    section with rational value, that value's band in the source must
    contain it.  Non-rational target sections are approached through their
    isolating intervals.
    """
    src = None
    dst = None
    for c in tree.cells:
        if (c.index[0], c.index[1]) == from_base and src is None:
            src = c
        if (c.index[0], c.index[1]) == to_base and dst is None:
            dst = c
    v_src = src.sample[1]
    v_dst = dst.sample[1]
    if isinstance(v_dst, Fraction):
        return v_dst
    if isinstance(v_dst, StackRoot) and v_dst.exact is not None:
        return v_dst.exact
    # Use a rational inside the target's isolating interval; correctness of
    # the probe only needs the height to stay inside the source cell's band
    # along the approach, which the event polynomials enforce.
    lo, hi = v_dst.interval()
    return rr.simplest_rational_between(lo, hi)
