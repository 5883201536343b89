"""Pseudo-surfaces and their classification graphs.

A cell complex here is finite CW data with 0-, 1- and 2-cells where exactly
two face traversals pass through every edge (a face may traverse the same
edge twice, with opposite orientation flags).  Vertices whose link graph
has more than one cycle are the isolated topological singularities; pulling
them apart (resolution) leaves a disjoint union of closed surfaces, which
the classification theorem labels by orientability and Euler
characteristic.  The classification graph records those labels together
with one node per singular point, linked once for every local sheet.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ComplexError(ValueError):
    pass


@dataclass
class CellComplex:
    """vertices: set of ids; edges: id -> (v, w) (possibly v == w);
    faces: id -> boundary cycle [(edge_id, +1 | -1), ...] traversed in order."""

    vertices: set
    edges: dict
    faces: dict

    def copy(self):
        return CellComplex(set(self.vertices), dict(self.edges), {f: list(b) for f, b in self.faces.items()})

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def validate(self):
        """Reference integrity plus the two-traversals-per-edge rule.

        Returns None when valid; otherwise the offending edge or face id.
        """
        for eid, (v, w) in self.edges.items():
            if v not in self.vertices or w not in self.vertices:
                return eid
        counts = {eid: 0 for eid in self.edges}
        for fid, boundary in self.faces.items():
            if not boundary:
                return fid
            # The boundary must close up as a walk.
            walk = self._walk(fid)
            if walk is None:
                return fid
            for eid, flag in boundary:
                if eid not in self.edges or flag not in (1, -1):
                    return fid
                counts[eid] += 1
        for eid, c in counts.items():
            if c != 2:
                return eid
        return None

    def is_valid(self) -> bool:
        return self.validate() is None

    def _walk(self, fid):
        """Vertex sequence of a face boundary, or None if it does not chain."""
        boundary = self.faces[fid]
        verts = []
        for eid, flag in boundary:
            v, w = self.edges[eid]
            tail, head = (v, w) if flag == 1 else (w, v)
            verts.append((tail, head))
        for (t1, h1), (t2, h2) in zip(verts, verts[1:] + verts[:1]):
            if h1 != t2:
                return None
        return verts

    def corners_at(self, v):
        """Face corners at v: pairs of edge-ends joined by a face passage."""
        out = []
        for fid, boundary in self.faces.items():
            walk = self._walk(fid)
            n = len(boundary)
            for i in range(n):
                eid1, flag1 = boundary[i]
                eid2, flag2 = boundary[(i + 1) % n]
                shared = walk[i][1]
                if shared == v:
                    end1 = (eid1, 1 if flag1 == 1 else 0)  # arriving end of e1
                    end2 = (eid2, 0 if flag2 == 1 else 1)  # departing end of e2
                    out.append((end1, end2, fid))
        return out

    def edge_ends_at(self, v):
        ends = []
        for eid, (a, b) in self.edges.items():
            if a == v:
                ends.append((eid, 0))
            if b == v:
                ends.append((eid, 1))
        return ends


@dataclass
class LinkGraph:
    """The cycles of edge-ends around a vertex; n = number of cycles."""

    vertex: object
    cycles: list  # list of lists of edge-ends (eid, end)

    @property
    def n(self) -> int:
        return len(self.cycles)


def link_graph(complex_: CellComplex, v) -> LinkGraph:
    """Cycle structure of the edge-ends and face corners at v.

    The link is a 2-regular multigraph (each edge end sits in exactly two
    face corners), so it decomposes into disjoint cycles; the walk below
    follows corners rather than nodes to stay correct with multi-edges and
    corner self-loops.
    """
    ends = complex_.edge_ends_at(v)
    corners = [(end1, end2) for end1, end2, _ in complex_.corners_at(v)]
    at = {e: [] for e in ends}
    for idx, (a, b) in enumerate(corners):
        at[a].append(idx)
        at[b].append(idx)
    for e, lst in at.items():
        if len(lst) != 2:
            raise ComplexError(f"edge end {e} at vertex {v} sits in {len(lst)} corners, not 2")
    used = [False] * len(corners)
    cycles = []
    for start_idx in sorted(range(len(corners)), key=lambda i: repr(corners[i])):
        if used[start_idx]:
            continue
        cyc = []
        cur_end = corners[start_idx][0]
        cur_corner = start_idx
        while not used[cur_corner]:
            used[cur_corner] = True
            cyc.append(cur_end)
            a, b = corners[cur_corner]
            nxt_end = b if cur_end == a else a
            c1, c2 = at[nxt_end]
            nxt_corner = c2 if c1 == cur_corner else c1
            cur_end, cur_corner = nxt_end, nxt_corner
        cycles.append(cyc)
    return LinkGraph(v, cycles)


def resolve(complex_: CellComplex, v) -> CellComplex:
    """Split v into one vertex per link cycle (unglue the local sheets)."""
    lg = link_graph(complex_, v)
    if lg.n <= 1:
        return complex_.copy()
    out = complex_.copy()
    out.vertices.discard(v)
    end_to_part = {}
    for i, cycle in enumerate(lg.cycles):
        new_v = (v, "part", i)
        out.vertices.add(new_v)
        for end in cycle:
            end_to_part[end] = new_v
    for eid, (a, b) in list(out.edges.items()):
        na, nb = a, b
        if a == v:
            na = end_to_part[(eid, 0)]
        if b == v:
            nb = end_to_part[(eid, 1)]
        out.edges[eid] = (na, nb)
    return out


def resolve_all(complex_: CellComplex) -> CellComplex:
    out = complex_
    for v in list(complex_.vertices):
        lg = link_graph(out, v) if v in out.vertices else None
        if lg is not None and lg.n > 1:
            out = resolve(out, v)
    return out


def euler_characteristic(complex_: CellComplex) -> int:
    return complex_.euler_characteristic()


def orientability(complex_: CellComplex) -> bool:
    """Face orientations propagate consistently iff the surface is orientable.

    Requires a resolved complex (every vertex link a single cycle); works
    per connected component of the face-adjacency graph.
    """
    traversals = {}
    for fid, boundary in complex_.faces.items():
        for eid, flag in boundary:
            traversals.setdefault(eid, []).append((fid, flag))
    flip = {fid: None for fid in complex_.faces}
    for start in complex_.faces:
        if flip[start] is not None:
            continue
        flip[start] = 1
        frontier = [start]
        while frontier:
            f = frontier.pop()
            for eid, flag in complex_.faces[f]:
                pair = traversals[eid]
                if len(pair) != 2:
                    raise ComplexError(f"edge {eid} does not meet exactly two traversals")
                (f1, o1), (f2, o2) = pair
                if f1 == f2:
                    # One face passes twice: orientable only if opposite.
                    if o1 == o2:
                        return False
                    continue
                other, oo = (f2, o2) if f1 == f else (f1, o1)
                mine = o1 if f1 == f else o2
                # Consistency: flip[f] * mine = -flip[other] * oo.
                needed = -flip[f] * mine * oo
                if flip[other] is None:
                    flip[other] = needed
                    frontier.append(other)
                elif flip[other] != needed:
                    return False
    return True


def connected_components(complex_: CellComplex):
    """Components of the space minus the vertices: faces and edges linked by
    face passage (edges shared by faces)."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for eid in complex_.edges:
        parent[("e", eid)] = ("e", eid)
    for fid in complex_.faces:
        parent[("f", fid)] = ("f", fid)
    for fid, boundary in complex_.faces.items():
        for eid, _ in boundary:
            union(("f", fid), ("e", eid))
    groups = {}
    for key in parent:
        groups.setdefault(find(key), set()).add(key)
    return list(groups.values())


@dataclass
class SurfaceGraph:
    """Classification graph: surface nodes and singularity nodes with links."""

    surface_nodes: list  # (node_id, {"orientable": bool, "chi": int, "label": str})
    singular_nodes: list  # node ids
    links: list  # (singular_node, surface_node) with multiplicity by repetition

    def to_dot(self) -> str:
        lines = ["graph classification {"]
        for nid, attrs in self.surface_nodes:
            lines.append(f'  "{nid}" [label="{attrs["label"]}"];')
        for nid in self.singular_nodes:
            lines.append(f'  "{nid}" [label="sing", shape=circle];')
        for a, b in self.links:
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines)


def surface_label(orientable: bool, chi: int) -> str:
    if orientable:
        g2 = 2 - chi
        if g2 % 2:
            raise ComplexError(f"orientable component with odd 2-chi: chi={chi}")
        return f"Sigma_{g2 // 2}"
    c = 2 - chi
    if c < 1:
        raise ComplexError(f"non-orientable component needs chi <= 1: chi={chi}")
    return f"Theta_{c}"


def classify(complex_: CellComplex) -> SurfaceGraph:
    """The classification graph of a valid pseudo-surface."""
    bad = complex_.validate()
    if bad is not None:
        raise ComplexError(f"complex fails validation at {bad!r}")
    links_by_vertex = {v: link_graph(complex_, v) for v in complex_.vertices}
    singular = [v for v, lg in links_by_vertex.items() if lg.n >= 2]
    resolved = complex_
    for v in singular:
        resolved = resolve(resolved, v)
    comps = connected_components(resolved)
    # Attach resolved vertices to components through their edges.
    comp_of_edge = {}
    for i, comp in enumerate(comps):
        for kind, cid in comp:
            if kind == "e":
                comp_of_edge[cid] = i
    chi_data = []
    for i, comp in enumerate(comps):
        edges = {cid for kind, cid in comp if kind == "e"}
        faces = {cid for kind, cid in comp if kind == "f"}
        verts = set()
        for eid in edges:
            a, b = resolved.edges[eid]
            verts.add(a)
            verts.add(b)
        sub = CellComplex(verts, {e: resolved.edges[e] for e in edges}, {f: resolved.faces[f] for f in faces})
        chi = sub.euler_characteristic()
        orient = orientability(sub)
        chi_data.append((i, orient, chi))
    surface_nodes = []
    for i, orient, chi in chi_data:
        label = surface_label(orient, chi)
        surface_nodes.append((f"S{i}", {"orientable": orient, "chi": chi, "label": label}))
    singular_nodes = []
    glinks = []
    for v in singular:
        nid = f"sing:{v!r}"
        singular_nodes.append(nid)
        for cycle in links_by_vertex[v].cycles:
            eid, _ = cycle[0]
            comp = comp_of_edge[eid]
            glinks.append((nid, f"S{comp}"))
    return SurfaceGraph(surface_nodes, singular_nodes, glinks)


# ---------------------------------------------------------------------------
# Construction helpers.
# ---------------------------------------------------------------------------


def glue_vertices(complex_: CellComplex, v1, v2, new_name=None) -> CellComplex:
    """Identify two vertices (the 'glue n points' construction)."""
    out = complex_.copy()
    name = new_name if new_name is not None else ("glued", v1, v2)
    out.vertices.discard(v1)
    out.vertices.discard(v2)
    out.vertices.add(name)
    for eid, (a, b) in list(out.edges.items()):
        na = name if a in (v1, v2) else a
        nb = name if b in (v1, v2) else b
        out.edges[eid] = (na, nb)
    return out


def two_triangle_sphere() -> CellComplex:
    edges = {"e12": (1, 2), "e23": (2, 3), "e13": (1, 3)}
    faces = {
        "top": [("e12", 1), ("e23", 1), ("e13", -1)],
        "bottom": [("e13", 1), ("e23", -1), ("e12", -1)],
    }
    return CellComplex({1, 2, 3}, edges, faces)


def square_torus() -> CellComplex:
    """Two-vertex, four-edge, two-face torus: the a b a^-1 b^-1 square with
    its diagonal subdivided at a second vertex."""
    edges = {"a": ("P", "P"), "b": ("P", "P"), "d1": ("P", "Q"), "d2": ("Q", "P")}
    faces = {
        "F1": [("a", 1), ("b", 1), ("d2", -1), ("d1", -1)],
        "F2": [("d1", 1), ("d2", 1), ("a", -1), ("b", -1)],
    }
    return CellComplex({"P", "Q"}, edges, faces)


def one_face_torus() -> CellComplex:
    """Single square with a b a^-1 b^-1 boundary; valid in this encoding."""
    edges = {"a": ("v", "v"), "b": ("v", "v")}
    faces = {"F": [("a", 1), ("b", 1), ("a", -1), ("b", -1)]}
    return CellComplex({"v"}, edges, faces)


def klein_bottle() -> CellComplex:
    """Two-vertex, four-edge, two-face Klein bottle: the torus square with
    one gluing direction reversed."""
    edges = {"a": ("P", "P"), "b": ("P", "P"), "d1": ("P", "Q"), "d2": ("Q", "P")}
    faces = {
        "F1": [("a", 1), ("b", 1), ("d2", -1), ("d1", -1)],
        "F2": [("d1", 1), ("d2", 1), ("a", 1), ("b", -1)],
    }
    return CellComplex({"P", "Q"}, edges, faces)


def fermat_complex() -> CellComplex:
    """The 27-vertex, 72-edge, 36-face decomposition of the Fermat cubic's
    discriminant locus, built from the face boundary rules

        d f+(i,j) = x(i,j+1) + a(i,(j+1)-) + a(i+1,j+) + y(i,j)
        d f-(i,j) = x(i,j)   + a(i,j+)     + a(i+1,(j+1)-) + y(i,j+1)

    with i mod 6 and j mod 3; edge endpoints follow the printed link cycles:
    x(i,j): U(i,j)-V(i); y(i,j): U(i+1,j)-V(i); a(i,j+): U(i,j)-T(j);
    a(i,j-): U(i,j)-T(j-1).
    """
    vertices = set()
    edges = {}
    for i in range(6):
        vertices.add(("V", i))
        for j in range(3):
            vertices.add(("U", i, j))
    for j in range(3):
        vertices.add(("T", j))
    for i in range(6):
        for j in range(3):
            edges[("x", i, j)] = (("U", i, j), ("V", i))
            edges[("y", i, j)] = (("U", (i + 1) % 6, j), ("V", i))
            edges[("a", i, j, "+")] = (("U", i, j), ("T", j))
            edges[("a", i, j, "-")] = (("U", i, j), ("T", (j - 1) % 3))
    faces = {}
    for i in range(6):
        for j in range(3):
            j1 = (j + 1) % 3
            i1 = (i + 1) % 6
            # f+(i,j): V(i) -> U(i,j+1) -> T(j) -> U(i+1,j) -> V(i)
            faces[("f+", i, j)] = [
                (("x", i, j1), -1),
                (("a", i, j1, "-"), 1),
                (("a", i1, j, "+"), -1),
                (("y", i, j), 1),
            ]
            # f-(i,j): V(i) -> U(i,j) -> T(j) -> U(i+1,j+1) -> V(i)
            faces[("f-", i, j)] = [
                (("x", i, j), -1),
                (("a", i, j, "+"), 1),
                (("a", i1, j1, "-"), -1),
                (("y", i, j1), 1),
            ]
    return CellComplex(vertices, edges, faces)


def barycentric_subdivision(complex_: CellComplex) -> CellComplex:
    """Standard subdivision: midpoints on edges, a centre in each face."""
    out_vertices = set(complex_.vertices)
    out_edges = {}
    out_faces = {}
    for eid in complex_.edges:
        out_vertices.add(("mid", eid))
    for eid, (a, b) in complex_.edges.items():
        out_edges[("half", eid, 0)] = (a, ("mid", eid))
        out_edges[("half", eid, 1)] = (("mid", eid), b)
    for fid, boundary in complex_.faces.items():
        centre = ("centre", fid)
        out_vertices.add(centre)
        walk = complex_._walk(fid)
        n = len(boundary)
        for pos in range(n):
            eid, flag = boundary[pos]
            tail, head = walk[pos]
            out_edges[("spoke", fid, pos)] = (centre, tail)
        for pos in range(n):
            eid, flag = boundary[pos]
            tail, head = walk[pos]
            nxt = (pos + 1) % n
            first_half = ("half", eid, 0) if flag == 1 else ("half", eid, 1)
            second_half = ("half", eid, 1) if flag == 1 else ("half", eid, 0)
            out_edges.setdefault(("radius", fid, pos), (centre, ("mid", eid)))
            # Triangle A: centre -> tail -> mid -> centre
            out_faces[("tri", fid, pos, 0)] = [
                (("spoke", fid, pos), 1),
                (first_half, flag),
                (("radius", fid, pos), -1),
            ]
            # Triangle B: centre -> mid -> head -> centre
            out_faces[("tri", fid, pos, 1)] = [
                (("radius", fid, pos), 1),
                (second_half, flag),
                (("spoke", fid, nxt), -1),
            ]
    return CellComplex(out_vertices, out_edges, out_faces)


def chi_relation_check(chi_d: int, chi_t: int) -> bool:
    """The branched-cover Euler relation for cubic surfaces."""
    return chi_d == -3 - chi_t


def complex_to_json(complex_: CellComplex) -> dict:
    return {
        "vertices": [repr(v) for v in sorted(complex_.vertices, key=repr)],
        "edges": {repr(e): [repr(a), repr(b)] for e, (a, b) in sorted(complex_.edges.items(), key=lambda kv: repr(kv[0]))},
        "faces": {
            repr(f): [[repr(e), o] for e, o in b]
            for f, b in sorted(complex_.faces.items(), key=lambda kv: repr(kv[0]))
        },
    }
