import pytest

from twistordisc.surfgraph import (
    CellComplex,
    barycentric_subdivision,
    chi_relation_check,
    classify,
    complex_to_json,
    fermat_complex,
    glue_vertices,
    klein_bottle,
    link_graph,
    one_face_torus,
    orientability,
    resolve,
    square_torus,
    two_triangle_sphere,
)


class TestValidate:
    def test_sphere_is_valid(self):
        assert two_triangle_sphere().validate() is None

    def test_lone_triangle_fails(self):
        c = CellComplex({1, 2, 3}, {"a": (1, 2), "b": (2, 3), "c": (1, 3)},
                        {"f": [("a", 1), ("b", 1), ("c", -1)]})
        assert c.validate() is not None

    def test_one_face_torus_counts_traversals(self):
        assert one_face_torus().validate() is None

    def test_fermat_complex_is_valid(self):
        assert fermat_complex().validate() is None


class TestEuler:
    def test_sphere(self):
        assert two_triangle_sphere().euler_characteristic() == 2

    def test_torus_complexes(self):
        assert square_torus().euler_characteristic() == 0
        assert one_face_torus().euler_characteristic() == 0

    def test_fermat(self):
        c = fermat_complex()
        assert len(c.vertices) == 27
        assert len(c.edges) == 72
        assert len(c.faces) == 36
        assert c.euler_characteristic() == -9

    def test_chi_relation(self):
        assert chi_relation_check(-9, 6)
        assert chi_relation_check(-3, 0)
        assert not chi_relation_check(-9, 5)


class TestLinkGraphs:
    def test_fermat_links(self):
        c = fermat_complex()
        lg_u = link_graph(c, ("U", 0, 0))
        assert lg_u.n == 1
        assert len(lg_u.cycles[0]) == 4
        lg_v = link_graph(c, ("V", 0))
        assert lg_v.n == 1
        assert len(lg_v.cycles[0]) == 6
        lg_t = link_graph(c, ("T", 0))
        assert lg_t.n == 2
        assert sorted(len(cyc) for cyc in lg_t.cycles) == [6, 6]

    def test_u_cycle_members(self):
        c = fermat_complex()
        lg = link_graph(c, ("U", 2, 1))
        names = {end[0] for end in lg.cycles[0]}
        assert names == {("x", 2, 1), ("a", 2, 1, "-"), ("y", 1, 1), ("a", 2, 1, "+")}

    def test_resolve_increases_chi(self):
        c = fermat_complex()
        r = resolve(c, ("T", 0))
        assert r.euler_characteristic() == c.euler_characteristic() + 1


class TestOrientability:
    def test_sphere(self):
        assert orientability(two_triangle_sphere())

    def test_torus(self):
        assert orientability(square_torus())

    def test_klein(self):
        k = klein_bottle()
        assert k.validate() is None
        assert k.euler_characteristic() == 0
        assert not orientability(k)


class TestClassify:
    def test_sphere(self):
        g = classify(two_triangle_sphere())
        assert len(g.surface_nodes) == 1
        assert g.surface_nodes[0][1]["label"] == "Sigma_0"
        assert not g.singular_nodes

    def test_torus_and_klein(self):
        assert classify(square_torus()).surface_nodes[0][1]["label"] == "Sigma_1"
        assert classify(klein_bottle()).surface_nodes[0][1]["label"] == "Theta_2"

    def test_sphere_two_points_glued(self):
        c = glue_vertices(two_triangle_sphere(), 1, 2)
        g = classify(c)
        assert [a[1]["label"] for a in g.surface_nodes] == ["Sigma_0"]
        assert len(g.singular_nodes) == 1
        assert len(g.links) == 2
        assert len({b for _, b in g.links}) == 1

    def test_chain_example(self):
        # Sphere glued to a torus at one point and to a Klein bottle at another.
        sphere = two_triangle_sphere()
        torus = square_torus()
        klein = klein_bottle()
        combined = CellComplex(
            {("s", v) for v in sphere.vertices}
            | {("t", v) for v in torus.vertices}
            | {("k", v) for v in klein.vertices},
            {},
            {},
        )
        for tag, comp in (("s", sphere), ("t", torus), ("k", klein)):
            for eid, (a, b) in comp.edges.items():
                combined.edges[(tag, eid)] = ((tag, a), (tag, b))
            for fid, boundary in comp.faces.items():
                combined.faces[(tag, fid)] = [((tag, e), o) for e, o in boundary]
        combined = glue_vertices(combined, ("s", 1), ("t", "P"), "glue1")
        combined = glue_vertices(combined, ("s", 2), ("k", "P"), "glue2")
        g = classify(combined)
        labels = sorted(a[1]["label"] for a in g.surface_nodes)
        assert labels == ["Sigma_0", "Sigma_1", "Theta_2"]
        assert len(g.singular_nodes) == 2
        # Each glue point links the sphere to one neighbour.
        by_label = {nid: attrs["label"] for nid, attrs in g.surface_nodes}
        endpoints = sorted(tuple(sorted((by_label[b],) for a, b in g.links if a == s)) for s in g.singular_nodes)
        flat = sorted(by_label[b] for _, b in g.links)
        assert flat == ["Sigma_0", "Sigma_0", "Sigma_1", "Theta_2"]

    def test_fermat_classification(self):
        g = classify(fermat_complex())
        assert len(g.surface_nodes) == 1
        node_id, attrs = g.surface_nodes[0]
        assert attrs["label"] == "Sigma_4"
        assert attrs["orientable"] is True
        assert len(g.singular_nodes) == 3
        assert len(g.links) == 6
        for s in g.singular_nodes:
            assert sum(1 for a, b in g.links if a == s) == 2

    def test_dot_output(self):
        g = classify(fermat_complex())
        dot = g.to_dot()
        assert "Sigma_4" in dot
        assert dot.count("--") == 6


class TestBarycentric:
    def test_sphere_subdivision_preserves_classification(self):
        c = two_triangle_sphere()
        sub = barycentric_subdivision(c)
        assert sub.validate() is None
        assert sub.euler_characteristic() == 2
        assert classify(sub).surface_nodes[0][1]["label"] == "Sigma_0"

    def test_fermat_subdivision_preserves_classification(self):
        c = fermat_complex()
        sub = barycentric_subdivision(c)
        assert sub.validate() is None
        assert sub.euler_characteristic() == -9
        g = classify(sub)
        assert g.surface_nodes[0][1]["label"] == "Sigma_4"
        assert len(g.singular_nodes) == 3

    def test_json_round_shape(self):
        data = complex_to_json(two_triangle_sphere())
        assert set(data) == {"vertices", "edges", "faces"}
        assert len(data["edges"]) == 3
