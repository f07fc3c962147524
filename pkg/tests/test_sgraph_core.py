import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauerflip import fixtures
from brauerflip.sgraph_core import (BOUNDARY, INTERNAL, NotOrientable, SGraphError,
                                    brute_force_orientable, canonical_form, extend,
                                    find_orientation, from_edges, from_json, orientation_ok,
                                    relabel, surface_invariants, to_json, validate, vertex_degree)
from strategies import sgraphs


def single_edge():
    return from_edges({"a": BOUNDARY, "b": BOUNDARY}, {"a": [("1", None)], "b": [("1", None)]})


def loop(d1, d2):
    return from_edges({"v": INTERNAL}, {"v": [("1", d1), ("1", d2)]})


class TestValidate:
    def test_single_boundary_edge_is_valid(self):
        assert validate(single_edge()).ok

    def test_zero_corner_degree(self):
        g = from_edges({"v": INTERNAL, "b": BOUNDARY},
                       {"v": [("1", 0), ("2", 2)], "b": [("1", 1), ("2", None)]})
        rep = validate(g)
        assert not rep.ok
        assert any("corner degree must be positive" in v for v in rep.violations)

    def test_triangulated_disk_fixture(self):
        g = fixtures.load("disk_three_trivalent")
        assert validate(g).ok
        kinds = sorted(g.kinds[v] for v in g.vertices)
        # five boundary vertices as drawn; the surface has four boundary singular points
        assert kinds.count(INTERNAL) == 3 and kinds.count(BOUNDARY) == 5

    def test_reports_all_problems_without_raising(self):
        data = to_json(single_edge())
        data["halfedges"][0]["partner"] = "nowhere"
        data["corners"] = [{"at": "a", "from": "x", "to": "y", "d": -1}]
        rep = validate(from_json(data))
        assert len(rep.violations) >= 2

    def test_every_fixture_is_valid(self):
        for name in fixtures.names():
            assert validate(fixtures.load(name)).ok, name


class TestVertexDegree:
    def test_trivalent(self):
        g = fixtures.load("disk_three_trivalent")
        assert vertex_degree(g, "c") == 3

    def test_boundary_is_infinite(self):
        assert vertex_degree(single_edge(), "a") == math.inf

    def test_four_valent_vertex_of_a_square(self):
        g = fixtures.load("disk_degrees_124")
        assert {vertex_degree(g, v) for v in ("a", "d", "e", "f")} == {4}

    def test_unknown_vertex(self):
        with pytest.raises(SGraphError):
            vertex_degree(single_edge(), "zz")


class TestExtend:
    def test_no_boundary_is_a_no_op(self):
        g = fixtures.load("theta_torus")
        ext = extend(g)
        assert not ext.virtual and dict(ext.order) == dict(g.order)

    def test_virtual_edge_goes_last(self):
        g = from_edges({"v": INTERNAL, "b": BOUNDARY},
                       {"v": [("1", 1), ("2", 1)], "b": [("1", 1), ("2", None)]})
        ext = extend(g)
        assert len(ext.order["b"]) == 3
        assert ext.order["b"][-1] == ext.virtual["b"]

    def test_disk_gets_one_virtual_edge_per_boundary_vertex(self):
        g = fixtures.load("disk_three_trivalent")
        ext = extend(g)
        assert len(ext.virtual) == 5
        assert len(ext.halfedges) == len(g.halfedges) + 5

    @given(sgraphs())
    def test_strip_recovers_graph(self, g):
        assert extend(g).strip() == g


class TestOrientation:
    def test_even_corners_are_orientable(self):
        g = from_edges({"u": INTERNAL, "v": INTERNAL}, {"u": [("1", 2)], "v": [("1", 2)]})
        assert orientation_ok(g, find_orientation(g))

    def test_loop_with_parity_clash(self):
        # both corners of the loop see the same two halfedges with different parities
        g = loop(2, 1)
        res = find_orientation(g)
        assert isinstance(res, NotOrientable) and res.witness
        assert not brute_force_orientable(g)

    def test_trivalent_disk_matches_brute_force(self):
        g = fixtures.load("disk_three_trivalent")
        assert bool(find_orientation(g)) == brute_force_orientable(g)

    @settings(max_examples=60, deadline=None)
    @given(sgraphs(max_edges=8))
    def test_agrees_with_exhaustive_search(self, g):
        res = find_orientation(g)
        assert (not isinstance(res, NotOrientable)) == brute_force_orientable(g)
        if not isinstance(res, NotOrientable):
            assert orientation_ok(g, res)


class TestCanonicalForm:
    def test_relabeling(self):
        g = fixtures.load("torus_four_trivalent")
        assert canonical_form(relabel(g, random.Random(1))) == canonical_form(g)

    def test_distinguishes_two_edge_graphs(self):
        path = from_edges({"a": BOUNDARY, "m": INTERNAL, "b": BOUNDARY},
                          {"a": [("1", None)], "m": [("1", 1), ("2", 1)], "b": [("2", None)]})
        assert canonical_form(path) != canonical_form(fixtures.load("bigon_sphere"))

    def test_flip_pair_fixtures_differ(self):
        assert canonical_form(fixtures.load("disk_three_trivalent")) != \
            canonical_form(fixtures.load("disk_three_trivalent_flipped"))

    def test_disconnected_graph_rejected(self):
        g = from_edges({"a": BOUNDARY, "b": BOUNDARY, "c": BOUNDARY, "d": BOUNDARY},
                       {"a": [("1", None)], "b": [("1", None)], "c": [("2", None)], "d": [("2", None)]})
        with pytest.raises(SGraphError):
            canonical_form(g)

    @given(sgraphs(), st.integers(0, 1000))
    def test_relabel_invariance(self, g, seed):
        assert canonical_form(relabel(g, random.Random(seed))) == canonical_form(g)


class TestSurfaceInvariants:
    def test_single_edge(self):
        s = surface_invariants(single_edge())
        assert (s["vertices"], s["edges"], s["faces"]) == (2, 1, 1)

    def test_loop_at_one_vertex(self):
        # traversal h -> succ(partner h): each halfedge closes its own face
        s = surface_invariants(loop(1, 1))
        assert (s["vertices"], s["edges"], s["faces"], s["euler_characteristic"]) == (1, 1, 2, 2)

    def test_disk_fixture_is_planar(self):
        assert surface_invariants(fixtures.load("disk_degrees_124"))["euler_characteristic"] == 2

    def test_torus_fixture(self):
        assert surface_invariants(fixtures.load("theta_torus"))["euler_characteristic"] == 0


@given(sgraphs())
def test_d_is_additive(g):
    for v in g.vertices:
        seq = g.order[v]
        if not g.is_internal(v):
            for i in range(len(seq)):
                for j in range(i, len(seq)):
                    for k in range(j, len(seq)):
                        assert g.d(seq[i], seq[k]) == g.d(seq[i], seq[j]) + g.d(seq[j], seq[k])
        else:
            q = len(seq)
            for i in range(q):
                assert g.d(seq[i], seq[i]) == 0
                for j in range(i, i + q):
                    for k in range(j, i + q):
                        a, b, c = seq[i], seq[j % q], seq[k % q]
                        assert g.d(a, c) == g.d(a, b) + g.d(b, c)


@given(sgraphs())
def test_json_round_trip(g):
    assert from_json(to_json(g)) == g
