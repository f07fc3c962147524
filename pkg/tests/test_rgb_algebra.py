from collections import Counter

import pytest
from hypothesis import given, settings

from brauerflip import fixtures
from brauerflip.fields import Field
from brauerflip.rgb_algebra import (AlgebraError, build_rgb, check_associative, check_dg,
                                    compatible_ns, cy_trace, emit, enumerate_basis,
                                    expected_dimension, refute_cy, verify_cy)
from brauerflip.sgraph_core import NotOrientable, find_orientation
from oracles import compare_with_oracle
from strategies import sgraphs


def by_key(A, key):
    return A.index[key]


class TestBuild:
    def test_boundary_edge(self):
        for n in (2, 3, 5):
            A = build_rgb(fixtures.load("boundary_edge"), n)
            assert [el.family for el in A.basis] == ["e", "tau"]
            tau = by_key(A, ("t", "1"))
            assert A.basis[tau].degree == n - 1
            assert A.differential(tau) == {}
            assert A.multiply(tau, tau) == {}

    def test_incompatible_n(self):
        with pytest.raises(AlgebraError):
            build_rgb(fixtures.load("theta_torus"), 4)

    def test_cycle_at_trivalent_vertex_squared(self):
        # n = 6 at degree-3 vertices: the closed cycle of length 3 squares to c
        g = fixtures.load("theta_torus")
        A = build_rgb(g, 6)
        h = g.order["u"][0]
        s = by_key(A, ("p", h, 3))
        assert A.basis[s].degree == 3
        prod = A.multiply(s, s)
        assert set(prod) == {by_key(A, ("c", g.edge_of(h)))}
        assert abs(prod[by_key(A, ("c", g.edge_of(h)))]) == 1

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_tau_at_mixed_edge(self, n):
        A = build_rgb(fixtures.load("boundary_monogon"), n)
        tau = by_key(A, ("t", "1"))
        assert A.differential(tau) == {by_key(A, ("c", "1")): (-1) ** n}

    def test_other_generators_are_closed(self):
        A = build_rgb(fixtures.load("disk_three_trivalent_flipped"), 3)
        for x, el in enumerate(A.basis):
            if el.family != "tau":
                assert A.differential(x) == {}, el.name
            else:
                assert A.differential(A.differential(x).popitem()[0] if A.differential(x) else x) == {}


class TestBasis:
    @pytest.mark.parametrize("name", fixtures.names())
    def test_fixture_basis_matches_word_oracle(self, name):
        g = fixtures.load(name)
        for n in compatible_ns(g)[:2] or [fixtures.default_n(name)]:
            A = build_rgb(g, n)
            assert A.dim == expected_dimension(g, n)
            assert compare_with_oracle(A, check_products=A.dim < 400) == []

    def test_monogon(self):
        A = build_rgb(fixtures.load("boundary_monogon"), 3)
        assert Counter(el.family for el in enumerate_basis(A)) == \
            Counter({"e": 1, "a^r": 2, "c": 1, "tau": 1})
        assert compare_with_oracle(A) == []

    def test_b_degrees(self):
        g = fixtures.load("disk_three_trivalent_flipped")
        A = build_rgb(g, 3)
        bs = [el for el in A.basis if el.family == "b"]
        assert bs
        for el in bs:
            assert el.degree == g.d(el.j, el.i) + 3 - 1

    @settings(max_examples=40, deadline=None)
    @given(sgraphs(max_edges=6, ns=(2, 3, 4, 6)))
    def test_random_graphs_match_oracle(self, case):
        g, n = case
        A = build_rgb(g, n)
        assert compare_with_oracle(A) == []


class TestProducts:
    def test_units(self):
        A = build_rgb(fixtures.load("disk_three_trivalent"), 3)
        for x, el in enumerate(A.basis):
            assert A.multiply(by_key(A, ("e", el.target)), x) == {x: 1}
            assert A.multiply(x, by_key(A, ("e", el.source))) == {x: 1}

    def test_noncomposable_arrows_vanish(self):
        g = fixtures.load("theta_torus")
        A = build_rgb(g, 3)
        for i in g.halfedges:
            nxt = g.succ(i)
            for k in g.halfedges:
                if k != nxt and g.edge_of(k) == g.edge_of(nxt):
                    assert A.multiply(by_key(A, ("p", k, 1)), by_key(A, ("p", i, 1))) == {}

    def test_arrows_commute_with_tau(self):
        # a_j tau_j = (-1)^|a_j| tau_i a_j for the arrow a_j from j to its successor i
        A = build_rgb(fixtures.load("disk_three_trivalent_flipped"), 3)
        j, i = "3@bl1", "1@bl1"
        a = A.index[("a", j, i)]
        left = A.multiply(a, by_key(A, ("t", A.edge(j))))
        right = A.multiply(by_key(A, ("t", A.edge(i))), a)
        b = A.index[("b", j, i)]
        assert set(left) == set(right) == {b}
        sign = (-1) ** A.basis[a].degree
        assert A.tau_sign(j) * left[b] == sign * A.tau_sign(i) * right[b]

    @pytest.mark.parametrize("name", ["disk_three_trivalent_flipped", "monogon_square", "loop_vertex"])
    def test_dg_and_associativity(self, name):
        A = build_rgb(fixtures.load(name), fixtures.default_n(name))
        assert check_dg(A).ok
        assert check_associative(A).ok

    def test_prime_field(self):
        A = build_rgb(fixtures.load("disk_three_trivalent"), 3, field=Field(3))
        assert check_dg(A).ok and check_associative(A).ok


class TestCalabiYau:
    @pytest.mark.parametrize("name,n", [("theta_torus", 3), ("theta_torus", 9),
                                        ("torus_four_trivalent", 3), ("odd_monogons", 5)])
    def test_odd_n(self, name, n):
        A = build_rgb(fixtures.load(name), n)
        rep = verify_cy(A, cy_trace(A))
        assert rep.ok and rep.rank == A.dim
        dims = A.graded_dims()
        assert all(dims.get(d, 0) == dims.get(n - d, 0) for d in dims)

    def test_trace_vanishes_on_zero_products(self):
        A = build_rgb(fixtures.load("theta_torus"), 3)
        tr = cy_trace(A)
        for x in range(A.dim):
            for y in range(A.dim):
                if not A.multiply(x, y):
                    assert tr(A.multiply(x, y)) == 0

    def test_even_n_orientable(self):
        checked = 0
        for name in ("bigon_sphere", "theta_torus", "disk_degrees_124"):
            g = fixtures.load(name)
            orient = find_orientation(g)
            if isinstance(orient, NotOrientable):
                continue
            n = next(n for n in compatible_ns(g) if n % 2 == 0)
            A = build_rgb(g, n, orient)
            assert verify_cy(A, cy_trace(A, orient)).ok, name
            checked += 1
        assert checked

    def test_boundary_refused(self):
        A = build_rgb(fixtures.load("disk_three_trivalent"), 3)
        with pytest.raises(AlgebraError):
            cy_trace(A)

    def test_even_n_needs_orientation(self):
        with pytest.raises(AlgebraError):
            cy_trace(build_rgb(fixtures.load("bigon_sphere"), 4))

    def test_refute_at_degree_one_vertex(self):
        A = build_rgb(fixtures.load("odd_monogons"), 4)
        w = refute_cy(A)
        assert w is not None and w.sign == -1
        assert "tr(st)" in w.describe(A)
        assert isinstance(find_orientation(A.g), NotOrientable)

    def test_refute_returns_none_for_odd_n(self):
        assert refute_cy(build_rgb(fixtures.load("odd_monogons"), 3)) is None

    def test_refute_needs_odd_degree(self):
        assert refute_cy(build_rgb(fixtures.load("bigon_sphere"), 4)) is None

    def test_refute_in_characteristic_two(self):
        with pytest.raises(AlgebraError):
            refute_cy(build_rgb(fixtures.load("odd_monogons"), 4, field=Field(2)))


@pytest.mark.parametrize("what", ["json", "dims", "relations", "basis"])
def test_emit(what):
    out = emit(build_rgb(fixtures.load("boundary_monogon"), 3), what)
    assert out.strip()
