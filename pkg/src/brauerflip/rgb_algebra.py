"""Relative graded Brauer graph algebras of S-graphs.

For an S-graph and an integer ``n`` divisible by every internal vertex degree
the algebra has one idempotent per edge, an arrow ``a_h`` of degree
``d(h, succ h)`` for each corner and a loop ``tau_h`` of degree ``n - 1`` at
each boundary halfedge.  Products are written right to left: ``x * y`` runs
``y`` first.

Basis elements are stored by kind:

* ``("e", E)``: the idempotent of edge ``E``;
* ``("p", j, L)``: the path of ``L`` arrows starting at halfedge ``j`` of an
  internal vertex, ``1 <= L < (n/m) q`` for valency ``q`` and degree ``m``;
* ``("c", E)``: the full cycle at an edge with an internal end;
* ``("a", j, i)``: the path from ``j`` to a later halfedge ``i`` at a boundary vertex;
* ``("t", E)``: the boundary loop of ``E``;
* ``("b", j, i)``: ``a_{i,j} tau_j``.

The classes ``c`` and ``t`` are spanned by one representative halfedge per
edge, the one pointing away from its vertex under the chosen orientation.
The other halfedge carries the sign forced by ``c_i = (-1)^(n-1) c_j`` and
``tau_i = (-1)^n tau_j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .fields import Field, RATIONALS
from .sgraph_core import (EdgeOrientation, SGraph, SGraphError, default_orientation,
                          find_orientation, require_valid, sorted_ids)


class AlgebraError(ValueError):
    pass


def check_compatible(g: SGraph, n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise AlgebraError(f"n must be a positive integer, got {n!r}")
    for v, m in g.internal_degrees().items():
        if n % m:
            raise AlgebraError(f"n = {n} is not a multiple of deg({v}) = {m}")


def compatible_ns(g: SGraph, limit: int = 12) -> list[int]:
    return [n for n in range(1, limit + 1) if all(n % m == 0 for m in g.internal_degrees().values())]


def minimal_n(g: SGraph) -> int:
    from math import lcm
    out = 1
    for m in g.internal_degrees().values():
        out = lcm(out, m)
    return out


@dataclass(frozen=True)
class RgbBasisElement:
    family: str  # e, a^r, c, a, tau, b
    key: tuple
    degree: int
    source: str
    target: str
    i: str | None = None
    j: str | None = None
    r: int | None = None

    @property
    def name(self) -> str:
        if self.family == "e":
            return f"e[{self.source}]"
        if self.family == "a^r":
            return f"a^{self.r}[{self.i},{self.j}]"
        if self.family == "c":
            return f"c[{self.i}]"
        if self.family == "tau":
            return f"tau[{self.i}]"
        return f"{self.family}[{self.i},{self.j}]"


Vec = dict  # basis index -> coefficient


def _add(acc: Vec, k: int, c, field: Field) -> None:
    v = field.convert(acc.get(k, 0) + c)
    if v == 0:
        acc.pop(k, None)
    else:
        acc[k] = v


def sign_conventions(g: SGraph, orient: EdgeOrientation):
    """Edge kinds (``"II"``, ``"IB"``, ``"BB"``), the representative halfedge
    of each edge and, at mixed edges, the boundary halfedge carrying tau.

    The representative points away from its vertex under ``orient``; at a
    mixed edge it is the internal halfedge.
    """
    kind: dict[str, str] = {}
    rep: dict[str, str] = {}
    tau_half: dict[str, str] = {}
    for E, hs in g.edges.items():
        flags = ["I" if g.is_internal(g.vertex[h]) else "B" for h in hs]
        kind[E] = "".join(sorted(flags, reverse=True))
        if kind[E] == "IB":
            rep[E] = next(h for h in hs if g.is_internal(g.vertex[h]))
            tau_half[E] = next(h for h in hs if not g.is_internal(g.vertex[h]))
        else:
            rep[E] = next(h for h in hs if orient.epsilon(g, h) == 0)
    return kind, rep, tau_half


def resolve_orientation(g: SGraph, orient: EdgeOrientation | None) -> EdgeOrientation:
    if orient is not None:
        return orient
    found = find_orientation(g)
    return found if found else default_orientation(g)


class RgbAlgebra:
    """The algebra together with its basis, products and differential."""

    def __init__(self, g: SGraph, n: int, orient: EdgeOrientation | None = None,
                 field: Field = RATIONALS):
        require_valid(g)
        check_compatible(g, n)
        self.g = g
        self.n = n
        self.field = field
        self.orient = orient = resolve_orientation(g, orient)
        self.N = {v: n // m for v, m in g.internal_degrees().items()}
        self.edge_kind, self.rep, self.tau_half = sign_conventions(g, orient)
        self.basis: list[RgbBasisElement] = []
        self.index: dict[tuple, int] = {}
        self._build_basis()

    # -- bookkeeping ---------------------------------------------------------

    def edge(self, h: str) -> str:
        return self.g.edge_of(h)

    def c_sign(self, h: str) -> int:
        """``c_h = c_sign(h) * c[E]``."""
        if h == self.rep[self.edge(h)]:
            return 1
        return (-1) ** (self.n - 1)

    def tau_sign(self, h: str) -> int:
        """``tau_h = tau_sign(h) * tau[E]``."""
        E = self.edge(h)
        if self.edge_kind[E] == "IB" or h == self.rep[E]:
            return 1
        return (-1) ** self.n

    def tau_rep(self, E: str) -> str:
        return self.tau_half.get(E, self.rep[E])

    def path_end(self, j: str, L: int) -> str:
        seq = self.g.order[self.g.vertex[j]]
        return seq[(seq.index(j) + L) % len(seq)]

    def path_degree(self, j: str, L: int) -> int:
        g = self.g
        seq = g.order[g.vertex[j]]
        k = seq.index(j)
        total = 0
        for s in range(L):
            total += g.corners[(seq[(k + s) % len(seq)], seq[(k + s + 1) % len(seq)])]
        return total

    def cycle_length(self, v: str) -> int:
        return self.N[v] * len(self.g.order[v])

    def _push(self, el: RgbBasisElement) -> None:
        self.index[el.key] = len(self.basis)
        self.basis.append(el)

    def _build_basis(self) -> None:
        g, n = self.g, self.n
        for E in g.edges:
            self._push(RgbBasisElement("e", ("e", E), 0, E, E))
        for v in g.vertices:
            seq = g.order[v]
            q = len(seq)
            if g.is_internal(v):
                for j in seq:
                    for L in range(1, self.cycle_length(v)):
                        i = self.path_end(j, L)
                        r = L // q
                        self._push(RgbBasisElement("a^r", ("p", j, L), self.path_degree(j, L),
                                                   self.edge(j), self.edge(i), i=i, j=j, r=r))
            else:
                for x in range(q):
                    for y in range(x + 1, q):
                        j, i = seq[x], seq[y]
                        dj = g.d(j, i)
                        self._push(RgbBasisElement("a", ("a", j, i), dj, self.edge(j), self.edge(i), i=i, j=j))
                        self._push(RgbBasisElement("b", ("b", j, i), dj + n - 1, self.edge(j), self.edge(i), i=i, j=j))
        for E in g.edges:
            if self.edge_kind[E] in ("II", "IB"):
                self._push(RgbBasisElement("c", ("c", E), n, E, E, i=self.rep[E]))
            if self.edge_kind[E] in ("IB", "BB"):
                self._push(RgbBasisElement("tau", ("t", E), n - 1, E, E, i=self.tau_rep(E)))

    # -- structure -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, x: int) -> int:
        return self.basis[x].degree

    def _ends(self, key: tuple) -> list[str]:
        if key[0] == "p":
            return [self.path_end(key[1], key[2])]
        if key[0] in ("a", "b"):
            return [key[2]]
        if key[0] == "t":
            return [h for h in self.g.halves(key[1]) if not self.g.is_internal(self.g.vertex[h])]
        return []

    def _starts(self, key: tuple) -> list[str]:
        if key[0] in ("p", "a", "b"):
            return [key[1]]
        if key[0] == "t":
            return self._ends(key)
        return []

    def _boundary_local(self, key: tuple, k: str) -> tuple[str, str, int, int]:
        if key[0] == "a":
            return key[1], key[2], 0, 1
        if key[0] == "b":
            return key[1], key[2], 1, 1
        # tau[E] = tau_sign(k) * tau_k
        return k, k, 1, self.tau_sign(k)

    def multiply(self, x: int, y: int) -> Vec:
        """``basis[x] * basis[y]`` (``y`` runs first) as a coefficient vector."""
        X, Y = self.basis[x].key, self.basis[y].key
        if Y[0] == "e":
            return {x: 1} if self.basis[x].source == Y[1] else {}
        if X[0] == "e":
            return {y: 1} if self.basis[y].target == X[1] else {}
        if X[0] == "c" or Y[0] == "c" or (X[0] == "t" and Y[0] == "t"):
            return {}
        common = [k for k in self._ends(Y) if k in self._starts(X)]
        if not common:
            return {}
        k = common[0]
        g = self.g
        v = g.vertex[k]
        if g.is_internal(v):
            if X[0] != "p" or Y[0] != "p":
                return {}
            j, L = Y[1], Y[2] + X[2]
            top = self.cycle_length(v)
            if L > top:
                return {}
            if L == top:
                return {self.index[("c", self.edge(j))]: self.c_sign(j)}
            return {self.index[("p", j, L)]: 1}
        j, k1, ty, sy = self._boundary_local(Y, k)
        k2, i, tx, sx = self._boundary_local(X, k)
        assert k1 == k2 == k
        if tx + ty >= 2:
            return {}
        sign = sx * sy
        if tx == 1 and ty == 0 and j != k:
            sign *= (-1) ** g.d(j, k)
        if j == i:
            return {self.index[("t", self.edge(j))]: sign * self.tau_sign(j)}
        fam = "b" if tx + ty == 1 else "a"
        return {self.index[(fam, j, i)]: sign}

    def multiply_vec(self, u: Vec, w: Vec) -> Vec:
        out: Vec = {}
        for x, cx in u.items():
            for y, cy in w.items():
                for z, cz in self.multiply(x, y).items():
                    _add(out, z, cx * cy * cz, self.field)
        return out

    def differential(self, x: int) -> Vec:
        key = self.basis[x].key
        if key[0] == "t" and self.edge_kind[key[1]] == "IB":
            return {self.index[("c", key[1])]: (-1) ** self.n}
        return {}

    def differential_vec(self, u: Vec) -> Vec:
        out: Vec = {}
        for x, c in u.items():
            for z, cz in self.differential(x).items():
                _add(out, z, c * cz, self.field)
        return out

    @cached_property
    def composable(self) -> dict[int, list[int]]:
        """For each ``y``, the ``x`` with ``source(x) = target(y)``."""
        by_source: dict[str, list[int]] = {}
        for x, el in enumerate(self.basis):
            by_source.setdefault(el.source, []).append(x)
        return {y: by_source.get(el.target, []) for y, el in enumerate(self.basis)}

    # -- words in the generators (for the independent oracle) ----------------

    def word(self, x: int) -> tuple:
        """Literal word of generators, in order of application."""
        key = self.basis[x].key
        g = self.g
        if key[0] == "e":
            return ()
        if key[0] == "p":
            return self._arrow_word(key[1], key[2])
        if key[0] == "c":
            h = self.rep[key[1]]
            return self._arrow_word(h, self.cycle_length(g.vertex[h]))
        if key[0] == "t":
            return (("t", self.tau_rep(key[1])),)
        j, i = key[1], key[2]
        steps = g.position(i) - g.position(j)
        w = self._arrow_word(j, steps)
        return ((("t", j),) + w) if key[0] == "b" else w

    def _arrow_word(self, j: str, L: int) -> tuple:
        seq = self.g.order[self.g.vertex[j]]
        k = seq.index(j)
        return tuple(("a", seq[(k + s) % len(seq)]) for s in range(L))

    # -- presentation --------------------------------------------------------

    def arrows(self) -> list[dict]:
        g = self.g
        out = []
        for v in g.vertices:
            for h in g.order[v]:
                nxt = g.succ(h)
                if nxt is not None:
                    out.append({"name": f"a[{h}]", "source": self.edge(h), "target": self.edge(nxt),
                                "degree": g.corners[(h, nxt)]})
        for v in g.vertices:
            if not g.is_internal(v):
                for h in g.order[v]:
                    out.append({"name": f"tau[{h}]", "source": self.edge(h), "target": self.edge(h),
                                "degree": self.n - 1})
        return out

    def relations(self) -> list[dict]:
        """Relations as signed words (arrow names in order of application)."""
        g, n = self.g, self.n
        rel: list[dict] = []

        def arrow(h):
            return f"a[{h}]"

        corners = [(h, g.succ(h)) for h in g.halfedges if g.succ(h) is not None]
        for h, h1 in corners:
            for k, k1 in corners:
                if self.edge(k) == self.edge(h1) and k != h1:
                    rel.append({"family": "zero", "terms": [[1, [arrow(h), arrow(k)]]]})
        for E, hs in g.edges.items():
            kind = self.edge_kind[E]
            if kind == "II":
                i, j = hs
                wi = [arrow(x[1]) for x in self._arrow_word(i, self.cycle_length(g.vertex[i]))]
                wj = [arrow(x[1]) for x in self._arrow_word(j, self.cycle_length(g.vertex[j]))]
                rel.append({"family": "cycle", "terms": [[1, wi], [-((-1) ** (n - 1)), wj]]})
            if kind == "BB":
                i, j = hs
                rel.append({"family": "tau", "terms": [[1, [f"tau[{i}]"]], [-((-1) ** n), [f"tau[{j}]"]]]})
        for h, h1 in corners:
            if not g.is_internal(g.vertex[h]):
                d = g.corners[(h, h1)]
                rel.append({"family": "commute",
                            "terms": [[1, [f"tau[{h}]", arrow(h)]], [-((-1) ** d), [arrow(h), f"tau[{h1}]"]]]})
        for v in g.vertices:
            if g.is_internal(v):
                for j in g.order[v]:
                    w = [arrow(x[1]) for x in self._arrow_word(j, self.cycle_length(v) + 1)]
                    rel.append({"family": "beyond-cycle", "terms": [[1, w]]})
        taus = [h for h in g.halfedges if not g.is_internal(g.vertex[h])]
        for h in taus:
            for k in taus:
                if self.edge(h) == self.edge(k):
                    rel.append({"family": "tau-square", "terms": [[1, [f"tau[{h}]", f"tau[{k}]"]]]})
        for E in g.edges:
            if self.edge_kind[E] == "IB":
                t = self.tau_half[E]
                i = self.rep[E]
                rel.append({"family": "tau-interior", "terms": [[1, [f"tau[{t}]", arrow(i)]]]})
                p = g.pred(i)
                rel.append({"family": "tau-interior", "terms": [[1, [arrow(p), f"tau[{t}]"]]]})
        return rel

    def differential_generators(self) -> dict[str, list]:
        out = {}
        for E in self.g.edges:
            if self.edge_kind[E] == "IB":
                i = self.rep[E]
                w = [f"a[{x[1]}]" for x in self._arrow_word(i, self.cycle_length(self.g.vertex[i]))]
                out[f"tau[{self.tau_half[E]}]"] = [[(-1) ** self.n, w]]
        return out

    def graded_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for el in self.basis:
            out[el.degree] = out.get(el.degree, 0) + 1
        return dict(sorted(out.items()))

    def block_dims(self, source: str, target: str) -> dict[int, int]:
        """Graded dimension of ``e_target A e_source``."""
        out: dict[int, int] = {}
        for el in self.basis:
            if el.source == source and el.target == target:
                out[el.degree] = out.get(el.degree, 0) + 1
        return dict(sorted(out.items()))

    def block_cohomology(self, source: str, target: str) -> dict[int, int]:
        """Graded dimension of the cohomology of ``e_target A e_source``."""
        idx = [x for x, el in enumerate(self.basis) if el.source == source and el.target == target]
        degs = sorted({self.basis[x].degree for x in idx})
        out = {}
        rank_out = {}
        for d in degs + [d - 1 for d in degs]:
            src = [x for x in idx if self.basis[x].degree == d]
            tgt = [x for x in idx if self.basis[x].degree == d + 1]
            rows = [[self.differential(x).get(y, 0) for y in tgt] for x in src]
            rank_out[d] = self.field.rank(rows) if src and tgt else 0
        for d in degs:
            dim = sum(1 for x in idx if self.basis[x].degree == d)
            h = dim - rank_out.get(d, 0) - rank_out.get(d - 1, 0)
            if h:
                out[d] = h
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {
            "format": 1,
            "n": self.n,
            "field": self.field.name,
            "vertices": list(self.g.edges),
            "arrows": self.arrows(),
            "relations": self.relations(),
            "differential": self.differential_generators(),
            "basis": [{"name": el.name, "family": el.family, "degree": el.degree,
                       "source": el.source, "target": el.target} for el in self.basis],
        }


DgAlgebraPresentation = RgbAlgebra


def build_rgb(g: SGraph, n: int, orient: EdgeOrientation | None = None,
              field: Field = RATIONALS) -> RgbAlgebra:
    return RgbAlgebra(g, n, orient, field)


def enumerate_basis(A: RgbAlgebra) -> list[RgbBasisElement]:
    return list(A.basis)


def expected_dimension(g: SGraph, n: int) -> int:
    """Dimension predicted by counting the six basis families."""
    check_compatible(g, n)
    total = len(g.edges)
    for v in g.vertices:
        q = len(g.order[v])
        if g.is_internal(v):
            N = n // int(g.degree(v))
            total += q * (N * q - 1)
        else:
            total += q * (q - 1)
    for E, hs in g.edges.items():
        ints = sum(1 for h in hs if g.is_internal(g.vertex[h]))
        total += {2: 1, 1: 2, 0: 1}[ints]
    return total


def multiply(A: RgbAlgebra, x: int, y: int) -> Vec:
    return A.multiply(x, y)


def differential(A: RgbAlgebra, x: int) -> Vec:
    return A.differential(x)


@dataclass
class DgReport:
    ok: bool
    failures: list[str]


def check_dg(A: RgbAlgebra, max_failures: int = 10) -> DgReport:
    """d^2 = 0 on every basis element and the Leibniz rule on every composable pair."""
    fails: list[str] = []
    F = A.field
    for x in range(A.dim):
        if A.differential_vec(A.differential(x)):
            fails.append(f"d^2 != 0 on {A.basis[x].name}")
        for z in A.differential(x):
            if A.basis[z].degree != A.basis[x].degree + 1:
                fails.append(f"d is not of degree 1 on {A.basis[x].name}")
    for y in range(A.dim):
        dy = A.differential(y)
        for x in A.composable[y]:
            lhs = A.differential_vec(A.multiply(x, y))
            rhs: Vec = {}
            for z, c in A.multiply_vec(A.differential(x), {y: 1}).items():
                _add(rhs, z, c, F)
            sign = (-1) ** A.basis[x].degree
            for z, c in A.multiply_vec({x: 1}, dy).items():
                _add(rhs, z, sign * c, F)
            if lhs != rhs:
                fails.append(f"Leibniz fails on ({A.basis[x].name}, {A.basis[y].name})")
                if len(fails) >= max_failures:
                    return DgReport(False, fails)
    return DgReport(not fails, fails)


def check_associative(A: RgbAlgebra) -> DgReport:
    fails = []
    for z in range(A.dim):
        for y in A.composable[z]:
            yz = A.multiply(y, z)
            for x in A.composable[y]:
                left = A.multiply_vec({x: 1}, yz)
                right = A.multiply_vec(A.multiply(x, y), {z: 1})
                if left != right:
                    fails.append(f"({A.basis[x].name} {A.basis[y].name}) {A.basis[z].name}")
                    if len(fails) > 10:
                        return DgReport(False, fails)
    return DgReport(not fails, fails)


# -- Calabi-Yau structure ----------------------------------------------------


@dataclass
class TraceFunctional:
    values: dict[int, object]  # basis index -> trace value
    degree: int

    def __call__(self, u: Vec):
        return sum(c * self.values.get(x, 0) for x, c in u.items())


def cy_trace(A: RgbAlgebra, orient: EdgeOrientation | None = None) -> TraceFunctional:
    """``tr(c_i) = 1`` for odd ``n``; ``tr(c_i) = (-1)^eps(i)`` for even ``n``."""
    g = A.g
    if g.has_boundary():
        raise AlgebraError("the trace is only defined for graphs without boundary vertices")
    if A.n % 2 == 0:
        if orient is None:
            raise AlgebraError("even n needs an edge orientation")
        if not all(_orientation_ok(g, orient)):
            raise AlgebraError("the given orientation does not satisfy the parity condition")
    values = {}
    for E in g.edges:
        x = A.index[("c", E)]
        h = A.rep[E]
        # c[E] = c_h, so tr(c[E]) = tr(c_h)
        values[x] = 1 if A.n % 2 else (-1) ** orient.epsilon(g, h)
    return TraceFunctional(values, A.n)


def _orientation_ok(g: SGraph, orient: EdgeOrientation) -> Iterable[bool]:
    from .sgraph_core import orientation_ok
    yield orientation_ok(g, orient)


@dataclass
class CyReport:
    symmetric: bool
    nondegenerate: bool
    rank: int
    dim: int
    asymmetric_pairs: list[tuple[str, str]]

    @property
    def ok(self) -> bool:
        return self.symmetric and self.nondegenerate


def verify_cy(A: RgbAlgebra, tr: TraceFunctional) -> CyReport:
    bad = []
    F = A.field
    rows = []
    for x in range(A.dim):
        row = []
        for y in range(A.dim):
            xy = tr(A.multiply(x, y)) if y in A.composable.get(x, []) or A.basis[y].source == A.basis[x].target else 0
            row.append(xy)
        rows.append(row)
    for x in range(A.dim):
        for y in range(A.dim):
            s = (-1) ** (A.basis[x].degree * A.basis[y].degree)
            if not F.is_zero(rows[x][y] - s * rows[y][x]):
                bad.append((A.basis[x].name, A.basis[y].name))
    rank = F.rank(rows)
    return CyReport(not bad, rank == A.dim, rank, A.dim, bad[:10])


@dataclass
class CyObstruction:
    halfedge: str
    vertex: str
    s: int  # basis index of the full cycle s_i
    t: int  # basis index of s_i^(n/m - 1)
    sign: int  # (-1)^(|s||t|)

    def describe(self, A: RgbAlgebra) -> str:
        return (f"s = {A.basis[self.s].name} (degree {A.basis[self.s].degree}), "
                f"t = {A.basis[self.t].name} (degree {A.basis[self.t].degree}); "
                f"st = ts = +-c[{A.edge(self.halfedge)}] but symmetry needs tr(st) = {self.sign} tr(ts)")


def refute_cy(A: RgbAlgebra) -> CyObstruction | None:
    """For even ``n`` and an odd-degree vertex, the pair ``(s_i, s_i^(n/m - 1))``
    forces ``tr(c_i) = -tr(c_i)`` for any symmetric trace."""
    if A.field.characteristic == 2:
        raise AlgebraError("the obstruction needs characteristic different from 2")
    g = A.g
    if A.n % 2:
        return None
    for v in g.vertices:
        if not g.is_internal(v):
            continue
        m = int(g.degree(v))
        if m % 2 == 0:
            continue
        i = g.order[v][0]
        q = len(g.order[v])
        N = A.N[v]
        s = A.index[("p", i, q)]
        t = A.index[("p", i, q * (N - 1))]
        st = A.multiply(s, t)
        ts = A.multiply(t, s)
        c = A.index[("c", A.edge(i))]
        assert set(st) == {c} and set(ts) == {c} and st[c] == ts[c]
        sign = (-1) ** (A.basis[s].degree * A.basis[t].degree)
        assert sign == -1
        return CyObstruction(i, v, s, t, sign)
    return None


def emit(A: RgbAlgebra, what: str) -> str:
    if what == "json":
        return json.dumps(A.to_json(), indent=1, sort_keys=True)
    if what == "dims":
        return json.dumps({"format": 1, "dim": A.dim, "graded": {str(k): v for k, v in A.graded_dims().items()}},
                          sort_keys=True)
    if what == "relations":
        lines = []
        for r in A.relations():
            terms = " + ".join(f"({c})*{'.'.join(reversed(w))}" for c, w in r["terms"])
            lines.append(f"{r['family']}: {terms} = 0")
        for k, v in A.differential_generators().items():
            lines.append(f"d({k}) = " + " + ".join(f"({c})*{'.'.join(reversed(w))}" for c, w in v))
        return "\n".join(lines)
    if what == "basis":
        return "\n".join(f"{el.name}\t{el.degree}\t{el.source}->{el.target}" for el in A.basis)
    raise ValueError(f"unknown emit kind {what!r}")
