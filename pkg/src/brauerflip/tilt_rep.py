"""Simple tilts, checked at three levels.

* Arcs: tilting the edge objects at ``A_e`` smooths every degree-1
  intersection into ``e``; the result should be the edge set of the flipped
  S-graph, read in the coordinates of the unflipped one.
* Grothendieck groups: base-change matrices of a tilt.
* Modules over a bound quiver algebra: the new simple ``psi(X)`` after tilting
  at a vertex simple ``S``, with a brute-force submodule oracle.

Shift sign: ``[S[1]] = -[S]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import ext_oracle as xo
from .ext_oracle import CCW, CW, GradedArc, Segment, ExtError
from .fields import Field, Span
from .flip_engine import BACKWARD, FORWARD, FlipRecord, backward_flip, forward_flip
from .sgraph_core import SGraph, sorted_ids


class TiltError(ValueError):
    pass


# -- arcs -----------------------------------------------------------------------------


def is_monogon(g: SGraph, e: str) -> bool:
    """Exactly one end of ``e`` has degree 1."""
    v, u = g.endpoints(e)
    return (g.degree(v) == 1) != (g.degree(u) == 1)


@dataclass
class SimpleMindedCollection:
    graph: SGraph
    edge: str
    direction: str
    arcs: dict[str, GradedArc]

    def canonical(self) -> dict[str, tuple]:
        return {x: arc.canonical() for x, arc in self.arcs.items()}

    def k0(self) -> dict[str, dict[str, int]]:
        return {x: arc.k0() for x, arc in self.arcs.items()}

    def text(self) -> str:
        return "\n".join(f"{x}: {self.arcs[x].text()}" for x in sorted_ids(self.arcs))


def _other_half(g: SGraph, a: str) -> str:
    return next(k for k in g.halves(g.edge_of(a)) if k != a)


def _normalize(arc: GradedArc, x: str) -> GradedArc:
    """Shift so the grading at the midpoint of ``x`` is 0."""
    i = arc.mids.index(x)
    return arc.shifted(-arc.gradings[i])


def degree_one_intersections(g: SGraph, first: str, second: str) -> list[xo.Intersection]:
    return [x for x in xo.intersections(g, first, second) if x.degree == 1]


def tilt_arcs(g: SGraph, e: str, direction: str = FORWARD) -> SimpleMindedCollection:
    """New simples after tilting at ``A_e``, as graded arcs in ``g``.

    Forward: ``A_e[1]`` and, for every other edge ``X``, ``X`` smoothed into
    ``e`` at each degree-1 intersection from ``X`` to ``e``.  Backward: ``A_e[-1]``
    and ``e`` smoothed into ``X``.  An edge with one degree-1 end is replaced by
    its self-extension arc before smoothing.
    """
    if e not in g.edges:
        raise TiltError(f"unknown edge {e!r}")
    forward = direction in (FORWARD, "fwd")
    mono = is_monogon(g, e)
    out = {e: xo.edge_arc(g, e, grading=1 if forward else -1)}
    for X in sorted_ids(g.edges):
        if X == e:
            continue
        arc = xo.edge_arc(g, X)
        hits = degree_one_intersections(g, X, e) if forward else degree_one_intersections(g, e, X)
        for x in hits:
            if forward:
                if arc.segments[-1].a != x.a:
                    arc = arc.reversed()
                tail = xo.monogon_arc(g, e) if mono else xo.edge_arc(g, e, start=x.b)
                if tail.segments[0].a != x.b:
                    raise TiltError(f"self-extension of {e} does not leave along {x.b}")
                arc = xo.join(g, arc, tail)
            else:
                if arc.segments[0].a != x.b:
                    arc = arc.reversed()
                head = xo.monogon_arc(g, e) if mono else xo.edge_arc(g, e, start=_other_half(g, x.a))
                if head.segments[-1].a != x.a:
                    raise TiltError(f"self-extension of {e} does not arrive along {x.a}")
                arc = xo.join(g, head, arc)
        out[X] = _normalize(arc, X)
    return SimpleMindedCollection(g, e, FORWARD if forward else BACKWARD, out)


def tilt_forward_arcs(g: SGraph, e: str) -> SimpleMindedCollection:
    return tilt_arcs(g, e, FORWARD)


def tilt_backward_arcs(g: SGraph, e: str) -> SimpleMindedCollection:
    return tilt_arcs(g, e, BACKWARD)


def _wrap_step(g: SGraph, s: Segment) -> int:
    span = xo.sector_degree(g, s.a, s.b)
    return span - 1 if s.way == CCW else 1 - span


def flip_arcs(rec: FlipRecord) -> SimpleMindedCollection:
    """Edges of ``rec.output`` drawn in the coordinates of ``rec.input``.

    Built from the moved halfedges alone: each moved end slides along the
    flipped edge (or around its degree-1 end) to its new position.
    """
    g, e = rec.input, rec.edge
    forward = rec.direction == FORWARD
    moved = {m.halfedge: m for m in rec.moved}

    def end_chain(c: str) -> tuple[list[Segment], list[str]]:
        # segments from the midpoint of c's edge out to c's (new) end
        if c not in moved:
            return [Segment("I", g.vertex[c], c)], []
        m = moved[c]
        here, there = m.via, _other_half(g, m.via)
        v = g.vertex[here]
        if forward:
            turn = Segment("II", v, c, here, CCW)
        else:
            turn = Segment("II", v, here, c, CW)
        if not rec.monogon:
            return [turn, Segment("I", g.vertex[there], there)], [e]
        around = Segment("II", g.vertex[there], there, there, CCW if forward else CW)
        return [turn, around, Segment("I", v, here)], [e, e]

    arcs = {e: xo.edge_arc(g, e, grading=rec.grading_shift)}
    for X in sorted_ids(g.edges):
        if X == e:
            continue
        c0, c1 = g.halves(X)
        s0, m0 = end_chain(c0)
        s1, m1 = end_chain(c1)
        segs = [s.reversed() for s in reversed(s0)] + s1
        mids = m0[::-1] + [X] + m1
        centre = len(m0)
        grades = [0] * len(mids)
        for i in range(centre + 1, len(mids)):
            grades[i] = grades[i - 1] + _wrap_step(g, segs[i])
        for i in range(centre - 1, -1, -1):
            grades[i] = grades[i + 1] - _wrap_step(g, segs[i + 1])
        arcs[X] = GradedArc(tuple(segs), tuple(mids), tuple(grades))
    return SimpleMindedCollection(g, e, rec.direction, arcs)


def check_tilt_flip(g: SGraph, e: str, direction: str = FORWARD) -> list[str]:
    """Differences between tilting at ``e`` and flipping at ``e`` (empty if none)."""
    rec = forward_flip(g, e) if direction in (FORWARD, "fwd") else backward_flip(g, e)
    tilted = tilt_arcs(g, e, rec.direction)
    flipped = flip_arcs(rec)
    problems = []
    for X in sorted_ids(g.edges):
        for arc, side in ((tilted.arcs[X], "tilt"), (flipped.arcs[X], "flip")):
            try:
                arc.check(g)
            except ExtError as exc:
                problems.append(f"{side} arc of {X} is malformed: {exc}")
        if tilted.arcs[X].canonical() != flipped.arcs[X].canonical():
            problems.append(f"edge {X}: tilt {tilted.arcs[X].text()} != flip {flipped.arcs[X].text()}")
        ends = sorted(flipped.arcs[X].endpoints())
        if ends != sorted(rec.output.endpoints(X)):
            problems.append(f"edge {X}: arc ends {ends} but flipped edge joins {rec.output.endpoints(X)}")
    return problems


# -- Grothendieck groups ----------------------------------------------------------------


@dataclass(frozen=True)
class K0Matrix:
    """Column ``j`` is the class of the new object in slot ``edges[j]``."""

    edges: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def __matmul__(self, other: "K0Matrix") -> "K0Matrix":
        if self.edges != other.edges:
            raise TiltError("matrices are indexed by different edges")
        n = len(self.edges)
        rows = tuple(tuple(sum(self.rows[i][k] * other.rows[k][j] for k in range(n))
                           for j in range(n)) for i in range(n))
        return K0Matrix(self.edges, rows)

    def is_identity(self) -> bool:
        return all(x == (i == j) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def column(self, x: str) -> dict[str, int]:
        j = self.edges.index(x)
        return {self.edges[i]: r[j] for i, r in enumerate(self.rows) if r[j]}

    def determinant(self) -> int:
        m = [[Fraction(x) for x in r] for r in self.rows]
        n, det = len(m), Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c]), None)
            if p is None:
                return 0
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det *= m[c][c]
            for r in range(c + 1, n):
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        return int(det)

    def to_json(self) -> dict:
        return {"edges": list(self.edges), "rows": [list(r) for r in self.rows]}


def tilt_multiplicity(g: SGraph, scheme: xo.Scheme, e: str, X: str, direction: str) -> int:
    """Coefficient of ``[A_e]`` in the new class of ``X``.

    ``dim Ext^1(A_X, A_e)`` forward and ``dim Ext^1(A_e, A_X)`` backward,
    doubled when ``e`` has a degree-1 end (its self-extension enters twice).
    """
    forward = direction in (FORWARD, "fwd")
    m = xo.rhom_edges(g, scheme, X, e)[1] if forward else xo.rhom_edges(g, scheme, e, X)[1]
    return 2 * m if is_monogon(g, e) else m


def k0_tilt_matrix(g: SGraph, scheme: xo.Scheme, e: str, direction: str = FORWARD) -> K0Matrix:
    edges = tuple(sorted_ids(g.edges))
    n = len(edges)
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    k = edges.index(e)
    rows[k][k] = -1
    for j, X in enumerate(edges):
        if X != e:
            rows[k][j] = tilt_multiplicity(g, scheme, e, X, direction)
    return K0Matrix(edges, tuple(map(tuple, rows)))


def k0_from_arcs(c: SimpleMindedCollection) -> K0Matrix:
    edges = tuple(sorted_ids(c.graph.edges))
    cols = c.k0()
    return K0Matrix(edges, tuple(tuple(cols[x].get(y, 0) for x in edges) for y in edges))


# -- bound quiver algebras and modules ----------------------------------------------------


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass
class QuiverAlgebra:
    """Path algebra modulo length-homogeneous relations.

    A path is a tuple of arrow names in the order they are traversed.  A
    relation maps paths (all of one length, same ends) to coefficients.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[dict, ...] = ()
    field: Field = field(default_factory=Field)
    max_length: int = 32

    def __post_init__(self):
        self._arrow = {a.name: a for a in self.arrows}
        for r in self.relations:
            lens = {len(p) for p in r}
            if len(lens) != 1:
                raise TiltError(f"relation {r} is not length-homogeneous")
            ends = {(self.path_source(p), self.path_target(p)) for p in r}
            if len(ends) != 1:
                raise TiltError(f"relation {r} mixes paths with different ends")
        self._proj: dict[str, "FinModule"] = {}

    def arrow(self, name: str) -> Arrow:
        return self._arrow[name]

    def path_source(self, p: tuple) -> str:
        return self._arrow[p[0]].source

    def path_target(self, p: tuple) -> str:
        return self._arrow[p[-1]].target

    def projective(self, x: str, cap: int | None = None) -> "FinModule":
        """``P_x``: paths out of ``x`` modulo the relations.

        Built one path length at a time: layer ``L + 1`` is spanned by basis
        paths of layer ``L`` followed by one arrow, modulo the relations that
        end at the last arrow.  ``cap`` bounds the dimension.
        """
        if x in self._proj:
            return self._proj[x]
        F = self.field
        layers: list[list[tuple]] = [[()]]
        # step[L][a][i]: image of basis path i of layer L under arrow a, as a vector in layer L + 1
        step: list[dict[str, list[list]]] = []

        def end(p: tuple) -> str:
            return x if not p else self.path_target(p)

        def push(L: int, vec: list, arrows: tuple) -> list:
            for k, a in enumerate(arrows):
                m = step[L + k][a]
                out = [F.convert(0)] * len(layers[L + k + 1])
                for i, c in enumerate(vec):
                    if c:
                        for j, y in enumerate(m[i]):
                            out[j] = F.convert(out[j] + c * y)
                vec = out
            return vec

        total = 1
        while True:
            L = len(layers) - 1
            cands = [(i, a.name) for i, p in enumerate(layers[L]) for a in self.arrows
                     if a.source == end(p)]
            pos = {c: k for k, c in enumerate(cands)}
            ideal = Span(F, len(cands))
            for r in self.relations:
                rl = len(next(iter(r)))
                if rl > L + 1:
                    continue
                base = L + 1 - rl
                for i, pre in enumerate(layers[base]):
                    if end(pre) != self.path_source(next(iter(r))):
                        continue
                    vec = [0] * len(cands)
                    for path, c in r.items():
                        unit = [int(k == i) for k in range(len(layers[base]))]
                        w = push(base, unit, path[:-1])
                        for j, y in enumerate(w):
                            if y:
                                vec[pos[(j, path[-1])]] += c * y
                    ideal.add(vec)
            piv = set(ideal.pivots())
            free = [k for k in range(len(cands)) if k not in piv]
            maps: dict[str, list[list]] = {a.name: [[F.convert(0)] * len(free) for _ in layers[L]]
                                           for a in self.arrows}
            for k, (i, a) in enumerate(cands):
                red = ideal.reduce([int(t == k) for t in range(len(cands))])
                maps[a][i] = [red[f] for f in free]
            step.append(maps)
            if not free:
                break
            layers.append([layers[L][cands[f][0]] + (cands[f][1],) for f in free])
            total += len(free)
            if cap is not None and total > cap:
                raise TiltError(f"projective at {x} exceeds dimension {cap}")
            if len(layers) > self.max_length + 1:
                raise TiltError(f"paths out of {x} do not vanish by length {self.max_length}")
        basis = [p for layer in layers for p in layer]
        offset = [0]
        for layer in layers:
            offset.append(offset[-1] + len(layer))
        act = {a.name: [[F.convert(0)] * len(basis) for _ in basis] for a in self.arrows}
        for L, maps in enumerate(step):
            for a, m in maps.items():
                for i, row in enumerate(m):
                    for j, y in enumerate(row):
                        if y:
                            act[a][offset[L + 1] + j][offset[L] + i] = y
        mod = FinModule(self, tuple(end(p) for p in basis), act, labels=tuple(basis))
        self._proj[x] = mod
        return mod

    def dimension(self, cap: int | None = None) -> int:
        return sum(self.projective(x, cap).dim for x in self.vertices)

    def opposite(self) -> "QuiverAlgebra":
        arrows = tuple(Arrow(a.name, a.target, a.source) for a in self.arrows)
        rels = tuple({tuple(reversed(p)): c for p, c in r.items()} for r in self.relations)
        return QuiverAlgebra(self.vertices, arrows, rels, self.field, self.max_length)

    def ext1_simple(self, x: str, y: str) -> int:
        """``dim Ext^1(S_x, S_y)``: arrows ``x -> y`` (relations lie in the square of the radical)."""
        return sum(1 for a in self.arrows if a.source == x and a.target == y)


@dataclass
class FinModule:
    """A representation: basis vectors each living at a vertex, and a matrix per
    arrow (column ``j`` is the image of basis vector ``j``)."""

    algebra: QuiverAlgebra
    vertex_of: tuple[str, ...]
    act: dict[str, list[list]]
    labels: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.vertex_of)

    def dimension_vector(self) -> dict[str, int]:
        out = {v: 0 for v in self.algebra.vertices}
        for v in self.vertex_of:
            out[v] += 1
        return out

    def apply(self, arrow: str, vec: list) -> list:
        F = self.algebra.field
        m = self.act[arrow]
        return [F.convert(sum(m[i][j] * vec[j] for j in range(self.dim))) for i in range(self.dim)]

    def check_relations(self) -> bool:
        F = self.algebra.field
        for r in self.algebra.relations:
            for j in range(self.dim):
                tot = [0] * self.dim
                for p, c in r.items():
                    vec = [int(k == j) for k in range(self.dim)]
                    for a in p:
                        vec = self.apply(a, vec)
                    tot = [t + c * x for t, x in zip(tot, vec)]
                if any(not F.is_zero(t) for t in tot):
                    return False
        return True

    def project(self, v: str, vec: list) -> list:
        return [x if self.vertex_of[k] == v else 0 for k, x in enumerate(vec)]

    def closure(self, span: Span) -> Span:
        """Smallest submodule containing ``span``."""
        out = span.copy()
        todo = list(out.basis())
        while todo:
            w = todo.pop()
            imgs = [self.project(v, w) for v in self.algebra.vertices]
            imgs += [self.apply(a.name, w) for a in self.algebra.arrows]
            for x in imgs:
                if out.add(x):
                    todo.append(x)
        return out

    def span(self, vectors) -> Span:
        return Span(self.algebra.field, self.dim, vectors)

    def unit(self, k: int) -> list:
        return [int(i == k) for i in range(self.dim)]

    def radical(self) -> Span:
        return self.closure(self.span(self.apply(a.name, self.unit(k))
                                      for a in self.algebra.arrows for k in range(self.dim)))

    def quotient(self, sub: Span) -> "FinModule":
        F = self.algebra.field
        piv = set(sub.pivots())
        keep = [k for k in range(self.dim) if k not in piv]
        pos = {k: i for i, k in enumerate(keep)}
        act = {}
        for a, m in self.act.items():
            new = [[F.convert(0)] * len(keep) for _ in keep]
            for j, k in enumerate(keep):
                red = sub.reduce(self.apply(a, self.unit(k)))
                for r in keep:
                    new[pos[r]][j] = red[r]
            act[a] = new
        labels = tuple(self.labels[k] for k in keep) if self.labels else ()
        return FinModule(self.algebra, tuple(self.vertex_of[k] for k in keep), act, labels)

    def submodule(self, sub: Span) -> "FinModule":
        """``sub`` as a module, in a basis of vertex-pure vectors."""
        F = self.algebra.field
        basis = []
        for v in self.algebra.vertices:
            part = Span(F, self.dim, [self.project(v, w) for w in sub.basis()])
            basis += [(v, w) for w in part.basis()]
        mat_cols = [w for _, w in basis]
        act = {}
        for a in self.algebra.arrows:
            cols = [_solve(F, mat_cols, self.apply(a.name, w)) for _, w in basis]
            act[a.name] = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
        return FinModule(self.algebra, tuple(v for v, _ in basis), act)

    def loewy_layers(self) -> list[dict[str, int]]:
        """Dimension vectors of ``rad^i M / rad^(i+1) M``."""
        layers = []
        cur = self
        while cur.dim:
            rad = cur.radical()
            top = cur.quotient(rad)
            layers.append(top.dimension_vector())
            cur = cur.submodule(rad)
        return layers

    def dual(self, opposite: QuiverAlgebra) -> "FinModule":
        """``Hom_k(M, k)`` as a module over the opposite algebra."""
        act = {a: [list(col) for col in zip(*m)] for a, m in self.act.items()}
        return FinModule(opposite, self.vertex_of, act)


def _solve(F: Field, cols: list[list], target: list) -> list:
    """Coefficients expressing ``target`` in the independent columns ``cols``."""
    n = len(cols)
    dim = len(target)
    aug = [[F.convert(cols[j][i]) for j in range(n)] + [F.convert(target[i])] for i in range(dim)]
    row = 0
    pivcols = []
    for c in range(n):
        p = next((r for r in range(row, dim) if aug[r][c] != 0), None)
        if p is None:
            continue
        aug[row], aug[p] = aug[p], aug[row]
        inv = F.inverse(aug[row][c])
        aug[row] = [F.convert(x * inv) for x in aug[row]]
        for r in range(dim):
            if r != row and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [F.convert(a - f * b) for a, b in zip(aug[r], aug[row])]
        pivcols.append(c)
        row += 1
    if any(aug[r][n] != 0 for r in range(row, dim)):
        raise TiltError("vector is not in the span")
    out = [F.convert(0)] * n
    for r, c in enumerate(pivcols):
        out[c] = aug[r][n]
    return out


def top_S(M: FinModule, S: str) -> int:
    """Multiplicity of ``S`` in ``top_S(M) = S (x) Hom(M, S)^*``."""
    return sub_S(M, S)[1]


def sub_S(M: FinModule, S: str) -> tuple[Span, int]:
    """Kernel of the evaluation ``M -> top_S(M)`` and the rank of ``top_S(M)``."""
    gens = list(M.radical().basis())
    gens += [M.unit(k) for k in range(M.dim) if M.vertex_of[k] != S]
    ker = M.closure(M.span(gens))
    return ker, M.dim - len(ker)


def s_filtration(M: FinModule, S: str) -> list[int]:
    """Ranks of ``top^i_S(M)``, ``i = 1, 2, ...``, until they vanish."""
    out = []
    cur = M
    while True:
        ker, r = sub_S(cur, S)
        if r == 0:
            return out
        out.append(r)
        cur = cur.submodule(ker)


@dataclass
class ModuleTilt:
    module: FinModule
    kernel: Span  # submodule of P_X (forward) or of I_X, dualized (backward)
    direction: str
    ambient: FinModule


def _universal_quotient(P: FinModule, x: str, S: str) -> Span:
    """Smallest submodule ``U`` of ``P_x`` with ``P_x / U`` having one ``x`` and
    otherwise only ``S`` composition factors."""
    rad = P.radical()
    gens = [P.project(v, w) for w in rad.basis() for v in P.algebra.vertices if v != S]
    return P.closure(P.span(gens))


def module_tilt(alg: QuiverAlgebra, S: str, X: str, direction: str = FORWARD) -> ModuleTilt:
    """New simple replacing ``X`` after a simple tilt at ``S``.

    Forward: the largest quotient of the projective cover of ``X`` whose
    radical is filtered by ``S``; this is the fiber of the minimal left
    approximation of ``X`` by extensions of ``S[1]``.  Backward: dually, the
    largest submodule of the injective hull with ``S``-filtered cokernel of the
    socle.
    """
    if S == X:
        raise TiltError("the tilting simple itself is replaced by its shift")
    if S not in alg.vertices or X not in alg.vertices:
        raise TiltError("unknown vertex")
    if direction in (FORWARD, "fwd"):
        P = alg.projective(X)
        U = _universal_quotient(P, X, S)
        return ModuleTilt(P.quotient(U), U, FORWARD, P)
    op = alg.opposite()
    Pop = op.projective(X)
    U = _universal_quotient(Pop, X, S)
    T = Pop.quotient(U).dual(alg)
    return ModuleTilt(T, U, BACKWARD, Pop.dual(alg))


def injective_hull(alg: QuiverAlgebra, x: str) -> FinModule:
    return alg.opposite().projective(x).dual(alg)


def annihilator(F: Field, dim: int, sub: Span) -> Span:
    """Vectors ``w`` with ``<w, u> = 0`` for all ``u`` in ``sub``."""
    piv = sub.pivots()
    free = [k for k in range(dim) if k not in set(piv)]
    out = Span(F, dim)
    for f in free:
        w = [0] * dim
        w[f] = 1
        for p, row in zip(piv, sub.basis()):
            w[p] = F.convert(-row[f])
        out.add(w)
    return out


# -- brute force ---------------------------------------------------------------------------


def all_submodules(M: FinModule, limit: int = 200000) -> list[Span]:
    """Every submodule of ``M`` over a finite field, grown one generator at a time."""
    F = M.algebra.field
    if F.characteristic == 0:
        raise TiltError("submodule enumeration needs a finite field")
    p = F.characteristic
    # submodules are sums of their vertex parts, so vertex-pure generators suffice
    vectors = []
    for v in M.algebra.vertices:
        slots = [k for k in range(M.dim) if M.vertex_of[k] == v]
        for t in itertools.product(range(p), repeat=len(slots)):
            if any(t):
                vec = [0] * M.dim
                for k, c in zip(slots, t):
                    vec[k] = c
                vectors.append(vec)
    seen = {}
    zero = M.span([])
    seen[zero.key()] = zero
    todo = [zero]
    while todo:
        W = todo.pop()
        for v in vectors:
            if W.contains(v):
                continue
            W2 = W.copy()
            W2.add(v)
            W2 = M.closure(W2)
            k = W2.key()
            if k not in seen:
                seen[k] = W2
                todo.append(W2)
                if len(seen) > limit:
                    raise TiltError("too many submodules")
    return list(seen.values())


def _factors_ok(dims: dict[str, int], X: str, S: str) -> bool:
    return dims.get(X, 0) == 1 and all(c == 0 for v, c in dims.items() if v not in (X, S))


def brute_force_tilt(alg: QuiverAlgebra, S: str, X: str, direction: str = FORWARD) -> Span:
    """Search the submodule lattice for the defining module.

    Forward: the smallest ``U`` in ``P_X`` with quotient factors ``X`` once and
    otherwise ``S``.  Backward: the largest such submodule of ``I_X``.  The
    optimum must be unique.
    """
    if direction in (FORWARD, "fwd"):
        M = alg.projective(X)
        cands = [U for U in all_submodules(M)
                 if _factors_ok(_quotient_dims(M, U), X, S)]
        best = min(len(U) for U in cands)
    else:
        M = injective_hull(alg, X)
        cands = [W for W in all_submodules(M) if _factors_ok(_sub_dims(M, W), X, S)]
        best = max(len(W) for W in cands)
    winners = [U for U in cands if len(U) == best]
    if len(winners) != 1:
        raise TiltError(f"{len(winners)} optimal candidates")
    return winners[0]


def _sub_dims(M: FinModule, W: Span) -> dict[str, int]:
    out = {v: 0 for v in M.algebra.vertices}
    for v in M.algebra.vertices:
        out[v] = len(Span(M.algebra.field, M.dim, [M.project(v, w) for w in W.basis()]))
    return out


def _quotient_dims(M: FinModule, U: Span) -> dict[str, int]:
    sub = _sub_dims(M, U)
    full = M.dimension_vector()
    return {v: full[v] - sub[v] for v in full}


def tilt_subspace(alg: QuiverAlgebra, t: ModuleTilt) -> Span:
    """The tilt as a subspace of the ambient module the brute force searches."""
    if t.direction == FORWARD:
        return t.kernel
    return annihilator(alg.field, t.ambient.dim, t.kernel)


# -- small algebras ---------------------------------------------------------------------------


def a2_algebra(field: Field = Field(2)) -> QuiverAlgebra:
    return QuiverAlgebra(("1", "2"), (Arrow("a", "1", "2"),), (), field)


def local_extension_algebra(field: Field = Field(2)) -> QuiverAlgebra:
    """``X -> S`` with a loop at ``S`` squaring to zero: ``Ext^1(S, S) = k``,
    the self-extension of ``S`` is projective, and ``Ext^1(X, S) = k``."""
    return QuiverAlgebra(("X", "S"), (Arrow("a", "X", "S"), Arrow("l", "S", "S")),
                         ({("l", "l"): 1},), field)


def random_algebra(rng, n_vertices: int = 3, max_arrows: int = 4, field: Field = Field(2),
                   max_dim: int = 12, tries: int = 200) -> QuiverAlgebra:
    """Random bound quiver algebra of total dimension at most ``max_dim``.

    Relations are zero relations on paths of length 2 and, where two parallel
    length-2 paths exist, sometimes a commutativity relation.
    """
    verts = tuple(str(i) for i in range(1, n_vertices + 1))
    for _ in range(tries):
        arrows = []
        for k in range(rng.randint(2, max_arrows)):
            s, t = rng.choice(verts), rng.choice(verts)
            arrows.append(Arrow(f"x{k}", s, t))
        alg = QuiverAlgebra(verts, tuple(arrows), (), field)
        pairs = [(a.name, b.name) for a in arrows for b in arrows if a.target == b.source]
        rels = []
        by_ends: dict[tuple, list] = {}
        for p in pairs:
            by_ends.setdefault((alg.path_source(p), alg.path_target(p)), []).append(p)
        for ends, ps in sorted(by_ends.items()):
            if len(ps) >= 2 and rng.random() < 0.4:
                rels.append({ps[0]: 1, ps[1]: -1})
                ps = ps[2:]
            for p in ps:
                if rng.random() < 0.7:
                    rels.append({p: 1})
        alg = QuiverAlgebra(verts, tuple(arrows), tuple(rels), field, max_length=max_dim + 1)
        try:
            if alg.dimension(cap=max_dim) <= max_dim:
                return alg
        except TiltError:
            continue
    raise TiltError("no small algebra found")
