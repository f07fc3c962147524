"""Graded Hom spaces between edge objects, computed from intersections.

Every edge ``e`` of an S-graph gives an object ``A_e``; the graded dimension of
``RHom(A_e, A_h)`` is assembled from local endomorphism rings: ``End_L`` on
edges and ``End_v`` per vertex.  A *scheme* supplies those rings together with
the ranks of the restriction maps ``End_v -> End_L``.

Shift convention: ``V[-d]`` moves the degree ``k`` part of ``V`` to degree
``k + d``.

Arcs built from edges by smoothing intersections are :class:`GradedArc`
values: a chain of segments meeting at edge midpoints, with one grading
integer per midpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .sgraph_core import SGraph, SGraphError, sorted_ids

SINGULAR = "singular"
BOUNDARY_X = "boundary"


class ExtError(ValueError):
    pass


# -- graded spaces and local rings -------------------------------------------------


@dataclass(frozen=True)
class GradedVectorSpace:
    """Finitely supported map from degrees to dimensions."""

    dims: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, dims: Mapping[int, int] | Iterable[tuple[int, int]]) -> "GradedVectorSpace":
        items = dims.items() if isinstance(dims, Mapping) else dims
        acc: dict[int, int] = {}
        for k, v in items:
            if v < 0:
                raise ExtError(f"negative dimension {v} in degree {k}")
            if v:
                acc[int(k)] = acc.get(int(k), 0) + int(v)
        return cls(tuple(sorted(acc.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.dims)

    def __getitem__(self, k: int) -> int:
        return self.as_dict().get(k, 0)

    def __add__(self, other: "GradedVectorSpace") -> "GradedVectorSpace":
        return GradedVectorSpace.of(list(self.dims) + list(other.dims))

    def __mul__(self, other: "GradedVectorSpace") -> "GradedVectorSpace":
        out: dict[int, int] = {}
        for a, x in self.dims:
            for b, y in other.dims:
                out[a + b] = out.get(a + b, 0) + x * y
        return GradedVectorSpace.of(out)

    def shift(self, d: int) -> "GradedVectorSpace":
        """``V[-d]``: degree ``k`` goes to ``k + d``."""
        return GradedVectorSpace(tuple((k + d, v) for k, v in self.dims))

    def total(self) -> int:
        return sum(v for _, v in self.dims)

    def degrees(self) -> list[int]:
        return [k for k, _ in self.dims]

    def __bool__(self) -> bool:
        return bool(self.dims)


ZERO = GradedVectorSpace()


@dataclass(frozen=True)
class GradedLocalRing:
    """A local ring remembered through its graded dimensions and a scheme tag."""

    space: GradedVectorSpace
    tag: tuple

    @property
    def dims(self) -> dict[int, int]:
        return self.space.as_dict()

    def is_positive(self) -> bool:
        d = self.dims
        return d.get(0, 0) == 1 and all(k >= 0 for k in d)


def SphereLike(n: int) -> GradedLocalRing:
    """``k + k[1-n]``: cochains on the ``(n-1)``-sphere."""
    return GradedLocalRing(GradedVectorSpace.of([(0, 1), (n - 1, 1)]), ("sphere", n))


def TruncatedPoly(n: int, m: int) -> GradedLocalRing:
    """``k[x]/(x^(n/m))`` with ``|x| = m``, the ring at a vertex of degree ``m``."""
    if m <= 0 or n % m:
        raise ExtError(f"vertex degree {m} does not divide {n}")
    return GradedLocalRing(GradedVectorSpace.of([(r * m, 1) for r in range(n // m)]),
                           ("truncated", n, m))


def TensorOfSpheres(lams: Iterable[int]) -> GradedLocalRing:
    lams = tuple(lams)
    space = GradedVectorSpace.of({0: 1})
    for i in lams:
        space = space * GradedVectorSpace.of([(0, 1), (i - 1, 1)])
    return GradedLocalRing(space, ("spheres", lams))


@dataclass(frozen=True)
class Scheme:
    """Local data for the Hom formula.

    ``end_v(g, v)`` gives the ring at a vertex and ``restriction(g, v, k)`` the
    rank of ``End_v -> End_L`` in degree ``k``.
    """

    name: str
    end_L: GradedLocalRing
    end_v: Callable[[SGraph, str], GradedLocalRing]
    restriction: Callable[[SGraph, str, int], int]


def rgb_scheme(n: int) -> Scheme:
    """Local rings matching the RGB algebra ``A(g, n)``.

    Boundary vertices share ``End_L``; restriction is the identity there.  At an
    internal vertex it is the identity in degree 0 and zero above.
    """
    L = SphereLike(n)

    def end_v(g: SGraph, v: str) -> GradedLocalRing:
        if not g.is_internal(v):
            return L
        return TruncatedPoly(n, int(g.degree(v)))

    def restriction(g: SGraph, v: str, k: int) -> int:
        if not g.is_internal(v):
            return L.dims.get(k, 0)
        return 1 if k == 0 else 0

    return Scheme(f"rgb(n={n})", L, end_v, restriction)


@dataclass(frozen=True)
class PositivityReport:
    positive: bool
    failures: tuple[str, ...]
    weight_minus_one: str = "satisfied by construction"

    def __bool__(self) -> bool:
        return self.positive


def positivity_check(scheme: Scheme | GradedLocalRing, g: SGraph | None = None) -> PositivityReport:
    """``H^0 = k`` and nothing in negative degrees, for ``End_L`` and every ``End_v``."""
    if isinstance(scheme, GradedLocalRing):
        ok = scheme.is_positive()
        return PositivityReport(ok, () if ok else (str(scheme.tag),))
    rings = [("End_L", scheme.end_L)]
    if g is not None:
        rings += [(f"End_{v}", scheme.end_v(g, v)) for v in g.vertices]
    bad = tuple(name for name, r in rings if not r.is_positive())
    return PositivityReport(not bad, bad)


# -- intersections ----------------------------------------------------------------


@dataclass(frozen=True)
class Intersection:
    kind: str
    vertex: str
    degree: int
    a: str  # halfedge of the first edge
    b: str  # halfedge of the second edge


def intersections(g: SGraph, e: str, h: str) -> list[Intersection]:
    """Directed intersections from ``e`` to ``h`` at shared endpoints (``e != h``).

    At a boundary vertex only the pairs with ``e``'s halfedge first count.
    """
    for x in (e, h):
        if x not in g.edges:
            raise ExtError(f"unknown edge {x!r}")
    if e == h:
        return []
    out = []
    for a in g.halves(e):
        for b in g.halves(h):
            v = g.vertex[a]
            if g.vertex[b] != v:
                continue
            if g.is_internal(v):
                out.append(Intersection(SINGULAR, v, g.d(a, b), a, b))
            elif g.precedes(a, b):
                out.append(Intersection(BOUNDARY_X, v, g.d(a, b), a, b))
    return sorted(out, key=lambda x: (x.vertex, x.a, x.b))


def self_intersections(g: SGraph, e: str) -> list[Intersection]:
    """Intersections of a loop with itself, both directions (one at a boundary vertex)."""
    if not g.is_loop(e):
        return []
    a, b = g.halves(e)
    v = g.vertex[a]
    if g.is_internal(v):
        return [Intersection(SINGULAR, v, g.d(a, b), a, b),
                Intersection(SINGULAR, v, g.d(b, a), b, a)]
    if not g.precedes(a, b):
        a, b = b, a
    return [Intersection(BOUNDARY_X, v, g.d(a, b), a, b)]


def _local(g: SGraph, scheme: Scheme, x: Intersection) -> GradedVectorSpace:
    ring = scheme.end_v(g, x.vertex) if x.kind == SINGULAR else scheme.end_L
    return ring.space.shift(x.degree)


def rhom_edges(g: SGraph, scheme: Scheme, e: str, h: str) -> GradedVectorSpace:
    """Graded dimension of ``RHom(A_e, A_h)`` for distinct edges."""
    if e == h:
        raise ExtError("rhom_edges needs distinct edges; use end_edge")
    out = ZERO
    for x in intersections(g, e, h):
        out = out + _local(g, scheme, x)
    return out


def end_edge(g: SGraph, scheme: Scheme, e: str) -> GradedVectorSpace:
    """Graded dimension of ``REnd(A_e)``.

    The pullback ``End_v x_{End_L} End_u`` is computed degreewise: the kernel of
    ``End_v + End_u -> End_L`` in degree ``k`` plus its cokernel in degree ``k-1``.
    """
    if e not in g.edges:
        raise ExtError(f"unknown edge {e!r}")
    a, b = g.halves(e)
    v, u = g.vertex[a], g.vertex[b]
    Ev, Eu, L = scheme.end_v(g, v).dims, scheme.end_v(g, u).dims, scheme.end_L.dims
    degs = set(Ev) | set(Eu) | set(L)
    dims: dict[int, int] = {}

    def rank(k: int) -> int:
        if L.get(k, 0) > 1:
            raise ExtError("pullback needs End_L of dimension at most 1 per degree")
        return max(scheme.restriction(g, v, k), scheme.restriction(g, u, k))

    for k in degs:
        ker = Ev.get(k, 0) + Eu.get(k, 0) - rank(k)
        dims[k] = dims.get(k, 0) + ker
        coker = L.get(k, 0) - rank(k)
        dims[k + 1] = dims.get(k + 1, 0) + coker
    out = GradedVectorSpace.of(dims)
    for x in self_intersections(g, e):
        out = out + _local(g, scheme, x)
    return out


def rhom(g: SGraph, scheme: Scheme, e: str, h: str) -> GradedVectorSpace:
    return end_edge(g, scheme, e) if e == h else rhom_edges(g, scheme, e, h)


def ext(g: SGraph, scheme: Scheme, e: str, h: str, k: int) -> int:
    return rhom(g, scheme, e, h)[k]


def simple_minded(g: SGraph, scheme: Scheme) -> list[str]:
    """Problems with the edge objects as a simple-minded collection (empty if none)."""
    problems = []
    for e in g.edges:
        for h in g.edges:
            space = rhom(g, scheme, e, h)
            if any(k < 0 for k in space.degrees()):
                problems.append(f"negative Ext from {e} to {h}")
            want = 1 if e == h else 0
            if space[0] != want:
                problems.append(f"Ext^0({e},{h}) has dimension {space[0]}, expected {want}")
    return problems


# -- oracle comparison ---------------------------------------------------------------


def compare_with_algebra(g: SGraph, n: int, algebra=None, pairs=None) -> list[dict]:
    """Side-by-side graded dims from the Hom formula and from ``A(g, n)``.

    The algebra side is the cohomology of ``e_h A e_e``: the boundary loop and
    the cycle at a boundary edge cancel there.
    """
    from .rgb_algebra import build_rgb

    A = algebra if algebra is not None else build_rgb(g, n)
    scheme = rgb_scheme(n)
    edges = sorted_ids(g.edges)
    rows = []
    for e, h in pairs if pairs is not None else [(e, h) for e in edges for h in edges]:
        ours = rhom(g, scheme, e, h).as_dict()
        theirs = {k: v for k, v in A.block_cohomology(e, h).items() if v}
        rows.append({"source": e, "target": h, "formula": ours, "algebra": theirs,
                     "match": ours == theirs})
    return rows


# -- graded arcs ---------------------------------------------------------------------

CCW, CW = "ccw", "cw"


@dataclass(frozen=True)
class Segment:
    """Type ``I`` runs from ``vertex`` out along ``a``; type ``II`` wraps around
    ``vertex`` through the counterclockwise sector from ``a`` to ``b``, crossed
    in direction ``way``."""

    kind: str
    vertex: str
    a: str
    b: str | None = None
    way: str | None = None

    def reversed(self) -> "Segment":
        if self.kind == "I":
            return self
        return Segment("II", self.vertex, self.a, self.b, CW if self.way == CCW else CCW)

    def entry(self) -> str:
        return self.a if self.way == CCW else self.b

    def exit(self) -> str:
        return self.b if self.way == CCW else self.a

    def text(self) -> str:
        if self.kind == "I":
            return f"I({self.vertex}:{self.a})"
        return f"II({self.vertex}:{self.a}->{self.b},{self.way})"


def sector_degree(g: SGraph, a: str, b: str) -> int:
    """Counterclockwise degree from ``a`` to ``b``; a full turn when ``a == b``."""
    if a == b:
        v = g.vertex[a]
        if not g.is_internal(v):
            raise ExtError(f"no full turn around boundary vertex {v!r}")
        return int(g.degree(v))
    return g.d(a, b)


@dataclass(frozen=True)
class GradedArc:
    """Segments ``s_0 .. s_k`` meeting at the midpoints of edges ``mids[0..k-1]``;
    ``gradings[i]`` is the grading at ``mids[i]`` relative to that edge."""

    segments: tuple[Segment, ...]
    mids: tuple[str, ...]
    gradings: tuple[int, ...]

    def __post_init__(self):
        if len(self.segments) != len(self.mids) + 1 or len(self.mids) != len(self.gradings):
            raise ExtError("malformed graded arc")

    def reversed(self) -> "GradedArc":
        return GradedArc(tuple(s.reversed() for s in reversed(self.segments)),
                         self.mids[::-1], self.gradings[::-1])

    def shifted(self, k: int) -> "GradedArc":
        return GradedArc(self.segments, self.mids, tuple(x + k for x in self.gradings))

    def canonical(self) -> tuple:
        fwd = self._key()
        bwd = self.reversed()._key()
        return min(fwd, bwd)

    def _key(self) -> tuple:
        segs = tuple((s.kind, s.vertex, s.a, s.b or "", s.way or "") for s in self.segments)
        return (segs, self.mids, self.gradings)

    def k0(self) -> dict[str, int]:
        """Class in the Grothendieck group, in the basis of edge objects."""
        out: dict[str, int] = {}
        for e, gr in zip(self.mids, self.gradings):
            out[e] = out.get(e, 0) + (-1) ** (gr % 2)
        return {e: c for e, c in sorted(out.items()) if c}

    def endpoints(self) -> tuple[str, str]:
        return self.segments[0].vertex, self.segments[-1].vertex

    def text(self) -> str:
        parts = [self.segments[0].text()]
        for s, m, gr in zip(self.segments[1:], self.mids, self.gradings):
            parts.append(f"<{m}:{gr}>")
            parts.append(s.text())
        return " ".join(parts)

    def check(self, g: SGraph) -> None:
        """Gradings follow the sector degrees; consecutive segments share midpoints."""
        segs = self.segments
        if segs[0].kind != "I" or segs[-1].kind != "I":
            raise ExtError("arc must start and end with type I segments")
        if any(s.kind != "II" for s in segs[1:-1]):
            raise ExtError("inner segments must be type II")
        for i, s in enumerate(segs):
            if i > 0:
                into = s.a if s.kind == "I" else s.entry()
                if g.edge_of(into) != self.mids[i - 1]:
                    raise ExtError(f"segment {s.text()} does not start at midpoint {self.mids[i - 1]}")
            if i + 1 < len(segs):
                out = s.a if s.kind == "I" else s.exit()
                if g.edge_of(out) != self.mids[i]:
                    raise ExtError(f"segment {s.text()} does not end at midpoint {self.mids[i]}")
            if 0 < i < len(segs) - 1:
                span = sector_degree(g, s.a, s.b)
                step = span - 1 if s.way == CCW else 1 - span
                if self.gradings[i] - self.gradings[i - 1] != step:
                    raise ExtError(f"grading jump at {s.text()} is not {step}")


def edge_arc(g: SGraph, e: str, start: str | None = None, grading: int = 0) -> GradedArc:
    """The edge ``e`` as a two-segment arc, leaving from halfedge ``start``."""
    a, b = g.halves(e)
    if start is not None:
        if start not in (a, b):
            raise ExtError(f"{start!r} is not a halfedge of {e!r}")
        if start == b:
            a, b = b, a
    return GradedArc((Segment("I", g.vertex[a], a), Segment("I", g.vertex[b], b)),
                     (e,), (grading,))


def join(g: SGraph, first: GradedArc, second: GradedArc) -> GradedArc:
    """Smooth the end of ``first`` into the start of ``second`` counterclockwise.

    ``first`` must end along a halfedge ``c`` and ``second`` start along ``b``
    at the same vertex (``c`` before ``b`` there if it is a boundary vertex).
    The gradings of ``second`` are moved so the joint satisfies the recursion.
    """
    c, b = first.segments[-1], second.segments[0]
    if c.kind != "I" or b.kind != "I" or c.vertex != b.vertex:
        raise ExtError("arcs do not meet at a common endpoint")
    v = c.vertex
    if not g.is_internal(v) and not g.precedes(c.a, b.a):
        raise ExtError(f"{c.a!r} does not precede {b.a!r} at boundary vertex {v!r}")
    corner = Segment("II", v, c.a, b.a, CCW)
    want = first.gradings[-1] + sector_degree(g, c.a, b.a) - 1
    second = second.shifted(want - second.gradings[0])
    return GradedArc(first.segments[:-1] + (corner,) + second.segments[1:],
                     first.mids + second.mids, first.gradings + second.gradings)


def _other_half(g: SGraph, a: str) -> str:
    return next(k for k in g.halves(g.edge_of(a)) if k != a)


def smooth(g: SGraph, e: str, h: str, x: Intersection) -> GradedArc:
    """Counterclockwise smoothing of ``x``: the arc follows ``e``, turns at ``x``
    into ``h`` and follows ``h``.  Its class is ``[e] - (-1)^d(x) [h]``.
    """
    if x not in intersections(g, e, h):
        raise ExtError(f"{x} is not an intersection from {e} to {h}")
    first = edge_arc(g, e, start=_other_half(g, x.a))
    return join(g, first, edge_arc(g, h, start=x.b))


def monogon_arc(g: SGraph, e: str) -> GradedArc:
    """The self-extension arc of an edge with a degree-1 end: out along ``e``,
    once around the degree-1 vertex, and back."""
    a, b = g.halves(e)
    if g.degree(g.vertex[b]) != 1:
        a, b = b, a
    if g.degree(g.vertex[b]) != 1 or g.degree(g.vertex[a]) == 1:
        raise ExtError(f"edge {e!r} has no single degree-1 end")
    return join(g, edge_arc(g, e, start=a), edge_arc(g, e, start=b))


def emit(rows: list[dict], fmt: str = "table") -> str:
    import json

    if fmt == "json":
        return json.dumps({"format": 1, "pairs": [
            {**r, "formula": {str(k): v for k, v in r["formula"].items()},
             "algebra": {str(k): v for k, v in r["algebra"].items()}} for r in rows]},
            indent=2, sort_keys=True)
    if fmt != "table":
        raise ExtError(f"unknown format {fmt!r}")

    def show(d):
        return " ".join(f"{k}:{v}" for k, v in sorted(d.items())) or "0"

    lines = [f"{'source':>8} {'target':>8}  {'formula':<28} {'algebra':<28} match"]
    for r in rows:
        lines.append(f"{r['source']:>8} {r['target']:>8}  {show(r['formula']):<28} "
                     f"{show(r['algebra']):<28} {'yes' if r['match'] else 'NO'}")
    return "\n".join(lines)
