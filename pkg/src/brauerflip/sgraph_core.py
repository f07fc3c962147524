"""S-graphs: ribbon graphs whose corners carry positive integer degrees.

A vertex is either *internal* (its halfedges are cyclically ordered
counterclockwise) or *boundary* (its halfedges are totally ordered
counterclockwise, and the vertex has infinite degree).  Every pair of
successive halfedges ``(h, succ(h))`` at a vertex carries a corner degree
``d(h, succ(h)) >= 1``; at a 1-valent internal vertex the single corner is
``(h, h)`` and holds the vertex degree.

All identifiers are strings.  Graphs are immutable values; operations that
change a graph return a new one.
"""

from __future__ import annotations

import json
import math
import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

INTERNAL = "internal"
BOUNDARY = "boundary"
INFINITY = math.inf
FORMAT_VERSION = 1


class SGraphError(ValueError):
    """Malformed input or an operation applied outside its domain."""


@lru_cache(maxsize=None)
def id_key(x: str) -> tuple:
    """Sort key placing ``"2"`` before ``"10"`` and ``"a2"`` before ``"a10"``."""
    parts = re.split(r"(\d+)", str(x))
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "")


def sorted_ids(xs: Iterable[str]) -> list[str]:
    return sorted(xs, key=id_key)


@dataclass(frozen=True, eq=True)
class SGraph:
    kinds: Mapping[str, str]
    partner: Mapping[str, str]
    vertex: Mapping[str, str]
    order: Mapping[str, tuple[str, ...]]
    corners: Mapping[tuple[str, str], int]
    edge_names: Mapping[str, str] = field(default_factory=dict)

    # -- basic accessors -------------------------------------------------

    @cached_property
    def vertices(self) -> list[str]:
        return sorted_ids(self.kinds)

    @cached_property
    def halfedges(self) -> list[str]:
        return sorted_ids(self.partner)

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {h: i for seq in self.order.values() for i, h in enumerate(seq)}

    def edge_of(self, h: str) -> str:
        name = self.edge_names.get(h)
        if name is not None:
            return name
        return min(h, self.partner[h], key=id_key)

    @cached_property
    def edges(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {}
        for h in self.halfedges:
            out.setdefault(self.edge_of(h), []).append(h)
        return {e: tuple(out[e]) for e in sorted_ids(out)}

    def halves(self, e: str) -> tuple[str, ...]:
        try:
            return self.edges[e]
        except KeyError:
            raise SGraphError(f"unknown edge {e!r}") from None

    def endpoints(self, e: str) -> tuple[str, ...]:
        return tuple(self.vertex[h] for h in self.halves(e))

    def is_loop(self, e: str) -> bool:
        a, b = self.halves(e)
        return self.vertex[a] == self.vertex[b]

    def is_internal(self, v: str) -> bool:
        return self.kinds[v] == INTERNAL

    def position(self, h: str) -> int:
        return self._pos[h]

    def succ(self, h: str) -> str | None:
        """Next halfedge counterclockwise; ``None`` past the end at a boundary vertex."""
        v = self.vertex[h]
        seq = self.order[v]
        i = self._pos[h]
        if self.is_internal(v):
            return seq[(i + 1) % len(seq)]
        return seq[i + 1] if i + 1 < len(seq) else None

    def pred(self, h: str) -> str | None:
        v = self.vertex[h]
        seq = self.order[v]
        i = self._pos[h]
        if self.is_internal(v):
            return seq[i - 1]
        return seq[i - 1] if i > 0 else None

    def corner(self, h: str) -> int | None:
        nxt = self.succ(h)
        if nxt is None:
            return None
        return self.corners[(h, nxt)]

    def d(self, a: str, b: str) -> int:
        """Extended corner degree from ``a`` to ``b`` counterclockwise at a shared vertex.

        ``d(a, a) = 0``.  At a boundary vertex ``a`` must come before ``b``.
        """
        v = self.vertex[a]
        if self.vertex[b] != v:
            raise SGraphError(f"halfedges {a!r}, {b!r} are not at one vertex")
        if a == b:
            return 0
        seq = self.order[v]
        i, j = self._pos[a], self._pos[b]
        if not self.is_internal(v) and j < i:
            raise SGraphError(f"{b!r} precedes {a!r} at boundary vertex {v!r}")
        total, k = 0, i
        while k != j:
            nk = (k + 1) % len(seq)
            total += self.corners[(seq[k], seq[nk])]
            k = nk
        return total

    def precedes(self, a: str, b: str) -> bool:
        """At a boundary vertex: ``a`` strictly before ``b`` in the total order."""
        return self.position(a) < self.position(b)

    def degree(self, v: str) -> float:
        if v not in self.kinds:
            raise SGraphError(f"unknown vertex {v!r}")
        return self._degrees[v]

    @cached_property
    def _degrees(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for v, kind in self.kinds.items():
            seq = self.order.get(v, ())
            if kind != INTERNAL:
                out[v] = INFINITY
            else:
                out[v] = sum(self.corners.get((seq[k], seq[(k + 1) % len(seq)]), 0)
                             for k in range(len(seq)))
        return out

    def internal_degrees(self) -> dict[str, int]:
        return {v: int(self.degree(v)) for v in self.vertices if self.is_internal(v)}

    def has_boundary(self) -> bool:
        return any(k == BOUNDARY for k in self.kinds.values())

    def replace(self, **changes) -> "SGraph":
        data = dict(kinds=self.kinds, partner=self.partner, vertex=self.vertex,
                    order=self.order, corners=self.corners, edge_names=self.edge_names)
        data.update(changes)
        return SGraph(**data)


def vertex_degree(g: SGraph, v: str) -> float:
    """Sum of corner degrees at an internal vertex; ``math.inf`` at a boundary vertex."""
    return g.degree(v)


def build(kinds: Mapping[str, str], order: Mapping[str, Iterable[str]],
          partner: Mapping[str, str], corners: Mapping[tuple[str, str], int],
          edge_names: Mapping[str, str] | None = None) -> SGraph:
    """Assemble an :class:`SGraph`; incidence is read off ``order``."""
    vertex = {}
    for v, seq in order.items():
        for h in seq:
            vertex[h] = v
    return SGraph(kinds=dict(kinds), partner=dict(partner), vertex=vertex,
                  order={v: tuple(seq) for v, seq in order.items()},
                  corners={tuple(k): int(d) for k, d in corners.items()},
                  edge_names=dict(edge_names or {}))


def from_edges(kinds: Mapping[str, str], order: Mapping[str, Iterable[tuple[str, int | None]]],
               ) -> SGraph:
    """Compact constructor used by fixtures and tests.

    ``order[v]`` lists ``(edge_name, corner_degree)`` counterclockwise; the
    corner degree is that of the corner following the halfedge (ignored for
    the last halfedge of a boundary vertex).  Halfedges are named
    ``"<edge>@<vertex>"``, or ``"<edge>@<vertex>#k"`` for the k-th end of a loop.
    """
    partner: dict[str, str] = {}
    halves: dict[str, list[str]] = {}
    hid_order: dict[str, list[str]] = {}
    corners: dict[tuple[str, str], int] = {}
    edge_names: dict[str, str] = {}
    for v, seq in order.items():
        hid_order[v] = []
        seen: dict[str, int] = {}
        for e, _ in seq:
            seen[e] = seen.get(e, 0) + 1
        count: dict[str, int] = {}
        for e, _ in seq:
            count[e] = count.get(e, 0) + 1
            h = f"{e}@{v}" if seen[e] == 1 else f"{e}@{v}#{count[e]}"
            hid_order[v].append(h)
            halves.setdefault(e, []).append(h)
            edge_names[h] = e
    for e, hs in halves.items():
        if len(hs) != 2:
            raise SGraphError(f"edge {e!r} has {len(hs)} ends")
        partner[hs[0]], partner[hs[1]] = hs[1], hs[0]
    for v, seq in order.items():
        hs = hid_order[v]
        internal = kinds[v] == INTERNAL
        for k, (_, dval) in enumerate(seq):
            if k + 1 < len(hs):
                corners[(hs[k], hs[k + 1])] = int(dval)
            elif internal:
                corners[(hs[k], hs[0])] = int(dval)
    return build(kinds, hid_order, partner, corners, edge_names)


# -- validation ------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _expected_corners(kind: str, seq: tuple[str, ...]) -> list[tuple[str, str]]:
    if not seq:
        return []
    if kind == INTERNAL:
        return [(seq[k], seq[(k + 1) % len(seq)]) for k in range(len(seq))]
    return [(seq[k], seq[k + 1]) for k in range(len(seq) - 1)]


def validate(g: SGraph) -> ValidationReport:
    """Collect every violated axiom.  Never raises."""
    out: list[str] = []
    try:
        kinds = dict(g.kinds)
        partner = dict(g.partner)
        vertex = dict(g.vertex)
        order = {v: tuple(s) for v, s in dict(g.order).items()}
        corners = dict(g.corners)
    except Exception as exc:  # noqa: BLE001
        return ValidationReport([f"unreadable graph data: {exc}"])

    for v, k in kinds.items():
        if k not in (INTERNAL, BOUNDARY):
            out.append(f"vertex {v}: unknown kind {k!r}")
    for h, p in partner.items():
        if p not in partner:
            out.append(f"halfedge {h}: partner {p!r} does not exist")
        elif partner[p] != h:
            out.append(f"halfedge {h}: partner map is not an involution")
        elif p == h:
            out.append(f"halfedge {h}: external edge (partner is itself) in an S-graph")
    for h in partner:
        if h not in vertex:
            out.append(f"halfedge {h}: not attached to a vertex")
        elif vertex[h] not in kinds:
            out.append(f"halfedge {h}: unknown vertex {vertex[h]!r}")
    for v in order:
        if v not in kinds:
            out.append(f"order given for unknown vertex {v!r}")
    placed: dict[str, int] = {}
    for v, seq in order.items():
        for h in seq:
            placed[h] = placed.get(h, 0) + 1
            if vertex.get(h) != v:
                out.append(f"halfedge {h}: listed at vertex {v} but attached elsewhere")
    for h in partner:
        if placed.get(h, 0) != 1:
            out.append(f"halfedge {h}: appears {placed.get(h, 0)} times in vertex orders")
    for h in placed:
        if h not in partner:
            out.append(f"order mentions unknown halfedge {h!r}")
    for v in kinds:
        if not order.get(v):
            out.append(f"vertex {v}: no incident halfedges")

    expected: set[tuple[str, str]] = set()
    for v, seq in order.items():
        expected.update(_expected_corners(kinds.get(v, INTERNAL), seq))
    for key, dval in corners.items():
        if key not in expected:
            out.append(f"corner {key}: not a pair of successive halfedges")
            continue
        if not isinstance(dval, int) or isinstance(dval, bool):
            out.append(f"corner {key}: degree must be an integer")
        elif dval < 1:
            out.append(f"corner {key}: corner degree must be positive (got {dval})")
    for key in sorted(expected - set(corners), key=lambda k: (id_key(k[0]), id_key(k[1]))):
        out.append(f"corner {key}: missing corner degree")
    return ValidationReport(out)


def require_valid(g: SGraph) -> None:
    rep = validate(g)
    if not rep.ok:
        raise SGraphError("invalid S-graph: " + "; ".join(rep.violations))


# -- extended graph ----------------------------------------------------------


def virtual_id(v: str) -> str:
    return f"ext@{v}"


@dataclass(frozen=True)
class ExtendedSGraph:
    """An S-graph with one external halfedge appended at each boundary vertex.

    The order at a boundary vertex becomes cyclic, with the external halfedge
    closing the cycle.  Corners touching an external halfedge carry no degree.
    """

    base: SGraph
    order: Mapping[str, tuple[str, ...]]
    virtual: Mapping[str, str]

    def partner(self, h: str) -> str:
        if h in self.base.partner:
            return self.base.partner[h]
        return h

    def vertex(self, h: str) -> str:
        if h in self.base.vertex:
            return self.base.vertex[h]
        return next(v for v, x in self.virtual.items() if x == h)

    def succ(self, h: str) -> str:
        seq = self.order[self.vertex(h)]
        return seq[(seq.index(h) + 1) % len(seq)]

    @property
    def halfedges(self) -> list[str]:
        return self.base.halfedges + [self.virtual[v] for v in sorted_ids(self.virtual)]

    def strip(self) -> SGraph:
        return self.base


def extend(g: SGraph, check: bool = True) -> ExtendedSGraph:
    if check:
        require_valid(g)
    order = dict(g.order)
    virtual = {}
    for v in g.vertices:
        if not g.is_internal(v):
            virtual[v] = virtual_id(v)
            order[v] = tuple(g.order[v]) + (virtual[v],)
    return ExtendedSGraph(base=g, order=order, virtual=virtual)


# -- orientations ------------------------------------------------------------


@dataclass(frozen=True)
class EdgeOrientation:
    """Direction per edge: bit 0 means the edge runs from its first halfedge
    (in id order) to its second."""

    bits: Mapping[str, int]

    def epsilon(self, g: SGraph, h: str) -> int:
        """0 if ``h`` points away from its vertex, 1 if towards it."""
        e = g.edge_of(h)
        hs = g.halves(e)
        source = hs[self.bits[e]]
        return 0 if h == source else 1


@dataclass(frozen=True)
class NotOrientable:
    witness: list[tuple[str, str, int]]

    def __bool__(self) -> bool:
        return False


def default_orientation(g: SGraph) -> EdgeOrientation:
    return EdgeOrientation({e: 0 for e in g.edges})


def _parity_constraints(g: SGraph) -> list[tuple[str, str, int]]:
    cons = []
    for e, (a, b) in g.edges.items():
        cons.append((a, b, 1))
    for v in g.vertices:
        for a, b in _expected_corners(g.kinds[v], g.order[v]):
            cons.append((a, b, g.corners[(a, b)] % 2))
    return cons


def orientation_ok(g: SGraph, orient: EdgeOrientation) -> bool:
    for a, b, p in _parity_constraints(g):
        if (orient.epsilon(g, a) + orient.epsilon(g, b)) % 2 != p:
            return False
    return True


def find_orientation(g: SGraph) -> EdgeOrientation | NotOrientable:
    """Solve ``eps(a) + eps(b) = d(a, b) mod 2`` for successive halfedges and
    ``eps(h) + eps(partner h) = 1``; otherwise return an odd constraint cycle."""
    cons = _parity_constraints(g)
    adj: dict[str, list[tuple[str, int, int]]] = {h: [] for h in g.halfedges}
    for idx, (a, b, p) in enumerate(cons):
        adj[a].append((b, p, idx))
        adj[b].append((a, p, idx))
    value: dict[str, int] = {}
    tree_parent: dict[str, tuple[str, int] | None] = {}
    for root in g.halfedges:
        if root in value:
            continue
        value[root] = 0
        tree_parent[root] = None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, p, idx in adj[x]:
                if y not in value:
                    value[y] = value[x] ^ p
                    tree_parent[y] = (x, idx)
                    queue.append(y)
    for idx, (a, b, p) in enumerate(cons):
        if value[a] ^ value[b] != p:
            return NotOrientable(_cycle_witness(cons, tree_parent, a, b, idx))
    bits = {}
    for e, hs in g.edges.items():
        bits[e] = 0 if value[hs[0]] == 0 else 1
    orient = EdgeOrientation(bits)
    assert orientation_ok(g, orient)
    return orient


def _cycle_witness(cons, tree_parent, a, b, idx) -> list[tuple[str, str, int]]:
    def chain(x):
        path = [x]
        while tree_parent[x] is not None:
            x = tree_parent[x][0]
            path.append(x)
        return path

    pa, pb = chain(a), chain(b)
    common = next(x for x in pa if x in set(pb))
    used = []
    for start in (a, b):
        x = start
        while x != common:
            px, cidx = tree_parent[x]
            used.append(cons[cidx])
            x = px
    used.append(cons[idx])
    return used


def brute_force_orientable(g: SGraph) -> bool:
    names = list(g.edges)
    for mask in range(1 << len(names)):
        orient = EdgeOrientation({e: (mask >> k) & 1 for k, e in enumerate(names)})
        if orientation_ok(g, orient):
            return True
    return False


# -- canonical forms -----------------------------------------------------------


def _is_connected(g: SGraph) -> bool:
    if not g.halfedges:
        return len(g.kinds) <= 1
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        v = stack.pop()
        for h in g.order[v]:
            u = g.vertex[g.partner[h]]
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(g.kinds)


def _bfs_code(ext: ExtendedSGraph, root: str) -> tuple:
    g = ext.base
    label = {root: 0}
    queue = deque([root])
    code = []

    def lab(x: str) -> int:
        if x not in label:
            label[x] = len(label)
            queue.append(x)
        return label[x]

    while queue:
        h = queue.popleft()
        v = ext.vertex(h)
        is_virtual = h not in g.partner
        nxt = ext.succ(h)
        dval = g.corners.get((h, nxt), 0)
        code.append((0 if g.is_internal(v) else 1, int(is_virtual), lab(ext.partner(h)), lab(nxt), dval))
    return tuple(code)


def canonical_form(g: SGraph, check: bool = True) -> bytes:
    """Minimum BFS code over all roots; equal iff the graphs are isomorphic."""
    if check:
        require_valid(g)
        if not _is_connected(g):
            raise SGraphError("canonical_form needs a connected graph")
    ext = extend(g, check=False)
    best = min(_bfs_code(ext, r) for r in ext.halfedges)
    return json.dumps(best, separators=(",", ":")).encode()


def labeled_key(g: SGraph, check: bool = False) -> bytes:
    """Exact identity of a graph including halfedge, vertex and edge names."""
    order = {}
    for v in g.vertices:
        seq = list(g.order[v])
        if g.is_internal(v) and seq:
            k = seq.index(min(seq))
            seq = seq[k:] + seq[:k]
        order[v] = seq
    data = {
        "kinds": sorted(g.kinds.items()),
        "partner": sorted(g.partner.items()),
        "order": sorted(order.items()),
        "corners": sorted([list(k), d] for k, d in g.corners.items()),
        "edges": sorted((h, g.edge_of(h)) for h in g.halfedges),
    }
    return json.dumps(data, separators=(",", ":")).encode()


def self_folded_edges(g: SGraph) -> list[str]:
    """Loops whose two halfedges bound a face of length one.

    Dually the arc has a puncture at one end and both of its sides are
    consecutive sides of one polygon; such arcs cannot be flipped.
    """
    ext = extend(g, check=False)
    out = set()
    for h in g.halfedges:
        if ext.succ(ext.partner(h)) == h:
            out.add(g.edge_of(h))
    return sorted_ids(out)


# -- surface invariants ------------------------------------------------------


def surface_invariants(g: SGraph) -> dict:
    """Vertex, edge and face counts from the face traversal ``h -> succ(partner(h))``
    on the extended graph, and ``chi = V - E + F``."""
    ext = extend(g)
    seen: set[str] = set()
    faces = []
    for h in ext.halfedges:
        if h in seen:
            continue
        cyc = []
        x = h
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = ext.succ(ext.partner(x))
        faces.append(cyc)
    V, E, F = len(g.kinds), len(g.edges), len(faces)
    boundary_faces = sum(1 for f in faces if any(x not in g.partner for x in f))
    return {
        "vertices": V,
        "edges": E,
        "faces": F,
        "face_lengths": sorted(len(f) for f in faces),
        "faces_touching_boundary": boundary_faces,
        "euler_characteristic": V - E + F,
    }


# -- JSON io -----------------------------------------------------------------


def to_json(g: SGraph) -> dict:
    corners = []
    for v in g.vertices:
        for a, b in _expected_corners(g.kinds[v], g.order[v]):
            corners.append({"at": v, "from": a, "to": b, "d": g.corners[(a, b)]})
    return {
        "format": FORMAT_VERSION,
        "vertices": [{"id": v, "kind": g.kinds[v]} for v in g.vertices],
        "halfedges": [{"id": h, "vertex": g.vertex[h], "partner": g.partner[h],
                       "edge": g.edge_of(h)} for h in g.halfedges],
        "order": {v: list(g.order[v]) for v in g.vertices},
        "corners": corners,
    }


def from_json(data: Mapping) -> SGraph:
    """Parse the JSON schema; structural problems raise :class:`SGraphError`.

    Axiom violations are left to :func:`validate`.
    """
    try:
        if data.get("format", FORMAT_VERSION) != FORMAT_VERSION:
            raise SGraphError(f"unsupported format {data.get('format')!r}")
        kinds = {str(v["id"]): str(v["kind"]) for v in data["vertices"]}
        partner, vertex, names = {}, {}, {}
        for h in data["halfedges"]:
            hid = str(h["id"])
            partner[hid] = str(h["partner"])
            vertex[hid] = str(h["vertex"])
            if "edge" in h:
                names[hid] = str(h["edge"])
        order = {str(v): tuple(str(x) for x in seq) for v, seq in data["order"].items()}
        corners = {}
        for c in data.get("corners", []):
            corners[(str(c["from"]), str(c["to"]))] = c["d"]
    except SGraphError:
        raise
    except (KeyError, TypeError, AttributeError) as exc:
        raise SGraphError(f"malformed S-graph JSON: {exc!r}") from None
    for v in kinds:
        order.setdefault(v, ())
    return SGraph(kinds=kinds, partner=partner, vertex=vertex, order=order,
                  corners=corners, edge_names=names)


def load(path) -> SGraph:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SGraphError(f"{path}: not JSON ({exc})") from None
    return from_json(data)


def dump(g: SGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json(g), fh, indent=1, sort_keys=True)
        fh.write("\n")


# -- relabeling and random graphs ------------------------------------------------


def relabel(g: SGraph, rng: random.Random) -> SGraph:
    """Rename halfedges, vertices and edges at random; structure unchanged."""
    hs, vs, es = g.halfedges, g.vertices, list(g.edges)
    hmap = dict(zip(hs, [f"h{k}" for k in rng.sample(range(len(hs)), len(hs))]))
    vmap = dict(zip(vs, [f"v{k}" for k in rng.sample(range(len(vs)), len(vs))]))
    emap = dict(zip(es, [f"e{k}" for k in rng.sample(range(len(es)), len(es))]))
    order = {}
    for v in vs:
        seq = [hmap[h] for h in g.order[v]]
        if g.is_internal(v) and seq:
            k = rng.randrange(len(seq))
            seq = seq[k:] + seq[:k]
        order[vmap[v]] = seq
    return build(
        {vmap[v]: g.kinds[v] for v in vs},
        order,
        {hmap[h]: hmap[g.partner[h]] for h in hs},
        {(hmap[a], hmap[b]): d for (a, b), d in g.corners.items()},
        {hmap[h]: emap[g.edge_of(h)] for h in hs},
    )


def _compositions(total: int, parts: int, rng: random.Random) -> list[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [bounds[k + 1] - bounds[k] for k in range(parts)]


def random_sgraph(rng: random.Random, n_edges: int, n: int | None = None,
                  boundary_rate: float = 0.3, loop_rate: float = 0.15,
                  max_vertices: int | None = None) -> SGraph:
    """A random connected S-graph with ``n_edges`` edges.

    With ``n`` given, every internal vertex degree divides ``n``; vertices
    whose valency exceeds every divisor of ``n`` become boundary vertices.
    """
    if n_edges < 1:
        raise SGraphError("need at least one edge")
    for _ in range(1000):
        limit = n_edges + 1 if max_vertices is None else min(max_vertices, n_edges + 1)
        nv = rng.randint(1, limit)
        ends: list[tuple[int, int]] = []
        for k in range(1, nv):
            ends.append((rng.randrange(k), k))
        if len(ends) > n_edges:
            continue
        while len(ends) < n_edges:
            a = rng.randrange(nv)
            b = a if rng.random() < loop_rate else rng.randrange(nv)
            ends.append((a, b))
        inc: dict[int, list[str]] = {v: [] for v in range(nv)}
        partner = {}
        names = {}
        for k, (a, b) in enumerate(ends):
            ha, hb = f"{k}a", f"{k}b"
            partner[ha], partner[hb] = hb, ha
            names[ha] = names[hb] = str(k)
            inc[a].append(ha)
            inc[b].append(hb)
        kinds, order, corners = {}, {}, {}
        for v in range(nv):
            seq = inc[v][:]
            rng.shuffle(seq)
            q = len(seq)
            vid = f"v{v}"
            order[vid] = seq
            divisors = [m for m in range(q, (n or 6) + 1) if n is None or n % m == 0]
            make_boundary = rng.random() < boundary_rate or not divisors
            if n is None and not make_boundary:
                divisors = list(range(q, q + 3))
            if make_boundary:
                kinds[vid] = BOUNDARY
                for i in range(q - 1):
                    corners[(seq[i], seq[i + 1])] = rng.randint(1, 3)
            else:
                kinds[vid] = INTERNAL
                m = rng.choice(divisors)
                parts = _compositions(m, q, rng)
                for i in range(q):
                    corners[(seq[i], seq[(i + 1) % q])] = parts[i]
        g = build(kinds, order, partner, corners, names)
        if validate(g).ok:
            return g
    raise SGraphError("failed to generate a random S-graph")
