"""Forward and backward flips of S-graphs, and depth-bounded exchange graphs.

Flips work on the dual polygon picture.  Each vertex is read as a sequence of
*tokens*: its halfedges, with ``d(h, succ h) - 1`` boundary sides between
consecutive ones (the polygon around the singular point has one side per
token, so the vertex degree is the token count).  A boundary vertex carries
an unbounded run of boundary sides before its first and after its last
halfedge.

Forward flip at ``eta = {a, b}``: the token just before ``a`` moves to the
other end and is inserted just after ``b`` (and symmetrically).  If one end of
``eta`` has degree 1, the token before ``a`` instead hops over ``a`` to the
other side of it.  Backward flips use the token just after, inserted just
before.  Edge and halfedge ids survive every flip.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .sgraph_core import (INTERNAL, SGraph, SGraphError, canonical_form, labeled_key,
                          require_valid, self_folded_edges, sorted_ids)

FORWARD = "forward"
BACKWARD = "backward"
SIDE = None  # boundary-side token


class FlipError(SGraphError):
    pass


@dataclass(frozen=True)
class MovedHalfedge:
    halfedge: str
    source: str
    target: str
    via: str  # halfedge of the flipped edge at the source vertex


@dataclass(frozen=True)
class FlipRecord:
    input: SGraph
    edge: str
    direction: str
    output: SGraph
    moved: tuple[MovedHalfedge, ...]
    monogon: bool
    grading_shift: int


class _Tokens:
    """Mutable token sequences for every vertex of a graph."""

    def __init__(self, g: SGraph):
        self.g = g
        self.seq: dict[str, list] = {}
        for v in g.vertices:
            hs = g.order[v]
            toks: list = []
            for k, h in enumerate(hs):
                toks.append(h)
                if k + 1 < len(hs) or g.is_internal(v):
                    toks.extend([SIDE] * (g.corners[(h, hs[(k + 1) % len(hs)])] - 1))
            self.seq[v] = toks
        self.where = {h: g.vertex[h] for h in g.halfedges}

    def internal(self, v: str) -> bool:
        return self.g.kinds[v] == INTERNAL

    def locate(self, h: str, step: int, skip: str | None) -> tuple[int | None, object] | None:
        """Token adjacent to ``h`` (step -1 before, +1 after), skipping ``skip``.

        Returns ``(index, token)``; the index is ``None`` for a side taken from
        the unbounded run of a boundary vertex.  ``None`` if nothing but ``h``
        and ``skip`` is there.
        """
        v = self.where[h]
        toks = self.seq[v]
        i = toks.index(h)
        L = len(toks)
        for k in range(1, L):
            j = i + step * k
            if not self.internal(v) and not 0 <= j < L:
                return None, SIDE
            t = toks[j % L]
            if t is not None and t == skip:
                continue
            return j % L, t
        if not self.internal(v):
            return None, SIDE
        return None

    def insert(self, tok: object, anchor: str, step: int) -> None:
        """Insert ``tok`` just after (step +1) or just before (step -1) ``anchor``."""
        v = self.where[anchor]
        toks = self.seq[v]
        i = toks.index(anchor)
        j = i + 1 if step > 0 else i
        if tok is SIDE and not self.internal(v) and (j == 0 or j == len(toks)):
            return  # absorbed into the unbounded run
        toks.insert(j, tok)
        if tok is not SIDE:
            self.where[tok] = v

    def to_graph(self) -> SGraph:
        g = self.g
        order, corners, vertex = {}, {}, {}
        for v in g.vertices:
            toks = self.seq[v]
            if not self.internal(v):
                while toks and toks[0] is SIDE:
                    toks.pop(0)
                while toks and toks[-1] is SIDE:
                    toks.pop()
            hs = [t for t in toks if t is not SIDE]
            if not hs:
                raise FlipError(f"vertex {v} lost all halfedges")
            k0 = toks.index(hs[0])
            rot = toks[k0:] + toks[:k0]
            pos = [k for k, t in enumerate(rot) if t is not SIDE]
            L = len(rot)
            for idx, h in enumerate(hs):
                vertex[h] = v
                if idx + 1 < len(hs):
                    corners[(h, hs[idx + 1])] = pos[idx + 1] - pos[idx]
                elif self.internal(v):
                    corners[(h, hs[0])] = L - pos[idx] if len(hs) > 1 else L
            order[v] = tuple(hs)
        return g.replace(order=order, corners=corners, vertex=vertex)


def _flip(g: SGraph, e: str, direction: str, check: bool = True) -> FlipRecord:
    if check:
        require_valid(g)
    if e not in g.edges:
        raise FlipError(f"unknown edge {e!r}")
    a, b = g.halves(e)
    v, u = g.vertex[a], g.vertex[b]
    deg_v, deg_u = g.degree(v), g.degree(u)
    step = -1 if direction == FORWARD else 1
    toks = _Tokens(g)
    moved: list[MovedHalfedge] = []
    monogon = (deg_v == 1) != (deg_u == 1)
    if deg_v == 1 and deg_u == 1:
        raise FlipError(f"edge {e!r} joins two degree-1 vertices and cannot be flipped")
    if e in self_folded_edges(g):
        raise FlipError(f"edge {e!r} is a self-folded loop and cannot be flipped")
    if monogon:
        if deg_v == 1:
            a, b, v, u = b, a, u, v
        slot = toks.locate(a, step, None)
        if slot is not None:
            idx, tok = slot
            if idx is not None:
                del toks.seq[v][idx]
            toks.insert(tok, a, -step)
            if tok is not SIDE:
                moved.append(MovedHalfedge(tok, v, v, a))
    else:
        # both moves are read off the unflipped graph, then applied
        picks = []
        for here, there in sorted(((a, b), (b, a))):
            slot = toks.locate(here, step, there)
            if slot is not None:
                picks.append((here, there, slot))
        slots = [(toks.where[h], s[0]) for h, _, s in picks if s[0] is not None]
        assert len(set(slots)) == len(slots)
        for w, idx in sorted(slots, key=lambda t: -t[1]):
            del toks.seq[w][idx]
        for here, there, (_, tok) in picks:
            toks.insert(tok, there, -step)
            if tok is not SIDE:
                moved.append(MovedHalfedge(tok, g.vertex[here], g.vertex[there], here))
    out = toks.to_graph()
    if check:
        require_valid(out)
    for w in g.vertices:
        assert out.degree(w) == g.degree(w), "flip changed a vertex degree"
    return FlipRecord(input=g, edge=e, direction=direction, output=out,
                      moved=tuple(moved), monogon=monogon,
                      grading_shift=1 if direction == FORWARD else -1)


def forward_flip(g: SGraph, e: str) -> FlipRecord:
    return _flip(g, e, FORWARD)


def backward_flip(g: SGraph, e: str) -> FlipRecord:
    return _flip(g, e, BACKWARD)


def flip(g: SGraph, e: str, direction: str) -> FlipRecord:
    if direction in ("fwd", FORWARD):
        return forward_flip(g, e)
    if direction in ("bwd", BACKWARD):
        return backward_flip(g, e)
    raise FlipError(f"unknown direction {direction!r}")


def flippable_edges(g: SGraph) -> list[str]:
    """Edges admitting flips: not self-folded and not joining two degree-1 vertices."""
    folded = set(self_folded_edges(g))
    out = []
    for e in g.edges:
        v, u = g.endpoints(e)
        if e not in folded and not (g.degree(v) == 1 and g.degree(u) == 1):
            out.append(e)
    return out


# -- exchange graphs -------------------------------------------------------------


@dataclass
class ExchangeGraph:
    nodes: dict[bytes, SGraph]
    depth: dict[bytes, int]
    edges: list[tuple[bytes, str, bytes]]
    max_depth: int
    truncated: bool
    key: str
    m: int = 0
    labels: dict[bytes, str] = field(default_factory=dict)

    def out_degree(self, k: bytes) -> int:
        return sum(1 for s, _, _ in self.edges if s == k)

    def in_degree(self, k: bytes) -> int:
        return sum(1 for _, _, t in self.edges if t == k)

    def interior(self) -> list[bytes]:
        return [k for k in self.sorted_nodes() if self.depth[k] < self.max_depth]

    def sorted_nodes(self) -> list[bytes]:
        return sorted(self.nodes, key=lambda k: (self.depth[k], k))

    def regularity(self) -> dict:
        """Degree counts at interior nodes.

        A node whose edges are all flippable must have ``m`` arrows out and
        ``m`` in; a node with unflippable (self-folded) edges loses one arrow
        each way per such edge.
        """
        full = defective = bad = 0
        for k in self.interior():
            f = len(flippable_edges(self.nodes[k]))
            if f == self.m:
                full += 1
            else:
                defective += 1
            if not (self.out_degree(k) == f and self.in_degree(k) == f):
                bad += 1
        return {"interior": full + defective, "all_flippable": full,
                "with_unflippable": defective, "violations": bad}

    def is_regular(self) -> bool:
        """Every interior node has ``m`` arrows in and ``m`` out."""
        return all(self.out_degree(k) == self.m and self.in_degree(k) == self.m
                   for k in self.interior())

    def to_dot(self) -> str:
        lines = ["digraph exchange {"]
        for k in self.sorted_nodes():
            lines.append(f'  {self.labels[k]} [label="{self.labels[k]} d={self.depth[k]}"];')
        for s, e, t in sorted(self.edges, key=lambda x: (self.labels[x[0]], x[1], self.labels[x[2]])):
            lines.append(f'  {self.labels[s]} -> {self.labels[t]} [label="{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "format": 1,
            "key": self.key,
            "max_depth": self.max_depth,
            "truncated": self.truncated,
            "nodes": [{"id": self.labels[k], "depth": self.depth[k]} for k in self.sorted_nodes()],
            "edges": [{"source": self.labels[s], "edge": e, "target": self.labels[t]}
                      for s, e, t in sorted(self.edges, key=lambda x: (self.labels[x[0]], x[1], self.labels[x[2]]))],
        }


def _key_fn(key: str):
    if key == "canonical":
        return canonical_form
    if key == "labeled":
        return labeled_key
    raise ValueError(f"unknown dedup key {key!r}")


def exchange_graph(g: SGraph, max_depth: int, key: str = "canonical",
                   both_directions: bool = False, threads: int = 1) -> ExchangeGraph:
    """Breadth-first exploration of flips up to ``max_depth``.

    Nodes are deduplicated by ``key`` (``"canonical"``: isomorphism class;
    ``"labeled"``: exact graph with edge names).  With ``both_directions``
    the ball also follows backward flips, so in-degrees of interior nodes can
    be read off.  Edges always record forward flips between explored nodes.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    require_valid(g)
    kf = _key_fn(key)

    def keyed(x: SGraph) -> bytes:
        return kf(x, check=False)

    k0 = keyed(g)
    nodes = {k0: g}
    depth = {k0: 0}
    fwd: dict[bytes, list[tuple[str, bytes, SGraph]]] = {}
    bwd: dict[bytes, list[tuple[bytes, SGraph]]] = {}
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None

    def expand(k: bytes) -> tuple:
        h = nodes[k]
        es = flippable_edges(h)
        f = [(e, x) for e in es for x in [_flip(h, e, FORWARD, check=False).output]]
        b = [_flip(h, e, BACKWARD, check=False).output for e in es] if both_directions else []
        return [(e, keyed(x), x) for e, x in f], [(keyed(x), x) for x in b]

    def run(ks: list[bytes]) -> None:
        todo = [k for k in ks if k not in fwd]
        results = list(pool.map(expand, todo)) if pool else [expand(k) for k in todo]
        for k, (f, b) in zip(todo, results):
            fwd[k], bwd[k] = f, b

    frontier = [k0]
    truncated = False
    for level in range(max_depth + 1):
        if not frontier:
            break
        run(frontier)
        nxt = []
        for k in frontier:
            for kx, x in [(kx, x) for _, kx, x in fwd[k]] + bwd[k]:
                if kx not in nodes:
                    if level == max_depth:
                        truncated = True
                        continue
                    nodes[kx] = x
                    depth[kx] = level + 1
                    nxt.append(kx)
        frontier = sorted(set(nxt))
    if pool:
        pool.shutdown()

    run(sorted(nodes))
    edges = [(k, e, kt) for k in sorted(nodes) for e, kt, _ in fwd[k] if kt in nodes]
    ordered = sorted(nodes, key=lambda k: (depth[k], k))
    labels = {k: f"n{i}" for i, k in enumerate(ordered)}
    return ExchangeGraph(nodes=nodes, depth=depth, edges=edges, max_depth=max_depth,
                         truncated=truncated, key=key, m=len(g.edges), labels=labels)


__all__ = [
    "FORWARD", "BACKWARD", "FlipError", "FlipRecord", "MovedHalfedge", "forward_flip",
    "backward_flip", "flip", "flippable_edges", "ExchangeGraph", "exchange_graph", "sorted_ids",
]
