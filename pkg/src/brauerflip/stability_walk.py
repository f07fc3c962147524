"""Chamber walks in the space of central charges.

A chamber is an S-graph whose edge objects are the simples of a heart.  The
central charge is stored on the Grothendieck group of the starting graph,
so the charge of a current edge is read through the accumulated base-change
matrix.  Allowed values for a simple are the open upper half-plane together
with the negative real axis; a simple leaving that region through the
positive real axis triggers a forward flip, through the negative real axis a
backward flip.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace

from . import ext_oracle as xo
from .flip_engine import BACKWARD, FORWARD, flip, flippable_edges
from .rgb_algebra import minimal_n
from .sgraph_core import SGraph, canonical_form, labeled_key, sorted_ids
from .tilt_rep import K0Matrix, k0_tilt_matrix

TOL = 1e-9


class WalkError(ValueError):
    pass


def identity(edges) -> K0Matrix:
    edges = tuple(edges)
    return K0Matrix(edges, tuple(tuple(int(i == j) for j in range(len(edges)))
                                 for i in range(len(edges))))


@dataclass(frozen=True)
class CentralCharge:
    values: tuple[tuple[str, complex], ...]

    @classmethod
    def of(cls, values: dict) -> "CentralCharge":
        return cls(tuple((k, complex(values[k])) for k in sorted_ids(values)))

    def as_dict(self) -> dict[str, complex]:
        return dict(self.values)

    def __getitem__(self, e: str) -> complex:
        return self.as_dict()[e]

    def scaled(self, lam: complex) -> "CentralCharge":
        return CentralCharge(tuple((k, lam * z) for k, z in self.values))

    def to_json(self) -> dict:
        return {k: [z.real, z.imag] for k, z in self.values}

    @classmethod
    def from_json(cls, data: dict) -> "CentralCharge":
        out = {}
        for k, v in data.items():
            out[k] = complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
        return cls.of(out)


def allowed(z: complex, tol: float = TOL) -> bool:
    """Upper half-plane or negative real axis."""
    return z.imag > tol or (abs(z.imag) <= tol and z.real < -tol)


@dataclass(frozen=True)
class Crossing:
    time: float
    edge: str
    direction: str
    value: complex


@dataclass
class ChamberState:
    graph: SGraph
    base: CentralCharge  # values on the classes of the starting edges
    matrix: K0Matrix  # columns: current edge classes in the starting basis
    log: list[Crossing] = field(default_factory=list)
    n: int = 0

    def charge(self) -> dict[str, complex]:
        """Central charge of every current edge."""
        b = self.base.as_dict()
        edges = self.matrix.edges
        return {x: sum(self.matrix.rows[i][j] * b[edges[i]] for i in range(len(edges)))
                for j, x in enumerate(edges)}

    def canonical(self) -> bytes:
        return canonical_form(self.graph)

    def in_chamber(self, tol: float = TOL) -> bool:
        return all(allowed(z, tol) or on_wall(z, tol) for z in self.charge().values())

    def scheme(self) -> xo.Scheme:
        return xo.rgb_scheme(self.n)


def on_wall(z: complex, tol: float = TOL) -> bool:
    return abs(z.imag) < tol and z.real > 0


def start(g: SGraph, charge: CentralCharge | dict, n: int | None = None) -> ChamberState:
    z = charge if isinstance(charge, CentralCharge) else CentralCharge.of(charge)
    if set(z.as_dict()) != set(g.edges):
        raise WalkError("central charge must give a value on every edge")
    if n is None:
        n = max(2, minimal_n(g))
    return ChamberState(g, z, identity(sorted_ids(g.edges)), [], n)


def generic_charge(g: SGraph, rng: random.Random) -> CentralCharge:
    """Random charge with every edge well inside the upper half-plane."""
    return CentralCharge.of({e: complex(rng.uniform(-1, 1), rng.uniform(1, 2)) for e in g.edges})


def wall_edges(state: ChamberState, tol: float = TOL) -> list[str]:
    if tol <= 0:
        raise WalkError("tolerance must be positive")
    z = state.charge()
    return [e for e in sorted_ids(z) if on_wall(z[e], tol)]


def c_action(state: ChamberState, lam: complex) -> ChamberState:
    """Rotate and rescale the charge; no flips happen here."""
    if lam == 0:
        raise WalkError("scaling by zero")
    return replace(state, base=state.base.scaled(lam), log=list(state.log))


def _exits(zs: dict[str, complex], dz: dict[str, complex], t0: float, tol: float) -> list[tuple[float, str]]:
    """Times in ``[t0, 1]`` at which a charge ``z + t dz`` leaves the allowed region."""
    out = []
    for e in sorted_ids(zs):
        z, d = zs[e], dz[e]
        if d.imag >= 0:
            continue
        T = -(z.imag / d.imag)  # solves Im(z + T dz) = 0, relative to t0
        if T < -tol:
            continue  # already below; only possible if the state was out of chamber
        t = t0 + max(T, 0.0)
        if t <= 1 + tol:
            out.append((t, e))
    return sorted(out)


def walk(state: ChamberState, target: CentralCharge | dict, steps: int = 1,
         tol: float = TOL) -> ChamberState:
    """Follow the straight line from the current charge to ``target``.

    ``target`` is given on the starting basis, like ``state.base``.  Each exit
    of a simple through the real axis flips at its edge and rebases; two exits
    within ``tol`` of each other abort.
    """
    tgt = target if isinstance(target, CentralCharge) else CentralCharge.of(target)
    if set(tgt.as_dict()) != set(state.base.as_dict()):
        raise WalkError("target must be given on the starting edges")
    if not state.in_chamber(tol):
        raise WalkError("starting charge is outside the chamber")
    b0, b1 = state.base.as_dict(), tgt.as_dict()
    cur = replace(state, log=list(state.log))
    for k in range(max(1, steps)):
        s0, s1 = k / max(1, steps), (k + 1) / max(1, steps)
        cur = _walk_segment(cur, b0, b1, s0, s1, tol)
    return replace(cur, base=tgt)


def _walk_segment(cur: ChamberState, b0, b1, s0: float, s1: float, tol: float) -> ChamberState:
    t = s0
    while True:
        at = {e: b0[e] + t * (b1[e] - b0[e]) for e in b0}
        step = {e: (b1[e] - b0[e]) * (s1 - s0) for e in b0}
        here = replace(cur, base=CentralCharge.of(at))
        z = here.charge()
        # direction of each current charge per unit of the local parameter
        mz = cur.matrix
        edges = mz.edges
        dz = {x: sum(mz.rows[i][j] * step[edges[i]] for i in range(len(edges)))
              for j, x in enumerate(edges)}
        local = (t - s0) / (s1 - s0) if s1 > s0 else 0.0
        hits = [(h, e) for h, e in _exits(z, dz, local, tol) if h <= 1 + tol]
        hits = [(h, e) for h, e in hits if h > local + tol or z[e].imag <= tol]
        if not hits:
            return cur
        (h, e), rest = hits[0], hits[1:]
        if rest and abs(rest[0][0] - h) < tol:
            raise WalkError(f"walls of {e} and {rest[0][1]} are crossed together; perturb path")
        tau = s0 + h * (s1 - s0)
        zc = z[e] + (h - local) * dz[e]
        if abs(zc) < tol:
            raise WalkError(f"central charge of {e} vanishes on the path")
        direction = FORWARD if zc.real > 0 else BACKWARD
        if e not in flippable_edges(cur.graph):
            raise WalkError(f"wall of unflippable edge {e}")
        rec = flip(cur.graph, e, direction)
        K = k0_tilt_matrix(cur.graph, cur.scheme(), e, direction)
        cur = replace(cur, graph=rec.output, matrix=cur.matrix @ K,
                      log=cur.log + [Crossing(tau, e, direction, zc)])
        t = tau


def crossing_target(state: ChamberState, e: str, depth: float = 0.25) -> CentralCharge:
    """A target moving only the current edge ``e`` straight across its wall.

    The charge of ``e`` is pushed through the positive real axis to imaginary
    part ``-depth``; for the others the path stays put in current coordinates.
    """
    z = state.charge()
    if e not in z:
        raise WalkError(f"unknown edge {e!r}")
    want = dict(z)
    want[e] = complex(abs(z[e].real) + 1.0, -depth)
    return _rebase(state, want)


def _rebase(state: ChamberState, current: dict[str, complex]) -> CentralCharge:
    """Starting-basis charge that gives the current edges the values ``current``."""
    from fractions import Fraction

    m = state.matrix
    n = len(m.edges)
    # columns of m are current classes; solve m^T b = current
    a = [[Fraction(m.rows[i][j]) for i in range(n)] for j in range(n)]
    inv = _invert(a)
    cur = [current[x] for x in m.edges]
    b = [sum(complex(float(inv[i][j])) * cur[j] for j in range(n)) for i in range(n)]
    return CentralCharge.of(dict(zip(m.edges, b)))


def _invert(a):
    from fractions import Fraction

    n = len(a)
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [r[n:] for r in m]


def round_trip(g: SGraph, e: str, rng: random.Random, n: int | None = None) -> tuple[ChamberState, ChamberState]:
    """Cross the wall of ``e`` and come back along the same line."""
    s0 = start(g, generic_charge(g, rng), n)
    there = walk(s0, crossing_target(s0, e))
    back = walk(there, s0.base)
    return there, back


def wall_neighbours(g: SGraph, rng: random.Random, n: int | None = None) -> dict[str, bytes]:
    """Labeled key of the chamber beyond each flippable edge's wall."""
    s0 = start(g, generic_charge(g, rng), n)
    out = {}
    for e in flippable_edges(g):
        out[e] = labeled_key(walk(s0, crossing_target(s0, e)).graph)
    return out


def log_json(state: ChamberState) -> dict:
    return {"format": 1,
            "flips": [{"time": c.time, "edge": c.edge, "direction": c.direction,
                       "charge": [c.value.real, c.value.imag]} for c in state.log],
            "charge": CentralCharge.of(state.charge()).to_json(),
            "matrix": state.matrix.to_json()}


def emit(state: ChamberState, fmt: str = "log") -> str:
    if fmt == "json":
        return json.dumps(log_json(state), indent=2, sort_keys=True)
    if fmt != "log":
        raise WalkError(f"unknown format {fmt!r}")
    lines = [f"t={c.time:.6f} {c.direction} flip at {c.edge} (Z={c.value.real:.6g}{c.value.imag:+.6g}i)"
             for c in state.log] or ["no walls crossed"]
    z = state.charge()
    lines.append("final charge: " + ", ".join(f"{e}={z[e].real:.6g}{z[e].imag:+.6g}i"
                                              for e in sorted_ids(z)))
    return "\n".join(lines)
