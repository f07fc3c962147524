"""Koszul duals of RGB algebras as free graded quivers with differential.

Words in a free algebra are tuples of generator names written left to
right as tensor products.  ``x (x) y`` is composable when ``y`` ends where
``x`` starts, matching the convention that the dual of a product ``e_j e_i``
is written ``e^i (x) e^j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .fields import Field, RATIONALS
from .rgb_algebra import (RgbAlgebra, check_compatible, resolve_orientation,
                          sign_conventions)
from .sgraph_core import EdgeOrientation, SGraph, require_valid

Word = tuple


class KoszulError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    source: str
    target: str
    degree: int
    family: str = ""
    r: int | None = None


def _acc(out: dict, w: Word, c, F: Field) -> None:
    v = F.convert(out.get(w, 0) + c)
    if v == 0:
        out.pop(w, None)
    else:
        out[w] = v


@dataclass
class FreeDgAlgebra:
    vertices: list[str]
    generators: dict[str, Generator]
    differential: dict[str, dict[Word, object]]
    field: Field = RATIONALS
    notes: list[str] = dc_field(default_factory=list)

    def degree(self, w: Word) -> int:
        return sum(self.generators[x].degree for x in w)

    def composable(self, w: Word) -> bool:
        return all(self.generators[w[k + 1]].target == self.generators[w[k]].source
                   for k in range(len(w) - 1))

    def d_word(self, w: Word) -> dict:
        out: dict = {}
        sign_deg = 0
        for k, x in enumerate(w):
            s = -1 if sign_deg % 2 else 1
            for u, c in self.differential.get(x, {}).items():
                _acc(out, w[:k] + u + w[k + 1:], s * c, self.field)
            sign_deg += self.generators[x].degree
        return out

    def d_vec(self, v: dict) -> dict:
        out: dict = {}
        for w, c in v.items():
            for u, cu in self.d_word(w).items():
                _acc(out, u, c * cu, self.field)
        return out

    def check_d_squared(self) -> list[str]:
        return [x for x in self.generators if self.d_vec(self.differential.get(x, {}))]

    def check_homogeneous(self) -> list[str]:
        """Generators whose differential has a term of the wrong degree or shape."""
        bad = []
        for x, terms in self.differential.items():
            g = self.generators[x]
            for w in terms:
                if not w or not self.composable(w) or self.degree(w) != g.degree + 1 \
                        or self.generators[w[-1]].source != g.source \
                        or self.generators[w[0]].target != g.target:
                    bad.append(x)
                    break
        return bad

    def arrows(self) -> list[tuple]:
        """Sorted ``(name, source, target, degree)`` records."""
        return sorted((g.name, g.source, g.target, g.degree) for g in self.generators.values())

    def renamed(self, mapping: dict[str, tuple[str, int]]) -> "FreeDgAlgebra":
        """Substitute ``x -> sign * x'`` for every generator."""
        gens = {}
        for x, g in self.generators.items():
            new, _ = mapping[x]
            gens[new] = Generator(new, g.source, g.target, g.degree, g.family, g.r)
        diff = {}
        for x, terms in self.differential.items():
            new, s = mapping[x]
            out: dict = {}
            for w, c in terms.items():
                sw = s
                for y in w:
                    sw *= mapping[y][1]
                _acc(out, tuple(mapping[y][0] for y in w), c * sw, self.field)
            if out:
                diff[new] = out
        return FreeDgAlgebra(list(self.vertices), gens, diff, self.field, list(self.notes))

    def equals(self, other: "FreeDgAlgebra") -> list[str]:
        """Differences in generators or differentials (empty iff equal)."""
        out = []
        if set(self.generators) != set(other.generators):
            only_a = sorted(set(self.generators) - set(other.generators))
            only_b = sorted(set(other.generators) - set(self.generators))
            out.append(f"generator sets differ: {only_a[:5]} vs {only_b[:5]}")
            return out
        for x in self.generators:
            a, b = self.generators[x], other.generators[x]
            if (a.source, a.target, a.degree) != (b.source, b.target, b.degree):
                out.append(f"{x}: {a} vs {b}")
            da = {w: c for w, c in self.differential.get(x, {}).items()}
            db = {w: c for w, c in other.differential.get(x, {}).items()}
            if da != db:
                out.append(f"d({x}) differs")
        return out

    def to_json(self) -> dict:
        return {
            "format": 1,
            "field": self.field.name,
            "vertices": list(self.vertices),
            "generators": [{"name": g.name, "source": g.source, "target": g.target,
                            "degree": g.degree, "family": g.family}
                           for g in sorted(self.generators.values(), key=lambda g: g.name)],
            "differential": {x: sorted([[str(c), list(w)] for w, c in terms.items()], key=lambda t: t[1])
                             for x, terms in sorted(self.differential.items())},
            "notes": self.notes,
        }

    def to_dot(self, title: str = "quiver") -> str:
        lines = [f"digraph {json.dumps(title)} {{"]
        for v in self.vertices:
            lines.append(f"  {json.dumps(v)};")
        for name, s, t, d in self.arrows():
            lines.append(f"  {json.dumps(s)} -> {json.dumps(t)} [label={json.dumps(f'{name} ({d})')}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- generic cobar construction ------------------------------------------------


def dual_name(A: RgbAlgebra, x: int) -> str:
    return f"({A.basis[x].name})^"


def _require_nilpotent(A: RgbAlgebra, ideal: list[int]) -> None:
    layer = set(ideal)
    for _ in range(A.dim + 1):
        nxt = set()
        for y in layer:
            for x in A.composable[y]:
                if A.basis[x].family != "e":
                    nxt.update(A.multiply(x, y))
        if not nxt:
            return
        layer = nxt
    raise KoszulError("augmentation ideal is not nilpotent")


def cobar(A: RgbAlgebra) -> FreeDgAlgebra:
    """Cobar construction on the dual of the augmentation ideal.

    ``d e^k = -sum_i d^i_k e^i + sum_{i,j} (-1)^{|e^i|} m^{j,i}_k e^i (x) e^j``
    with ``d^i_k = e^k(d e_i)`` and ``m^{j,i}_k = e^k(e_j e_i)``.
    """
    F = A.field
    gens: dict[str, Generator] = {}
    ideal = [x for x in range(A.dim) if A.basis[x].family != "e"]
    _require_nilpotent(A, ideal)
    for x in ideal:
        el = A.basis[x]
        nm = dual_name(A, x)
        gens[nm] = Generator(nm, el.target, el.source, 1 - el.degree, el.family, el.r)
    diff: dict[str, dict] = {}
    for i in ideal:
        for k, c in A.differential(i).items():
            _acc(diff.setdefault(dual_name(A, k), {}), (dual_name(A, i),), -c, F)
    for i in ideal:
        sign = -1 if (1 - A.basis[i].degree) % 2 else 1
        for j in A.composable[i]:
            if A.basis[j].family == "e":
                continue
            for k, c in A.multiply(j, i).items():
                _acc(diff.setdefault(dual_name(A, k), {}), (dual_name(A, i), dual_name(A, j)), sign * c, F)
    diff = {k: v for k, v in diff.items() if v}
    return FreeDgAlgebra(list(A.g.edges), gens, diff, F)


# -- explicit dual -------------------------------------------------------------


class _Paths:
    """Path combinatorics at the vertices of an S-graph."""

    def __init__(self, g: SGraph, n: int):
        self.g, self.n = g, n
        self.N = {v: n // m for v, m in g.internal_degrees().items()}

    def end(self, j: str, L: int) -> str:
        seq = self.g.order[self.g.vertex[j]]
        return seq[(seq.index(j) + L) % len(seq)]

    def deg(self, j: str, L: int) -> int:
        g = self.g
        seq = g.order[g.vertex[j]]
        k = seq.index(j)
        return sum(g.corners[(seq[(k + s) % len(seq)], seq[(k + s + 1) % len(seq)])] for s in range(L))

    def top(self, v: str) -> int:
        return self.N[v] * len(self.g.order[v])


def explicit_dual(g: SGraph, n: int, orient: EdgeOrientation | None = None,
                  field: Field = RATIONALS) -> FreeDgAlgebra:
    """The dual generators and their differentials written out directly.

    Interior generators ``alpha^r[i,j]`` are indexed by a start halfedge and a
    length; their differential sums over all ways of cutting the path in two.
    ``sigma[i]`` uses the representative halfedge ``i`` of its edge and
    ``t[i]`` the representative boundary halfedge; the other halfedge of the
    edge contributes with the sign of the identification ``c_j = (-1)^(n-1) c_i``
    resp. ``tau_j = (-1)^n tau_i``.
    """
    require_valid(g)
    check_compatible(g, n)
    orient = resolve_orientation(g, orient)
    kind, rep, tau_half = sign_conventions(g, orient)
    P = _Paths(g, n)
    F = field
    edge = g.edge_of
    gens: dict[str, Generator] = {}
    diff: dict[str, dict] = {}

    def interior_name(j: str, L: int) -> str:
        q = len(g.order[g.vertex[j]])
        return f"alpha^{L // q}[{P.end(j, L)},{j}]"

    def interior_deg(j: str, L: int) -> int:
        return 1 - P.deg(j, L)

    def boundary_name(fam: str, j: str, i: str) -> str:
        return f"{fam}[{i},{j}]"

    def t_of(h: str) -> tuple[str, int]:
        """``t_h`` as ``(generator, sign)``."""
        E = edge(h)
        r = tau_half.get(E, rep[E])
        s = 1 if (kind[E] == "IB" or h == r) else (-1) ** n
        return f"t[{r}]", s

    def beta(j: str, i: str) -> tuple[str, int, int]:
        """``beta_{i,j}`` (``beta_{i,i} = t_i``) as ``(generator, sign, degree)``."""
        if i == j:
            nm, s = t_of(i)
            return nm, s, 2 - n
        return boundary_name("beta", j, i), 1, 2 - n - g.d(j, i)

    def sgn(d: int) -> int:
        return -1 if d % 2 else 1

    for v in g.vertices:
        seq = g.order[v]
        if g.is_internal(v):
            q = len(seq)
            for j in seq:
                for L in range(1, P.top(v)):
                    nm = interior_name(j, L)
                    gens[nm] = Generator(nm, edge(P.end(j, L)), edge(j), interior_deg(j, L),
                                         "alpha^r", L // q)
                    terms: dict = {}
                    for L1 in range(1, L):
                        k = P.end(j, L1)
                        _acc(terms, (interior_name(j, L1), interior_name(k, L - L1)),
                             sgn(interior_deg(j, L1)), F)
                    if terms:
                        diff[nm] = terms
        else:
            for x in range(len(seq)):
                for y in range(x + 1, len(seq)):
                    j, i = seq[x], seq[y]
                    a = boundary_name("alpha", j, i)
                    gens[a] = Generator(a, edge(i), edge(j), 1 - g.d(j, i), "alpha")
                    b = boundary_name("beta", j, i)
                    gens[b] = Generator(b, edge(i), edge(j), 2 - n - g.d(j, i), "beta")
                    da: dict = {}
                    for z in range(x + 1, y):
                        k = seq[z]
                        _acc(da, (boundary_name("alpha", j, k), boundary_name("alpha", k, i)),
                             sgn(1 - g.d(j, k)), F)
                    if da:
                        diff[a] = da
                    db: dict = {}
                    for z in range(x, y):
                        k = seq[z]
                        bn, bs, bd = beta(j, k)
                        _acc(db, (bn, boundary_name("alpha", k, i)), bs * sgn(bd), F)
                    for z in range(x + 1, y + 1):
                        k = seq[z]
                        bn, bs, _ = beta(k, i)
                        _acc(db, (boundary_name("alpha", j, k), bn), -bs, F)
                    if db:
                        diff[b] = db

    def A_sum(i: str) -> dict:
        v = g.vertex[i]
        top = P.top(v)
        out: dict = {}
        for L1 in range(1, top):
            k = P.end(i, L1)
            _acc(out, (interior_name(i, L1), interior_name(k, top - L1)), sgn(interior_deg(i, L1)), F)
        return out

    for E in g.edges:
        if kind[E] in ("II", "IB"):
            i = rep[E]
            nm = f"sigma[{i}]"
            gens[nm] = Generator(nm, E, E, 1 - n, "sigma")
            terms = A_sum(i)
            if kind[E] == "II":
                j = next(h for h in g.halves(E) if h != i)
                for w, c in A_sum(j).items():
                    _acc(terms, w, (-1) ** (n - 1) * c, F)
            else:
                tn, ts = t_of(tau_half[E])
                _acc(terms, (tn,), (-1) ** (n - 1) * ts, F)
            if terms:
                diff[nm] = terms
        if kind[E] in ("IB", "BB"):
            nm, _ = t_of(tau_half.get(E, rep[E]))
            gens[nm] = Generator(nm, E, E, 2 - n, "t")
    return FreeDgAlgebra(list(g.edges), gens, diff, F)


def explicit_name_map(A: RgbAlgebra) -> dict[str, tuple[str, int]]:
    """Cobar generator names to explicit-dual names (all signs +1)."""
    out = {}
    for x, el in enumerate(A.basis):
        if el.family == "e":
            continue
        if el.family == "a^r":
            new = f"alpha^{el.r}[{el.i},{el.j}]"
        elif el.family == "c":
            new = f"sigma[{el.i}]"
        elif el.family == "tau":
            new = f"t[{el.i}]"
        elif el.family == "a":
            new = f"alpha[{el.i},{el.j}]"
        else:
            new = f"beta[{el.i},{el.j}]"
        out[dual_name(A, x)] = (new, 1)
    return out


def compare_cobar_explicit(A: RgbAlgebra) -> list[str]:
    C = cobar(A).renamed(explicit_name_map(A))
    X = explicit_dual(A.g, A.n, A.orient, A.field)
    return C.equals(X)


# -- reduced quiver ------------------------------------------------------------


def _substitute(terms: dict, var: str, value: dict, F: Field) -> dict:
    out: dict = {}
    for w, c in terms.items():
        partial = {(): c}
        for y in w:
            nxt: dict = {}
            repl = value if y == var else {(y,): 1}
            for u, cu in partial.items():
                for r, cr in repl.items():
                    _acc(nxt, u + r, cu * cr, F)
            partial = nxt
        for u, cu in partial.items():
            _acc(out, u, cu, F)
    return out


def reduced_quiver(g: SGraph, n: int, orient: EdgeOrientation | None = None,
                   field: Field = RATIONALS) -> FreeDgAlgebra:
    """The explicit dual with the contractible pairs at mixed edges removed.

    At an edge with one internal and one boundary end ``d sigma = A_i + (-1)^(n-1) t``,
    so ``sigma`` and ``t`` are dropped and ``t`` is replaced by ``(-1)^n A_i``
    elsewhere.  At edges between internal vertices ``sigma`` is renamed ``L``.
    """
    X = explicit_dual(g, n, orient, field)
    F = field
    orient = resolve_orientation(g, orient)
    kind, rep, tau_half = sign_conventions(g, orient)
    gens = dict(X.generators)
    diff = {k: dict(v) for k, v in X.differential.items()}
    for E in g.edges:
        if kind[E] != "IB":
            continue
        s, t = f"sigma[{rep[E]}]", f"t[{tau_half[E]}]"
        rest = {w: c for w, c in diff.get(s, {}).items() if w != (t,)}
        coeff = diff[s][(t,)]
        value = {w: F.convert(-c) * F.inverse(coeff) for w, c in rest.items()}
        gens.pop(s)
        gens.pop(t)
        diff.pop(s, None)
        diff.pop(t, None)
        for x in list(diff):
            if any(t in w for w in diff[x]):
                diff[x] = _substitute(diff[x], t, value, F)
                if not diff[x]:
                    del diff[x]
    rename = {}
    for x, gen in gens.items():
        if gen.family == "sigma":
            rename[x] = (f"L[{gen.source}]", 1)
        else:
            rename[x] = (x, 1)
    R = FreeDgAlgebra(list(g.edges), gens, diff, F).renamed(rename)
    for x in list(R.generators):
        if x.startswith("L["):
            g0 = R.generators[x]
            R.generators[x] = Generator(x, g0.source, g0.target, g0.degree, "L")
    R.notes.append("L[e] is the dual of the cycle at the representative halfedge of e")
    return R


def quiver_signature(Q: FreeDgAlgebra, edge_label=lambda e: e) -> list[tuple]:
    """Sorted ``(family, r, source, target, degree)`` records of the arrows."""
    out = []
    for gen in Q.generators.values():
        out.append((gen.family, gen.r if gen.family == "alpha^r" else None,
                    edge_label(gen.source), edge_label(gen.target), gen.degree))
    return sorted(out, key=lambda t: tuple("" if x is None else str(x) for x in t))


def emit(Q: FreeDgAlgebra, what: str, title: str = "quiver") -> str:
    if what == "dot":
        return Q.to_dot(title)
    if what == "json":
        return json.dumps(Q.to_json(), indent=1, sort_keys=True)
    if what == "quiver":
        lines = [f"{name}\t{s}->{t}\t{d}" for name, s, t, d in Q.arrows()]
        for x in sorted(Q.differential):
            terms = " + ".join(f"({c})*{'.'.join(w)}" for w, c in sorted(Q.differential[x].items()))
            lines.append(f"d({x}) = {terms}")
        return "\n".join(lines)
    raise ValueError(f"unknown emit kind {what!r}")
