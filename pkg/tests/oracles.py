"""Independent oracles used by the tests.

The word oracle rebuilds the RGB algebra from its quiver: it enumerates
composable words in the generators, discards words containing a zero
monomial and glues the rest along the binomial relations with a signed
union-find.  Nothing here reads the basis or the structure constants of
``RgbAlgebra`` except to compare against them.
"""

from __future__ import annotations

from collections import defaultdict

ZERO = ("<zero>",)


class SignedUnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, (x, 1))

    def find(self, x):
        p, s = self.parent[x]
        if p == x:
            return x, 1
        r, s2 = self.find(p)
        self.parent[x] = (r, s * s2)
        return r, s * s2

    def union(self, x, y, s):
        """Record ``x = s * y``."""
        rx, sx = self.find(x)
        ry, sy = self.find(y)
        rel = sx * s * sy  # rx = rel * ry
        if rx == ry:
            if rel == -1 and rx != ZERO:
                self.parent[rx] = (ZERO, 1)
            return
        if rx == ZERO:
            self.parent[ry] = (ZERO, 1)
        elif ry == ZERO:
            self.parent[rx] = (ZERO, 1)
        else:
            self.parent[rx] = (ry, rel)


class WordOracle:
    def __init__(self, g, n: int):
        self.g, self.n = g, n
        self.N = {v: n // m for v, m in g.internal_degrees().items()}
        self.gens = []
        for h in g.halfedges:
            if g.succ(h) is not None:
                self.gens.append(("a", h))
            if not g.is_internal(g.vertex[h]):
                self.gens.append(("t", h))
        self.by_source = defaultdict(list)
        for x in self.gens:
            self.by_source[self.source(x)].append(x)

    def source(self, x):
        return self.g.edge_of(x[1])

    def target(self, x):
        if x[0] == "t":
            return self.g.edge_of(x[1])
        return self.g.edge_of(self.g.succ(x[1]))

    def gdeg(self, x):
        if x[0] == "t":
            return self.n - 1
        return self.g.corner(x[1])

    def interior(self, h):
        return self.g.is_internal(self.g.vertex[h])

    def bad_pair(self, x, y):
        """``x`` then ``y`` is a zero monomial of length two."""
        g = self.g
        if x[0] == "a" and y[0] == "a":
            return g.succ(x[1]) != y[1]
        if x[0] == "t" and y[0] == "t":
            return True
        if x[0] == "t" and y[0] == "a":
            return self.interior(y[1])
        if x[0] == "a" and y[0] == "t":
            return self.interior(x[1])
        return False

    def run_too_long(self, w):
        """Trailing run of arrows at an internal vertex exceeds the full cycle."""
        k = 0
        for x in reversed(w):
            if x[0] != "a" or not self.interior(x[1]):
                break
            k += 1
        if not k:
            return False
        v = self.g.vertex[w[-1][1]]
        return k > self.N[v] * len(self.g.order[v])

    def has_zero(self, w):
        # two tau with only arrows between them: commute one tau next to the
        # other (swapping to the partner halfedge if needed) and use tau^2 = 0
        if sum(1 for x in w if x[0] == "t") > 1:
            return True
        for k in range(1, len(w)):
            if self.bad_pair(w[k - 1], w[k]) or self.run_too_long(w[:k + 1]):
                return True
        return bool(w) and self.run_too_long(w[:1])

    def cycle(self, h):
        v = self.g.vertex[h]
        seq = self.g.order[v]
        k = seq.index(h)
        return tuple(("a", seq[(k + s) % len(seq)]) for s in range(self.N[v] * len(seq)))

    def binomials(self):
        g, n = self.g, self.n
        out = []
        for h in g.halfedges:
            nxt = g.succ(h)
            if nxt is not None and not self.interior(h):
                s = (-1) ** g.corner(h)
                out.append(((("t", h), ("a", h)), (("a", h), ("t", nxt)), s))
        for e, hs in g.edges.items():
            i, j = hs
            if self.interior(i) and self.interior(j):
                out.append((self.cycle(i), self.cycle(j), (-1) ** (n - 1)))
            elif not self.interior(i) and not self.interior(j):
                out.append(((("t", i),), (("t", j),), (-1) ** n))
        both = []
        for lhs, rhs, s in out:
            both.append((lhs, rhs, s))
            both.append((rhs, lhs, s))
        return both

    def words(self, max_len):
        out = []
        frontier = [((), e) for e in self.g.edges]
        out.extend(frontier)
        for _ in range(max_len):
            nxt = []
            for w, e in frontier:
                for x in self.by_source[self.target(w[-1]) if w else e]:
                    if w and self.bad_pair(w[-1], x):
                        continue
                    w2 = w + (x,)
                    if x[0] == "t" and any(y[0] == "t" for y in w):
                        continue
                    if self.run_too_long(w2):
                        continue
                    nxt.append((w2, e))
            out.extend(nxt)
            frontier = nxt
        return out

    def solve(self, max_len):
        self.max_len = max_len
        uf = SignedUnionFind()
        uf.add(ZERO)
        ws = self.words(max_len)
        self.start = {}
        for w, e in ws:
            key = w if w else ("<e>", e)
            uf.add(key)
            self.start[key] = e
        pats = defaultdict(list)
        for lhs, rhs, s in self.binomials():
            pats[lhs[0]].append((lhs, rhs, s))
        for w, e in ws:
            for k in range(len(w)):
                for lhs, rhs, s in pats[w[k]]:
                    if w[k:k + len(lhs)] != lhs:
                        continue
                    w2 = w[:k] + rhs + w[k + len(lhs):]
                    if self.has_zero(w2):
                        uf.union(w, ZERO, 1)
                    elif len(w2) <= max_len:
                        uf.union(w, w2, s)
        self.uf = uf
        return uf

    def key(self, w, e=None):
        return w if w else ("<e>", e)

    def resolve(self, w):
        """Class of a word as ``(root, sign)``; ``(ZERO, 1)`` if it vanishes."""
        if self.has_zero(w):
            return ZERO, 1
        if len(w) <= self.max_len:
            return self.uf.find(w)
        r, s = self.resolve(w[:self.max_len])
        if r == ZERO:
            return ZERO, 1
        assert len(r) < self.max_len
        r2, s2 = self.resolve(r + w[self.max_len:])
        return r2, s * s2

    def degree(self, w):
        return sum(self.gdeg(x) for x in w)

    def block_dims(self):
        """``(source, target, degree) -> number of nonzero classes``."""
        roots = set()
        for key in self.uf.parent:
            if key == ZERO:
                continue
            r, _ = self.uf.find(key)
            if r != ZERO:
                roots.add(r)
        out = defaultdict(int)
        for r in roots:
            if r[0] == "<e>":
                out[(r[1], r[1], 0)] += 1
            else:
                out[(self.source(r[0]), self.target(r[-1]), self.degree(r))] += 1
        return dict(out)

    def longest_nonzero(self):
        best = 0
        for key in self.uf.parent:
            if key == ZERO or key[0] == "<e>":
                continue
            if self.uf.find(key)[0] != ZERO:
                best = max(best, len(key))
        return best


def word_oracle(A):
    """A solved :class:`WordOracle` for the graph and ``n`` of ``A``."""
    orc = WordOracle(A.g, A.n)
    cycles = [orc.N[v] * len(A.g.order[v]) for v in orc.N]
    max_len = max([len(A.word(x)) for x in range(A.dim)] + cycles) + 1
    orc.solve(max_len)
    return orc


def compare_with_oracle(A, orc=None, check_products=True):
    """List of discrepancies between ``A`` and the word oracle."""
    orc = orc or word_oracle(A)
    problems = []
    if orc.longest_nonzero() >= orc.max_len:
        problems.append("oracle has nonzero words at the length bound")
    ours = defaultdict(int)
    for el in A.basis:
        ours[(el.source, el.target, el.degree)] += 1
    if dict(ours) != orc.block_dims():
        problems.append(f"dims differ: {dict(ours)} vs {orc.block_dims()}")
        return problems
    cls = {}
    for x in range(A.dim):
        w = A.word(x)
        r, s = orc.resolve(w) if w else orc.uf.find(orc.key(w, A.basis[x].source))
        if r == ZERO:
            problems.append(f"basis word of {A.basis[x].name} vanishes")
            return problems
        if r in cls:
            problems.append(f"{A.basis[x].name} and {A.basis[cls[r][0]].name} coincide")
            return problems
        cls[r] = (x, s)
    if not check_products:
        return problems
    for y in range(A.dim):
        for x in A.composable[y]:
            wy, wx = A.word(y), A.word(x)
            if not wy and not wx:
                continue
            r, s = orc.resolve(wy + wx)
            got = A.multiply(x, y)
            if r == ZERO:
                want = {}
            else:
                z, sz = cls[r]
                want = {z: s * sz}
            if {k: int(v) for k, v in got.items()} != want:
                problems.append(f"{A.basis[x].name} * {A.basis[y].name}: {got} vs {want}")
                if len(problems) > 5:
                    return problems
    return problems
