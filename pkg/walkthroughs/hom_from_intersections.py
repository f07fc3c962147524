"""Graded Hom spaces between edge objects, counted two ways.

One count uses intersections of edges at shared vertices, the other
enumerates a basis of the graded algebra between idempotents.
"""

from brauerflip import fixtures
from brauerflip import ext_oracle as xo

g = fixtures.load("theta_torus")
n = 3
scheme = xo.rgb_scheme(n)

for e in sorted(g.edges):
    for h in sorted(g.edges):
        dims = dict(xo.rhom(g, scheme, e, h).dims)
        print(f"Hom({e}, {h}) = {dims}")

rows = xo.compare_with_algebra(g, n)
bad = [r for r in rows if not r["match"]]
print(f"{len(rows)} pairs compared, {len(bad)} mismatches")
