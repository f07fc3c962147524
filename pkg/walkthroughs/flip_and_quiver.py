"""Flip an edge of a triangulated disk and watch the dual quiver change.

Run with ``python3 walkthroughs/flip_and_quiver.py``.
"""

from collections import Counter

from brauerflip import fixtures
from brauerflip.flip_engine import backward_flip, forward_flip
from brauerflip.koszul_dual import reduced_quiver
from brauerflip.sgraph_core import canonical_form


def arrow_kinds(Q):
    return Counter(gen.family for gen in Q.generators.values())


g = fixtures.load("disk_three_trivalent")
n = 3
print(f"{len(g.edges)} edges, flipping edge 1 backward")

rec = backward_flip(g, "1")
for m in rec.moved:
    print(f"  half-edge {m.halfedge} moves {m.source} -> {m.target} past {m.via}")

before = reduced_quiver(g, n)
after = reduced_quiver(rec.output, n)
print("arrow families before:", dict(arrow_kinds(before)))
print("arrow families after: ", dict(arrow_kinds(after)))

# The two flips undo each other up to relabeling.
back = forward_flip(rec.output, "1").output
print("round trip restores the graph:", canonical_form(back) == canonical_form(g))
