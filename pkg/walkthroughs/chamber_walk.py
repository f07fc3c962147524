"""Push one central charge across its wall and back again.

Crossing the positive real axis flips the edge forward; the return trip
flips it backward and the base-change matrix goes back to the identity.
"""

import random

from brauerflip import fixtures
from brauerflip import stability_walk as sw
from brauerflip.sgraph_core import canonical_form

g = fixtures.load("torus_four_trivalent")
rng = random.Random(7)

s0 = sw.start(g, sw.generic_charge(g, rng), n=3)
there = sw.walk(s0, sw.crossing_target(s0, "ab"))
print(sw.emit(there))

back = sw.walk(there, s0.base)
print(sw.emit(back))
print("same chamber:", canonical_form(back.graph) == canonical_form(g))
print("identity matrix:", back.matrix == s0.matrix)
