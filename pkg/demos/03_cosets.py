"""
Cosets in A3 x S2
=================

Cosets of a subgroupoid need not all have the same size, and for a
subgroupoid that misses an identity some cosets are empty.
"""

from groupoids.groupoid import make_connected
from groupoids.groups import cyclic
from groupoids.subgroupoids import (
    coset,
    coset_cardinality,
    index_bruteforce,
    index_formula,
    nonempty_right_cosets,
    subgroupoid_from_blocks,
)

g = make_connected(["e1", "e2", "e3"], cyclic(2))

# H: S2 on the arrows among e1 and e2, and only the identity at e3
h = subgroupoid_from_blocks(g, [(["e1", "e2"], [0, 1]), (["e3"], [0])])
print(h)

for ref in ("0/e3/e2/0", "0/e1/e2/0"):
    x = g.element(ref)
    left = coset(h, x, "left")
    print(f"left coset of {ref}: {len(left)} elements", sorted(y.id for y in left.members))

# |Hx| = (identities in the block of r(x)) * |H_r(x)|
for x in g.element_list[:6]:
    print(" ", x.id, "right coset size", coset_cardinality(h, x))

print("index: formula", index_formula(g, h), "count", index_bruteforce(g, h))

# K misses e3 entirely
k = subgroupoid_from_blocks(g, [(["e1", "e2"], [0, 1])])
x = g.element("0/e1/e3/0")
print("Kx empty:", coset(k, x, "right").is_empty, " x in xK:", x in coset(k, x, "left").members)
print("(G:K) =", index_formula(g, k), "while all nonempty right cosets number", nonempty_right_cosets(g, k))
