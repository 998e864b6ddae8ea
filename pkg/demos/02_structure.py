"""
From a raw partial product to A_d x G
=====================================

A groupoid given only by its elements and partial multiplication is
checked against the axioms and then rewritten as a disjoint union of
connected pieces A_d x G_e.
"""

from groupoids.groupoid import RawGroupoid, check_raw, coarse, disjoint_union, from_group, make_connected, structure
from groupoids.groups import cyclic, dihedral

# A2 written out by hand: "ij" is the arrow from j to i
els = ["11", "12", "21", "22"]
product = {(a, b): a[0] + b[1] for a in els for b in els if a[1] == b[0]}
raw = RawGroupoid(tuple(els), product)
print("axiom violations:", check_raw(raw))

g, iso = structure(raw)
print(g)
for x, y in sorted(iso.items()):
    print(f"  {x} -> {y.id}")

# drop one product and the checker says why it is no longer a groupoid
broken = RawGroupoid(tuple(els), {k: v for k, v in product.items() if k != ("12", "21")})
for err in check_raw(broken):
    print("  ", err.kind, err.witness)

# a bigger round trip: A3 x D3 plus a copy of Z2, flattened and restructured
big = disjoint_union(make_connected(["x", "y", "z"], dihedral(3)), from_group(cyclic(2), "u"))
back, _ = structure(big.to_raw())
print("profile before", big.profile(), "after", back.profile())

g = disjoint_union(from_group(dihedral(3)), coarse(2))
print("order", g.order, "components", g.t, "identities", g.k)
