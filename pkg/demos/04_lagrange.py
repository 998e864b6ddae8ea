"""
Lagrange for groupoids
======================

Orders of subgroupoids are sums d^2 m, and for wide subgroupoids the
order of the groupoid splits over blocks and cosets.
"""

from groupoids.groupoid import make_connected
from groupoids.groups import dihedral
from groupoids.subgroupoids import enumerate_subgroupoids, lagrange_identity_check

g = make_connected(["e1", "e2"], dihedral(3))
subs = enumerate_subgroupoids(g)
wide = [h for h in subs if h.is_wide]
print(len(subs), "subgroupoids,", len(wide), "wide")

orders = sorted({h.order for h in subs})
print("orders that occur:", orders, "(|G| =", g.order, ")")

for h in wide[:: max(1, len(wide) // 5)]:
    rep = lagrange_identity_check(g, h)
    print(h, "pass" if rep.passed else "FAIL")
    for c in rep.checks:
        print(f"    {c.name}: {c.lhs} vs {c.rhs}")
