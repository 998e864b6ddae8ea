"""
Sylow subgroupoids of A3 x D3
=============================

A (d,p)-Sylow subgroupoid is A_d x S on d identities with S a Sylow
p-subgroup of D3.  There are N * C(3, d) of them.
"""

from groupoids.groupoid import make_connected
from groupoids.groups import dihedral
from groupoids.sylow import enumerate_DP_sylow, enumerate_dp_sylow, is_characteristic, is_normal

g = make_connected(["e1", "e2", "e3"], dihedral(3))

for d in (1, 2, 3):
    for p in (3, 2):
        r = enumerate_dp_sylow(g, d, p)
        print(f"n_({d},{p}) = {r.count}  (N = {r.N[0]}, C(3,{d}) = {r.multinomial}), order {r.data['order']}")

wide3 = enumerate_dp_sylow(g, 3, 3).subgroupoids[0]
print("wide 3-Sylow normal:", is_normal(g, wide3), "characteristic:", is_characteristic(g, wide3))
print("wide 2-Sylows normal:", [is_normal(g, h) for h in enumerate_dp_sylow(g, 3, 2).subgroupoids])

# one identity carrying a 2-Sylow, two carrying the 3-Sylow
r = enumerate_DP_sylow(g, (1, 2), (2, 3))
print("n_{D,P} for D=(1,2), P=(2,3):", r.count, "=", r.multinomial, "*", r.N)
