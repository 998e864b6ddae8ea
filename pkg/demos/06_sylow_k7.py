"""
Seven identities, three primes
==============================

In A7 x G with |G| = 105, split the identities into blocks of sizes
1, 3, 3 carrying Sylow 3-, 5- and 7-subgroups.
"""

from groupoids.groupoid import make_connected
from groupoids.groups import cyclic, power_automorphism, semidirect_product
from groupoids.sylow import enumerate_DP_sylow

labels = [f"e{i}" for i in range(1, 8)]

for name, grp in [("Z105", cyclic(105)),
                  ("Z35 x| Z3", semidirect_product(cyclic(35), cyclic(3), {1: power_automorphism(35, 11)}))]:
    r = enumerate_DP_sylow(make_connected(labels, grp), (1, 3, 3), (3, 5, 7))
    print(f"{name}: n_DP = {r.count} = {r.multinomial} * {r.N}   explicit: {r.subgroupoids is not None}")
    print("   every block normal in G:", r.data["blockwise_normal"],
          "  closed under all conjugations:", r.data["normal"])
