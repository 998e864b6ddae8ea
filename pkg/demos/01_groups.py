"""
Finite groups from Cayley tables
================================

Groups are stored as integer Cayley tables.  The catalog covers cyclic,
dihedral, symmetric, alternating and dicyclic groups plus direct and
semidirect products.
"""

from groupoids.groups import (
    are_isomorphic,
    automorphisms,
    cyclic,
    dihedral,
    direct_product,
    power_automorphism,
    semidirect_product,
    subgroups,
    sylow_subgroups_of_group,
)

# D3 with its usual labels: rotations then reflections
d3 = dihedral(3)
print(d3, [d3.label(i) for i in d3.elements])
print(d3.table)

# the subgroup lattice: trivial, three reflections, rotations, whole
for s in subgroups(d3):
    print("  subgroup", [d3.label(i) for i in s.elements])

# Z2 x Z3 is cyclic, and the isomorphism is returned as an image list
ok, f = are_isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6))
print("Z2 x Z3 = Z6:", ok, f)
print("|Aut D3| =", len(automorphisms(d3)))

# a nonabelian group of order 105: Z3 acts on Z35 by x -> 11x,
# trivially on the Z5 part and with order 3 on the Z7 part
g = semidirect_product(cyclic(35), cyclic(3), {1: power_automorphism(35, 11)})
print(g, "abelian:", g.is_abelian)
for p in (3, 5, 7):
    print(f"  n_{p} =", len(sylow_subgroups_of_group(g, p)))
