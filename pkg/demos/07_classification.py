"""
Counting groupoids of small order
=================================

A groupoid is determined up to isomorphism by its pieces (d, group class).
Counting is a multiset count over piece orders d^2 m.
"""

from groupoids.classify import atlas, count_groups_bruteforce, groupoid_count, partitions

print("partitions of 5:", partitions(5))
print("groups of order 1..6 by brute force:", [count_groups_bruteforce(m) for m in range(1, 7)])
print("groupoids of order 1..6:", [groupoid_count(n) for n in range(1, 7)])

for cls in atlas(5)["classes"]:
    print("  ", " + ".join(f"A{p['d']} x {p['group']}" if p["d"] > 1 else p["group"] for p in cls["parts"]))
