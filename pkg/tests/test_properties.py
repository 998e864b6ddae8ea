"""Randomised checks over small groupoids."""

from __future__ import annotations

import math

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from groupoids.groupoid import (
    RawGroupoid,
    are_isomorphic_groupoids,
    make_connected,
    make_groupoid,
    structure,
)
from groupoids.groups import cyclic, dihedral, klein, prime_divisors, sylow_subgroups_of_group
from groupoids.subgroupoids import (
    coset_cardinality,
    count_subgroupoids,
    index_bruteforce,
    index_formula,
    iter_subgroupoids,
    lagrange_identity_check,
)
from groupoids.sylow import enumerate_dp_sylow

POOL = [cyclic(1), cyclic(2), cyclic(3), cyclic(4), klein(), dihedral(3)]

components = st.lists(st.tuples(st.integers(1, 3), st.sampled_from(POOL)), min_size=1, max_size=3)


def build(parts):
    out, n = [], 0
    for d, grp in parts:
        out.append(([f"v{n + i}" for i in range(d)], grp))
        n += d
    return make_groupoid(out)


@st.composite
def pairs(draw):
    g = build(draw(components))
    total = count_subgroupoids(g)
    if total > 400 or g.order > 64:
        g = build(draw(st.lists(st.tuples(st.integers(1, 2), st.sampled_from(POOL[:3])), min_size=1, max_size=2)))
        total = count_subgroupoids(g)
    pick = draw(st.integers(0, total - 1))
    for i, h in enumerate(iter_subgroupoids(g)):
        if i == pick:
            return g, h
    raise AssertionError("count and enumeration disagree")


settings.register_profile("suite", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


@given(pairs())
def test_index_formula_equals_bruteforce(pair):
    g, h = pair
    assert index_formula(g, h) == index_bruteforce(g, h)


@given(pairs())
def test_coset_lemma(pair):
    g, h = pair
    for x in g.element_list:
        coset_cardinality(h, x)


@given(pairs())
def test_lagrange_reports_pass(pair):
    g, h = pair
    assert lagrange_identity_check(g, h).passed


@given(components, st.randoms(use_true_random=False))
def test_structure_recovers_relabelled_groupoid(parts, rnd):
    g = build(parts)
    raw = g.to_raw()
    names = list(raw.elements)
    shuffled = names[:]
    rnd.shuffle(shuffled)
    ren = {a: f"x{i}" for i, a in enumerate(shuffled)}
    relabelled = RawGroupoid(tuple(ren[a] for a in names),
                             {(ren[a], ren[b]): ren[c] for (a, b), c in raw.product.items()})
    back, witness = structure(relabelled)
    assert are_isomorphic_groupoids(back, g)
    assert len(witness) == g.order


@given(st.integers(1, 4), st.sampled_from(POOL[1:]), st.data())
def test_dp_count_is_N_times_binomial(k, grp, data):
    g = make_connected([f"e{i}" for i in range(k)], grp)
    p = data.draw(st.sampled_from(prime_divisors(grp.order)))
    d = data.draw(st.integers(1, k))
    r = enumerate_dp_sylow(g, d, p, verify=False)
    assert r.count == len(sylow_subgroups_of_group(grp, p)) * math.comb(k, d)
