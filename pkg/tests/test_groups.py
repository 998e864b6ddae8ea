from __future__ import annotations

import itertools

import pytest
from sympy import totient

from groupoids.errors import BadParams, NoIdentity, NoInverse, NotAHomomorphism, NotAnAutomorphism, NotAssociative, UnknownName
from groupoids.groups import (
    are_isomorphic,
    automorphisms,
    catalog_group,
    check_group_table,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    generate,
    is_homomorphism,
    isomorphisms,
    klein,
    make_group_from_table,
    normalizer,
    power_automorphism,
    semidirect_product,
    subgroups,
    sylow_subgroups_of_group,
    symmetric,
)


def closed_subsets(g):
    """Oracle: every subset containing 1 and closed under products."""
    others = [x for x in g.elements if x != g.identity]
    found = set()
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            s = {g.identity, *combo}
            if all(g.mul(a, b) in s for a in s for b in s):
                found.add(frozenset(s))
    return found


@pytest.mark.parametrize("g", [cyclic(4), klein(), dihedral(3), dihedral(4), dicyclic(2), cyclic(6)],
                         ids=lambda g: g.name)
def test_subgroup_lattice_matches_subset_scan(g):
    assert {s.elementset for s in subgroups(g)} == closed_subsets(g)


def test_named_subgroup_counts():
    # D3 has 1 + 3 + 1 + 1 subgroups, Z4 has three
    assert len(subgroups(dihedral(3))) == 6
    assert len(subgroups(cyclic(4))) == 3
    assert [s.elements for s in sylow_subgroups_of_group(dihedral(3), 2)] == [(0, 3), (0, 4), (0, 5)]


def test_dihedral3_labels():
    d3 = dihedral(3)
    assert [d3.label(i) for i in d3.elements] == ["1", "ρ", "ρ²", "τ₁", "τ₂", "τ₃"]
    assert not d3.is_abelian


def test_table_errors():
    assert isinstance(check_group_table([[0, 1], [1, 1]])[0], Exception)
    # left-zero semigroup x*y = x: associative, no identity
    with pytest.raises(NoIdentity):
        make_group_from_table([[0, 0], [1, 1]])
    # monoid with an absorbing element
    with pytest.raises(NoInverse):
        make_group_from_table([[0, 1], [1, 1]])
    # a Latin square that is not associative (order-5 loop)
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        make_group_from_table(loop)


def test_catalog_names():
    assert catalog_group("dihedral", [3]).order == 6
    assert catalog_group("direct_product", [2, 3]).order == 6
    assert catalog_group("from_table", [0, 1, 1, 0]).order == 2
    with pytest.raises(UnknownName):
        catalog_group("monster", [])
    with pytest.raises(BadParams):
        catalog_group("cyclic", [])


def test_isomorphism_decisions():
    assert are_isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6))[0]
    assert not are_isomorphic(cyclic(4), klein())[0]
    assert not are_isomorphic(dihedral(4), dicyclic(2))[0]
    ok, f = are_isomorphic(symmetric(3), dihedral(3))
    assert ok and is_homomorphism(symmetric(3), dihedral(3), f)


@pytest.mark.parametrize("n", [1, 2, 5, 8, 12, 15])
def test_cyclic_automorphisms_count_is_totient(n):
    assert len(automorphisms(cyclic(n))) == totient(n)


def test_small_automorphism_groups():
    assert len(automorphisms(klein())) == 6
    assert len(automorphisms(dihedral(3))) == 6
    assert len(list(isomorphisms(dihedral(3), symmetric(3)))) == 6


def test_semidirect_order_105():
    g = semidirect_product(cyclic(35), cyclic(3), {1: power_automorphism(35, 11)})
    assert g.order == 105 and not g.is_abelian
    assert [len(sylow_subgroups_of_group(g, p)) for p in (3, 5, 7)] == [7, 1, 1]


def test_semidirect_rejects_bad_actions():
    with pytest.raises(NotAnAutomorphism):
        semidirect_product(cyclic(5), cyclic(2), {1: [0, 1, 1, 1, 1]})
    # inversion has order 2, so it cannot be the image of a generator of Z3
    with pytest.raises(NotAHomomorphism):
        semidirect_product(cyclic(7), cyclic(3), {1: power_automorphism(7, 6)})


def test_sylow_theorems_on_s4():
    s4 = symmetric(4)
    assert len(sylow_subgroups_of_group(s4, 2)) == 3
    assert len(sylow_subgroups_of_group(s4, 3)) == 4
    p3 = sylow_subgroups_of_group(s4, 3)[0]
    assert s4.order // normalizer(s4, p3).order == 4


def test_generate_closes():
    d4 = dihedral(4)
    assert generate(d4, [1, 4]) == frozenset(d4.elements)
