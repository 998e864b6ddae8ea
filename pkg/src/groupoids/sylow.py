"""Normal and characteristic subgroupoids, and Sylow theory for connected groupoids.

A (d,p)-Sylow subgroupoid of ``A_k x G`` is ``A_d x S`` on a d-subset of the
identities, with ``S`` a Sylow p-subgroup of ``G``, taken in the product
coordinates of the structured form.  A (D,P)-Sylow subgroupoid is a disjoint
union of such blocks, block i having d_i identities and prime p_i.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from sympy import isprime

from .errors import (
    HypothesisNotMet,
    NoSuchGroupOrder,
    NotConnected,
    NotWide,
    NotWideConnected,
    ProfileInfeasible,
)
from .groupoid import Groupoid, GroupoidElement, RawGroupoid, structure
from .groups import (
    Subgroup,
    are_isomorphic,
    automorphisms,
    center,
    check_subgroup,
    conjugate,
    normalizer,
    p_part,
    p_subgroups,
    sylow_subgroups_of_group,
)
from .subgroupoids import Report, Subgroupoid, product_subgroupoid, subgroupoid_from_blocks, validate_subgroupoid

#: explicit (D,P) enumeration is skipped when count * |H| exceeds this
EXPLICIT_CAP = 2_000_000


# ---------------------------------------------------------------------------
# normality


def _require_wide(h: Subgroupoid) -> None:
    if not h.is_wide:
        raise NotWide("definition applies to wide subgroupoids",
                      witness=sorted(set(h.parent.identity_labels) - h.identities))


def is_normal(g: Groupoid, h: Subgroupoid) -> bool:
    """x^-1 H x ⊆ H for every x (scanning all composable triples)."""
    _require_wide(h)
    for x in g.element_list:
        xi = g.inverse(x)
        for y in h.by_src.get(x.dst, ()):
            if y.dst != x.dst:
                continue
            if g.compose(xi, g.compose(y, x)) not in h.elements:
                return False
    return True


@dataclass(frozen=True)
class IsoFamily:
    """All isomorphisms between isotropy groups, grouped per component pair.

    The isomorphisms G_e -> G_e' for e in component ``i`` and e' in component
    ``j`` are ``phi[i, j] ∘ alpha`` for alpha in ``automorphisms[i]``; in the
    structured form every G_e of a component is its base group.
    """

    automorphisms: dict[int, list[tuple[int, ...]]]
    phi: dict[tuple[int, int], tuple[int, ...]]

    def maps(self, g: Groupoid) -> Iterator[tuple[str, str, tuple[int, ...]]]:
        """Yield (e, e', f) for every f: G_e -> G_e' (on base-group indices)."""
        for (i, j), phi in sorted(self.phi.items()):
            for e in g.components[i].identities:
                for e2 in g.components[j].identities:
                    for a in self.automorphisms[i]:
                        yield e, e2, tuple(phi[a[x]] for x in range(len(a)))


def iso_family(g: Groupoid) -> IsoFamily:
    auts = {i: automorphisms(c.base_group) for i, c in enumerate(g.components)}
    phi = {}
    for i, ci in enumerate(g.components):
        for j, cj in enumerate(g.components):
            if i == j:
                phi[i, j] = tuple(ci.base_group.elements)
                continue
            ok, f = are_isomorphic(ci.base_group, cj.base_group)
            if ok:
                phi[i, j] = f
    return IsoFamily(auts, phi)


def is_characteristic(g: Groupoid, h: Subgroupoid) -> bool:
    """f(H ∩ G_e) = H ∩ G_e' for every isomorphism f: G_e -> G_e'."""
    _require_wide(h)
    fam = iso_family(g)
    iso = {lab: h.isotropy_at(lab) for lab in g.identity_labels}
    for (i, j), phi in fam.phi.items():
        targets = {iso[e2] for e2 in g.components[j].identities}
        if len(targets) != 1:
            return False
        target = next(iter(targets))
        for e in g.components[i].identities:
            for a in fam.automorphisms[i]:
                if frozenset(phi[a[x]] for x in iso[e]) != target:
                    return False
    return True


def groupoid_center(g: Groupoid) -> Subgroupoid:
    """Z(G): isotropy elements commuting with their whole isotropy group."""
    elems = []
    for ci, comp in enumerate(g.components):
        z = center(comp.base_group)
        for lab in comp.identities:
            elems += [GroupoidElement(ci, lab, lab, x) for x in z.elements]
    return Subgroupoid(g, elems)


def as_groupoid(h: Subgroupoid) -> tuple[Groupoid, dict]:
    """H as a groupoid in its own right, plus the embedding into the parent."""
    g = h.parent
    els = sorted(h.elements)
    by_dst: dict[str, list] = {}
    for y in els:
        by_dst.setdefault(y.dst, []).append(y)
    product = {}
    for x in els:
        for y in by_dst.get(x.src, ()):
            if y.component == x.component:
                product[(x.id, y.id)] = g.compose(x, y).id
    sub, witness = structure(RawGroupoid(tuple(x.id for x in els), product))
    embed = {v: g.element(k) for k, v in witness.items()}
    return sub, embed


def transitivity_check(g: Groupoid, h: Subgroupoid, kk: Subgroupoid) -> bool:
    """K char H normal G implies K normal G; raises when the hypotheses fail."""
    if not kk.elements <= h.elements:
        raise HypothesisNotMet("K is not contained in H")
    if not is_normal(g, h):
        raise HypothesisNotMet("H is not normal in G")
    sub, embed = as_groupoid(h)
    back = {v: k for k, v in embed.items()}
    kk_in_h = Subgroupoid(sub, [back[x] for x in kk.elements])
    if not kk_in_h.is_wide or not is_characteristic(sub, kk_in_h):
        raise HypothesisNotMet("K is not characteristic in H")
    return is_normal(g, kk)


def isotropic_conjugate(h: Subgroupoid, x) -> Subgroupoid:
    """A_k x (x H_d(x) x^-1) for a wide connected H in a connected parent."""
    g = h.parent
    if not g.is_connected or not h.is_wide or not h.is_connected:
        raise NotWideConnected("isotropic conjugation needs a wide connected subgroupoid of a connected groupoid")
    x = g.element(x)
    conj = {g.compose(x, g.compose(y, g.inverse(x))).g
            for y in h.by_src.get(x.src, ()) if y.dst == x.src}
    return product_subgroupoid(g, g.identity_labels, conj)


# ---------------------------------------------------------------------------
# (d,p) and (D,P) subgroupoids


def _require_connected(g: Groupoid) -> None:
    if not g.is_connected:
        raise NotConnected("Sylow theory is stated for connected groupoids; apply per component", witness=g.t)


def construct_dp_subgroupoid(g: Groupoid, d: int, p: int, n: int) -> Subgroupoid:
    """A_d x K on the first d identities, K the least subgroup of order p^n."""
    _require_connected(g)
    if not 1 <= d <= g.k:
        raise ProfileInfeasible(f"need 1 <= d <= k = {g.k}", witness=d)
    base = g.components[0].base_group
    if not isprime(p) or base.order % p ** n:
        raise NoSuchGroupOrder(f"{p}^{n} does not divide |G_e| = {base.order}", witness=[p, n])
    k = p_subgroups(base, p)[p ** n][0]
    h = product_subgroupoid(g, g.identity_labels[:d], k.elements)
    if d == g.k:
        assert h.is_wide and g.order % h.order == 0
    return h


@dataclass
class DPCount:
    """Result of a (d,p) or (D,P) Sylow enumeration."""

    count: int
    formula: int
    multinomial: int
    N: list[int]
    subgroupoids: list[Subgroupoid] | None
    report: Report
    data: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        """Explicit count equals the closed form (ordered blocks)."""
        return self.subgroupoids is None or len(self.subgroupoids) == self.formula

    def to_json(self, witnesses: int = 0) -> dict:
        out = {"count": self.count, "formula": {"value": self.formula, "multinomial": self.multinomial, "N": self.N},
               "explicit": self.subgroupoids is not None, "agree": self.agree, **self.data,
               "checks": [c.to_json() for c in self.report.checks]}
        if witnesses and self.subgroupoids:
            from .io import subgroupoid_to_json
            out["witnesses"] = [subgroupoid_to_json(h) for h in self.subgroupoids[:witnesses]]
        return out


def _conjugating(g: Groupoid, h: Subgroupoid, kk: Subgroupoid) -> GroupoidElement | None:
    """Some x with d(x) = base of H, r(x) = base of K and x H_e x^-1 = K_f."""
    e, f = h.blocks[0].base, kk.blocks[0].base
    he = [y for y in h.by_src[e] if y.dst == e]
    target = kk.isotropy_at(f)
    for x in g.hom_set(e, f):
        xi = g.inverse(x)
        if {g.compose(x, g.compose(y, xi)).g for y in he} == target:
            return x
    return None


def enumerate_dp_sylow(g: Groupoid, d: int, p: int, verify: bool = True) -> DPCount:
    """Every (d,p)-Sylow subgroupoid, with the count checked against N * C(k, d)."""
    _require_connected(g)
    if not 1 <= d <= g.k:
        raise ProfileInfeasible(f"need 1 <= d <= k = {g.k}", witness=d)
    base = g.components[0].base_group
    sylows = sylow_subgroups_of_group(base, p)
    a, b = p_part(base.order, p)
    found = {}
    for labels in itertools.combinations(g.identity_labels, d):
        for s in sylows:
            h = product_subgroupoid(g, labels, s.elements)
            found.setdefault(h.elements, h)
    subs = sorted(found.values(), key=lambda h: h.ids())
    N = len(sylows)
    binom = math.comb(g.k, d)
    rep = Report(f"({d},{p})-sylow")
    rep.add("count = N * C(k,d)", len(subs), N * binom)
    rep.add("N = 1 mod p", N % p, 1 % p)
    rep.add("N divides b", N, b, b % N == 0)
    if verify:
        first = subs[0]
        linked = all(_conjugating(g, first, other) is not None for other in subs)
        rep.add("all isotropically conjugate", linked, True)
        s0 = sylows[0]
        rep.add("n_{k,p} = (G_e : N(S_e))", N, base.order // normalizer(base, s0).order)
        labels = g.identity_labels[:d]
        syl_sets = [product_subgroupoid(g, labels, s.elements).elements for s in sylows]
        contained = all(any(product_subgroupoid(g, labels, q.elements).elements <= ss for ss in syl_sets)
                        for qs in p_subgroups(base, p).values() for q in qs)
        rep.add("every (d,p)-subgroupoid lies in a Sylow one", contained, True)
    order = d * d * p ** a
    return DPCount(len(subs), N * binom, binom, [N], subs, rep, {"d": d, "p": p, "order": order})


@dataclass(frozen=True)
class SylowProfile:
    D: tuple[int, ...]
    P: tuple[int, ...]
    exps: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "D", tuple(int(x) for x in self.D))
        object.__setattr__(self, "P", tuple(int(x) for x in self.P))
        if self.exps is not None:
            object.__setattr__(self, "exps", tuple(int(x) for x in self.exps))

    def check(self, g: Groupoid) -> tuple[int, ...]:
        """Validate against a connected groupoid; returns the exponents used."""
        if len(self.D) != len(self.P) or (self.exps is not None and len(self.exps) != len(self.D)):
            raise ProfileInfeasible("D, P and exps must have the same length")
        if not self.D:
            raise ProfileInfeasible("empty profile")
        if any(d < 1 for d in self.D) or sum(self.D) > g.k:
            raise ProfileInfeasible(f"need every d >= 1 and sum(D) <= k = {g.k}", witness=list(self.D))
        m = g.components[0].m
        exps = []
        for i, p in enumerate(self.P):
            if not isprime(p):
                raise ProfileInfeasible(f"{p} is not prime", witness=p)
            full = p_part(m, p)[0]
            n = full if self.exps is None else self.exps[i]
            if not 0 <= n <= full:
                raise ProfileInfeasible(f"{p}^{n} does not divide |G_e| = {m}", witness=[p, n])
            exps.append(n)
        return tuple(exps)

    def to_json(self) -> dict:
        out = {"D": list(self.D), "P": list(self.P)}
        if self.exps is not None:
            out["exps"] = list(self.exps)
        return out


def multinomial(k: int, parts: Sequence[int]) -> int:
    rest = k - sum(parts)
    return math.factorial(k) // (math.prod(math.factorial(x) for x in parts) * math.factorial(rest))


def first_sylow_construct(g: Groupoid, profile: SylowProfile) -> Subgroupoid:
    """Disjoint (d_i, p_i)-subgroupoids on consecutive identity blocks."""
    _require_connected(g)
    exps = profile.check(g)
    base = g.components[0].base_group
    labels = g.identity_labels
    blocks, pos = [], 0
    for d, p, n in zip(profile.D, profile.P, exps):
        k = p_subgroups(base, p)[p ** n][0]
        blocks.append((labels[pos:pos + d], k.elements))
        pos += d
    h = subgroupoid_from_blocks(g, blocks)
    h = validate_subgroupoid(g, h.elements)
    assert h.order == sum(d * d * p ** n for d, p, n in zip(profile.D, profile.P, exps))
    assert len(h.identities) == sum(profile.D)
    return h


def _ordered_blocks(labels: Sequence[str], sizes: Sequence[int]) -> Iterator[tuple[tuple[str, ...], ...]]:
    """Ordered tuples of pairwise disjoint subsets with the given sizes."""
    if not sizes:
        yield ()
        return
    for first in itertools.combinations(labels, sizes[0]):
        rest = [x for x in labels if x not in first]
        for tail in _ordered_blocks(rest, sizes[1:]):
            yield (first,) + tail


def blockwise_normal(h: Subgroupoid) -> bool:
    """Every block's isotropy is normal in the base group (each block normal
    in the full subgroupoid on its own identities)."""
    g = h.parent
    for b in h.blocks:
        base = g.components[b.component].base_group
        if normalizer(base, Subgroup(base, b.isotropy)).order != base.order:
            return False
    return True


def blockwise_characteristic(h: Subgroupoid) -> bool:
    g = h.parent
    for b in h.blocks:
        base = g.components[b.component].base_group
        s = frozenset(b.isotropy)
        if any(frozenset(a[x] for x in s) != s for a in automorphisms(base)):
            return False
    return True


def enumerate_DP_sylow(g: Groupoid, D: Sequence[int], P: Sequence[int], explicit: bool | None = None,
                       cap: int = EXPLICIT_CAP) -> DPCount:
    """Count (D,P)-Sylow subgroupoids: multinomial(k; D) * prod N_i.

    With ``explicit`` (default: whenever under ``cap``) every subgroupoid is
    built and deduplicated, and the closed form is compared with that count.
    """
    _require_connected(g)
    prof = SylowProfile(D, P)
    exps = prof.check(g)
    base = g.components[0].base_group
    sylows = [sylow_subgroups_of_group(base, p) for p in prof.P]
    N = [len(s) for s in sylows]
    mult = multinomial(g.k, prof.D)
    formula = mult * math.prod(N)
    order = sum(d * d * p ** n for d, p, n in zip(prof.D, prof.P, exps))
    # blocks sharing (d, p) are interchangeable, so ordered assignments repeat
    sym = math.prod(math.factorial(c) for c in Counter(zip(prof.D, prof.P, exps)).values())
    distinct = formula // sym
    if explicit is None:
        explicit = formula * order <= cap
    rep = Report("(D,P)-sylow")
    for p, n_i, (a, b) in zip(prof.P, N, (p_part(base.order, p) for p in prof.P)):
        rep.add(f"N_{p} = 1 mod {p}", n_i % p, 1 % p)
        rep.add(f"N_{p} divides {b}", n_i, b, b % n_i == 0)
    subs = None
    count = distinct
    if explicit:
        found = {}
        for blocks in _ordered_blocks(g.identity_labels, prof.D):
            for choice in itertools.product(*sylows):
                h = subgroupoid_from_blocks(g, [(labs, s.elements) for labs, s in zip(blocks, choice)])
                found.setdefault(h.elements, h)
        subs = sorted(found.values(), key=lambda h: h.ids())
        count = len(subs)
        rep.add("explicit count = formula / block symmetry", count, distinct)
    data = {"D": list(prof.D), "P": list(prof.P), "order": order, "distinct": distinct, "symmetry": sym}
    if sum(prof.D) == g.k:
        witness = subs[0] if subs else first_sylow_construct(g, prof)
        normal = blockwise_normal(witness)
        data["blockwise_normal"] = normal
        rep.add("blockwise normal iff n_{D,P} = multinomial", normal, formula == mult)
        if normal:
            rep.add("blockwise characteristic when normal", blockwise_characteristic(witness), True)
        data["normal"] = is_normal(g, witness)
    return DPCount(count, formula, mult, N, subs, rep, data)


@dataclass
class CCPermutations:
    family: list[Subgroupoid]
    multinomial: int

    @property
    def count(self) -> int:
        return len(self.family)

    @property
    def agree(self) -> bool:
        return self.count == self.multinomial


def cc_permutations(h: Subgroupoid) -> CCPermutations:
    """Copies of a wide H with the same block isotropy subgroups on permuted identity blocks.

    The family includes H itself.  When two blocks share identity count and
    isotropy subgroup the closed form over-counts; the family is what is
    actually distinct.
    """
    g = h.parent
    _require_connected(g)
    _require_wide(h)
    sizes = [b.d for b in h.blocks]
    isos = [b.isotropy for b in h.blocks]
    found = {}
    for blocks in _ordered_blocks(g.identity_labels, sizes):
        kk = subgroupoid_from_blocks(g, list(zip(blocks, isos)))
        found.setdefault(kk.elements, kk)
    fam = sorted(found.values(), key=lambda s: s.ids())
    return CCPermutations(fam, multinomial(g.k, sizes))


def sylow_orbit(h: Subgroupoid) -> set[frozenset]:
    """Closure of {H} under block-wise isotropic conjugation and block permutations."""
    g = h.parent
    base = g.components[0].base_group
    start = h
    seen = {start.elements: start}
    todo = [start]
    while todo:
        cur = todo.pop()
        nxt = list(cc_permutations(cur).family)
        for i, b in enumerate(cur.blocks):
            for y in base.elements:
                conj = conjugate(base, b.isotropy, y).elements
                blocks = [(bb.identities, conj if j == i else bb.isotropy) for j, bb in enumerate(cur.blocks)]
                nxt.append(subgroupoid_from_blocks(g, blocks))
        for s in nxt:
            if s.elements not in seen:
                seen[s.elements] = s
                todo.append(s)
    return set(seen)


def check_subgroup_of_base(g: Groupoid, elements) -> Subgroup:
    return check_subgroup(g.components[0].base_group, elements)
