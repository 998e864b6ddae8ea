"""Subgroupoids, cosets, the index and the Lagrange identities.

Every closed formula here has a brute-force counterpart so the two can be
compared on arbitrary inputs:

==========================  ==========================
formula                     oracle
==========================  ==========================
:func:`coset_cardinality`   size of :func:`coset`
:func:`index_formula`       :func:`index_bruteforce`
:func:`count_subgroupoids`  :func:`subgroupoids_by_closure`
==========================  ==========================
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, Sequence

from .errors import (
    CapExceeded,
    Empty,
    MissingIdentityOf,
    MissingInverse,
    NotClosed,
    NotWide,
    OracleMismatch,
    UnknownIdentity,
)
from .groupoid import Groupoid, GroupoidElement
from .groups import Subgroup, check_subgroup, subgroups

#: enumerate_subgroupoids refuses parents larger than this
ENUMERATION_CAP = 64
#: index_bruteforce refuses parents larger than this
INDEX_CAP = 20_000


@dataclass(frozen=True)
class Block:
    """One connected component of a subgroupoid.

    ``identities`` are listed in the parent's order, so ``identities[0]`` is
    the base identity; ``isotropy`` is the isotropy subgroup there, as
    element indices of the parent component's base group.
    """

    component: int
    identities: tuple[str, ...]
    isotropy: tuple[int, ...]

    @property
    def base(self) -> str:
        return self.identities[0]

    @property
    def d(self) -> int:
        return len(self.identities)

    @property
    def m(self) -> int:
        return len(self.isotropy)

    @property
    def order(self) -> int:
        return self.d * self.d * self.m


class Subgroupoid:
    """A validated subgroupoid together with its component structure."""

    def __init__(self, parent: Groupoid, elements: Iterable[GroupoidElement]):
        self.parent = parent
        self.elements = frozenset(elements)
        self.blocks = _derive_blocks(parent, self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def identities(self) -> frozenset[str]:
        return frozenset(lab for b in self.blocks for lab in b.identities)

    @property
    def is_wide(self) -> bool:
        return len(self.identities) == self.parent.k

    @property
    def is_connected(self) -> bool:
        return len(self.blocks) == 1

    @property
    def n_components(self) -> int:
        return len(self.blocks)

    @cached_property
    def _block_index(self) -> dict[str, Block]:
        return {lab: b for b in self.blocks for lab in b.identities}

    def block_of(self, label: str) -> Block:
        try:
            return self._block_index[label]
        except KeyError:
            raise UnknownIdentity(f"{label!r} is not an identity of the subgroupoid", witness=label) from None

    def isotropy_at(self, label: str) -> frozenset[int]:
        """The isotropy subgroup H_e, as base-group element indices."""
        if label not in self.identities:
            return frozenset()
        return frozenset(x.g for x in self.by_src.get(label, ()) if x.dst == label)

    @cached_property
    def by_src(self) -> dict[str, list[GroupoidElement]]:
        out = defaultdict(list)
        for x in self.elements:
            out[x.src].append(x)
        return dict(out)

    @cached_property
    def by_dst(self) -> dict[str, list[GroupoidElement]]:
        out = defaultdict(list)
        for x in self.elements:
            out[x.dst].append(x)
        return dict(out)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def ids(self) -> list[str]:
        return sorted(x.id for x in self.elements)

    def parts(self) -> list[tuple[int, int]]:
        return [(b.d, b.m) for b in self.blocks]

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroupoid) and other.parent is self.parent and other.elements == self.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        parts = ", ".join(f"{{{','.join(b.identities)}}}x{b.m}" for b in self.blocks)
        return f"Subgroupoid([{parts}], order={self.order})"


def _derive_blocks(parent: Groupoid, elements: frozenset[GroupoidElement]) -> tuple[Block, ...]:
    idents = {x.src for x in elements if parent.is_identity(x)}
    root = {lab: lab for lab in idents}

    def find(a):
        while root[a] != a:
            root[a] = root[root[a]]
            a = root[a]
        return a

    for x in elements:
        if x.src in root and x.dst in root:
            a, b = find(x.src), find(x.dst)
            if a != b:
                root[a] = b
    groups = defaultdict(list)
    for lab in idents:
        groups[find(lab)].append(lab)
    blocks = []
    for labs in groups.values():
        labs.sort(key=lambda s: (parent.component_of(s), parent.position(s)))
        base = labs[0]
        iso = tuple(sorted(x.g for x in elements if x.src == base and x.dst == base))
        blocks.append(Block(parent.component_of(base), tuple(labs), iso))
    blocks.sort(key=lambda b: (b.component, parent.position(b.base)))
    return tuple(blocks)


# ---------------------------------------------------------------------------
# construction and validation


def validate_subgroupoid(g: Groupoid, refs: Iterable) -> Subgroupoid:
    """Check closure, identities and inverses exhaustively."""
    elems = frozenset(g.element(r) for r in refs)
    if not elems:
        raise Empty("a subgroupoid is nonempty")
    by_dst = defaultdict(list)
    for y in elems:
        by_dst[y.dst].append(y)
    for x in sorted(elems):
        for y in sorted(by_dst[x.src]):
            if y.component != x.component:
                continue
            xy = g.compose(x, y)
            if xy not in elems:
                raise NotClosed(f"{x.id} * {y.id} = {xy.id} is missing", witness=[x.id, y.id])
    for x in sorted(elems):
        for e in (g.d(x), g.r(x)):
            if e not in elems:
                raise MissingIdentityOf(f"identity {e.id} of {x.id} is missing", witness=x.id)
        if g.inverse(x) not in elems:
            raise MissingInverse(f"inverse of {x.id} is missing", witness=x.id)
    return Subgroupoid(g, elems)


def _block_elements(g: Groupoid, ci: int, labels: Sequence[str], iso: Sequence[int],
                    reps: Sequence[int] | None = None) -> list[GroupoidElement]:
    """Elements of the connected subgroupoid on ``labels``.

    With base b = labels[0] the hom-set H(b, f) is the coset reps[f]·K; the
    default (all reps trivial) is the product A_d x K.
    """
    base = g.components[ci].base_group
    c, inv = base.cayley, base.inverses
    if reps is None:
        reps = [base.identity] * len(labels)
    out = []
    for s, xs in zip(labels, reps):
        xs_inv = inv[xs]
        for t, xt in zip(labels, reps):
            for kk in iso:
                out.append(GroupoidElement(ci, s, t, c[c[xt][kk]][xs_inv]))
    return out


def subgroupoid_from_blocks(g: Groupoid, blocks: Iterable[tuple[Sequence[str], Iterable[int]]]) -> Subgroupoid:
    """Disjoint union of products A_d x K, one per (identity labels, K)."""
    elems: list[GroupoidElement] = []
    used: set[str] = set()
    for labels, iso in blocks:
        labels = list(labels)
        if not labels:
            raise Empty("block without identities")
        ci = g.component_of(labels[0])
        for lab in labels:
            if g.component_of(lab) != ci:
                raise NotClosed("block spans two components", witness=labels)
            if lab in used:
                raise NotClosed(f"identity {lab!r} in two blocks", witness=lab)
            used.add(lab)
        k = check_subgroup(g.components[ci].base_group, iso)
        elems += _block_elements(g, ci, labels, k.elements)
    if not elems:
        raise Empty("a subgroupoid is nonempty")
    return Subgroupoid(g, elems)


def product_subgroupoid(g: Groupoid, labels: Sequence[str], iso: Iterable[int]) -> Subgroupoid:
    """A_d x K on the given identities."""
    return subgroupoid_from_blocks(g, [(labels, iso)])


def whole(g: Groupoid) -> Subgroupoid:
    return Subgroupoid(g, g.element_list)


def identities_only(g: Groupoid) -> Subgroupoid:
    """The wide subgroupoid G_0."""
    return Subgroupoid(g, g.identities())


def closure(g: Groupoid, elements: Iterable[GroupoidElement]) -> frozenset[GroupoidElement]:
    """Smallest subgroupoid containing ``elements``."""
    todo = list(elements)
    seen: set[GroupoidElement] = set()
    by_src, by_dst = defaultdict(set), defaultdict(set)
    while todo:
        x = todo.pop()
        if x in seen:
            continue
        seen.add(x)
        by_src[x.src].add(x)
        by_dst[x.dst].add(x)
        new = [g.inverse(x), g.d(x), g.r(x)]
        new += [g.compose(x, y) for y in by_dst[x.src] if y.component == x.component]
        new += [g.compose(y, x) for y in by_src[x.dst] if y.component == x.component]
        todo += [z for z in new if z not in seen]
    return frozenset(seen)


# ---------------------------------------------------------------------------
# enumeration


def _left_transversal(base, k: Subgroup) -> list[int]:
    """Least representative of each left coset xK, identity coset first."""
    c = base.cayley
    seen: set[int] = set()
    reps = []
    for x in [base.identity] + [y for y in base.elements if y != base.identity]:
        if x in seen:
            continue
        reps.append(x)
        seen.update(c[x][kk] for kk in k.elements)
    return reps


def _component_options(g: Groupoid, ci: int, wide: bool, subgroup_cap: int) -> Iterator[list[GroupoidElement]]:
    """Every (possibly empty) subgroupoid living inside component ``ci``.

    Identities are visited in order; each one is skipped, opens a new block
    with a chosen isotropy subgroup, or joins an open block through a chosen
    coset representative.
    """
    comp = g.components[ci]
    base = comp.base_group
    subs = subgroups(base, cap=subgroup_cap)
    trans = {s.elements: _left_transversal(base, s) for s in subs}
    labels = comp.identities

    def rec(i: int, open_blocks: tuple):
        if i == len(labels):
            elems = []
            for labs, iso, reps in open_blocks:
                elems += _block_elements(g, ci, labs, iso, reps)
            yield elems
            return
        lab = labels[i]
        if not wide:
            yield from rec(i + 1, open_blocks)
        for s in subs:
            yield from rec(i + 1, open_blocks + (((lab,), s.elements, (base.identity,)),))
        for j, (labs, iso, reps) in enumerate(open_blocks):
            for x in trans[iso]:
                nb = (labs + (lab,), iso, reps + (x,))
                yield from rec(i + 1, open_blocks[:j] + (nb,) + open_blocks[j + 1:])

    yield from rec(0, ())


def iter_subgroupoids(g: Groupoid, wide_only: bool = False, cap: int = ENUMERATION_CAP,
                      max_count: int | None = None, subgroup_cap: int = 512) -> Iterator[Subgroupoid]:
    """Lazily yield every subgroupoid (no particular order)."""
    if g.order > cap:
        raise CapExceeded(f"groupoid order {g.order} exceeds enumeration cap {cap}", witness=g.order)
    if max_count is not None:
        n = count_subgroupoids(g, wide_only)
        if n > max_count:
            raise CapExceeded(f"{n} subgroupoids exceed the count cap {max_count}", witness=n)

    def rec(ci: int, acc: list):
        if ci == g.t:
            if acc:
                yield Subgroupoid(g, acc)
            return
        for opt in _component_options(g, ci, wide_only, subgroup_cap):
            yield from rec(ci + 1, acc + opt)

    yield from rec(0, [])


def enumerate_subgroupoids(g: Groupoid, wide_only: bool = False, cap: int = ENUMERATION_CAP,
                           max_count: int | None = None) -> list[Subgroupoid]:
    """All subgroupoids, sorted by (order, element ids)."""
    out = list(iter_subgroupoids(g, wide_only, cap, max_count))
    out.sort(key=lambda h: (h.order, h.ids()))
    return out


def count_subgroupoids(g: Groupoid, wide_only: bool = False, subgroup_cap: int = 512) -> int:
    """Closed-form count.

    A block of size b with isotropy K at its base can be attached in
    (G:K)^(b-1) ways; blocks partition the chosen identities.
    """
    total = 1
    for comp in g.components:
        base = comp.base_group
        idx = [base.order // s.order for s in subgroups(base, cap=subgroup_cap)]
        d = comp.d

        def w(b):
            return sum(i ** (b - 1) for i in idx)

        # weighted Bell numbers: set partitions with block weight w(size)
        bell = [1] + [0] * d
        for n in range(1, d + 1):
            bell[n] = sum(math.comb(n - 1, b - 1) * w(b) * bell[n - b] for b in range(1, n + 1))
        if wide_only:
            total *= bell[d]
        else:
            total *= sum(math.comb(d, j) * bell[j] for j in range(d + 1))
    return total if wide_only else total - 1


def subgroupoids_by_closure(g: Groupoid, wide_only: bool = False) -> set[frozenset[GroupoidElement]]:
    """Naive oracle: close every single element, then join until stable."""
    seeds = {closure(g, [x]) for x in g.element_list}
    found = set(seeds)
    frontier = set(seeds)
    while frontier:
        new = set()
        for a in frontier:
            for s in seeds:
                if s <= a:
                    continue
                j = closure(g, a | s)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    if wide_only:
        ids = set(g.identities())
        found = {h for h in found if ids <= h}
    return found


# ---------------------------------------------------------------------------
# cosets


@dataclass(frozen=True)
class Coset:
    side: str
    representative: GroupoidElement
    members: frozenset[GroupoidElement]

    def __len__(self) -> int:
        return len(self.members)

    @property
    def is_empty(self) -> bool:
        return not self.members


def coset(h: Subgroupoid, x, side: str = "right") -> Coset:
    """Right coset Hx = {hx : d(h) = r(x)} or left coset xH = {xh : r(h) = d(x)}."""
    g = h.parent
    x = g.element(x)
    if side == "right":
        members = frozenset(g.compose(y, x) for y in h.by_src.get(x.dst, ()))
    elif side == "left":
        members = frozenset(g.compose(x, y) for y in h.by_dst.get(x.src, ()))
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return Coset(side, x, members)


def coset_cardinality(h: Subgroupoid, x, check: bool = True) -> int:
    """|Hx| = delta * |H_r(x)|, delta the identity count of the block holding r(x)."""
    x = h.parent.element(x)
    if x.dst not in h.identities:
        value = 0
    else:
        value = h.block_of(x.dst).d * len(h.isotropy_at(x.dst))
    if check:
        actual = len(coset(h, x, "right"))
        if actual != value:
            raise OracleMismatch(f"|H{x.id}| = {actual} but formula gives {value}", witness=x.id)
    return value


def equivalent(h: Subgroupoid, x, y) -> bool:
    """x ≡_H y: y x^-1 exists and lies in H."""
    g = h.parent
    x, y = g.element(x), g.element(y)
    xi = g.inverse(x)
    if not g.composable(y, xi):
        return False
    return g.compose(y, xi) in h.elements


def index_formula(g: Groupoid, h: Subgroupoid) -> int:
    """(G:H) = sum over components G_j meeting H of |(H_j)_0| * sum_i (G_e : K_i)."""
    per_comp = defaultdict(list)
    for b in h.blocks:
        per_comp[b.component].append(b)
    total = 0
    for ci, blocks in per_comp.items():
        m = g.components[ci].m
        total += sum(b.d for b in blocks) * sum(m // b.m for b in blocks)
    return total


def _counted(h: Subgroupoid, x: GroupoidElement) -> bool:
    # both cosets of x nonempty; otherwise the coset of x in H is empty
    return x.src in h.identities and x.dst in h.identities


def index_bruteforce(g: Groupoid, h: Subgroupoid, cap: int = INDEX_CAP) -> int:
    """Count distinct cosets directly.

    Elements whose left or right coset is empty are skipped.  The right and
    left counts are both taken, and Hx -> x^-1 H is checked to be a bijection
    between them.
    """
    if g.order > cap:
        raise CapExceeded(f"groupoid order {g.order} exceeds index cap {cap}", witness=g.order)
    right, left = set(), set()
    for x in g.element_list:
        if _counted(h, x):
            right.add(coset(h, x, "right").members)
            left.add(coset(h, x, "left").members)
    if len(right) != len(left):
        raise OracleMismatch(f"{len(right)} right cosets but {len(left)} left cosets",
                             witness=[len(right), len(left)])
    image = {frozenset(g.inverse(y) for y in c) for c in right}
    if image != left:
        raise OracleMismatch("Hx -> x^-1 H is not a bijection onto the left cosets")
    return len(right)


def nonempty_right_cosets(g: Groupoid, h: Subgroupoid) -> int:
    """Distinct Hx != ∅, with no condition on the left coset."""
    return len({coset(h, x, "right").members for x in g.element_list if x.dst in h.identities})


# ---------------------------------------------------------------------------
# reports


@dataclass
class Check:
    name: str
    lhs: Any
    rhs: Any
    passed: bool | None = None

    def __post_init__(self):
        if self.passed is None:
            self.passed = self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "pass": bool(self.passed)}


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, *args, **kw) -> Check:
        c = Check(*args, **kw)
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        return {"report": self.title, "pass": self.passed, **self.data,
                "checks": [c.to_json() for c in self.checks]}


def lagrange_order_report(g: Groupoid, h: Subgroupoid) -> Report:
    """|H| = sum d_i^2 m_i with sum d_i <= k and m_i | |G_e_i|; divisibility when both connected."""
    rep = Report("lagrange-order")
    rep.data["parts"] = [{"d": b.d, "m": b.m} for b in h.blocks]
    rep.add("order = sum d^2 m", h.order, sum(b.d * b.d * b.m for b in h.blocks))
    sd = sum(b.d for b in h.blocks)
    rep.add("sum d <= k", sd, g.k, sd <= g.k)
    for b in h.blocks:
        mg = g.components[b.component].m
        rep.add(f"m divides |G_{b.base}|", b.m, mg, mg % b.m == 0)
    applicable = g.is_connected and h.is_connected and g.k % len(h.identities) == 0
    rep.data["divides_applicable"] = applicable
    if applicable:
        rep.add("|H| divides |G|", h.order, g.order, g.order % h.order == 0)
        rep.data["divides"] = g.order % h.order == 0
    return rep


def lagrange_wide_identity(g: Groupoid, h: Subgroupoid) -> Report:
    """|G| = sum_j |(G_j)_0| sum_i (G_e_j : K_i) |(K_i)_0| |K_i| for wide H.

    Adds the uniform-component corollary |G| = (G:H) |(K_i)_0| |K_i| when all
    components of H share identity count and isotropy order.
    """
    if not h.is_wide:
        raise NotWide("identity needs a wide subgroupoid", witness=sorted(set(g.identity_labels) - h.identities))
    rep = Report("lagrange-identity")
    per_comp = defaultdict(list)
    for b in h.blocks:
        per_comp[b.component].append(b)
    rhs = 0
    for ci, blocks in per_comp.items():
        comp = g.components[ci]
        rhs += comp.d * sum((comp.m // b.m) * b.d * b.m for b in blocks)
    rep.add("|G| = sum |G_0| (G_e:K) |K_0| |K|", g.order, rhs)
    uniform = len({(b.d, b.m) for b in h.blocks}) == 1
    rep.data["corollary_applicable"] = uniform
    if uniform:
        b = h.blocks[0]
        idx = index_bruteforce(g, h)
        rep.data["index"] = idx
        rep.add("|G| = (G:H) |H_0 block| |H_e|", g.order, idx * b.d * b.m)
    return rep


def lagrange_identity_check(g: Groupoid, h: Subgroupoid) -> Report:
    """Order report plus, for wide H, the full identity and its corollary."""
    rep = lagrange_order_report(g, h)
    rep.title = "lagrange"
    rep.data["wide"] = h.is_wide
    if h.is_wide:
        wide = lagrange_wide_identity(g, h)
        rep.checks += wide.checks
        rep.data.update(wide.data)
    return rep
