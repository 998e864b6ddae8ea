"""Finite groupoids.

A finite groupoid is stored in its structured form: a tuple of connected
components, each a set of identity labels together with a base group, so a
component with d identities and base group G is the product A_d x G of the
coarse groupoid with G.  An element is ``(component, src, dst, g)`` with
``d(x) = src`` and ``r(x) = dst``; a product ``x*y`` means "y then x" and is
defined exactly when ``d(x) == r(y)``.

:class:`RawGroupoid` is the unstructured form (a partial multiplication
table) used for input validation; :func:`structure` turns a raw groupoid into
the structured one together with an explicit isomorphism.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from sympy import factorint

from .errors import (
    AssociativityViolation,
    CompositionDomainError,
    DuplicateLabels,
    EmptyGroupoid,
    GroupoidError,
    MissingIdentity,
    MissingInverse,
    NotComposable,
    NotConnected,
    UnknownElement,
    UnknownIdentity,
)
from .groups import ISO_CAP, FiniteGroup, are_isomorphic, cyclic, make_group_from_table


class GroupoidElement(NamedTuple):
    component: int
    src: str
    dst: str
    g: int

    @property
    def id(self) -> str:
        return f"{self.component}/{self.src}/{self.dst}/{self.g}"


@dataclass(frozen=True)
class ConnectedComponent:
    identities: tuple[str, ...]
    base_group: FiniteGroup

    @property
    def d(self) -> int:
        return len(self.identities)

    @property
    def m(self) -> int:
        return self.base_group.order

    @property
    def order(self) -> int:
        return self.d * self.d * self.m


def _check_label(label) -> str:
    label = str(label)
    if not label or "/" in label or "," in label:
        raise ValueError(f"identity label {label!r} must be nonempty and free of '/' and ','")
    return label


class Groupoid:
    """Disjoint union of connected components ``A_d x G``."""

    def __init__(self, components: Iterable[ConnectedComponent]):
        comps = tuple(components)
        if not comps:
            raise EmptyGroupoid("a groupoid is a nonempty set")
        seen: dict[str, int] = {}
        for ci, c in enumerate(comps):
            if not c.identities:
                raise EmptyGroupoid(f"component {ci} has no identities", witness=ci)
            for label in c.identities:
                _check_label(label)
                if label in seen:
                    raise DuplicateLabels(f"identity label {label!r} used twice", witness=label)
                seen[label] = ci
        self.components = comps
        self._where = seen
        self._pos = {lab: i for c in comps for i, lab in enumerate(c.identities)}

    # -- sizes -------------------------------------------------------------
    @property
    def order(self) -> int:
        return sum(c.order for c in self.components)

    @property
    def k(self) -> int:
        """Number of identities."""
        return len(self._where)

    @property
    def t(self) -> int:
        """Number of connected components."""
        return len(self.components)

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    @property
    def identity_labels(self) -> tuple[str, ...]:
        return tuple(lab for c in self.components for lab in c.identities)

    def component_of(self, label: str) -> int:
        try:
            return self._where[label]
        except KeyError:
            raise UnknownIdentity(f"{label!r} is not an identity", witness=label) from None

    def position(self, label: str) -> int:
        """Index of ``label`` inside its component's identity tuple."""
        self.component_of(label)
        return self._pos[label]

    # -- elements ----------------------------------------------------------
    def elements(self) -> Iterator[GroupoidElement]:
        for ci, c in enumerate(self.components):
            for s in c.identities:
                for t in c.identities:
                    for g in c.base_group.elements:
                        yield GroupoidElement(ci, s, t, g)

    @cached_property
    def element_list(self) -> tuple[GroupoidElement, ...]:
        return tuple(self.elements())

    def identity(self, label: str) -> GroupoidElement:
        ci = self.component_of(label)
        return GroupoidElement(ci, label, label, self.components[ci].base_group.identity)

    def identities(self) -> list[GroupoidElement]:
        return [self.identity(lab) for lab in self.identity_labels]

    def __contains__(self, x) -> bool:
        if not isinstance(x, tuple) or len(x) != 4:
            return False
        ci, s, t, g = x
        if not isinstance(ci, int) or not 0 <= ci < len(self.components):
            return False
        c = self.components[ci]
        return s in c.identities and t in c.identities and isinstance(g, int) and 0 <= g < c.m

    def element(self, ref) -> GroupoidElement:
        """Accept a GroupoidElement, a 4-tuple, or an id string ``comp/src/dst/g``."""
        if isinstance(ref, str):
            parts = ref.split("/")
            if len(parts) != 4:
                raise UnknownElement(f"malformed element id {ref!r}", witness=ref)
            try:
                x = GroupoidElement(int(parts[0]), parts[1], parts[2], int(parts[3]))
            except ValueError:
                raise UnknownElement(f"malformed element id {ref!r}", witness=ref) from None
        else:
            x = GroupoidElement(*ref)
        if x not in self:
            raise UnknownElement(f"{x.id} is not an element", witness=x.id)
        return x

    def d(self, x: GroupoidElement) -> GroupoidElement:
        return GroupoidElement(x.component, x.src, x.src, self.components[x.component].base_group.identity)

    def r(self, x: GroupoidElement) -> GroupoidElement:
        return GroupoidElement(x.component, x.dst, x.dst, self.components[x.component].base_group.identity)

    def inverse(self, x: GroupoidElement) -> GroupoidElement:
        return GroupoidElement(x.component, x.dst, x.src, self.components[x.component].base_group.inverses[x.g])

    def composable(self, a: GroupoidElement, b: GroupoidElement) -> bool:
        return a.component == b.component and a.src == b.dst

    def compose(self, a: GroupoidElement, b: GroupoidElement) -> GroupoidElement:
        """``a*b`` (b first, then a); raises NotComposable when undefined."""
        if a.component != b.component or a.src != b.dst:
            raise NotComposable(f"{a.id} * {b.id} is undefined", witness=[a.id, b.id])
        g = self.components[a.component].base_group
        return GroupoidElement(a.component, b.src, a.dst, g.cayley[a.g][b.g])

    def is_identity(self, x: GroupoidElement) -> bool:
        return x.src == x.dst and x.g == self.components[x.component].base_group.identity

    # -- named subsets -----------------------------------------------------
    def hom_set(self, e1: str, e2: str) -> list[GroupoidElement]:
        """All x with d(x) = e1 and r(x) = e2."""
        c1, c2 = self.component_of(e1), self.component_of(e2)
        if c1 != c2:
            return []
        return [GroupoidElement(c1, e1, e2, g) for g in self.components[c1].base_group.elements]

    def isotropy_group(self, e: str) -> list[GroupoidElement]:
        return self.hom_set(e, e)

    def isotropy_subgroupoid(self) -> list[GroupoidElement]:
        return [x for lab in self.identity_labels for x in self.isotropy_group(lab)]

    # -- conversions -------------------------------------------------------
    def profile(self) -> list[tuple[int, int]]:
        """Sorted (d, m) pairs of the components."""
        return sorted((c.d, c.m) for c in self.components)

    def to_raw(self) -> "RawGroupoid":
        elems = self.element_list
        product = {}
        by_dst = defaultdict(list)
        for b in elems:
            by_dst[(b.component, b.dst)].append(b)
        for a in elems:
            for b in by_dst[(a.component, a.src)]:
                product[(a.id, b.id)] = self.compose(a, b).id
        return RawGroupoid(tuple(x.id for x in elems), product)

    def __eq__(self, other) -> bool:
        return isinstance(other, Groupoid) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        parts = " ⊔ ".join(
            (f"A{c.d} x {c.base_group.name or c.m}" if c.d > 1 else f"{c.base_group.name or c.m}")
            for c in self.components)
        return f"Groupoid({parts}, order={self.order})"


# ---------------------------------------------------------------------------
# constructors


def make_connected(identities: Sequence, base: FiniteGroup) -> Groupoid:
    """The connected groupoid A_d x base on the given identity labels."""
    labels = tuple(_check_label(x) for x in identities)
    if not labels:
        raise EmptyGroupoid("need at least one identity")
    if len(set(labels)) != len(labels):
        dup = next(x for x in labels if labels.count(x) > 1)
        raise DuplicateLabels(f"duplicate identity label {dup!r}", witness=dup)
    return Groupoid([ConnectedComponent(labels, base)])


def make_groupoid(parts: Iterable[tuple[Sequence, FiniteGroup]]) -> Groupoid:
    return Groupoid(ConnectedComponent(tuple(_check_label(x) for x in ids), g) for ids, g in parts)


def coarse(n: int, prefix: str = "e") -> Groupoid:
    """A_n with identities e1..en."""
    return make_connected([f"{prefix}{i}" for i in range(1, n + 1)], cyclic(1))


def from_group(g: FiniteGroup, label: str = "e") -> Groupoid:
    return make_connected([label], g)


def disjoint_union(*groupoids: Groupoid) -> Groupoid:
    return Groupoid(c for gd in groupoids for c in gd.components)


def are_isomorphic_groupoids(g1: Groupoid, g2: Groupoid, cap: int = ISO_CAP) -> bool:
    """Components must match one-to-one by identity count and base-group class."""
    if g1.profile() != g2.profile():
        return False
    remaining = list(g2.components)
    for c in sorted(g1.components, key=lambda c: (c.d, c.m)):
        for i, other in enumerate(remaining):
            if other.d == c.d and other.m == c.m and are_isomorphic(c.base_group, other.base_group, cap)[0]:
                del remaining[i]
                break
        else:
            return False
    return True


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


def corollary_squarefree_check(g: Groupoid) -> bool:
    """A connected groupoid of squarefree order has exactly one identity."""
    if not g.is_connected:
        raise NotConnected("groupoid has several components", witness=g.t)
    return not is_squarefree(g.order) or g.k == 1


# ---------------------------------------------------------------------------
# raw groupoids


@dataclass(frozen=True)
class RawGroupoid:
    """A set with a partial product; absent pairs are undefined."""

    elements: tuple[Hashable, ...]
    product: Mapping[tuple[Hashable, Hashable], Hashable] = field(default_factory=dict)

    @classmethod
    def from_group(cls, g: FiniteGroup) -> "RawGroupoid":
        els = tuple(str(a) for a in g.elements)
        return cls(els, {(str(a), str(b)): str(g.cayley[a][b]) for a in g.elements for b in g.elements})

    @classmethod
    def from_json(cls, obj: dict) -> "RawGroupoid":
        product = {}
        for key, val in obj["product"].items():
            a, b = key.split(",")
            product[(a.strip(), b.strip())] = val
        return cls(tuple(obj["elements"]), product)

    def to_json(self) -> dict:
        return {"elements": list(self.elements),
                "product": {f"{a},{b}": v for (a, b), v in sorted(self.product.items(), key=repr)}}


@dataclass(frozen=True)
class CheckedRaw:
    raw: RawGroupoid
    identities: tuple
    d: dict
    r: dict
    inverse: dict


def check_raw(raw: RawGroupoid) -> list:
    """Every groupoid-axiom violation found by an exhaustive scan."""
    found: list = []
    try:
        validate_raw(raw, found)
    except GroupoidError as exc:
        if exc not in found:
            found.append(exc)
    return found


def validate_raw(raw: RawGroupoid, _collect: list | None = None) -> CheckedRaw:
    """Check the groupoid axioms; returns the d, r and inverse maps."""
    els = list(raw.elements)
    if not els:
        raise EmptyGroupoid("a groupoid is a nonempty set")
    elset = set(els)
    if len(elset) != len(els):
        raise DuplicateLabels("repeated element label", witness=next(x for x in els if els.count(x) > 1))
    prod = raw.product
    for (a, b), c in prod.items():
        if a not in elset or b not in elset or c not in elset:
            raise UnknownElement(f"product entry ({a!r},{b!r}) -> {c!r} mentions a non-element",
                                 witness=[a, b, c])

    def fail(exc):
        if _collect is None:
            raise exc
        _collect.append(exc)

    idents = [e for e in els if prod.get((e, e)) == e]
    d, r = {}, {}
    for x in els:
        right = [e for e in idents if prod.get((x, e)) == x]
        left = [e for e in idents if prod.get((e, x)) == x]
        if not right:
            fail(MissingIdentity(f"{x!r} has no right identity", witness={"element": x, "side": "right"}))
        if not left:
            fail(MissingIdentity(f"{x!r} has no left identity", witness={"element": x, "side": "left"}))
        if right:
            d[x] = right[0]
        if left:
            r[x] = left[0]
    if len(d) < len(els) or len(r) < len(els):
        raise (_collect or [MissingIdentity("missing identity")])[0]
    for x in els:
        for y in els:
            defined = (x, y) in prod
            if defined != (d[x] == r[y]):
                fail(CompositionDomainError(
                    f"{x!r}*{y!r} is {'defined' if defined else 'undefined'} but d(x)"
                    f"{'!=' if defined else '=='}r(y)", witness=[x, y]))
    inv = {}
    for x in els:
        cands = [y for y in els if prod.get((y, x)) == d[x] and prod.get((x, y)) == r[x]]
        if not cands:
            fail(MissingInverse(f"{x!r} has no inverse", witness=x))
        else:
            inv[x] = cands[0]
    by_dst = defaultdict(list)
    for y in els:
        by_dst[r[y]].append(y)
    for x in els:
        for y in by_dst[d[x]]:
            xy = prod.get((x, y))
            if xy is None:
                continue
            for z in by_dst[d[y]]:
                yz = prod.get((y, z))
                left = prod.get((xy, z))
                right = prod.get((x, yz)) if yz is not None else None
                if left is None or right is None:
                    continue    # already reported as a domain error
                if left != right:
                    fail(AssociativityViolation(f"({x!r}{y!r}){z!r} = {left!r} but {x!r}({y!r}{z!r}) = {right!r}",
                                                witness=[x, y, z]))
                    break
    if _collect:
        raise _collect[0]
    return CheckedRaw(raw, tuple(idents), d, r, inv)


def _safe_label(x) -> str:
    return str(x).replace("/", ":").replace(",", ";")


def structure(raw: RawGroupoid | CheckedRaw) -> tuple[Groupoid, dict]:
    """Decompose a raw groupoid into connected components A_d x G_e.

    Returns the structured groupoid and the isomorphism as a dict from raw
    element labels to :class:`GroupoidElement`.  The base point of each
    component is its least identity (by ``str``); transition elements are
    chosen breadth first.  The map is checked to be multiplicative.
    """
    chk = raw if isinstance(raw, CheckedRaw) else validate_raw(raw)
    prod, d, r, inv = chk.raw.product, chk.d, chk.r, chk.inverse
    els = sorted(chk.raw.elements, key=str)
    out_of = defaultdict(list)   # identity -> elements leaving it
    for x in els:
        out_of[d[x]].append(x)
    # equivalence classes of identities, e1 ~ e2 iff some x runs from one to the other
    seen: set = set()
    comps = []
    for e in sorted(chk.identities, key=str):
        if e in seen:
            continue
        # BFS tree of transitions t_f with d(t_f) = e, r(t_f) = f
        trans = {e: e}
        order = [e]
        queue = deque([e])
        while queue:
            u = queue.popleft()
            for x in out_of[u]:
                v = r[x]
                if v not in trans:
                    trans[v] = prod[(x, trans[u])]
                    order.append(v)
                    queue.append(v)
        seen.update(trans)
        comps.append((e, trans, sorted(order, key=str)))

    components = []
    witness = {}
    for ci, (e, trans, idents) in enumerate(comps):
        iso = [x for x in out_of[e] if r[x] == e]
        iso.sort(key=lambda x: (x != e, str(x)))
        pos = {x: i for i, x in enumerate(iso)}
        rows = [[pos[prod[(a, b)]] for b in iso] for a in iso]
        base = make_group_from_table(rows, labels=[str(x) for x in iso])
        labels = [_safe_label(f) for f in idents]
        components.append(ConnectedComponent(tuple(labels), base))
        ident_set = set(idents)
        for x in els:
            if d[x] not in ident_set:
                continue
            a, b = d[x], r[x]
            # t_b^-1 x t_a lies in G_e
            core = prod[(inv[trans[b]], prod[(x, trans[a])])]
            witness[x] = GroupoidElement(ci, _safe_label(a), _safe_label(b), pos[core])
    g = Groupoid(components)
    for x in els:
        for y in els:
            xy = prod.get((x, y))
            if xy is not None and g.compose(witness[x], witness[y]) != witness[xy]:
                raise AssertionError(f"structure map not multiplicative at {x!r},{y!r}")
    if len(set(witness.values())) != len(els) or len(els) != g.order:
        raise AssertionError("structure map is not a bijection")
    return g, witness
