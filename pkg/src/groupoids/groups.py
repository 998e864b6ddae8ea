"""Finite groups as Cayley tables.

Elements are the dense indices ``0..m-1``.  Every catalog constructor puts the
identity at index 0; tables supplied by the user keep their own labelling and
record where the identity sits.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
from sympy import factorint, isprime

from .errors import (
    BadParams,
    BadTable,
    CapExceeded,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAnAutomorphism,
    NotASubgroup,
    NotAssociative,
    NotPrime,
    UnknownName,
)

#: exhaustive-search caps on the group order
SUBGROUP_CAP = 512
ISO_CAP = 512
#: give up on automorphism enumeration beyond this many maps
AUTOMORPHISM_LIMIT = 200_000


class FiniteGroup:
    """A validated finite group.

    Build instances through :func:`make_group_from_table` or the catalog; the
    constructor itself trusts its arguments.
    """

    def __init__(self, cayley, identity: int, inverses, name: str | None = None,
                 labels: Sequence[str] | None = None, spec: dict | None = None):
        self.cayley: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in cayley)
        self.order = len(self.cayley)
        self.identity = int(identity)
        self.inverses: tuple[int, ...] = tuple(int(x) for x in inverses)
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        # JSON description this group was built from, if any
        self.spec = spec

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, n: int) -> int:
        x = self.identity
        if n < 0:
            a, n = self.inverses[a], -n
        for _ in range(n):
            x = self.cayley[x][a]
        return x

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def table(self) -> np.ndarray:
        return np.array(self.cayley, dtype=np.int64)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        e = self.identity
        for a in self.elements:
            x, k = a, 1
            while x != e:
                x = self.cayley[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return bool((t == t.T).all())

    def label(self, a: int) -> str:
        if self.labels is not None:
            return str(self.labels[a])
        return str(a)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.cayley == other.cayley

    def __hash__(self) -> int:
        return hash(self.cayley)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or 'unnamed'}, order={self.order})"


# ---------------------------------------------------------------------------
# validation


def _as_square_table(table) -> list[list[int]]:
    rows = [list(r) for r in table]
    m = len(rows)
    if m == 0:
        raise BadTable("empty table")
    for i, r in enumerate(rows):
        if len(r) != m:
            raise BadTable(f"row {i} has length {len(r)}, expected {m}", witness=i)
        for j, x in enumerate(r):
            if not isinstance(x, (int, np.integer)) or isinstance(x, bool) or not 0 <= x < m:
                raise BadTable(f"entry ({i},{j}) = {x!r} is not in 0..{m - 1}", witness=[i, j])
    return [[int(x) for x in r] for r in rows]


def _associativity_witness(t: np.ndarray) -> tuple[int, int, int] | None:
    m = len(t)
    step = max(1, 2_000_000 // (m * m))
    for a0 in range(0, m, step):
        a = slice(a0, min(m, a0 + step))
        left = t[t[a]]          # [a, b, c] -> (ab)c
        right = t[a][:, t]      # [a, b, c] -> a(bc)
        bad = np.argwhere(left != right)
        if len(bad):
            x, y, z = bad[0]
            return (int(x) + a0, int(y), int(z))
    return None


def check_group_table(table) -> list:
    """Every violated group axiom, as exception instances carrying witnesses."""
    rows = _as_square_table(table)
    m = len(rows)
    t = np.array(rows, dtype=np.int64)
    problems: list = []
    witness = _associativity_witness(t)
    if witness is not None:
        a, b, c = witness
        problems.append(NotAssociative(
            f"({a}*{b})*{c} = {t[t[a, b], c]} but {a}*({b}*{c}) = {t[a, t[b, c]]}", witness=list(witness)))
    ar = np.arange(m)
    ident = [e for e in range(m) if (t[e] == ar).all() and (t[:, e] == ar).all()]
    if not ident:
        idem = [e for e in range(m) if t[e, e] == e]
        if idem:
            e = idem[0]
            x = next(x for x in range(m) if t[e, x] != x or t[x, e] != x)
            problems.append(NoIdentity(f"candidate {e} fails on {x}", witness={"candidate": e, "element": x}))
        else:
            problems.append(NoIdentity("table has no idempotent", witness=None))
        return problems
    e = ident[0]
    for a in range(m):
        if not any(t[a, b] == e and t[b, a] == e for b in range(m)):
            problems.append(NoInverse(f"element {a} has no two-sided inverse", witness=a))
            break
    return problems


def make_group_from_table(table, name: str | None = None, labels=None, spec: dict | None = None) -> FiniteGroup:
    """Validate a Cayley table and wrap it; raises the first violated axiom."""
    rows = _as_square_table(table)
    problems = check_group_table(rows)
    if problems:
        raise problems[0]
    m = len(rows)
    ar = list(range(m))
    e = next(e for e in range(m) if rows[e] == ar and [r[e] for r in rows] == ar)
    inverses = [rows[a].index(e) for a in range(m)]
    return FiniteGroup(rows, e, inverses, name=name, labels=labels, spec=spec)


def _trusted(rows, name, labels=None, spec=None) -> FiniteGroup:
    """Wrap a table produced by a catalog constructor (identity at 0)."""
    inverses = [list(r).index(0) for r in rows]
    return FiniteGroup(rows, 0, inverses, name=name, labels=labels, spec=spec)


# ---------------------------------------------------------------------------
# catalog


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParams(f"cyclic order must be positive, got {n}", witness=n)
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    return _trusted(rows, f"Z{n}", spec={"kind": "catalog", "name": "cyclic", "params": [n]})


def klein() -> FiniteGroup:
    g = direct_product(cyclic(2), cyclic(2))
    g.name = "K4"
    g.spec = {"kind": "catalog", "name": "klein", "params": []}
    return g


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n: index i is r^i, index n+i is s r^i."""
    if n < 1:
        raise BadParams(f"dihedral degree must be positive, got {n}", witness=n)

    def mul(a, b):
        f1, i1 = divmod(a, n)
        f2, i2 = divmod(b, n)
        i = (i1 if f2 == 0 else -i1) + i2
        return ((f1 + f2) % 2) * n + i % n

    rows = [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)]
    if n == 3:
        labels = ["1", "ρ", "ρ²", "τ₁", "τ₂", "τ₃"]
    else:
        labels = ["1"] + [f"r^{i}" for i in range(1, n)] + ["s"] + [f"s r^{i}" for i in range(1, n)]
    return _trusted(rows, f"D{n}", labels, spec={"kind": "catalog", "name": "dihedral", "params": [n]})


def _permutation_group(perms: list[tuple[int, ...]], name: str, spec: dict) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    rows = [[index[tuple(p[x] for x in q)] for q in perms] for p in perms]
    labels = ["(" + " ".join(str(x + 1) for x in p) + ")" for p in perms]
    return _trusted(rows, name, labels, spec=spec)


def _parity(p: Sequence[int]) -> int:
    seen, parity = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise BadParams(f"symmetric degree must be in 1..6, got {n}", witness=n)
    perms = list(itertools.permutations(range(n)))
    return _permutation_group(perms, f"S{n}", {"kind": "catalog", "name": "symmetric", "params": [n]})


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise BadParams(f"alternating degree must be in 1..6, got {n}", witness=n)
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return _permutation_group(perms, f"A{n}", {"kind": "catalog", "name": "alternating", "params": [n]})


def dicyclic(n: int) -> FiniteGroup:
    """<a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>, order 4n; dicyclic(2) is Q8."""
    if n < 1:
        raise BadParams(f"dicyclic parameter must be positive, got {n}", witness=n)
    two_n = 2 * n

    def mul(u, v):
        j, i = divmod(u, two_n)
        l, k = divmod(v, two_n)
        e = i + (k if j == 0 else -k)
        if j + l == 2:
            e += n
        return ((j + l) % 2) * two_n + e % two_n

    rows = [[mul(u, v) for v in range(4 * n)] for u in range(4 * n)]
    name = "Q8" if n == 2 else f"Dic{n}"
    return _trusted(rows, name, spec={"kind": "catalog", "name": "dicyclic", "params": [n]})


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    if not groups:
        raise BadParams("direct product of no groups")
    out = groups[0]
    for h in groups[1:]:
        out = _direct_product2(out, h)
    if len(groups) > 1:
        out.name = " x ".join(g.name or "?" for g in groups)
    return out


def _direct_product2(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.order
    # (a, b) -> a*m + b ; the identity lands at index 0 when both factors use 0
    rows = [[g.cayley[a1][a2] * m + h.cayley[b1][b2]
             for a2 in range(g.order) for b2 in range(m)]
            for a1 in range(g.order) for b1 in range(m)]
    e = g.identity * m + h.identity
    inverses = [g.inverses[a] * m + h.inverses[b] for a in range(g.order) for b in range(m)]
    return FiniteGroup(rows, e, inverses, name=f"{g.name} x {h.name}")


CATALOG_NAMES = ("cyclic", "klein", "dihedral", "symmetric", "direct_product", "from_table",
                 "alternating", "dicyclic")


def catalog_group(name: str, params: Sequence[int] = ()) -> FiniteGroup:
    """Look a group up by name.

    ``direct_product`` takes a list of cyclic orders; ``from_table`` takes a
    flattened square Cayley table.
    """
    params = list(params)

    def one():
        if len(params) != 1 or not isinstance(params[0], int):
            raise BadParams(f"{name} takes exactly one integer parameter", witness=params)
        return params[0]

    if name == "cyclic":
        return cyclic(one())
    if name == "klein":
        if params:
            raise BadParams("klein takes no parameters", witness=params)
        return klein()
    if name == "dihedral":
        return dihedral(one())
    if name == "symmetric":
        return symmetric(one())
    if name == "alternating":
        return alternating(one())
    if name == "dicyclic":
        return dicyclic(one())
    if name == "direct_product":
        if not params or any(not isinstance(p, int) or p < 1 for p in params):
            raise BadParams("direct_product takes a nonempty list of cyclic orders", witness=params)
        g = direct_product(*[cyclic(p) for p in params])
        g.spec = {"kind": "catalog", "name": "direct_product", "params": params}
        g.name = " x ".join(f"Z{p}" for p in params)
        return g
    if name == "from_table":
        m = math.isqrt(len(params))
        if m == 0 or m * m != len(params):
            raise BadParams("from_table takes a flattened square table", witness=len(params))
        return make_group_from_table([params[i * m:(i + 1) * m] for i in range(m)])
    raise UnknownName(f"unknown catalog group {name!r}", witness=name)


# ---------------------------------------------------------------------------
# semidirect products


def is_automorphism(h: FiniteGroup, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(h.elements):
        return False
    c = h.cayley
    return all(perm[c[a][b]] == c[perm[a]][perm[b]] for a in h.elements for b in h.elements)


def power_automorphism(n: int, a: int) -> tuple[int, ...]:
    """x -> a*x on Z_n (an automorphism when gcd(a, n) = 1)."""
    return tuple((a * x) % n for x in range(n))


def semidirect_product(h: FiniteGroup, k: FiniteGroup, action: Mapping[int, Sequence[int]] | Sequence[Sequence[int]],
                       name: str | None = None) -> FiniteGroup:
    """h ⋊ k with (h1,k1)(h2,k2) = (h1 * action(k1)(h2), k1 k2).

    ``action`` maps elements of ``k`` (a generating set suffices) to
    automorphisms of ``h`` given as image lists.  It is extended to all of
    ``k`` and checked to be a homomorphism.
    """
    if not isinstance(action, Mapping):
        action = dict(enumerate(action))
    given = {int(s): tuple(int(x) for x in perm) for s, perm in action.items()}
    for s, perm in given.items():
        if not 0 <= s < k.order:
            raise BadParams(f"{s} is not an element of k", witness=s)
        if len(perm) != h.order or not is_automorphism(h, perm):
            raise NotAnAutomorphism(f"image of k-element {s} is not an automorphism of h", witness=s)
    ident = tuple(h.elements)
    if k.identity in given and given[k.identity] != ident:
        raise NotAHomomorphism("identity of k must act trivially", witness=k.identity)
    phi: dict[int, tuple[int, ...]] = {k.identity: ident}
    gens = sorted(given)
    queue = deque([k.identity])
    while queue:
        u = queue.popleft()
        for s in gens:
            v = k.cayley[u][s]
            img = tuple(phi[u][given[s][x]] for x in h.elements)
            if v in phi:
                if phi[v] != img:
                    raise NotAHomomorphism(f"action disagrees at k-element {v}", witness=[u, s])
            else:
                phi[v] = img
                queue.append(v)
    if len(phi) != k.order:
        raise BadParams("acting elements do not generate k", witness=gens)
    mh = h.order
    rows = [[h.cayley[h1][phi[k1][h2]] + mh * k.cayley[k1][k2]
             for k2 in k.elements for h2 in h.elements]
            for k1 in k.elements for h1 in h.elements]
    e = h.identity + mh * k.identity
    g = make_group_from_table(rows, name=name or f"{h.name} ⋊ {k.name}")
    assert g.identity == e
    return g


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]
    gens: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elementset

    @cached_property
    def elementset(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.elements == other.elements and self.parent is other.parent

    def __hash__(self) -> int:
        return hash(self.elements)

    def __lt__(self, other: "Subgroup") -> bool:
        return (self.order, self.elements) < (other.order, other.elements)

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """The subgroup as a standalone group plus its embedding (new index -> parent index)."""
        g = self.parent
        embed = (g.identity,) + tuple(x for x in self.elements if x != g.identity)
        pos = {x: i for i, x in enumerate(embed)}
        rows = [[pos[g.cayley[a][b]] for b in embed] for a in embed]
        return _trusted(rows, None), embed

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"


def generate(g: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    """The subgroup generated by ``gens``, as an element set."""
    gens = list(dict.fromkeys(gens))
    seen = {g.identity}
    queue = deque([g.identity])
    c = g.cayley
    while queue:
        u = queue.popleft()
        for s in gens:
            v = c[u][s]
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return frozenset(seen)


def subgroup(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = tuple(gens)
    return Subgroup(g, tuple(generate(g, gens)), gens)


def check_subgroup(g: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Validate an element set as a subgroup of ``g``."""
    s = frozenset(int(x) for x in elements)
    if not s or any(not 0 <= x < g.order for x in s):
        raise NotASubgroup("elements must be a nonempty subset of the group", witness=sorted(s))
    if g.identity not in s:
        raise NotASubgroup("identity missing", witness=g.identity)
    for a in s:
        if g.inverses[a] not in s:
            raise NotASubgroup(f"inverse of {a} missing", witness=a)
        for b in s:
            if g.cayley[a][b] not in s:
                raise NotASubgroup(f"{a}*{b} not in set", witness=[a, b])
    return Subgroup(g, tuple(s))


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (g.identity,))


def whole_group(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(g.elements), generating_set(g))


def cyclic_subgroups(g: FiniteGroup) -> list[Subgroup]:
    found: dict[frozenset, Subgroup] = {}
    for a in g.elements:
        s = generate(g, [a])
        if s not in found:
            found[s] = Subgroup(g, tuple(s), (a,))
    return sorted(found.values())


def subgroups(g: FiniteGroup, cap: int = SUBGROUP_CAP) -> list[Subgroup]:
    """All subgroups, by joining cyclic seeds until nothing new appears."""
    if g.order > cap:
        raise CapExceeded(f"group order {g.order} exceeds subgroup cap {cap}", witness=g.order)
    seeds = cyclic_subgroups(g)
    found: dict[frozenset, Subgroup] = {s.elementset: s for s in seeds}
    frontier = list(seeds)
    while frontier:
        new = []
        for s in frontier:
            for c in seeds:
                if c.gens[0] in s.elementset:
                    continue
                gens = s.gens + c.gens
                j = generate(g, gens)
                if j not in found:
                    found[j] = Subgroup(g, tuple(j), gens)
                    new.append(found[j])
        frontier = new
    return sorted(found.values())


def p_part(n: int, p: int) -> tuple[int, int]:
    """Split n = p^a * b with gcd(p, b) = 1; returns (a, b)."""
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a, n


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"{p} is not prime", witness=p)


def p_subgroups(g: FiniteGroup, p: int) -> dict[int, list[Subgroup]]:
    """All subgroups of p-power order, keyed by order.

    Built layer by layer: each subgroup of order p^(i+1) is <Q, x> for a
    subgroup Q of order p^i it contains and any x outside Q.
    """
    _require_prime(p)
    a, _ = p_part(g.order, p)
    orders = g.element_orders
    pelems = [x for x in g.elements if p_part(orders[x], p)[1] == 1]
    layer = [trivial_subgroup(g)]
    out = {1: layer}
    for i in range(a):
        target = p ** (i + 1)
        nxt: dict[frozenset, Subgroup] = {}
        for q in layer:
            done = set(q.elements)
            for x in pelems:
                if x in done:
                    continue
                gens = q.gens + (x,)
                s = generate(g, gens)
                if len(s) == target:
                    done |= s
                    if s not in nxt:
                        nxt[s] = Subgroup(g, tuple(s), gens)
        layer = sorted(nxt.values())
        out[target] = layer
    return out


def sylow_subgroups_of_group(g: FiniteGroup, p: int) -> list[Subgroup]:
    """All subgroups of order p^a where p^a exactly divides |g|."""
    _require_prime(p)
    a, _ = p_part(g.order, p)
    return p_subgroups(g, p)[p ** a]


def conjugate(g: FiniteGroup, s: Subgroup | Iterable[int], x: int) -> Subgroup:
    """x s x^-1."""
    elems = s.elements if isinstance(s, Subgroup) else tuple(s)
    c, xi = g.cayley, g.inverses[x]
    return Subgroup(g, tuple({c[c[x][h]][xi] for h in elems}))


def normalizer(g: FiniteGroup, s: Subgroup) -> Subgroup:
    if s.parent is not g and s.parent != g:
        raise NotASubgroup("subgroup belongs to another group")
    check_subgroup(g, s.elements)
    target = s.elementset
    keep = [x for x in g.elements if conjugate(g, s, x).elementset == target]
    return Subgroup(g, tuple(keep))


def is_normal_subgroup(g: FiniteGroup, s: Subgroup) -> bool:
    return normalizer(g, s).order == g.order


def center(g: FiniteGroup) -> Subgroup:
    c = g.cayley
    return Subgroup(g, tuple(a for a in g.elements if all(c[a][b] == c[b][a] for b in g.elements)))


def generating_set(g: FiniteGroup, elements: Iterable[int] | None = None) -> tuple[int, ...]:
    """A small deterministic generating set (greedy, highest element order first)."""
    pool = list(g.elements) if elements is None else sorted(set(elements))
    orders = g.element_orders
    pool.sort(key=lambda x: (-orders[x], x))
    target = len(pool)
    gens: list[int] = []
    span = {g.identity}
    while len(span) < target:
        x = next(x for x in pool if x not in span)
        gens.append(x)
        span = set(generate(g, gens))
    return tuple(gens)


# ---------------------------------------------------------------------------
# isomorphism search


def _order_profile(g: FiniteGroup) -> tuple[int, ...]:
    return tuple(sorted(g.element_orders))


def isomorphisms(g1: FiniteGroup, g2: FiniteGroup, cap: int = ISO_CAP) -> Iterator[tuple[int, ...]]:
    """Yield every isomorphism g1 -> g2 as an image tuple.

    Backtracks over images of a generating set of g1, pruning on element
    orders and extending each partial map by breadth-first closure.
    """
    if max(g1.order, g2.order) > cap:
        raise CapExceeded(f"order exceeds isomorphism cap {cap}", witness=max(g1.order, g2.order))
    if g1.order != g2.order or _order_profile(g1) != _order_profile(g2):
        return
    gens = generating_set(g1)
    o1, o2 = g1.element_orders, g2.element_orders
    cands = [[y for y in g2.elements if o2[y] == o1[x]] for x in gens]
    c1, c2 = g1.cayley, g2.cayley
    n = g1.order

    def extend(fmap: list[int], used: list[bool], ngens: int) -> tuple[list[int], list[bool]] | None:
        fmap, used = fmap[:], used[:]
        queue = deque(x for x in range(n) if fmap[x] >= 0)
        active = gens[:ngens]
        while queue:
            w = queue.popleft()
            fw = fmap[w]
            for s in active:
                z = c1[w][s]
                img = c2[fw][fmap[s]]
                if fmap[z] >= 0:
                    if fmap[z] != img:
                        return None
                else:
                    if used[img]:
                        return None
                    fmap[z] = img
                    used[img] = True
                    queue.append(z)
        return fmap, used

    start = [-1] * n
    start[g1.identity] = g2.identity
    used0 = [False] * n
    used0[g2.identity] = True

    def search(i, fmap, used):
        if i == len(gens):
            yield tuple(fmap)
            return
        x = gens[i]
        for y in cands[i]:
            if used[y]:
                continue
            f2, u2 = fmap[:], used[:]
            f2[x] = y
            u2[y] = True
            res = extend(f2, u2, i + 1)
            if res is not None:
                yield from search(i + 1, *res)

    yield from search(0, start, used0)


def are_isomorphic(g1: FiniteGroup, g2: FiniteGroup, cap: int = ISO_CAP) -> tuple[bool, tuple[int, ...] | None]:
    """(True, witness) when an isomorphism exists, else (False, None)."""
    for f in isomorphisms(g1, g2, cap):
        return True, f
    return False, None


def automorphisms(g: FiniteGroup, cap: int = ISO_CAP, limit: int = AUTOMORPHISM_LIMIT) -> list[tuple[int, ...]]:
    out = []
    for f in isomorphisms(g, g, cap):
        out.append(f)
        if len(out) > limit:
            raise CapExceeded(f"more than {limit} automorphisms", witness=limit)
    return sorted(out)


def is_homomorphism(g1: FiniteGroup, g2: FiniteGroup, f: Sequence[int]) -> bool:
    c1, c2 = g1.cayley, g2.cayley
    return all(f[c1[a][b]] == c2[f[a]][f[b]] for a in g1.elements for b in g1.elements)


# ---------------------------------------------------------------------------
# small helpers used across modules


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n))


def catalog_groups(max_order: int) -> list[FiniteGroup]:
    """Catalog constructions of order <= max_order, one per isomorphism class.

    Not every isomorphism class is reachable from the catalog (for instance
    most groups of order 16), so this is a sample, not a census.
    """
    cands: list[FiniteGroup] = []
    for n in range(1, max_order + 1):
        cands.append(cyclic(n))
    for n in range(2, max_order // 2 + 1):
        cands.append(dihedral(n))
    for n in range(2, max_order // 4 + 1):
        cands.append(dicyclic(n))
    for n in (3, 4, 5):
        if math.factorial(n) <= max_order:
            cands.append(symmetric(n))
        if math.factorial(n) // 2 <= max_order and n >= 4:
            cands.append(alternating(n))
    cands.append(klein())
    # abelian groups as products of cyclic prime-power factors
    for factors in _abelian_invariants(max_order):
        if len(factors) > 1:
            cands.append(catalog_group("direct_product", list(factors)))
    # a few nonabelian products
    small_nonab = [dihedral(n) for n in range(3, max_order // 4 + 1)] + [dicyclic(2)]
    if 24 * 2 <= max_order:
        small_nonab.append(symmetric(4))
    for a in small_nonab:
        for b in range(2, max_order // a.order + 1):
            cands.append(direct_product(a, cyclic(b)))
    cands = [g for g in cands if g.order <= max_order]
    by_profile: dict[tuple, list[FiniteGroup]] = defaultdict(list)
    for g in cands:
        key = (g.order, _order_profile(g), g.is_abelian)
        if any(are_isomorphic(g, h)[0] for h in by_profile[key]):
            continue
        by_profile[key].append(g)
    out = [g for key in sorted(by_profile, key=lambda k: (k[0], not k[2], k[1])) for g in by_profile[key]]
    return out


def _abelian_invariants(max_order: int) -> Iterator[tuple[int, ...]]:
    """Prime-power factor lists of every abelian group of order <= max_order."""
    def prime_power_partitions(p, a):
        for part in _int_partitions(a):
            yield tuple(p ** x for x in part)

    for n in range(2, max_order + 1):
        f = factorint(n)
        per_prime = [list(prime_power_partitions(p, a)) for p, a in sorted(f.items())]
        for combo in itertools.product(*per_prime):
            yield tuple(x for part in combo for x in part)


def _int_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _int_partitions(n - first, first):
            yield (first,) + rest
