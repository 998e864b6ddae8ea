"""Counting and listing groupoids of a given order.

A finite groupoid is a disjoint union of connected pieces ``A_d x G`` with
order d^2 |G|, and two groupoids are isomorphic exactly when their pieces
match up by identity count and base-group class.  So classes of order n are
multisets of (d, group class) whose orders sum to n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import CapExceeded, CatalogGap, TableGap
from .groupoid import ConnectedComponent, Groupoid
from .groups import FiniteGroup, catalog_groups, cyclic, dihedral, klein

#: largest order enumerate_groupoids builds by default
CONSTRUCTIVE_CAP = 12


def partitions(n: int) -> list[list[int]]:
    """All partitions of n, largest parts first, in decreasing lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    out: list[list[int]] = []

    def rec(rest: int, largest: int, acc: list[int]):
        if rest == 0:
            out.append(list(acc))
            return
        for part in range(min(rest, largest), 0, -1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


@dataclass(frozen=True)
class GroupCountTable:
    """g(m), the number of groups of order m up to isomorphism, for m = 1..max."""

    counts: Mapping[int, int]

    def __post_init__(self):
        keys = sorted(self.counts)
        if keys != list(range(1, len(keys) + 1)):
            raise ValueError("table must cover 1..max contiguously")
        if self.counts.get(1) != 1:
            raise ValueError("g(1) must be 1")

    @classmethod
    def builtin(cls) -> "GroupCountTable":
        # orders 1, 2, 3, 5 are cyclic; Z4 and the Klein group; Z6 and D3
        return cls({1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2})

    @classmethod
    def from_library(cls, library: Mapping[int, list]) -> "GroupCountTable":
        return cls({m: len(v) for m, v in library.items()})

    def __getitem__(self, m: int) -> int:
        try:
            return self.counts[m]
        except KeyError:
            raise TableGap(f"no group count for order {m}", witness=m) from None

    @property
    def max_order(self) -> int:
        return max(self.counts)


def connected_class_count(q: int, table: GroupCountTable | None = None) -> int:
    """c(q): connected groupoids of order q, i.e. the sum of g(m) over d^2 m = q."""
    table = table or GroupCountTable.builtin()
    return sum(table[q // (d * d)] for d in range(1, math.isqrt(q) + 1) if q % (d * d) == 0)


def groupoid_count(n: int, table: GroupCountTable | None = None) -> int:
    """Multisets of connected classes with orders summing to n (Euler transform)."""
    table = table or GroupCountTable.builtin()
    ways = [1] + [0] * n
    for q in range(1, n + 1):
        c = connected_class_count(q, table)
        new = ways[:]
        for total in range(n + 1):
            if not ways[total]:
                continue
            for j in range(1, (n - total) // q + 1):
                new[total + j * q] += ways[total] * math.comb(c + j - 1, j)
        ways = new
    return ways[n]


# ---------------------------------------------------------------------------
# constructive enumeration


def builtin_library() -> dict[int, list[FiniteGroup]]:
    """One representative group per class for orders 1..6."""
    return {1: [cyclic(1)], 2: [cyclic(2)], 3: [cyclic(3)], 4: [cyclic(4), klein()],
            5: [cyclic(5)], 6: [cyclic(6), dihedral(3)]}


def catalog_library(max_order: int) -> dict[int, list[FiniteGroup]]:
    """Catalog groups by order; a sample of classes beyond order 6, not a census."""
    lib: dict[int, list[FiniteGroup]] = {m: [] for m in range(1, max_order + 1)}
    for g in catalog_groups(max_order):
        lib[g.order].append(g)
    return lib


@dataclass(frozen=True)
class ConnectedClass:
    d: int
    group: FiniteGroup
    key: int    # position of the group within its order in the library

    @property
    def m(self) -> int:
        return self.group.order

    @property
    def order(self) -> int:
        return self.d * self.d * self.m

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "group": self.group.name}


def connected_classes(q: int, library: Mapping[int, list[FiniteGroup]]) -> list[ConnectedClass]:
    out = []
    for d in range(1, math.isqrt(q) + 1):
        if q % (d * d):
            continue
        m = q // (d * d)
        if m not in library:
            raise CatalogGap(f"no groups of order {m} in the library", witness=m)
        out += [ConnectedClass(d, g, i) for i, g in enumerate(library[m])]
    return out


def _build(parts: Iterable[ConnectedClass]) -> Groupoid:
    comps, next_label = [], 1
    for c in parts:
        labels = tuple(f"e{next_label + i}" for i in range(c.d))
        next_label += c.d
        comps.append(ConnectedComponent(labels, c.group))
    return Groupoid(comps)


def _sort_key(parts: tuple[ConnectedClass, ...]):
    return (len(parts), [(-c.order, -c.d, c.key) for c in parts])


def enumerate_classes(n: int, library: Mapping[int, list[FiniteGroup]] | None = None,
                      cap: int = CONSTRUCTIVE_CAP) -> list[tuple[ConnectedClass, ...]]:
    """Multisets of connected classes of total order n, each sorted by decreasing order."""
    if n > cap:
        raise CapExceeded(f"order {n} exceeds the constructive cap {cap}", witness=n)
    library = builtin_library() if library is None else library
    classes = [c for q in range(n, 0, -1) for c in connected_classes(q, library)]
    out: list[tuple[ConnectedClass, ...]] = []

    def rec(start: int, rest: int, acc: list):
        if rest == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(classes)):
            c = classes[i]
            if c.order <= rest:
                acc.append(c)
                rec(i, rest - c.order, acc)
                acc.pop()

    rec(0, n, [])
    out.sort(key=_sort_key)
    return out


def enumerate_groupoids(n: int, library: Mapping[int, list[FiniteGroup]] | None = None,
                        cap: int = CONSTRUCTIVE_CAP) -> list[Groupoid]:
    """One groupoid per isomorphism class of order n, built from the library groups."""
    return [_build(parts) for parts in enumerate_classes(n, library, cap)]


def atlas(n: int, library: Mapping[int, list[FiniteGroup]] | None = None, cap: int = CONSTRUCTIVE_CAP) -> dict:
    classes = enumerate_classes(n, library, cap)
    return {"order": n, "count": len(classes),
            "classes": [{"parts": [c.to_json() for c in parts]} for parts in classes]}


# ---------------------------------------------------------------------------
# brute-force oracle for g(m)


def _reduced_latin_squares(m: int):
    """Latin squares on 0..m-1 whose first row and column are the identity."""
    grid = np.full((m, m), -1, dtype=np.int64)
    grid[0] = np.arange(m)
    grid[:, 0] = np.arange(m)
    cells = [(i, j) for i in range(1, m) for j in range(1, m)]

    def rec(k: int):
        if k == len(cells):
            yield grid.copy()
            return
        i, j = cells[k]
        used = set(grid[i, :j]) | set(grid[:i, j])
        for v in range(m):
            if v not in used:
                grid[i, j] = v
                yield from rec(k + 1)
        grid[i, j] = -1

    yield from rec(0)


def _associative(t: np.ndarray) -> bool:
    return bool(np.array_equal(t[t], t[:, t]))


def _canonical(t: np.ndarray) -> bytes:
    m = len(t)
    best = None
    for rest in itertools.permutations(range(1, m)):
        p = np.array((0,) + rest)          # relabel x -> p[x]
        inv = np.argsort(p)
        relabeled = p[t[np.ix_(inv, inv)]]
        b = relabeled.tobytes()
        if best is None or b < best:
            best = b
    return best


def count_groups_bruteforce(m: int) -> int:
    """g(m) by listing associative reduced Latin squares up to relabelling (m <= 6)."""
    if m > 6:
        raise CapExceeded("brute-force group count is limited to m <= 6", witness=m)
    if m == 1:
        return 1
    seen = set()
    for t in _reduced_latin_squares(m):
        if _associative(t):
            seen.add(_canonical(t))
    return len(seen)
