"""The shared index / Lagrange / squarefree sweep over small groupoids."""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass, field

from groupoids.classify import catalog_library, enumerate_groupoids
from groupoids.groupoid import Groupoid, is_squarefree
from groupoids.subgroupoids import (
    coset,
    coset_cardinality,
    count_subgroupoids,
    index_bruteforce,
    index_formula,
    iter_subgroupoids,
    lagrange_identity_check,
)

MAX_ORDER = 24
# groupoids with more subgroupoids than this are skipped whole
PER_GROUPOID_CAP = 50


@dataclass
class SweepResult:
    groupoids: int = 0
    skipped: int = 0
    pairs: int = 0
    index_mismatch: list = field(default_factory=list)
    coset_lemma_failures: list = field(default_factory=list)
    left_right_mismatch: list = field(default_factory=list)
    wide: int = 0
    lagrange_failures: list = field(default_factory=list)
    corollary_checked: int = 0
    connected_seen: int = 0
    squarefree_connected: int = 0
    squarefree_failures: list = field(default_factory=list)
    seconds: float = 0.0


def _squarefree_probe(g: Groupoid, res: SweepResult) -> None:
    for c in g.components:
        res.connected_seen += 1
        if is_squarefree(c.order):
            res.squarefree_connected += 1
            if c.d != 1:
                res.squarefree_failures.append(g)


@functools.lru_cache(maxsize=None)
def sweep(max_order: int = MAX_ORDER, cap: int = PER_GROUPOID_CAP) -> SweepResult:
    res = SweepResult()
    t0 = time.perf_counter()
    lib = catalog_library(max_order)
    for n in range(1, max_order + 1):
        for g in enumerate_groupoids(n, lib, cap=max_order):
            _squarefree_probe(g, res)
            if count_subgroupoids(g) > cap:
                res.skipped += 1
                continue
            res.groupoids += 1
            for h in iter_subgroupoids(g, max_count=cap):
                res.pairs += 1
                if index_formula(g, h) != index_bruteforce(g, h):
                    res.index_mismatch.append((g, h))
                right, left = set(), set()
                for x in g.element_list:
                    try:
                        coset_cardinality(h, x)
                    except Exception:
                        res.coset_lemma_failures.append((g, h, x))
                    if x.src in h.identities and x.dst in h.identities:
                        right.add(coset(h, x, "right").members)
                        left.add(coset(h, x, "left").members)
                if len(right) != len(left):
                    res.left_right_mismatch.append((g, h))
                if h.is_wide:
                    res.wide += 1
                    rep = lagrange_identity_check(g, h)
                    if not rep.passed:
                        res.lagrange_failures.append((g, h, rep))
                    if rep.data.get("corollary_applicable"):
                        res.corollary_checked += 1
    res.seconds = time.perf_counter() - t0
    return res
