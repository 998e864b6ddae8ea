"""Acceptance checks, one printed PASS/FAIL line per criterion.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
Time limits are wall-clock seconds measured around each check.
"""

from __future__ import annotations

import io
import json
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _suite import sweep  # noqa: E402

from groupoids import cli  # noqa: E402
from groupoids.groupoid import are_isomorphic_groupoids, corollary_squarefree_check, make_connected  # noqa: E402
from groupoids.groups import (  # noqa: E402
    catalog_groups,
    conjugate,
    cyclic,
    dihedral,
    power_automorphism,
    prime_divisors,
    p_part,
    semidirect_product,
    sylow_subgroups_of_group,
)
from groupoids.classify import enumerate_groupoids  # noqa: E402
from groupoids.subgroupoids import coset, subgroupoid_from_blocks  # noqa: E402
from groupoids.sylow import enumerate_DP_sylow, enumerate_dp_sylow, is_characteristic, is_normal  # noqa: E402

# pinned limits
LIMIT_CLASSIFY = 1.0
LIMIT_SYLOW_54 = 5.0
LIMIT_K7 = 30.0
LIMIT_SWEEP = 120.0
MIN_PAIRS = 10_000

RESULTS: dict[int, tuple[bool, str]] = {}


def _line(n: int, ok: bool, detail: str, capsys=None) -> None:
    RESULTS[n] = (ok, detail)
    text = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + text)
    else:
        print(text)


def _cli(*argv) -> dict:
    buf = io.StringIO()
    code = cli.run(list(argv), out=buf)
    out = json.loads(buf.getvalue())
    out["_exit"] = code
    return out


# ---------------------------------------------------------------------------


def check_1():
    expected = {1: 1, 2: 2, 3: 3, 4: 7, 5: 8, 6: 16}
    t0 = time.perf_counter()
    got, problems = {}, []
    for n, want in expected.items():
        out = _cli("classify", "--order", str(n))
        got[n] = out["count"]
        if out["count"] != want:
            problems.append(f"order {n}: got {out['count']}, expected {want}")
        reps = enumerate_groupoids(n)
        if len(reps) != out["count"] or not out.get("agree"):
            problems.append(f"order {n}: {len(reps)} representatives vs count {out['count']}")
        if any(are_isomorphic_groupoids(a, b) for i, a in enumerate(reps) for b in reps[i + 1:]):
            problems.append(f"order {n}: isomorphic representatives")
    dt = time.perf_counter() - t0
    if dt >= LIMIT_CLASSIFY:
        problems.append(f"took {dt:.2f}s")
    detail = f"counts {[got[n] for n in sorted(got)]} in {dt:.2f}s" + ("; " + "; ".join(problems) if problems else "")
    return not problems, detail


def check_2():
    t0 = time.perf_counter()
    g = make_connected(["e1", "e2", "e3"], dihedral(3))
    expected = {(1, 3): 3, (1, 2): 9, (2, 3): 3, (2, 2): 9, (3, 3): 1, (3, 2): 3}
    problems = []
    res = {}
    for (d, p), want in expected.items():
        r = enumerate_dp_sylow(g, d, p)
        res[d, p] = r
        if not (len(r.subgroupoids) == r.formula == want and r.report.passed):
            problems.append(f"n_({d},{p}) explicit {len(r.subgroupoids)} formula {r.formula} want {want}")
    if res[2, 3].data["order"] != 12 or res[2, 3].subgroupoids[0].order != 12:
        problems.append("(2,3)-Sylow order is not 12")
    if res[2, 2].data["order"] != 8 or res[2, 2].subgroupoids[0].order != 8:
        problems.append("(2,2)-Sylow order is not 8")
    wide3 = res[3, 3].subgroupoids[0]
    if not (is_normal(g, wide3) and is_characteristic(g, wide3)):
        problems.append("wide 3-Sylow not normal and characteristic")
    if any(is_normal(g, h) for h in res[3, 2].subgroupoids):
        problems.append("a wide 2-Sylow is normal")
    dt = time.perf_counter() - t0
    if dt >= LIMIT_SYLOW_54:
        problems.append(f"took {dt:.2f}s")
    counts = [len(res[k].subgroupoids) for k in expected]
    return not problems, f"counts {counts} in {dt:.2f}s" + ("; " + "; ".join(problems) if problems else "")


def _sylow_counts_by_element_orders(table: np.ndarray, p: int) -> int:
    """Oracle for groups whose Sylow p-subgroups have order p: count elements of order p."""
    n = len(table)
    x = np.arange(n)
    power = x.copy()
    order = np.zeros(n, dtype=int)
    for k in range(1, n + 1):
        order[(power == 0) & (order == 0)] = k
        power = table[power, x]
    return int(np.sum(order == p)) // (p - 1)


def check_3():
    t0 = time.perf_counter()
    problems = []
    labels = [f"e{i}" for i in range(1, 8)]
    g1 = make_connected(labels, cyclic(105))
    r1 = enumerate_DP_sylow(g1, (1, 3, 3), (3, 5, 7))
    if (r1.count, r1.formula, r1.N) != (140, 140, [1, 1, 1]):
        problems.append(f"Z105: count {r1.count} formula {r1.formula} N {r1.N}")
    out = _cli("sylow", str(_example_file("k7_z105.json")), "--D", "1,3,3", "--P", "3,5,7")
    if out.get("count") != 140:
        problems.append(f"cli count {out.get('count')}")
    sd = semidirect_product(cyclic(35), cyclic(3), {1: power_automorphism(35, 11)})
    g2 = make_connected(labels, sd)
    r2 = enumerate_DP_sylow(g2, (1, 3, 3), (3, 5, 7))
    if (r2.count, r2.formula, r2.N) != (980, 980, [7, 1, 1]):
        problems.append(f"Z35:Z3: count {r2.count} formula {r2.formula} N {r2.N}")
    brute = [_sylow_counts_by_element_orders(sd.table, p) for p in (3, 5, 7)]
    lattice = [len(sylow_subgroups_of_group(sd, p)) for p in (3, 5, 7)]
    if brute != [7, 1, 1] or lattice != brute:
        problems.append(f"group Sylow counts: brute {brute}, lattice {lattice}")
    dt = time.perf_counter() - t0
    if dt >= LIMIT_K7:
        problems.append(f"took {dt:.2f}s")
    return not problems, f"n_DP = {r1.count}, {r2.count}; n_3,n_5,n_7 = {brute} in {dt:.2f}s" + (
        "; " + "; ".join(problems) if problems else "")


def check_4():
    r = sweep()
    problems = []
    if r.index_mismatch:
        problems.append(f"{len(r.index_mismatch)} index mismatches")
    if r.coset_lemma_failures:
        problems.append(f"{len(r.coset_lemma_failures)} coset lemma failures")
    if r.left_right_mismatch:
        problems.append(f"{len(r.left_right_mismatch)} left/right count mismatches")
    if r.pairs < MIN_PAIRS:
        problems.append(f"only {r.pairs} pairs")
    if r.seconds >= LIMIT_SWEEP:
        problems.append(f"took {r.seconds:.1f}s")
    return not problems, (f"{r.pairs} pairs over {r.groupoids} groupoids ({r.skipped} above the per-groupoid cap "
                          f"skipped) in {r.seconds:.1f}s") + ("; " + "; ".join(problems) if problems else "")


def check_5():
    r = sweep()
    ok = not r.lagrange_failures and r.wide > 0 and r.corollary_checked > 0
    return ok, (f"{r.wide} wide subgroupoids, {len(r.lagrange_failures)} identity failures, "
                f"corollary checked on {r.corollary_checked}")


def check_6():
    problems = []
    checked = 0
    for g in catalog_groups(64):
        for p in prime_divisors(g.order):
            syl = sylow_subgroups_of_group(g, p)
            n = len(syl)
            _, b = p_part(g.order, p)
            checked += 1
            if n % p != 1 or b % n:
                problems.append(f"{g.name} p={p}: n={n}")
            orbit = {conjugate(g, syl[0], x).elementset for x in g.elements}
            if orbit != {s.elementset for s in syl}:
                problems.append(f"{g.name} p={p}: Sylows not all conjugate")
    return not problems, f"{checked} (group, prime) pairs" + ("; " + "; ".join(problems[:5]) if problems else "")


def check_7():
    r = sweep()
    extra = 0
    fails = len(r.squarefree_failures)
    # connected groupoids from the Sylow examples
    for g in (make_connected(["e1", "e2", "e3"], dihedral(3)),
              make_connected([f"e{i}" for i in range(1, 8)], cyclic(105))):
        extra += 1
        fails += not corollary_squarefree_check(g)
    ok = fails == 0 and r.squarefree_connected > 0
    return ok, f"{r.squarefree_connected + extra} squarefree-order connected groupoids checked, {fails} counterexamples"


def check_8():
    g = make_connected(["e1", "e2", "e3"], cyclic(2))
    h = subgroupoid_from_blocks(g, [(["e1", "e2"], [0, 1]), (["e3"], [0])])
    kk = subgroupoid_from_blocks(g, [(["e1", "e2"], [0, 1])])
    sizes = {len(coset(h, x, "left")) for x in g.element_list}
    size1 = [x.id for x in g.element_list if len(coset(h, x, "left")) == 1]
    size4 = [x.id for x in g.element_list if len(coset(h, x, "left")) == 4]
    witness = [x.id for x in g.element_list
               if not coset(kk, x, "right").members and x in coset(kk, x, "left").members]
    ok = {1, 4} <= sizes and bool(witness)
    return ok, (f"left coset sizes {sorted(sizes)} (size 1 at {size1[0] if size1 else None}, size 4 at "
                f"{size4[0] if size4 else None}); Kg empty with g in gK at {witness[0] if witness else None}")


def _example_file(name: str) -> Path:
    return Path(__file__).parent / "data" / name


CHECKS = {1: check_1, 2: check_2, 3: check_3, 4: check_4, 5: check_5, 6: check_6, 7: check_7, 8: check_8}


@pytest.mark.parametrize("n", sorted(CHECKS))
def test_criterion(n, capsys):
    ok, detail = CHECKS[n]()
    _line(n, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n in sorted(CHECKS):
        ok, detail = CHECKS[n]()
        _line(n, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
