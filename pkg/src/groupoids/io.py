"""JSON formats for groups, groupoids, subgroupoids and Sylow profiles."""

from __future__ import annotations

import json
from typing import Any

from .errors import BadParams, BadTable
from .groupoid import Groupoid, RawGroupoid, make_groupoid, structure
from .groups import FiniteGroup, catalog_group, generating_set, make_group_from_table, semidirect_product
from .subgroupoids import Subgroupoid, subgroupoid_from_blocks, validate_subgroupoid
from .sylow import SylowProfile


def _need(obj: Any, key: str):
    if not isinstance(obj, dict) or key not in obj:
        raise BadParams(f"missing field {key!r}", witness=key)
    return obj[key]


def group_from_json(obj: dict) -> FiniteGroup:
    kind = _need(obj, "kind")
    if kind == "catalog":
        return catalog_group(_need(obj, "name"), obj.get("params", []))
    if kind == "table":
        cayley = _need(obj, "cayley")
        if not isinstance(cayley, list):
            raise BadTable("cayley must be a list of rows")
        return make_group_from_table(cayley, name=obj.get("name"), labels=obj.get("labels"),
                                     spec={"kind": "table", "cayley": cayley})
    if kind == "semidirect":
        h = group_from_json(_need(obj, "h"))
        k = group_from_json(_need(obj, "k"))
        action = _need(obj, "action")
        gens = obj.get("k_generators")
        if gens is None:
            gens = list(generating_set(k))
        if len(gens) != len(action):
            raise BadParams("need one automorphism per generator of k", witness=[len(gens), len(action)])
        g = semidirect_product(h, k, dict(zip(gens, action)), name=obj.get("name"))
        g.spec = {"kind": "semidirect", "h": group_to_json(h), "k": group_to_json(k),
                  "action": action, "k_generators": list(gens)}
        return g
    raise BadParams(f"unknown group kind {kind!r}", witness=kind)


def group_to_json(g: FiniteGroup) -> dict:
    if g.spec is not None:
        return dict(g.spec)
    return {"kind": "table", "cayley": [list(map(int, row)) for row in g.cayley]}


def groupoid_from_json(obj: dict) -> Groupoid:
    """Structured ``components`` form, or ``raw`` (validated and then structured)."""
    if isinstance(obj, dict) and "raw" in obj:
        g, _ = structure(RawGroupoid.from_json(obj["raw"]))
        return g
    comps = _need(obj, "components")
    parts = []
    for c in comps:
        ids = _need(c, "identities")
        parts.append((ids, group_from_json(_need(c, "group"))))
    if not parts:
        raise BadParams("groupoid needs at least one component")
    return make_groupoid(parts)


def groupoid_to_json(g: Groupoid) -> dict:
    return {"components": [{"identities": list(c.identities), "group": group_to_json(c.base_group)}
                           for c in g.components]}


def subgroupoid_from_json(g: Groupoid, obj: dict) -> Subgroupoid:
    if "elements" in obj:
        return validate_subgroupoid(g, obj["elements"])
    comps = _need(obj, "components")
    blocks = [(_need(c, "identities"), _need(c, "subgroup")) for c in comps]
    h = subgroupoid_from_blocks(g, blocks)
    return validate_subgroupoid(g, h.elements)


def subgroupoid_to_json(h: Subgroupoid) -> dict:
    """Block form when H is a union of products A_d x K, element ids otherwise."""
    blocks = [(list(b.identities), list(b.isotropy)) for b in h.blocks]
    if subgroupoid_from_blocks(h.parent, blocks).elements == h.elements:
        return {"components": [{"identities": ids, "subgroup": iso} for ids, iso in blocks]}
    return {"elements": h.ids()}


def profile_from_json(obj: dict) -> SylowProfile:
    return SylowProfile(_need(obj, "D"), _need(obj, "P"), obj.get("exps"))


def dumps(obj: Any, pretty: bool = False) -> str:
    """Deterministic JSON text."""
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
