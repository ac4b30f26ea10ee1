"""Bundled example objects, built on demand and cached by name."""

from __future__ import annotations

from functools import lru_cache

from .bimodule import Bimodule, GroupData, from_group_data, graph_data, trivial_bimodule
from .errors import UnknownName
from .groups import (
    FiniteGroup,
    IntegerOracle,
    Subgroup,
    cyclic_group,
    group_from_mul_table,
    subgroup_closure,
    symmetric_group,
)
from .selfsim import SelfSimilarAction, from_endomorphism, from_group_data_action, make_action
from .universal import HNNPresentation


@lru_cache(maxsize=None)
def group(name: str) -> FiniteGroup:
    if name == "C1":
        return group_from_mul_table([[0]], ["1"], name="C1")
    if name == "C2":
        return cyclic_group(2, "s")
    if name == "C4":
        return cyclic_group(4, "r")
    if name == "S3":
        return symmetric_group(3)
    raise UnknownName(f"no bundled group {name!r}")


GROUPS = ("C1", "C2", "C4", "S3")


def _a3(G: FiniteGroup) -> Subgroup:
    three = next(g for g in G.elements if G.element_order(g) == 3)
    return subgroup_closure(G, [three])


@lru_cache(maxsize=None)
def group_data(name: str) -> GroupData:
    if name == "s3-a3-identity":
        G = group("S3")
        return graph_data(G, {a: a for a in _a3(G).elements})
    if name == "c2-trivial":
        G = group("C2")
        return graph_data(G, {G.identity: G.identity})
    if name == "c4-square":
        G = group("C4")
        return graph_data(G, {g: G.mul[g][g] for g in G.elements})
    raise UnknownName(f"no bundled group data {name!r}")


GROUP_DATA = ("s3-a3-identity", "c2-trivial", "c4-square")


@lru_cache(maxsize=None)
def bimodule(name: str) -> Bimodule:
    if name == "free2":
        return trivial_bimodule(group("C1"), 2, ["a", "b"])
    if name == "c2-bifree":
        return from_group_data(group_data("c2-trivial")).bimodule
    if name == "s3-a3":
        return from_group_data(group_data("s3-a3-identity")).bimodule
    raise UnknownName(f"no bundled bimodule {name!r}")


BIMODULES = ("free2", "c2-bifree", "s3-a3")


@lru_cache(maxsize=None)
def action(name: str) -> SelfSimilarAction:
    C2 = group("C2")
    if name == "free2":
        return make_action(group("C1"), [[0, 1]], [[0, 0]], "ab", name)
    if name == "c2-swap":
        return make_action(C2, [[0, 1], [1, 0]], [[0, 0], [0, 0]], "ab", name)
    if name == "c2-flat":
        return make_action(C2, [[0, 1], [0, 1]], [[0, 0], [1, 1]], "ab", name)
    if name == "c2-twist":
        return make_action(C2, [[0, 1], [1, 0]], [[0, 0], [1, 1]], "ab", name)
    if name == "c2-kernel":
        return make_action(C2, [[0, 1], [0, 1]], [[0, 0], [0, 0]], "ab", name)
    if name == "s3-a3-identity":
        a = from_group_data_action(group_data("s3-a3-identity"))
        return make_action(a.group, a.act, a.res, ["a", "b"], name)
    if name == "rees-c4-square":
        G = group("C4")
        return from_endomorphism(G, [G.mul[g][g] for g in G.elements], name=name)
    if name == "rees-c4-inv":
        G = group("C4")
        return from_endomorphism(G, [G.inv[g] for g in G.elements], name=name)
    raise UnknownName(f"no bundled action {name!r}")


ACTIONS = ("free2", "c2-swap", "c2-flat", "c2-twist", "c2-kernel", "s3-a3-identity",
           "rees-c4-square", "rees-c4-inv")


def broken_ss8() -> SelfSimilarAction:
    """Tables that satisfy SS1, SS2 and SS7 but break SS8 at ``(s, s, a)``."""
    return SelfSimilarAction(group("C2"), [[0, 1], [1, 0]], [[0, 0], [1, 0]], ("a", "b"), "broken-ss8")


@lru_cache(maxsize=None)
def presentation(name: str) -> HNNPresentation:
    # bsMN: A = N Z, phi(N k) = M k, so t^-1 N t = M
    if name == "bs12":
        return HNNPresentation(IntegerOracle(m=1, n=2), name)
    if name == "bs23":
        return HNNPresentation(IntegerOracle(m=2, n=3), name)
    raise UnknownName(f"no bundled presentation {name!r}")


PRESENTATIONS = ("bs12", "bs23")


def listing() -> dict[str, tuple[str, ...]]:
    return {
        "group": GROUPS,
        "group-data": GROUP_DATA,
        "bimodule": BIMODULES,
        "action": ACTIONS,
        "presentation": PRESENTATIONS,
    }


def lookup(name: str, kinds: tuple[str, ...] = ("action", "presentation", "bimodule", "group-data", "group")):
    """First bundled object called ``name`` among ``kinds``; returns ``(kind, obj)``."""
    makers = {"action": action, "presentation": presentation, "bimodule": bimodule,
              "group-data": group_data, "group": group}
    table = listing()
    for kind in kinds:
        if name in table[kind]:
            return kind, makers[kind](name)
    raise UnknownName(f"nothing called {name!r} in the corpus")
