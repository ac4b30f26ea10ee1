"""Bimodules over a finite group and the group data ``(H, gamma, K)`` that classify irreducible ones."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import BadIndex, InvalidBimodule, InvalidGroupData, NotRightFree
from .groups import FiniteGroup, Subgroup, left_cosets


@dataclass(frozen=True, eq=False)
class Bimodule:
    """Finite set with commuting left and right actions of ``group``.

    ``left[g][x]`` is ``g.x`` and ``right[x][g]`` is ``x.g``.
    """

    group: FiniteGroup
    carrier_size: int
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        G, n = self.group, self.carrier_size
        if n < 1:
            raise InvalidBimodule("carrier must be non-empty")
        if len(self.left) != G.order or any(len(r) != n for r in self.left):
            raise InvalidBimodule("left table must be |G| x carrier")
        if len(self.right) != n or any(len(r) != G.order for r in self.right):
            raise InvalidBimodule("right table must be carrier x |G|")
        e = G.identity
        for x in range(n):
            if self.left[e][x] != x or self.right[x][e] != x:
                raise InvalidBimodule(f"identity does not act trivially on {x}")
        for g, h, x in product(G.elements, G.elements, range(n)):
            if self.left[G.mul[g][h]][x] != self.left[g][self.left[h][x]]:
                raise InvalidBimodule(f"left action law fails at {(g, h, x)}")
            if self.right[x][G.mul[g][h]] != self.right[self.right[x][g]][h]:
                raise InvalidBimodule(f"right action law fails at {(g, h, x)}")
            if self.right[self.left[g][x]][h] != self.left[g][self.right[x][h]]:
                raise InvalidBimodule(f"actions do not commute at {(g, h, x)}")

    def act(self, g: int, x: int, h: int) -> int:
        """``g x h``."""
        return self.right[self.left[g][x]][h]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def index(self, label) -> int:
        if isinstance(label, int):
            return label
        if self.labels is not None and label in self.labels:
            return self.labels.index(label)
        if not str(label).isdigit() or int(label) >= self.carrier_size:
            raise BadIndex(f"unknown carrier point {label!r}")
        return int(label)

    def right_stabilizer(self, x: int) -> list[int]:
        return [g for g in self.group.elements if self.right[x][g] == x]

    def two_sided_orbit(self, x: int) -> set[int]:
        return {self.act(g, x, h) for g in self.group.elements for h in self.group.elements}

    def right_orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for x in range(self.carrier_size):
            if x in seen:
                continue
            orb = sorted({self.right[x][g] for g in self.group.elements})
            seen.update(orb)
            out.append(orb)
        return out


def trivial_bimodule(G: FiniteGroup, size: int, labels: Sequence[str] | None = None) -> Bimodule:
    """``size`` points on which ``G`` acts trivially on both sides."""
    return Bimodule(
        G,
        size,
        tuple(tuple(range(size)) for _ in G.elements),
        tuple(tuple(x for _ in G.elements) for x in range(size)),
        tuple(labels) if labels is not None else None,
    )


@dataclass(frozen=True, eq=False)
class GroupData:
    group: FiniteGroup
    H: Subgroup
    K: Subgroup
    gamma: frozenset[tuple[int, int]]

    def __post_init__(self):
        G = self.group
        if self.H.parent is not G or self.K.parent is not G:
            raise InvalidGroupData("H and K must be subgroups of the given group")
        if not self.H.is_subgroup() or not self.K.is_subgroup():
            raise InvalidGroupData("H and K must be subgroups")
        gam = self.gamma
        if (G.identity, G.identity) not in gam:
            raise InvalidGroupData("gamma must contain (1, 1)")
        for h, k in gam:
            if h not in self.H or k not in self.K:
                raise InvalidGroupData(f"pair {(h, k)} is not in H x K")
            if (G.inv[h], G.inv[k]) not in gam:
                raise InvalidGroupData(f"gamma not closed under inverse at {(h, k)}")
        for (h1, k1), (h2, k2) in product(gam, repeat=2):
            if (G.mul[h1][h2], G.mul[k1][k2]) not in gam:
                raise InvalidGroupData("gamma not closed under products")
        if {h for h, _ in gam} != self.H.as_set or {k for _, k in gam} != self.K.as_set:
            raise InvalidGroupData("gamma must project onto both H and K")

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupData):
            return NotImplemented
        return (
            self.group is other.group
            and self.H == other.H
            and self.K == other.K
            and self.gamma == other.gamma
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.H.elements, self.K.elements, self.gamma))

    def is_functional(self) -> bool:
        """True when gamma is the graph of a map ``H -> K``."""
        return len(self.gamma) == len(self.H)

    def is_bijective(self) -> bool:
        return len(self.gamma) == len(self.H) == len(self.K)

    def as_map(self) -> dict[int, int]:
        if not self.is_functional():
            raise InvalidGroupData("gamma is not a function graph")
        return dict(self.gamma)


def group_data_from_pairs(G: FiniteGroup, pairs: Iterable[tuple[int, int]]) -> GroupData:
    """Close ``pairs`` to a subgroup of ``G x G`` and take its projections as ``H`` and ``K``."""
    span = {(G.identity, G.identity)}
    seeds = list(pairs)
    frontier = list(span)
    while frontier:
        a, b = frontier.pop()
        for c, d in seeds:
            p = (G.mul[a][c], G.mul[b][d])
            if p not in span:
                span.add(p)
                frontier.append(p)
    H = Subgroup(G, tuple({h for h, _ in span}))
    K = Subgroup(G, tuple({k for _, k in span}))
    return GroupData(G, H, K, frozenset(span))


def graph_data(G: FiniteGroup, mapping: dict[int, int]) -> GroupData:
    """Group data whose gamma is the graph of the homomorphism ``mapping: H -> K``."""
    H = Subgroup(G, tuple(mapping))
    K = Subgroup(G, tuple(set(mapping.values())))
    return GroupData(G, H, K, frozenset(mapping.items()))


@dataclass(frozen=True, eq=False)
class PointedBimodule:
    bimodule: Bimodule
    point: int

    def __post_init__(self):
        if not 0 <= self.point < self.bimodule.carrier_size:
            raise InvalidBimodule(f"point {self.point} not in carrier")


def from_group_data(data: GroupData) -> PointedBimodule:
    """Irreducible bimodule of classes ``[g, h]`` of ``G x G``, pointed at ``[1, 1]``.

    ``(g1, h1)`` and ``(g2, h2)`` are identified when
    ``(g2^-1 g1, h2 h1^-1)`` lies in gamma, so each class is an orbit of
    gamma acting by ``(c, d): (g, h) -> (g c^-1, d h)``.
    """
    G = data.group
    n = G.order
    cls = [-1] * (n * n)
    reps: list[tuple[int, int]] = []
    for g1, h1 in product(G.elements, repeat=2):
        if cls[g1 * n + h1] != -1:
            continue
        idx = len(reps)
        reps.append((g1, h1))  # lexicographically minimal pair of its class
        for c, d in data.gamma:
            cls[G.mul[g1][G.inv[c]] * n + G.mul[d][h1]] = idx
    size = len(reps)
    left = tuple(
        tuple(cls[G.mul[g][a] * n + b] for (a, b) in reps) for g in G.elements
    )
    right = tuple(
        tuple(cls[a * n + G.mul[b][g]] for g in G.elements) for (a, b) in reps
    )
    labels = tuple(f"[{G.label(a)},{G.label(b)}]" for a, b in reps)
    bim = Bimodule(G, size, left, right, labels)
    return PointedBimodule(bim, cls[G.identity * n + G.identity])


def extract_group_data(pb: PointedBimodule) -> GroupData:
    b, x = pb.bimodule, pb.point
    G = b.group
    x_right = {b.right[x][g] for g in G.elements}
    x_left = {b.left[g][x] for g in G.elements}
    H = Subgroup(G, tuple(g for g in G.elements if b.left[g][x] in x_right))
    K = Subgroup(G, tuple(g for g in G.elements if b.right[x][g] in x_left))
    gamma = frozenset(
        (g, h) for g in H.elements for h in K.elements if b.left[g][x] == b.right[x][h]
    )
    return GroupData(G, H, K, gamma)


def conjugate_group_data(d1: GroupData, d2: GroupData) -> tuple[int, int] | None:
    """First ``(a, b)`` in lexicographic order conjugating ``d1`` onto ``d2``, else None.

    Conjugation is ``h -> a^-1 h a`` on the first coordinate and
    ``k -> b^-1 k b`` on the second.
    """
    G = d1.group
    if d2.group is not G:
        raise InvalidGroupData("group data over different groups")
    if len(d1.H) != len(d2.H) or len(d1.K) != len(d2.K) or len(d1.gamma) != len(d2.gamma):
        return None
    for a in G.elements:
        if d1.H.conjugate(a) != d2.H:
            continue
        for b in G.elements:
            if d1.K.conjugate(b) != d2.K:
                continue
            if all((G.conj(h, a), G.conj(k, b)) in d2.gamma for h, k in d1.gamma):
                return a, b
    return None


@dataclass(frozen=True)
class GoursatForm:
    """``gamma`` seen as an isomorphism ``H/N_H -> K/N_K`` between coset representatives."""

    N_H: Subgroup
    N_K: Subgroup
    theta: dict[int, int]

    def quotient_order(self) -> int:
        return len(self.theta)


def goursat_form(data: GroupData) -> GoursatForm:
    G = data.group
    e = G.identity
    N_H = Subgroup(G, tuple(h for h, k in data.gamma if k == e))
    N_K = Subgroup(G, tuple(k for h, k in data.gamma if h == e))
    if not N_H.is_normal_in(data.H) or not N_K.is_normal_in(data.K):
        raise InvalidGroupData("kernel parts are not normal")

    def rep(g: int, N: Subgroup) -> int:
        return min(G.mul[g][n] for n in N.elements)

    theta: dict[int, int] = {}
    for h, k in data.gamma:
        rh, rk = rep(h, N_H), rep(k, N_K)
        if theta.setdefault(rh, rk) != rk:
            raise InvalidGroupData("gamma does not induce a map of quotients")
    if len(set(theta.values())) != len(theta) or len(theta) * len(N_K) != len(data.K):
        raise InvalidGroupData("induced quotient map is not bijective")
    for a, b in product(theta, repeat=2):
        if theta[rep(G.mul[a][b], N_H)] != rep(G.mul[theta[a]][theta[b]], N_K):
            raise InvalidGroupData("induced quotient map is not multiplicative")
    return GoursatForm(N_H, N_K, theta)


@dataclass(frozen=True)
class BimoduleFlags:
    right_free: bool
    left_free: bool
    bifree: bool
    irreducible: bool
    orbit_count: int


def two_sided_orbits(b: Bimodule) -> list[list[int]]:
    seen: set[int] = set()
    orbits = []
    for x in range(b.carrier_size):
        if x not in seen:
            orb = sorted(b.two_sided_orbit(x))
            seen.update(orb)
            orbits.append(orb)
    return orbits


def classify(b: Bimodule) -> BimoduleFlags:
    G = b.group
    e = G.identity
    right_free = all(
        b.right[x][g] != x for x in range(b.carrier_size) for g in G.elements if g != e
    )
    left_free = all(
        b.left[g][x] != x for x in range(b.carrier_size) for g in G.elements if g != e
    )
    orbits = two_sided_orbits(b)
    return BimoduleFlags(
        right_free=right_free,
        left_free=left_free,
        bifree=right_free and left_free,
        irreducible=len(orbits) == 1,
        orbit_count=len(orbits),
    )


def basis_transversal(b: Bimodule) -> list[int]:
    """Minimal carrier index in each right ``G``-orbit of a right-free bimodule."""
    if not classify(b).right_free:
        raise NotRightFree("right action has a nontrivial stabilizer")
    return [orb[0] for orb in b.right_orbits()]


def decompose_on_basis(b: Bimodule, basis: Sequence[int]) -> dict[int, tuple[int, int]]:
    """Map each carrier element ``y`` to ``(i, g)`` with ``y = basis[i] . g``."""
    out: dict[int, tuple[int, int]] = {}
    for i, e in enumerate(basis):
        for g in b.group.elements:
            y = b.right[e][g]
            if y in out:
                raise NotRightFree(f"element {y} decomposes twice on the basis")
            out[y] = (i, g)
    return out
