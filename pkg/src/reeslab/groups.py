"""Finite groups on element indices, subgroups, cosets and partial homomorphisms.

Elements of a :class:`FiniteGroup` are the integers ``0..order-1``; the group
is given by its multiplication table.  Everything here is immutable.

The :class:`GroupOracle` contract at the bottom is what the HNN engine in
:mod:`reeslab.universal` talks to, so that Britton reduction runs unchanged
over a finite group or over the integers.
"""

from __future__ import annotations

import abc
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadIndex,
    NoIdentity,
    NotAHomomorphism,
    NotAPermutation,
    NotAssociative,
    NotLatinSquare,
    OrderLimitExceeded,
)

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 64
DEFAULT_ORDER_LIMIT = 10080


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    name: str = ""
    _label_index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.labels is not None:
            self._label_index.update({lab: i for i, lab in enumerate(self.labels)})

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    @property
    def elements(self) -> range:
        return range(len(self.mul))

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def prod(self, *elems: int) -> int:
        out = self.identity
        for e in elems:
            out = self.mul[out][e]
        return out

    def conj(self, g: int, a: int) -> int:
        """Return ``a^-1 g a``."""
        return self.mul[self.mul[self.inv[a]][g]][a]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        out = self.identity
        for _ in range(k):
            out = self.mul[out][g]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def label(self, g: int) -> str:
        if self.labels is None:
            return str(g)
        return self.labels[g]

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            self.check(label)
            return label
        if label in self._label_index:
            return self._label_index[label]
        if self.labels is None and label.lstrip("-").isdigit():
            return self.check(int(label))
        raise BadIndex(f"unknown element {label!r} in group {self.name or '?'}")

    def check(self, g: int) -> int:
        if not isinstance(g, int) or not 0 <= g < len(self.mul):
            raise BadIndex(f"{g!r} is not an element index of a group of order {len(self.mul)}")
        return g

    def same_table(self, other: "FiniteGroup") -> bool:
        return self.mul == other.mul and self.identity == other.identity

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(self.elements))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


def _find_identity(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][g] == g and table[g][e] == g for g in range(n)):
            return e
    raise NoIdentity("no two-sided identity in table")


def _generating_set(table, identity) -> list[int]:
    """Greedy generating set, used for Light's associativity test on big tables."""
    n = len(table)
    span = {identity}
    gens: list[int] = []
    for g in range(n):
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        span.add(g)
        frontier.append(g)
        while frontier:
            x = frontier.pop()
            for s in gens:
                for y in (table[x][s], table[s][x]):
                    if y not in span:
                        span.add(y)
                        frontier.append(y)
    return gens


def group_from_mul_table(
    table: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    name: str = "",
) -> FiniteGroup:
    """Validate a Cayley table and wrap it as a :class:`FiniteGroup`.

    Raises the first violated law: :class:`NotLatinSquare`,
    :class:`NoIdentity` or :class:`NotAssociative` (with a witness triple).
    """
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise NotLatinSquare("table must be square and non-empty")
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            raise NotLatinSquare(f"row {i} is not a permutation")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise NotLatinSquare(f"column {j} is not a permutation")
    e = _find_identity(table)
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        middles: Iterable[int] = range(n)
    else:
        middles = _generating_set(table, e)
    for b in middles:
        for a, c in product(range(n), repeat=2):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise NotAssociative((a, b, c))
    inv = [0] * n
    for g in range(n):
        inv[g] = table[g].index(e)
    if labels is not None and len(labels) != n:
        raise ValueError("need one label per element")
    return FiniteGroup(
        mul=tuple(tuple(int(x) for x in row) for row in table),
        identity=e,
        inv=tuple(inv),
        labels=tuple(labels) if labels is not None else None,
        name=name,
    )


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p*q)(i) = p(q(i)): apply q first
    return tuple(p[i] for i in q)


def cycle_notation(perm: Sequence[int]) -> str:
    seen: set[int] = set()
    cycles = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def group_from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    *,
    limit: int = DEFAULT_ORDER_LIMIT,
    name: str = "",
    labels: Sequence[str] | None = None,
) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """Close ``generators`` under composition.

    Elements are numbered in breadth-first generation order with the identity
    first.  Returns the group together with the permutation of each element.
    Product convention: ``g*h`` applies ``h`` first.
    """
    gens = []
    for p in generators:
        p = tuple(int(x) for x in p)
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise NotAPermutation(f"{list(p)} is not a permutation of 0..{degree - 1}")
        gens.append(p)
    ident = tuple(range(degree))
    perms = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = _compose(x, s)
            if y not in index:
                if len(perms) >= limit:
                    raise OrderLimitExceeded(f"closure exceeds {limit} elements")
                index[y] = len(perms)
                perms.append(y)
                queue.append(y)
    n = len(perms)
    table = [[index[_compose(perms[a], perms[b])] for b in range(n)] for a in range(n)]
    inv = [0] * n
    for a in range(n):
        inv[a] = table[a].index(0)
    if labels is None:
        labels = [cycle_notation(p) for p in perms]
    group = FiniteGroup(
        mul=tuple(tuple(r) for r in table),
        identity=0,
        inv=tuple(inv),
        labels=tuple(labels),
        name=name,
    )
    return group, perms


def cyclic_group(n: int, gen: str = "r") -> FiniteGroup:
    labels = ["1"] + [gen if k == 1 else f"{gen}{k}" for k in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return group_from_mul_table(table, labels, name=f"C{n}")


def symmetric_group(degree: int) -> FiniteGroup:
    if degree < 2:
        return group_from_permutations(max(degree, 1), [], name=f"S{degree}")[0]
    gens = [
        tuple([1, 0] + list(range(2, degree))),
        tuple(list(range(1, degree)) + [0]),
    ]
    return group_from_permutations(degree, gens, name=f"S{degree}")[0]


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Elements are numbered ``a * |g2| + b`` for the pair ``(a, b)``."""
    n2 = g2.order
    n = g1.order * n2
    table = [
        [g1.mul[a // n2][b // n2] * n2 + g2.mul[a % n2][b % n2] for b in range(n)]
        for a in range(n)
    ]
    labels = [f"({g1.label(a // n2)},{g2.label(a % n2)})" for a in range(n)]
    return group_from_mul_table(table, labels, name=f"{g1.name}x{g2.name}")


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))
        object.__setattr__(self, "_set", frozenset(self.elements))

    def __contains__(self, g: int) -> bool:
        return g in self._set

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    @property
    def as_set(self) -> frozenset[int]:
        return self._set

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def conjugate(self, a: int) -> "Subgroup":
        """``a^-1 H a``."""
        return Subgroup(self.parent, tuple(self.parent.conj(h, a) for h in self.elements))

    def is_normal_in(self, ambient: "Subgroup | FiniteGroup") -> bool:
        amb = ambient.elements if isinstance(ambient, (Subgroup, FiniteGroup)) else ambient
        return all(self.parent.conj(h, a) in self for a in amb for h in self.elements)

    def is_subgroup(self) -> bool:
        G = self.parent
        return (
            G.identity in self
            and all(G.inv[h] in self for h in self.elements)
            and all(G.mul[a][b] in self for a in self.elements for b in self.elements)
        )

    def labels(self) -> list[str]:
        return [self.parent.label(h) for h in self.elements]


def subgroup_closure(G: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``seeds``."""
    seeds = [G.check(s) for s in seeds]
    span = {G.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for s in seeds:
            y = G.mul[x][s]
            if y not in span:
                span.add(y)
                frontier.append(y)
    # finite group: closure under products with seeds already contains inverses
    return Subgroup(G, tuple(span))


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, found by closing cyclic subgroups under joins."""
    cyclic = {subgroup_closure(G, [g]).as_set for g in G.elements}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        H = frontier.pop()
        for C in cyclic:
            if C <= H:
                continue
            J = subgroup_closure(G, H | C).as_set
            if J not in found:
                found.add(J)
                frontier.append(J)
    return sorted((Subgroup(G, tuple(s)) for s in found), key=lambda s: (len(s), s.elements))


@dataclass(frozen=True)
class Cosets:
    """Left cosets ``g_i H``; ``transversal[0]`` is the identity."""

    group: FiniteGroup
    subgroup: Subgroup
    transversal: tuple[int, ...]
    coset_of: tuple[int, ...]

    def decompose(self, g: int) -> tuple[int, int]:
        """Return ``(i, h)`` with ``g = transversal[i] * h`` and ``h`` in the subgroup."""
        i = self.coset_of[g]
        G = self.group
        return i, G.mul[G.inv[self.transversal[i]]][g]

    def representative(self, g: int) -> int:
        return self.transversal[self.coset_of[g]]

    def __len__(self) -> int:
        return len(self.transversal)


def left_cosets(G: FiniteGroup, H: Subgroup) -> Cosets:
    coset_of = [-1] * G.order
    reps: list[int] = []

    def claim(rep: int) -> None:
        idx = len(reps)
        reps.append(rep)
        for h in H.elements:
            coset_of[G.mul[rep][h]] = idx

    claim(G.identity)
    for g in G.elements:
        if coset_of[g] == -1:
            claim(g)
    return Cosets(G, H, tuple(reps), tuple(coset_of))


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """``G/N`` for a normal subgroup ``N``, plus the projection ``G -> G/N``."""
    if not N.is_normal_in(G):
        raise ValueError("quotient by a non-normal subgroup")
    cos = left_cosets(G, N)
    k = len(cos)
    table = [[cos.coset_of[G.mul[cos.transversal[a]][cos.transversal[b]]] for b in range(k)]
             for a in range(k)]
    labels = [G.label(r) if N.is_trivial() else f"{G.label(r)}N" for r in cos.transversal]
    Q = group_from_mul_table(table, labels, name=f"{G.name}/N" if G.name else "")
    return Q, cos.coset_of


@dataclass(frozen=True)
class PartialHom:
    domain: Subgroup
    codomain: FiniteGroup
    table: Mapping[int, int]
    image: Subgroup
    injective: bool

    def __call__(self, a: int) -> int:
        return self.table[a]

    def inverse(self, b: int) -> int:
        if not self.injective:
            raise ValueError("partial homomorphism is not injective")
        for a, v in self.table.items():
            if v == b:
                return a
        raise KeyError(b)

    def kernel(self) -> Subgroup:
        e = self.codomain.identity
        return Subgroup(self.domain.parent, tuple(a for a, v in self.table.items() if v == e))

    def is_surjective_onto(self, target: Subgroup | FiniteGroup) -> bool:
        return set(self.table.values()) == set(target.elements)


def partial_hom(
    domain: Subgroup,
    images: Mapping[int, int],
    codomain: FiniteGroup | None = None,
) -> PartialHom:
    """Build a homomorphism ``domain -> codomain`` from values on generators or on all elements."""
    G = domain.parent
    C = codomain if codomain is not None else G
    for a in images:
        if a not in domain:
            raise BadIndex(f"{a} is not in the domain")
        C.check(images[a])
    table = {G.identity: C.identity}
    gens = [a for a in images if a != G.identity]
    if images.get(G.identity, C.identity) != C.identity:
        raise NotAHomomorphism((G.identity, G.identity))
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = G.mul[x][s]
            v = C.mul[table[x]][images[s]]
            if y in table:
                if table[y] != v:
                    raise NotAHomomorphism((x, s))
            else:
                table[y] = v
                frontier.append(y)
    if set(table) != domain.as_set:
        raise ValueError("images do not determine the map on the whole domain")
    for a in images:
        if table[a] != images[a]:
            raise NotAHomomorphism((a, G.identity))
    for a, b in product(domain.elements, repeat=2):
        if table[G.mul[a][b]] != C.mul[table[a]][table[b]]:
            raise NotAHomomorphism((a, b))
    image = Subgroup(C, tuple(set(table.values())))
    return PartialHom(domain, C, dict(table), image, len(image) == len(domain))


# ---------------------------------------------------------------------------
# group oracles for the HNN engine


class GroupOracle(abc.ABC):
    """Arithmetic in a group ``G`` with associated subgroups ``A, B`` and ``phi: A -> B``.

    ``rep_mod_A(g)`` returns ``(r, a)`` with ``g = r*a``, ``r`` drawn from a
    fixed left transversal of ``A`` whose identity-coset representative is the
    identity.  ``rep_mod_B`` likewise.
    """

    phi_injective: bool = True

    @property
    @abc.abstractmethod
    def identity(self): ...

    @abc.abstractmethod
    def multiply(self, g, h): ...

    @abc.abstractmethod
    def inverse(self, g): ...

    def equals(self, g, h) -> bool:
        return g == h

    @abc.abstractmethod
    def in_A(self, g) -> bool: ...

    @abc.abstractmethod
    def in_B(self, g) -> bool: ...

    @abc.abstractmethod
    def apply_phi(self, a): ...

    @abc.abstractmethod
    def apply_phi_inv(self, b): ...

    @abc.abstractmethod
    def rep_mod_A(self, g) -> tuple: ...

    @abc.abstractmethod
    def rep_mod_B(self, g) -> tuple: ...

    @abc.abstractmethod
    def parse(self, token: str): ...

    @abc.abstractmethod
    def format(self, g) -> str: ...

    def random_element(self, rng): ...


class FiniteOracle(GroupOracle):
    """Oracle for a finite group with ``phi`` a partial homomorphism ``A -> B``."""

    def __init__(self, phi: PartialHom):
        self.phi = phi
        self.group = phi.domain.parent
        if phi.codomain is not self.group:
            raise ValueError("phi must map into its own parent group")
        self.A = phi.domain
        self.B = phi.image
        self.phi_injective = phi.injective
        self._cos_A = left_cosets(self.group, self.A)
        self._cos_B = left_cosets(self.group, self.B)
        self._phi_inv = {v: a for a, v in phi.table.items()} if phi.injective else None

    @property
    def identity(self):
        return self.group.identity

    def multiply(self, g, h):
        return self.group.mul[g][h]

    def inverse(self, g):
        return self.group.inv[g]

    def in_A(self, g):
        return g in self.A

    def in_B(self, g):
        return g in self.B

    def apply_phi(self, a):
        return self.phi.table[a]

    def apply_phi_inv(self, b):
        if self._phi_inv is None:
            raise ValueError("phi is not injective")
        return self._phi_inv[b]

    def rep_mod_A(self, g):
        i, a = self._cos_A.decompose(g)
        return self._cos_A.transversal[i], a

    def rep_mod_B(self, g):
        i, b = self._cos_B.decompose(g)
        return self._cos_B.transversal[i], b

    def parse(self, token):
        return self.group.index(token)

    def format(self, g):
        return self.group.label(g)

    def random_element(self, rng):
        return rng.randrange(self.group.order)

    @property
    def transversal_A(self) -> tuple[int, ...]:
        return self._cos_A.transversal


class IntegerOracle(GroupOracle):
    """The integers with ``A = n Z``, ``B = m Z`` and ``phi(n k) = m k``.

    The HNN extension is the Baumslag-Solitar group ``BS(m, n)``; the defining
    relation ``a t = t phi(a)`` reads ``t^-1 n t = m`` additively.
    Python integers are unbounded, so coefficient growth never overflows.
    """

    def __init__(self, m: int, n: int):
        if m == 0 or n == 0:
            raise ValueError("m and n must be nonzero")
        self.m = m
        self.n = n

    @property
    def identity(self):
        return 0

    def multiply(self, g, h):
        return g + h

    def inverse(self, g):
        return -g

    def in_A(self, g):
        return g % self.n == 0

    def in_B(self, g):
        return g % self.m == 0

    def apply_phi(self, a):
        if a % self.n:
            raise ValueError(f"{a} not in A")
        return a // self.n * self.m

    def apply_phi_inv(self, b):
        if b % self.m:
            raise ValueError(f"{b} not in B")
        return b // self.m * self.n

    def rep_mod_A(self, g):
        r = g % abs(self.n)
        return r, g - r

    def rep_mod_B(self, g):
        r = g % abs(self.m)
        return r, g - r

    def parse(self, token):
        return int(token)

    def format(self, g):
        return str(g)

    def random_element(self, rng):
        return rng.randint(-6, 6)
