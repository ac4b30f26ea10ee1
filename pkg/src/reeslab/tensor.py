"""The tensor monoid ``T(X)`` of a bimodule ``X``.

An element of length ``n >= 1`` is a class of tuples ``(x1, ..., xn)`` where
two tuples are equal when an interleaver chain ``g1..g_{n-1}`` carries one to
the other::

    y1 = x1 g1,  y2 = g1^-1 x2 g2,  ...,  yn = g_{n-1}^-1 xn

Length-0 elements are the units (group elements).  Every element carries its
canonical form, the lexicographically least tuple in its class, so equality
and hashing are by canonical form.  :meth:`TensorMonoid.chain_search` decides
the same relation by direct search and is kept as an independent oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Mapping, Sequence

from .bimodule import Bimodule
from .errors import (
    BadIndex,
    BimoduleMismatch,
    NotAMorphism,
    ProductsNotEqual,
    WellDefinednessViolation,
)

AUDIT_MAX_LENGTH = 6


@dataclass(frozen=True, eq=False)
class TensorElement:
    monoid: "TensorMonoid"
    unit: int | None
    raw: tuple[int, ...]
    canon: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.canon)

    def is_unit(self) -> bool:
        return self.unit is not None

    def key(self):
        return (self.unit, self.canon)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.monoid is other.monoid and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        return self.monoid.mul(self, other)

    def __repr__(self) -> str:
        return f"TensorElement({self.monoid.render(self)})"


@dataclass(frozen=True)
class Equidivision:
    """Outcome of :meth:`TensorMonoid.equidivide`.

    ``side == "left"``: ``r = p u`` and ``q = u s``.
    ``side == "right"``: ``p = r v`` and ``s = v q``.
    """

    side: str
    witness: TensorElement


@dataclass(frozen=True)
class DivisorChainAudit:
    length: int
    chain: tuple[tuple, ...]
    representations: int

    @property
    def ok(self) -> bool:
        return len(self.chain) - 1 == self.length


class TensorMonoid:
    """Levi monoid ``T(X)`` over ``bimodule``."""

    def __init__(self, bimodule: Bimodule, name: str = ""):
        self.bimodule = bimodule
        self.group = bimodule.group
        self.name = name
        G, b = self.group, bimodule
        # min of each right orbit and the elements achieving it
        self._min_right = []
        self._argmin_right = []
        for v in range(b.carrier_size):
            row = b.right[v]
            m = min(row)
            self._min_right.append(m)
            self._argmin_right.append(tuple(g for g in G.elements if row[g] == m))
        self._by_length: dict[int, list[TensorElement]] = {}
        self.r_class_key = lru_cache(maxsize=None)(self._r_class_key)

    # construction -----------------------------------------------------------

    def unit(self, g: int) -> TensorElement:
        self.group.check(g)
        return TensorElement(self, g, (), ())

    @property
    def identity(self) -> TensorElement:
        return self.unit(self.group.identity)

    def element(self, xs: Sequence[int]) -> TensorElement:
        xs = tuple(int(x) for x in xs)
        if not xs:
            return self.identity
        for x in xs:
            if not 0 <= x < self.bimodule.carrier_size:
                raise IndexError(f"{x} not in carrier")
        return TensorElement(self, None, xs, self.canonical(xs))

    def _carry_sweep(self, xs: tuple[int, ...]):
        """Run the staged minimisation over positions ``0..n-2``.

        Returns the minimal prefix and the set of carries ``c`` such that the
        remaining position reads ``c . x_n``.
        """
        G, b = self.group, self.bimodule
        carries = {G.identity}
        out = []
        for x in xs[:-1]:
            best = None
            nxt: set[int] = set()
            for c in carries:
                v = b.left[c][x]
                m = self._min_right[v]
                if best is None or m < best:
                    best, nxt = m, set()
                if m == best:
                    nxt.update(G.inv[g] for g in self._argmin_right[v])
            out.append(best)
            carries = nxt
        return out, carries

    def canonical(self, xs: tuple[int, ...]) -> tuple[int, ...]:
        if len(xs) <= 1:
            return tuple(xs)
        out, carries = self._carry_sweep(xs)
        b = self.bimodule
        out.append(min(b.left[c][xs[-1]] for c in carries))
        return tuple(out)

    def _r_class_key(self, xs: tuple[int, ...]) -> tuple[int, ...]:
        """Canonical representative of the principal right ideal ``xS``."""
        if not xs:
            return ()
        out, carries = self._carry_sweep(xs)
        b = self.bimodule
        out.append(min(self._min_right[b.left[c][xs[-1]]] for c in carries))
        return tuple(out)

    # arithmetic -------------------------------------------------------------

    def _check(self, *elems: TensorElement) -> None:
        for a in elems:
            if a.monoid is not self:
                raise BimoduleMismatch("elements belong to different tensor monoids")

    def mul(self, a: TensorElement, b: TensorElement) -> TensorElement:
        self._check(a, b)
        G, bm = self.group, self.bimodule
        if a.unit is not None and b.unit is not None:
            return self.unit(G.mul[a.unit][b.unit])
        if a.unit is not None:
            xs = b.canon
            return self.element((bm.left[a.unit][xs[0]],) + xs[1:])
        if b.unit is not None:
            xs = a.canon
            return self.element(xs[:-1] + (bm.right[xs[-1]][b.unit],))
        return self.element(a.canon + b.canon)

    def product(self, *elems: TensorElement) -> TensorElement:
        out = self.identity
        for e in elems:
            out = self.mul(out, e)
        return out

    def equal(self, a: TensorElement, b: TensorElement) -> bool:
        self._check(a, b)
        return a.key() == b.key()

    def chain_search(self, xs: Sequence[int], ys: Sequence[int]) -> list[int] | None:
        """Interleaver chain carrying tuple ``xs`` to ``ys``, found by direct search."""
        xs, ys = tuple(xs), tuple(ys)
        if len(xs) != len(ys):
            return None
        n = len(xs)
        if n == 0:
            return []
        if n == 1:
            return [] if xs == ys else None
        G, b = self.group, self.bimodule
        dead: set[tuple[int, int]] = set()

        def search(i: int, carry: int) -> list[int] | None:
            # position i reads carry . x_i . g_i
            v = b.left[carry][xs[i]]
            if i == n - 1:
                return [] if v == ys[i] else None
            if (i, carry) in dead:
                return None
            for g in G.elements:
                if b.right[v][g] == ys[i]:
                    rest = search(i + 1, G.inv[g])
                    if rest is not None:
                        return [g] + rest
            dead.add((i, carry))
            return None

        return search(0, G.identity)

    def tensor_equal(self, a: TensorElement, b: TensorElement, *, oracle: bool = False) -> bool:
        self._check(a, b)
        if not oracle:
            return a.key() == b.key()
        if a.unit is not None or b.unit is not None:
            return a.unit == b.unit and a.unit is not None
        return self.chain_search(a.raw, b.raw) is not None

    def apply_chain(self, xs: Sequence[int], chain: Sequence[int]) -> tuple[int, ...]:
        G, b = self.group, self.bimodule
        if len(chain) != max(len(xs) - 1, 0):
            raise ValueError("chain length must be one less than tuple length")
        out = []
        carry = G.identity
        for i, x in enumerate(xs):
            v = b.left[carry][x]
            if i < len(chain):
                v = b.right[v][chain[i]]
                carry = G.inv[chain[i]]
            out.append(v)
        return tuple(out)

    def random_representation(self, a: TensorElement, rng: random.Random) -> tuple[int, ...]:
        if a.unit is not None:
            raise ValueError("units have a single representation")
        chain = [rng.randrange(self.group.order) for _ in range(a.length - 1)]
        return self.apply_chain(a.canon, chain)

    # enumeration ------------------------------------------------------------

    def elements_of_length(self, n: int) -> list[TensorElement]:
        if n in self._by_length:
            return self._by_length[n]
        if n == 0:
            out = [self.unit(g) for g in self.group.elements]
        elif n == 1:
            out = [self.element((x,)) for x in range(self.bimodule.carrier_size)]
        else:
            seen = {}
            for c in self.elements_of_length(n - 1):
                for x in range(self.bimodule.carrier_size):
                    e = self.element(c.canon + (x,))
                    seen.setdefault(e.canon, e)
            out = [seen[k] for k in sorted(seen)]
        self._by_length[n] = out
        return out

    def elements_up_to(self, n: int) -> list[TensorElement]:
        return [e for k in range(n + 1) for e in self.elements_of_length(k)]

    # length -----------------------------------------------------------------

    def normalized_length(self, a: TensorElement, *, audit: bool = False):
        """Length of ``a``; with ``audit=True`` also count the principal right ideals above ``aS``.

        The audit walks every representation ``(y1..yn)`` of ``a``, takes each
        prefix as a left divisor, and dedupes the ideals ``pS`` by their
        canonical right-ideal key.  It returns a :class:`DivisorChainAudit`.
        """
        self._check(a)
        if not audit:
            return a.length
        n = a.length
        if n > AUDIT_MAX_LENGTH:
            raise ValueError(f"divisor-chain audit is capped at length {AUDIT_MAX_LENGTH}")
        ideals: set[tuple[int, ...]] = {()}  # the whole monoid, from unit divisors
        if n == 0:
            return DivisorChainAudit(0, ((),), 1)
        G, b = self.group, self.bimodule
        xs = a.canon
        reps = 0

        def walk(i: int, carry: int, prefix: tuple[int, ...]) -> None:
            nonlocal reps
            v = b.left[carry][xs[i]]
            if i == n - 1:
                ideals.add(self.r_class_key(prefix + (v,)))
                reps += 1
                return
            # prefix ending here, closed by any right unit
            ideals.add(self.r_class_key(prefix + (v,)))
            for g in G.elements:
                walk(i + 1, G.inv[g], prefix + (b.right[v][g],))

        walk(0, G.identity, ())
        chain = sorted(ideals, key=len)
        # a chain of right ideals: each key must divide the next longer one
        for shorter, longer in zip(chain, chain[1:]):
            if len(shorter) == len(longer) or self.r_class_key(longer[: len(shorter)]) != shorter:
                raise AssertionError(f"right ideals above {xs} are not linearly ordered")
        return DivisorChainAudit(n, tuple(chain), reps)

    # equidivisibility ---------------------------------------------------------

    def equidivide(
        self, p: TensorElement, q: TensorElement, r: TensorElement, s: TensorElement
    ) -> Equidivision:
        """Given ``pq = rs``, return ``u`` with ``r = pu, q = us`` or ``v`` with ``p = rv, s = vq``."""
        self._check(p, q, r, s)
        a, bb = self.mul(p, q), self.mul(r, s)
        if a != bb:
            raise ProductsNotEqual("p*q and r*s are different elements")
        if p.length > r.length:
            return Equidivision("right", self._left_witness(r, s, p, q))
        return Equidivision("left", self._left_witness(p, q, r, s))

    def _left_witness(self, p, q, r, s) -> TensorElement:
        G, b = self.group, self.bimodule
        m, n = p.length, r.length
        L = m + q.length
        if m == 0:
            return self.mul(self.unit(G.inv[p.unit]), r)
        xs = p.canon + q.canon if q.unit is None else p.canon[:-1] + (b.right[p.canon[-1]][q.unit],)
        if n == L:
            # s is a unit h, and r = (p q) h^-1
            h_inv = G.inv[s.unit]
            if m == L:
                return self.mul(q, self.unit(h_inv))
            tail = xs[m:]
            return self.element(tail[:-1] + (b.right[tail[-1]][h_inv],))
        ys = r.canon + s.canon if s.unit is None else r.canon[:-1] + (b.right[r.canon[-1]][s.unit],)
        chain = self.chain_search(xs, ys)
        if chain is None:
            raise ProductsNotEqual("no interleaver chain between the two products")
        g_n = chain[n - 1]
        if n == m:
            return self.unit(g_n)
        tail = xs[m:n]
        return self.element(tail[:-1] + (b.right[tail[-1]][g_n],))

    # rendering --------------------------------------------------------------

    def render(self, a: TensorElement) -> str:
        if a.unit is not None:
            return self.group.label(a.unit)
        return "*".join(self.bimodule.label(x) for x in a.canon)

    def parse(self, item) -> TensorElement:
        """Accept a list of carrier labels/indices, a ``*``-joined string, a group label (unit) or one carrier label."""
        if isinstance(item, (list, tuple)):
            return self.element([self.bimodule.index(x) for x in item])
        if isinstance(item, str) and "*" in item:
            return self.element([self.bimodule.index(x) for x in item.split("*")])
        try:
            return self.unit(self.group.index(item))
        except BadIndex:
            # a single carrier label
            return self.element([self.bimodule.index(item)])


class MorphismExtension:
    """The monoid homomorphism ``T(X) -> target`` determined by a bimodule morphism.

    ``alpha`` maps the unit group of ``T(X)`` into ``target.group``;
    ``beta`` maps carrier points to target elements.  The target only needs
    ``unit(g)``, ``mul(a, b)``, ``equal(a, b)`` and ``identity``.
    """

    def __init__(self, source: Bimodule, alpha: Mapping[int, int] | Sequence[int], beta: Sequence,
                 target, *, check: bool = True):
        self.source = source
        self.alpha = [alpha[g] for g in source.group.elements]
        self.beta = list(beta)
        self.target = target
        if len(self.beta) != source.carrier_size:
            raise ValueError("beta must give one image per carrier point")
        if check:
            self._check_morphism()

    def _check_morphism(self) -> None:
        G, H, t = self.source.group, self.target.group, self.target
        for g, h in product(G.elements, repeat=2):
            if self.alpha[G.mul[g][h]] != H.mul[self.alpha[g]][self.alpha[h]]:
                raise NotAMorphism(("alpha", g, h))
        units = [t.unit(self.alpha[g]) for g in G.elements]
        for g1, u, g2 in product(G.elements, range(self.source.carrier_size), G.elements):
            lhs = self.beta[self.source.act(g1, u, g2)]
            rhs = t.mul(t.mul(units[g1], self.beta[u]), units[g2])
            if not t.equal(lhs, rhs):
                raise NotAMorphism((g1, u, g2))

    def image_of_tuple(self, xs: Sequence[int]):
        t = self.target
        out = t.identity
        for x in xs:
            out = t.mul(out, self.beta[x])
        return out

    def __call__(self, a: TensorElement):
        if a.unit is not None:
            return self.target.unit(self.alpha[a.unit])
        return self.image_of_tuple(a.canon)

    def assert_well_defined(self, a: TensorElement, samples: int = 100, seed: int = 0) -> None:
        """Map random representations of ``a`` and require identical images."""
        if a.unit is not None:
            return
        rng = random.Random(seed)
        ref = self.image_of_tuple(a.canon)
        for _ in range(samples):
            ys = a.monoid.random_representation(a, rng)
            if not self.target.equal(self.image_of_tuple(ys), ref):
                raise WellDefinednessViolation(f"{ys} and {a.canon} have different images")


def extend_morphism(source: Bimodule, alpha, beta, element: TensorElement, target,
                    samples: int = 100, seed: int = 0):
    """Image of ``element`` under the homomorphism extending ``(alpha, beta)``."""
    if element.monoid.bimodule is not source:
        raise BimoduleMismatch("element is not over the source bimodule")
    ext = MorphismExtension(source, alpha, beta, target)
    ext.assert_well_defined(element, samples=samples, seed=seed)
    return ext(element)


def free_monoid(letters: Sequence[str]) -> TensorMonoid:
    """Tensor monoid of the trivial-group bimodule on ``letters``: the free monoid."""
    from .bimodule import trivial_bimodule
    from .groups import group_from_mul_table

    G = group_from_mul_table([[0]], ["1"], name="C1")
    return TensorMonoid(trivial_bimodule(G, len(letters), letters), name="free")


def orbit_collapse(source: Bimodule) -> tuple[TensorMonoid, Callable[[TensorElement], TensorElement]]:
    """Map ``T(X)`` onto the free monoid on the two-sided orbits of ``X``."""
    from .bimodule import two_sided_orbits

    orbits = two_sided_orbits(source)
    label_of = {}
    for i, orb in enumerate(orbits):
        for x in orb:
            label_of[x] = i
    F = free_monoid([f"o{i}" for i in range(len(orbits))])
    alpha = [F.group.identity] * source.group.order
    beta = [F.element((label_of[x],)) for x in range(source.carrier_size)]
    ext = MorphismExtension(source, alpha, beta, F)
    return F, ext
