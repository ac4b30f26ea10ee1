"""Structure of the monoid ``X* G``: Green's relations, property flags, kernel,
Schutzenberger groups and the decomposition into irreducible components.

Most flags are decided at letter level.  The brute-force helpers here
(:class:`GreenOracle`, :func:`kernel_bruteforce`, :func:`right_cancellation_bruteforce`)
work straight from the monoid multiplication and exist to cross-check them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import QuotientIllDefined
from .groups import FiniteGroup, PartialHom, Subgroup, partial_hom, quotient_group
from .selfsim import (
    ReesElement,
    ReesMonoid,
    SelfSimilarAction,
    make_action,
    rees_mul,
    restrict_to_letters,
)

RELATIONS = ("R", "L", "H", "J", "D")


@dataclass(frozen=True)
class GreenResult:
    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


def green(a: SelfSimilarAction, e1: ReesElement, e2: ReesElement, relation: str) -> GreenResult:
    """Decide ``e1 <rel> e2`` from the table criteria.

    Witnesses: R gives ``u`` with ``e1 = e2 u``; L and H give ``k`` with
    ``e1 = k e2``; J and D give ``(k, v)`` with ``e1 = k e2 v``.
    """
    G = a.group
    x, g = e1.word, e1.unit
    y, h = e2.word, e2.unit
    rel = relation.upper()
    if rel == "R":
        if x == y:
            return GreenResult(True, G.mul[G.inv[h]][g])
        return GreenResult(False)
    if rel in ("L", "H"):
        if len(x) != len(y) or (rel == "H" and x != y):
            return GreenResult(False)
        target = G.mul[g][G.inv[h]]
        for k in G.elements:
            ky, kr = a.act_res(k, y)
            if ky == x and kr == target:
                return GreenResult(True, k)
        return GreenResult(False)
    if rel in ("J", "D"):
        if len(x) != len(y):
            return GreenResult(False)
        for k in G.elements:
            ky, kr = a.act_res(k, y)
            if ky == x:
                v = G.mul[G.inv[G.mul[kr][h]]][g]
                return GreenResult(True, (k, v))
        return GreenResult(False)
    raise ValueError(f"unknown relation {relation!r}")


class GreenOracle:
    """Green's relations from the definitions, on elements of length ``<= max_len``.

    Principal ideals are compared as sets of multiples, using every multiplier
    of length ``<= max_len``; longer multipliers cannot land back in range.
    """

    def __init__(self, a: SelfSimilarAction, max_len: int = 2):
        self.action = a
        self.max_len = max_len
        M = ReesMonoid(a)
        self.elements = M.elements_up_to(max_len)
        self.index = {e: i for i, e in enumerate(self.elements)}
        mul = M.mul
        in_range = self.index.__contains__
        self.right: list[frozenset[int]] = []
        self.left: list[frozenset[int]] = []
        self.two: list[frozenset[int]] = []
        for e in self.elements:
            r = {mul(e, s) for s in self.elements}
            l = {mul(s, e) for s in self.elements}
            t = {mul(f, s) for f in l for s in self.elements}
            self.right.append(frozenset(self.index[f] for f in r if in_range(f)))
            self.left.append(frozenset(self.index[f] for f in l if in_range(f)))
            self.two.append(frozenset(self.index[f] for f in t if in_range(f)))

    def relation(self, e1: ReesElement, e2: ReesElement, rel: str) -> bool:
        i, j = self.index[e1], self.index[e2]
        rel = rel.upper()
        if rel == "R":
            return self.right[i] == self.right[j]
        if rel == "L":
            return self.left[i] == self.left[j]
        if rel == "H":
            return self.right[i] == self.right[j] and self.left[i] == self.left[j]
        if rel == "J":
            return self.two[i] == self.two[j]
        if rel == "D":
            # some c with e1 R c and c L e2
            return any(self.right[i] == self.right[c] and self.left[c] == self.left[j]
                       for c in range(len(self.elements)))
        raise ValueError(f"unknown relation {rel!r}")


# ---------------------------------------------------------------------------
# stabilizers


@dataclass(frozen=True)
class StabilizerData:
    word: tuple[int, ...]
    stabilizer: Subgroup
    phi_map: PartialHom

    @property
    def image(self) -> Subgroup:
        return self.phi_map.image


def stabilizer_data(a: SelfSimilarAction, w: Sequence[int]) -> StabilizerData:
    w = tuple(w)
    G = a.group
    table = {}
    for g in G.elements:
        gw, gr = a.act_res(g, w)
        if gw == w:
            table[g] = gr
    stab = Subgroup(G, tuple(table))
    return StabilizerData(w, stab, partial_hom(stab, table))


def letter_orbits(a: SelfSimilarAction) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for x in range(a.alphabet_size):
        if x in seen:
            continue
        orb = sorted({a.act[g][x] for g in a.group.elements})
        seen.update(orb)
        out.append(orb)
    return out


def word_orbit_count(a: SelfSimilarAction, n: int) -> int:
    seen: set[tuple[int, ...]] = set()
    count = 0
    for w in a.words(n):
        if w in seen:
            continue
        count += 1
        seen.update(a.act_word(g, w) for g in a.group.elements)
    return count


# ---------------------------------------------------------------------------
# kernel


def kernel(a: SelfSimilarAction) -> Subgroup:
    """Largest ``N`` with: ``g`` in ``N`` iff ``g`` fixes every letter and every ``g|_x`` lies in ``N``."""
    G = a.group
    X = range(a.alphabet_size)
    N = {g for g in G.elements if all(a.act[g][x] == x for x in X)}
    while True:
        nxt = {g for g in N if all(a.res[g][x] in N for x in X)}
        if nxt == N:
            return Subgroup(G, tuple(N))
        N = nxt


def kernel_bruteforce(a: SelfSimilarAction, max_depth: int = 10) -> tuple[Subgroup, int]:
    """Intersect word stabilizers level by level until two consecutive levels agree.

    Returns the intersection and the depth ``D`` at which it stabilised.  Once
    ``K_D == K_{D+1}`` every later level is equal too, since ``K_{D+1}`` is
    computed from ``K_D`` by the same rule.
    """
    G = a.group
    K = set(G.elements)
    for depth in range(1, max_depth + 1):
        nxt = {g for g in K if all(a.act_word(g, w) == w for w in a.words(depth))}
        if nxt == K:
            return Subgroup(G, tuple(K)), depth - 1
        K = nxt
    raise RuntimeError(f"stabilizer chain did not settle by depth {max_depth}")


def fundamental_quotient(a: SelfSimilarAction) -> SelfSimilarAction:
    K = kernel(a)
    G = a.group
    Q, proj = quotient_group(G, K)
    act: list[list[int | None]] = [[None] * a.alphabet_size for _ in Q.elements]
    res: list[list[int | None]] = [[None] * a.alphabet_size for _ in Q.elements]
    for g in G.elements:
        q = proj[g]
        for x in range(a.alphabet_size):
            pair = (a.act[g][x], proj[a.res[g][x]])
            if act[q][x] is None:
                act[q][x], res[q][x] = pair
            elif (act[q][x], res[q][x]) != pair:
                raise QuotientIllDefined(f"coset of {G.label(g)} acts inconsistently on letter {x}")
    return make_action(Q, act, res, a.letters, f"{a.name}/K" if a.name else "")


# ---------------------------------------------------------------------------
# Schutzenberger groups


def schutzenberger(a: SelfSimilarAction, e: ReesElement) -> Subgroup:
    """``g^-1 im(phi_x) g`` for ``e = x g``."""
    G = a.group
    img = stabilizer_data(a, e.word).image
    return img.conjugate(e.unit) if e.unit != G.identity else img


def h_class(a: SelfSimilarAction, e: ReesElement) -> list[ReesElement]:
    """The H-class of ``e`` from ideal inclusions alone.

    Elements of equal length generate the same one-sided ideal exactly when
    each is a unit multiple of the other, so unit multipliers suffice.
    """
    G = a.group
    units = [ReesElement((), g) for g in G.elements]
    right = {rees_mul(a, e, u) for u in units}
    left = {rees_mul(a, u, e) for u in units}
    out = []
    for f in right & left:
        if e in {rees_mul(a, f, u) for u in units} and e in {rees_mul(a, u, f) for u in units}:
            out.append(f)
    return sorted(out)


def schutzenberger_definitional(a: SelfSimilarAction, e: ReesElement) -> Subgroup:
    """``{h : H_e h is contained in H_e}`` over the unit group."""
    G = a.group
    H = set(h_class(a, e))
    stab = [h for h in G.elements if all(rees_mul(a, f, ReesElement((), h)) in H for f in H)]
    return Subgroup(G, tuple(stab))


# ---------------------------------------------------------------------------
# components


def components(a: SelfSimilarAction) -> list[SelfSimilarAction]:
    orbits = letter_orbits(a)
    return [restrict_to_letters(a, orb, f"{a.name}[{i}]" if a.name else "")
            for i, orb in enumerate(orbits)]


@dataclass(frozen=True)
class BourbakiFactorization:
    runs: tuple[tuple[int, tuple[int, ...]], ...]  # (component index, letters)
    unit: int

    def component_sequence(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.runs)


def bourbaki_factor(a: SelfSimilarAction, e: ReesElement) -> BourbakiFactorization:
    comp_of = {}
    for i, orb in enumerate(letter_orbits(a)):
        for x in orb:
            comp_of[x] = i
    runs: list[tuple[int, list[int]]] = []
    for x in e.word:
        c = comp_of[x]
        if runs and runs[-1][0] == c:
            runs[-1][1].append(x)
        else:
            runs.append((c, [x]))
    return BourbakiFactorization(tuple((c, tuple(w)) for c, w in runs), e.unit)


def reassemble(a: SelfSimilarAction, f: BourbakiFactorization) -> ReesElement:
    G = a.group
    out = ReesElement((), G.identity)
    for _, w in f.runs:
        out = rees_mul(a, out, ReesElement(w, G.identity))
    return rees_mul(a, out, ReesElement((), f.unit))


def maximal_principal_ideal_count(a: SelfSimilarAction) -> int:
    """Number of distinct ideals ``S x g S`` over atoms, found by unit two-sided moves."""
    G = a.group
    atoms = [ReesElement((x,), g) for x in range(a.alphabet_size) for g in G.elements]
    units = [ReesElement((), g) for g in G.elements]
    seen: set[ReesElement] = set()
    classes = 0
    for e in atoms:
        if e in seen:
            continue
        classes += 1
        seen.update(rees_mul(a, rees_mul(a, u, e), v) for u in units for v in units)
    return classes


# ---------------------------------------------------------------------------
# property battery


def right_cancellation_bruteforce(a: SelfSimilarAction, max_len: int = 3):
    """First ``(e, e2, f)`` with ``e f == e2 f`` and ``e != e2``, total length ``<= max_len``; else ``None``."""
    M = ReesMonoid(a)
    for lf in range(max_len + 1):
        for f in M.elements_of_length(lf):
            for le in range(max_len - lf + 1):
                seen: dict[ReesElement, ReesElement] = {}
                for e in M.elements_of_length(le):
                    p = rees_mul(a, e, f)
                    if p in seen:
                        return seen[p], e, f
                    seen[p] = e
    return None


def right_reversible_bounded(a: SelfSimilarAction, max_len: int = 2):
    """Look for ``s a = t b`` with all of ``a, b, s, t`` of length ``<= max_len``.

    Returns the first pair ``(a, b)`` with no common left multiple in range,
    or ``None`` when every pair has one.  Length 1 is already decisive: a pair
    of atoms in different letter orbits, or ``x`` against ``x h`` with ``h``
    outside the image of ``phi_x``, never has a common left multiple.
    """
    M = ReesMonoid(a)
    elems = M.elements_up_to(max_len)
    left = {e: {rees_mul(a, s, e) for s in elems} for e in elems}
    for e1, e2 in product(elems, repeat=2):
        if not left[e1] & left[e2]:
            return e1, e2
    return None


def max_left_ideal_bounded(a: SelfSimilarAction) -> bool:
    """Is some atom ideal ``S y`` above every other atom ideal ``S z``?

    Among elements of equal length ``S z`` lies in ``S y`` iff ``z = k y`` for a unit ``k``.
    """
    G = a.group
    atoms = [ReesElement((x,), g) for x in range(a.alphabet_size) for g in G.elements]
    units = [ReesElement((), g) for g in G.elements]
    for y in atoms:
        below = {rees_mul(a, k, y) for k in units}
        if all(z in below for z in atoms):
            return True
    return False


@dataclass
class PropertyReport:
    name: str
    irreducible: bool
    right_cancellative: bool
    cancellative: bool
    recurrent: bool
    right_reversible: bool
    level_transitive: dict
    left_symmetric: bool
    trivial_action: bool
    fundamental: bool
    orbit_count: int
    kernel_size: int
    basis_size: int
    maximal_principal_ideal_count: int
    component_count: int
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "irreducible": self.irreducible,
            "right_cancellative": self.right_cancellative,
            "cancellative": self.cancellative,
            "recurrent": self.recurrent,
            "right_reversible": self.right_reversible,
            "level_transitive": dict(self.level_transitive),
            "left_symmetric": self.left_symmetric,
            "trivial_action": self.trivial_action,
            "fundamental": self.fundamental,
            "orbit_count": self.orbit_count,
            "kernel_size": self.kernel_size,
            "basis_size": self.basis_size,
            "maximal_principal_ideal_count": self.maximal_principal_ideal_count,
            "component_count": self.component_count,
            "witnesses": dict(self.witnesses),
        }


def _level_transitive(a: SelfSimilarAction, depth: int):
    for n in range(1, depth + 1):
        if word_orbit_count(a, n) != 1:
            return False, n
    return True, None


def property_report(a: SelfSimilarAction, depth: int = 4) -> PropertyReport:
    G = a.group
    X = range(a.alphabet_size)
    witnesses: dict[str, object] = {}
    orbits = letter_orbits(a)
    irreducible = len(orbits) == 1
    if not irreducible:
        witnesses["irreducible"] = [a.letters[o[0]] for o in orbits]

    phis = [stabilizer_data(a, (x,)) for x in X]
    right_canc = True
    for x, sd in zip(X, phis):
        if not sd.phi_map.injective:
            right_canc = False
            k = next(g for g in sd.stabilizer if g != G.identity and sd.phi_map(g) == G.identity)
            witnesses["right_cancellative"] = {"letter": a.letters[x], "kernel_element": G.label(k)}
            break
    onto = True
    for x, sd in zip(X, phis):
        if len(sd.image) != G.order:
            onto = False
            witnesses["recurrent"] = {"letter": a.letters[x], "image_size": len(sd.image)}
            break
    recurrent = irreducible and onto

    left_sym = True
    for x in X:
        if len({a.res[g][x] for g in G.elements}) != G.order:
            left_sym = False
            witnesses["left_symmetric"] = {"letter": a.letters[x]}
            break
    trivial = all(a.act[g][x] == x for g in G.elements for x in X)

    lt, bad = _level_transitive(a, depth)
    level = {"depth": depth, "holds": lt, "proven": recurrent}
    if not lt:
        witnesses["level_transitive"] = {"first_failing_level": bad}

    K = kernel(a)
    rr = right_reversible_bounded(a, 1)
    if rr is not None:
        witnesses["right_reversible"] = [str(rr[0]), str(rr[1])]
    return PropertyReport(
        name=a.name,
        irreducible=irreducible,
        right_cancellative=right_canc,
        cancellative=right_canc,
        recurrent=recurrent,
        right_reversible=rr is None,
        level_transitive=level,
        left_symmetric=left_sym,
        trivial_action=trivial,
        fundamental=K.is_trivial(),
        orbit_count=len(orbits),
        kernel_size=len(K),
        basis_size=a.alphabet_size,
        maximal_principal_ideal_count=maximal_principal_ideal_count(a),
        component_count=len(orbits),
        witnesses=witnesses,
    )
