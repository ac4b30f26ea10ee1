"""Universal groups of Rees monoids.

An irreducible monoid ``X* G`` with a chosen letter ``x`` is presented by
``G`` and one stable letter ``t`` subject to ``a t = t phi(a)`` for ``a`` in
``A = G_x``, where ``phi = phi_x``.  Words are brought to the normal form

    r1 t^e1 r2 t^e2 ... rk t^ek . g

with each ``ri`` a left transversal representative of ``G/A`` (before ``t``)
or ``G/B`` (before ``t^-1``) and no pinch ``t 1 t^-1`` or ``t^-1 1 t``.
The same machinery runs over :class:`IntegerOracle` for Baumslag-Solitar groups.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .analysis import letter_orbits, stabilizer_data
from .errors import (
    InverseLetterWithoutAutomorphism,
    MixedGroups,
    NotIrreducible,
    NotLeftSymmetric,
    WordTooLong,
)
from .groups import (
    FiniteGroup,
    FiniteOracle,
    GroupOracle,
    left_cosets,
    Subgroup,
    partial_hom,
    quotient_group,
    subgroup_closure,
)
from .selfsim import ReesElement, ReesMonoid, SelfSimilarAction, make_action, rees_mul

MAX_T_SYLLABLES = 64


@dataclass(frozen=True)
class HNNPresentation:
    oracle: GroupOracle
    name: str = ""
    monoid_only: bool = False

    def __post_init__(self):
        if not self.monoid_only and not self.oracle.phi_injective:
            raise InverseLetterWithoutAutomorphism(
                "phi is not injective; use the monoid presentation instead")


@dataclass(frozen=True)
class HNNWord:
    """Normal form: ``syllables`` are ``(rep, exponent, stable_letter)``, then ``tail``."""

    syllables: tuple[tuple, ...]
    tail: object

    @property
    def t_length(self) -> int:
        return len(self.syllables)


# tokens: ("g", element) or ("t", exponent, stable-letter index)


def _count_t(tokens) -> int:
    return sum(1 for tok in tokens if tok[0] == "t")


def _reduce(oracles: Sequence[GroupOracle], tokens, monoid_only: bool, cap: int) -> HNNWord:
    if _count_t(tokens) > cap:
        raise WordTooLong(f"word has more than {cap} stable letters")
    o0 = oracles[0]
    stack: list[tuple] = []
    c = o0.identity
    for tok in tokens:
        if tok[0] == "g":
            c = o0.multiply(c, tok[1])
            continue
        _, eps, i = tok
        o = oracles[i]
        if eps == 1:
            rep, a = o.rep_mod_A(c)
            if o.equals(rep, o.identity) and stack and stack[-1][1] == -1 and stack[-1][2] == i:
                r, _, _ = stack.pop()
                c = o.multiply(r, o.apply_phi(a))
            else:
                stack.append((rep, 1, i))
                c = o.apply_phi(a)
        elif eps == -1:
            if monoid_only:
                raise InverseLetterWithoutAutomorphism("t^-1 is not available in the monoid presentation")
            rep, b = o.rep_mod_B(c)
            if o.equals(rep, o.identity) and stack and stack[-1][1] == 1 and stack[-1][2] == i:
                r, _, _ = stack.pop()
                c = o.multiply(r, o.apply_phi_inv(b))
            else:
                stack.append((rep, -1, i))
                c = o.apply_phi_inv(b)
        else:
            raise ValueError(f"bad exponent {eps}")
    return HNNWord(tuple(stack), c)


def word_tokens(w: HNNWord) -> list[tuple]:
    out: list[tuple] = []
    for rep, eps, i in w.syllables:
        out.append(("g", rep))
        out.append(("t", eps, i))
    out.append(("g", w.tail))
    return out


def _normalize_tokens(tokens) -> list[tuple]:
    out = []
    for tok in tokens:
        if tok[0] == "t" and len(tok) == 2:
            out.append(("t", tok[1], 0))
        else:
            out.append(tuple(tok))
    return out


def hnn_reduce(p: HNNPresentation, tokens, cap: int = MAX_T_SYLLABLES) -> HNNWord:
    return _reduce([p.oracle], _normalize_tokens(tokens), p.monoid_only, cap)


def hnn_equal(p: HNNPresentation, w1, w2, cap: int = MAX_T_SYLLABLES) -> bool:
    return hnn_reduce(p, w1, cap) == hnn_reduce(p, w2, cap)


def hnn_inverse_tokens(tokens) -> list[tuple]:
    """Formal inverse of a token list; group tokens need the oracle, so they are tagged."""
    out = []
    for tok in reversed(_normalize_tokens(tokens)):
        if tok[0] == "t":
            out.append(("t", -tok[1], tok[2]))
        else:
            out.append(("ginv", tok[1]))
    return out


def resolve_inverses(oracle: GroupOracle, tokens) -> list[tuple]:
    return [("g", oracle.inverse(t[1])) if t[0] == "ginv" else t for t in tokens]


def parse_word(oracle: GroupOracle, text: str, multi: bool = False) -> list[tuple]:
    """Whitespace-separated tokens: group labels, ``t``, ``t^-1`` (``t1``, ``t2^-1`` when ``multi``)."""
    out = []
    for tok in text.split():
        base, _, exp = tok.partition("^")
        if base.startswith("t") and (base == "t" or (multi and base[1:].isdigit())):
            i = int(base[1:]) - 1 if len(base) > 1 else 0
            eps = -1 if exp == "-1" else 1
            if exp not in ("", "1", "-1"):
                raise ValueError(f"bad stable letter exponent in {tok!r}")
            out.append(("t", eps, i))
        else:
            out.append(("g", oracle.parse(tok)))
    return out


def render_word(oracle: GroupOracle, w: HNNWord, multi: bool = False) -> str:
    parts = []
    e = oracle.identity
    for rep, eps, i in w.syllables:
        if not oracle.equals(rep, e):
            parts.append(oracle.format(rep))
        name = f"t{i + 1}" if multi else "t"
        parts.append(name if eps == 1 else f"{name}^-1")
    if not oracle.equals(w.tail, e) or not parts:
        parts.append(oracle.format(w.tail))
    return " ".join(parts)


def random_word(oracle: GroupOracle, rng: random.Random, t_count: int, stable: int = 1,
                allow_inverse: bool = True) -> list[tuple]:
    out: list[tuple] = [("g", oracle.random_element(rng))]
    for _ in range(t_count):
        eps = rng.choice((1, -1)) if allow_inverse else 1
        out.append(("t", eps, rng.randrange(stable)))
        out.append(("g", oracle.random_element(rng)))
    return out


# ---------------------------------------------------------------------------
# universal group of an irreducible monoid


def _normal_closure(G: FiniteGroup, seeds: Iterable[int]) -> set[int]:
    seeds = set(seeds)
    conj = {G.conj(s, a) for s in seeds for a in G.elements}
    return set(subgroup_closure(G, conj).elements)


def collapse_subgroup(G: FiniteGroup, phi) -> Subgroup:
    """Smallest normal ``M`` on which ``a M -> phi(a) M`` is a well-defined injective map."""
    A = list(phi.domain.elements)
    M = _normal_closure(G, [a for a in A if phi(a) == G.identity])
    while True:
        extra = {phi(a) for a in A if a in M} | {a for a in A if phi(a) in M}
        if extra <= M:
            return Subgroup(G, tuple(M))
        M = _normal_closure(G, M | extra)


class UniversalGroup:
    """Universal group of an irreducible ``X* G`` at the basis letter ``letter``.

    When ``phi_x`` is injective this is the HNN extension of ``G``.  Otherwise the
    relation ``a t = t phi(a)`` forces part of ``G`` to collapse; the
    extension is then taken over ``G/M`` with ``M`` from :func:`collapse_subgroup`.
    """

    def __init__(self, action: SelfSimilarAction, letter: int = 0):
        if len(letter_orbits(action)) != 1:
            raise NotIrreducible("the action is not transitive on letters")
        self.action = action
        self.letter = letter
        G = action.group
        sd = stabilizer_data(action, (letter,))
        self.phi = sd.phi_map
        self.M = collapse_subgroup(G, self.phi)
        if self.M.is_trivial():
            self.group = G
            self.proj = tuple(G.elements)
            phi_q = self.phi
        else:
            Q, proj = quotient_group(G, self.M)
            self.group, self.proj = Q, proj
            table = {}
            for a in self.phi.domain.elements:
                table[proj[a]] = proj[self.phi(a)]
            dom = Subgroup(Q, tuple(set(table)))
            phi_q = partial_hom(dom, table)
        self.oracle = FiniteOracle(phi_q)
        self.presentation = HNNPresentation(self.oracle, name=action.name)
        # k_y with k_y . x = y, taken from the transversal of G/G_x
        cos = left_cosets(G, self.phi.domain)
        self.letter_rep = {action.act[k][letter]: k for k in cos.transversal}

    def letter_tokens(self, y: int) -> list[tuple]:
        G = self.action.group
        k = self.letter_rep[y]
        back = G.inv[self.action.res[k][self.letter]]
        return [("g", self.proj[k]), ("t", 1, 0), ("g", self.proj[back])]

    def element_tokens(self, e: ReesElement) -> list[tuple]:
        out: list[tuple] = []
        for y in e.word:
            out.extend(self.letter_tokens(y))
        out.append(("g", self.proj[e.unit]))
        return out

    def embed(self, e: ReesElement) -> HNNWord:
        return hnn_reduce(self.presentation, self.element_tokens(e))


def universal_group(action: SelfSimilarAction, letter: int = 0) -> UniversalGroup:
    return UniversalGroup(action, letter)


def embed_element(u: UniversalGroup, e: ReesElement) -> HNNWord:
    return u.embed(e)


@dataclass(frozen=True)
class EmbeddingCheck:
    ok: bool
    checked: int
    collision: tuple | None = None  # (earlier element, later element, shared normal form)


def check_embedding(u: UniversalGroup, max_length: int = 4) -> EmbeddingCheck:
    """Walk elements in length-lex order and report the first pair with equal images."""
    M = ReesMonoid(u.action)
    seen: dict[HNNWord, ReesElement] = {}
    n = 0
    for length in range(max_length + 1):
        for e in sorted(M.elements_of_length(length)):
            nf = u.embed(e)
            n += 1
            if nf in seen:
                return EmbeddingCheck(False, n, (seen[nf], e, nf))
            seen[nf] = e
    return EmbeddingCheck(True, n)


def monoid_presentation(action: SelfSimilarAction, letter: int = 0) -> tuple[HNNPresentation, dict]:
    """Presentation ``Mon<G, t : a t = t phi(a)>``; valid without injectivity of ``phi``."""
    if len(letter_orbits(action)) != 1:
        raise NotIrreducible("the action is not transitive on letters")
    sd = stabilizer_data(action, (letter,))
    oracle = FiniteOracle(sd.phi_map)
    reps = {action.act[k][letter]: k for k in left_cosets(action.group, sd.stabilizer).transversal}
    return HNNPresentation(oracle, name=action.name, monoid_only=True), reps


def monoid_normal_form(action: SelfSimilarAction, e: ReesElement, letter: int = 0) -> HNNWord:
    p, reps = monoid_presentation(action, letter)
    G = action.group
    toks: list[tuple] = []
    for y in e.word:
        k = reps[y]
        toks += [("g", k), ("t", 1, 0), ("g", G.inv[action.res[k][letter]])]
    toks.append(("g", e.unit))
    return hnn_reduce(p, toks)


# ---------------------------------------------------------------------------
# several components


class AmalgamEngine:
    """Word problem for the amalgamated product of component universal groups over ``G``.

    Stable letter ``i`` belongs to component ``i``.  Reduction is Britton
    reduction with one stable letter per component; pinches only cancel
    within a single component.
    """

    def __init__(self, presentations: Sequence[HNNPresentation]):
        if not presentations:
            raise ValueError("need at least one component")
        groups = [getattr(p.oracle, "group", None) for p in presentations]
        g0 = groups[0]
        for g in groups[1:]:
            if g is None or g0 is None or not (g is g0 or g.same_table(g0)):
                raise MixedGroups("components must share one unit group")
        self.presentations = list(presentations)
        self.oracles = [p.oracle for p in presentations]
        self.monoid_only = any(p.monoid_only for p in presentations)

    @classmethod
    def from_action(cls, action: SelfSimilarAction) -> "AmalgamEngine":
        """One presentation per letter orbit, each at the orbit's least letter.

        The components keep the full letter set so their unit groups coincide.
        """
        pres = []
        for orb in letter_orbits(action):
            sd = stabilizer_data(action, (orb[0],))
            pres.append(HNNPresentation(FiniteOracle(sd.phi_map), name=f"{action.name}[{len(pres)}]"))
        eng = cls(pres)
        eng._action = action
        eng._letters = [orb[0] for orb in letter_orbits(action)]
        return eng

    def reduce(self, tokens, cap: int = MAX_T_SYLLABLES) -> HNNWord:
        toks = _normalize_tokens(tokens)
        for tok in toks:
            if tok[0] == "t" and not 0 <= tok[2] < len(self.oracles):
                raise ValueError(f"no component {tok[2] + 1}")
        return _reduce(self.oracles, toks, self.monoid_only, cap)

    def equal(self, w1, w2) -> bool:
        return self.reduce(w1) == self.reduce(w2)

    @staticmethod
    def segments(w: HNNWord) -> list[tuple[int, tuple]]:
        """Maximal runs of syllables from one component."""
        out: list[tuple[int, list]] = []
        for syl in w.syllables:
            if out and out[-1][0] == syl[2]:
                out[-1][1].append(syl)
            else:
                out.append((syl[2], [syl]))
        return [(i, tuple(s)) for i, s in out]

    def embed(self, e: ReesElement) -> HNNWord:
        a = self._action
        G = a.group
        comp = {}
        for i, orb in enumerate(letter_orbits(a)):
            for y in orb:
                comp[y] = i
        toks: list[tuple] = []
        for y in e.word:
            i = comp[y]
            x = self._letters[i]
            o = self.oracles[i]
            k = next(r for r in o.transversal_A if a.act[r][x] == y)
            toks += [("g", k), ("t", 1, i), ("g", G.inv[a.res[k][x]])]
        toks.append(("g", e.unit))
        return self.reduce(toks)

    def check_embedding(self, max_length: int = 3) -> EmbeddingCheck:
        M = ReesMonoid(self._action)
        seen: dict[HNNWord, ReesElement] = {}
        n = 0
        for length in range(max_length + 1):
            for e in sorted(M.elements_of_length(length)):
                nf = self.embed(e)
                n += 1
                if nf in seen:
                    return EmbeddingCheck(False, n, (seen[nf], e, nf))
                seen[nf] = e
        return EmbeddingCheck(True, n)


def amalgam_universal(presentations: Sequence[HNNPresentation]) -> AmalgamEngine:
    return AmalgamEngine(presentations)


# ---------------------------------------------------------------------------
# FG(X) x G for left symmetric actions
#
# Letters are encoded as ints: x for x in X, and k + x for x^-1 (k = |X|).


@dataclass(frozen=True, order=True)
class FreeGroupZSElement:
    word: tuple[int, ...]
    unit: int


def is_left_symmetric(a: SelfSimilarAction) -> bool:
    G = a.group
    return all(len({a.res[g][x] for g in G.elements}) == G.order for x in range(a.alphabet_size))


def extended_action(a: SelfSimilarAction, depth: int = 3) -> SelfSimilarAction:
    """The action on ``X u X^-1`` with ``g|_{x^-1} = rho_x^-1(g)`` and ``g . x^-1 = (g|_{x^-1} . x)^-1``."""
    if not is_left_symmetric(a):
        raise NotLeftSymmetric("some g -> g|_x is not a bijection")
    G = a.group
    k = a.alphabet_size
    rho_inv = [[0] * G.order for _ in range(k)]
    for x in range(k):
        for h in G.elements:
            rho_inv[x][a.res[h][x]] = h
    act = []
    res = []
    for g in G.elements:
        arow = list(a.act[g])
        rrow = list(a.res[g])
        for x in range(k):
            h = rho_inv[x][g]
            arow.append(k + a.act[h][x])
            rrow.append(h)
        act.append(arow)
        res.append(rrow)
    letters = list(a.letters) + [f"{s}^-1" for s in a.letters]
    return make_action(G, act, res, letters, f"{a.name}±" if a.name else "", depth=depth)


class FreeGroupZS:
    def __init__(self, a: SelfSimilarAction, depth: int = 3):
        self.base = a
        self.ext = extended_action(a, depth)
        self.k = a.alphabet_size
        self.group = a.group

    def inv_letter(self, y: int) -> int:
        return y + self.k if y < self.k else y - self.k

    def free_reduce(self, w: Sequence[int]) -> tuple[int, ...]:
        out: list[int] = []
        for y in w:
            if out and out[-1] == self.inv_letter(y):
                out.pop()
            else:
                out.append(y)
        return tuple(out)

    def element(self, word: Sequence[int], unit: int | None = None) -> FreeGroupZSElement:
        return FreeGroupZSElement(self.free_reduce(word), self.group.identity if unit is None else unit)

    @property
    def identity(self) -> FreeGroupZSElement:
        return FreeGroupZSElement((), self.group.identity)

    def mul(self, e1: FreeGroupZSElement, e2: FreeGroupZSElement) -> FreeGroupZSElement:
        y, g = self.ext.act_res(e1.unit, e2.word)
        return FreeGroupZSElement(self.free_reduce(e1.word + y), self.group.mul[g][e2.unit])

    def inverse(self, e: FreeGroupZSElement) -> FreeGroupZSElement:
        G = self.group
        gi = G.inv[e.unit]
        winv = tuple(self.inv_letter(y) for y in reversed(e.word))
        y, h = self.ext.act_res(gi, winv)
        return FreeGroupZSElement(self.free_reduce(y), h)

    def from_rees(self, e: ReesElement) -> FreeGroupZSElement:
        return FreeGroupZSElement(e.word, e.unit)

    def random_element(self, rng: random.Random, max_len: int = 6) -> FreeGroupZSElement:
        n = rng.randint(0, max_len)
        return self.element([rng.randrange(2 * self.k) for _ in range(n)], rng.randrange(self.group.order))

    def render(self, e: FreeGroupZSElement) -> str:
        w = " ".join(self.ext.letters[y] for y in e.word) or "ε"
        return f"({w},{self.group.label(e.unit)})"


def fgzs_mul(a: FreeGroupZS, e1: FreeGroupZSElement, e2: FreeGroupZSElement) -> FreeGroupZSElement:
    return a.mul(e1, e2)


def fgzs_inverse(a: FreeGroupZS, e: FreeGroupZSElement) -> FreeGroupZSElement:
    return a.inverse(e)


def rees_agrees(fg: FreeGroupZS, e1: ReesElement, e2: ReesElement) -> bool:
    return fg.mul(fg.from_rees(e1), fg.from_rees(e2)) == fg.from_rees(rees_mul(fg.base, e1, e2))
