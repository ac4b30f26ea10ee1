"""Self-similar group actions and their Zappa-Szep monoids ``X* G``.

Tables are stored at letter level only:

* ``act[g][x]`` is the letter ``g . x``
* ``res[g][x]`` is the group element ``g|_x``

Word-level values come from the left-to-right recursion
``g . (x w) = (g . x)(g|_x . w)`` and ``g|_{x w} = (g|_x)|_w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .bimodule import (
    Bimodule,
    GroupData,
    basis_transversal,
    classify,
    decompose_on_basis,
    from_group_data,
)
from .errors import (
    AxiomViolation,
    GammaNotFunctional,
    NotATransversal,
    NotEndomorphism,
    NotRightFree,
)
from .groups import FiniteGroup

DEFAULT_DEPTH = 4
AXIOM_ORDER = ("SS1", "SS2", "SS7", "SS8")


@dataclass(frozen=True, eq=False)
class SelfSimilarAction:
    group: FiniteGroup
    act: tuple[tuple[int, ...], ...]
    res: tuple[tuple[int, ...], ...]
    letters: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        G = self.group
        k = len(self.letters)
        if k == 0:
            raise ValueError("alphabet must be nonempty")
        object.__setattr__(self, "act", tuple(tuple(int(v) for v in row) for row in self.act))
        object.__setattr__(self, "res", tuple(tuple(int(v) for v in row) for row in self.res))
        if len(self.act) != G.order or len(self.res) != G.order:
            raise ValueError("act and res need one row per group element")
        for g in G.elements:
            if len(self.act[g]) != k or len(self.res[g]) != k:
                raise ValueError("act and res need one column per letter")
            if any(not 0 <= y < k for y in self.act[g]):
                raise ValueError(f"act row {g} names a letter outside the alphabet")
            if any(not 0 <= h < G.order for h in self.res[g]):
                raise ValueError(f"res row {g} names an element outside the group")

    @property
    def alphabet_size(self) -> int:
        return len(self.letters)

    def letter(self, label: str | int) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.alphabet_size:
                raise IndexError(label)
            return label
        return self.letters.index(label)

    def act_res(self, g: int, w: Sequence[int]) -> tuple[tuple[int, ...], int]:
        """``(g . w, g|_w)`` in one pass."""
        out = []
        for x in w:
            out.append(self.act[g][x])
            g = self.res[g][x]
        return tuple(out), g

    def act_word(self, g: int, w: Sequence[int]) -> tuple[int, ...]:
        return self.act_res(g, w)[0]

    def res_word(self, g: int, w: Sequence[int]) -> int:
        return self.act_res(g, w)[1]

    def words(self, n: int) -> Iterable[tuple[int, ...]]:
        return product(range(self.alphabet_size), repeat=n)

    def words_up_to(self, n: int) -> Iterable[tuple[int, ...]]:
        for k in range(n + 1):
            yield from self.words(k)

    def same_tables(self, other: "SelfSimilarAction") -> bool:
        return (self.group.same_table(other.group) and self.act == other.act
                and self.res == other.res and self.letters == other.letters)

    def __repr__(self) -> str:
        return f"SelfSimilarAction({self.name or '?'}, |G|={self.group.order}, X={list(self.letters)})"


def act_word(a: SelfSimilarAction, g: int, w: Sequence[int]) -> tuple[int, ...]:
    return a.act_word(g, w)


def res_word(a: SelfSimilarAction, g: int, w: Sequence[int]) -> int:
    return a.res_word(g, w)


def validate_action(a: SelfSimilarAction, depth: int = DEFAULT_DEPTH) -> None:
    """Raise :class:`AxiomViolation` for the first failing axiom, else return ``None``.

    Letter-level checks run in the order SS1, SS2, SS7, SS8.  The word-level
    sweep afterwards re-checks all eight axioms through the recursive extension.
    """
    G = a.group
    e = G.identity
    X = range(a.alphabet_size)
    for x in X:
        if a.act[e][x] != x:
            raise AxiomViolation("SS1", (e, x))
    for g, h, x in product(G.elements, G.elements, X):
        if a.act[G.mul[g][h]][x] != a.act[g][a.act[h][x]]:
            raise AxiomViolation("SS2", (g, h, x))
    for x in X:
        if a.res[e][x] != e:
            raise AxiomViolation("SS7", (e, x))
    for g, h, x in product(G.elements, G.elements, X):
        if a.res[G.mul[g][h]][x] != G.mul[a.res[g][a.act[h][x]]][a.res[h][x]]:
            raise AxiomViolation("SS8", (g, h, x))
    word_level_check(a, depth)


def word_level_check(a: SelfSimilarAction, depth: int) -> int:
    """Check SS1..SS8 on every ``(g, h, w)`` with ``|w| <= depth``; return the number of words seen."""
    G = a.group
    e = G.identity
    seen = 0
    for w in a.words_up_to(depth):
        seen += 1
        if a.act_word(e, w) != w:
            raise AxiomViolation("SS1", (e, w))
        if a.res_word(e, w) != e:
            raise AxiomViolation("SS7", (e, w))
        for g in G.elements:
            gw, gr = a.act_res(g, w)
            if len(gw) != len(w):
                raise AxiomViolation("SS4", (g, w))
            for cut in range(len(w) + 1):
                u, v = w[:cut], w[cut:]
                gu, gru = a.act_res(g, u)
                if gw != gu + a.act_word(gru, v):
                    raise AxiomViolation("SS4", (g, u, v))
                if gr != a.res_word(gru, v):
                    raise AxiomViolation("SS6", (g, u, v))
            for h in G.elements:
                hw, hr = a.act_res(h, w)
                if a.act_word(G.mul[g][h], w) != a.act_word(g, hw):
                    raise AxiomViolation("SS2", (g, h, w))
                if a.res_word(G.mul[g][h], w) != G.mul[a.res_word(g, hw)][hr]:
                    raise AxiomViolation("SS8", (g, h, w))
    for g in G.elements:
        if a.act_word(g, ()) != ():
            raise AxiomViolation("SS3", (g,))
        if a.res_word(g, ()) != g:
            raise AxiomViolation("SS5", (g,))
    return seen


def make_action(group: FiniteGroup, act, res, letters: Sequence[str], name: str = "",
                depth: int = DEFAULT_DEPTH) -> SelfSimilarAction:
    a = SelfSimilarAction(group, act, res, tuple(letters), name)
    validate_action(a, depth)
    return a


# ---------------------------------------------------------------------------
# the monoid X* G


@dataclass(frozen=True, order=True)
class ReesElement:
    word: tuple[int, ...]
    unit: int

    @property
    def length(self) -> int:
        return len(self.word)


def rees_mul(a: SelfSimilarAction, e1: ReesElement, e2: ReesElement) -> ReesElement:
    y, g = a.act_res(e1.unit, e2.word)
    return ReesElement(e1.word + y, a.group.mul[g][e2.unit])


@dataclass(eq=False)
class ReesMonoid:
    """Monoid front end for an action, usable as a morphism target."""

    action: SelfSimilarAction
    _by_length: dict = field(default_factory=dict, repr=False)

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    @property
    def identity(self) -> ReesElement:
        return ReesElement((), self.group.identity)

    def unit(self, g: int) -> ReesElement:
        return ReesElement((), self.group.check(g))

    def atom(self, x: int, g: int | None = None) -> ReesElement:
        return ReesElement((x,), self.group.identity if g is None else g)

    def element(self, word: Sequence[int], unit: int | None = None) -> ReesElement:
        return ReesElement(tuple(word), self.group.identity if unit is None else unit)

    def mul(self, e1: ReesElement, e2: ReesElement) -> ReesElement:
        return rees_mul(self.action, e1, e2)

    def product(self, *elems: ReesElement) -> ReesElement:
        out = self.identity
        for e in elems:
            out = self.mul(out, e)
        return out

    def equal(self, e1: ReesElement, e2: ReesElement) -> bool:
        return e1 == e2

    def elements_of_length(self, n: int) -> list[ReesElement]:
        if n not in self._by_length:
            self._by_length[n] = [ReesElement(w, g) for w in self.action.words(n)
                                  for g in self.group.elements]
        return self._by_length[n]

    def elements_up_to(self, n: int) -> list[ReesElement]:
        return [e for k in range(n + 1) for e in self.elements_of_length(k)]

    def render(self, e: ReesElement) -> str:
        return render_element(self.action, e)

    def parse(self, text: str) -> ReesElement:
        return parse_element(self.action, text)


def _word_text(a: SelfSimilarAction, w: Sequence[int]) -> str:
    labels = [a.letters[x] for x in w]
    if all(len(s) == 1 for s in a.letters):
        return "".join(labels)
    return ".".join(labels)


def render_element(a: SelfSimilarAction, e: ReesElement) -> str:
    return f"({_word_text(a, e.word) or 'ε'},{a.group.label(e.unit)})"


def parse_word(a: SelfSimilarAction, text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "ε", "e", "eps"):
        return ()
    if "." in text or " " in text:
        return tuple(a.letter(t) for t in text.replace(".", " ").split())
    if all(len(s) == 1 for s in a.letters):
        return tuple(a.letter(c) for c in text)
    return (a.letter(text),)


def parse_element(a: SelfSimilarAction, text: str) -> ReesElement:
    """Parse ``(word,unit)``; a bare word means unit 1."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        body = text[1:-1]
        word, _, unit = body.rpartition(",")
        return ReesElement(parse_word(a, word), a.group.index(unit.strip()))
    return ReesElement(parse_word(a, text), a.group.identity)


# ---------------------------------------------------------------------------
# constructors


def from_endomorphism(G: FiniteGroup, alpha: Mapping[int, int] | Sequence[int],
                      letter: str = "x", name: str = "") -> SelfSimilarAction:
    """One-letter action with ``g . x = x`` and ``g|_x = alpha(g)``.

    The monoid is ``N x G`` with ``(m, g)(n, h) = (m + n, alpha^n(g) h)``,
    which is compared against :func:`rees_mul` for ``m + n <= 5``.
    """
    images = [alpha[g] for g in G.elements]
    for g, h in product(G.elements, repeat=2):
        if images[G.mul[g][h]] != G.mul[images[g]][images[h]]:
            raise NotEndomorphism(f"alpha fails to be multiplicative at {(g, h)}")
    a = make_action(G, [[0] for _ in G.elements], [[images[g]] for g in G.elements], [letter], name)

    def alpha_pow(g: int, n: int) -> int:
        for _ in range(n):
            g = images[g]
        return g

    for m in range(6):
        for n in range(6 - m):
            for g, h in product(G.elements, repeat=2):
                got = rees_mul(a, ReesElement((0,) * m, g), ReesElement((0,) * n, h))
                if got != ReesElement((0,) * (m + n), G.mul[alpha_pow(g, n)][h]):
                    raise AssertionError("endomorphism monoid disagrees with its product formula")
    return a


def from_covering_bimodule(b: Bimodule, basis: Sequence[int] | None = None,
                           name: str = "") -> SelfSimilarAction:
    """Read ``g . e = e' g'`` off a right-free bimodule for each basis element ``e``."""
    if not classify(b).right_free:
        raise NotRightFree("bimodule has a nontrivial right stabilizer")
    basis = list(basis_transversal(b) if basis is None else basis)
    try:
        decomp = decompose_on_basis(b, basis)
    except NotRightFree as exc:
        raise NotATransversal(str(exc)) from exc
    if len(decomp) != b.carrier_size:
        raise NotATransversal("basis misses some right orbit")
    G = b.group
    act = [[decomp[b.left[g][e]][0] for e in basis] for g in G.elements]
    res = [[decomp[b.left[g][e]][1] for e in basis] for g in G.elements]
    return make_action(G, act, res, [b.label(e) for e in basis], name)


def from_group_data_action(data: GroupData, name: str = "") -> SelfSimilarAction:
    if not data.is_functional():
        raise GammaNotFunctional("gamma is not the graph of a function H -> K")
    return from_covering_bimodule(from_group_data(data).bimodule, name=name)


def atom_bimodule(a: SelfSimilarAction) -> Bimodule:
    """Bimodule of atoms ``x h``: carrier ``X x G`` indexed ``x * |G| + h``."""
    G = a.group
    n = G.order
    size = a.alphabet_size * n
    left = [[0] * size for _ in G.elements]
    right = [[0] * n for _ in range(size)]
    labels = []
    for x in range(a.alphabet_size):
        for h in G.elements:
            i = x * n + h
            labels.append(a.letters[x] if h == G.identity else f"{a.letters[x]}{G.label(h)}")
            for g in G.elements:
                left[g][i] = a.act[g][x] * n + G.mul[a.res[g][x]][h]
                right[i][g] = x * n + G.mul[h][g]
    return Bimodule(G, size, tuple(map(tuple, left)), tuple(map(tuple, right)), tuple(labels))


def rebase(a: SelfSimilarAction, units: Mapping[int, int] | Sequence[int],
           depth: int = 3) -> SelfSimilarAction:
    """Switch to the basis ``x u_x``; the monoid map ``x' -> x u_x`` is checked up to ``depth``."""
    G = a.group
    u = [units[x] for x in range(a.alphabet_size)]
    res = [[G.prod(G.inv[u[a.act[g][x]]], a.res[g][x], u[x]) for x in range(a.alphabet_size)]
           for g in G.elements]
    new = make_action(G, a.act, res, a.letters, a.name + "-rebased" if a.name else "")
    check_rebase_isomorphism(a, new, u, depth)
    return new


def rebase_map(a: SelfSimilarAction, u: Sequence[int], e: ReesElement) -> ReesElement:
    """Image in ``a``'s monoid of an element written over the rebased letters."""
    out = ReesElement((), a.group.identity)
    for x in e.word:
        out = rees_mul(a, out, ReesElement((x,), u[x]))
    return rees_mul(a, out, ReesElement((), e.unit))


def check_rebase_isomorphism(old: SelfSimilarAction, new: SelfSimilarAction,
                             u: Sequence[int], depth: int = 3) -> None:
    Mn = ReesMonoid(new)
    for n in range(depth + 1):
        images = {rebase_map(old, u, e) for e in Mn.elements_of_length(n)}
        if len(images) != len(Mn.elements_of_length(n)):
            raise AssertionError(f"rebase map is not injective at length {n}")
    for n1 in range(depth + 1):
        for n2 in range(depth + 1 - n1):
            for e1 in Mn.elements_of_length(n1):
                for e2 in Mn.elements_of_length(n2):
                    lhs = rebase_map(old, u, rees_mul(new, e1, e2))
                    rhs = rees_mul(old, rebase_map(old, u, e1), rebase_map(old, u, e2))
                    if lhs != rhs:
                        raise AssertionError(f"rebase map is not multiplicative at {(e1, e2)}")


def restrict_to_letters(a: SelfSimilarAction, letters: Sequence[int], name: str = "") -> SelfSimilarAction:
    """Sub-action on a set of letters closed under the group action."""
    letters = sorted(letters)
    pos = {x: i for i, x in enumerate(letters)}
    G = a.group
    try:
        act = [[pos[a.act[g][x]] for x in letters] for g in G.elements]
    except KeyError as exc:
        raise ValueError("letter set is not closed under the action") from exc
    res = [[a.res[g][x] for x in letters] for g in G.elements]
    return make_action(G, act, res, [a.letters[x] for x in letters], name)
