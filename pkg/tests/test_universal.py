import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from reeslab import corpus
from reeslab.errors import (
    InverseLetterWithoutAutomorphism,
    MixedGroups,
    NotIrreducible,
    NotLeftSymmetric,
    WordTooLong,
)
from reeslab.groups import FiniteOracle, IntegerOracle, Subgroup, cyclic_group, partial_hom
from reeslab.selfsim import ReesElement, ReesMonoid
from reeslab.universal import (
    AmalgamEngine,
    FreeGroupZS,
    HNNPresentation,
    check_embedding,
    collapse_subgroup,
    embed_element,
    extended_action,
    fgzs_inverse,
    fgzs_mul,
    hnn_equal,
    hnn_inverse_tokens,
    hnn_reduce,
    monoid_normal_form,
    parse_word,
    random_word,
    rees_agrees,
    render_word,
    resolve_inverses,
    universal_group,
    word_tokens,
)

BS12 = HNNPresentation(IntegerOracle(m=1, n=2), "bs12")


def affine(tokens):
    """Image in the affine group: a -> x + 1, t -> 2x (a faithful model of bs12)."""
    mat = (Fraction(1), Fraction(0))  # x -> s x + b stored as (s, b)
    for tok in tokens:
        if tok[0] == "g":
            step = (Fraction(1), Fraction(tok[1]))
        else:
            step = (Fraction(2) ** tok[1], Fraction(0))
        # compose: current then step, written as matrix product current * step
        s, b = mat
        s2, b2 = step
        mat = (s * s2, s * b2 + b)
    return mat


def bs_words(max_t=5):
    tok = st.one_of(
        st.integers(-6, 6).map(lambda g: ("g", g)),
        st.sampled_from([("t", 1, 0), ("t", -1, 0)]),
    )
    return st.lists(tok, max_size=2 * max_t).filter(lambda w: sum(t[0] == "t" for t in w) <= max_t)


def test_bs12_defining_relation():
    o = BS12.oracle
    assert hnn_equal(BS12, parse_word(o, "t^-1 2 t"), parse_word(o, "1"))
    assert not hnn_equal(BS12, parse_word(o, "t"), parse_word(o, "t^-1"))
    assert affine(parse_word(o, "t^-1 2 t")) == affine(parse_word(o, "1"))


@settings(max_examples=150)
@given(bs_words(), bs_words())
def test_bs12_against_affine_model(w1, w2):
    assert hnn_equal(BS12, w1, w2) == (affine(w1) == affine(w2))


@settings(max_examples=100)
@given(bs_words())
def test_normal_form_is_stable(w):
    nf = hnn_reduce(BS12, w)
    assert hnn_reduce(BS12, word_tokens(nf)) == nf
    inv = resolve_inverses(BS12.oracle, hnn_inverse_tokens(w))
    assert hnn_reduce(BS12, list(w) + inv) == hnn_reduce(BS12, [])


@pytest.mark.parametrize("m,n", [(1, 2), (2, 3), (3, 2)])
def test_relator_insertion(m, n):
    p = HNNPresentation(IntegerOracle(m=m, n=n))
    o = p.oracle
    rng = random.Random(m * 10 + n)
    for _ in range(100):
        w = random_word(o, rng, rng.randint(0, 4))
        k = rng.randint(-3, 3)
        # a t = t phi(a) with a = n k
        rel = [("g", n * k), ("t", 1, 0), ("g", -m * k), ("t", -1, 0)]
        i = rng.randrange(len(w) + 1)
        assert hnn_equal(p, w, w[:i] + rel + w[i:])


def test_render_and_cap():
    o = BS12.oracle
    w = hnn_reduce(BS12, parse_word(o, "3 t 5 t^-1"))
    assert hnn_reduce(BS12, parse_word(o, render_word(o, w))) == w
    with pytest.raises(WordTooLong):
        hnn_reduce(BS12, [("t", 1, 0)] * 70)
    with pytest.raises(ValueError):
        parse_word(o, "t^2")


def test_non_injective_needs_monoid_presentation():
    C4 = cyclic_group(4)
    phi = partial_hom(C4.whole(), {g: C4.mul[g][g] for g in C4.elements})
    with pytest.raises(InverseLetterWithoutAutomorphism):
        HNNPresentation(FiniteOracle(phi))
    p = HNNPresentation(FiniteOracle(phi), monoid_only=True)
    with pytest.raises(InverseLetterWithoutAutomorphism):
        hnn_reduce(p, [("t", -1, 0)])


def test_collapse_subgroup():
    C4 = cyclic_group(4)
    sq = partial_hom(C4.whole(), {g: C4.mul[g][g] for g in C4.elements})
    assert collapse_subgroup(C4, sq) == C4.whole()
    inv = partial_hom(C4.whole(), {g: C4.inv[g] for g in C4.elements})
    assert collapse_subgroup(C4, inv).is_trivial()


@pytest.mark.parametrize("name", ["c2-swap", "c2-twist", "s3-a3-identity", "rees-c4-inv"])
def test_embedding_is_a_homomorphism(name):
    a = corpus.action(name)
    u = universal_group(a)
    M = ReesMonoid(a)
    pool = M.elements_up_to(2)
    for e1, e2 in product(pool, repeat=2):
        lhs = embed_element(u, M.mul(e1, e2))
        rhs = hnn_reduce(u.presentation, u.element_tokens(e1) + u.element_tokens(e2))
        assert lhs == rhs


def test_embedding_small():
    assert check_embedding(universal_group(corpus.action("c2-swap")), 3).ok
    res = check_embedding(universal_group(corpus.action("rees-c4-square")), 3)
    assert not res.ok
    e1, e2, _ = res.collision
    assert e1 != e2


def test_universal_needs_irreducible():
    with pytest.raises(NotIrreducible):
        universal_group(corpus.action("free2"))


def test_monoid_normal_form_separates_units():
    a = corpus.action("rees-c4-square")
    forms = {monoid_normal_form(a, ReesElement((), g)) for g in a.group.elements}
    assert len(forms) == 4


def test_amalgam_engine():
    eng = AmalgamEngine.from_action(corpus.action("c2-flat"))
    assert eng.check_embedding(3).ok
    w = eng.reduce([("t", 1, 0), ("t", 1, 1), ("t", -1, 1), ("t", 1, 0)])
    assert [i for _, _, i in w.syllables] == [0, 0]
    assert len(eng.segments(eng.reduce([("t", 1, 0), ("t", 1, 1), ("t", 1, 1)]))) == 2
    with pytest.raises(ValueError):
        eng.reduce([("t", 1, 5)])
    with pytest.raises(MixedGroups):
        C3 = cyclic_group(3)
        other = HNNPresentation(FiniteOracle(partial_hom(C3.whole(), {g: g for g in C3.elements})))
        AmalgamEngine([eng.presentations[0], other])


def test_extended_action_requires_left_symmetry():
    with pytest.raises(NotLeftSymmetric):
        extended_action(corpus.action("c2-swap"))
    ext = extended_action(corpus.action("c2-twist"))
    assert ext.alphabet_size == 4


def test_fgzs_examples():
    fg = FreeGroupZS(corpus.action("c2-twist"))
    s = 1
    # s acting on a^-1 gives b^-1 and restricts to s
    assert fg.ext.act[s][2] == 3 and fg.ext.res[s][2] == s
    flat = FreeGroupZS(corpus.action("c2-flat"))
    assert flat.mul(flat.element([2], s), flat.element([0], s)) == flat.identity


@pytest.mark.parametrize("name", ["free2", "c2-flat", "c2-twist", "rees-c4-inv"])
def test_fgzs_group_laws(name):
    fg = FreeGroupZS(corpus.action(name))
    rng = random.Random(3)
    for _ in range(100):
        e1, e2, e3 = (fg.random_element(rng, 4) for _ in range(3))
        assert fgzs_mul(fg, fgzs_mul(fg, e1, e2), e3) == fgzs_mul(fg, e1, fgzs_mul(fg, e2, e3))
        assert fgzs_mul(fg, e1, fgzs_inverse(fg, e1)) == fg.identity
        assert fgzs_mul(fg, fgzs_inverse(fg, e1), e1) == fg.identity
    M = ReesMonoid(fg.base)
    for e1, e2 in product(M.elements_up_to(2), repeat=2):
        assert rees_agrees(fg, e1, e2)
    assert fg.render(fg.identity).startswith("(ε,")


def test_finite_oracle_transversals():
    C4 = cyclic_group(4)
    phi = partial_hom(Subgroup(C4, (0, 2)), {0: 0, 2: 2})
    o = FiniteOracle(phi)
    for g in C4.elements:
        r, a = o.rep_mod_A(g)
        assert C4.mul[r][a] == g and a in (0, 2)


@pytest.mark.parametrize("name", ["c2-swap", "c2-twist", "s3-a3-identity", "rees-c4-inv"])
def test_defining_relation_holds(name):
    u = universal_group(corpus.action(name))
    o = u.oracle
    for a in o.A.elements:
        assert hnn_equal(u.presentation, [("g", a), ("t", 1, 0)], [("t", 1, 0), ("g", o.apply_phi(a))])
