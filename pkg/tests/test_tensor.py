import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from reeslab import corpus
from reeslab.errors import BimoduleMismatch, NotAMorphism, ProductsNotEqual, WellDefinednessViolation
from reeslab.tensor import MorphismExtension, TensorMonoid, extend_morphism, free_monoid, orbit_collapse

BIMODULES = ["free2", "c2-bifree", "s3-a3"]


def monoid(name):
    return TensorMonoid(corpus.bimodule(name), name)


def interleave_classes(b, n):
    """Number of classes of n-tuples under single interleaver moves (union-find over all tuples)."""
    G = b.group
    tuples = list(product(range(b.carrier_size), repeat=n))
    idx = {t: i for i, t in enumerate(tuples)}
    parent = list(range(len(tuples)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for t in tuples:
        for i in range(n - 1):
            for g in G.elements:
                u = list(t)
                u[i] = b.right[t[i]][g]
                u[i + 1] = b.left[G.inv[g]][t[i + 1]]
                a, c = find(idx[t]), find(idx[tuple(u)])
                parent[a] = c
    return len({find(i) for i in range(len(tuples))})


@pytest.mark.parametrize("name", BIMODULES)
def test_element_counts_match_brute_force(name):
    T = monoid(name)
    b = T.bimodule
    for n in (1, 2, 3):
        assert len(T.elements_of_length(n)) == interleave_classes(b, n)


def test_s3_a3_counts():
    T = monoid("s3-a3")
    assert [len(T.elements_of_length(n)) for n in range(5)] == [6, 12, 24, 48, 96]


def tuples(name, max_len=4):
    size = corpus.bimodule(name).carrier_size
    return st.lists(st.integers(0, size - 1), min_size=1, max_size=max_len)


@pytest.mark.parametrize("name", BIMODULES)
@settings(max_examples=80)
@given(data=st.data())
def test_canonical_equality_agrees_with_chain_search(name, data):
    T = monoid(name)
    xs = data.draw(tuples(name))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    a = T.element(xs)
    # a random representation of the same element
    ys = T.random_representation(a, rng)
    assert T.element(ys) == a
    assert T.chain_search(xs, ys) is not None
    # an arbitrary tuple of the same length
    zs = data.draw(st.lists(st.integers(0, T.bimodule.carrier_size - 1), min_size=len(xs), max_size=len(xs)))
    c = T.element(zs)
    assert T.tensor_equal(a, c) == T.tensor_equal(a, c, oracle=True)


@pytest.mark.parametrize("name", BIMODULES)
@settings(max_examples=60)
@given(data=st.data())
def test_associativity_and_units(name, data):
    T = monoid(name)
    G = T.group
    a, b, c = (T.element(data.draw(tuples(name, 3))) for _ in range(3))
    g = data.draw(st.sampled_from(G.elements))
    assert (a * b) * c == a * (b * c)
    assert T.identity * a == a == a * T.identity
    u = T.unit(g)
    assert (u * a) * b == u * (a * b)
    assert u * T.unit(G.inv[g]) == T.identity
    assert (a * b).length == a.length + b.length


def test_chain_round_trip():
    T = monoid("s3-a3")
    xs = (0, 5, 7)
    chain = T.chain_search(xs, T.apply_chain(xs, [3, 4]))
    assert chain is not None
    assert T.apply_chain(xs, chain) == T.apply_chain(xs, [3, 4])
    assert T.chain_search((0,), (1,)) is None
    assert T.chain_search((0, 1), (0,)) is None
    with pytest.raises(ValueError):
        T.apply_chain(xs, [1])


def test_free_monoid_equality_is_tuple_equality():
    F = free_monoid("ab")
    for n in range(1, 5):
        for xs in product(range(2), repeat=n):
            for ys in product(range(2), repeat=n):
                assert (F.element(xs) == F.element(ys)) == (xs == ys)


@pytest.mark.parametrize("name", BIMODULES)
def test_divisor_chain_audit(name):
    T = monoid(name)
    for a in T.elements_up_to(3):
        audit = T.normalized_length(a, audit=True)
        assert audit.ok
        assert len(audit.chain) == a.length + 1
        assert T.normalized_length(a) == a.length


def test_audit_count_of_representations():
    T = monoid("s3-a3")
    a = T.elements_of_length(3)[0]
    audit = T.normalized_length(a, audit=True)
    assert audit.representations == 6 ** 2
    assert len(audit.chain) == 4


def check_equidivision(T, p, q, r, s):
    res = T.equidivide(p, q, r, s)
    w = res.witness
    if res.side == "left":
        assert T.mul(p, w) == r and T.mul(w, s) == q
    else:
        assert T.mul(r, w) == p and T.mul(w, q) == s


@pytest.mark.parametrize("name", BIMODULES)
@settings(max_examples=80)
@given(data=st.data())
def test_equidivision_property(name, data):
    T = monoid(name)
    G = T.group
    xs = data.draw(tuples(name, 5))
    a = T.element(xs)
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    ys = T.random_representation(a, rng)
    i = data.draw(st.integers(0, len(xs)))
    j = data.draw(st.integers(0, len(ys)))
    g = data.draw(st.sampled_from(G.elements))
    h = data.draw(st.sampled_from(G.elements))
    p = T.mul(T.element(xs[:i]), T.unit(g))
    q = T.mul(T.unit(G.inv[g]), T.element(xs[i:]))
    r = T.mul(T.element(ys[:j]), T.unit(h))
    s = T.mul(T.unit(G.inv[h]), T.element(ys[j:]))
    assert T.mul(p, q) == T.mul(r, s) == a
    check_equidivision(T, p, q, r, s)


def test_equidivision_rejects_unequal_products():
    T = monoid("free2")
    a, b = T.element((0,)), T.element((1,))
    with pytest.raises(ProductsNotEqual):
        T.equidivide(a, a, b, b)


def test_render_parse_round_trip():
    T = monoid("s3-a3")
    for a in T.elements_up_to(2):
        assert T.parse(T.render(a)) == a
    F = free_monoid("ab")
    assert F.render(F.parse("a*b*a")) == "a*b*a"


def test_orbit_collapse_is_well_defined():
    b = corpus.bimodule("s3-a3")
    T = TensorMonoid(b)
    F, ext = orbit_collapse(b)
    for a in T.elements_up_to(3):
        ext.assert_well_defined(a, samples=30)
        assert F.render(ext(a)) in ("1", "*".join(["o0"] * a.length))


def test_orbit_collapse_on_free2_is_identity_shape():
    b = corpus.bimodule("free2")
    T = TensorMonoid(b)
    F, ext = orbit_collapse(b)
    for a in T.elements_up_to(3):
        assert ext(a).canon == a.canon


def test_extend_morphism_errors():
    b = corpus.bimodule("c2-bifree")
    T = TensorMonoid(b)
    F = free_monoid("z")
    alpha = [0, 0]
    # every point to the same letter is a morphism into the free monoid
    beta = [F.element((0,))] * b.carrier_size
    assert extend_morphism(b, alpha, beta, T.element((0, 1)), F).canon == (0, 0)
    # sending points of one orbit to different letters is not
    F2 = free_monoid("yz")
    with pytest.raises(NotAMorphism):
        MorphismExtension(b, alpha, [F2.element((x % 2,)) for x in range(b.carrier_size)], F2)
    other = TensorMonoid(corpus.bimodule("free2"))
    with pytest.raises(BimoduleMismatch):
        extend_morphism(b, alpha, beta, other.element((0,)), F)


def test_unchecked_bad_map_is_caught_by_sampling():
    b = corpus.bimodule("c2-bifree")
    T = TensorMonoid(b)
    F2 = free_monoid("yz")
    beta = [F2.element((x % 2,)) for x in range(b.carrier_size)]
    ext = MorphismExtension(b, [0, 0], beta, F2, check=False)
    bad = None
    for a in T.elements_of_length(2):
        try:
            ext.assert_well_defined(a, samples=50)
        except WellDefinednessViolation:
            bad = a
            break
    assert bad is not None
