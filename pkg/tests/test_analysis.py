from itertools import product

import pytest

from reeslab import corpus
from reeslab.analysis import (
    GreenOracle,
    bourbaki_factor,
    components,
    fundamental_quotient,
    green,
    h_class,
    kernel,
    kernel_bruteforce,
    letter_orbits,
    max_left_ideal_bounded,
    maximal_principal_ideal_count,
    property_report,
    reassemble,
    right_cancellation_bruteforce,
    right_reversible_bounded,
    schutzenberger,
    schutzenberger_definitional,
    stabilizer_data,
    word_orbit_count,
)
from reeslab.selfsim import ReesElement, ReesMonoid, rees_mul

# flags computed once by the property battery and checked by hand against the tables
EXPECTED = {
    #                  irred  canc   recur  fund   kernel orbits
    "free2":          (False, True, False, True, 1, 2),
    "c2-swap":        (True, True, False, True, 1, 1),
    "c2-flat":        (False, True, False, False, 2, 2),
    "c2-twist":       (True, True, False, True, 1, 1),
    "c2-kernel":      (False, False, False, False, 2, 2),
    "s3-a3-identity": (True, True, False, False, 3, 1),
    "rees-c4-square": (True, False, False, False, 4, 1),
    "rees-c4-inv":    (True, True, True, False, 4, 1),
}


@pytest.mark.parametrize("name", corpus.ACTIONS)
def test_property_report_values(name):
    r = property_report(corpus.action(name))
    assert (r.irreducible, r.cancellative, r.recurrent, r.fundamental, r.kernel_size,
            r.orbit_count) == EXPECTED[name]
    d = r.to_dict()
    assert d["name"] == name and "witnesses" in d


def test_report_witnesses():
    r = property_report(corpus.action("c2-kernel"))
    assert r.witnesses["right_cancellative"]["kernel_element"] == "s"
    r = property_report(corpus.action("rees-c4-square"))
    assert r.level_transitive["holds"] and not r.level_transitive["proven"]
    assert not r.right_reversible
    r = property_report(corpus.action("rees-c4-inv"))
    assert r.level_transitive["proven"] and r.right_reversible


@pytest.mark.parametrize("name", corpus.ACTIONS)
def test_green_formulas_against_oracle(name):
    a = corpus.action(name)
    o = GreenOracle(a, max_len=2)
    for e1, e2 in product(o.elements, repeat=2):
        for rel in "RLHJD":
            assert bool(green(a, e1, e2, rel)) == o.relation(e1, e2, rel), (rel, e1, e2)


@pytest.mark.parametrize("name", ["c2-swap", "s3-a3-identity", "rees-c4-square"])
def test_green_witnesses(name):
    a = corpus.action(name)
    G = a.group
    M = ReesMonoid(a)
    pool = M.elements_up_to(2)
    for e1, e2 in product(pool, repeat=2):
        r = green(a, e1, e2, "R")
        if r:
            assert rees_mul(a, e2, ReesElement((), r.witness)) == e1
        lres = green(a, e1, e2, "L")
        if lres:
            assert rees_mul(a, ReesElement((), lres.witness), e2) == e1
        j = green(a, e1, e2, "J")
        if j:
            k, v = j.witness
            assert M.product(ReesElement((), k), e2, ReesElement((), v)) == e1
    with pytest.raises(ValueError):
        green(a, pool[0], pool[0], "Q")
    assert G.order == len(M.elements_of_length(0))


@pytest.mark.parametrize("name", corpus.ACTIONS)
def test_kernel_matches_bruteforce(name):
    a = corpus.action(name)
    K = kernel(a)
    Kb, _ = kernel_bruteforce(a)
    assert K == Kb
    Q = fundamental_quotient(a)
    assert kernel(Q).is_trivial()


def test_kernel_depths():
    assert kernel_bruteforce(corpus.action("c2-flat"))[1] == 0
    assert kernel_bruteforce(corpus.action("c2-swap"))[1] == 1


def test_stabilizer_data():
    a = corpus.action("s3-a3-identity")
    sd = stabilizer_data(a, (0,))
    assert len(sd.stabilizer) == 3 and sd.phi_map.injective and len(sd.image) == 3
    a = corpus.action("rees-c4-square")
    sd = stabilizer_data(a, (0,))
    assert len(sd.stabilizer) == 4 and not sd.phi_map.injective and len(sd.image) == 2


@pytest.mark.parametrize("name", corpus.ACTIONS)
def test_right_cancellation_flag(name):
    a = corpus.action(name)
    flag = property_report(a).right_cancellative
    assert flag == (right_cancellation_bruteforce(a, 3) is None)


def test_right_cancellation_witness():
    a = corpus.action("c2-kernel")
    e, e2, f = right_cancellation_bruteforce(a, 3)
    assert e != e2 and rees_mul(a, e, f) == rees_mul(a, e2, f)


@pytest.mark.parametrize("name", corpus.ACTIONS)
def test_schutzenberger_two_ways(name):
    a = corpus.action(name)
    for e in ReesMonoid(a).elements_up_to(2):
        assert schutzenberger(a, e) == schutzenberger_definitional(a, e)
        assert len(h_class(a, e)) == len(schutzenberger(a, e))


def test_orbits_and_counts():
    assert letter_orbits(corpus.action("c2-swap")) == [[0, 1]]
    assert letter_orbits(corpus.action("c2-flat")) == [[0], [1]]
    assert word_orbit_count(corpus.action("c2-swap"), 2) == 2
    assert word_orbit_count(corpus.action("rees-c4-inv"), 3) == 1


@pytest.mark.parametrize("name", ["free2", "c2-flat", "c2-kernel"])
def test_bourbaki_round_trip(name):
    a = corpus.action(name)
    M = ReesMonoid(a)
    seen = {}
    for e in M.elements_up_to(4):
        f = bourbaki_factor(a, e)
        assert reassemble(a, f) == e
        seq = f.component_sequence()
        assert all(x != y for x, y in zip(seq, seq[1:]))
        assert f not in seen
        seen[f] = e
    assert len(components(a)) == len(letter_orbits(a)) == maximal_principal_ideal_count(a) == 2


def test_bounded_ideal_checks():
    assert right_reversible_bounded(corpus.action("rees-c4-inv"), 2) is None
    assert right_reversible_bounded(corpus.action("free2"), 1) is not None
    # k.(x,1) = (x, k^-1) reaches every atom when restriction is inversion
    assert max_left_ideal_bounded(corpus.action("rees-c4-inv"))
    # trivial restrictions: unit multiples of a never reach (a, s)
    assert not max_left_ideal_bounded(corpus.action("c2-swap"))
    assert not max_left_ideal_bounded(corpus.action("free2"))


def test_c2_flat_runs():
    a = corpus.action("c2-flat")
    f = bourbaki_factor(a, ReesElement((0, 1, 1, 0), 1))
    assert [w for _, w in f.runs] == [(0,), (1, 1), (0,)] and f.unit == 1
