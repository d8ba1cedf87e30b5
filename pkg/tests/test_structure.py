import pytest

from rlw import (NotASubuniverse, classify, cns_generated, congruences,
                 congruences_bruteforce, convex_normal_subalgebras, has_cep,
                 natural_projection, principal_congruence, quotient,
                 subalgebra, subuniverses)
from rlw.catalog import (catalog_all, make_dmm, make_figure, make_goedel,
                         make_sugihara)
from rlw.morphisms import is_hom
from rlw.structure import congruence_join, congruence_leq


def test_principal_congruence_examples():
    G3 = make_goedel(3)
    th = principal_congruence(G3, 1, 2)       # Theta(-1, 0)
    assert th.blocks == ((0,), (1, 2))
    assert principal_congruence(G3, 1, 1).is_identity
    ss = make_figure("strictsimp")
    for a in ss.elements:
        for b in ss.elements:
            if a != b:
                assert principal_congruence(ss, a, b).is_full


def test_congruence_counts():
    assert len(congruences(make_goedel(3))) == 3
    assert len(congruences(make_goedel(1))) == 1
    assert len(congruences(make_figure("strictsimp"))) == 2


def test_congruences_match_bruteforce_small():
    for A in catalog_all(max_size=5):
        if A.size > 5:
            continue
        fast = {c.blocks for c in congruences(A)}
        slow = {c.blocks for c in congruences_bruteforce(A)}
        assert fast == slow, A.name


def test_con_lattice_structure():
    con = congruences(make_goedel(4))
    assert con.identity.is_identity and con.full.is_full
    for c in con:
        assert congruence_leq(con.identity, c) and congruence_leq(c, con.full)
    j = congruence_join(con.congruences[1], con.congruences[1])
    assert j.blocks == con.congruences[1].blocks


def test_cns_bijection():
    for A in catalog_all(max_size=6):
        cns = convex_normal_subalgebras(A)
        con = congruences(A)
        assert len(set(cns)) == len(con)


def test_cns_generated_cepfail():
    X = make_figure("cepfail")
    lbl = {X.labels[i]: i for i in X.elements}
    assert cns_generated(X, {lbl["a"]}) == {lbl["e"], lbl["a"], lbl["b"]}
    B = subalgebra(X, (lbl["b"], lbl["a"], lbl["e"]))
    blbl = {B.labels[i]: i for i in B.elements}
    assert cns_generated(B, {blbl["a"]}) == {blbl["e"], blbl["a"]}
    assert cns_generated(X, {X.unit}) == {X.unit}


def test_quotient_examples():
    A = make_goedel(4)
    con = congruences(A)
    assert quotient(A, con.identity).size == A.size
    assert quotient(A, con.full).is_trivial
    for theta in con:
        Q, proj = natural_projection(A, theta)
        assert Q.size == theta.nblocks
        assert is_hom(A, Q, proj)


def test_subuniverses_examples():
    M2 = make_dmm(2)
    assert subuniverses(M2) == ((0, 1, 3, 4), (0, 1, 2, 3, 4))
    S5 = make_sugihara(5)
    assert subuniverses(S5) == ((2,), (0, 2, 4), (1, 2, 3), (0, 1, 2, 3, 4))
    with pytest.raises(NotASubuniverse):
        subalgebra(S5, (0, 1))


def test_subalgebra_revalidates():
    S5 = make_sugihara(5)
    sub = subalgebra(S5, (0, 2, 4))
    assert sub.size == 3 and sub.constants == (("f", 1),)
    from rlw.morphisms import are_isomorphic
    assert are_isomorphic(sub, make_sugihara(3)) is not None


def test_classify_examples():
    assert classify(make_figure("strictsimp")).strictly_simple
    m2 = classify(make_dmm(2))
    assert m2.simple and not m2.strictly_simple
    for A in catalog_all(max_size=6):
        if A.is_totally_ordered:
            assert classify(A).fsi, A.name
    # chains of size > 1 are subdirectly irreducible
    assert classify(make_goedel(4)).si
    assert not classify(make_goedel(1)).si


def test_classify_stable_under_iso():
    # the {-2,0,2} subalgebra of S_5 is isomorphic to S_3 and classifies alike
    S5 = make_sugihara(5)
    sub = subalgebra(S5, (0, 2, 4))
    assert classify(sub) == classify(make_sugihara(3))


def test_has_cep_examples():
    assert not has_cep(make_figure("cepfail")).holds
    for m in range(1, 6):
        assert has_cep(make_goedel(m)).holds     # commutative
    assert has_cep(make_goedel(1)).holds


def test_cepfail_witness_detail():
    X = make_figure("cepfail")
    res = has_cep(X)
    sub, theta = res.witness
    lbl = {X.labels[i]: i for i in X.elements}
    assert set(sub) == {lbl["e"], lbl["a"], lbl["b"]}
    B = subalgebra(X, sub)
    assert theta.blocks == principal_congruence(
        B, B.labels.index("a"), B.labels.index("e")).blocks
