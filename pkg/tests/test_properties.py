import pytest
from hypothesis import given, strategies as st

from rlw import (NotAChain, is_admissible, is_semilinear, property_profile,
                 satisfies_knotted)
from rlw.catalog import (catalog_all, make_com, make_dmm, make_figure,
                         make_goedel, make_luk, make_rsa, make_sugihara)
from rlw.properties import (handy_fixed_points, is_lower_involutive,
                            is_n_potent, n_potent_degree, wedge_value)


def test_s3_profile():
    p = property_profile(make_sugihara(3))
    assert p.commutative and p.idempotent and p.involutive_f and p.semilinear


def test_trivial_profile_vacuous():
    p = property_profile(make_goedel(1))
    assert p.commutative and p.idempotent and p.integral and p.semilinear
    assert p.n_potent == 0 and p.lower_involutive


def test_a1_potency():
    # A1 satisfies the square-increasing law and x^4 = x^3 (3-potent); its
    # least potency degree is 2 (f^3 = f^2 = top)
    A = make_figure("A1")
    p = property_profile(A)
    assert p.square_increasing
    assert is_n_potent(A, 3)
    assert p.n_potent == 2
    assert n_potent_degree(make_figure("C1")) == 3


def test_knotted_on_figures():
    # A1/B1 satisfy x^m <= x^n for 2 <= n <= m and 1 <= m <= n; C1 fails
    # (m, n) = (3, 2) because b^3 = top > f = b^2 is forced by ~b = b, so its
    # guaranteed region starts at n >= 3 (the Fig. 6 span covers the rest)
    for name in ("A1", "B1"):
        A = make_figure(name)
        for m in range(1, 5):
            for n in range(1, 5):
                if (2 <= n <= m) or (1 <= m <= n):
                    assert satisfies_knotted(A, m, n), (name, m, n)
    C1 = make_figure("C1")
    assert not satisfies_knotted(C1, 3, 2)
    for m in range(1, 6):
        for n in range(1, 6):
            if (3 <= n <= m) or (1 <= m <= n):
                assert satisfies_knotted(C1, m, n), (m, n)


def test_semilinear_on_chains():
    for A in (make_goedel(4), make_sugihara(5), make_dmm(2),
              make_figure("cepfail"), make_com(1, 2)):
        assert is_semilinear(A)


def test_semilinear_off_chains():
    # the boolean square with meet product is a product of 2-chains, hence
    # semilinear; moving the unit to a coatom breaks it (the algebra becomes
    # simple and non-chain, and semilinear FSIs are chains)
    import oracles
    from rlw import finite_algebra
    leq = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]
    meet = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]]
    B22 = finite_algebra("2x2", 4, leq, 3, meet)
    assert is_semilinear(B22)
    assert not is_semilinear(oracles.square_nonsemilinear())


def test_admissibility():
    assert is_admissible(make_sugihara(3))          # a\e = -a != e
    assert is_admissible(make_goedel(1))            # vacuous
    assert not is_admissible(make_luk(2, "hoop"))   # integral: a\e = e
    assert not is_admissible(make_rsa(3))
    assert is_admissible(make_com(1, 1))
    with pytest.raises(NotAChain):
        from rlw import finite_algebra
        leq = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]
        meet = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]]
        is_admissible(finite_algebra("2x2", 4, leq, 3, meet))


def test_lower_involutive():
    assert is_lower_involutive(make_sugihara(3))
    assert is_lower_involutive(make_goedel(1))
    assert not is_lower_involutive(make_goedel(3))
    # the wedge on S_3 is integer negation
    S3 = make_sugihara(3)
    assert [wedge_value(S3, x) for x in S3.elements] == [2, 1, 0]


def test_handy_lemma_on_catalog_chains():
    # |{x : x\d = x}| <= 1 for every d, on every catalog chain
    for A in catalog_all(max_size=7):
        if not A.is_totally_ordered:
            continue
        for d in A.elements:
            assert len(handy_fixed_points(A, d)) <= 1, (A.name, d)


def test_dmm_square_increasing_involutive():
    for p in (2, 3):
        M = make_dmm(p)
        prof = property_profile(M)
        assert prof.square_increasing and prof.involutive_f and prof.commutative


@given(st.sampled_from([make_goedel(m) for m in range(1, 6)]
                       + [make_sugihara(n) for n in range(1, 6)]
                       + [make_com(m, n) for m in range(2) for n in range(2)]))
def test_chains_are_semilinear(A):
    # chains always satisfy the semilinearity equation
    assert is_semilinear(A)


@given(st.sampled_from([make_luk(n, "mv") for n in range(1, 5)]))
def test_luk_involutive(A):
    p = property_profile(A)
    assert p.involutive_f and p.integral and p.bounded
