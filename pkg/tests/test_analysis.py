import random

import pytest
from hypothesis import given, strategies as st

from lielab import (
    GF, QQ, DimensionMismatchError, ExcludedCharacteristicError, Matrix, center, central_quotient,
    centralizer_C, change_basis, derivation_space, find_soluble_through, is_soluble, is_subring, make_abelian,
    make_ga1, make_ga1_twisted, make_heisenberg, make_sl2, make_witt, normalizer, random_basis_change,
    recognize_ga1, recognize_sl2, verify_isomorphism,
)
from lielab.analysis import derivation_matrices
from lielab.linalg import charpoly, poly_roots

F5, F7 = GF(5), GF(7)


def _transport_check(L, model, iso):
    """Independent bracket transport: iso [x, y] == [iso x, iso y] on basis pairs."""
    for i in range(L.dim):
        for j in range(L.dim):
            lhs = iso.apply(L.bracket(L.basis(i), L.basis(j)))
            rhs = model.bracket(iso.apply(L.basis(i)), iso.apply(L.basis(j)))
            assert lhs == rhs


@pytest.mark.parametrize("q", [5, 7, 25, 49])
def test_sl2_round_trip(q):
    F = GF(5 if q % 5 == 0 else 7, 2 if q > 7 else 1)
    model = make_sl2(F)
    for seed in range(25):
        L = random_basis_change(model, seed)
        rep = recognize_sl2(L, seed=seed)
        assert rep.recognized, (seed, rep.failure_reason)
        _transport_check(L, model, rep.isomorphism)
        t = rep.triple
        assert L.bracket(t.h, t.e) == L.scale(F.from_int(2), t.e)
        assert L.bracket(t.h, t.f) == L.scale(F.from_int(-2), t.f)
        assert L.bracket(t.e, t.f) == t.h


def test_sl2_over_q_and_non_examples():
    assert recognize_sl2(random_basis_change(make_sl2(QQ), 3)).recognized
    rep = recognize_sl2(make_heisenberg(F5))
    assert rep.verdict == "not_isomorphic" and rep.failure_reason == "nilpotent"
    from lielab import direct_sum
    rep = recognize_sl2(direct_sum(make_ga1(F5), make_abelian(F5, 1)))
    assert rep.verdict == "not_isomorphic" and rep.failure_reason == "soluble"
    with pytest.raises(ExcludedCharacteristicError):
        recognize_sl2(make_sl2(GF(3)))
    with pytest.raises(DimensionMismatchError):
        recognize_sl2(make_ga1(F5))


def test_so3_over_q_is_inconclusive_not_false():
    # [x,y]=z, [y,z]=x, [z,x]=y has no rational split element
    from lielab import LieRing
    L = LieRing.from_values(QQ, 3, {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (0, 2): [0, -1, 0]})
    rep = recognize_sl2(L, budget=64)
    assert rep.verdict == "inconclusive"


def test_sl2_eigenvalue_outside_prime_field():
    # scaling h by t in F_25 gives ad_h eigenvalues outside F_5
    E = GF(5, 2)
    model = make_sl2(E)
    t = E.t
    g = Matrix(E, [[t, E.zero, E.zero], [E.zero, E.one, E.zero], [E.zero, E.zero, E.one]], 3)
    L = change_basis(model, g)
    rep = recognize_sl2(L)
    assert rep.recognized
    cp = charpoly(L.ad(L.basis(0)))
    assert not set(poly_roots(E, cp)) <= set(E.prime_subfield())


@pytest.mark.parametrize("F", [F5, F7, QQ], ids=repr)
def test_ga1_round_trip(F):
    model = make_ga1(F)
    for seed in range(25):
        L = random_basis_change(model, seed)
        rep = recognize_ga1(L)
        assert rep.recognized
        assert verify_isomorphism(L, model, rep.isomorphism)
        _transport_check(L, model, rep.isomorphism)


def test_ga1_non_examples():
    rep = recognize_ga1(make_abelian(F5, 2))
    assert rep.verdict == "not_isomorphic" and rep.failure_reason == "nilpotent"
    with pytest.raises(DimensionMismatchError):
        recognize_ga1(make_sl2(F5))
    with pytest.raises(ExcludedCharacteristicError):
        recognize_ga1(make_ga1(GF(2)))


def test_verify_isomorphism_rejects_wrong_maps():
    L = make_sl2(F5)
    assert verify_isomorphism(L, L, Matrix.identity(F5, 3))
    assert not verify_isomorphism(L, L, Matrix.identity(F5, 3).scale(F5.from_int(2)))
    assert not verify_isomorphism(L, L, Matrix.zeros(F5, 3, 3))


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_field_derivations_vanish(p, k):
    assert derivation_space(GF(p, k)).nrows == 0


def test_lie_derivations():
    L = make_sl2(F5)
    D = derivation_space(L)
    assert D.nrows == 3
    inner = [L.ad(L.basis(i)) for i in range(3)]
    from lielab import Subspace
    flat = lambda M: [x for r in M.rows for x in r]  # noqa: E731
    assert Subspace(F5, 9, [flat(M) for M in inner]) == Subspace(F5, 9, D.rows)
    assert derivation_space(make_abelian(F5, 3)).nrows == 9
    # Heisenberg: derivations form a 6-dimensional space
    assert derivation_space(make_heisenberg(F5)).nrows == 6


@given(st.integers(0, 10**6))
def test_derivations_satisfy_leibniz(seed):
    rng = random.Random(seed)
    L = [make_witt(5), make_heisenberg(F5), make_ga1_twisted(5, 2)][seed % 3]
    D = derivation_space(L)
    mats = derivation_matrices(D, L.dim)
    M = mats[rng.randrange(len(mats))]
    x = tuple(F5.random_element(rng) for _ in range(L.dim))
    y = tuple(F5.random_element(rng) for _ in range(L.dim))
    assert M.apply(L.bracket(x, y)) == L.add(L.bracket(M.apply(x), y), L.bracket(x, M.apply(y)))


def test_find_soluble_through():
    L = make_sl2(F5)
    h, e, f = (L.basis(i) for i in range(3))
    S = find_soluble_through(L, e)
    assert S == L.span([h, e])
    assert normalizer(L, S) == S and S.codim == 1
    A = make_abelian(F5, 3)
    assert find_soluble_through(A, A.basis(0)).is_full()
    W = make_witt(5)
    S = find_soluble_through(W, W.basis(2))
    assert is_subring(W, S) and is_soluble(W, S)
    assert S <= W.span([W.basis(i) for i in range(1, 5)])


@pytest.mark.parametrize("q", [5, 7, 25])
def test_borel_is_self_normalizing(q):
    F = GF(5 if q % 5 == 0 else 7, 2 if q > 7 else 1)
    L = make_sl2(F)
    S = find_soluble_through(L, L.basis(1))
    assert S.codim == 1 and normalizer(L, S) == S


def test_center_and_central_quotient():
    T = make_ga1_twisted(5, 2, [[1, 0], [0, 0]])
    assert center(T).dim == 1
    Q = central_quotient(T)
    assert Q.dim == 3 and center(Q).is_zero()
    assert center(make_sl2(F5)).is_zero()
    H = make_heisenberg(F5)
    assert center(H) == H.span([H.basis(2)])
    with pytest.raises(ValueError):
        central_quotient(make_abelian(F5, 2))


def test_c_of_e_is_e2():
    for F in (F5, F7, GF(5, 2)):
        L = make_sl2(F)
        assert centralizer_C(L, L.basis(1)) == L.span([L.basis(1)])
