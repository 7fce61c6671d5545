import pytest

from lielab import (
    GF, QQ, ExcludedCharacteristicError, Matrix, NotASubringError, build, center, change_basis,
    chevalley_signs, derived_series, direct_sum, is_ideal, is_nilpotent, is_simple, is_soluble, is_subring,
    make_abelian, make_chevalley, make_ga1, make_ga1_twisted, make_heisenberg, make_sl2, make_witt, normalizer,
    random_basis_change, recognize_sl2, restrict_to_subring, root_system, verify_jacobi,
)
from lielab.chevalley import CATALOG_TYPES, integral_table
from lielab.constructions import frobenius_matrix
from lielab.structure import lower_central_series

F5, F7, F25 = GF(5), GF(7), GF(5, 2)

# number of positive roots, from the classification tables
POSITIVE = {"A1": 1, "A2": 3, "A3": 6, "A4": 10, "B2": 4, "B3": 9, "C2": 4, "C3": 9, "D4": 12, "G2": 6, "F4": 24}
CARTAN = {
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -1), (-2, 2)),
    "G2": ((2, -1), (-3, 2)),
}


@pytest.mark.parametrize("label", sorted(POSITIVE))
def test_root_system_invariants(label):
    R = root_system(label)
    assert len(R.positive_roots) == POSITIVE[label]
    for i in range(R.rank):
        assert R.cartan_integers[i][i] == 2
        for j in range(R.rank):
            if i != j:
                assert -3 <= R.cartan_integers[i][j] <= 0
    pos = set(R.positive_roots)
    for a in R.roots:
        for b in R.roots:
            s = tuple(x + y for x, y in zip(a, b))
            if any(s) and R.is_root(s):
                assert s in pos or tuple(-c for c in s) in pos
    # heights are nondecreasing along the stored order
    heights = [sum(r) for r in R.positive_roots]
    assert heights == sorted(heights)


def test_cartan_matrices_up_to_transpose():
    for label, C in CARTAN.items():
        got = root_system(label).cartan_integers
        assert got == C or got == tuple(zip(*C))


@pytest.mark.parametrize("label", CATALOG_TYPES + ("F4",))
def test_chevalley_signs(label):
    S = chevalley_signs(label)
    R = S.system
    for (a, b), n in S.structure_sign.items():
        assert S.structure_sign[(b, a)] == -n
        assert abs(n) == R.string_down(b, a) + 1
        na, nb = tuple(-c for c in a), tuple(-c for c in b)
        assert S.structure_sign[(na, nb)] == -n
    for xi, (a, b) in S.extraspecial.items():
        assert S.structure_sign[(a, b)] > 0


@pytest.mark.parametrize("label", CATALOG_TYPES)
def test_chevalley_functoriality_and_dimension(label):
    dim, table, labels = integral_table(label)
    R = root_system(label)
    assert dim == R.rank + 2 * len(R.positive_roots) == len(labels)
    LQ = make_chevalley(label, QQ)
    assert verify_jacobi(LQ)
    for p in (5, 7):
        L = make_chevalley(label, GF(p))
        assert L.dim == dim
        for i in range(dim):
            for j in range(i + 1, dim):
                want = [c % p for c in table.get((i, j), [0] * dim)]
                assert list(L.basis_bracket(i, j)) == want
                assert list(LQ.basis_bracket(i, j)) == table.get((i, j), [0] * dim)


def test_chevalley_examples():
    A1 = make_chevalley("A1", F5)
    assert A1.brackets == make_sl2(F5).brackets
    A2 = make_chevalley("A2", F7)
    assert A2.dim == 8 and is_simple(A2)
    G2 = make_chevalley("G2", QQ)
    assert G2.dim == 14 and verify_jacobi(G2)
    assert "signs" in G2.metadata
    with pytest.raises(ValueError):
        make_chevalley("E6", F5)
    with pytest.raises(ValueError):
        make_chevalley("F4", F5)
    assert verify_jacobi(make_chevalley("F4", F7, allow_extended=True))


def test_sl2_examples():
    L = make_sl2(F5)
    assert L.dim == 3 and is_simple(L)
    assert not is_soluble(make_sl2(QQ))
    L2 = make_sl2(GF(2))
    assert L2.dim == 3 and not is_simple(L2)
    assert verify_jacobi(L2)


def test_ga1_examples():
    for F in (F5, QQ):
        L = make_ga1(F)
        assert is_soluble(L) and not is_nilpotent(L)
        assert derived_series(L)[1] == L.span([L.basis(1)])
        assert center(L).is_zero()


def test_ga1_twisted_examples():
    zero = make_ga1_twisted(5, 2, [[0, 0], [0, 0]])
    assert zero.is_abelian() and center(zero).is_full()
    ident = make_ga1_twisted(5, 2, [[1, 0], [0, 1]])
    assert center(ident).is_zero()
    one = make_ga1_twisted(5, 2, [[1, 0], [0, 0]])
    assert center(one).dim == 1
    frob = make_ga1_twisted(5, 2)
    assert center(frob).is_zero()
    with pytest.raises(ValueError):
        make_ga1_twisted(5, 2, [[1, 0, 0]])
    with pytest.raises(ValueError):
        make_ga1_twisted(5, 1)


def test_ga1_twisted_center_is_kernel_of_alpha():
    for alpha in ([[1, 2], [2, 4]], [[0, 1], [0, 0]], [[3, 0], [0, 0]], [[1, 1], [1, 2]]):
        A = Matrix.from_values(F5, alpha)
        L = make_ga1_twisted(5, 2, alpha)
        assert center(L).dim == A.ncols - A.rank()


def test_frobenius_matrix_has_order_k():
    for p, k in ((5, 2), (5, 3), (7, 2)):
        M = frobenius_matrix(GF(p, k))
        P = Matrix.identity(GF(p), k)
        for _ in range(k):
            P = P @ M
        assert P == Matrix.identity(GF(p), k)


def test_heisenberg_examples():
    L = make_heisenberg(F5)
    assert is_nilpotent(L) and len(lower_central_series(L)) == 3
    z = L.span([L.basis(2)])
    assert center(L) == z and derived_series(L)[1] == z


def test_witt_examples():
    W = make_witt(5)
    assert W.dim == 5 and is_simple(W)
    e = lambda i: W.basis(i + 1)  # noqa: E731
    assert W.bracket(e(0), e(1)) == e(1)
    assert W.bracket(e(-1), e(2)) == W.scale(F5.from_int(3), e(1))
    assert W.bracket(e(2), e(3)) == W.zero()  # degree 5 is out of range
    H = W.span([e(i) for i in range(4)])
    assert is_subring(W, H) and not is_ideal(W, H) and normalizer(W, H) == H
    for p in (2, 3):
        with pytest.raises(ExcludedCharacteristicError):
            make_witt(p)
    with pytest.raises(ValueError):
        make_witt(9)


def test_witt_grading_by_e0_is_full():
    from lielab import grading
    for p in (5, 7):
        W = make_witt(p)
        G = grading(W, W.basis(1))
        assert sorted(G.dims().items()) == [(k, 1) for k in range(p)]


def test_direct_sum():
    S = direct_sum(make_sl2(F5), make_sl2(F5))
    assert S.dim == 6 and not is_simple(S)
    first = S.span([S.basis(i) for i in range(3)])
    assert is_ideal(S, first)
    D = direct_sum(make_ga1(F5), make_heisenberg(F5))
    got = [T.dim for T in derived_series(D)]
    a = [T.dim for T in derived_series(make_ga1(F5))]
    b = [T.dim for T in derived_series(make_heisenberg(F5))]
    n = max(len(a), len(b))
    a += [a[-1]] * (n - len(a))
    b += [b[-1]] * (n - len(b))
    assert got == [x + y for x, y in zip(a, b)]
    with pytest.raises(Exception):
        direct_sum(make_sl2(F5), make_sl2(F7))


def test_restrict_to_subring():
    L = make_sl2(F5)
    B = restrict_to_subring(L, L.span([L.basis(0), L.basis(1)]))
    assert B.dim == 2 and is_soluble(B) and not is_nilpotent(B)
    with pytest.raises(NotASubringError):
        restrict_to_subring(L, L.span([L.basis(1), L.basis(2)]))


def test_change_basis():
    L = make_sl2(F5)
    assert change_basis(L, Matrix.identity(F5, 3)).brackets == L.brackets
    with pytest.raises(ZeroDivisionError):
        change_basis(L, Matrix.zeros(F5, 3, 3))
    # contravariant composition: changing by g then by k equals changing by g k
    g = Matrix.from_values(F5, [[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    k = Matrix.from_values(F5, [[2, 0, 1], [1, 1, 0], [0, 4, 1]])
    assert change_basis(change_basis(L, g), k).brackets == change_basis(L, g @ k).brackets


def test_random_basis_change_then_recognize():
    L = random_basis_change(make_sl2(F5), seed=42)
    assert recognize_sl2(L).recognized


def test_build_by_name():
    assert build("sl2", "p=5").brackets == make_sl2(F5).brackets
    assert build("abelian:4", "p=7").dim == 4
    assert build("witt", "p=7").dim == 7
    assert build("ga1-twisted", "q=25").dim == 4
    assert build("chevalley:B3", "Q").dim == 21
    with pytest.raises(ExcludedCharacteristicError):
        build("witt", "p=3")
    with pytest.raises(ValueError):
        build("nonsense", "p=5")
    assert make_abelian(F25, 2).is_abelian()
