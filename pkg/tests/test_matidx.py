import pytest

from qqueer.matidx import (
    SuperMatrix, co, compositions, count_matrices, enumerate_matrices, parity, prec, prec_co, ro,
    roco, strip_diag, total_key, vec, weights,
)


def M(even, odd):
    return SuperMatrix.from_rows(even, odd)


def test_parity_of_indices_and_matrices():
    assert parity((0, 0, 0, 0, 0, 0)) == 0
    assert parity((0, 0, 0, 1, 0, 1)) == 0
    assert parity(SuperMatrix.unit(2, 0, 1, odd=True)) == 1


def test_row_and_column_sums():
    z = SuperMatrix.zero(3)
    assert roco(z) == ((0, 0, 0), (0, 0, 0))
    A = SuperMatrix.unit(3, 0, 1).shifted(odd=[(1, 0, 1)])
    assert ro(A) == (1, 1, 0)
    assert co(A) == (1, 1, 0)


def test_row_and_column_sums_by_direct_count():
    A = M([[1, 2, 0], [0, 3, 1], [4, 0, 0]], [[0, 1, 1], [1, 0, 0], [0, 0, 1]])
    assert ro(A) == (5, 5, 5)
    assert co(A) == (6, 6, 3)


def test_vec_layout_n3():
    A = SuperMatrix.unit(3, 2, 2, odd=True, value=5)
    v = vec(A)
    assert len(v) == 2 * 9 - 3
    assert v[0] == 5 and sum(v) == 5
    assert vec(SuperMatrix.zero(3)) == (0,) * 15


def test_vec_layout_n2():
    A = M([[7, 3], [4, 9]], [[1, 2], [5, 6]])
    # (a1_22, a1_12, a0_12, a1_21, a1_11, a0_21)
    assert vec(A) == (6, 2, 3, 5, 1, 4)


def test_vec_drops_even_diagonal():
    assert vec(SuperMatrix.diag((3, 4))) == (0,) * 6


def test_prec():
    A = M([[0, 0], [0, 0]], [[0, 0], [0, 1]])
    B = M([[0, 0], [5, 0]], [[0, 0], [0, 0]])
    assert prec(A, A).name == "equal-vec"
    r = prec(A, B)
    assert r.name == "greater" and r.position == 0
    assert prec(B, A).name == "less"
    C = M([[0, 1], [0, 0]], [[0, 0], [0, 0]])
    D = M([[0, 0], [0, 0]], [[0, 0], [0, 0]])
    assert prec(C, D).position == 2


def test_prec_co_needs_equal_column_sums():
    A = SuperMatrix.unit(2, 0, 1)
    B = SuperMatrix.unit(2, 1, 0)
    assert prec_co(A, B) is None
    assert prec_co(A, SuperMatrix.unit(2, 1, 1)).name == "greater"


def test_total_key_refines_prec():
    mats = enumerate_matrices(2, 2)
    for A in mats:
        for B in mats:
            p = prec(A, B).order
            if p:
                assert (total_key(A) > total_key(B)) == (p > 0)
    assert len({total_key(A) for A in mats}) == len(mats)


def test_enumeration_counts():
    assert sorted(enumerate_matrices(1, 1), key=total_key) == [M([[1]], [[0]]), M([[0]], [[1]])]
    assert len(enumerate_matrices(2, 1)) == 8
    assert len(enumerate_matrices(2, 2)) == 32
    assert count_matrices(2, 2) == 32


@pytest.mark.parametrize("n,r", [(1, 3), (2, 3), (3, 2)])
def test_enumeration_matches_stars_and_bars(n, r):
    from math import comb

    cells = n * n
    expected = sum(comb(cells, k) * comb(r - k + cells - 1, cells - 1) for k in range(0, min(cells, r) + 1))
    mats = enumerate_matrices(n, r)
    assert len(mats) == expected == count_matrices(n, r)
    assert all(A.is_reduced() and A.degree() == r for A in mats)


def test_primed_enumeration_has_zero_even_diagonal():
    for A in enumerate_matrices(2, 3, primed=True):
        assert A.is_primed() and A.diagonal() == (0, 0)


def test_strip_diag():
    assert strip_diag(SuperMatrix.diag((2, 1))) == (SuperMatrix.zero(2), (2, 1))
    A = SuperMatrix.unit(2, 0, 1, odd=True)
    assert strip_diag(A) == (A, (0, 0))
    B = M([[1, 1], [0, 0]], [[0, 0], [0, 0]])
    assert strip_diag(B) == (SuperMatrix.unit(2, 0, 1), (1, 0))


def test_weights_and_compositions():
    assert set(weights(2, 2)) == set(compositions(2, 2))
    assert sorted(weights(2, 2)) == [(0, 2), (1, 1), (2, 0)]


def test_json_round_trip():
    A = M([[1, 2], [0, 3]], [[1, 0], [0, 1]])
    assert SuperMatrix.from_json(A.to_json()) == A
    with pytest.raises(ValueError):
        SuperMatrix.from_json({"even": [[1, 2]], "odd": [[0]]})
