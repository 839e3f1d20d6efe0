import pytest

from qqueer.coeff import ONE, RatScalar, odd_square_scalar, qbinom, qfact, qint, vpow
from qqueer.diffops import GenSymbol
from qqueer.matidx import SuperMatrix, co, enumerate_matrices, ro
from qqueer.qpoly import divided_monomial
from qqueer.tensormod import (
    TensorElement, TensorRep, act_closed, act_derived, act_oracle, co_project, from_json,
    normalize_monomial, to_json, weight,
)
from qqueer.uword import derived_odd_words, evaluate, extend_action

G = GenSymbol


def base_gens(n):
    gens = [G("K", i) for i in range(1, n + 1)] + [G("Kinv", i) for i in range(1, n + 1)]
    gens += [G("E", h) for h in range(1, n)] + [G("F", h) for h in range(1, n)]
    return gens + [G("Kb", 1)]


def all_gens(n):
    return base_gens(n) + [G("Kb", i) for i in range(2, n + 1)] + \
        [G(k, h) for k in ("Eb", "Fb") for h in range(1, n)]


def basis(n, rmax):
    return [A for r in range(rmax + 1) for A in enumerate_matrices(n, r)]


def test_normalize_reduced_is_identity():
    for A in enumerate_matrices(2, 2):
        assert normalize_monomial(A) == TensorElement.basis(A)


def test_normalize_diagonal_odd_square():
    A = SuperMatrix.from_rows([[0]], [[2]])
    # X_1bar^[2] = X_1bar^2 / [2] = c X_1^2 / [2] = c X^[2]
    expected = odd_square_scalar() * RatScalar.of(qfact(2)) / RatScalar.of(qint(2))
    assert normalize_monomial(A) == TensorElement(1, {SuperMatrix.from_rows([[2]], [[0]]): expected})


@pytest.mark.parametrize("a0", [0, 1, 2, 3])
def test_normalize_off_diagonal_odd_square(a0):
    A = SuperMatrix.from_rows([[0, a0], [0, 0]], [[0, 2], [0, 0]])
    target = SuperMatrix.from_rows([[0, a0 + 2], [0, 0]], [[0, 0], [0, 0]])
    got = normalize_monomial(A)
    assert got == TensorElement(2, {target: odd_square_scalar() * RatScalar.of(qbinom(a0 + 2, 2))})


def test_normalize_uses_column_oracle():
    A = SuperMatrix.from_rows([[1, 0], [2, 1]], [[2, 1], [0, 0]])
    col = A.column(0)
    parts = divided_monomial(col).terms
    assert len(normalize_monomial(A)) == len(parts)


def test_negative_keys_vanish():
    assert normalize_monomial(SuperMatrix.from_rows([[-1]], [[0]])).is_zero()


def test_k_action():
    for A in basis(2, 3):
        x = TensorElement.basis(A)
        for i in range(2):
            row = sum(A.e(i, t) + A.o(i, t) for t in range(2))
            assert act_closed(G("K", i + 1), x) == x.scale(vpow(row))


def test_f_on_single_off_diagonal_entry():
    x = TensorElement.basis(SuperMatrix.unit(2, 0, 1))
    assert act_closed(G("F", 1), x) == TensorElement.basis(SuperMatrix.diag((0, 1)))


def test_e_kills_when_lower_row_is_empty():
    for A in basis(3, 2):
        x = TensorElement.basis(A)
        for h in (1, 2):
            if all(A.e(h, t) == 0 and A.o(h, t) == 0 for t in range(3)):
                assert act_closed(G("E", h), x).is_zero()
                assert act_oracle(G("E", h), x).is_zero()


def test_odd_k_on_diagonal_vector():
    x = TensorElement.basis(SuperMatrix.diag((1, 0)))
    got = act_oracle(G("Kb", 1), x)
    assert got == act_closed(G("Kb", 1), x)
    assert set(got.terms) == {SuperMatrix.unit(2, 0, 0, odd=True)}
    assert act_oracle(G("E", 1), TensorElement(2)).is_zero()


@pytest.mark.parametrize("n,rmax", [(1, 4), (2, 3), (3, 1)])
def test_closed_matches_oracle(n, rmax):
    for A in basis(n, rmax):
        x = TensorElement.basis(A)
        for g in base_gens(n):
            assert act_closed(g, x) == act_oracle(g, x), (g, A)


def test_derived_generators():
    n = 2
    for A in basis(n, 2):
        x = TensorElement.basis(A)
        if all(A.e(i, t) == 0 and A.o(i, t) == 0 for i in range(2) for t in range(2)):
            assert act_derived(G("Eb", 1), x).is_zero()
    x = TensorElement.basis(SuperMatrix.diag((0, 1)))
    words = derived_odd_words(n)
    assert act_derived(G("Kb", 2), x) == evaluate(words[G("Kb", 2)], extend_action(act_closed, n), x)
    assert not act_derived(G("Kb", 2), x).is_zero()


@pytest.mark.parametrize("n,rmax", [(2, 3), (3, 2)])
def test_gradings_preserved(n, rmax):
    rep = TensorRep(n)
    for A in basis(n, rmax):
        x = TensorElement.basis(A)
        for g in all_gens(n):
            y = rep.act(g, x)
            shift = [0] * n
            if g.kind in ("E", "Eb"):
                shift[g.index - 1], shift[g.index] = 1, -1
            elif g.kind in ("F", "Fb"):
                shift[g.index - 1], shift[g.index] = -1, 1
            flips = g.kind in ("Kb", "Eb", "Fb")
            for B in y.terms:
                assert B.degree() == A.degree()
                assert co(B) == co(A)
                assert ro(B) == tuple(a + s for a, s in zip(ro(A), shift))
                assert B.parity() == (A.parity() + flips) % 2


@pytest.mark.parametrize("n,rmax", [(1, 3), (2, 3), (3, 3)])
def test_odd_k_kills_empty_rows(n, rmax):
    rep = TensorRep(n)
    for A in basis(n, rmax):
        for i in range(n):
            if ro(A)[i] == 0:
                assert rep.act(G("Kb", i + 1), TensorElement.basis(A)).is_zero(), (i, A)


def test_e_and_f_kill_weight_spaces():
    rep = TensorRep(3)
    for A in basis(3, 2):
        lam = ro(A)
        x = TensorElement.basis(A)
        for h in (1, 2):
            if lam[h] == 0:
                assert rep.act(G("E", h), x).is_zero()
                assert rep.act(G("Eb", h), x).is_zero()
            if lam[h - 1] == 0:
                assert rep.act(G("F", h), x).is_zero()
                assert rep.act(G("Fb", h), x).is_zero()


def test_weight_and_projection():
    assert weight(TensorElement.basis(SuperMatrix.diag((2, 1)))) == (2, 1)
    for A in basis(2, 2):
        x = TensorElement.basis(A)
        assert weight(x) == ro(A)
        assert co_project(x, co(A)) == x
        other = tuple(reversed(co(A)))
        if other != co(A):
            assert co_project(x, other).is_zero()


def test_projection_commutes_with_generators():
    rep = TensorRep(2)
    mats = enumerate_matrices(2, 2)
    x = TensorElement(2, {A: RatScalar.of(k + 1) for k, A in enumerate(mats)})
    for lam in [(2, 0), (1, 1), (0, 2)]:
        for g in all_gens(2):
            assert co_project(rep.act(g, x), lam) == rep.act(g, co_project(x, lam))


def test_routes_agree_on_derived_symbols():
    closed, oracle = TensorRep(2, "closed"), TensorRep(2, "oracle")
    for A in basis(2, 2):
        x = TensorElement.basis(A)
        for g in all_gens(2) + [G("E", 1, 2), G("F", 1, 3)]:
            assert closed.act(g, x) == oracle.act(g, x)
    with pytest.raises(ValueError):
        TensorRep(2, "other")


def test_json_round_trip_and_validation():
    mats = enumerate_matrices(2, 2)
    x = TensorElement(2, {A: vpow(k - 3) + ONE for k, A in enumerate(mats)})
    y = from_json(to_json(x))
    assert y == x and y.n == 2
    with pytest.raises(ValueError):
        TensorElement(2, {SuperMatrix.from_rows([[0, 0], [0, 0]], [[2, 0], [0, 0]]): ONE})
