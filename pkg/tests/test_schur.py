import itertools

import pytest

from qqueer.coeff import ONE, vpow
from qqueer.diffops import GenSymbol
from qqueer.matidx import SuperMatrix, co, enumerate_matrices, ro, weights
from qqueer.schur import (
    SchurAlgebra, SchurRep, bareiss_rank, binomial_scalar, block_check, build_witness_family, gen_matrix,
    ideal_check, integrality_check, one_r, oracle_scalar, relation_check, trailer_scalar, verify,
)
from qqueer.tensormod import TensorElement

G = GenSymbol


def test_gen_matrix_zero_columns():
    M = gen_matrix(G("E", 1), 2, 2)
    for A, col in M.items():
        if A.e(1, 0) == A.e(1, 1) == A.o(1, 0) == A.o(1, 1) == 0:
            assert col == {}
    with pytest.raises(ValueError):
        gen_matrix(G("Eb", 1), 2, 2)


def test_one_r():
    assert one_r(1, 2) == TensorElement.basis(SuperMatrix.diag((2,)))
    assert one_r(2, 1) == TensorElement(2, {SuperMatrix.diag((1, 0)): ONE, SuperMatrix.diag((0, 1)): ONE})


def test_witness_family_sizes():
    fam = build_witness_family(2, 0)
    assert len(fam.order) == 1 and fam.triangular and fam.rank() == 1
    for r in (1, 2, 3):
        fam = build_witness_family(1, r)
        assert len(fam.order) == 2 and fam.triangular and fam.rank() == 2
    fam = build_witness_family(2, 2)
    assert fam.triangular and fam.rank() == 32


def test_bareiss_rank_detects_dependence():
    mats = enumerate_matrices(2, 1)
    A, B = mats[0], mats[1]
    vecs = {A: TensorElement(2, {A: ONE, B: vpow(1)}), B: TensorElement(2, {A: vpow(-1), B: ONE})}
    assert bareiss_rank(2, vecs) == 1
    vecs[B] = TensorElement(2, {A: vpow(-1), B: vpow(2)})
    assert bareiss_rank(2, vecs) == 2


@pytest.fixture(scope="module")
def alg22():
    return SchurAlgebra(2, 2)


def test_psi_reproduces_basis_vectors(alg22):
    for A in alg22.rep.basis:
        assert alg22.psi(A).canonical == TensorElement.basis(A)


def test_identity_and_weight_idempotents(alg22):
    one = alg22.identity()
    assert one.canonical == one_r(2, 2)
    for lam in weights(2, 2):
        p = alg22.psi(SuperMatrix.diag(lam))
        assert alg22.multiply(p, p) == p


def test_products_vanish_off_matching_weights(alg22):
    basis = alg22.rep.basis
    psis = {A: alg22.psi(A) for A in basis}
    for A, B in itertools.product(basis[::3], basis[::2]):
        prod = alg22.multiply(psis[A], psis[B])
        if co(A) != ro(B):
            assert prod.canonical.is_zero()
        for C in prod.canonical.terms:
            assert ro(C) == ro(A) and co(C) == co(B)


def test_unit_and_associativity(alg22):
    basis = alg22.rep.basis
    one = alg22.identity()
    psis = {A: alg22.psi(A) for A in basis}
    for A in basis:
        assert alg22.multiply(one, psis[A]) == psis[A]
        assert alg22.multiply(psis[A], one) == psis[A]
    for A, B, C in itertools.product(basis[::5], basis[::4], basis[::6]):
        x, y, z = psis[A], psis[B], psis[C]
        lhs = alg22.multiply(alg22.compact(alg22.multiply(x, y)), z)
        rhs = alg22.multiply(x, alg22.compact(alg22.multiply(y, z)))
        assert lhs == rhs


def test_compact_preserves_the_operator(alg22):
    basis = alg22.rep.basis
    u = alg22.multiply(alg22.psi(basis[7]), alg22.psi(basis[11]))
    u = alg22.multiply(u, alg22.psi(basis[3]))
    w = alg22.compact(u)
    assert w == u
    for B in basis:
        x = TensorElement.basis(B)
        assert alg22.operator_on(w, x) == alg22.operator_on(u, x)


def test_operator_on_matches_product(alg22):
    basis = alg22.rep.basis
    A, B = basis[4], basis[9]
    x = alg22.psi(A)
    assert alg22.operator_on(x, TensorElement.basis(B)) == \
        alg22.multiply(x, alg22.psi(B)).canonical


@pytest.mark.parametrize("n,r", [(1, 2), (2, 2)])
def test_invariant_suites(n, r):
    rep = SchurRep(n, r)
    for report in (ideal_check(n, r, rep), integrality_check(n, r), block_check(n, r, rep),
                   relation_check(n, r, rep)):
        assert report.passed, report.render()


def test_verify_report():
    report = verify(2, 1)
    assert report.passed, report.render()
    names = [c.name for c in report.checks]
    assert "rank of witness family equals number of matrices" in names


def _squared(n):
    out = []
    for A in enumerate_matrices(n, 1) + enumerate_matrices(n, 2) + enumerate_matrices(n, 3):
        for pos, x in enumerate(A.odd):
            if x == 1:
                r, c = divmod(pos, n)
                out.append((A.shifted(odd=[(r, c, 1)]), r, c))
    return out


def test_odd_square_rules_against_normal_ordering():
    """The binomial form always matches; the bare trailer only when the even entry is zero."""
    seen_mismatch = False
    for B, r, c in _squared(2):
        oracle = oracle_scalar(B)
        assert binomial_scalar(B) == oracle
        if B.e(r, c) == 0:
            assert trailer_scalar(B) == oracle
        else:
            assert trailer_scalar(B) != oracle
            seen_mismatch = True
    assert seen_mismatch
