import pytest

from qqueer.coeff import ONE, vpow
from qqueer.diffops import GenSymbol
from qqueer.matidx import SuperMatrix, enumerate_matrices
from qqueer.tensormod import TensorElement, TensorRep, act_closed
from qqueer.uword import (
    GeneratorWord, S, WordCombination, derived_odd_words, evaluate, monomial_word, omega, parse_word,
    pbw_factors, pbw_word, relation_residual, relations, root_vector,
)

W = parse_word


def wc(*pairs):
    return WordCombination([(c, W(t)) for c, t in pairs])


def test_parse_print_round_trip():
    for text in ["E1^(2) F2 Kb1 K1^-1", "1", "Eb1 Fb2 Kb3", "K2^3 E1 F1^(3)"]:
        assert W(str(W(text))) == W(text)
    assert W("1") == GeneratorWord()
    with pytest.raises(ValueError):
        W("Q1")


def test_omega_examples_and_involution():
    assert omega(W("E1 F2")) == W("E2 F1")
    assert omega(W("K1 Kb2")) == W("Kb2 K1^-1")
    for text in ["E1^(2) F2 Kb1 K1^-1", "Eb1 Fb2 K3", "1"]:
        assert omega(omega(W(text))) == W(text)
    x = wc((vpow(2) + ONE, "E1 F1"), (vpow(-1), "Kb1"))
    assert x.omega().omega() == x
    assert x.omega() == wc((vpow(-2) + ONE, "E1 F1"), (vpow(1), "Kb1"))


def test_root_vectors():
    assert root_vector(1, 2, False) == wc((1, "E1"))
    assert root_vector(2, 1, False) == wc((1, "F1"))
    assert root_vector(1, 3, False) == wc((1, "E1 E2"), (-vpow(1), "E2 E1"))


def test_pbw_word_trivial_cases():
    assert pbw_word(SuperMatrix.zero(2), (0, 0)) == WordCombination.one()
    A = SuperMatrix.unit(2, 0, 1, value=3)
    assert pbw_word(A, (0, 0)) == wc((1, "E1^(3)"))


def _sample_3by3():
    even = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    odd = [[1, 0, 1], [0, 1, 1], [1, 0, 0]]
    return SuperMatrix.from_rows(even, odd), even, odd


def test_pbw_factor_order_3by3():
    A, e, o = _sample_3by3()
    a0 = lambda i, j: e[i - 1][j - 1]
    a1 = lambda i, j: o[i - 1][j - 1]
    expected = [
        (2, 3, False, a0(2, 3)), (1, 3, False, a0(1, 3)),
        (1, 3, True, a1(1, 3)), (2, 3, True, a1(2, 3)), (3, 3, True, a1(3, 3)),
        (1, 2, False, a0(1, 2)), (1, 2, True, a1(1, 2)), (2, 2, True, a1(2, 2)), (3, 2, True, a1(3, 2)),
        (1, 1, True, a1(1, 1)), (2, 1, True, a1(2, 1)), (3, 1, True, a1(3, 1)),
        (2, 1, False, a0(2, 1)), (3, 1, False, a0(3, 1)),
        (3, 2, False, a0(3, 2)),
    ]
    got = [(f.i, f.j, f.odd, f.power) for f in pbw_factors(A) if f.power]
    assert got == [t for t in expected if t[3]]


def test_monomial_word_examples():
    assert monomial_word(SuperMatrix.zero(3), (0, 0, 0)) == GeneratorWord()
    assert monomial_word(SuperMatrix.unit(2, 1, 0, value=4), (0, 0)) == W("F1^(4)")
    assert monomial_word(SuperMatrix.zero(2), (1, -2)) == W("K1 K2^-2")


def test_monomial_word_3by3():
    A, _, _ = _sample_3by3()
    expected = W("Kb1 F1 Kb1 E1^(4) E2^(5) F1 Kb1 E1^(2) Kb1 F2 F1 Kb1 F2^(2) F1^(3) F2")
    assert monomial_word(A, (0, 0, 0)) == expected


def test_evaluate_empty_word_and_single_symbol():
    rep = TensorRep(2)
    for A in enumerate_matrices(2, 2):
        x = TensorElement.basis(A)
        assert evaluate(WordCombination.one(), rep.act, x) == x
        assert evaluate(W("E1"), rep.act, x) == act_closed(GenSymbol("E", 1), x)


def test_pbw_word_on_tensor_vector():
    rep = TensorRep(2)
    x = TensorElement.basis(SuperMatrix.diag((0, 1)))
    y = evaluate(pbw_word(SuperMatrix.unit(2, 0, 1), (0, 0)), rep.act, x)
    assert y == TensorElement.basis(SuperMatrix.unit(2, 0, 1))


def test_divided_power_combination():
    rep = TensorRep(2)
    for m in (2, 3):
        lhs = S("E", 1).divided_power(m)
        rhs = wc((1, f"E1^({m})"))
        for A in enumerate_matrices(2, 3):
            x = TensorElement.basis(A)
            assert evaluate(lhs, rep.act, x) == evaluate(rhs, rep.act, x)


def test_relation_families_and_counts():
    fams = {r.family for r in relations(3)}
    assert fams == {f"QQ{k}" for k in range(1, 7)}
    assert all(r.family != "QQ6" for r in relations(2))
    assert relations(3, families=["QQ1"]) == [r for r in relations(3) if r.family == "QQ1"]


def test_qq1_trivial_on_any_vector():
    rep = TensorRep(2)
    rel = next(r for r in relations(2) if r.family == "QQ1")
    for A in enumerate_matrices(2, 2):
        assert relation_residual(rel, rep.act, TensorElement.basis(A)).is_zero()


@pytest.mark.parametrize("family,n,rmax", [("QQ4", 2, 3), ("QQ5", 3, 2)])
def test_relation_families_on_tensor_basis(family, n, rmax):
    rep = TensorRep(n)
    rels = relations(n, families=[family])
    for r in range(rmax + 1):
        for A in enumerate_matrices(n, r):
            for rel in rels:
                assert relation_residual(rel, rep.act, TensorElement.basis(A)).is_zero(), (str(rel), A)


def test_omega_images_of_relations_vanish():
    rep = TensorRep(2)
    for rel in relations(2):
        flipped = rel.combination.omega()
        for r in range(3):
            for A in enumerate_matrices(2, r):
                assert evaluate(flipped, rep.act, TensorElement.basis(A)).is_zero(), str(rel)


def test_derived_words_only_use_earlier_symbols():
    words = derived_odd_words(3)
    order = list(words)
    for k, g in enumerate(order):
        allowed = {(s.kind, s.index) for s in order[:k]}
        for w, _ in words[g].items():
            for s in w:
                if s.kind in ("Eb", "Fb") or (s.kind == "Kb" and s.index > 1):
                    assert (s.kind, s.index) in allowed
