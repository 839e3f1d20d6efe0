import pytest

from qqueer.coeff import ONE, RatScalar, odd_square_scalar, qint, vpow
from qqueer.diffops import (
    AlgebraRep, GenSymbol, act_closed, all_generators, chi, closed_op, delta, gen_op, literal_second_shift_identity_holds,
    parse_symbol, partial, partial_shift, sgn_bar, verify_closed_vs_composite, verify_opecom,
)
from qqueer.qpoly import QPolyElement, basis_up_to


def q(c):
    return RatScalar.of(qint(c))


def test_partial_examples():
    assert partial(2, 0).image((2, 0, 0, 0)) == {(1, 0, 0, 0): q(2)}
    assert partial(2, 2).image((3, 1, 0, 1)) == {}
    assert partial(2, 3).image((0, 0, 1, 1)) == {(0, 0, 1, 0): -ONE}


def test_partial_shift_examples():
    assert partial_shift(2, 0, 1).image((1, 0, 0, 0)) == {(0, 0, 0, 0): q(2)}
    assert partial_shift(2, 0, 2).image((1, 0, 0, 0)) == {(0, 0, 0, 0): q(3)}


def test_multiplication_and_scaling_operators():
    assert chi(1, 1).image((0, 1)) == {(2, 0): odd_square_scalar()}
    assert delta(1, 0, 1).image((3, 0)) == {(3, 0): vpow(3)}
    assert sgn_bar(1, 0).image((0, 1)) == {(0, 1): -ONE}


def test_generator_operators():
    n = 2
    K1 = gen_op(n, GenSymbol("K", 1))
    for a in basis_up_to(n, 3):
        assert K1.image(a) == {a: vpow(a[0] + a[2])}
    E1 = gen_op(n, GenSymbol("E", 1))
    for a in basis_up_to(n, 3):
        if a[1] == 0 and a[3] == 0:
            assert E1.image(a) == {}
    assert gen_op(n, GenSymbol("F", 1)).image((1, 0, 0, 0)) == {(0, 1, 0, 0): ONE}


def test_closed_action_examples():
    x = QPolyElement.basis((1, 0))
    assert act_closed(GenSymbol("Kb", 1), x) == QPolyElement.basis((0, 1))
    for a in basis_up_to(2, 3):
        if a[0] == 0 and a[2] == 0:
            assert act_closed(GenSymbol("Fb", 1), QPolyElement.basis(a)).is_zero()


@pytest.mark.parametrize("n,maxdeg", [(1, 4), (2, 4), (3, 3)])
def test_commutation_identities(n, maxdeg):
    report = verify_opecom(n, maxdeg)
    assert report.passed, report.render()


def test_identity_3a_on_square():
    from qqueer.diffops import LinOp

    n = 1
    lhs = partial(n, 0).image((2, 0))
    # d chi X1^2 = [3] X1^2 and chi d^(1) X1^2 = [3] X1^2
    left = {}
    for k, c in chi(n, 0).image((2, 0)).items():
        for k2, c2 in partial(n, 0).image(k).items():
            left[k2] = c * c2
    right = {}
    for k, c in partial_shift(n, 0, 1).image((2, 0)).items():
        for k2, c2 in chi(n, 0).image(k).items():
            right[k2] = c * c2
    assert left == right == {(2, 0): q(3)}
    assert lhs == {(1, 0): q(2)}


def test_identity_5e_on_unit():
    n = 1
    a = (0, 0)
    terms = {}
    for k, c in chi(n, 1).image(a).items():
        for k2, c2 in delta(n, 0, 1).image(k).items():
            for k3, c3 in partial(n, 1).image(k2).items():
                terms[k3] = terms.get(k3, 0) + c * c2 * c3
    for k, c in delta(n, 0, 1).image(a).items():
        for k2, c2 in partial(n, 1).image(k).items():
            for k3, c3 in chi(n, 1).image(k2).items():
                terms[k3] = terms.get(k3, 0) + c * c2 * c3
    assert terms == {a: ONE}


def test_literal_second_shift_identity_fails():
    assert literal_second_shift_identity_holds(1, 3) is False


@pytest.mark.parametrize("n,maxdeg", [(1, 4), (2, 3)])
def test_closed_forms_match_operator_composites(n, maxdeg):
    report = verify_closed_vs_composite(n, maxdeg)
    assert report.passed, report.render()


def test_symbol_parsing():
    assert parse_symbol("E1^(2)") == [GenSymbol("E", 1, 2)]
    assert parse_symbol("K2^-1") == [GenSymbol("Kinv", 2)]
    assert parse_symbol("Kb1") == [GenSymbol("Kb", 1)]
    kinds = {g.kind for g in all_generators(2)}
    assert kinds == {"K", "Kinv", "E", "F", "Kb", "Eb", "Fb"}


def test_rep_caches_operators():
    rep = AlgebraRep(2)
    g = GenSymbol("E", 1)
    assert rep.op(g) is rep.op(g)
