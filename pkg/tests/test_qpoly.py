import random

import pytest

from qqueer.coeff import ONE, RatScalar, odd_square_scalar, qfact, specialize_v1, vpow
from qqueer.qpoly import (
    QPolyElement, basis_of_degree, basis_up_to, degree, divided_convert, divided_monomial, from_json,
    monomial, normal_order, parity, parse_monomial, product, render_qpoly, to_json,
)

N = 2
X1, X2, XB1, XB2 = 0, 1, 2, 3


def el(terms, n=N):
    return QPolyElement(n, {tuple(a): RatScalar.of(c) for a, c in terms.items()})


def test_odd_generators_anticommute():
    assert normal_order(N, [XB2, XB1]) == el({(0, 0, 1, 1): -1})


def test_odd_square():
    assert normal_order(N, [XB1, XB1]) == el({(2, 0, 0, 0): odd_square_scalar()})


def test_already_ordered():
    assert normal_order(N, [X1, XB1]) == el({(1, 0, 1, 0): 1})


def test_unit_and_triple_product():
    b = el({(1, 2, 0, 1): 3})
    assert product(QPolyElement.one(N), b) == b
    lhs = product(normal_order(N, [XB1, XB2]), normal_order(N, [XB1]))
    # X1b X2b X1b = -X1b X1b X2b = -c X1^2 X2b
    assert lhs == el({(2, 0, 0, 1): -odd_square_scalar()})
    assert lhs == normal_order(N, [XB1, XB2, XB1])


def random_element(rng, n=N, maxdeg=3, terms=3):
    basis = basis_up_to(n, maxdeg)
    return QPolyElement(n, {rng.choice(basis): RatScalar.of(rng.randint(-3, 3)) * vpow(rng.randint(-2, 2))
                            for _ in range(terms)})


def test_product_associative_and_matches_words():
    rng = random.Random(7)
    for _ in range(25):
        x, y, z = (random_element(rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
    for _ in range(40):
        word = [rng.randrange(2 * N) for _ in range(rng.randint(0, 6))]
        acc = QPolyElement.one(N)
        for g in word:
            acc = acc * normal_order(N, [g])
        assert acc == normal_order(N, word)


def test_graded_commutativity_on_disjoint_odd_support():
    rng = random.Random(3)
    basis = basis_up_to(3, 3)
    for _ in range(60):
        a, b = rng.choice(basis), rng.choice(basis)
        if any(s and t for s, t in zip(a[3:], b[3:])):
            continue
        x, y = QPolyElement.basis(a), QPolyElement.basis(b)
        sign = -1 if parity(x) and parity(y) else 1
        assert x * y == (y * x).scale(sign)


def test_shared_odd_variable_is_not_graded_commutative():
    x = normal_order(N, [XB1])
    assert x * x == x * x and (x * x) != (x * x).scale(-1)


def test_divided_convert():
    a = (1, 1, 1, 0)
    x = QPolyElement.basis(a)
    assert divided_convert(x, True).terms == x.terms
    d = divided_monomial((2, 0, 0, 0))
    plain = divided_convert(d, False)
    assert plain == el({(2, 0, 0, 0): RatScalar.of(qfact(2)).inverse()})
    rng = random.Random(11)
    for _ in range(20):
        y = random_element(rng, maxdeg=4)
        assert divided_convert(divided_convert(y, True), False) == y


def test_odd_divided_square_divides_by_two_factorial():
    d = divided_convert(divided_monomial((0, 0, 2, 0)), False)
    assert d == el({(2, 0, 0, 0): odd_square_scalar() / RatScalar.of(qfact(2))})


def test_monomial_reduces_odd_exponents():
    assert monomial((0, 0, 3, 0)) == el({(2, 0, 1, 0): odd_square_scalar()})
    with pytest.raises(ValueError):
        monomial((-1, 0, 0, 0))


def test_gradings():
    x = normal_order(N, [X1, XB2, X2])
    assert degree(x) == 3 and parity(x) == 1
    assert degree(normal_order(N, [XB1, XB1])) == 2 and parity(normal_order(N, [XB1, XB1])) == 0


def test_odd_square_vanishes_at_v1():
    (c,) = normal_order(N, [XB1, XB1]).terms.values()
    assert specialize_v1(c) == 0


def test_basis_sizes():
    from math import comb

    for d in range(5):
        expected = sum(comb(2, k) * comb(d - k + 1, 1) for k in range(0, min(2, d) + 1))
        assert len(basis_of_degree(2, d)) == expected


def test_text_and_json_round_trip():
    x = parse_monomial(2, "X1^2*Xb2*Xb1")
    assert x == el({(2, 0, 1, 1): -1})
    assert "X1^2" in render_qpoly(x)
    rng = random.Random(5)
    for _ in range(10):
        y = random_element(rng)
        z = from_json(to_json(y))
        assert z == y and z.n == y.n and z.divided == y.divided
    with pytest.raises(ValueError):
        parse_monomial(2, "X3")
