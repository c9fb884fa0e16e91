import random

import pytest

from varbicomplex import (
    Coordinate,
    CoordinateVectorField,
    DifferentialForm,
    contract,
    delta_field,
    exterior_d,
    lie_derivative,
    parse_form,
    wedge,
)
from varbicomplex.sampling import random_form

from conftest import E, F


def dq(i, p=0):
    return DifferentialForm.differential(Coordinate(i, p))


def test_wedge_examples():
    assert wedge(dq(1), dq(1)).is_zero()
    assert wedge(dq(1, 1), dq(1)) == -wedge(dq(1), dq(1, 1))
    assert wedge(F("q1*dq1"), dq(2)) == F("q1*dq1 /\\ dq2")
    assert str(wedge(dq(1, 1), dq(1))) == "-dq1 /\\ dq1'"


def test_exterior_d_examples():
    assert exterior_d(E("q1'^2/2")) == F("q1'*dq1'")
    assert exterior_d(F("q1*dq2")) == F("dq1 /\\ dq2")
    assert exterior_d(exterior_d(E("q1*q2''"))).is_zero()


def test_contract_examples():
    D1 = delta_field(1)
    assert contract(D1, dq(1, 1)) == DifferentialForm.from_expression(E("q1'"))
    assert contract(D1, dq(1)).is_zero()
    with pytest.raises(ValueError):
        contract(D1, DifferentialForm.from_expression(E("q1")))


def test_lie_derivative_examples():
    D1 = delta_field(1)
    assert lie_derivative(D1, E("q1'^2/2")) == DifferentialForm.from_expression(E("q1'^2"))
    theta = F("q1*dq2")
    assert lie_derivative(D1, exterior_d(theta)).is_zero()
    assert exterior_d(lie_derivative(D1, theta)).is_zero()
    assert lie_derivative(D1, DifferentialForm.zero(1)).is_zero()


def test_table_field():
    X = CoordinateVectorField({Coordinate(1): E("q2"), Coordinate(2): E("-q1")})
    assert X(E("q1^2 + q2^2")).is_zero()
    assert contract(X, F("dq1 /\\ dq2")) == F("q2*dq2 + q1*dq1")


@pytest.mark.parametrize("text,expected", [
    ("-q1''*dq1", "-q1''*dq1"),
    ("q1*dq1 /\\ dq2", "q1*dq1 /\\ dq2"),
    ("dq1 /\\ dq1", "0"),
    ("(q1 + q2)*dq2 - dq1'", "(q1 + q2)*dq2 - dq1'"),
])
def test_parse_form_examples(text, expected):
    assert str(parse_form(text, 2)) == expected


def test_parse_form_rejects_mixed_degrees():
    with pytest.raises(ValueError):
        parse_form("dq1 + q1", 1)


def test_form_round_trip(rng):
    for _ in range(100):
        theta = random_form(rng, 3, 3, rng.randint(0, 3))
        assert parse_form(str(theta), 3) == theta


def test_d_squared_zero(rng):
    for _ in range(500):
        theta = random_form(rng, rng.randint(1, 3), 3, rng.randint(0, 3))
        assert exterior_d(exterior_d(theta)).is_zero()


def test_graded_leibniz_and_antiderivation(rng):
    X = delta_field(1)
    for _ in range(150):
        n = rng.randint(1, 3)
        a = random_form(rng, n, 2, rng.randint(0, 2), max_terms=3)
        b = random_form(rng, n, 2, rng.randint(0, 2), max_terms=3)
        sign = (-1) ** a.degree
        assert exterior_d(a ^ b) == (exterior_d(a) ^ b) + (a ^ exterior_d(b)) * sign
        assert (a ^ b) == (b ^ a) * (-1) ** (a.degree * b.degree)
        if a.degree and b.degree:
            assert contract(X, a ^ b) == (contract(X, a) ^ b) + (a ^ contract(X, b)) * sign


def test_lie_commutes_with_d(rng):
    X = delta_field(1)
    for _ in range(100):
        theta = random_form(rng, rng.randint(1, 3), 2, rng.randint(1, 2), max_terms=3)
        assert lie_derivative(X, exterior_d(theta)) == exterior_d(lie_derivative(X, theta))
