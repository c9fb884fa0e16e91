import math
from fractions import Fraction

import pytest

from varbicomplex import (
    Coordinate,
    DifferentialForm,
    P_operator,
    canonical_representative,
    delta_field,
    exterior_d,
    lie_derivative,
    psi_membership,
    total_derivative,
    total_derivative_field,
    variational_delta,
    vertical_S,
)
from varbicomplex.expr import Expression
from varbicomplex.sampling import random_form, random_polynomial

from conftest import E, F

dT = total_derivative


def test_total_derivative_examples():
    assert dT(E("q1")) == E("q1'")
    assert dT(F("q1*dq1")) == F("q1'*dq1 + q1*dq1'")
    assert dT(E("5")).is_zero()
    assert dT(E("sin(q1)")) == E("q1'*cos(q1)")


def test_total_derivative_is_lie_derivative_along_field(rng):
    X = total_derivative_field()
    for _ in range(100):
        theta = random_form(rng, 2, 2, rng.randint(0, 2), max_terms=3)
        assert dT(theta) == lie_derivative(X, theta)


def test_total_derivative_commutes_with_d(rng):
    for _ in range(100):
        theta = random_form(rng, 3, 2, rng.randint(0, 2))
        assert dT(exterior_d(theta)) == exterior_d(dT(theta))


def test_vertical_S_examples():
    assert vertical_S(F("q1'*dq1'")) == F("q1'*dq1")
    assert vertical_S(F("dq1''")) == F("2*dq1'")
    assert vertical_S(F("q1*dq1")).is_zero()
    assert vertical_S(DifferentialForm.from_expression(E("q1'"))).is_zero()


def test_delta_fields():
    D1, D2 = delta_field(1), delta_field(2)
    assert D1.component(Coordinate(1, 1)) == E("q1'")
    assert D1.component(Coordinate(2, 3)) == E("3*q2'''")
    assert D1.component(Coordinate(1, 0)).is_zero()
    assert D2.component(Coordinate(1, 1)).is_zero()
    assert D2.component(Coordinate(1, 2)) == E("2*q1'")
    assert D2.component(Coordinate(1, 3)) == E("6*q1''")
    assert D1(E("q1'^2/2")) == E("q1'^2")
    with pytest.raises(ValueError):
        delta_field(0)


def test_delta_fields_are_iterated_S_of_total_derivative():
    # S acts on vector fields by d/dq_(p) -> (p+1) d/dq_(p+1); apply it p times to d_T
    for p in range(1, 4):
        D = delta_field(p)
        for r in range(0, 6):
            # component of S^p(d_T) on d/dq_(r) comes from d_T's q_(r-p+1) d/dq_(r-p)
            src = r - p
            expected = Expression(0)
            if src >= 0:
                weight = math.prod(range(src + 1, src + p + 1))
                expected = E(f"q1[{src + 1}]") * weight
            assert D.component(Coordinate(1, r)) == expected


def test_P_examples():
    phi = F("q1*dq1")
    assert P_operator(dT(phi)) == phi
    assert P_operator(F("q1'*dq1")).is_zero()
    assert P_operator(exterior_d(E("q1'^2/2"))) == F("q1'*dq1")
    with pytest.raises(ValueError):
        P_operator(DifferentialForm.from_expression(E("q1")))


def test_canonical_representative_examples():
    theta = F("q1''*dq1")
    assert canonical_representative(theta) == theta
    assert canonical_representative(dT(F("q1*dq1"))).is_zero()
    rep = canonical_representative(F("q1'*dq1'"))
    assert vertical_S(rep).is_zero()
    assert rep == F("-q1''*dq1")


def test_variational_delta_examples():
    assert variational_delta(E("q1'^2/2")) == F("-q1''*dq1")
    assert variational_delta(dT(E("q1^2"))).is_zero()
    assert variational_delta(F("-q1''*dq1")).is_zero()
    assert variational_delta(E("7")).is_zero()


def test_psi_membership_examples():
    m = psi_membership(F("(q1'' + q2)*dq1"))
    assert m.in_psi and m.s_image.is_zero()
    m = psi_membership(F("q1*dq1'"))
    assert not m.in_psi and m.s_image == F("q1*dq1")
    m = psi_membership(F("dq1' /\\ dq2'"))
    assert not m.in_psi and m.s_image == F("dq1 /\\ dq2' + dq1' /\\ dq2")


def test_commutation_relation_and_inverse(rng):
    for _ in range(300):
        r = rng.randint(1, 3)
        theta = random_form(rng, rng.randint(1, 3), 2, r)
        assert vertical_S(dT(theta)) - dT(vertical_S(theta)) == theta * r
        assert P_operator(dT(theta)) == theta


def test_iterated_commutation(rng):
    # S d_T^(p+1) = d_T^(p+1) S + r(p+1) d_T^p
    for _ in range(100):
        r = rng.randint(1, 3)
        theta = random_form(rng, 2, 2, r, max_terms=4)
        dTp = theta
        rhs_S = vertical_S(theta)
        for p in range(4):
            rhs_S = dT(rhs_S)
            assert vertical_S(dT(dTp)) == rhs_S + dTp * (r * (p + 1))
            dTp = dT(dTp)


def test_literal_iterated_identity_fails_for_p_zero():
    theta = F("q1*dq1")
    assert vertical_S(theta) != dT(vertical_S(theta)) + theta


def test_projector(rng):
    for _ in range(200):
        theta = random_form(rng, rng.randint(1, 3), 2, rng.randint(1, 3))
        rep = canonical_representative(theta)
        assert vertical_S(rep).is_zero()
        assert canonical_representative(rep) == rep


def test_delta_squared(rng):
    for _ in range(150):
        n = rng.randint(1, 3)
        L = random_polynomial(rng, n, 2, 3, n_terms=4)
        assert variational_delta(variational_delta(L)).is_zero()
        eps = canonical_representative(random_form(rng, n, 2, 1))
        assert vertical_S(variational_delta(eps)).is_zero()
        assert variational_delta(variational_delta(eps)).is_zero()
