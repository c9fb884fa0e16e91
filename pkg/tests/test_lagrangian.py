from fractions import Fraction

import pytest

from varbicomplex import (
    Coordinate,
    NotAffineError,
    P_operator,
    SourceForm,
    check_homogeneous,
    contract,
    delta_field,
    euler_lagrange,
    exterior_d,
    helmholtz_coefficients,
    helmholtz_sonin,
    hilbert_form,
    homogenize,
    lie_derivative,
    second_order_decompose,
    sqrt,
    total_derivative,
    variational_delta,
)
from varbicomplex.expr import Expression
from varbicomplex.lagrangian import euler_lagrange_series
from varbicomplex.sampling import random_lagrangian, random_source_form

from conftest import E, F, classical_euler_lagrange


def src(*texts, dim=None):
    dim = dim or len(texts)
    return SourceForm(dim, tuple(E(t, dim) for t in texts))


def test_hilbert_form_examples():
    assert hilbert_form(E("q1'^2/2")) == F("q1'*dq1")
    L = sqrt(E("q1'^2 + q2'^2"))
    assert hilbert_form(L) == F("q1'*dq1 + q2'*dq2") * (1 / L)
    # two-term sum p = 0, 1 expanded by hand
    assert hilbert_form(E("q1''^2/2")) == F("q1''*dq1' - q1'''*dq1")


def test_euler_lagrange_examples():
    assert euler_lagrange(E("q1'^2/2", 1)).to_form() == F("-q1''*dq1")
    assert euler_lagrange(E("q1'", 1)).is_zero()
    pendulum = E("q1'^2/2 - (1 - cos(q1))", 1)
    assert euler_lagrange(pendulum)[1] == E("-q1'' - sin(q1)", 1)


def test_euler_lagrange_matches_classical_oracle(rng):
    for _ in range(150):
        n = rng.randint(1, 3)
        L = random_lagrangian(rng, n, rng.randint(1, 3))
        eps = euler_lagrange(L, n)
        assert eps.components == classical_euler_lagrange(L, n)
        assert eps.to_form() == euler_lagrange_series(L)


def test_euler_lagrange_transcendental_oracle():
    L = E("exp(q1)*q1'^2 + sin(q2)*q1'*q2' + sqrt(1 + q2'^2)", 2)
    assert euler_lagrange(L, 2).components == classical_euler_lagrange(L, 2)


def test_lagrangian_identities(rng):
    for _ in range(150):
        n = rng.randint(1, 3)
        L = random_lagrangian(rng, n, rng.randint(1, 2))
        f = random_lagrangian(rng, n, rng.randint(0, 1), n_terms=2)
        assert euler_lagrange(L, n).to_form() == variational_delta(L)
        assert euler_lagrange(L + total_derivative(f), n) == euler_lagrange(L, n)
        assert hilbert_form(L) == P_operator(exterior_d(L))


def test_homogenize_examples():
    free = homogenize(E("q2'^2/2", 2), 2)
    assert free == E("q2'^2/(2*q1')", 2)
    assert homogenize(E("1", 2), 2) == E("q1'", 2)
    assert check_homogeneous(free, 1).homogeneous
    assert check_homogeneous(homogenize(E("1", 2), 2), 1).homogeneous
    with pytest.raises(ValueError):
        homogenize(E("q2''", 2), 2)
    with pytest.raises(ValueError):
        homogenize(E("q1'*q2", 2), 2)


def test_check_homogeneous_examples():
    assert check_homogeneous(sqrt(E("q1'^2 + q2'^2")), 1).homogeneous
    report = check_homogeneous(E("q1'^2/2"), 1)
    assert not report.homogeneous
    assert report.residuals[1] == E("q1'^2/2")
    report = check_homogeneous(E("q1'"), 2)
    assert report.homogeneous and set(report.residuals) == {1, 2}
    # Delta^1 weighs q'' twice, so this density scales with weight 3; Delta^2 kills it
    report = check_homogeneous(E("q2''*q1' - q1''*q2'", 2), 2)
    assert report.residuals[1] == E("2*q2''*q1' - 2*q1''*q2'", 2)
    with pytest.raises(ValueError):
        check_homogeneous(E("q1''"), 1)


def test_finsler_projectability_proxy():
    L = sqrt(E("q1'^2 + q2'^2"))
    theta = hilbert_form(L)
    D1 = delta_field(1)
    assert contract(D1, theta).is_zero()
    assert lie_derivative(D1, theta).is_zero()


def test_helmholtz_sonin_examples():
    L = E("q1'^2*q2 + q1*q2'' + q2'^3", 2)
    assert helmholtz_sonin(euler_lagrange(L, 2)).is_zero()
    assert helmholtz_sonin(src("0", "q1")) == F("dq1 /\\ dq2")
    hs = helmholtz_sonin(src("q1'"))
    assert hs == F("dq1' /\\ dq1", 1) and hs


def test_helmholtz_coefficient_examples():
    H = helmholtz_coefficients(src("q1''", "2*q2'' + q1"))
    assert not H.vanishes()
    assert H.position[1][0] == Expression(1) and H.position[0][1] == Expression(-1)
    assert helmholtz_coefficients(src("-q1''")).vanishes()
    eps = src("q2''", "3*q1''")
    H = helmholtz_coefficients(eps)
    assert H.acceleration[0][1] == Expression(Fraction(1, 4) * (1 - 3))
    assert H.to_form() == helmholtz_sonin(eps)
    with pytest.raises(ValueError):
        helmholtz_coefficients(src("q1'''"))


def test_helmholtz_coefficients_reassemble(rng):
    for _ in range(150):
        n = rng.randint(1, 3)
        eps = random_source_form(rng, n)
        assert helmholtz_coefficients(eps).to_form() == helmholtz_sonin(eps)
        L = random_lagrangian(rng, n, 1)
        assert helmholtz_coefficients(euler_lagrange(L, n)).vanishes()


def test_second_order_decompose_examples():
    dec = second_order_decompose(src("-q1'' - sin(q1)"))
    assert dec.A == ((Expression(-1),),) and dec.B == (E("-sin(q1)"),)
    with pytest.raises(NotAffineError):
        second_order_decompose(src("q1''^2"))
    dec = second_order_decompose(src("0", "0"))
    assert all(not a for row in dec.A for a in row) and all(not b for b in dec.B)
    dec = second_order_decompose(src("q2''", "3*q1''"))
    assert dec.asymmetric == ((1, 2),)
    assert dec.reconstruct() == src("q2''", "3*q1''").components


def test_decomposition_of_first_order_lagrangian(rng):
    for _ in range(100):
        n = rng.randint(1, 3)
        L = random_lagrangian(rng, n, 1)
        dec = second_order_decompose(euler_lagrange(L, n))
        assert dec.symmetric
        for i in range(n):
            vi = Coordinate(i + 1, 1)
            for j in range(n):
                assert dec.A[i][j] == -L.diff(vi).diff(Coordinate(j + 1, 1))
            b = L.diff(Coordinate(i + 1))
            for j in range(n):
                b = b - E(f"q{j + 1}'") * L.diff(vi).diff(Coordinate(j + 1))
            assert dec.B[i] == b


def test_source_form_validation():
    with pytest.raises(ValueError):
        SourceForm.from_form(F("dq1'"), 1)
    with pytest.raises(ValueError):
        SourceForm(1, (E("q2"),))
    assert SourceForm.from_form(F("q2*dq1 - dq2"), 2).components == (E("q2"), E("-1"))
