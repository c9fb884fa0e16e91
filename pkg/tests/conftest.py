import random

import pytest

from varbicomplex import Coordinate, parse_expression, parse_form, total_derivative
from varbicomplex.expr import ZERO


def E(text, dim=3):
    return parse_expression(text, dim)


def F(text, dim=3):
    return parse_form(text, dim)


def classical_euler_lagrange(L, dim):
    """Oracle: eps_i = sum_p (-1)^p d_T^p (dL/dq^i_(p)), straight from the calculus."""
    top = max((c.order for c in L.free_coordinates()), default=0)
    out = []
    for i in range(1, dim + 1):
        eps = ZERO
        for p in range(top + 1):
            term = L.diff(Coordinate(i, p))
            for _ in range(p):
                term = total_derivative(term)
            eps = eps + term * (-1) ** p
        out.append(eps)
    return tuple(out)


@pytest.fixture
def rng():
    return random.Random(20261018)
