"""Seeded random polynomial expressions and forms for property checks."""

from __future__ import annotations

import random

from .expr import ZERO, Coordinate, Expression, coordinates_up_to
from .forms import DifferentialForm
from .lagrangian import SourceForm

__all__ = ["random_polynomial", "random_form", "random_lagrangian", "random_source_form"]


def _coefficient(rng: random.Random, bound: int) -> int:
    c = 0
    while c == 0:
        c = rng.randint(-bound, bound)
    return c


def random_polynomial(rng: random.Random, dim: int, max_order: int, max_degree: int,
                      n_terms: int = 3, bound: int = 3, min_order: int = 0) -> Expression:
    """Sum of ``n_terms`` random monomials with integer coefficients in [-bound, bound]."""
    coords = [c for c in coordinates_up_to(dim, max_order) if c.order >= min_order]
    total = ZERO
    for _ in range(n_terms):
        term = Expression.constant(_coefficient(rng, bound))
        for _ in range(rng.randint(0, max_degree)):
            term = term * Expression.coordinate(rng.choice(coords))
        total = total + term
    return total


def random_form(rng: random.Random, dim: int, max_order: int, degree: int,
                max_terms: int = 6, coeff_degree: int = 2) -> DifferentialForm:
    coords = list(coordinates_up_to(dim, max_order))
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        wedge = rng.sample(coords, degree)
        terms.append((wedge, random_polynomial(rng, dim, max_order, coeff_degree, n_terms=rng.randint(1, 2))))
    return DifferentialForm(degree, terms)


def random_lagrangian(rng: random.Random, dim: int, order: int, max_degree: int = 3,
                      n_terms: int = 4) -> Expression:
    return random_polynomial(rng, dim, order, max_degree, n_terms=n_terms)


def random_source_form(rng: random.Random, dim: int, order: int = 2, max_degree: int = 2,
                       n_terms: int = 3) -> SourceForm:
    comps = tuple(random_polynomial(rng, dim, order, max_degree, n_terms=n_terms) for _ in range(dim))
    return SourceForm(dim, comps)
