"""Seeded random polynomials and forms for identity sweeps."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .coeff import Poly
from .exterior import Form, FrameVector, Metric, basis_indices


def random_poly(rng: random.Random, dim: int, max_degree: int = 3, max_terms: int = 3,
                free_axes=None) -> Poly:
    """Random polynomial; ``free_axes`` restricts which coordinates may appear."""
    axes = list(range(dim)) if free_axes is None else list(free_axes)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * dim
        for _ in range(rng.randint(0, max_degree)):
            if axes:
                exps[rng.choice(axes)] += 1
        num = rng.randint(-5, 5) or 1
        den = rng.choice((1, 1, 1, 2, 3))
        terms[tuple(exps)] = terms.get(tuple(exps), 0) + Fraction(num, den)
    return Poly(dim, terms)


def random_form(rng: random.Random, dim: int, degree: int | None = None, max_terms: int = 3,
                max_degree: int = 3, free_axes=None) -> Form:
    """Random form; homogeneous when ``degree`` is given, mixed-grade otherwise."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        p = rng.randint(0, dim) if degree is None else degree
        idx = rng.choice(basis_indices(dim, p))
        terms[idx] = random_poly(rng, dim, max_degree, free_axes=free_axes)
    return Form(dim, terms)


def random_constant_vector(rng: random.Random, dim: int) -> FrameVector:
    return FrameVector(tuple(Fraction(rng.randint(-3, 3), rng.choice((1, 2))) for _ in range(dim)))


def all_signatures(dim: int):
    for signs in product((1, -1), repeat=dim):
        yield Metric(signs)
