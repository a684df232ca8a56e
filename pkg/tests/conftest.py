"""Shared fixtures: a session-wide lattice store and seeded random generators."""

from __future__ import annotations

import random

import pytest

from hyparr.arrangement import Arrangement, make_arrangement
from hyparr.claims import LatticeStore
from hyparr.cyclo import CyclotomicNumber, field_context, root_of_unity
from hyparr.errors import InvalidHyperplaneError
from hyparr.linalg import LinearForm, Subspace, subspace_from_forms


@pytest.fixture(scope="session")
def store() -> LatticeStore:
    """One lattice per named arrangement for the whole test session."""
    return LatticeStore()


def random_cyclo(rng: random.Random, order: int, span: int = 4) -> CyclotomicNumber:
    d = field_context(order).degree
    coords = [rng.randint(-span, span) for _ in range(d)]
    den = rng.randint(1, 3)
    return CyclotomicNumber.from_coords(order, coords, den)


def random_nonzero_cyclo(rng: random.Random, order: int, span: int = 4) -> CyclotomicNumber:
    while True:
        c = random_cyclo(rng, order, span)
        if not c.is_zero():
            return c


def random_form(rng: random.Random, ambient: int, order: int,
                span: int = 3) -> LinearForm:
    while True:
        coeffs = [random_cyclo(rng, order, span) for _ in range(ambient)]
        if any(not c.is_zero() for c in coeffs):
            return LinearForm.from_coefficients(coeffs, order)


def random_subspace(rng: random.Random, ambient: int, order: int,
                    max_forms: int | None = None) -> Subspace:
    k = rng.randint(0, max_forms if max_forms is not None else ambient)
    forms = [random_form(rng, ambient, order) for _ in range(k)]
    return subspace_from_forms(forms, ambient, order)


def random_arrangement(rng: random.Random, ambient: int, order: int,
                       max_hyperplanes: int = 8) -> Arrangement:
    n = rng.randint(1, max_hyperplanes)
    forms = []
    for _ in range(n):
        # small integer coordinates keep the brute-force oracle cheap
        while True:
            d = field_context(order).degree
            coeffs = []
            for _ in range(ambient):
                coords = [rng.randint(-2, 2) if rng.random() < 0.6 else 0
                          for _ in range(d)]
                coeffs.append(CyclotomicNumber.from_coords(order, coords))
            if any(not c.is_zero() for c in coeffs):
                forms.append(LinearForm.from_coefficients(coeffs, order))
                break
    return make_arrangement(ambient, order, forms)
