"""Shared builders for the test suite: model tensors, random instances, oracles."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from borderapolar.apolarity import HomPoly, SymTensor, is_concise, polarize
from borderapolar.grading import monomials, veronese_ring
from borderapolar.linalg import Matrix, rank


def diagonal_tensor(n: int, d: int) -> SymTensor:
    """sum_j e_j^{tensor d}: the unit tensor, concise of minimal border rank."""
    return SymTensor(n, d, {tuple([j] * d): 1 for j in range(n)})


def sum_of_powers_tensor(n: int, d: int, forms) -> SymTensor:
    entries = {}
    for idx in itertools.product(range(n), repeat=d):
        val = Fraction(0)
        for l in forms:
            term = Fraction(1)
            for i in idx:
                term *= l[i]
            val += term
        if val:
            entries[idx] = val
    return SymTensor(n, d, entries)


def independent_forms(n: int, rng: random.Random, bound: int = 5):
    """n random integer linear forms spanning C^n (redraw until full rank)."""
    while True:
        forms = [
            tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))
            for _ in range(n)
        ]
        if rank(Matrix([list(f) for f in forms], ncols=n)) == n:
            return forms


def concise_power_sum_instance(n: int, d: int, rng: random.Random) -> SymTensor:
    """A concise minimal-border-rank instance sum_j l_j^{tensor d}."""
    while True:
        f = sum_of_powers_tensor(n, d, independent_forms(n, rng))
        if is_concise(f):
            return f


def random_form(n: int, d: int, rng: random.Random, coeff_bound: int = 5) -> HomPoly:
    terms = {}
    for mono in monomials(veronese_ring(n), d):
        c = rng.randint(-coeff_bound, coeff_bound)
        if c:
            terms[mono] = Fraction(c)
    if not terms:
        terms[tuple([d] + [0] * (n - 1))] = Fraction(1)
    return HomPoly(n, d, terms)


def random_symmetric_tensor(n: int, d: int, rng: random.Random) -> SymTensor:
    return polarize(random_form(n, d, rng))


def power_of_form(coords, d: int) -> HomPoly:
    """(c_1 y_1 + ... + c_n y_n)^d expanded exactly."""
    import math

    n = len(coords)
    terms = {}
    for mono in monomials(veronese_ring(n), d):
        coef = Fraction(math.factorial(d))
        for e in mono:
            coef /= math.factorial(e)
        for c, e in zip(coords, mono):
            coef *= Fraction(c) ** e
        if coef:
            terms[mono] = coef
    return HomPoly(n, d, terms)
