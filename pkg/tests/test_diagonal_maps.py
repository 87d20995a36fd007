"""Tests for pi, rho, tau, psi, the diagonal ideal, and the direct-sum split."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from borderapolar.apolarity import ann_piece, ann_sym_piece, depolarize
from borderapolar.diagonal_maps import (
    direct_sum_check,
    ir_generators,
    ir_piece,
    pi,
    pi_matrix,
    psi,
    psi_image,
    rho,
    staircase_degrees,
    tau,
    two_ones_degrees,
)
from borderapolar.grading import (
    PieceElement,
    dim_piece,
    ones,
    segre_ring,
    veronese_ring,
)
from borderapolar.ideals import degrees_up_to, expand
from borderapolar.linalg import image
from support import random_symmetric_tensor


def random_element(ring, u, rng):
    return PieceElement(
        ring, u, tuple(Fraction(rng.randint(-5, 5)) for _ in range(dim_piece(ring, u)))
    )


class TestPi:
    def test_substitution(self):
        ring = segre_ring(2, 2)
        theta = PieceElement.from_terms(ring, (1, 1), {((1, 0), (0, 1)): 1})
        assert pi(theta).terms() == {(1, 1): 1}

    def test_kills_minor(self):
        ring = segre_ring(2, 2)
        theta = PieceElement.from_terms(
            ring, (1, 1), {((1, 0), (0, 1)): 1, ((0, 1), (1, 0)): -1}
        )
        assert pi(theta).is_zero

    def test_pure_factor_power(self):
        ring = segre_ring(2, 2)
        theta = PieceElement.from_terms(ring, (2, 0), {((2, 0), (0, 0)): 1})
        assert pi(theta).terms() == {(2, 0): 1}

    def test_wrong_kind(self):
        g = PieceElement.from_terms(veronese_ring(2), 1, {(1, 0): 1})
        with pytest.raises(ValueError):
            pi(g)


class TestRhoTauPsi:
    def test_rho_first_factor(self):
        ring = segre_ring(2, 2)
        theta = PieceElement.from_terms(ring, (2, 0), {((1, 1), (0, 0)): 1})
        assert rho(theta).terms() == {(1, 1): 1}

    def test_rho_mixed_degree_is_zero(self):
        ring = segre_ring(2, 2)
        theta = PieceElement.from_terms(ring, (1, 1), {((1, 0), (1, 0)): 1})
        assert rho(theta).is_zero

    def test_rho_equals_pi_on_first_factor_pieces(self):
        rng = random.Random(1)
        ring = segre_ring(3, 3)
        for k in range(4):
            el = random_element(ring, (k, 0, 0), rng)
            assert rho(el).coords == pi(el).coords

    def test_tau_example(self):
        g = PieceElement.from_terms(veronese_ring(2), 2, {(1, 1): 1})
        # b1*b2 -> a(1,1)*a(1,2)
        assert tau(g, 2).terms() == {((1, 1), (0, 0)): 1}

    def test_sections(self):
        rng = random.Random(2)
        ring_v = veronese_ring(2)
        for k in range(5):
            g = random_element(ring_v, k, rng)
            t = tau(g, 3)
            assert pi(t).coords == g.coords
            assert rho(t).coords == g.coords

    def test_psi_block_splitting(self):
        # u=(2,1), n=2: b1*b2^2 has sorted indices (1,2,2) -> a(1,1)a(1,2)*a(2,2)
        g = PieceElement.from_terms(veronese_ring(2), 3, {(1, 2): 1})
        el = psi((2, 1), g)
        assert el.terms() == {((1, 1), (0, 1)): 1}

    def test_psi_section_property(self):
        rng = random.Random(3)
        ring_v = veronese_ring(3)
        for u in ((1, 1), (2, 1), (0, 3), (1, 1, 1), (2, 0, 1)):
            g = random_element(ring_v, sum(u), rng)
            assert pi(psi(u, g)).coords == g.coords

    def test_psi_injective(self):
        for n, u in ((2, (2, 1)), (3, (1, 1, 1)), (2, (0, 2))):
            k = sum(u)
            assert psi_image(n, len(u), u).dim == dim_piece(veronese_ring(n), k)

    def test_psi_degree_mismatch(self):
        g = PieceElement.from_terms(veronese_ring(2), 2, {(1, 1): 1})
        with pytest.raises(ValueError):
            psi((1, 0), g)


class TestDiagonalIdeal:
    def test_single_generator(self):
        gens = ir_generators(2, 2)
        assert len(gens) == 1
        assert gens[0].terms() == {
            ((1, 0), (0, 1)): 1,
            ((0, 1), (1, 0)): -1,
        }

    def test_counts(self):
        assert len(ir_generators(2, 3)) == 3
        assert len(ir_generators(1, 4)) == 0
        assert len(ir_generators(3, 3)) == math.comb(3, 2) * math.comb(3, 2)

    def test_kernel_equals_expansion(self):
        for n, d in ((2, 2), (2, 3), (3, 2)):
            ring = segre_ring(n, d)
            expanded = expand(ir_generators(n, d), ring, 4)
            for u in degrees_up_to(ring, 4):
                assert expanded.piece(u) == ir_piece(n, d, u), (n, d, u)

    def test_codimension_formula(self):
        for n, d in ((2, 2), (2, 3), (3, 3)):
            ring = segre_ring(n, d)
            for u in degrees_up_to(ring, 5 if n == 2 else 4):
                k = sum(u)
                got = dim_piece(ring, u) - ir_piece(n, d, u).dim
                assert got == math.comb(n + k - 1, k)

    def test_degree_e1_is_zero(self):
        assert ir_piece(2, 2, (1, 0)).is_zero

    def test_two_ones_inside_annihilator(self):
        rng = random.Random(4)
        for n, d in ((2, 3), (3, 3)):
            f = random_symmetric_tensor(n, d, rng)
            for u in two_ones_degrees(d):
                assert ann_piece(f, u).contains(ir_piece(n, d, u))

    def test_degree_one_image_lemma(self):
        rng = random.Random(5)
        for n, d in ((2, 3), (2, 4), (3, 3)):
            f = random_symmetric_tensor(n, d, rng)
            lifted = image(pi_matrix(n, d, ones(d)), ann_piece(f, ones(d)))
            assert lifted == ann_sym_piece(depolarize(f), d)


class TestDirectSum:
    @pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_direct_sum(self, n, d):
        ring = segre_ring(n, d)
        for u in degrees_up_to(ring, 5 if (n, d) != (3, 3) else 4):
            assert direct_sum_check(n, d, u), (n, d, u)

    def test_degree_zero(self):
        assert direct_sum_check(2, 2, (0, 0))

    def test_single_factor(self):
        # d=1: I_R is zero and psi is an isomorphism
        assert ir_piece(2, 1, (3,)).is_zero
        assert direct_sum_check(2, 1, (3,))


def test_degree_enumerators():
    assert two_ones_degrees(3) == [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
    assert staircase_degrees(3) == [(0, 0, 0), (1, 0, 0), (1, 1, 0)]


@given(
    n=st.integers(2, 3),
    data=st.data(),
)
@settings(max_examples=40, deadline=None)
def test_section_property_everywhere(n, data):
    d = data.draw(st.integers(1, 3))
    u = tuple(data.draw(st.integers(0, 2)) for _ in range(d))
    ring_v = veronese_ring(n)
    coords = tuple(
        Fraction(data.draw(st.integers(-4, 4)))
        for _ in range(dim_piece(ring_v, sum(u)))
    )
    g = PieceElement(ring_v, sum(u), coords)
    assert pi(psi(u, g)).coords == g.coords
