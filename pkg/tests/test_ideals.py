"""Tests for truncated ideals, point ideals, Hilbert functions, and saturation."""

import random
import warnings
from fractions import Fraction

import pytest

from borderapolar.diagonal_maps import ir_generators
from borderapolar.grading import (
    PieceElement,
    dim_piece,
    ones,
    segre_ring,
    veronese_ring,
)
from borderapolar.ideals import (
    GenericityError,
    PointSet,
    degrees_up_to,
    diagonal_ideal,
    diagonal_points,
    expand,
    generic_hf,
    hilbert_function,
    is_ideal_closed,
    is_saturated_degreewise,
    min_generators_in_degree,
    point_ideal,
    very_general_points,
    zero_ideal,
)
from borderapolar.linalg import Subspace
from support import diagonal_tensor


V2 = veronese_ring(2)
V3 = veronese_ring(3)


def principal_ideal(coeffs_by_mono, ring, degree, bound):
    gen = PieceElement.from_terms(ring, degree, coeffs_by_mono)
    return expand([gen], ring, bound)


class TestExpand:
    def test_diagonal_ideal_quotient_dim(self):
        ring = segre_ring(2, 2)
        j = expand(ir_generators(2, 2), ring, 4)
        assert hilbert_function(j, (1, 1)) == 3  # dim V_2

    def test_principal_ideal_codim(self):
        j = principal_ideal({(1, 0): 1}, V2, 1, 3)
        # codim of b1*V_{k-1} inside V_k counts the monomials without b1
        for k in range(4):
            assert hilbert_function(j, k) == 1

    def test_empty_generators(self):
        j = expand([], V2, 3)
        assert all(j.piece(k).is_zero for k in range(4))

    def test_closure_invariant(self):
        rng = random.Random(0)
        ring = segre_ring(2, 2)
        for _ in range(5):
            gens = []
            for _ in range(2):
                u = (rng.randint(0, 1), rng.randint(0, 1))
                coords = tuple(
                    Fraction(rng.randint(-3, 3)) for _ in range(dim_piece(ring, u))
                )
                gens.append(PieceElement(ring, u, coords))
            assert is_ideal_closed(expand(gens, ring, 3))

    def test_generator_beyond_bound_warns(self):
        g = PieceElement.from_terms(V2, 3, {(3, 0): 1})
        with pytest.warns(UserWarning):
            j = expand([g], V2, 2)
        assert all(j.piece(k).is_zero for k in range(3))

    def test_hand_built_hole_is_not_closed(self):
        j = principal_ideal({(1, 0): 1}, V2, 1, 3)
        broken = j.with_piece(2, Subspace.zero(dim_piece(V2, 2)))
        assert not is_ideal_closed(broken)


class TestHilbertFunction:
    def test_zero_ideal(self):
        j = zero_ideal(V2, 3)
        assert [hilbert_function(j, k) for k in range(4)] == [1, 2, 3, 4]

    def test_diagonal_ideal_n2_d3(self):
        j = diagonal_ideal(2, 3, 3)
        assert hilbert_function(j, (1, 1, 1)) == 4  # dim V_3

    def test_beyond_bound_raises(self):
        j = zero_ideal(V2, 2)
        with pytest.raises(ValueError):
            hilbert_function(j, 3)

    def test_generic_hf(self):
        x = segre_ring(2, 3)
        assert generic_hf(4, x, (1, 1, 0)) == 4
        assert generic_hf(4, x, (1, 1, 1)) == 4
        assert generic_hf(0, x, (1, 1, 1)) == 0
        with pytest.raises(ValueError):
            generic_hf(-1, x, (1, 0, 0))


class TestPointIdeal:
    def test_single_coordinate_point(self):
        z = PointSet(V2, ((1, 0),))
        j = point_ideal(z, 3)
        # degree 2: forms vanishing at (1:0) are spanned by b1b2 and b2^2
        assert j.piece(2).basis == ((0, 1, 0), (0, 0, 1))
        assert j.piece(2).dim == 2

    def test_three_general_points_hf(self):
        rng = random.Random(12)
        z = very_general_points(V2, 3, 4, rng)
        j = point_ideal(z, 4)
        assert [hilbert_function(j, k) for k in range(5)] == [1, 2, 3, 3, 3]

    def test_two_general_points_degree_three(self):
        rng = random.Random(17)
        z = very_general_points(V2, 2, 3, rng)
        assert hilbert_function(point_ideal(z, 3), 3) == 2

    def test_distinctness_enforced(self):
        with pytest.raises(ValueError):
            PointSet(V2, ((1, 2), (2, 4)))  # projectively equal

    def test_zero_factor_rejected(self):
        with pytest.raises(ValueError):
            PointSet(segre_ring(2, 2), (((0, 0), (1, 1)),))

    def test_hf_monotone_toward_r(self):
        rng = random.Random(13)
        for r in (2, 4, 6):
            z = very_general_points(V3, r, 3, rng)
            j = point_ideal(z, 3)
            vals = [hilbert_function(j, k) for k in range(4)]
            assert all(a <= b for a, b in zip(vals, vals[1:]))
            assert vals[-1] <= r

    def test_hf_monotone_per_coordinate_direction(self):
        rng = random.Random(18)
        ring = segre_ring(2, 3)
        z = very_general_points(ring, 3, 3, rng)
        j = point_ideal(z, 3)
        for u in degrees_up_to(ring, 2):
            here = hilbert_function(j, u)
            assert here <= 3
            for i in range(3):
                up = tuple(x + 1 if t == i else x for t, x in enumerate(u))
                assert here <= hilbert_function(j, up)

    def test_very_general_matches_generic_hf(self):
        rng = random.Random(14)
        for ring, r in ((V2, 3), (V3, 5), (segre_ring(2, 2), 3), (segre_ring(3, 3), 6)):
            bound = 3
            z = very_general_points(ring, r, bound, rng)
            j = point_ideal(z, bound)
            for u in degrees_up_to(ring, bound):
                assert hilbert_function(j, u) == generic_hf(r, ring, u)

    def test_diagonal_points(self):
        z = PointSet(V2, ((1, 0), (1, 1)))
        dz = diagonal_points(z, 3)
        assert dz.ring == segre_ring(2, 3)
        assert dz.points[0] == ((1, 0), (1, 0), (1, 0))


class TestSaturation:
    def test_point_ideals_saturated(self):
        rng = random.Random(15)
        z = very_general_points(V2, 2, 4, rng)
        j = point_ideal(z, 4)
        for k in range(4):
            assert is_saturated_degreewise(j, k)
        zx = very_general_points(segre_ring(2, 2), 2, 4, rng)
        jx = point_ideal(zx, 4)
        for u in degrees_up_to(jx.ring, 2):
            assert is_saturated_degreewise(jx, u)

    def test_irrelevant_ideal_not_saturated_at_zero(self):
        ring = segre_ring(2, 2)
        gens = []
        from borderapolar.grading import monomials

        for mono in monomials(ring, (1, 1)):
            gens.append(PieceElement.from_terms(ring, (1, 1), {mono: 1}))
        bx = expand(gens, ring, 3)
        assert not is_saturated_degreewise(bx, (0, 0))

    def test_zero_ideal_saturated(self):
        j = zero_ideal(V2, 3)
        assert is_saturated_degreewise(j, 1)

    def test_bound_guard(self):
        j = zero_ideal(segre_ring(2, 3), 3)
        with pytest.raises(ValueError):
            is_saturated_degreewise(j, (1, 0, 0))


class TestMinGenerators:
    def test_principal_at_generator_degree(self):
        j = principal_ideal({(1, 1): 1}, V2, 2, 4)
        assert min_generators_in_degree(j, 2) == 1

    def test_principal_above_generator_degree(self):
        j = principal_ideal({(1, 1): 1}, V2, 2, 4)
        assert min_generators_in_degree(j, 3) == 0
        assert min_generators_in_degree(j, 1) == 0

    def test_random_generators_counted(self):
        rng = random.Random(16)
        for _ in range(5):
            gens = []
            degs = sorted(rng.sample(range(1, 4), k=2))
            for deg in degs:
                coords = [Fraction(rng.randint(-3, 3)) for _ in range(dim_piece(V3, deg))]
                if not any(coords):
                    coords[0] = Fraction(1)
                gens.append(PieceElement(V3, deg, tuple(coords)))
            j = expand(gens, V3, 4)
            # oracle: rank bookkeeping during expansion
            for deg in range(4):
                independent = 0
                from_below = expand(
                    [g for g in gens if g.degree < deg], V3, max(deg, 1)
                )
                below = from_below.piece(deg) if deg <= from_below.bound else None
                new_rows = [list(g.coords) for g in gens if g.degree == deg]
                if below is not None:
                    merged = Subspace.from_rows(
                        dim_piece(V3, deg), list(below.basis) + new_rows
                    )
                    independent = merged.dim - below.dim
                assert min_generators_in_degree(j, deg) == independent

    def test_diagonal_tensor_annihilator_generators(self):
        # cross-check with the annihilator of the Fermat cubic
        from borderapolar.apolarity import depolarize
        from borderapolar.bounds import (
            min_generators_degree_one,
            min_generators_sym_in_degree,
        )

        f = diagonal_tensor(2, 3)
        assert min_generators_degree_one(f) == 1
        p = depolarize(f)  # y1^3 + y2^3 up to scaling
        assert min_generators_sym_in_degree(p, 3) == 1


class TestGenericity:
    def test_failure_after_retry(self):
        class RiggedRandom(random.Random):
            def randint(self, a, b):  # collinear draws: all points equal
                return 1

        with pytest.raises(GenericityError):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                very_general_points(V2, 3, 2, RiggedRandom())
