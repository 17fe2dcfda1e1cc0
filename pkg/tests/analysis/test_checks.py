import pytest
from hamcrest import *

from tests.fixtures import haar_section
from torus_pmra.analysis import (
    MeyerScaling,
    Scaled,
    Shifted,
    Sum,
    TorusGrid,
    TrigPolynomial,
    check_refinement,
    check_unit_lattice_norm,
    compare_scaling_function,
    haar_cascade,
    xi_membership,
)
from torus_pmra.analysis.decay import lattice_tail
from torus_pmra.exceptions import DepthZero, DimensionMismatch, ValidationError
from torus_pmra.filters import MultiTrigPoly, haar_filter_bank, tensor_filter
from torus_pmra.lattice import diagonal_dilation

REFINE_WINDOW = (-4.0, 4.0)
DEPTHS = [4, 8, 12, 16, 20]


def haar_mask(d, n):
    return TrigPolynomial(tensor_filter([haar_filter_bank(d)] * n))


def perturbed_haar():
    haar = haar_section(2)
    return Sum((haar, Scaled(0.1, Shifted((0.3,), haar))))


class TestXiMembership:
    @pytest.mark.acceptancetest
    def test_haar_tail_is_certified_at_a_large_radius(self):
        report = xi_membership(haar_section(2), TorusGrid(1, 256), 512, 1e-3)

        assert_that(report.tail_bound, less_than(1e-3))
        assert_that(report.sup_sum, close_to(1.0, 1e-2))
        assert_that(report.min_sum, close_to(1.0, 1e-2))
        assert_that(report.passed, is_(True))

    def test_haar_decays_too_slowly_for_a_tiny_tolerance(self):
        report = xi_membership(haar_section(2), TorusGrid(1, 32), 64, 1e-8)

        assert_that(report.passed, is_(False))

    @pytest.mark.acceptancetest
    def test_constant_section_fails(self):
        constant = TrigPolynomial(MultiTrigPoly.constant(1, 1.0))

        report = xi_membership(constant, TorusGrid(1, 16), 8, 1e-8)

        assert_that(report.tail_bound, is_(float("inf")))
        assert_that(report.passed, is_(False))

    def test_compact_sections_have_no_tail(self):
        report = xi_membership(MeyerScaling(), TorusGrid(1, 64), 8, 1e-8)

        assert_that(report.tail_bound, is_(0.0))
        assert_that(report.sup_sum, close_to(1.0, 1e-12))
        assert_that(report.passed, is_(True))

    def test_worker_count_does_not_change_the_sums(self):
        grid = TorusGrid(1, 256)

        serial = xi_membership(haar_section(2), grid, 512, 1e-3, workers=1)
        threaded = xi_membership(haar_section(2), grid, 512, 1e-3, workers=2)

        assert_that(threaded.sup_sum, is_(serial.sup_sum))
        assert_that(threaded.min_sum, is_(serial.min_sum))


class TestRefinement:
    @pytest.mark.acceptancetest
    @pytest.mark.parametrize("d", [2, 3])
    def test_haar_refines_in_one_dimension(self, d):
        report = check_refinement(
            haar_section(d),
            haar_mask(d, 1),
            diagonal_dilation(d),
            TorusGrid(1, 256),
            1e-8,
            window=REFINE_WINDOW,
        )

        assert_that(report.max_error, less_than(1e-8))
        assert_that(report.passed, is_(True))

    @pytest.mark.acceptancetest
    def test_haar_refines_in_two_dimensions(self):
        report = check_refinement(
            haar_section(2, n=2),
            haar_mask(2, 2),
            diagonal_dilation(2, 2),
            TorusGrid(2, 32),
            1e-8,
            window=REFINE_WINDOW,
        )

        assert_that(report.passed, is_(True))

    @pytest.mark.acceptancetest
    def test_perturbed_section_fails(self):
        report = check_refinement(
            perturbed_haar(),
            haar_mask(2, 1),
            diagonal_dilation(2),
            TorusGrid(1, 256),
            1e-8,
            window=REFINE_WINDOW,
        )

        assert_that(report.passed, is_(False))

    def test_dimensions_must_agree(self):
        assert_that(
            calling(check_refinement).with_args(
                haar_section(2),
                haar_mask(2, 2),
                diagonal_dilation(2),
                TorusGrid(1, 8),
                1e-8,
            ),
            raises(DimensionMismatch),
        )


class TestUnitLatticeNorm:
    @pytest.mark.acceptancetest
    def test_haar_in_one_dimension(self):
        report = check_unit_lattice_norm(haar_section(2), 1, TorusGrid(1, 64), 64, 1e-8)

        assert_that(report.max_deviation, less_than(report.tail_bound + 1e-8))
        assert_that(report.passed, is_(True))

    @pytest.mark.acceptancetest
    def test_haar_in_two_dimensions(self):
        report = check_unit_lattice_norm(
            haar_section(2, n=2), 1, TorusGrid(2, 8), 16, 1e-8
        )

        assert_that(report.passed, is_(True))

    @pytest.mark.acceptancetest
    def test_perturbed_section_fails(self):
        report = check_unit_lattice_norm(
            perturbed_haar(), 1, TorusGrid(1, 64), 64, 1e-8
        )

        assert_that(report.max_deviation, greater_than(0.1))
        assert_that(report.passed, is_(False))

    def test_tail_bound_covers_the_whole_quasi_period(self):
        gamma = haar_section(2)
        model = gamma.decay.squared()

        report = check_unit_lattice_norm(gamma, 3, TorusGrid(1, 48), 16, 1e-8)

        assert_that(report.tail_bound, close_to(lattice_tail(model, 1, 16, 3.0), 1e-15))
        assert_that(report.tail_bound, greater_than(lattice_tail(model, 1, 16, 1.0)))

    def test_tail_bound_dominates_the_truncation_error(self):
        gamma = haar_section(2)
        grid = TorusGrid(1, 48)

        coarse = check_unit_lattice_norm(gamma, 3, grid, 4, 1e-8)
        fine = check_unit_lattice_norm(gamma, 3, grid, 400, 1e-8)

        assert_that(
            abs(coarse.max_deviation - fine.max_deviation),
            less_than_or_equal_to(coarse.tail_bound),
        )

    def test_quasi_period_must_be_positive(self):
        assert_that(
            calling(check_unit_lattice_norm).with_args(
                haar_section(2), 0, TorusGrid(1, 8), 4, 1e-8
            ),
            raises(ValidationError),
        )


class TestCascade:
    @pytest.mark.acceptancetest
    @pytest.mark.parametrize("d", [2, 3])
    def test_cascade_converges_to_the_closed_form(self, d):
        report = compare_scaling_function(d, 20)

        assert_that(report.max_error, less_than(1e-6))
        assert_that(report.passed, is_(True))

    @pytest.mark.parametrize("d", [2, 3])
    def test_cascade_error_decreases_with_depth(self, d):
        errors = [compare_scaling_function(d, depth).max_error for depth in DEPTHS]

        for deeper, shallower in zip(errors[1:], errors):
            assert_that(deeper, less_than(shallower))
        assert_that(errors[-1], less_than(1e-6))

    def test_shallow_cascade_is_far_from_the_closed_form(self):
        report = compare_scaling_function(2, 2)

        assert_that(report.passed, is_(False))

    def test_depth_zero(self):
        assert_that(calling(haar_cascade).with_args(2, 0), raises(DepthZero))
