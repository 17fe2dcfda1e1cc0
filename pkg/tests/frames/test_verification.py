import numpy as np
import pytest
from hamcrest import *

from tests.fixtures import band_limited_frame
from torus_pmra.analysis import CosineBump, MeyerScaling, MeyerWavelet, Sum, TorusGrid
from torus_pmra.exceptions import DimensionMismatch
from torus_pmra.frames import (
    certify_free_rank,
    character_sum,
    density_profile,
    expected_gram,
    sample_corpus,
    verify_frame,
    verify_reconstruction,
)
from torus_pmra.lattice import diagonal_dilation, validate_dilation

GRID = TorusGrid(1, 64)
RADIUS = 8


class TestCharacterSum:
    @pytest.mark.parametrize(
        "u, expected", [((4,), 1), ((1,), 0), ((2,), 0), ((-8,), 1)]
    )
    def test_dyadic(self, u, expected):
        value = character_sum(diagonal_dilation(2), 2, u)

        assert_that(abs(value - expected), less_than(1e-12))

    @pytest.mark.parametrize(
        "u, expected", [((2, 3), 1), ((1, 0), 0), ((0, 1), 0), ((4, -6), 1)]
    )
    def test_anisotropic(self, u, expected):
        value = character_sum(diagonal_dilation(2, 3), 1, u)

        assert_that(abs(value - expected), less_than(1e-12))

    def test_conjugated_dilation(self):
        spec = validate_dilation([[2, 0], [0, 4]], conjugator=[[1, -1], [0, 1]])

        on_lattice = character_sum(spec, 1, (2, 4))
        off_lattice = character_sum(spec, 1, (1, 0))

        assert_that(abs(on_lattice - 1), less_than(1e-12))
        assert_that(abs(off_lattice), less_than(1e-12))

    def test_level_zero_is_one(self):
        assert_that(character_sum(diagonal_dilation(3), 0, (5,)), is_(1 + 0j))


class TestExpectedGram:
    def test_orthonormal_levels_expect_the_identity(self):
        fs = band_limited_frame(1, 2)

        assert_that(np.allclose(expected_gram(fs, 2), np.eye(4)), is_(True))


class TestReconstruction:
    @pytest.mark.acceptancetest
    @pytest.mark.parametrize("level", [0, 1, 2])
    def test_frame_reconstructs_its_levels(self, level):
        fs = band_limited_frame(1, 2)

        report = verify_frame(fs, level, GRID, RADIUS, 1e-8, seed=20240607)

        assert_that(report.corpus_size, is_(4))
        assert_that(report.max_residual, less_than(1e-8))
        assert_that(report.passed, is_(True))

    def test_scaling_elements_cover_v0(self):
        fs = band_limited_frame(1, 0)
        zeta = Sum((MeyerScaling(), MeyerWavelet()))

        report = verify_reconstruction(
            fs, zeta, 0, GRID, RADIUS, 1e-8, include_scaling=True
        )

        assert_that(report.element_count, is_(2))
        assert_that(report.passed, is_(True))

    def test_wavelets_alone_miss_v0(self):
        fs = band_limited_frame(1, 0)

        report = verify_reconstruction(fs, MeyerScaling(), 0, GRID, RADIUS, 1e-8)

        assert_that(report.residual, greater_than(0.5))
        assert_that(report.passed, is_(False))

    def test_corpus_is_deterministic(self):
        fs = band_limited_frame(1, 1)

        assert_that(sample_corpus(fs, 1, 7), is_(sample_corpus(fs, 1, 7)))
        assert_that(sample_corpus(fs, 1, 7), is_not(sample_corpus(fs, 1, 8)))

    def test_dimension_mismatch(self):
        fs = band_limited_frame(1, 0)

        assert_that(
            calling(verify_reconstruction).with_args(
                fs, MeyerScaling(), 0, TorusGrid(2, 4), RADIUS, 1e-8
            ),
            raises(DimensionMismatch),
        )


class TestFreeRank:
    @pytest.mark.acceptancetest
    @pytest.mark.parametrize("level, rank", [(1, 2), (2, 4)])
    def test_levels_are_free(self, level, rank):
        fs = band_limited_frame(1, 2)

        report = certify_free_rank(fs, level, GRID, RADIUS, 1e-8)

        assert_that(report.claimed_rank, is_(rank))
        assert_that(report.element_count, is_(rank))
        assert_that(report.gram.max_deviation, less_than(1e-8))
        assert_that(report.passed, is_(True))

    @pytest.mark.acceptancetest
    def test_two_dimensional_level_one_is_free_of_rank_twelve(self):
        fs = band_limited_frame(2, 1)

        report = certify_free_rank(fs, 1, TorusGrid(2, 8), RADIUS, 1e-9)

        assert_that(report.claimed_rank, is_(12))
        assert_that(report.element_count, is_(12))
        assert_that(report.gram.max_deviation, less_than_or_equal_to(1e-9))
        assert_that(report.passed, is_(True))

    @pytest.mark.acceptancetest
    def test_two_dimensional_level_one_reconstructs(self):
        fs = band_limited_frame(2, 1)

        report = verify_frame(fs, 1, TorusGrid(2, 8), RADIUS, 1e-9, seed=20240607)

        assert_that(report.corpus_size, is_(8))
        assert_that(report.max_residual, less_than_or_equal_to(1e-9))
        assert_that(report.passed, is_(True))

    def test_tensor_wavelets_are_orthonormal(self):
        fs = band_limited_frame(2, 0)

        report = certify_free_rank(fs, 0, TorusGrid(2, 8), RADIUS, 1e-8)

        assert_that(report.claimed_rank, is_(3))
        assert_that(report.passed, is_(True))

    def test_worker_count_does_not_change_the_report(self):
        fs = band_limited_frame(1, 1)

        serial = certify_free_rank(fs, 1, GRID, RADIUS, 1e-8, workers=1)
        threaded = certify_free_rank(fs, 1, GRID, RADIUS, 1e-8, workers=3)

        assert_that(threaded.gram.deviations, is_(serial.gram.deviations))


class TestDensity:
    def test_residuals_decrease_with_depth(self):
        fs = band_limited_frame(1, 3)

        report = density_profile(fs, CosineBump(4.0, 8), TorusGrid(1, 32), 16)

        assert_that(report.residuals, has_length(4))
        assert_that(report.monotone, is_(True))
        assert_that(report.residuals[-1], less_than(report.residuals[0]))
        assert_that(report.residuals[-1], less_than(1e-6))
        assert_that(report.passed, is_(True))

    def test_dimension_mismatch(self):
        fs = band_limited_frame(1, 1)

        assert_that(
            calling(density_profile).with_args(
                fs, CosineBump(4.0, 8, dimension=2), GRID, 8
            ),
            raises(DimensionMismatch),
        )
