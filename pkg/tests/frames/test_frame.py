import numpy as np
import pytest
from hamcrest import *

from tests.fixtures import band_limited_frame
from torus_pmra.analysis import (
    Dilated,
    MeyerScaling,
    MeyerWavelet,
    Modulated,
    evaluate,
)
from torus_pmra.exceptions import DimensionMismatch, LevelOverflow, ValidationError
from torus_pmra.frames import (
    ElementTag,
    band_limited_generators,
    dyadic_dilation,
    generate_frame,
)
from torus_pmra.lattice import diagonal_dilation


class TestGenerators:
    def test_one_dimension(self):
        generators = band_limited_generators(1)

        assert_that(generators.scaling, is_((MeyerScaling(),)))
        assert_that(generators.wavelets, is_((MeyerWavelet(),)))

    @pytest.mark.parametrize("n, wavelets", [(2, 3), (3, 7)])
    def test_tensor_generators(self, n, wavelets):
        generators = band_limited_generators(n)

        assert_that(generators.scaling, has_length(1))
        assert_that(generators.wavelets, has_length(wavelets))
        assert_that(generators.n, is_(n))

    def test_unsupported_dimension(self):
        assert_that(
            calling(band_limited_generators).with_args(4), raises(ValidationError)
        )


class TestGenerateFrame:
    @pytest.mark.acceptancetest
    def test_element_count_in_one_dimension(self):
        fs = band_limited_frame(1, 2)

        assert_that(fs.elements, has_length(8))
        assert_that(fs.expected_count(), is_(8))

    @pytest.mark.acceptancetest
    def test_element_count_in_two_dimensions(self):
        fs = band_limited_frame(2, 1)

        assert_that(fs.elements, has_length(16))
        assert_that(fs.expected_count(), is_(16))
        assert_that(fs.level_count(1), is_(12))

    def test_scaling_elements_come_first(self):
        fs = band_limited_frame(1, 1)

        assert_that(fs.elements[0].tag, is_(ElementTag.SCALING))
        assert_that(fs.scaling_elements(), has_length(1))
        assert_that(
            [e.tag for e in fs.elements[1:]], only_contains(ElementTag.WAVELET)
        )

    def test_wavelet_elements_are_dilated_modulations(self):
        fs = band_limited_frame(1, 1)
        spec = dyadic_dilation(1)

        first, second = fs.level_elements(1)

        assert_that((first.coset, second.coset), is_((0, 1)))
        assert_that(first.section, is_(Dilated(spec, MeyerWavelet(), 1)))
        assert_that(
            second.section, is_(Dilated(spec, Modulated((1,), MeyerWavelet()), 1))
        )

    def test_two_dimensional_elements_evaluate_pointwise(self):
        fs = band_limited_frame(2, 1)
        wavelets = band_limited_generators(2).wavelets
        reps = fs.tables[1].reps
        x = np.random.default_rng(11).uniform(-3.0, 3.0, size=(40, 2))
        y = x / 2

        for element in fs.level_elements(1):
            v = np.asarray(reps[element.coset], dtype=float)
            expected = (
                0.5
                * np.exp(-2j * np.pi * (y @ v))
                * evaluate(wavelets[element.generator], y)
            )

            assert_that(
                float(np.max(np.abs(evaluate(element.section, x) - expected))),
                less_than(1e-12),
            )

    def test_levels_use_their_coset_tables(self):
        fs = band_limited_frame(2, 2)

        assert_that([t.level for t in fs.tables], is_([0, 1, 2]))
        assert_that(fs.tables[2], has_length(16))

    def test_negative_depth(self):
        assert_that(
            calling(band_limited_frame).with_args(1, -1), raises(ValidationError)
        )

    def test_generators_must_match_the_dilation(self):
        generators = band_limited_generators(1)

        assert_that(
            calling(generate_frame).with_args(
                diagonal_dilation(2, 2), generators.scaling, generators.wavelets, 1
            ),
            raises(DimensionMismatch),
        )

    def test_level_cap(self):
        assert_that(
            calling(band_limited_frame).with_args(2, 3, cap=16),
            raises(LevelOverflow),
        )

    def test_level_outside_the_frame(self):
        fs = band_limited_frame(1, 1)

        assert_that(calling(fs.level_elements).with_args(2), raises(ValidationError))
