import pytest
from hamcrest import *

from torus_pmra.exceptions import (
    DimensionMismatch,
    UnsupportedDilation,
    UnsupportedTwistPattern,
    ValidationError,
)
from torus_pmra.ktheory import (
    KClass,
    ModuleDescriptor,
    dilate_class,
    level_report,
    pmra_level_class,
    wavelet_class,
)
from torus_pmra.lattice import diagonal_dilation, validate_dilation


class TestDilateClass:
    @pytest.mark.acceptancetest
    @pytest.mark.parametrize("a", [1, 3, -2])
    def test_scalar_dilation_on_t3(self, a):
        spec = diagonal_dilation(2, 2, 2)
        v0 = ModuleDescriptor(q=1, twists=(0, a))

        v1 = dilate_class(spec, v0)
        w0 = wavelet_class(spec, v0, 0)

        assert_that(v1, is_(ModuleDescriptor(q=8, twists=(0, 2 * a))))
        assert_that(
            w0.k_class, is_(KClass.from_coeffs(3, {(): 7, (2, 3): -a}))
        )
        assert_that(w0.cancellation_valid, is_(True))
        assert_that(w0.descriptor, is_(ModuleDescriptor(q=7, twists=(0, a))))

    def test_diagonal_dilation_on_t2(self):
        assert_that(
            dilate_class(diagonal_dilation(2, 3), ModuleDescriptor(q=1, twists=(4,))),
            is_(ModuleDescriptor(q=6, twists=(4,))),
        )

    def test_orientation_reversing_diagonal(self):
        assert_that(
            dilate_class(diagonal_dilation(-2, 3), ModuleDescriptor(q=1, twists=(4,))),
            is_(ModuleDescriptor(q=6, twists=(-4,))),
        )

    def test_other_factors_scale_the_twist(self):
        spec = diagonal_dilation(3, 2, 5)

        assert_that(
            dilate_class(spec, ModuleDescriptor(q=1, twists=(1, 0))),
            is_(ModuleDescriptor(q=30, twists=(2, 0))),
        )
        assert_that(
            dilate_class(spec, ModuleDescriptor(q=1, twists=(0, 1))),
            is_(ModuleDescriptor(q=30, twists=(0, 3))),
        )

    def test_untwisted_modules_only_scale_the_rank(self):
        assert_that(
            dilate_class(
                diagonal_dilation(2, 3, 4), ModuleDescriptor(q=2, twists=(0, 0))
            ),
            is_(ModuleDescriptor(q=48, twists=(0, 0))),
        )

    def test_conjugated_dilation_on_t2(self):
        spec = validate_dilation([[2, 0], [0, 4]], conjugator=[[1, -1], [0, 1]])

        assert_that(
            dilate_class(spec, ModuleDescriptor(q=1, twists=(3,))),
            is_(ModuleDescriptor(q=8, twists=(3,))),
        )

    def test_conjugated_dilation_with_negative_determinant(self):
        spec = validate_dilation([[-2, 0], [0, 4]], conjugator=[[1, -1], [0, 1]])

        assert_that(
            dilate_class(spec, ModuleDescriptor(q=1, twists=(3,))),
            is_(ModuleDescriptor(q=8, twists=(-3,))),
        )

    def test_conjugated_module_on_t2_is_untwisted_first(self):
        module = ModuleDescriptor(q=1, twists=(2,), conjugator=((0, 1), (1, 0)))

        assert_that(
            dilate_class(diagonal_dilation(2, 2), module),
            is_(ModuleDescriptor(q=4, twists=(-2,))),
        )

    def test_scalar_dilation_keeps_a_t3_conjugator(self):
        b = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
        module = ModuleDescriptor(q=1, twists=(0, 1), conjugator=b)

        v1 = dilate_class(diagonal_dilation(3, 3, 3), module)

        assert_that(v1, is_(ModuleDescriptor(q=27, twists=(0, 3), conjugator=b)))

    def test_multiple_twists_are_unsupported(self):
        assert_that(
            calling(dilate_class).with_args(
                diagonal_dilation(2, 2, 2), ModuleDescriptor(q=1, twists=(1, 1))
            ),
            raises(UnsupportedTwistPattern),
        )

    def test_general_dilations_are_unsupported(self):
        assert_that(
            calling(dilate_class).with_args(
                validate_dilation([[1, 1], [-1, 1]]), ModuleDescriptor(q=1, twists=(1,))
            ),
            raises(UnsupportedDilation),
        )

    def test_dimension_mismatch(self):
        assert_that(
            calling(dilate_class).with_args(
                diagonal_dilation(2, 2), ModuleDescriptor(q=1, twists=(0, 1))
            ),
            raises(DimensionMismatch),
        )


class TestLevelReport:
    def test_levels_on_t3(self):
        report = level_report(
            diagonal_dilation(2, 2, 2), ModuleDescriptor(q=1, twists=(0, 1)), 2
        )

        assert_that([e.level for e in report.levels], is_([0, 1, 2]))
        assert_that(
            [e.module for e in report.levels],
            contains_exactly(
                ModuleDescriptor(q=1, twists=(0, 1)),
                ModuleDescriptor(q=8, twists=(0, 2)),
                ModuleDescriptor(q=64, twists=(0, 4)),
            ),
        )
        assert_that(
            [e.wavelet.descriptor for e in report.levels],
            contains_exactly(
                ModuleDescriptor(q=7, twists=(0, 1)),
                ModuleDescriptor(q=56, twists=(0, 2)),
                ModuleDescriptor(q=448, twists=(0, 4)),
            ),
        )
        assert_that(report.cancellation_valid, is_(True))

    def test_wavelet_classes_telescope(self):
        spec = diagonal_dilation(2, 3)
        v0 = ModuleDescriptor(q=1, twists=(1,))
        report = level_report(spec, v0, 3)

        total = report.levels[0].k_class
        for entry in report.levels:
            total = total + entry.wavelet.k_class

        top = pmra_level_class(spec, v0, 4)
        assert_that(top, is_(ModuleDescriptor(q=1296, twists=(1,))))
        assert_that(total.rank, is_(1296))

    def test_cancellation_is_not_claimed_beyond_four_dimensions(self):
        spec = diagonal_dilation(2, 2, 2, 2, 2)
        module = ModuleDescriptor(q=1, twists=(0, 0, 0, 1))

        w0 = wavelet_class(spec, module, 0)

        assert_that(w0.cancellation_valid, is_(False))
        assert_that(w0.descriptor, is_(none()))
        assert_that(w0.k_class.rank, is_(31))

    def test_negative_depth(self):
        assert_that(
            calling(level_report).with_args(
                diagonal_dilation(2, 2), ModuleDescriptor(q=1, twists=(1,)), -1
            ),
            raises(ValidationError),
        )
