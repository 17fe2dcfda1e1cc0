import random

import pytest
from hamcrest import *

from tests.fixtures import random_element, random_unimodular
from torus_pmra.exceptions import (
    DimensionMismatch,
    InvalidModuleDescriptor,
    NotUnimodular,
    ValidationError,
)
from torus_pmra.ktheory import (
    ExtElement,
    KClass,
    ModuleDescriptor,
    class_of_module,
    direct_sum,
    direct_sum_modules,
    embed_class,
    gl2_action,
    gl_action,
)
from torus_pmra.lattice import matrices


class TestModuleDescriptor:
    def test_dimension_follows_the_twists(self):
        assert_that(ModuleDescriptor(q=3, twists=(0, 2)).n, is_(3))
        assert_that(ModuleDescriptor(q=3).n, is_(1))

    def test_label(self):
        assert_that(str(ModuleDescriptor(q=7, twists=(0, 1))), is_("X(7, 0, 1)"))

    @pytest.mark.parametrize("q", [0, -1, True])
    def test_rank_must_be_positive(self, q):
        assert_that(
            calling(ModuleDescriptor).with_args(q=q, twists=(1,)),
            raises(InvalidModuleDescriptor),
        )

    def test_conjugator_must_be_unimodular(self):
        assert_that(
            calling(ModuleDescriptor).with_args(
                q=1, twists=(1,), conjugator=((2, 0), (0, 1))
            ),
            raises(NotUnimodular),
        )

    def test_conjugator_must_match_the_dimension(self):
        assert_that(
            calling(ModuleDescriptor).with_args(
                q=1, twists=(1,), conjugator=matrices.identity(3)
            ),
            raises(InvalidModuleDescriptor),
        )


class TestClassOfModule:
    def test_single_twist_on_t2(self):
        k_class = class_of_module(ModuleDescriptor(q=3, twists=(5,)))

        assert_that(k_class.rank, is_(3))
        assert_that(k_class.coefficient(1, 2), is_(-5))

    def test_multiple_twists_on_t3(self):
        k_class = class_of_module(ModuleDescriptor(q=2, twists=(1, -4)))

        assert_that(k_class.coefficient(1, 3), is_(-1))
        assert_that(k_class.coefficient(2, 3), is_(4))
        assert_that(k_class.coefficient(1, 2), is_(0))

    def test_free_module(self):
        assert_that(class_of_module(ModuleDescriptor(q=4, twists=(0, 0))), is_(
            KClass.free(3, 4)
        ))

    def test_odd_degrees_are_rejected(self):
        assert_that(
            calling(KClass).with_args(ExtElement.generator(2, 1)),
            raises(ValidationError),
        )


class TestGlAction:
    def test_agrees_with_the_determinant_formula_on_t2(self):
        rng = random.Random(7)
        c = KClass.from_coeffs(2, {(): 3, (1, 2): -2})

        for _ in range(100):
            b = random_unimodular(rng, 2)
            assert_that(gl_action(b, c), is_(gl2_action(b, c)))

    def test_composition(self):
        rng = random.Random(11)
        c = KClass.from_coeffs(3, {(): 1, (1, 2): 2, (1, 3): -1, (2, 3): 5})

        for _ in range(20):
            b1 = random_unimodular(rng, 3)
            b2 = random_unimodular(rng, 3)
            product = matrices.matmul(b2, b1)
            assert_that(gl_action(b1, gl_action(b2, c)), is_(gl_action(product, c)))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_is_a_ring_map(self, n):
        rng = random.Random(40 + n)
        even = range(0, n + 1, 2)

        for _ in range(10):
            b = random_unimodular(rng, n)
            x = KClass(random_element(rng, n, even))
            y = KClass(random_element(rng, n, even))
            product = KClass(x.elem ^ y.elem)
            assert_that(gl_action(b, x + y), is_(gl_action(b, x) + gl_action(b, y)))
            assert_that(
                gl_action(b, product),
                is_(KClass(gl_action(b, x).elem ^ gl_action(b, y).elem)),
            )

    def test_rank_is_invariant(self):
        c = KClass.from_coeffs(3, {(): 6, (2, 3): 1})
        b = [[1, 2, 0], [0, 1, 0], [3, 0, 1]]

        assert_that(gl_action(b, c).rank, is_(6))

    def test_rejects_non_unimodular_matrices(self):
        c = KClass.free(2, 1)

        assert_that(
            calling(gl_action).with_args([[2, 0], [0, 1]], c), raises(NotUnimodular)
        )

    def test_rejects_mismatched_dimensions(self):
        assert_that(
            calling(gl_action).with_args(matrices.identity(3), KClass.free(2, 1)),
            raises(DimensionMismatch),
        )


class TestEmbedClass:
    @pytest.mark.acceptancetest
    @pytest.mark.parametrize(
        "q, c1, c2, c3",
        [(1, 2, 3, 5), (4, 0, 1, 0), (2, -6, 4, 10), (3, 7, -11, 13), (5, 0, 0, 0)],
    )
    def test_class_round_trip(self, q, c1, c2, c3):
        descriptor = embed_class(q, c1, c2, c3)

        expected = KClass.from_coeffs(
            3, {(): q, (1, 2): c1, (1, 3): c2, (2, 3): c3}
        )
        assert_that(class_of_module(descriptor), is_(expected))
        assert_that(descriptor.twists[0], is_(0))

    def test_twist_is_the_gcd(self):
        assert_that(embed_class(1, -6, 4, 10).twists, is_((0, 2)))


class TestDirectSums:
    def test_direct_sum_of_modules(self):
        total = direct_sum_modules(
            ModuleDescriptor(q=1, twists=(2,)), ModuleDescriptor(q=3, twists=(4,))
        )

        assert_that(total, is_(ModuleDescriptor(q=4, twists=(6,))))

    def test_class_is_additive(self):
        first = ModuleDescriptor(q=1, twists=(0, 2))
        second = ModuleDescriptor(q=2, twists=(1, 1))

        assert_that(
            class_of_module(direct_sum_modules(first, second)),
            is_(direct_sum(class_of_module(first), class_of_module(second))),
        )

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_direct_sum_is_commutative(self, n):
        rng = random.Random(60 + n)
        even = range(0, n + 1, 2)

        for _ in range(20):
            first = KClass(random_element(rng, n, even))
            second = KClass(random_element(rng, n, even))
            assert_that(direct_sum(first, second), is_(direct_sum(second, first)))

    def test_zero_is_neutral(self):
        c = KClass.from_coeffs(3, {(): 2, (1, 3): -5})

        assert_that(direct_sum(c, KClass.free(3, 0)), is_(c))

    def test_summands_must_share_their_conjugator(self):
        assert_that(
            calling(direct_sum_modules).with_args(
                ModuleDescriptor(q=1, twists=(1,), conjugator=((0, 1), (1, 0))),
                ModuleDescriptor(q=1, twists=(1,)),
            ),
            raises(InvalidModuleDescriptor),
        )
