import math

import pytest

from haarmoments.combinatorics.partitions import (
    Partition, class_size, count_standard_tableaux, f_lambda, f_lambda_difference,
    f_lambda_hook, hook_shape, partitions_of, schur_dim, z_gamma
)
from haarmoments.combinatorics.permutations import Permutation, all_permutations
from haarmoments.output.error_handler import ArgumentError


class TestPartition:

    def test_parts_are_sorted_and_zeros_dropped(self):
        assert Partition((1, 3, 0, 1)) == (3, 1, 1)

    def test_text_and_label_formats(self):
        lam = Partition.from_text("3,1,1")
        assert lam.to_text() == "3,1,1"
        assert lam.label() == "(3,1,1)"
        assert Partition.from_text("(2,1)") == Partition((2, 1))
        assert Partition.from_text("") == Partition()

    @pytest.mark.parametrize("text", ["3,a", "2,-1", "1.5"])
    def test_malformed_text(self, text):
        with pytest.raises(ArgumentError):
            Partition.from_text(text)

    def test_part_accessor_pads_with_zeros(self):
        lam = Partition((4, 2))
        assert [lam.part(j) for j in range(1, 5)] == [4, 2, 0, 0]

    def test_conjugate(self):
        assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))
        assert Partition((2, 2)).conjugate() == Partition((2, 2))

    def test_hooks(self):
        assert sorted(Partition((2, 1)).hooks()) == [1, 1, 3]

    def test_multiplicities(self):
        assert Partition((2, 2, 1)).multiplicities() == {2: 2, 1: 1}


class TestCounting:

    @pytest.mark.parametrize("k, count", [(0, 1), (1, 1), (4, 5), (6, 11), (8, 22)])
    def test_number_of_partitions(self, k, count):
        assert len(partitions_of(k)) == count

    def test_length_bound(self):
        assert partitions_of(4, 2) == [Partition((4,)), Partition((3, 1)), Partition((2, 2))]

    def test_negative_weight(self):
        with pytest.raises(ArgumentError):
            partitions_of(-1)

    @pytest.mark.parametrize("k", range(1, 8))
    def test_sum_of_squared_dimensions(self, k):
        assert sum(f_lambda(lam) ** 2 for lam in partitions_of(k)) == math.factorial(k)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_class_sizes_sum_to_group_order(self, k):
        assert sum(class_size(gamma) for gamma in partitions_of(k)) == math.factorial(k)

    def test_z_gamma(self):
        assert z_gamma(Partition((2, 2))) == 8
        assert z_gamma(Partition((1, 1, 1))) == 6
        assert z_gamma(Partition((3, 2, 2))) == 24

    @pytest.mark.parametrize("lam", partitions_of(5))
    def test_hook_and_difference_formulas_agree(self, lam):
        assert f_lambda_hook(lam) == f_lambda_difference(lam) == count_standard_tableaux(lam)

    def test_known_dimensions(self):
        assert f_lambda(Partition((2, 2))) == 2
        assert f_lambda(Partition((3, 2))) == 5
        assert f_lambda(Partition((3, 2, 1))) == 16

    def test_schur_dim(self):
        assert schur_dim(Partition((2,)), 3) == 6
        assert schur_dim(Partition((1, 1)), 3) == 3
        assert schur_dim(Partition((2, 1)), 2) == 2
        assert schur_dim(Partition((1, 1, 1)), 2) == 0

    @pytest.mark.parametrize("k, d", [(2, 2), (3, 2), (3, 4), (4, 3)])
    def test_schur_weyl_dimension_count(self, k, d):
        assert sum(f_lambda(lam) * schur_dim(lam, d) for lam in partitions_of(k)) == d ** k

    def test_hook_shape(self):
        assert hook_shape(4, 0) == Partition((4,))
        assert hook_shape(4, 3) == Partition((1, 1, 1, 1))
        with pytest.raises(ArgumentError):
            hook_shape(4, 4)


class TestPermutation:

    def test_from_cycles(self):
        pi = Permutation.from_cycles(3, [(1, 2, 3)])
        assert pi.to_json() == [2, 3, 1]
        assert pi.to_cycle_text() == "(1 2 3)"
        assert pi.cycle_type() == Partition((3,))

    def test_composition_order(self):
        sigma = Permutation.from_cycles(3, [(1, 2)])
        tau = Permutation.from_cycles(3, [(2, 3)])
        product = sigma * tau
        assert [product(i) for i in range(3)] == [sigma(tau(i)) for i in range(3)]

    def test_inverse(self):
        for pi in all_permutations(4):
            assert (pi * pi.inverse()).is_identity()

    def test_sign_is_a_homomorphism(self):
        perms = list(all_permutations(3))
        for sigma in perms:
            for tau in perms:
                assert (sigma * tau).sign() == sigma.sign() * tau.sign()

    def test_cycle_counts(self):
        assert Permutation.identity(4).num_cycles() == 4
        assert Permutation.from_cycles(4, [(1, 2), (3, 4)]).cycle_type() == Partition((2, 2))

    def test_all_permutations(self):
        assert len(set(all_permutations(4))) == 24

    def test_invalid_images(self):
        with pytest.raises(ArgumentError):
            Permutation((0, 0, 1))
        with pytest.raises(ArgumentError):
            Permutation.from_cycles(3, [(1, 4)])
