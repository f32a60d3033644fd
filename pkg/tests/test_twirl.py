from fractions import Fraction

import numpy
import pytest
from sympy import QQ_I

from haarmoments.combinatorics.partitions import Partition, f_lambda, partitions_of, schur_dim
from haarmoments.combinatorics.permutations import Permutation, all_permutations
from haarmoments.config import Config, use_config
from haarmoments.output.error_handler import ArgumentError, ResourceError
from haarmoments.tensorops.complex_matrix import kron_power
from haarmoments.tensorops.sampling import haar_sample
from haarmoments.verify.oracles import gram_projection
from haarmoments.weingarten.exact_operator import ExactOperator, permutation_operator, tensor_power
from haarmoments.weingarten.scalars import gaussian
from haarmoments.weingarten.twirl import (
    audenaert_twirl, central_projector, choi_operator, conditional_expectation,
    sphere_projector_average, twirl_coefficients, twirl_matches_tensor_power, twirl_power,
    vec_moment, vec_moment_by_summation
)

SWAP = Permutation.from_cycles(2, [(1, 2)])


class TestExactOperator:

    def test_not_square(self):
        with pytest.raises(ArgumentError):
            ExactOperator.from_rows([[1, 2], [3]])

    def test_dense_cap(self):
        use_config(Config(dense_cap=16))
        with pytest.raises(ResourceError):
            ExactOperator((32,))

    def test_as_tensor_power(self):
        assert ExactOperator.identity((8,)).as_tensor_power(2).dims == (2, 2, 2)
        with pytest.raises(ArgumentError):
            ExactOperator.identity((8,)).as_tensor_power(3)

    @pytest.mark.parametrize("d", [2, 3])
    def test_permutation_operators_compose(self, d):
        perms = list(all_permutations(3))
        for sigma in perms:
            for tau in perms:
                product = permutation_operator(sigma, d) @ permutation_operator(tau, d)
                assert product == permutation_operator(sigma * tau, d)

    @pytest.mark.parametrize("d", [2, 3])
    def test_permutation_trace_counts_cycles(self, d):
        identity = ExactOperator.identity((d,) * 3)
        for pi in all_permutations(3):
            assert identity.permutation_trace(pi) == gaussian(d ** pi.num_cycles())

    def test_permute_factors(self, make_operator):
        a = make_operator((2,))
        b = make_operator((3,))
        assert a.kron(b).permute_factors((1, 0)) == b.kron(a)

    def test_partial_trace(self, make_operator):
        a = make_operator((2,))
        b = make_operator((3,))
        assert a.kron(b).partial_trace([1]) == a.scale(b.trace())
        assert a.kron(b).partial_trace([0, 1])[0, 0] == a.trace() * b.trace()

    def test_partial_trace_range(self):
        with pytest.raises(ArgumentError):
            ExactOperator.identity((2, 2)).partial_trace([2])

    def test_gaussian_rational_matrix(self, make_operator):
        operator = make_operator((2, 2))
        assert operator.matrix.domain == QQ_I
        assert operator.matrix.rep.fmt == "sparse"
        assert all(QQ_I.of_type(value) for _, _, value in operator.entries())
        difference = operator - operator
        assert difference.is_zero() and difference.nnz() == 0
        assert difference == ExactOperator.zeros((2, 2))

    def test_adjoint_conjugates(self):
        operator = ExactOperator.from_rows([[gaussian(1, 2), 0], [gaussian(0, -1), 3]])
        adjoint = operator.adjoint()
        assert adjoint[0, 0] == gaussian(1, -2)
        assert adjoint[0, 1] == gaussian(0, 1)
        assert adjoint[1, 0] == gaussian(0)
        assert adjoint.adjoint() == operator

    def test_json_form(self):
        operator = ExactOperator.from_rows([[Fraction(1, 2), 0], [0, 1]])
        assert operator.to_json() == [[["1/2", "0"], ["0", "0"]], [["0", "0"], ["1", "0"]]]


class TestConditionalExpectation:

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_single_copy(self, d, make_operator):
        operator = make_operator((d,))
        expected = ExactOperator.identity((d,)).scale(operator.trace() / d)
        assert conditional_expectation(operator) == expected

    @pytest.mark.parametrize("d", [2, 3])
    def test_two_copies(self, d, make_operator):
        operator = make_operator((d, d))
        trace = operator.trace()
        swap_trace = operator.permutation_trace(SWAP)
        c_identity = (trace - swap_trace / d) / (d * d - 1)
        c_swap = (swap_trace - trace / d) / (d * d - 1)
        expected = (
            ExactOperator.identity((d, d)).scale(c_identity)
            + permutation_operator(SWAP, d).scale(c_swap)
        )
        assert conditional_expectation(operator) == expected

    @pytest.mark.parametrize("dims", [(2, 2), (2, 2, 2), (3, 3)])
    def test_idempotent(self, dims, make_operator):
        twirled = conditional_expectation(make_operator(dims))
        assert conditional_expectation(twirled) == twirled

    @pytest.mark.parametrize("dims", [(2, 2), (2, 2, 2), (3, 3)])
    def test_permutation_bimodule(self, dims, make_operator):
        operator = make_operator(dims)
        twirled = conditional_expectation(operator)
        perms = list(all_permutations(len(dims)))
        for sigma, tau in zip(perms, reversed(perms)):
            left = permutation_operator(sigma, dims[0])
            right = permutation_operator(tau, dims[0])
            assert conditional_expectation(left @ operator @ right) == left @ twirled @ right

    @pytest.mark.parametrize("dims", [(2, 2), (2, 2, 2), (3, 3)])
    def test_commutes_with_tensor_powers(self, dims, make_operator, generator):
        twirled = conditional_expectation(make_operator(dims)).to_numpy()
        for _ in range(3):
            power = kron_power(haar_sample(dims[0], generator), len(dims))
            assert numpy.allclose(twirled @ power, power @ twirled)

    def test_trace_is_kept(self, make_operator):
        operator = make_operator((2, 2, 2))
        assert conditional_expectation(operator).trace() == operator.trace()

    @pytest.mark.parametrize("dims", [(2, 2), (3, 3), (2, 2, 2)])
    def test_gram_oracle(self, dims, make_operator):
        operator = make_operator(dims)
        assert gram_projection(operator) == conditional_expectation(operator)

    @pytest.mark.parametrize("dims", [(2, 2), (2, 2, 2)])
    def test_compact_form(self, dims, make_operator):
        operator = make_operator(dims)
        assert audenaert_twirl(operator) == conditional_expectation(operator)

    def test_mixed_dimensions(self):
        with pytest.raises(ArgumentError):
            conditional_expectation(ExactOperator.identity((2, 3)))


class TestCentralProjectors:

    @pytest.mark.parametrize("k, d", [(2, 2), (3, 2), (3, 3), (4, 2)])
    def test_resolution_of_identity(self, k, d):
        total = ExactOperator((d,) * k)
        for lam in partitions_of(k):
            total = total + central_projector(lam, d)
        assert total == ExactOperator.identity((d,) * k)

    @pytest.mark.parametrize("lam", partitions_of(3))
    def test_idempotent_with_known_trace(self, lam):
        projector = central_projector(lam, 2)
        assert projector @ projector == projector
        assert projector.trace() == gaussian(f_lambda(lam) * schur_dim(lam, 2))

    def test_too_many_rows(self):
        assert central_projector(Partition((1, 1, 1)), 2).is_zero()

    def test_orthogonal(self):
        product = central_projector(Partition((2, 1)), 2) @ central_projector(Partition((3,)), 2)
        assert product.is_zero()


class TestTwirlPower:

    def test_two_copies_by_schur_functions(self):
        coefficients = twirl_coefficients(ExactOperator.diagonal([1, 2, 3]), 2)
        # h_2 and e_2 of (1, 2, 3) over the dimensions 6 and 3
        assert coefficients[Partition((2,))] == gaussian(Fraction(25, 6))
        assert coefficients[Partition((1, 1))] == gaussian(Fraction(11, 3))

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_matches_tensor_power(self, k, make_operator):
        assert twirl_matches_tensor_power(make_operator((2,)), k)

    def test_matches_tensor_power_at_d3(self, make_operator):
        operator = make_operator((3,))
        expected = conditional_expectation(tensor_power(operator, 2).with_dims((3, 3)))
        assert twirl_power(operator, 2).operator == expected

    def test_identity(self):
        result = twirl_power(ExactOperator.identity((3,)), 3)
        assert all(value == gaussian(1) for value in result.coefficients.values())
        assert result.operator == ExactOperator.identity((3, 3, 3))

    def test_only_short_labels(self):
        assert set(twirl_coefficients(ExactOperator.identity((2,)), 3)) == {
            Partition((3,)), Partition((2, 1))
        }

    def test_k_must_be_positive(self):
        with pytest.raises(ArgumentError):
            twirl_power(ExactOperator.identity((2,)), 0)

    def test_json_form(self):
        payload = twirl_power(ExactOperator.diagonal([1, 0]), 2).to_json()
        assert payload["k"] == 2 and payload["d"] == 2
        assert payload["coefficients"] == {"(2)": "1/3", "(1,1)": "0"}


class TestSphereAndVecMoments:

    @pytest.mark.parametrize("k, d", [(1, 2), (2, 2), (2, 3), (3, 2)])
    def test_sphere_average_is_a_state(self, k, d):
        average = sphere_projector_average(k, d)
        assert average.trace() == gaussian(1)
        assert average == central_projector(Partition((k,)), d).scale(average[0, 0])

    def test_sphere_single_copy(self):
        assert sphere_projector_average(1, 3) == ExactOperator.identity((3,)).scale(Fraction(1, 3))

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_vec_moment_single_copy(self, d):
        assert vec_moment(1, d) == ExactOperator.identity((d, d)).scale(Fraction(1, d))

    @pytest.mark.parametrize("k, d", [(1, 2), (2, 2), (2, 3), (3, 2)])
    def test_vec_moment_trace(self, k, d):
        assert vec_moment(k, d).trace() == gaussian(d ** k)

    @pytest.mark.parametrize("k, d", [(2, 2), (2, 3), (3, 2)])
    def test_vec_moment_by_summation(self, k, d):
        assert vec_moment(k, d) == vec_moment_by_summation(k, d)

    @pytest.mark.parametrize("k, d", [(1, 3), (2, 2)])
    def test_vec_moment_is_choi_form_of_twirl(self, k, d):
        assert choi_operator(conditional_expectation, (d,) * k) == vec_moment(k, d)

    def test_vec_moment_cap(self):
        use_config(Config(dense_cap=16))
        with pytest.raises(ResourceError):
            vec_moment(2, 3)
