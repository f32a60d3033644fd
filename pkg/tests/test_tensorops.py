import numpy
import pytest
from numpy.testing import assert_allclose

from haarmoments.combinatorics.partitions import Partition, partitions_of
from haarmoments.combinatorics.permutations import all_permutations
from haarmoments.config import Config, use_config
from haarmoments.output.error_handler import ArgumentError, ResourceError
from haarmoments.tensorops.complex_matrix import (
    central_projector_matrix, kron_power, partial_trace_matrix, permutation_matrix,
    permute_factors_matrix, unitarity_residual
)
from haarmoments.tensorops.quadrature import (
    exact_grid_size, trace_power_quadrature, vandermonde_jacobian, weyl_quadrature
)
from haarmoments.tensorops.sampling import (
    MonteCarloEstimate, RngStream, haar_batch, haar_sample, haar_state, mc_moment
)
from haarmoments.weingarten.exact_operator import permutation_operator
from haarmoments.weingarten.moments import closed_moment_tr4
from haarmoments.weingarten.twirl import central_projector


def squared_trace(unitary: numpy.ndarray) -> float:
    return abs(numpy.trace(unitary)) ** 2


class TestSampling:

    @pytest.mark.parametrize("d", [1, 2, 5])
    def test_unitary(self, d):
        assert unitarity_residual(haar_sample(d, RngStream(7))) < 1e-10

    def test_batch(self, generator):
        batch = haar_batch(3, 5, generator)
        assert batch.shape == (5, 3, 3)
        assert unitarity_residual(batch) < 1e-10

    def test_streams_are_reproducible(self):
        assert_allclose(haar_sample(3, RngStream(7, 2)), haar_sample(3, RngStream(7, 2)))
        assert not numpy.allclose(haar_sample(3, RngStream(7, 2)), haar_sample(3, RngStream(7, 3)))
        assert not numpy.allclose(
            haar_sample(3, RngStream(7, 2).child(0)), haar_sample(3, RngStream(7, 2).child(1))
        )

    def test_states(self, generator):
        states = haar_state(4, generator, 10)
        assert states.shape == (10, 4)
        assert_allclose(numpy.linalg.norm(states, axis=-1), numpy.ones(10))
        assert haar_state(4, generator).shape == (4,)

    def test_bad_dimension(self, generator):
        with pytest.raises(ArgumentError):
            haar_sample(0, generator)


class TestMonteCarlo:

    def test_second_moment(self):
        estimate = mc_moment(squared_trace, 3, 20000, RngStream(11))
        assert estimate.n_samples == 20000
        assert estimate.z_score(1) < 5

    def test_independent_of_worker_count(self):
        first = mc_moment(squared_trace, 2, 3000, RngStream(5))
        use_config(Config(mc_workers=1))
        second = mc_moment(squared_trace, 2, 3000, RngStream(5))
        assert first.estimate == second.estimate
        assert first.stderr == second.stderr

    def test_matrix_observable(self):
        estimate = mc_moment(lambda unitary: unitary, 2, 4000, RngStream(3))
        assert estimate.estimate.shape == (2, 2)
        assert estimate.z_score(numpy.zeros((2, 2))) < 5

    def test_too_few_samples(self):
        with pytest.raises(ArgumentError):
            mc_moment(squared_trace, 2, 1, RngStream(1))

    def test_z_score(self):
        assert MonteCarloEstimate(1 + 0j, 0.5, 10).z_score(2) == 2
        assert MonteCarloEstimate(1 + 0j, 0.0, 10).z_score(1) == 0
        assert MonteCarloEstimate(1 + 0j, 0.0, 10).z_score(2) == numpy.inf


class TestQuadrature:

    def test_jacobian(self):
        assert vandermonde_jacobian(numpy.array([0, numpy.pi])) == pytest.approx(4)
        assert vandermonde_jacobian(numpy.array([1.0, 1.0, 2.0])) == pytest.approx(0)
        assert vandermonde_jacobian(numpy.zeros((6, 3))).shape == (6,)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_normalization(self, n):
        def constant(theta):
            return numpy.ones(theta.shape[:-1])

        assert weyl_quadrature(constant, n, exact_grid_size(0, n)) == pytest.approx(1, abs=1e-10)
        assert weyl_quadrature(constant, n, exact_grid_size(0, n) + 3, phase_invariant=True) == \
            pytest.approx(1, abs=1e-10)

    def test_grid_size(self):
        assert exact_grid_size(4, 3) == 7

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_second_moment(self, k, n):
        assert trace_power_quadrature(k, 1, n) == pytest.approx(min(k, n), abs=1e-10)

    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("n", [2, 3])
    def test_fourth_moment(self, k, n):
        assert trace_power_quadrature(k, 2, n) == pytest.approx(closed_moment_tr4(k, n), abs=1e-8)

    def test_caps(self):
        use_config(Config(quadrature_max_n=3))
        with pytest.raises(ResourceError):
            trace_power_quadrature(1, 1, 4)
        use_config(Config(quadrature_max_points=10))
        with pytest.raises(ResourceError):
            weyl_quadrature(lambda theta: numpy.ones(theta.shape[:-1]), 2, 4)


class TestComplexMatrix:

    @pytest.mark.parametrize("d", [2, 3])
    def test_permutation_matrix(self, d):
        for pi in all_permutations(3):
            assert_allclose(permutation_matrix(pi, d), permutation_operator(pi, d).to_numpy())

    @pytest.mark.parametrize("lam", partitions_of(3))
    def test_central_projector(self, lam):
        assert_allclose(central_projector_matrix(lam, 2), central_projector(lam, 2).to_numpy(), atol=1e-12)

    def test_permute_and_trace(self, make_operator):
        exact = make_operator((2, 3, 2))
        matrix = exact.to_numpy()
        assert_allclose(
            permute_factors_matrix(matrix, (2, 3, 2), (2, 0, 1)),
            exact.permute_factors((2, 0, 1)).to_numpy()
        )
        assert_allclose(partial_trace_matrix(matrix, (2, 3, 2), [1]), exact.partial_trace([1]).to_numpy())
        assert_allclose(partial_trace_matrix(matrix, (2, 3, 2), [0, 2]), exact.partial_trace([0, 2]).to_numpy())

    def test_kron_power(self):
        identity = numpy.eye(2)
        assert_allclose(kron_power(identity, 3), numpy.eye(8))
        use_config(Config(dense_cap=16))
        with pytest.raises(ResourceError):
            kron_power(identity, 5)

    def test_projector_is_hermitian(self):
        projector = central_projector_matrix(Partition((2, 1)), 3)
        assert_allclose(projector, projector.conj().T, atol=1e-12)
        assert_allclose(projector @ projector, projector, atol=1e-12)
