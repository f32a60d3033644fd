"""
Monte Carlo identities module.

Each routine estimates an average over Haar random unitaries or states
and returns it with the exact value it should match.
"""

from fractions import Fraction
from typing import Tuple, Union

import numpy

from haarmoments.tensorops.sampling import MonteCarloEstimate, RngStream, haar_sample, haar_state, mc_moment
from haarmoments.verify.registry import mc_identity
from haarmoments.weingarten.exact_operator import ExactOperator
from haarmoments.weingarten.moments import (
    average_purity, closed_moment_tr2, closed_moment_tr4, conjugate_pair_average,
    sphere_moment2, swap_average, uk_twirl, visibility_moments
)
from haarmoments.weingarten.scalars import real_value

McResult = Tuple[Union[Fraction, ExactOperator], MonteCarloEstimate]


def state_sampler(d: int, size: int, generator: numpy.random.Generator) -> numpy.ndarray:
    return haar_state(d, generator, size)


@mc_identity("tr2", "E|Tr U^k|^2 = min(k, d)", d=2, k=3)
def mc_tr2(k: int, d: int, n_samples: int, rng: RngStream) -> McResult:
    def observable(unitary: numpy.ndarray) -> float:
        return abs(numpy.trace(numpy.linalg.matrix_power(unitary, k))) ** 2

    return Fraction(closed_moment_tr2(k, d)), mc_moment(observable, d, n_samples, rng)


@mc_identity("tr4", "E|Tr U^k|^4 against the piecewise closed form", d=3, k=2, d_range=(2, 8))
def mc_tr4(k: int, d: int, n_samples: int, rng: RngStream) -> McResult:
    def observable(unitary: numpy.ndarray) -> float:
        return abs(numpy.trace(numpy.linalg.matrix_power(unitary, k))) ** 4

    return Fraction(closed_moment_tr4(k, d)), mc_moment(observable, d, n_samples, rng)


@mc_identity("swap", "E[U x U^dagger] = F/d", d=3)
def mc_swap(k: int, d: int, n_samples: int, rng: RngStream) -> McResult:
    def observable(unitary: numpy.ndarray) -> numpy.ndarray:
        return numpy.kron(unitary, unitary.conj().T)

    return swap_average(d), mc_moment(observable, d, n_samples, rng)


@mc_identity("uu_bar", "E[U x conj(U)] = |Omega><Omega|", d=3)
def mc_uu_bar(k: int, d: int, n_samples: int, rng: RngStream) -> McResult:
    def observable(unitary: numpy.ndarray) -> numpy.ndarray:
        return numpy.kron(unitary, unitary.conj())

    return conjugate_pair_average(d), mc_moment(observable, d, n_samples, rng)


@mc_identity(
    "purity", "E Tr(rho_A^2) = (dA + dB)/(dA dB + 1) with dA = dB = d", d=2, d_range=(1, 6), samples=200000
)
def mc_purity(k: int, d: int, n_samples: int, rng: RngStream) -> McResult:
    def observable(state: numpy.ndarray) -> float:
        coefficients = state.reshape(d, d)
        reduced = coefficients @ coefficients.conj().T
        return float(numpy.real(numpy.trace(reduced @ reduced)))

    estimate = mc_moment(observable, d * d, n_samples, rng, sampler=state_sampler)
    return average_purity(d, d), estimate


@mc_identity("visibility2", "E|Tr(AU)|^2 = Tr(A^dagger A)/d for A = 1", d=4)
def mc_visibility2(k: int, d: int, n_samples: int, rng: RngStream) -> McResult:
    def observable(unitary: numpy.ndarray) -> float:
        return abs(numpy.trace(unitary)) ** 2

    return visibility_moments(ExactOperator.identity((d,)), 2), mc_moment(observable, d, n_samples, rng)


@mc_identity("haar_mean", "E[U] = 0", d=3)
def mc_haar_mean(k: int, d: int, n_samples: int, rng: RngStream) -> McResult:
    return ExactOperator.zeros((d,)), mc_moment(lambda unitary: unitary, d, n_samples, rng)


@mc_identity("uk_twirl", "E[U^k A U^-k] for A = |0><0|", d=2, k=3, d_range=(2, 8))
def mc_uk_twirl(k: int, d: int, n_samples: int, rng: RngStream) -> McResult:
    projector = ExactOperator.basis_projector((0,), (d,))
    dense = projector.to_numpy()

    def observable(unitary: numpy.ndarray) -> numpy.ndarray:
        power = numpy.linalg.matrix_power(unitary, k)
        return power @ dense @ power.conj().T

    return uk_twirl(projector, k), mc_moment(observable, d, n_samples, rng)


@mc_identity("sphere_moment2", "E|<0|psi>|^4 = 2/(d(d+1))", d=2)
def mc_sphere_moment2(k: int, d: int, n_samples: int, rng: RngStream) -> McResult:
    def observable(state: numpy.ndarray) -> float:
        return abs(state[0]) ** 4

    projector = ExactOperator.basis_projector((0,), (d,))
    exact = real_value(sphere_moment2(projector, projector), "sphere moment")
    return exact, mc_moment(observable, d, n_samples, rng, sampler=state_sampler)


@mc_identity("left_invariance", "E|Tr(VU)|^2 = 1 for a fixed unitary V", d=3)
def mc_left_invariance(k: int, d: int, n_samples: int, rng: RngStream) -> McResult:
    fixed = haar_sample(d, rng.child(1))

    def observable(unitary: numpy.ndarray) -> float:
        return abs(numpy.trace(fixed @ unitary)) ** 2

    return Fraction(1), mc_moment(observable, d, n_samples, rng.child(0))
