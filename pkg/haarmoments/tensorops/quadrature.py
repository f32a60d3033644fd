"""
Quadrature module.

Weyl integration over U(n) as a quadrature rule on the eigenangle
torus. The uniform product grid with G points per axis integrates every
trigonometric polynomial of per-axis degree below G exactly, and the
integrands here (class functions times the Jacobian) are such
polynomials, so the results are exact up to roundoff.
"""

import itertools
import math
from typing import Callable, Union

import numpy
from loguru import logger

from haarmoments.config import current_config
from haarmoments.output.error_handler import ArgumentError, ResourceError

ClassFn = Callable[[numpy.ndarray], Union[complex, numpy.ndarray]]

BLOCK_POINTS = 1 << 16


def vandermonde_jacobian(theta: numpy.ndarray) -> Union[float, numpy.ndarray]:
    """
    J(θ) = ∏_{i<j} |e^{iθ_i} − e^{iθ_j}|².

    :param theta: Angles on the last axis; leading axes are batch axes
    :return: Non-negative Jacobian, zero iff two angles coincide
    """
    theta = numpy.asarray(theta, dtype=float)
    zeta = numpy.exp(1j * theta)
    n = theta.shape[-1]
    result = numpy.ones(theta.shape[:-1])
    for i, j in itertools.combinations(range(n), 2):
        result = result * numpy.abs(zeta[..., i] - zeta[..., j]) ** 2
    return float(result) if numpy.ndim(result) == 0 else result


def exact_grid_size(f_degree: int, n: int) -> int:
    """
    Smallest grid size exact for f·J when f has per-axis degree f_degree.

    J has per-axis degree n − 1, so f·J has per-axis degree at most
    f_degree + n − 1.

    :param f_degree: Largest |frequency| of f in any single angle
    :param n: Torus dimension
    :return: Grid points per axis
    """
    return f_degree + n


def _check_caps(n: int, points: int) -> None:
    config = current_config()
    if n > config.quadrature_max_n or points > config.quadrature_max_points:
        logger.warning(
            "Refusing quadrature over U({}) with {} points", n, points
        )
        raise ResourceError("quadrature_cap", n, points, config.quadrature_max_points)


def weyl_quadrature(
        class_fn: ClassFn,
        n: int,
        grid_points_per_axis: int,
        phase_invariant: bool = False
) -> complex:
    """
    (1/n!) mean over the angle grid of f(θ)·J(θ), i.e.
    (1/((2π)^n n!)) ∫ f(D(θ)) J(θ) dθ.

    :param class_fn: Vectorized function of angle arrays of shape
        (points, n)
    :param n: Torus dimension, n ≥ 1
    :param grid_points_per_axis: Grid size G ≥ 1
    :param phase_invariant: Whether f is invariant under a global phase;
        the last angle is then fixed to zero, which leaves the value of
        the exact rule unchanged and divides the cost by G
    :return: Quadrature value
    :raises ResourceError: If n or the number of points is over the cap
    """
    if n < 1:
        raise ArgumentError("bad_dimension", "n", 1, n)
    if grid_points_per_axis < 1:
        raise ArgumentError("bad_dimension", "grid", 1, grid_points_per_axis)

    free_axes = n - 1 if phase_invariant else n
    points = grid_points_per_axis ** free_axes
    _check_caps(n, points)

    axis = 2 * numpy.pi * numpy.arange(grid_points_per_axis) / grid_points_per_axis
    total = 0j
    flat = numpy.arange(points)
    for start in range(0, points, BLOCK_POINTS):
        block = flat[start:start + BLOCK_POINTS]
        digits = numpy.stack(
            [(block // grid_points_per_axis ** (free_axes - 1 - a)) % grid_points_per_axis
             for a in range(free_axes)],
            axis=-1
        ) if free_axes else numpy.zeros((len(block), 0), dtype=int)
        theta = axis[digits]
        if phase_invariant:
            theta = numpy.concatenate([theta, numpy.zeros((len(block), 1))], axis=-1)
        values = numpy.asarray(class_fn(theta), dtype=complex) * vandermonde_jacobian(theta)
        total += values.sum()

    result = total / points / math.factorial(n)
    logger.debug("Weyl quadrature over U({}) on {} points: {}", n, points, result)
    return complex(result)


def trace_power_integrand(k: int, power: int) -> ClassFn:
    """
    Class function |Σ_j e^{ikθ_j}|^{2·power} = |Tr U^k|^{2·power}.

    :param k: Power of U
    :param power: Half the moment order
    :return: Vectorized integrand
    """
    def integrand(theta: numpy.ndarray) -> numpy.ndarray:
        return numpy.abs(numpy.exp(1j * k * theta).sum(axis=-1)) ** (2 * power)

    return integrand


def trace_power_quadrature(k: int, power: int, n: int) -> complex:
    """
    ∫ |Tr U^k|^{2·power} dU over U(n) on the smallest exact grid.

    :param k: Power of U
    :param power: Half the moment order
    :param n: Dimension
    :return: Quadrature value
    """
    return weyl_quadrature(
        trace_power_integrand(k, power),
        n,
        exact_grid_size(k * power, n),
        phase_invariant=True
    )
