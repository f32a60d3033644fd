"""
Complex matrix module.

Double precision counterparts of the exact operators, used by the
sampling and quadrature checks.
"""

import math
from typing import Iterable, Sequence

import numpy

from haarmoments.characters.character_table import character
from haarmoments.combinatorics.partitions import Partition, f_lambda
from haarmoments.combinatorics.permutations import Permutation, all_permutations
from haarmoments.config import current_config
from haarmoments.output.error_handler import ResourceError
from haarmoments.weingarten.exact_operator import permutation_images


def check_matrix_size(size: int) -> None:
    """
    Refuses matrices larger than the configured dense cap.

    :param size: Matrix dimension
    :raises ResourceError: If size exceeds the cap
    """
    cap = current_config().dense_cap
    if size > cap:
        raise ResourceError("dense_cap", size, cap)


def permutation_matrix(pi: Permutation, d: int) -> numpy.ndarray:
    """
    Floating permutation operator P(π) on (C^d)^{⊗k}.

    :param pi: Permutation of k factors
    :param d: Local dimension
    :return: 0/1 complex matrix, the image of the exact twin
    """
    pi = Permutation(pi)
    size = d ** len(pi)
    check_matrix_size(size)
    matrix = numpy.zeros((size, size), dtype=complex)
    images = permutation_images(pi, (d,) * len(pi))
    matrix[images, numpy.arange(size)] = 1
    return matrix


def unitarity_residual(matrix: numpy.ndarray) -> float:
    """
    ‖U†U − 1‖_max, batched over leading axes.

    :param matrix: Square matrix or stack of square matrices
    :return: Largest entrywise deviation
    """
    gram = numpy.conj(numpy.swapaxes(matrix, -1, -2)) @ matrix
    identity = numpy.eye(matrix.shape[-1])
    return float(numpy.max(numpy.abs(gram - identity)))


def kron_power(matrix: numpy.ndarray, k: int) -> numpy.ndarray:
    """
    k-fold Kronecker power V^{⊗k}.

    :param matrix: Square matrix
    :param k: Number of factors, at least 1
    :return: Kronecker power
    """
    check_matrix_size(matrix.shape[0] ** k)
    result = matrix
    for _ in range(k - 1):
        result = numpy.kron(result, matrix)
    return result


def max_abs(matrix: numpy.ndarray) -> float:
    """Entrywise max norm."""
    return float(numpy.max(numpy.abs(matrix))) if matrix.size else 0.0


def central_projector_matrix(lam: Partition, d: int) -> numpy.ndarray:
    """
    Floating C_λ = (f^λ/k!) Σ_π χ_λ(π) P(π) on (C^d)^{⊗k}.

    :param lam: Irrep label
    :param d: Local dimension
    :return: Projector matrix
    """
    lam = Partition(lam)
    k = lam.weight
    size = d ** k
    check_matrix_size(size)
    matrix = numpy.zeros((size, size), dtype=complex)
    for pi in all_permutations(k):
        value = character(lam, pi.cycle_type())
        if value:
            matrix += value * permutation_matrix(pi, d)
    return matrix * f_lambda(lam) / math.factorial(k)


def permute_factors_matrix(
        matrix: numpy.ndarray,
        dims: Sequence[int],
        order: Sequence[int]
) -> numpy.ndarray:
    """
    Reorders tensor factors; factor j of the result is factor order[j]
    of the input.

    :param matrix: Operator on the product of dims
    :param dims: Factor dimensions
    :param order: Permutation of range(len(dims))
    :return: Reordered operator
    """
    n = len(dims)
    tensor = matrix.reshape(tuple(dims) * 2)
    tensor = tensor.transpose(list(order) + [n + axis for axis in order])
    return tensor.reshape(matrix.shape)


def partial_trace_matrix(
        matrix: numpy.ndarray,
        dims: Sequence[int],
        traced: Iterable[int]
) -> numpy.ndarray:
    """
    Traces out the given factors.

    :param matrix: Operator on the product of dims
    :param dims: Factor dimensions
    :param traced: Factors to trace out
    :return: Operator on the remaining factors, order kept
    """
    traced = sorted(set(traced))
    n = len(dims)
    tensor = matrix.reshape(tuple(dims) * 2)
    for removed, axis in enumerate(traced):
        position = axis - removed
        tensor = numpy.trace(tensor, axis1=position, axis2=position + n - removed)
    kept = math.prod(dim for index, dim in enumerate(dims) if index not in traced)
    return tensor.reshape(kept, kept)
