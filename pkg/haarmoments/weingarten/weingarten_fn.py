"""
Weingarten function module.

The Weingarten class function and the Haar integrals of monomials and
trace products built on it.
"""

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from loguru import logger

from haarmoments.characters.character_table import character
from haarmoments.characters.class_function import ClassFunction
from haarmoments.combinatorics.partitions import (
    Partition, f_lambda, partitions_of, schur_dim, z_gamma
)
from haarmoments.combinatorics.permutations import Permutation, all_permutations
from haarmoments.output.error_handler import ArgumentError
from haarmoments.utils.obj_utils import enforce_param_types


def _check_dimension(d: int) -> None:
    if d < 1:
        raise ArgumentError("bad_dimension", "d", 1, d)


@lru_cache(maxsize=256)
def _weingarten_values(k: int, d: int) -> Tuple[Tuple[Partition, Fraction], ...]:
    scale = Fraction(1, math.factorial(k) ** 2)
    irreps = partitions_of(k, d)
    values = []
    for gamma in partitions_of(k):
        total = sum(
            (
                Fraction(f_lambda(lam) ** 2 * character(lam, gamma), schur_dim(lam, d))
                for lam in irreps
            ),
            Fraction(0)
        )
        values.append((gamma, scale * total))
    logger.debug("Computed Weingarten function for k = {}, d = {}", k, d)
    return tuple(values)


@enforce_param_types
def weingarten_fn(k: int, d: int) -> ClassFunction:
    """
    Weingarten function Wg = (1/k!²) Σ_{λ⊢(k,d)} (f^λ)²/s_λ(1^d) χ_λ.

    For d < k the sum only runs over λ with at most d rows, which gives
    the pseudo-inverse of the Gram element on its support.

    :param k: Degree, k ≥ 0
    :param d: Dimension, d ≥ 1
    :return: Exact class function on S_k
    """
    _check_dimension(d)
    if k < 0:
        raise ArgumentError("negative_weight", k)
    return ClassFunction(k, dict(_weingarten_values(k, d)))


def weingarten_at(pi: Permutation, d: int) -> Fraction:
    """
    Weingarten function at a single permutation.

    :param pi: Permutation of k points
    :param d: Dimension
    :return: Wg(π)
    """
    pi = Permutation(pi)
    return dict(_weingarten_values(len(pi), d))[pi.cycle_type()]


def _matchings(source: Sequence[int], target: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """
    Permutations σ (0-based images) with source[a] == target[σ(a)].
    """
    k = len(source)
    used = [False] * k
    images = [0] * k

    def extend(position: int) -> Iterator[Tuple[int, ...]]:
        if position == k:
            yield tuple(images)
            return
        for candidate in range(k):
            if not used[candidate] and target[candidate] == source[position]:
                used[candidate] = True
                images[position] = candidate
                yield from extend(position + 1)
                used[candidate] = False

    yield from extend(0)


def _check_indices(tuples: Sequence[Sequence[int]], d: int) -> None:
    for indices in tuples:
        for index in indices:
            if not 1 <= index <= d:
                raise ArgumentError("index_out_of_range", index, d)


def monomial_integral(
        rows: Sequence[int],
        cols: Sequence[int],
        rows2: Sequence[int],
        cols2: Sequence[int],
        d: int
) -> Fraction:
    """
    Haar integral ∫ U_{i_1j_1}…U_{i_kj_k} conj(U_{i'_1j'_1}…U_{i'_lj'_l}) dU.

    Evaluated as Σ_{σ,τ} Wg(στ⁻¹) ∏_a δ(i_a, i'_{σ(a)}) δ(j_a, j'_{τ(a)}).

    :param rows: Row indices I of the U factors, 1-based
    :param cols: Column indices J of the U factors, 1-based
    :param rows2: Row indices I' of the conjugated factors
    :param cols2: Column indices J' of the conjugated factors
    :param d: Dimension
    :return: Exact value; zero for unbalanced degrees or mismatched
        index multisets
    :raises ArgumentError: On out of range indices or when I, J (or
        I', J') differ in length
    """
    _check_dimension(d)
    if len(rows) != len(cols) or len(rows2) != len(cols2):
        raise ArgumentError(
            "tuple_length",
            ", ".join(str(len(t)) for t in (rows, cols, rows2, cols2))
        )
    _check_indices((rows, cols, rows2, cols2), d)
    if len(rows) != len(rows2):
        return Fraction(0)
    if sorted(rows) != sorted(rows2) or sorted(cols) != sorted(cols2):
        return Fraction(0)

    k = len(rows)
    wg = dict(_weingarten_values(k, d))
    sigmas = [Permutation(images) for images in _matchings(rows, rows2)]
    taus = [Permutation(images).inverse() for images in _matchings(cols, cols2)]

    total = Fraction(0)
    for sigma in sigmas:
        for tau_inverse in taus:
            total += wg[(sigma * tau_inverse).cycle_type()]
    return total


def _canonical_cycle_permutation(gamma: Partition) -> Permutation:
    """Permutation whose cycles are consecutive blocks of lengths γ."""
    cycles = []
    start = 1
    for part in gamma:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(gamma.weight, cycles)


def _conjugacy_class(gamma: Partition) -> List[Permutation]:
    return [pi for pi in all_permutations(gamma.weight) if pi.cycle_type() == gamma]


def weingarten_trace_moment(mu: Partition, nu: Partition, d: int) -> Fraction:
    """
    Haar integral ∫ p_μ(U) conj(p_ν(U)) dU by Weingarten index
    summation, where p_μ(U) = ∏_j Tr U^{μ_j}.

    Summing the monomial formula over all indices leaves
    Σ_{σ,τ} Wg(στ⁻¹) d^{#cycles(σ c_μ τ⁻¹ c_ν⁻¹)}; the sum over τ only
    sees the conjugacy class of c_μ, each element z_μ times.

    :param mu: Power pattern of U
    :param nu: Power pattern of conj(U)
    :param d: Dimension
    :return: Exact value
    """
    _check_dimension(d)
    mu, nu = Partition(mu), Partition(nu)
    if mu.weight != nu.weight:
        return Fraction(0)

    n = mu.weight
    wg = dict(_weingarten_values(n, d))
    c_nu_inverse = _canonical_cycle_permutation(nu).inverse()
    conjugates = _conjugacy_class(mu)

    total = Fraction(0)
    for rho in all_permutations(n):
        weight = wg[rho.cycle_type()]
        if not weight:
            continue
        count = sum(d ** (rho * x * c_nu_inverse).num_cycles() for x in conjugates)
        total += weight * count
    return total * z_gamma(mu)


def character_trace_moment(mu: Partition, nu: Partition, d: int) -> int:
    """
    Haar integral ∫ p_μ(U) conj(p_ν(U)) dU by character orthogonality,
    Σ_{λ⊢(n,d)} χ_λ(μ) χ_λ(ν).

    :param mu: Power pattern of U
    :param nu: Power pattern of conj(U)
    :param d: Dimension
    :return: Exact integer value
    """
    _check_dimension(d)
    mu, nu = Partition(mu), Partition(nu)
    if mu.weight != nu.weight:
        return 0
    return sum(
        character(lam, mu) * character(lam, nu)
        for lam in partitions_of(mu.weight, d)
    )


def trace_power_moment(k: int, n: int, d: int) -> int:
    """
    ∫ |Tr U^k|^{2n} dU over U(d), exact for every k, n and d.

    :param k: Power of U, k ≥ 1
    :param n: Half the moment order, n ≥ 0
    :param d: Dimension
    :return: Σ_{λ⊢(kn,d)} χ_λ((k^n))²
    """
    if k < 1:
        raise ArgumentError("bad_dimension", "k", 1, k)
    if n < 0:
        raise ArgumentError("negative_weight", n)
    gamma = Partition((k,) * n)
    return character_trace_moment(gamma, gamma, d)


def weingarten_table(k: int, d: int) -> Dict[Permutation, Fraction]:
    """
    Wg spread over every permutation of S_k.

    :param k: Degree
    :param d: Dimension
    :return: Permutations mapped to Wg(π)
    """
    wg = weingarten_fn(k, d)
    return {pi: wg[pi.cycle_type()] for pi in all_permutations(k)}
