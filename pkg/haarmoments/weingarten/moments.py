"""
Closed form moments module.

Haar averages with known closed forms: trace moments, U^k twirls,
visibility moments, invariant superoperators, purity and sphere
averages, Fourier pair integrals and partial traces of isotypic
projectors.
"""

import math
from fractions import Fraction
from numbers import Rational
from typing import Callable, Dict, Mapping, Sequence, Tuple

from loguru import logger

from haarmoments.combinatorics.partitions import (
    Partition, f_lambda, partitions_of, schur_dim
)
from haarmoments.output.error_handler import ArgumentError, ConsistencyError
from haarmoments.symfunc.symmetric_functions import kronecker
from haarmoments.utils.obj_utils import enforce_param_types
from haarmoments.weingarten.exact_operator import ExactOperator, tuple_to_index
from haarmoments.weingarten.scalars import (
    ONE, ZERO, GaussianRational, ScalarLike, gaussian, real_value
)
from haarmoments.weingarten.twirl import central_projector

SuperOperator = Callable[[ExactOperator], ExactOperator]


def _check_dimension(name: str, value: int, minimum: int) -> None:
    if value < minimum:
        raise ArgumentError("bad_dimension", name, minimum, value)


@enforce_param_types
def closed_moment_tr2(k: int, d: int) -> int:
    """
    ∫ |Tr U^k|² dU = min(k, d).

    :param k: Power, k ≥ 1
    :param d: Dimension, d ≥ 1
    :return: min(k, d)
    """
    _check_dimension("k", k, 1)
    _check_dimension("d", d, 1)
    return min(k, d)


@enforce_param_types
def closed_moment_tr4(k: int, d: int) -> int:
    """
    ∫ |Tr U^k|⁴ dU.

    Branches are tried in the order k ≥ d, then d ≤ 2k, then 2k < d.
    The middle branch is 2k² − 2k + d, the value character
    orthogonality gives; both it and 2k² agree at 2k = d.

    :param k: Power, k ≥ 1
    :param d: Dimension, d ≥ 2
    :return: Exact fourth moment
    """
    _check_dimension("k", k, 1)
    _check_dimension("d", d, 2)
    if k >= d:
        return d * (2 * d - 1)
    if d <= 2 * k:
        return 2 * k * k - 2 * k + d
    return 2 * k * k


def _unitary_pair_coefficients(m: int, d: int) -> Tuple[Fraction, Fraction]:
    """(m − 1)/(d² − 1) and (d² − m)/(d(d² − 1))."""
    return Fraction(m - 1, d * d - 1), Fraction(d * d - m, d * (d * d - 1))


@enforce_param_types
def uk_twirl(operator: ExactOperator, k: int) -> ExactOperator:
    """
    ∫ U^k A (U^k)† dU = [(m−1)/(d²−1)] A + [(d²−m)/(d(d²−1))] Tr A · 1
    with m = min(|k|, d).

    :param operator: Operator A on C^d
    :param k: Power of U; k = 0 returns A
    :return: Exact average
    """
    d = operator.size
    _check_dimension("d", d, 2)
    if k == 0:
        return operator
    first, second = _unitary_pair_coefficients(min(abs(k), d), d)
    return operator.scale(first) + ExactOperator.identity(operator.dims).scale(
        operator.trace() * gaussian(second)
    )


@enforce_param_types
def visibility_moments(operator: ExactOperator, order: int) -> Fraction:
    """
    ∫ |Tr(AU)|^order dU for order 2 or 4.

    :param operator: Operator A on C^d
    :param order: 2 or 4
    :return: Tr(A†A)/d for order 2; (2/(d²−1))[Tr A†A]² −
        (2/(d(d²−1))) Tr((A†A)²) for order 4
    :raises ArgumentError: For other orders, or order 4 with d < 2
    """
    d = operator.size
    gram = operator.adjoint() @ operator
    gram_trace = real_value(gram.trace(), "Tr(A^dagger A)")
    if order == 2:
        return gram_trace / d
    if order == 4:
        _check_dimension("d", d, 2)
        square_trace = real_value(gram.trace_product(gram), "Tr((A^dagger A)^2)")
        return (
            Fraction(2, d * d - 1) * gram_trace ** 2
            - Fraction(2, d * (d * d - 1)) * square_trace
        )
    raise ArgumentError("unsupported_order", order)


def visibility_moment_multipartite(operator: ExactOperator, dims: Sequence[int]) -> Fraction:
    """
    ∫…∫ |Tr(A(U_1 ⊗ … ⊗ U_n))|² dU_1…dU_n = Tr(A†A)/∏ d_i.

    :param operator: Operator on C^{d_1} ⊗ … ⊗ C^{d_n}
    :param dims: Local dimensions
    :return: Exact second moment
    """
    if math.prod(dims) != operator.size:
        raise ArgumentError("dimension_mismatch", tuple(dims), operator.dims)
    gram_trace = operator.adjoint().trace_product(operator)
    return real_value(gram_trace, "Tr(A^dagger A)") / math.prod(dims)


def superop_twirl_coeffs(
        trace_phi: Fraction,
        trace_phi_of_identity: Fraction,
        d: int
) -> Tuple[Fraction, Fraction]:
    """
    Coefficients of a unitarily invariant superoperator
    Φ(X) = c_tr Tr(X) 1 + c_id X.

    :param trace_phi: Tr Φ as a superoperator
    :param trace_phi_of_identity: Tr Φ(1)
    :param d: Dimension, d ≥ 2
    :return: (c_tr, c_id)
    """
    _check_dimension("d", d, 2)
    denominator = d * (d * d - 1)
    return (
        (d * Fraction(trace_phi_of_identity) - Fraction(trace_phi)) / denominator,
        (d * Fraction(trace_phi) - Fraction(trace_phi_of_identity)) / denominator,
    )


def depolarizing_parameter(trace_phi: Fraction, d: int) -> Fraction:
    """
    p = (Tr Φ − 1)/(d² − 1) of a trace preserving invariant channel
    Φ(X) = p X + (1 − p) Tr(X) 1/d.

    :param trace_phi: Tr Φ
    :param d: Dimension, d ≥ 2
    :return: Depolarizing parameter
    """
    _check_dimension("d", d, 2)
    return (Fraction(trace_phi) - 1) / (d * d - 1)


def superop_trace(phi: SuperOperator, d: int) -> GaussianRational:
    """
    Tr Φ = Σ_{i,j} ⟨i|Φ(|i⟩⟨j|)|j⟩.

    :param phi: Linear map on d × d operators
    :param d: Dimension
    :return: Exact trace of Φ
    """
    total = ZERO
    for i in range(d):
        for j in range(d):
            total = total + phi(ExactOperator.outer({i: 1}, {j: 1}, (d,)))[i, j]
    return total


def superop_trace_of_identity(phi: SuperOperator, d: int) -> GaussianRational:
    """
    Tr Φ(1).

    :param phi: Linear map on d × d operators
    :param d: Dimension
    :return: Exact trace
    """
    return phi(ExactOperator.identity((d,))).trace()


def twirl_superoperator(phi: SuperOperator, d: int) -> SuperOperator:
    """
    ∫ U† Φ(U X U†) U dU, which only depends on Tr Φ and Tr Φ(1).

    :param phi: Linear map on d × d operators
    :param d: Dimension, d ≥ 2
    :return: The twirled, unitarily invariant map
    """
    trace_phi = real_value(superop_trace(phi, d), "Tr Phi")
    trace_identity = real_value(superop_trace_of_identity(phi, d), "Tr Phi(1)")
    c_tr, c_id = superop_twirl_coeffs(trace_phi, trace_identity, d)
    logger.debug("Twirled superoperator: c_tr = {}, c_id = {}", c_tr, c_id)

    def twirled(operator: ExactOperator) -> ExactOperator:
        return operator.scale(c_id) + ExactOperator.identity(operator.dims).scale(
            operator.trace() * gaussian(c_tr)
        )

    return twirled


@enforce_param_types
def average_purity(dA: int, dB: int, purity: Rational = Fraction(1)) -> Fraction:
    """
    Average purity Tr(ρ'_A²) of the reduced state of ρ' = UρU†, U Haar
    on C^{d_A} ⊗ C^{d_B}.

    :param dA: Dimension of the kept system
    :param dB: Dimension of the traced system
    :param purity: Tr(ρ²) of the global state, 1 for pure states
    :return: (d d_B − d_A)/(d² − 1) + (d d_A − d_B)/(d² − 1) Tr ρ²
    """
    _check_dimension("dA", dA, 1)
    _check_dimension("dB", dB, 1)
    d = dA * dB
    if d == 1:
        return Fraction(1)
    return (
        Fraction(d * dB - dA, d * d - 1)
        + Fraction(d * dA - dB, d * d - 1) * Fraction(purity)
    )


def sphere_moment2(first: ExactOperator, second: ExactOperator) -> GaussianRational:
    """
    ∫ ⟨ψ|X|ψ⟩⟨ψ|Y|ψ⟩ dψ = (Tr XY + Tr X Tr Y)/(d(d+1)).

    :param first: Operator X on C^d
    :param second: Operator Y on C^d
    :return: Exact average, real for Hermitian X and Y
    """
    if first.size != second.size:
        raise ArgumentError("dimension_mismatch", first.dims, second.dims)
    d = first.size
    return (
        first.trace_product(second) + first.trace() * second.trace()
    ) / (d * (d + 1))


def sphere_moment2_superop(
        trace_phi_of_identity: Fraction,
        trace_phi: Fraction,
        d: int
) -> Fraction:
    """
    ∫ ⟨ψ|Φ(|ψ⟩⟨ψ|)|ψ⟩ dψ = (Tr Φ(1) + Tr Φ)/(d(d+1)).

    :param trace_phi_of_identity: Tr Φ(1)
    :param trace_phi: Tr Φ
    :param d: Dimension
    :return: Exact average
    """
    return (Fraction(trace_phi_of_identity) + Fraction(trace_phi)) / (d * (d + 1))


def swap_operator(d: int) -> ExactOperator:
    """Swap F|ij⟩ = |ji⟩ on C^d ⊗ C^d."""
    return ExactOperator.from_dod((d, d), {
        tuple_to_index((j, i), (d, d)): {tuple_to_index((i, j), (d, d)): ONE}
        for i in range(d) for j in range(d)
    })


def swap_average(d: int) -> ExactOperator:
    """∫ U ⊗ U† dU = F/d."""
    _check_dimension("d", d, 1)
    return swap_operator(d).scale(Fraction(1, d))


def conjugate_pair_average(d: int) -> ExactOperator:
    """∫ U ⊗ conj(U) dU = |vec 1⟩⟨vec 1|/d."""
    _check_dimension("d", d, 1)
    vec_identity = {tuple_to_index((i, i), (d, d)): 1 for i in range(d)}
    return ExactOperator.outer(vec_identity, vec_identity, (d, d)).scale(Fraction(1, d))


def power_pair_average(k: int, d: int) -> ExactOperator:
    """
    M_k = ∫ U^k ⊗ U^{−k} dU = [(m−1)/(d²−1)] 1 + [(d²−m)/(d(d²−1))] F
    with m = min(|k|, d); M_0 = 1 ⊗ 1.

    :param k: Power
    :param d: Dimension
    :return: Exact operator on C^d ⊗ C^d with trace m (d² for k = 0)
    """
    _check_dimension("d", d, 1)
    identity = ExactOperator.identity((d, d))
    if k == 0 or d == 1:
        return identity
    first, second = _unitary_pair_coefficients(min(abs(k), d), d)
    return identity.scale(first) + swap_operator(d).scale(second)


def fourier_pair_integral(
        fhat: Mapping[int, ScalarLike],
        ghat: Mapping[int, ScalarLike],
        d: int
) -> ExactOperator:
    """
    ∫ f(U) ⊗ g(U) dU = Σ_k f̂(k) ĝ(−k) M_k for f(U) = Σ_k f̂(k) U^k and
    g(U) = Σ_k ĝ(k) U^k.

    :param fhat: Fourier coefficients of f, finite support
    :param ghat: Fourier coefficients of g, finite support
    :param d: Dimension
    :return: Exact operator on C^d ⊗ C^d
    """
    result = ExactOperator((d, d))
    for k, f_value in fhat.items():
        g_value = ghat.get(-k)
        if g_value is None:
            continue
        weight = gaussian(f_value) * gaussian(g_value)
        if weight:
            result = result + power_pair_average(k, d).scale(weight)
    return result


def _check_same_weight(*partitions: Partition) -> None:
    if len({p.weight for p in partitions}) != 1:
        raise ArgumentError(
            "weight_mismatch",
            partitions[0].label(),
            ", ".join(p.label() for p in partitions[1:])
        )


def partial_trace_projector(
        lam: Partition,
        mu: Partition,
        nu: Partition,
        dA: int,
        dB: int
) -> Fraction:
    """
    Coefficient c in Tr_B[C^{AB}_λ (C^A_μ ⊗ C^B_ν)] = c C^A_μ,
    c = f^λ s_ν(1^{d_B}) g_{λμν}/f^μ.

    :param lam: Irrep label for the joint system
    :param mu: Irrep label for A
    :param nu: Irrep label for B
    :param dA: Local dimension of A
    :param dB: Local dimension of B
    :return: Exact coefficient, 0 when ℓ(μ) > d_A since C^A_μ vanishes
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    _check_same_weight(lam, mu, nu)
    _check_dimension("dA", dA, 1)
    _check_dimension("dB", dB, 1)
    if mu.length > dA:
        return Fraction(0)
    return Fraction(
        f_lambda(lam) * schur_dim(nu, dB) * kronecker(lam, mu, nu),
        f_lambda(mu)
    )


def full_trace_projector_product(
        lam: Partition,
        mu: Partition,
        nu: Partition,
        dA: int,
        dB: int
) -> int:
    """
    Tr[C^{AB}_λ (C^A_μ ⊗ C^B_ν)] = f^λ g_{λμν} s_μ(1^{d_A}) s_ν(1^{d_B}).

    :return: Exact trace
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    _check_same_weight(lam, mu, nu)
    return f_lambda(lam) * kronecker(lam, mu, nu) * schur_dim(mu, dA) * schur_dim(nu, dB)


def partial_trace_symmetric_companion(k: int, dB: int) -> Dict[Partition, Fraction]:
    """
    Tr_B C^{AB}_{(k)} = Σ_μ [s_μ(1^{d_B})/f^μ] C^A_μ.

    :param k: Number of copies
    :param dB: Local dimension of B
    :return: Coefficient of each C^A_μ
    """
    return {
        mu: Fraction(schur_dim(mu, dB), f_lambda(mu)) for mu in partitions_of(k)
    }


def _interleave_order(k: int) -> Tuple[int, ...]:
    """Factor order taking (A_1..A_k, B_1..B_k) to (A_1, B_1, …, A_k, B_k)."""
    order = []
    for copy in range(k):
        order += [copy, k + copy]
    return tuple(order)


def partial_trace_projector_dense(
        lam: Partition,
        mu: Partition,
        nu: Partition,
        dA: int,
        dB: int
) -> ExactOperator:
    """
    Tr_B[C^{AB}_λ (C^A_μ ⊗ C^B_ν)] evaluated with dense exact operators.

    :return: Operator on (C^{d_A})^{⊗k}
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    _check_same_weight(lam, mu, nu)
    k = lam.weight
    joint = central_projector(lam, dA * dB).with_dims((dA, dB) * k)
    local = central_projector(mu, dA).kron(central_projector(nu, dB))
    local = local.permute_factors(_interleave_order(k))
    product = joint @ local
    return product.partial_trace(range(1, 2 * k, 2))


def check_partial_trace_projector(
        lam: Partition,
        mu: Partition,
        nu: Partition,
        dA: int,
        dB: int
) -> Fraction:
    """
    Confirms the closed form coefficient against the dense evaluation.

    :return: The coefficient
    :raises ConsistencyError: If the two disagree
    """
    coefficient = partial_trace_projector(lam, mu, nu, dA, dB)
    dense = partial_trace_projector_dense(lam, mu, nu, dA, dB)
    expected = central_projector(mu, dA).scale(coefficient)
    if dense != expected:
        raise ConsistencyError(
            "consistency",
            f"partial trace of C_{Partition(lam).label()} disagrees with its closed form"
        )
    return coefficient
