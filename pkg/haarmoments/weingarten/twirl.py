"""
Twirl module.

The conditional expectation E_k(A) = ∫ U^{⊗k} A (U^{⊗k})† dU onto the
span of the permutation operators, the central projectors C_λ, and the
averages that follow from them.

E_k is evaluated in the group algebra: with Δ(A) = Σ_π Tr(A P(π⁻¹)) π
and Δ(1)⁻¹ = Σ_π Wg(π⁻¹) π, the twirl is the image of Δ(A)·Δ(1)⁻¹.
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

from loguru import logger

from haarmoments.characters.character_table import character
from haarmoments.characters.class_function import ClassFunction
from haarmoments.combinatorics.partitions import (
    Partition, f_lambda, partitions_of, schur_dim
)
from haarmoments.combinatorics.permutations import Permutation, all_permutations
from haarmoments.output.error_handler import ArgumentError
from haarmoments.output.output import gaussian_to_json
from haarmoments.symfunc.symmetric_functions import schur_eigen_poly
from haarmoments.utils.obj_utils import enforce_param_types
from haarmoments.weingarten.exact_operator import (
    DictOfDicts, ExactOperator, accumulate, check_dense_size, permutation_operator, tensor_power
)
from haarmoments.weingarten.group_algebra import GroupAlgebraElement
from haarmoments.weingarten.scalars import GaussianRational, gaussian
from haarmoments.weingarten.weingarten_fn import weingarten_fn


def delta_map(operator: ExactOperator) -> GroupAlgebraElement:
    """
    Δ(A) = Σ_π Tr(A P(π⁻¹)) π.

    :param operator: Operator A on (C^d)^{⊗k}
    :return: Group algebra element of S_k
    """
    return GroupAlgebraElement(
        operator.k,
        {pi: operator.permutation_trace(pi.inverse()) for pi in all_permutations(operator.k)}
    )


def delta_identity(k: int, d: int) -> GroupAlgebraElement:
    """
    Gram element Δ(1) = Σ_π d^{#cycles(π)} π.

    :param k: Degree
    :param d: Dimension
    :return: Central group algebra element
    """
    return GroupAlgebraElement(
        k, {pi: d ** pi.num_cycles() for pi in all_permutations(k)}
    )


def delta_identity_inverse(k: int, d: int) -> GroupAlgebraElement:
    """
    Δ(1)⁻¹ = Σ_π Wg(π⁻¹) π, a pseudo-inverse when d < k.

    :param k: Degree
    :param d: Dimension
    :return: Central group algebra element
    """
    return GroupAlgebraElement.from_class_function(weingarten_fn(k, d))


def conditional_expectation(operator: ExactOperator) -> ExactOperator:
    """
    Twirl E_k(A) = ∫ U^{⊗k} A (U^{⊗k})† dU.

    :param operator: Operator A on (C^d)^{⊗k}
    :return: E_k(A), a combination of permutation operators
    :raises ArgumentError: If A is not on a tensor power space
    """
    d = operator.d
    k = operator.k
    coefficients = delta_map(operator) * delta_identity_inverse(k, d)
    logger.trace("Twirl coefficients for k = {}, d = {}: {}", k, d, coefficients)
    return coefficients.operator(d)


def central_projector_element(lam: Partition) -> GroupAlgebraElement:
    """
    C_λ = (f^λ/k!) Σ_π χ_λ(π) π in the group algebra.

    :param lam: Irrep label
    :return: Central idempotent
    """
    lam = Partition(lam)
    k = lam.weight
    scale = Fraction(f_lambda(lam), math.factorial(k))
    return GroupAlgebraElement.from_class_function(
        ClassFunction.from_function(k, lambda gamma: scale * character(lam, gamma))
    )


@enforce_param_types
def central_projector(lam: Partition, d: int) -> ExactOperator:
    """
    Isotypic projector C_λ on (C^d)^{⊗k}.

    :param lam: Irrep label λ ⊢ k
    :param d: Local dimension
    :return: Exact projector, zero when ℓ(λ) > d
    """
    lam = Partition(lam)
    if lam.length > d:
        return ExactOperator((d,) * lam.weight)
    return central_projector_element(lam).operator(d)


@dataclass(frozen=True)
class TwirlResult:
    """Twirl of X^{⊗k}: coefficients Δ_λ and the assembled operator."""

    k: int
    d: int
    coefficients: Dict[Partition, GaussianRational]
    operator: ExactOperator

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "coefficients": {
                lam.label(): gaussian_to_json(value) for lam, value in self.coefficients.items()
            },
            "operator": self.operator.to_json(),
        }


def power_traces(operator: ExactOperator, k: int) -> List[GaussianRational]:
    """
    Tr X^r for r = 1..k.

    :param operator: Square operator X
    :param k: Highest power
    :return: List of traces
    """
    traces = []
    power = operator
    for r in range(1, k + 1):
        if r > 1:
            power = power @ operator
        traces.append(power.trace())
    return traces


def twirl_coefficients(operator: ExactOperator, k: int) -> Dict[Partition, GaussianRational]:
    """
    Δ_λ = Tr(C_λ X^{⊗k})/Tr(C_λ) = s_λ(X)/s_λ(1^d) for λ ⊢ (k, d).

    :param operator: Operator X on C^d
    :param k: Tensor power
    :return: Irrep labels mapped to coefficients
    """
    d = operator.size
    traces = power_traces(operator, k)
    return {
        lam: schur_eigen_poly(lam, traces, scalar=gaussian) / schur_dim(lam, d)
        for lam in partitions_of(k, d)
    }


def twirl_power(operator: ExactOperator, k: int) -> TwirlResult:
    """
    ∫ (UXU†)^{⊗k} dU = Σ_λ Δ_λ C_λ.

    :param operator: Operator X on C^d
    :param k: Tensor power, k ≥ 1
    :return: Coefficients and assembled operator
    """
    if k < 1:
        raise ArgumentError("bad_dimension", "k", 1, k)
    d = operator.size
    check_dense_size(d ** k)
    coefficients = twirl_coefficients(operator, k)

    assembled = GroupAlgebraElement(k)
    for lam, value in coefficients.items():
        if value:
            assembled = assembled + central_projector_element(lam).scale(value)
    return TwirlResult(k, d, coefficients, assembled.operator(d))


def sphere_projector_average(k: int, d: int) -> ExactOperator:
    """
    ∫ |ψ⟩⟨ψ|^{⊗k} dψ = C_{(k)}/binomial(k+d−1, k).

    :param k: Tensor power
    :param d: Dimension
    :return: Normalized symmetric projector
    """
    if k < 1 or d < 1:
        raise ArgumentError("bad_dimension", "k, d", 1, min(k, d))
    return central_projector(Partition((k,)), d).scale(
        Fraction(1, math.comb(k + d - 1, k))
    )


def symmetric_pair_projector(k: int, d: int) -> ExactOperator:
    """
    C∨_{(k)} = (1/k!) Σ_π P(π) ⊗ P(π) on (C^d)^{⊗k} ⊗ (C^d)^{⊗k}, the
    symmetric projector of the k copies of C^d ⊗ C^d.

    :param k: Number of copies
    :param d: Local dimension
    :return: Projector with dims (d,)*2k, output factors first
    """
    check_dense_size(d ** (2 * k))
    total = ExactOperator((d,) * (2 * k))
    for pi in all_permutations(k):
        single = permutation_operator(pi, d)
        total = total + single.kron(single)
    return total.scale(Fraction(1, math.factorial(k)))


def inverse_input_trace(k: int, d: int) -> ExactOperator:
    """
    (Tr_in C∨_{(k)})⁻¹ = Σ_{λ⊢(k,d)} (f^λ/s_λ(1^d)) C_λ, inverted on the
    support of Tr_in C∨_{(k)}.

    :param k: Number of copies
    :param d: Local dimension
    :return: Operator on (C^d)^{⊗k}
    """
    element = GroupAlgebraElement(k)
    for lam in partitions_of(k, d):
        element = element + central_projector_element(lam).scale(
            Fraction(f_lambda(lam), schur_dim(lam, d))
        )
    return element.operator(d)


def vec_moment(k: int, d: int) -> ExactOperator:
    """
    ∫ |U^{⊗k}⟩⟩⟨⟨U^{⊗k}| dU = C∨_{(k)} [(Tr_in C∨_{(k)})⁻¹ ⊗ 1_in].

    Entries are [(I, J), (I', J')] = ∫ U_{IJ} conj(U_{I'J'}) dU with the
    output indices I as the leading factors.

    :param k: Tensor power
    :param d: Dimension
    :return: Operator with dims (d,)*2k and trace d^k
    :raises ResourceError: If d^{2k} exceeds the dense cap
    """
    if k < 1 or d < 1:
        raise ArgumentError("bad_dimension", "k, d", 1, min(k, d))
    check_dense_size(d ** (2 * k))
    symmetric = symmetric_pair_projector(k, d)
    correction = inverse_input_trace(k, d).kron(ExactOperator.identity((d,) * k))
    return symmetric @ correction


def vec_moment_by_summation(k: int, d: int) -> ExactOperator:
    """
    vec_moment assembled entry by entry from the Weingarten sum
    Σ_{σ,τ} Wg(στ⁻¹) δ(I, I'∘σ) δ(J, J'∘τ).

    :param k: Tensor power
    :param d: Dimension
    :return: Same operator as vec_moment
    """
    check_dense_size(d ** (2 * k))
    wg = weingarten_fn(k, d)
    size = d ** k
    result: DictOfDicts = defaultdict(dict)
    perms = list(all_permutations(k))

    def compose(digits_index: int, pi: Permutation) -> int:
        digits = [(digits_index // d ** (k - 1 - a)) % d for a in range(k)]
        index = 0
        for a in range(k):
            index = index * d + digits[pi[a]]
        return index

    moved = {pi: [compose(index, pi) for index in range(size)] for pi in perms}
    for sigma in perms:
        for tau in perms:
            weight = gaussian(wg[(sigma * tau.inverse()).cycle_type()])
            if not weight:
                continue
            for rows2 in range(size):
                rows = moved[sigma][rows2]
                for cols2 in range(size):
                    row = rows * size + moved[tau][cols2]
                    column = rows2 * size + cols2
                    accumulate(result, row, column, weight)
    return ExactOperator.from_dod((d,) * (2 * k), result)


def audenaert_twirl(operator: ExactOperator) -> ExactOperator:
    """
    E_k(A) in the compact form (1/k!) Δ(A) (Tr_in C∨_{(k)})⁻¹, with both
    factors taken as operators.

    :param operator: Operator A on (C^d)^{⊗k}
    :return: E_k(A)
    """
    d, k = operator.d, operator.k
    delta = delta_map(operator).operator(d)
    return (delta @ inverse_input_trace(k, d)).scale(Fraction(1, math.factorial(k)))


def choi_operator(
        channel: Callable[[ExactOperator], ExactOperator],
        dims: tuple
) -> ExactOperator:
    """
    Σ_{J,J'} Φ(|J⟩⟨J'|) ⊗ |J⟩⟨J'|, output factors first.

    :param channel: Linear map on operators with the given dims
    :param dims: Factor dimensions of the input space
    :return: Operator with dims dims + dims
    """
    size = math.prod(dims)
    check_dense_size(size * size)
    result: DictOfDicts = defaultdict(dict)
    for column in range(size):
        for column2 in range(size):
            image = channel(ExactOperator.outer({column: 1}, {column2: 1}, dims))
            for row, row2, value in image.entries():
                result[row * size + column][row2 * size + column2] = value
    return ExactOperator.from_dod(tuple(dims) + tuple(dims), result)


def twirl_matches_tensor_power(operator: ExactOperator, k: int) -> bool:
    """
    Whether twirl_power agrees with conditional_expectation(X^{⊗k}).

    :param operator: Operator X on C^d
    :param k: Tensor power
    :return: Exact comparison result
    """
    d = operator.size
    expected = conditional_expectation(tensor_power(operator, k).with_dims((d,) * k))
    return twirl_power(operator, k).operator == expected
