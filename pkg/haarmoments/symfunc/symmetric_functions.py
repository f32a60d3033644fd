"""
Symmetric functions module.

Exact evaluation of power sums, Schur polynomials and Kronecker
coefficients at rational points. Schur polynomials go through the
Frobenius expansion s_λ = Σ_γ χ_{λ,γ} p_γ / z_γ, which never divides by
a difference of variables, so repeated entries (such as 1^d) need no
limit. The bialternant ratio is kept as an independent check.
"""

import math
from fractions import Fraction
from numbers import Rational
from typing import Any, Callable, Iterable, Sequence

import sympy
from loguru import logger

from haarmoments.characters.character_table import character
from haarmoments.combinatorics.partitions import Partition, partitions_of, z_gamma
from haarmoments.output.error_handler import ArgumentError, ConsistencyError


class RationalVector(tuple):
    """Point x = (x_1, …, x_d) with exact rational entries, d ≥ 1."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[Rational] = ()) -> "RationalVector":
        """
        Validates entries.

        :param entries: Rational entries, repeats allowed
        :raises ArgumentError: If there are no entries
        """
        values = tuple(Fraction(entry) for entry in entries)
        if not values:
            raise ArgumentError("empty_vector")
        return super().__new__(cls, values)

    @property
    def dim(self) -> int:
        return len(self)

    def tensor(self, other: "RationalVector") -> "RationalVector":
        """
        Product vector x⊗y with entries x_i·y_j, i major.

        :param other: Second factor
        :return: Vector of all d_1·d_2 products
        """
        return RationalVector(a * b for a in self for b in other)

    def to_json(self):
        return [str(entry) for entry in self]


def power_sum(gamma: Partition, x: RationalVector) -> Fraction:
    """
    Power sum p_γ(x) = ∏_j Σ_i x_i^{γ_j}.

    :param gamma: Partition
    :param x: Point
    :return: Exact value
    """
    gamma = Partition(gamma)
    x = RationalVector(x)
    return math.prod(
        (sum(entry ** part for entry in x) for part in gamma),
        start=Fraction(1)
    )


def schur_poly(lam: Partition, x: RationalVector) -> Fraction:
    """
    Schur polynomial s_λ(x) by the Frobenius formula.

    :param lam: Partition
    :param x: Point
    :return: Exact value; zero when ℓ(λ) exceeds the number of variables
    """
    lam = Partition(lam)
    x = RationalVector(x)
    if lam.length > x.dim:
        return Fraction(0)

    return sum(
        (
            Fraction(character(lam, gamma), z_gamma(gamma)) * power_sum(gamma, x)
            for gamma in partitions_of(lam.weight)
        ),
        Fraction(0)
    )


def schur_eigen_poly(
        lam: Partition,
        power_traces: Sequence[Any],
        scalar: Callable[[Fraction], Any] = Fraction
) -> Any:
    """
    Schur function evaluated on an operator's spectrum from its power
    traces, s_λ(X) = Σ_γ χ_{λ,γ}/z_γ ∏_j Tr X^{γ_j}.

    Works with any exact scalar type supporting + and *.

    :param lam: Partition of k
    :param power_traces: Tr X^r for r = 1..k, in order
    :param scalar: Converts the rational coefficients into the scalar
        type of the traces
    :return: s_λ evaluated at the eigenvalues of X
    """
    lam = Partition(lam)
    if len(power_traces) < lam.weight:
        raise ArgumentError(
            "bad_parameter",
            f"s_{lam.label()} needs {lam.weight} power traces, got {len(power_traces)}"
        )

    total: Any = scalar(Fraction(0))
    for gamma in partitions_of(lam.weight):
        value = character(lam, gamma)
        if not value:
            continue
        term: Any = scalar(Fraction(value, z_gamma(gamma)))
        for part in gamma:
            term = term * power_traces[part - 1]
        total = total + term
    return total


def bialternant_schur(lam: Partition, x: RationalVector) -> Fraction:
    """
    Schur polynomial as the determinant ratio
    det(x_i^{λ_j + d − j}) / det(x_i^{d − j}).

    :param lam: Partition
    :param x: Point with distinct entries
    :return: Exact value
    :raises ArgumentError: If entries repeat
    """
    lam = Partition(lam)
    x = RationalVector(x)
    if len(set(x)) != x.dim:
        raise ArgumentError("repeated_points", x.to_json())
    if lam.length > x.dim:
        return Fraction(0)

    d = x.dim
    points = [sympy.Rational(entry.numerator, entry.denominator) for entry in x]
    numerator = sympy.Matrix(
        d, d, lambda i, j: points[i] ** (lam.part(j + 1) + d - j - 1)
    ).det()
    denominator = sympy.Matrix(d, d, lambda i, j: points[i] ** (d - j - 1)).det()
    ratio = sympy.Rational(numerator, denominator)
    return Fraction(int(ratio.p), int(ratio.q))


def kronecker(lam: Partition, mu: Partition, nu: Partition) -> int:
    """
    Kronecker coefficient g_{λμν} = Σ_γ χ_{λγ}χ_{μγ}χ_{νγ}/z_γ.

    :param lam: Partition of k
    :param mu: Partition of k
    :param nu: Partition of k
    :return: Non-negative integer multiplicity
    :raises ArgumentError: If the weights differ
    :raises ConsistencyError: If the sum is not a non-negative integer
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if not lam.weight == mu.weight == nu.weight:
        raise ArgumentError(
            "weight_mismatch", lam.label(), f"{mu.label()}, {nu.label()}"
        )

    value = sum(
        (
            Fraction(
                character(lam, gamma) * character(mu, gamma) * character(nu, gamma),
                z_gamma(gamma)
            )
            for gamma in partitions_of(lam.weight)
        ),
        Fraction(0)
    )
    if value.denominator != 1 or value < 0:
        raise ConsistencyError(
            "consistency",
            f"g({lam.label()}, {mu.label()}, {nu.label()}) = {value}"
        )
    return value.numerator


def schur_tensor_expand(
        lam: Partition,
        x: RationalVector,
        y: RationalVector
) -> Fraction:
    """
    Evaluates s_λ(xy) = Σ_{μ,ν} g_{λμν} s_μ(x) s_ν(y) and checks it
    against direct evaluation at the product vector.

    :param lam: Partition of k
    :param x: First point
    :param y: Second point
    :return: Exact value
    :raises ConsistencyError: If the expansion disagrees with s_λ(x⊗y)
    """
    lam = Partition(lam)
    x, y = RationalVector(x), RationalVector(y)
    labels = partitions_of(lam.weight)
    schur_x = {mu: schur_poly(mu, x) for mu in labels}
    schur_y = {nu: schur_poly(nu, y) for nu in labels}

    expanded = Fraction(0)
    for mu in labels:
        if not schur_x[mu]:
            continue
        for nu in labels:
            if schur_y[nu]:
                expanded += kronecker(lam, mu, nu) * schur_x[mu] * schur_y[nu]

    direct = schur_poly(lam, x.tensor(y))
    if expanded != direct:
        logger.error(
            "Tensor expansion of s_{} gave {}, direct evaluation {}",
            lam.label(),
            expanded,
            direct
        )
        raise ConsistencyError(
            "consistency",
            f"s_{lam.label()}(xy): expansion {expanded} != direct {direct}"
        )
    return expanded


def inverse_frobenius(gamma: Partition, x: RationalVector) -> Fraction:
    """
    Evaluates p_γ = Σ_λ χ_{λ,γ} s_λ and checks it against the power sum.

    :param gamma: Cycle type
    :param x: Point
    :return: Exact value
    :raises ConsistencyError: If the expansion disagrees with p_γ(x)
    """
    gamma = Partition(gamma)
    expanded = sum(
        (
            character(lam, gamma) * schur_poly(lam, x)
            for lam in partitions_of(gamma.weight)
        ),
        Fraction(0)
    )
    direct = power_sum(gamma, x)
    if expanded != direct:
        raise ConsistencyError(
            "consistency",
            f"p_{gamma.label()}: character expansion {expanded} != {direct}"
        )
    return expanded
