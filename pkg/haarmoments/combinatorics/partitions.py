"""
Partitions module.

Integer partitions label both the irreducible representations and the
conjugacy classes (cycle types) of S_k. They are stored canonically,
parts weakly decreasing with zeros dropped, so that equality and
hashing agree with the mathematical object.
"""

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Integral
from typing import Dict, Iterable, List, Optional, Tuple

from loguru import logger

from haarmoments.output.error_handler import ArgumentError, ConsistencyError


class Partition(tuple):
    """Integer partition with parts in non-increasing order."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        """
        Canonicalizes and validates parts.

        Parts may be given in any order; zeros are dropped.

        :param parts: Non-negative integer parts
        :raises ArgumentError: If a part is not a non-negative integer
        """
        if isinstance(parts, Partition):
            return parts

        parts = tuple(parts)
        values = []
        for part in parts:
            if (
                    isinstance(part, bool)
                    or not isinstance(part, Integral)
                    or part < 0
            ):
                raise ArgumentError("bad_partition", parts)
            if part:
                values.append(int(part))

        return super().__new__(cls, sorted(values, reverse=True))

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        """
        Parses the comma separated text format, e.g. "3,1,1".

        The empty string is the empty partition.

        :param text: Partition text
        :return: Parsed partition
        :raises ArgumentError: If the text is malformed
        """
        stripped = text.strip().strip("()")
        if not stripped:
            return cls()

        try:
            return cls(int(part) for part in stripped.split(","))
        except ValueError as e:
            raise ArgumentError("bad_partition", text) from e

    @property
    def weight(self) -> int:
        """Sum of parts, |λ|."""
        return sum(self)

    @property
    def length(self) -> int:
        """Number of non-zero parts, ℓ(λ)."""
        return len(self)

    def part(self, j: int) -> int:
        """
        Gets the j-th part, 1-based, with λ_j = 0 beyond the length.

        :param j: Part index, starting at 1
        :return: Part value
        """
        if j < 1:
            raise ArgumentError("index_out_of_range", j, self.length)
        return self[j - 1] if j <= len(self) else 0

    def multiplicities(self) -> Dict[int, int]:
        """
        Gets the multiplicities m_j, the number of parts equal to j.

        :return: Part sizes mapped to multiplicities
        """
        counts: Dict[int, int] = {}
        for part in self:
            counts[part] = counts.get(part, 0) + 1
        return counts

    def conjugate(self) -> "Partition":
        """Transposes the Young frame."""
        if not self:
            return self
        return Partition(
            sum(1 for part in self if part > column)
            for column in range(self[0])
        )

    def hooks(self) -> List[int]:
        """
        Hook lengths of every cell, row by row.

        :return: List of hook lengths
        """
        conjugate = self.conjugate()
        return [
            (row_length - column) + (conjugate[column] - row) - 1
            for row, row_length in enumerate(self)
            for column in range(row_length)
        ]

    def beta_numbers(self, length: Optional[int] = None) -> Tuple[int, ...]:
        """
        First column hook lengths λ_i + n − i for i = 1..n.

        :param length: Number of rows n to use, at least the length
        :return: Strictly decreasing beta numbers
        """
        length = self.length if length is None else length
        return tuple(self.part(i) + length - i for i in range(1, length + 1))

    def label(self) -> str:
        """Label format, e.g. "(3,1,1)"; "()" for the empty partition."""
        return "(" + ",".join(str(part) for part in self) + ")"

    def to_text(self) -> str:
        """Text format, e.g. "3,1,1"; "" for the empty partition."""
        return ",".join(str(part) for part in self)

    def to_json(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Partition{self.label()}"


def _check_weight(k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, Integral) or k < 0:
        raise ArgumentError("negative_weight", k)


@lru_cache(maxsize=None)
def _partitions_bounded(
        k: int,
        max_part: int,
        max_length: int
) -> Tuple[Tuple[int, ...], ...]:
    if k == 0:
        return ((),)
    if max_length == 0:
        return ()

    result = []
    for first in range(min(k, max_part), 0, -1):
        for rest in _partitions_bounded(k - first, first, max_length - 1):
            result.append((first,) + rest)
    return tuple(result)


def partitions_of(k: int, max_length: Optional[int] = None) -> List[Partition]:
    """
    Lists partitions of k in decreasing lexicographic order.

    :param k: Weight
    :param max_length: Optional bound on the number of parts
    :return: Partitions λ ⊢ k with ℓ(λ) ≤ max_length
    :raises ArgumentError: If k is negative
    """
    _check_weight(k)
    if max_length is None or max_length > k:
        max_length = k

    return [
        Partition(parts)
        for parts in _partitions_bounded(k, k, max(max_length, 0))
    ]


def z_gamma(gamma: Partition) -> int:
    """
    Centralizer order z_γ = ∏_j j^{m_j} m_j!.

    :param gamma: Cycle type
    :return: Order of the centralizer of any permutation of type γ
    """
    gamma = Partition(gamma)
    return math.prod(
        part ** count * math.factorial(count)
        for part, count in gamma.multiplicities().items()
    )


def class_size(gamma: Partition) -> int:
    """
    Number of permutations of cycle type γ, h_γ = k!/z_γ.

    :param gamma: Cycle type
    :return: Conjugacy class size
    """
    gamma = Partition(gamma)
    return math.factorial(gamma.weight) // z_gamma(gamma)


def f_lambda_hook(lam: Partition) -> int:
    """
    Hook length formula f^λ = k!/∏ hooks.

    :param lam: Partition
    :return: Number of standard Young tableaux
    """
    lam = Partition(lam)
    return math.factorial(lam.weight) // math.prod(lam.hooks())


def difference_product(values: Iterable[int]) -> int:
    """
    Difference product ∏_{i<j}(a_i − a_j).

    :param values: Sequence a_1..a_n
    :return: Product over ordered pairs
    """
    values = list(values)
    return math.prod(
        values[i] - values[j]
        for i, j in itertools.combinations(range(len(values)), 2)
    )


def f_lambda_difference(lam: Partition) -> int:
    """
    Difference product formula f^λ = k!·Δ(μ)/∏ μ_j! with μ the beta
    numbers of λ.

    :param lam: Partition
    :return: Number of standard Young tableaux
    """
    lam = Partition(lam)
    beta = lam.beta_numbers()
    value = Fraction(
        math.factorial(lam.weight) * difference_product(beta),
        math.prod(math.factorial(b) for b in beta)
    )
    if value.denominator != 1:
        raise ConsistencyError(
            "consistency", f"difference product of {lam.label()} is not integral"
        )
    return value.numerator


@lru_cache(maxsize=4096)
def f_lambda(lam: Partition) -> int:
    """
    Dimension f^λ of the S_k irrep λ.

    Both the hook length and the difference product formula are
    evaluated and must agree.

    :param lam: Partition
    :return: Number of standard Young tableaux of shape λ
    :raises ConsistencyError: If the two formulas disagree
    """
    lam = Partition(lam)
    hook = f_lambda_hook(lam)
    difference = f_lambda_difference(lam)
    if hook != difference:
        logger.error(
            "Hook formula gave {} but difference product gave {} for {}",
            hook,
            difference,
            lam.label()
        )
        raise ConsistencyError(
            "consistency",
            f"f^{lam.label()}: hook formula {hook} != difference product {difference}"
        )
    return hook


@lru_cache(maxsize=4096)
def schur_dim(lam: Partition, d: int) -> int:
    """
    Dimension s_λ(1^d) of the U(d) irrep λ.

    Evaluated as Δ(λ_1+d−1, …, λ_d)/Δ(d−1, …, 0); zero when ℓ(λ) > d.

    :param lam: Partition
    :param d: Number of variables
    :return: Number of semistandard Young tableaux with entries ≤ d
    :raises ArgumentError: If d < 1
    """
    lam = Partition(lam)
    if d < 1:
        raise ArgumentError("bad_dimension", "d", 1, d)
    if lam.length > d:
        return 0

    return (
        difference_product(lam.beta_numbers(d))
        // difference_product(range(d - 1, -1, -1))
    )


def count_standard_tableaux(lam: Partition) -> int:
    """
    Counts standard Young tableaux by brute force.

    Every word in the row indices is tried; a word is a tableau when
    each prefix fills rows in a valid frame. Exponential in k, so only
    meant for small shapes.

    :param lam: Partition
    :return: Number of standard Young tableaux
    """
    lam = Partition(lam)
    rows = lam.length
    count = 0
    for word in itertools.product(range(rows), repeat=lam.weight):
        filled = [0] * rows
        for row in word:
            filled[row] += 1
            if filled[row] > lam[row] or (row and filled[row] > filled[row - 1]):
                break
        else:
            count += 1
    return count


def hook_shape(k: int, r: int) -> Partition:
    """
    Hook partition (k − r, 1^r).

    :param k: Weight
    :param r: Leg length, 0 ≤ r < k
    :return: Hook shape
    """
    if not 0 <= r < max(k, 1):
        raise ArgumentError("index_out_of_range", r, k - 1)
    return Partition((k - r,) + (1,) * r)
