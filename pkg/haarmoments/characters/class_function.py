"""
Class function module.

Exact rational valued functions on the conjugacy classes of S_k. The
irreducible characters and the Weingarten function both live here.
"""

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterator, Mapping, Tuple, Union

from haarmoments.characters.character_table import character_table
from haarmoments.combinatorics.partitions import Partition, partitions_of, z_gamma
from haarmoments.combinatorics.permutations import Permutation
from haarmoments.output.error_handler import ArgumentError
from haarmoments.output.output import format_rational

Scalar = Union[int, Fraction]


class ClassFunction:
    """Map from every cycle type γ ⊢ k to an exact rational."""

    __slots__ = ["k", "values"]

    def __init__(self, k: int, values: Mapping[Partition, Scalar]) -> None:
        """
        Initializer for the ClassFunction class.

        :param k: Weight
        :param values: Values for every partition of k; keys may be
            given in any part order
        :raises ArgumentError: If the key set is not exactly the
            partitions of k
        """
        self.k = k
        canonical = {Partition(gamma): Fraction(value) for gamma, value in values.items()}
        expected = partitions_of(k)
        if set(canonical) != set(expected):
            missing = set(expected) ^ set(canonical)
            raise ArgumentError(
                "bad_parameter",
                f"class function on S_{k} has wrong classes: "
                + ", ".join(sorted(p.label() for p in missing))
            )
        self.values: Dict[Partition, Fraction] = {
            gamma: canonical[gamma] for gamma in expected
        }

    @classmethod
    def from_function(cls, k: int, function) -> "ClassFunction":
        """
        Tabulates a function of the cycle type.

        :param k: Weight
        :param function: Callable taking a cycle type
        :return: Class function
        """
        return cls(k, {gamma: function(gamma) for gamma in partitions_of(k)})

    @classmethod
    def irreducible(cls, lam: Partition) -> "ClassFunction":
        """
        Irreducible character χ_λ.

        :param lam: Irrep label
        :return: Character row as a class function
        """
        lam = Partition(lam)
        return cls(lam.weight, character_table(lam.weight).row(lam))

    def __getitem__(self, gamma: Partition) -> Fraction:
        try:
            return self.values[Partition(gamma)]
        except KeyError as e:
            raise ArgumentError(
                "weight_mismatch", Partition(gamma).label(), f"S_{self.k}"
            ) from e

    def at(self, pi: Permutation) -> Fraction:
        """
        Evaluates on a permutation.

        :param pi: Permutation of k points
        :return: Value on the class of pi
        """
        return self[Permutation(pi).cycle_type()]

    def items(self) -> Iterator[Tuple[Partition, Fraction]]:
        return iter(self.values.items())

    def _check_same_weight(self, other: "ClassFunction") -> None:
        if self.k != other.k:
            raise ArgumentError("weight_mismatch", f"S_{self.k}", f"S_{other.k}")

    def inner(self, other: "ClassFunction") -> Fraction:
        """
        Inner product ⟨f, g⟩ = Σ_γ f(γ)g(γ)/z_γ.

        :param other: Class function of the same weight
        :return: Exact inner product
        """
        self._check_same_weight(other)
        return sum(
            (value * other.values[gamma] / z_gamma(gamma)
             for gamma, value in self.values.items()),
            Fraction(0)
        )

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_same_weight(other)
        return ClassFunction(
            self.k,
            {gamma: value + other.values[gamma] for gamma, value in self.values.items()}
        )

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return self + other.scale(-1)

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        """Pointwise product, the character of the tensor product."""
        self._check_same_weight(other)
        return ClassFunction(
            self.k,
            {gamma: value * other.values[gamma] for gamma, value in self.values.items()}
        )

    def scale(self, factor: Rational) -> "ClassFunction":
        return ClassFunction(
            self.k, {gamma: value * factor for gamma, value in self.values.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.k == other.k and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.k, tuple(self.values.items())))

    def is_character_row(self) -> bool:
        """Whether this equals one of the irreducible characters."""
        table = character_table(self.k)
        return any(
            all(self.values[gamma] == value for gamma, value in table.row(lam).items())
            for lam in table.partitions
        )

    def to_json(self) -> Dict[str, str]:
        return {
            gamma.label(): format_rational(value)
            for gamma, value in self.values.items()
        }

    def __repr__(self) -> str:
        body = ", ".join(
            f"{gamma.label()}: {format_rational(value)}"
            for gamma, value in self.values.items()
        )
        return f"ClassFunction(k={self.k}, {{{body}}})"
