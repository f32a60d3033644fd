"""
Group algebra module.

Elements of C[S_k] with exact coefficients, and their image under the
permutation representation on (C^d)^{⊗k}.
"""

from collections import defaultdict
from typing import Dict, Iterator, Mapping, Optional, Tuple

from haarmoments.characters.class_function import ClassFunction
from haarmoments.combinatorics.partitions import Partition
from haarmoments.combinatorics.permutations import Permutation, all_permutations
from haarmoments.output.error_handler import ArgumentError
from haarmoments.output.output import gaussian_to_json
from haarmoments.weingarten.exact_operator import (
    DictOfDicts, ExactOperator, accumulate, check_dense_size, permutation_images
)
from haarmoments.weingarten.scalars import ZERO, GaussianRational, ScalarLike, gaussian


class GroupAlgebraElement:
    """Finite formal sum Σ_π c_π π over S_k."""

    __slots__ = ["k", "coefficients"]

    def __init__(
            self,
            k: int,
            coefficients: Optional[Mapping[Permutation, ScalarLike]] = None
    ) -> None:
        """
        Initializer for the GroupAlgebraElement class.

        :param k: Degree of the symmetric group
        :param coefficients: Permutations mapped to coefficients; zero
            coefficients are dropped
        """
        self.k = k
        self.coefficients: Dict[Permutation, GaussianRational] = {}
        for pi, value in (coefficients or {}).items():
            pi = Permutation(pi)
            if len(pi) != k:
                raise ArgumentError("weight_mismatch", f"S_{len(pi)}", f"S_{k}")
            value = gaussian(value)
            if value:
                self.coefficients[pi] = value

    @classmethod
    def identity(cls, k: int) -> "GroupAlgebraElement":
        return cls(k, {Permutation.identity(k): 1})

    @classmethod
    def from_class_function(cls, function: ClassFunction) -> "GroupAlgebraElement":
        """
        Spreads a class function over every permutation, Σ_π f(π) π.

        :param function: Class function on S_k
        :return: Central element
        """
        return cls(
            function.k,
            {pi: function[pi.cycle_type()] for pi in all_permutations(function.k)}
        )

    def __getitem__(self, pi: Permutation) -> GaussianRational:
        return self.coefficients.get(Permutation(pi), ZERO)

    def items(self) -> Iterator[Tuple[Permutation, GaussianRational]]:
        return iter(self.coefficients.items())

    def _check_same_degree(self, other: "GroupAlgebraElement") -> None:
        if self.k != other.k:
            raise ArgumentError("weight_mismatch", f"S_{self.k}", f"S_{other.k}")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check_same_degree(other)
        result = dict(self.coefficients)
        for pi, value in other.items():
            result[pi] = result.get(pi, ZERO) + value
        return GroupAlgebraElement(self.k, result)

    def scale(self, factor: ScalarLike) -> "GroupAlgebraElement":
        factor = gaussian(factor)
        return GroupAlgebraElement(
            self.k, {pi: value * factor for pi, value in self.items()}
        )

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        """Convolution (Σ a_σ σ)(Σ b_τ τ) = Σ a_σ b_τ στ."""
        if not isinstance(other, GroupAlgebraElement):
            return self.scale(other)
        self._check_same_degree(other)
        result: Dict[Permutation, GaussianRational] = {}
        for sigma, left in self.items():
            for tau, right in other.items():
                product = sigma * tau
                result[product] = result.get(product, ZERO) + left * right
        return GroupAlgebraElement(self.k, result)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.k == other.k and self.coefficients == other.coefficients

    __hash__ = None

    def is_central(self) -> bool:
        """Whether the coefficients only depend on the cycle type."""
        by_class: Dict[Partition, GaussianRational] = {}
        for pi in all_permutations(self.k):
            gamma = pi.cycle_type()
            value = self[pi]
            if by_class.setdefault(gamma, value) != value:
                return False
        return True

    def class_view(self) -> Dict[Partition, GaussianRational]:
        """
        Coefficients keyed by cycle type.

        :return: Cycle types mapped to the common coefficient
        :raises ArgumentError: If the element is not central
        """
        if not self.is_central():
            raise ArgumentError("bad_parameter", "group algebra element is not central")
        return {pi.cycle_type(): self[pi] for pi in all_permutations(self.k)}

    def operator(self, d: int) -> ExactOperator:
        """
        Image Σ_π c_π P(π) on (C^d)^{⊗k}.

        :param d: Local dimension
        :return: Exact operator
        """
        dims = (d,) * self.k
        check_dense_size(d ** self.k)
        result: DictOfDicts = defaultdict(dict)
        for pi, value in self.items():
            for index, image in enumerate(permutation_images(pi, dims)):
                accumulate(result, image, index, value)
        return ExactOperator.from_dod(dims, result)

    def to_json(self) -> Dict[str, object]:
        return {pi.to_cycle_text(): gaussian_to_json(value) for pi, value in self.items()}

    def __repr__(self) -> str:
        return f"GroupAlgebraElement(k={self.k}, support={len(self.coefficients)})"
