"""
Exact operator module.

ExactOperator is a square matrix over the Gaussian rationals QQ_I
acting on a tensor product of factors, (C^d)^{⊗k} in the common case.
The matrix is a sparse sympy DomainMatrix (a dict of rows holding only
non-zero entries), which keeps permutation operators and projector
products cheap; semantically every operator is dense and row-major,
basis index tuples ordered with the first factor most significant.

The field arithmetic, sums, products, scaling and transposes come
from DomainMatrix. This module adds the tensor structure: factor
dimensions, Kronecker products, factor permutations and partial
traces.
"""

import math
from collections import defaultdict
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy
from loguru import logger
from sympy import QQ_I
from sympy.polys.matrices import DomainMatrix

from haarmoments.combinatorics.permutations import Permutation
from haarmoments.config import current_config
from haarmoments.output.error_handler import ArgumentError, ResourceError
from haarmoments.output.output import gaussian_pair
from haarmoments.weingarten.scalars import (
    ONE, ZERO, GaussianRational, ScalarLike, conjugate, gaussian, to_complex
)

# Dict of rows, each a dict of column → non-zero entry
DictOfDicts = Dict[int, Dict[int, GaussianRational]]


def check_dense_size(size: int) -> None:
    """
    Refuses operators larger than the configured dense cap.

    :param size: Matrix dimension
    :raises ResourceError: If size exceeds the cap
    """
    cap = current_config().dense_cap
    if size > cap:
        logger.warning("Refusing operator of dimension {} (cap {})", size, cap)
        raise ResourceError("dense_cap", size, cap)


def index_to_tuple(index: int, dims: Sequence[int]) -> Tuple[int, ...]:
    """
    Mixed radix digits of a basis index, first factor most significant.

    :param index: Flat basis index
    :param dims: Factor dimensions
    :return: 0-based index per factor
    """
    digits = []
    for dim in reversed(dims):
        index, digit = divmod(index, dim)
        digits.append(digit)
    return tuple(reversed(digits))


def tuple_to_index(digits: Sequence[int], dims: Sequence[int]) -> int:
    """
    Inverse of index_to_tuple.

    :param digits: 0-based index per factor
    :param dims: Factor dimensions
    :return: Flat basis index
    """
    index = 0
    for digit, dim in zip(digits, dims):
        index = index * dim + digit
    return index


def accumulate(dod: DictOfDicts, row: int, column: int, value: GaussianRational) -> None:
    """Adds value to entry (row, column) of a dict of dicts."""
    entries = dod[row]
    entries[column] = entries.get(column, ZERO) + value


class ExactOperator:
    """Exact square matrix on a tensor product space."""

    __slots__ = ["dims", "size", "matrix"]

    def __init__(self, dims: Sequence[int], matrix: Optional[DomainMatrix] = None) -> None:
        """
        Initializer for the ExactOperator class.

        :param dims: Factor dimensions; the matrix size is their product
        :param matrix: Square DomainMatrix of that size, converted to a
            sparse matrix over QQ_I; defaults to the zero operator
        :raises ResourceError: If the size exceeds the dense cap
        """
        self.dims: Tuple[int, ...] = tuple(int(dim) for dim in dims)
        if any(dim < 1 for dim in self.dims):
            raise ArgumentError("bad_dimension", "factor dimension", 1, min(self.dims))
        self.size = math.prod(self.dims)
        check_dense_size(self.size)

        if matrix is None:
            matrix = DomainMatrix.zeros((self.size, self.size), QQ_I)
        elif matrix.shape != (self.size, self.size):
            raise ArgumentError("dimension_mismatch", matrix.shape, (self.size, self.size))
        if matrix.domain != QQ_I:
            matrix = matrix.convert_to(QQ_I)
        self.matrix: DomainMatrix = matrix.to_sparse()

    # Construction

    @classmethod
    def from_dod(cls, dims: Sequence[int], dod: Mapping[int, Mapping[int, GaussianRational]]) -> "ExactOperator":
        """
        Builds an operator from a dict of rows of QQ_I entries.

        Zero entries and empty rows are dropped.

        :param dims: Factor dimensions
        :param dod: Row → column → entry
        :return: Operator
        """
        size = math.prod(dims)
        check_dense_size(size)
        return cls(dims, DomainMatrix.from_dod(dod, (size, size), QQ_I))

    @classmethod
    def zeros(cls, dims: Sequence[int]) -> "ExactOperator":
        return cls(dims)

    @classmethod
    def identity(cls, dims: Sequence[int]) -> "ExactOperator":
        size = math.prod(dims)
        check_dense_size(size)
        return cls(dims, DomainMatrix.eye(size, QQ_I))

    @classmethod
    def from_rows(
            cls,
            entries: Sequence[Sequence[ScalarLike]],
            dims: Optional[Sequence[int]] = None
    ) -> "ExactOperator":
        """
        Builds an operator from a dense list of rows.

        :param entries: Square matrix of scalars
        :param dims: Factor dimensions, defaults to a single factor
        :return: Operator
        :raises ArgumentError: If the matrix is not square or does not
            match dims
        """
        size = len(entries)
        for row in entries:
            if len(row) != size:
                raise ArgumentError("not_square", size, len(row))
        dims = (size,) if dims is None else tuple(dims)
        if math.prod(dims) != size:
            raise ArgumentError("dimension_mismatch", dims, size)

        return cls.from_dod(dims, {
            row_index: {column: gaussian(value) for column, value in enumerate(row)}
            for row_index, row in enumerate(entries)
        })

    @classmethod
    def diagonal(cls, values: Sequence[ScalarLike]) -> "ExactOperator":
        return cls.from_dod(
            (len(values),),
            {index: {index: gaussian(value)} for index, value in enumerate(values)}
        )

    @classmethod
    def outer(
            cls,
            ket: Dict[int, ScalarLike],
            bra: Dict[int, ScalarLike],
            dims: Sequence[int]
    ) -> "ExactOperator":
        """
        Rank one operator |ket⟩⟨bra| from sparse vectors.

        :param ket: Flat basis index mapped to amplitude
        :param bra: Flat basis index mapped to amplitude (not conjugated)
        :param dims: Factor dimensions
        :return: Operator with entries ket[i]·conj(bra[j])
        """
        bra = {column: conjugate(gaussian(right)) for column, right in bra.items()}
        return cls.from_dod(dims, {
            row: {column: gaussian(left) * right for column, right in bra.items()}
            for row, left in ket.items()
        })

    @classmethod
    def basis_projector(cls, digits: Sequence[int], dims: Sequence[int]) -> "ExactOperator":
        """
        Projector |i⟩⟨i| on a product basis state.

        :param digits: 0-based index per factor
        :param dims: Factor dimensions
        :return: Rank one projector
        """
        index = tuple_to_index(digits, dims)
        return cls.outer({index: 1}, {index: 1}, dims)

    # Shape

    @property
    def k(self) -> int:
        """Number of tensor factors."""
        return len(self.dims)

    @property
    def d(self) -> int:
        """
        Local dimension of a tensor power space.

        :raises ArgumentError: If factors have different dimensions
        """
        if len(set(self.dims)) != 1:
            raise ArgumentError("not_tensor_power", self.size, self.dims[0], self.k)
        return self.dims[0]

    def with_dims(self, dims: Sequence[int]) -> "ExactOperator":
        """
        Reinterprets the same matrix with another factorization.

        :param dims: Factor dimensions with the same product
        :return: Operator sharing no state with self
        """
        if math.prod(dims) != self.size:
            raise ArgumentError("dimension_mismatch", tuple(dims), self.dims)
        return ExactOperator(dims, self.matrix.copy())

    def as_tensor_power(self, d: int) -> "ExactOperator":
        """
        Reinterprets the matrix as an operator on (C^d)^{⊗k}.

        :param d: Local dimension
        :return: Operator with dims (d,)*k
        :raises ArgumentError: If the size is not a power of d
        """
        k = 0
        size = 1
        while size < self.size:
            size *= d
            k += 1
        if size != self.size or (d == 1 and self.size != 1):
            raise ArgumentError("not_tensor_power", self.size, d, k)
        return self.with_dims((d,) * k)

    def _check_same_shape(self, other: "ExactOperator") -> None:
        if self.dims != other.dims:
            raise ArgumentError("dimension_mismatch", self.dims, other.dims)

    # Entries

    def __getitem__(self, position: Tuple[int, int]) -> GaussianRational:
        row, column = position
        return self.matrix.rep.getitem(row, column)

    def entries(self) -> Iterator[Tuple[int, int, GaussianRational]]:
        """Iterates over non-zero entries as (row, column, value)."""
        for (row, column), value in self.matrix.iter_items():
            yield row, column, value

    def to_dod(self) -> DictOfDicts:
        """Copy of the non-zero entries as a dict of rows."""
        return self.matrix.to_dod()

    def nnz(self) -> int:
        return self.matrix.nnz()

    def is_zero(self) -> bool:
        return self.matrix.is_zero_matrix

    # Algebra

    def __add__(self, other: "ExactOperator") -> "ExactOperator":
        self._check_same_shape(other)
        return ExactOperator(self.dims, self.matrix.add(other.matrix))

    def __neg__(self) -> "ExactOperator":
        return ExactOperator(self.dims, self.matrix.neg())

    def __sub__(self, other: "ExactOperator") -> "ExactOperator":
        self._check_same_shape(other)
        return ExactOperator(self.dims, self.matrix.sub(other.matrix))

    def scale(self, factor: ScalarLike) -> "ExactOperator":
        """
        Multiplies every entry by a scalar.

        :param factor: Exact scalar
        :return: Scaled operator
        """
        return ExactOperator(self.dims, self.matrix.scalarmul(gaussian(factor)))

    def __mul__(self, factor: ScalarLike) -> "ExactOperator":
        if isinstance(factor, ExactOperator):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactOperator") -> "ExactOperator":
        """Matrix product; the result keeps the factorization of self."""
        if self.size != other.size:
            raise ArgumentError("dimension_mismatch", self.dims, other.dims)
        return ExactOperator(self.dims, self.matrix.matmul(other.matrix))

    def adjoint(self) -> "ExactOperator":
        return ExactOperator(self.dims, self.matrix.transpose().applyfunc(conjugate))

    def transpose(self) -> "ExactOperator":
        return ExactOperator(self.dims, self.matrix.transpose())

    def trace(self) -> GaussianRational:
        return sum(self.matrix.diagonal(), ZERO)

    def trace_product(self, other: "ExactOperator") -> GaussianRational:
        """
        Tr(self·other) without forming the product.

        :param other: Operator of the same size
        :return: Exact trace
        """
        if self.size != other.size:
            raise ArgumentError("dimension_mismatch", self.dims, other.dims)
        right = other.matrix.rep
        total = ZERO
        for row, column, value in self.entries():
            other_value = right.get(column, {}).get(row)
            if other_value is not None:
                total = total + value * other_value
        return total

    def kron(self, other: "ExactOperator") -> "ExactOperator":
        """
        Tensor product self ⊗ other.

        :param other: Operator on the trailing factors
        :return: Operator with dims self.dims + other.dims
        """
        check_dense_size(self.size * other.size)
        left, right = self.to_dod(), other.to_dod()
        result: DictOfDicts = {}
        for row, left_row in left.items():
            for other_row, right_row in right.items():
                result[row * other.size + other_row] = {
                    column * other.size + other_column: value * other_value
                    for column, value in left_row.items()
                    for other_column, other_value in right_row.items()
                }
        return ExactOperator.from_dod(self.dims + other.dims, result)

    def permute_factors(self, order: Sequence[int]) -> "ExactOperator":
        """
        Reorders tensor factors; factor j of the result is factor
        order[j] of self.

        :param order: 0-based permutation of the factors
        :return: Operator on the reordered space
        """
        order = tuple(Permutation(order))
        if len(order) != self.k:
            raise ArgumentError("tuple_length", f"{len(order)}, {self.k}")
        new_dims = tuple(self.dims[source] for source in order)

        def move(index: int) -> int:
            digits = index_to_tuple(index, self.dims)
            return tuple_to_index([digits[source] for source in order], new_dims)

        mapping = [move(index) for index in range(self.size)]
        result: DictOfDicts = defaultdict(dict)
        for row, column, value in self.entries():
            result[mapping[row]][mapping[column]] = value
        return ExactOperator.from_dod(new_dims, result)

    def partial_trace(self, traced: Iterable[int]) -> "ExactOperator":
        """
        Traces out a set of factors.

        :param traced: 0-based indices of the factors to trace out
        :return: Operator on the remaining factors, in their order
        """
        traced = set(traced)
        if any(not 0 <= factor < self.k for factor in traced):
            raise ArgumentError("index_out_of_range", sorted(traced), self.k)
        kept = [factor for factor in range(self.k) if factor not in traced]
        kept_dims = tuple(self.dims[factor] for factor in kept) or (1,)

        result: DictOfDicts = defaultdict(dict)
        for row, column, value in self.entries():
            row_digits = index_to_tuple(row, self.dims)
            column_digits = index_to_tuple(column, self.dims)
            if any(row_digits[factor] != column_digits[factor] for factor in traced):
                continue
            accumulate(
                result,
                tuple_to_index([row_digits[f] for f in kept], kept_dims),
                tuple_to_index([column_digits[f] for f in kept], kept_dims),
                value
            )
        return ExactOperator.from_dod(kept_dims, result)

    def permutation_trace(self, pi: Permutation) -> GaussianRational:
        """
        Tr(self·P(π)) on a tensor power space.

        :param pi: Permutation of the factors
        :return: Exact trace
        """
        images = permutation_images(pi, self.dims)
        rows = self.matrix.rep
        total = ZERO
        for index, row in rows.items():
            value = row.get(images[index])
            if value is not None:
                total = total + value
        return total

    # Comparison and conversion

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactOperator):
            return NotImplemented
        return self.size == other.size and self.matrix == other.matrix

    __hash__ = None

    def to_numpy(self) -> numpy.ndarray:
        matrix = numpy.zeros((self.size, self.size), dtype=complex)
        for row, column, value in self.entries():
            matrix[row, column] = to_complex(value)
        return matrix

    def to_dense(self) -> List[List[GaussianRational]]:
        return [
            [self[row, column] for column in range(self.size)]
            for row in range(self.size)
        ]

    def to_json(self) -> List[List[List[str]]]:
        return [[gaussian_pair(value) for value in row] for row in self.to_dense()]

    def __repr__(self) -> str:
        return f"ExactOperator(dims={self.dims}, nnz={self.nnz()})"


def permutation_images(pi: Permutation, dims: Sequence[int]) -> List[int]:
    """
    Basis images under P(π)|i_1…i_k⟩ = |i_{π⁻¹(1)}…i_{π⁻¹(k)}⟩.

    :param pi: Permutation of the k factors
    :param dims: Factor dimensions; factors moved onto each other must
        have equal dimension
    :return: images[i] is the basis index P(π) sends basis index i to
    """
    pi = Permutation(pi)
    if len(pi) != len(dims):
        raise ArgumentError("tuple_length", f"{len(pi)}, {len(dims)}")
    if any(dims[pi[factor]] != dims[factor] for factor in range(len(dims))):
        raise ArgumentError("not_tensor_power", math.prod(dims), dims[0], len(dims))

    images = []
    for digits in product(*(range(dim) for dim in dims)):
        moved = [0] * len(dims)
        for factor, digit in enumerate(digits):
            moved[pi[factor]] = digit
        images.append(tuple_to_index(moved, dims))
    return images


def permutation_operator(pi: Permutation, d: int) -> ExactOperator:
    """
    Exact permutation operator P(π) on (C^d)^{⊗k}.

    :param pi: Permutation of k factors
    :param d: Local dimension
    :return: 0/1 operator with P(σ)P(τ) = P(στ)
    """
    pi = Permutation(pi)
    dims = (d,) * len(pi)
    check_dense_size(d ** len(pi))
    return ExactOperator.from_dod(
        dims,
        {image: {index: ONE} for index, image in enumerate(permutation_images(pi, dims))}
    )


def tensor_power(operator: ExactOperator, k: int) -> ExactOperator:
    """
    k-fold tensor power X^{⊗k}.

    :param operator: Operator X
    :param k: Number of factors, at least 1
    :return: X ⊗ … ⊗ X
    """
    if k < 1:
        raise ArgumentError("bad_dimension", "k", 1, k)
    check_dense_size(operator.size ** k)
    result = operator
    for _ in range(k - 1):
        result = result.kron(operator)
    return result
