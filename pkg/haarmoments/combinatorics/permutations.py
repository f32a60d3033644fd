"""
Permutations module.

Permutations of {1..k} stored in one-line form. Internally the images
are 0-based; the cycle notation used for construction and display is
1-based. Composition follows (στ)(i) = σ(τ(i)), which makes the tensor
factor permutation operators a representation: P(σ)P(τ) = P(στ).
"""

import itertools
from typing import Iterable, Iterator, List, Sequence, Tuple

from haarmoments.combinatorics.partitions import Partition
from haarmoments.output.error_handler import ArgumentError


class Permutation(tuple):
    """Bijection of {0..k−1}, where entry i is the image of i."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()) -> "Permutation":
        """
        Validates a 0-based one-line form.

        :param images: Images of 0..k−1
        :raises ArgumentError: If images is not a bijection
        """
        if isinstance(images, Permutation):
            return images

        images = tuple(int(image) for image in images)
        if sorted(images) != list(range(len(images))):
            raise ArgumentError(
                "bad_permutation",
                tuple(image + 1 for image in images),
                len(images)
            )
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        """Identity of S_k."""
        return cls(range(k))

    @classmethod
    def from_one_line(cls, images: Sequence[int]) -> "Permutation":
        """
        Builds a permutation from its 1-based one-line form.

        :param images: Images of 1..k
        :return: Permutation
        """
        return cls(image - 1 for image in images)

    @classmethod
    def from_cycles(cls, k: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """
        Builds a permutation from 1-based cycle notation.

        Points not named in any cycle are fixed.

        :param k: Degree
        :param cycles: Cycles such as [(1, 2, 3), (4, 5)]
        :return: Permutation mapping each entry to the next one in its
            cycle
        :raises ArgumentError: If a point is out of range or repeated
        """
        images = list(range(k))
        seen = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= k:
                    raise ArgumentError("index_out_of_range", point, k)
                if point in seen:
                    raise ArgumentError("bad_permutation", tuple(cycle), k)
                seen.add(point)
            for position, point in enumerate(cycle):
                images[point - 1] = cycle[(position + 1) % len(cycle)] - 1
        return cls(images)

    @property
    def degree(self) -> int:
        """Number of points k."""
        return len(self)

    def __call__(self, point: int) -> int:
        """Image of a 0-based point."""
        return self[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """
        Composition, applying other first.

        :param other: Permutation of the same degree
        :return: self ∘ other
        """
        if len(self) != len(other):
            raise ArgumentError("weight_mismatch", len(self), len(other))
        return Permutation(self[image] for image in other)

    def inverse(self) -> "Permutation":
        """Inverse permutation."""
        images = [0] * len(self)
        for point, image in enumerate(self):
            images[image] = point
        return Permutation(images)

    def cycles(self) -> List[Tuple[int, ...]]:
        """
        Cycle decomposition in 1-based notation, fixed points included.

        Each cycle starts at its smallest point; cycles are ordered by
        their starting point.

        :return: List of cycles
        """
        seen = [False] * len(self)
        result = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point + 1)
                point = self[point]
            result.append(tuple(cycle))
        return result

    def num_cycles(self) -> int:
        """Number of cycles, fixed points included."""
        return len(self.cycles())

    def cycle_type(self) -> Partition:
        """Cycle lengths sorted non-increasing."""
        return Partition(len(cycle) for cycle in self.cycles())

    def sign(self) -> int:
        """Sign (−1)^{k − #cycles}."""
        return -1 if (len(self) - self.num_cycles()) % 2 else 1

    def is_identity(self) -> bool:
        return all(point == image for point, image in enumerate(self))

    def to_cycle_text(self) -> str:
        """Cycle notation without fixed points, "e" for the identity."""
        cycles = [cycle for cycle in self.cycles() if len(cycle) > 1]
        if not cycles:
            return "e"
        return "".join(
            "(" + " ".join(str(point) for point in cycle) + ")"
            for cycle in cycles
        )

    def to_json(self) -> List[int]:
        return [image + 1 for image in self]

    def __repr__(self) -> str:
        return f"Permutation{self.to_cycle_text()}"


def cycle_type(pi: Permutation) -> Partition:
    """
    Cycle type of a permutation.

    :param pi: Permutation
    :return: Partition of the cycle lengths
    """
    return Permutation(pi).cycle_type()


def all_permutations(k: int) -> Iterator[Permutation]:
    """
    Iterates over S_k in lexicographic order of the one-line form.

    :param k: Degree
    :return: Iterator over every permutation of k points
    """
    for images in itertools.permutations(range(k)):
        yield Permutation(images)
