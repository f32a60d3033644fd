"""
Character table module.

Irreducible characters χ_{λ,γ} of S_k by the Murnaghan–Nakayama rule,
worked on beta numbers: removing a border strip of length r from λ
moves one beta number b down to b − r, with sign (−1) to the number of
beta numbers strictly between the two.
"""

import threading
from collections import OrderedDict
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from loguru import logger

from haarmoments import settings
from haarmoments.combinatorics.partitions import (
    Partition, hook_shape, partitions_of
)
from haarmoments.config import current_config
from haarmoments.output.error_handler import ArgumentError, ResourceError

CharacterKey = Tuple[Partition, Partition]


@lru_cache(maxsize=1 << 16)
def _strip_border(beta: Tuple[int, ...], cycles: Tuple[int, ...]) -> int:
    if not cycles:
        return 1

    length, rest = cycles[0], cycles[1:]
    beta_set = set(beta)
    total = 0
    for index, value in enumerate(beta):
        target = value - length
        if target < 0 or target in beta_set:
            continue
        between = sum(1 for other in beta if target < other < value)
        new_beta = tuple(sorted(
            beta[:index] + (target,) + beta[index + 1:], reverse=True
        ))
        total += (-1) ** between * _strip_border(new_beta, rest)
    return total


class CharacterCache:
    """
    Memo of character values, grouped by weight.

    Only the most recently used weights are kept, so that a large table
    cannot pin memory forever.
    """

    __slots__ = ["values", "lock", "max_weights"]

    def __init__(self, max_weights: int) -> None:
        """
        Initializer for the CharacterCache class.

        :param max_weights: Number of weights kept in memory
        """
        self.values: "OrderedDict[int, Dict[CharacterKey, int]]" = OrderedDict()
        self.lock = threading.Lock()
        self.max_weights = max_weights

    def get(self, key: CharacterKey) -> int:
        """
        Gets a cached value.

        :param key: (λ, γ) pair
        :return: Cached value
        :raises KeyError: If the value is not cached
        """
        weight = key[0].weight
        with self.lock:
            value = self.values[weight][key]
            self.values.move_to_end(weight)
        return value

    def put(self, key: CharacterKey, value: int) -> None:
        """
        Caches a value, evicting the least recently used weight.

        :param key: (λ, γ) pair
        :param value: Character value
        """
        weight = key[0].weight
        with self.lock:
            self.values.setdefault(weight, {})[key] = value
            self.values.move_to_end(weight)
            while len(self.values) > self.max_weights:
                evicted, _ = self.values.popitem(last=False)
                logger.debug("Evicted cached characters of weight {}", evicted)

    def clear(self) -> None:
        with self.lock:
            self.values.clear()


CHARACTER_CACHE = CharacterCache(settings.character_cache_weights)


def character(lam: Partition, gamma: Partition) -> int:
    """
    Irreducible character χ_λ evaluated on cycle type γ.

    :param lam: Irrep label λ ⊢ k
    :param gamma: Cycle type γ ⊢ k, parts in any order
    :return: Exact integer character value
    :raises ArgumentError: If the weights differ
    """
    lam = Partition(lam)
    gamma = Partition(gamma)
    if lam.weight != gamma.weight:
        raise ArgumentError("weight_mismatch", lam.label(), gamma.label())

    key = (lam, gamma)
    try:
        return CHARACTER_CACHE.get(key)
    except KeyError:
        pass

    value = _strip_border(lam.beta_numbers(), tuple(gamma))
    logger.trace("chi_{}({}) = {}", lam.label(), gamma.label(), value)
    CHARACTER_CACHE.put(key, value)
    return value


@dataclass(frozen=True)
class CharacterTable:
    """Square table of χ_{λ,γ}, rows and columns both lex ordered."""

    k: int
    partitions: Tuple[Partition, ...]
    values: Tuple[Tuple[int, ...], ...]

    def value(self, lam: Partition, gamma: Partition) -> int:
        """
        Looks up one entry.

        :param lam: Row label
        :param gamma: Column label
        :return: χ_{λ,γ}
        """
        index = {p: i for i, p in enumerate(self.partitions)}
        try:
            return self.values[index[Partition(lam)]][index[Partition(gamma)]]
        except KeyError as e:
            raise ArgumentError(
                "weight_mismatch", Partition(lam).label(), Partition(gamma).label()
            ) from e

    def row(self, lam: Partition) -> Dict[Partition, int]:
        """
        Gets one irreducible character as a map over cycle types.

        :param lam: Row label
        :return: Cycle types mapped to character values
        """
        lam = Partition(lam)
        row = self.values[self.partitions.index(lam)]
        return dict(zip(self.partitions, row))

    def column(self, gamma: Partition) -> Dict[Partition, int]:
        gamma = Partition(gamma)
        column = self.partitions.index(gamma)
        return {lam: row[column] for lam, row in zip(self.partitions, self.values)}

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "partitions": [p.to_text() for p in self.partitions],
            "table": [list(row) for row in self.values],
        }


_table_lock = threading.Lock()
_tables: Dict[int, CharacterTable] = {}


def character_table(k: int) -> CharacterTable:
    """
    Full character table of S_k, memoized.

    :param k: Weight, at most the configured character table cap
    :return: Character table
    :raises ResourceError: If k is over the cap
    """
    cap = current_config().character_table_cap
    if k > cap:
        logger.warning("Refusing character table for k = {} (cap {})", k, cap)
        raise ResourceError("table_cap", cap, k)

    with _table_lock:
        if k in _tables:
            return _tables[k]

    labels = tuple(partitions_of(k))
    table = CharacterTable(
        k=k,
        partitions=labels,
        values=tuple(
            tuple(character(lam, gamma) for gamma in labels) for lam in labels
        )
    )
    logger.debug("Built character table of S_{} ({} classes)", k, len(labels))

    with _table_lock:
        _tables.setdefault(k, table)
    return table


def hook_column(k: int) -> List[Tuple[Partition, int]]:
    """
    Non-zero entries of the γ = (k) column.

    :param k: Weight, at least 1
    :return: Hook shapes (k − r, 1^r) with their values (−1)^r
    """
    return [
        (hook_shape(k, r), (-1) ** r) for r in range(k)
    ]
