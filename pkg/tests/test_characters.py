from fractions import Fraction

import pytest

from haarmoments.characters.character_table import character, character_table, hook_column
from haarmoments.characters.class_function import ClassFunction
from haarmoments.combinatorics.partitions import Partition, f_lambda, partitions_of, z_gamma
from haarmoments.combinatorics.permutations import Permutation
from haarmoments.config import Config, use_config
from haarmoments.output.error_handler import ArgumentError, ResourceError


class TestCharacterValues:

    def test_s3_table(self):
        table = character_table(3)
        assert table.partitions == (Partition((3,)), Partition((2, 1)), Partition((1, 1, 1)))
        # columns (3), (2,1), (1,1,1)
        assert table.values == ((1, 1, 1), (-1, 0, 2), (1, -1, 1))

    def test_s4_entries(self):
        assert character(Partition((2, 2)), Partition((3, 1))) == -1
        assert character(Partition((3, 1)), Partition((2, 2))) == -1
        assert character(Partition((2, 1, 1)), Partition((4,))) == 1
        assert character(Partition((2, 2)), Partition((2, 2))) == 2

    def test_weight_mismatch(self):
        with pytest.raises(ArgumentError):
            character(Partition((2,)), Partition((2, 1)))

    @pytest.mark.parametrize("k", range(1, 8))
    def test_row_orthogonality(self, k):
        table = character_table(k)
        for lam in table.partitions:
            for mu in table.partitions:
                inner = sum(
                    Fraction(table.value(lam, g) * table.value(mu, g), z_gamma(g))
                    for g in table.partitions
                )
                assert inner == (1 if lam == mu else 0)

    @pytest.mark.parametrize("k", range(1, 8))
    def test_column_orthogonality(self, k):
        table = character_table(k)
        for gamma in table.partitions:
            for delta in table.partitions:
                total = sum(table.value(lam, gamma) * table.value(lam, delta) for lam in table.partitions)
                assert total == (z_gamma(gamma) if gamma == delta else 0)

    @pytest.mark.parametrize("k", range(1, 8))
    def test_trivial_row_and_degrees(self, k):
        table = character_table(k)
        assert all(value == 1 for value in table.row(Partition((k,))).values())
        identity = Partition((1,) * k)
        for lam in table.partitions:
            assert table.value(lam, identity) == f_lambda(lam)

    @pytest.mark.parametrize("k", range(1, 8))
    def test_hook_column(self, k):
        column = character_table(k).column(Partition((k,)))
        hooks = dict(hook_column(k))
        assert column == {lam: hooks.get(lam, 0) for lam in partitions_of(k)}

    def test_table_cap(self):
        use_config(Config(character_table_cap=5))
        with pytest.raises(ResourceError):
            character_table(6)

    def test_json_form(self):
        payload = character_table(2).to_json()
        assert payload == {"k": 2, "partitions": ["2", "1,1"], "table": [[1, 1], [-1, 1]]}


class TestClassFunction:

    def test_irreducible_characters_are_orthonormal(self):
        chi = ClassFunction.irreducible(Partition((2, 1)))
        trivial = ClassFunction.irreducible(Partition((3,)))
        assert chi.inner(chi) == 1
        assert chi.inner(trivial) == 0

    def test_lookup_by_permutation(self):
        chi = ClassFunction.irreducible(Partition((2, 1)))
        assert chi.at(Permutation.from_cycles(3, [(1, 2, 3)])) == -1
        assert chi[(1, 2)] == 0

    def test_tensor_square_decomposes(self):
        chi = ClassFunction.irreducible(Partition((2, 1)))
        square = chi * chi
        assert square == sum(
            (ClassFunction.irreducible(lam) for lam in partitions_of(3)),
            ClassFunction.from_function(3, lambda gamma: 0)
        )
        assert not square.is_character_row()
        assert chi.is_character_row()

    def test_wrong_classes(self):
        with pytest.raises(ArgumentError):
            ClassFunction(2, {Partition((2,)): 1})

    def test_json_uses_labels(self):
        chi = ClassFunction.irreducible(Partition((1, 1)))
        assert chi.to_json() == {"(2)": "-1", "(1,1)": "1"}
