import io
from fractions import Fraction

import pytest

from haarmoments import settings
from haarmoments.config import Config, current_config, load_config, use_config
from haarmoments.output.error_handler import (
    EXIT_USAGE, EXIT_VERIFY_FAILED, ArgumentError, ConsistencyError, handle_command_error
)
from haarmoments.output.output import dump_json, format_float, format_rational, format_table
from haarmoments.utils.obj_utils import match_param, strtobool
from haarmoments.utils.text_utils import (
    load_matrix_file, parse_indices, parse_matrix, parse_rational, parse_rational_list
)
from haarmoments.weingarten.scalars import gaussian


class TestConfig:

    def test_defaults_come_from_settings(self):
        config = Config()
        assert config.dense_cap == settings.dense_size_cap
        assert config.default_seed == settings.default_seed
        assert config.output_format == "text"

    def test_yaml_file(self, tmp_path):
        path = tmp_path / "haarmoments.yaml"
        path.write_text("dense_cap: 64\nmc_samples: '500'\noutput_format: json\n", encoding="utf-8")
        config = load_config(str(path), {})
        assert config.dense_cap == 64
        assert config.mc_samples == 500
        assert config.output_format == "json"

    def test_precedence(self, tmp_path):
        path = tmp_path / "haarmoments.yaml"
        path.write_text("dense_cap: 64\n", encoding="utf-8")
        assert load_config(str(path), {"HAARMOMENTS_CAP": "128"}).dense_cap == 128
        assert load_config(str(path), {"HAARMOMENTS_CAP": "128"}, {"dense_cap": "256"}).dense_cap == 256
        assert load_config(None, {"HAARMOMENTS_CAP": " "}).dense_cap == settings.dense_size_cap

    def test_none_overrides_are_ignored(self):
        assert load_config(None, {}, {"float_precision": None}) == Config()

    @pytest.mark.parametrize("overrides", [
        {"dense_cap": "lots"},
        {"dense_cap": 8},
        {"output_format": "xml"},
        {"no_such_key": 1},
        {"mc_z_threshold": -1},
        {"mc_chunks": 2.5},
    ])
    def test_invalid_values(self, overrides):
        with pytest.raises(ArgumentError):
            load_config(None, {}, overrides)

    def test_bad_files(self, tmp_path):
        with pytest.raises(ArgumentError):
            load_config(str(tmp_path / "absent.yaml"), {})
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ArgumentError):
            load_config(str(path), {})

    def test_use_config_returns_previous(self):
        first = Config(dense_cap=32)
        previous = use_config(first)
        assert current_config() is first
        assert use_config(previous) is first

    def test_match_param(self):
        assert match_param(3, "7") == 7
        assert match_param(1.5, "2") == 2.0
        assert match_param(True, "off") is False
        assert match_param("text", 5) == "5"
        with pytest.raises(ValueError):
            strtobool("perhaps")


class TestTextParsing:

    @pytest.mark.parametrize("text, value", [
        ("3", Fraction(3)),
        ("-1/2", Fraction(-1, 2)),
        (" 0.25 ", Fraction(1, 4)),
        (0.1, Fraction(1, 10)),
        (7, Fraction(7)),
    ])
    def test_rational(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["x", "1/0", True, None])
    def test_bad_rational(self, text):
        with pytest.raises(ArgumentError):
            parse_rational(text)

    def test_lists(self):
        assert parse_rational_list("1/2,3") == (Fraction(1, 2), Fraction(3))
        assert parse_indices("1, 2,3") == (1, 2, 3)
        assert parse_indices("") == ()
        with pytest.raises(ArgumentError):
            parse_indices("1,b")
        with pytest.raises(ArgumentError):
            parse_rational_list("")

    def test_matrix_forms(self):
        rows = parse_matrix({"matrix": [[1, "1/2"], [[0, 1], 0]]})
        assert rows[0][1] == gaussian(Fraction(1, 2))
        assert rows[1][0] == gaussian(0, 1)

    @pytest.mark.parametrize("data", [[], "text", [[1, 2], [3]], [[1, [1, 2, 3]], [0, 0]], [1, 2]])
    def test_bad_matrices(self, data):
        with pytest.raises(ArgumentError):
            parse_matrix(data)

    def test_load_matrix_file(self, tmp_path):
        path = tmp_path / "x.json"
        path.write_text('{"matrix": [[1, 0], [0, "-1/3"]]}', encoding="utf-8")
        operator = load_matrix_file(str(path))
        assert operator.dims == (2,)
        assert operator[1, 1] == gaussian(Fraction(-1, 3))


class TestOutput:

    def test_rationals(self):
        assert format_rational(Fraction(6, 3)) == "2"
        assert format_rational(Fraction(-1, 24)) == "-1/24"
        assert format_rational(5) == "5"

    def test_floats(self):
        assert format_float(0.5, 3) == "0.5"
        assert format_float(1 + 2j, 3) == "1+2i"

    def test_json_is_sorted(self):
        assert dump_json({"b": Fraction(1, 2), "a": 1j}) == '{"a": [0.0, 1.0], "b": "1/2"}'

    def test_table_alignment(self):
        assert format_table([["1", "-1/2"]], ["a", "b"]) == ["a     b", "1  -1/2"]

    def test_error_exit_codes(self):
        stream = io.StringIO()
        assert handle_command_error(ArgumentError("bad_rational", "x"), stream) == EXIT_USAGE
        assert "Invalid rational" in stream.getvalue()
        assert handle_command_error(ConsistencyError("consistency", "mismatch"), io.StringIO()) == EXIT_VERIFY_FAILED
        assert handle_command_error(FileNotFoundError("gone"), io.StringIO()) == EXIT_USAGE
        assert handle_command_error(RuntimeError("boom"), io.StringIO()) == EXIT_VERIFY_FAILED
