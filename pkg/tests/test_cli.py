import io
import json

import pytest

from haarmoments.cli import COMMANDS, build_parser, run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(*argv):
    code, out, err = invoke(*argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def matrix_file(tmp_path):
    def write(text: str) -> str:
        path = tmp_path / "matrix.yaml"
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


class TestCommands:

    def test_every_command_has_a_subparser(self):
        choices = build_parser()._subparsers._group_actions[0].choices
        assert set(choices) == set(COMMANDS)

    def test_wg(self):
        assert invoke_json("wg", "2", "3") == {"(1,1)": "1/8", "(2)": "-1/24"}

    def test_global_flags_before_the_command(self):
        code, out, _ = invoke("--format", "json", "wg", "1", "2")
        assert code == 0
        assert json.loads(out) == {"(1)": "1/2"}

    def test_wg_text(self):
        code, out, _ = invoke("wg", "2", "3")
        assert code == 0
        assert "-1/24" in out and "(1,1)" in out

    def test_moment(self):
        args = ["moment", "--rows", "1,2", "--cols", "1,2", "--rows2", "1,2", "--cols2", "1,2", "-d", "4"]
        assert invoke_json(*args) == "1/15"

    def test_chartable_json_is_stable(self):
        code, out, _ = invoke("chartable", "3", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["table"] == [[1, 1, 1], [-1, 0, 2], [1, -1, 1]]
        assert json.dumps(payload, sort_keys=True) == out.strip()

    def test_schur(self):
        code, out, _ = invoke("schur", "2", "2,3")
        assert code == 0
        assert out.strip().endswith("= 19")

    def test_schur_from_traces(self):
        # X = diag(2, 3): Tr X = 5, Tr X^2 = 13
        code, out, _ = invoke("schur", "1,1", "5,13", "--traces")
        assert code == 0
        assert out.strip().endswith("= 6")

    def test_kron(self):
        assert invoke_json("kron", "2,1", "2,1", "2,1") == 1

    def test_twirl_of_a_power(self, matrix_file):
        payload = invoke_json("twirl", matrix_file("[[1, 0], [0, 0]]"), "-k", "2")
        assert payload["coefficients"] == {"(2)": "1/3", "(1,1)": "0"}
        assert len(payload["operator"]) == 4

    def test_twirl_of_an_operator(self, matrix_file):
        rows = [[1 if i == j == 0 else 0 for j in range(4)] for i in range(4)]
        payload = invoke_json("twirl", matrix_file(json.dumps(rows)), "--operator", "--dim", "2")
        # |00><00| twirls to C_(2)/3
        assert payload[0][0] == ["1/3", "0"]
        assert payload[1][2] == ["1/6", "0"]

    def test_twirl_operator_needs_dim(self, matrix_file):
        code, _, err = invoke("twirl", matrix_file("[[1, 0], [0, 1]]"), "--operator")
        assert code == 2
        assert "--dim" in err

    def test_complex_entries(self, matrix_file):
        payload = invoke_json("twirl", matrix_file('[[[0, 1], 0], [0, "1/2"]]'), "-k", "1")
        assert payload["coefficients"] == {"(1)": ["1/4", "1/2"]}

    def test_sample_is_reproducible(self):
        first = invoke_json("sample", "-d", "2", "-n", "2", "--seed", "4")
        second = invoke_json("sample", "-d", "2", "-n", "2", "--seed", "4")
        assert first == second
        assert len(first) == 2
        assert all(item["residual"] < 1e-10 for item in first)

    def test_quad(self):
        payload = invoke_json("quad", "--moment", "2", "-n", "3")
        assert payload["exact"] == "2"
        assert payload["value"] == pytest.approx(2, abs=1e-10)
        assert payload["grid"] == 5

    def test_verify_one(self):
        payload = invoke_json("verify", "k1_twirl")
        assert payload["passed"] == payload["total"] == 1
        assert payload["identities"][0]["identity"] == "k1_twirl"

    def test_verify_text(self):
        code, out, _ = invoke("verify", "wg_k2", "-d", "3")
        assert code == 0
        assert "1/1 identities passed" in out

    def test_mcverify(self):
        payload = invoke_json("mcverify", "swap", "--samples", "3000")
        assert payload["pass"] is True
        assert payload["n_samples"] == 3000

    @pytest.mark.parametrize("argv", [
        ("-d", "2", "-n", "2"),
        ("--dim", "2", "--count", "2"),
        ("2", "--count", "2"),
    ])
    def test_sample_argument_forms(self, argv):
        payload = invoke_json("sample", *argv, "--seed", "4")
        assert payload == invoke_json("sample", "-d", "2", "-n", "2", "--seed", "4")
        assert len(payload) == 2
        assert len(payload[0]["matrix"]) == 2

    @pytest.mark.parametrize("flag", ["-n", "--n"])
    def test_quad_argument_forms(self, flag):
        payload = invoke_json("quad", flag, "3", "--grid", "5", "--moment", "2", "--power", "1")
        assert payload["n"] == 3
        assert payload["grid"] == 5
        assert payload["exact"] == "2"
        assert payload["value"] == pytest.approx(2, abs=1e-10)

    def test_twirl_matrix_option(self, matrix_file):
        path = matrix_file("[[1, 0], [0, 0]]")
        payload = invoke_json("twirl", "--matrix", path, "-k", "2")
        assert payload == invoke_json("twirl", path, "-k", "2")
        assert payload["coefficients"] == {"(2)": "1/3", "(1,1)": "0"}

    def test_twirl_text_coefficients(self, matrix_file):
        code, out, _ = invoke("twirl", "--matrix", matrix_file('[[[0, 1], 0], [0, "1/2"]]'), "-k", "1")
        assert code == 0
        assert "1/4+1/2i" in out

    @pytest.mark.parametrize("identity, size", [
        ("swap", 9), ("uu_bar", 9), ("haar_mean", 3), ("uk_twirl", 2)
    ])
    def test_mcverify_matrix_json(self, identity, size):
        code, out, err = invoke("mcverify", identity, "--samples", "2000", "--seed", "7", "--format", "json")
        payload = json.loads(out)
        assert isinstance(payload["pass"], bool)
        assert code == (0 if payload["pass"] else 1), err
        assert payload["identity"] == identity
        assert len(payload["exact"]) == len(payload["estimate"]) == len(payload["stderr"]) == size
        assert all(len(entry) == 2 for row in payload["exact"] for entry in row)
        assert all(len(entry) == 2 for row in payload["estimate"] for entry in row)
        assert all(isinstance(value, float) for row in payload["stderr"] for value in row)


class TestErrors:

    def test_missing_argument(self):
        code, _, err = invoke("wg", "2")
        assert code == 2
        assert "Usage error" in err

    def test_unknown_command(self):
        assert invoke("nope")[0] == 2

    def test_sample_needs_dimension(self):
        code, _, err = invoke("sample", "-n", "2")
        assert code == 2
        assert "--dim" in err

    def test_sample_conflicting_dimensions(self):
        assert invoke("sample", "2", "-d", "3")[0] == 2

    def test_twirl_needs_matrix(self):
        code, _, err = invoke("twirl", "-k", "2")
        assert code == 2
        assert "--matrix" in err

    def test_bad_integer(self):
        assert invoke("wg", "two", "3")[0] == 2

    def test_malformed_matrix_entry(self, matrix_file):
        code, _, err = invoke("twirl", matrix_file("[[1, 2], [3, x]]"))
        assert code == 2
        assert "row 2, column 2" in err

    def test_ragged_matrix(self, matrix_file):
        code, _, err = invoke("twirl", matrix_file("[[1, 2], [3]]"))
        assert code == 2
        assert "row 2" in err

    def test_missing_matrix_file(self, tmp_path):
        assert invoke("twirl", str(tmp_path / "absent.yaml"))[0] == 2

    def test_unknown_identity(self):
        code, _, err = invoke("verify", "no_such_identity")
        assert code == 2
        assert "k1_twirl" in err

    def test_dense_cap(self, matrix_file):
        code, _, err = invoke("twirl", matrix_file("[[1, 0, 0], [0, 1, 0], [0, 0, 1]]"), "-k", "3", "--cap", "16")
        assert code == 2
        assert "dense cap" in err

    def test_environment_cap(self, matrix_file, monkeypatch):
        monkeypatch.setenv("HAARMOMENTS_CAP", "16")
        code, _, _ = invoke("twirl", matrix_file("[[1, 0, 0], [0, 1, 0], [0, 0, 1]]"), "-k", "3")
        assert code == 2

    def test_invalid_cap(self):
        code, _, err = invoke("--cap", "4", "wg", "2", "2")
        assert code == 2
        assert "dense_cap" in err

    def test_help(self, capsys):
        assert invoke("--help")[0] == 0
        assert "haarmoments" in capsys.readouterr().out

    def test_config_is_restored(self):
        from haarmoments.config import current_config

        before = current_config()
        invoke("--format", "json", "wg", "1", "1")
        assert current_config() is before
