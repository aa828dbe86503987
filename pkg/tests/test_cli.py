"""In-process exercise of the command line front end."""

import json

import pytest

from k3cycles.cli import EXIT_FILE, EXIT_INVALID, EXIT_OK, EXIT_USAGE, run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def invoke_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv)
    assert code == EXIT_OK, err
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    return doc


def error_json(capsys, expected_code, *argv):
    code, out, err = invoke(capsys, *argv)
    assert code == expected_code
    # argparse may print its own usage lines first; the JSON is last
    doc = json.loads(err.strip().splitlines()[-1])
    assert doc["schema_version"] == 1
    assert set(doc["error"]) == {"type", "message"}
    return doc["error"]


class TestDispatch:
    def test_no_arguments(self, capsys):
        code, out, err = invoke(capsys)
        assert code == EXIT_USAGE
        assert "usage" in out
        assert json.loads(err)["error"]["type"] == "UnknownSubcommand"

    def test_unknown_subcommand(self, capsys):
        err = error_json(capsys, EXIT_USAGE, "frobnicate")
        assert err["type"] == "UnknownSubcommand"
        assert "frobnicate" in err["message"]

    def test_help(self, capsys):
        code, out, _ = invoke(capsys, "--help")
        assert code == EXIT_OK
        assert "subcommands" in out

    def test_subcommand_help(self, capsys):
        code, out, _ = invoke(capsys, "count", "--help")
        assert code == EXIT_OK

    def test_bad_flags(self, capsys):
        err = error_json(capsys, EXIT_INVALID, "count", "--lattice", "E8")
        assert err["type"] == "InvalidArguments"

    def test_threads_must_be_positive(self, capsys):
        error_json(
            capsys, EXIT_INVALID, "info", "--lattice", "K3", "--threads", "0"
        )


class TestInfo:
    def test_k3(self, capsys):
        doc = invoke_json(capsys, "info", "--lattice", "K3")
        assert doc["signature"] == [3, 19]
        assert doc["even"] is True
        assert doc["det"] == 1
        assert doc["det_signed"] == -1
        assert doc["rank"] == 22
        assert doc["discriminant_group"] == []
        assert doc["name"] == "K3"

    def test_e8(self, capsys):
        doc = invoke_json(capsys, "info", "--lattice", "E8")
        assert doc["signature"] == [8, 0]
        assert doc["det"] == 1

    def test_json_file(self, capsys, tmp_path):
        path = tmp_path / "a1a1.json"
        path.write_text(json.dumps({"gram": [[2, 0], [0, 4]]}))
        doc = invoke_json(capsys, "info", "--lattice", str(path))
        assert doc["signature"] == [2, 0]
        assert doc["discriminant_group"] == [2, 4]
        assert doc["discriminant_order"] == 8

    def test_missing_file(self, capsys):
        err = error_json(
            capsys, EXIT_FILE, "info", "--lattice", "/no/such/file.json"
        )
        assert err["type"] == "FileTrouble"

    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        error_json(capsys, EXIT_INVALID, "info", "--lattice", str(path))

    def test_unknown_builtin_is_file_trouble(self, capsys):
        # names outside the builtin table are treated as paths
        err = error_json(capsys, EXIT_FILE, "info", "--lattice", "E9")
        assert err["type"] == "FileTrouble"

    def test_determinism(self, capsys):
        _, out1, _ = invoke(capsys, "info", "--lattice", "K3")
        _, out2, _ = invoke(capsys, "info", "--lattice", "K3")
        assert out1 == out2

    def test_threads_do_not_change_output(self, capsys):
        _, out1, _ = invoke(capsys, "info", "--lattice", "E8")
        _, out4, _ = invoke(capsys, "info", "--lattice", "E8", "--threads", "4")
        assert out1 == out4

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "out.json"
        code, out, _ = invoke(
            capsys, "info", "--lattice", "A1", "--output", str(path)
        )
        assert code == EXIT_OK
        assert out == ""
        assert json.loads(path.read_text())["signature"] == [1, 0]

    def test_unwritable_output(self, capsys):
        err = error_json(
            capsys,
            EXIT_FILE,
            "info",
            "--lattice",
            "A1",
            "--output",
            "/no/such/dir/out.json",
        )
        assert err["type"] == "FileTrouble"


class TestCount:
    def test_e8_roots(self, capsys):
        doc = invoke_json(capsys, "count", "--lattice", "E8", "--t", "2")
        assert doc["count"] == 240
        assert doc["t"] == "2"

    def test_negative_target(self, capsys):
        doc = invoke_json(capsys, "count", "--lattice", "A1", "--t", "-2")
        assert doc["count"] == 0

    def test_coset(self, capsys):
        doc = invoke_json(
            capsys, "count", "--lattice", "A1", "--t", "1/2", "--h", "1/2"
        )
        assert doc["count"] == 2
        assert doc["h"] == ["1/2"]

    def test_indefinite_rejected(self, capsys):
        err = error_json(capsys, EXIT_INVALID, "count", "--lattice", "H", "--t", "2")
        assert err["type"] == "IndefiniteLattice"

    def test_bad_target(self, capsys):
        error_json(capsys, EXIT_INVALID, "count", "--lattice", "A1", "--t", "two")


class TestTheta:
    def test_a1_series(self, capsys):
        doc = invoke_json(capsys, "theta", "--lattice", "A1", "--bound", "8")
        assert doc["weight"] == "1/2"
        assert doc["coeffs"] == [["0", "1"], ["2", "2"], ["8", "2"]]

    def test_value_and_transform(self, capsys):
        doc = invoke_json(
            capsys,
            "theta",
            "--lattice",
            "A1",
            "--bound",
            "40",
            "--tau",
            "0",
            "2",
            "--check-transform",
        )
        assert doc["tau"] == [0.0, 2.0]
        assert doc["theta_value_tol"] >= 0
        assert doc["transform_residual"] <= doc["transform_residual_tol"]

    def test_transform_needs_tau(self, capsys):
        error_json(
            capsys,
            EXIT_INVALID,
            "theta",
            "--lattice",
            "A1",
            "--check-transform",
        )


class TestGaussMilgram:
    def test_gauss_value(self, capsys):
        doc = invoke_json(
            capsys, "gauss", "--lattice", "A1", "--a", "1", "--c", "2"
        )
        assert doc["rank"] == 1
        assert len(doc["value"]) == 2
        assert doc["value_tol"] == 1e-9

    def test_bad_modulus(self, capsys):
        err = error_json(
            capsys, EXIT_INVALID, "gauss", "--lattice", "A1", "--a", "1", "--c", "0"
        )
        assert err["type"] == "InvalidModulus"

    def test_milgram_a1(self, capsys):
        doc = invoke_json(capsys, "milgram", "--lattice", "A1")
        assert doc["signature_mod8"] == 1
        assert doc["agrees"] is True
        assert doc["error"] <= doc["error_tol"]

    def test_milgram_k3(self, capsys):
        doc = invoke_json(capsys, "milgram", "--lattice", "K3")
        assert doc["signature_mod8"] == (3 - 19) % 8
        assert doc["agrees"] is True


class TestClifford:
    def test_square_of_generator(self, capsys):
        doc = invoke_json(
            capsys,
            "clifford",
            "--lattice",
            "A1",
            "--element",
            "e{1}",
            "--times",
            "e{1}",
        )
        assert doc["parity"] == "odd"
        assert doc["product"] == "2*e{}"

    def test_involution_and_scalar(self, capsys):
        doc = invoke_json(
            capsys,
            "clifford",
            "--lattice",
            "E8",
            "--element",
            "3*e{} + 2*e{1,2}",
            "--involution",
        )
        assert doc["parity"] == "even"
        assert doc["scalar_part"] == "3"
        # reversal sends e1e2 to e2e1 = -e1e2 (orthogonal generators)
        assert doc["involution"] == "3*e{} - 2*e{1,2}"

    def test_scalar_trace(self, capsys):
        doc = invoke_json(
            capsys, "clifford", "--lattice", "A1", "--element", "3*e{}"
        )
        assert doc["trace"] == "6"
        assert doc["parity"] == "even"

    def test_invert(self, capsys):
        doc = invoke_json(
            capsys,
            "clifford",
            "--lattice",
            "A1",
            "--element",
            "e{1}",
            "--invert",
        )
        assert doc["inverse"] == "1/2*e{1}"

    def test_zero_not_invertible(self, capsys):
        err = error_json(
            capsys,
            EXIT_INVALID,
            "clifford",
            "--lattice",
            "A1",
            "--element",
            "0*e{}",
            "--invert",
        )
        assert err["type"] == "NotInvertible"

    def test_parse_error(self, capsys):
        error_json(
            capsys,
            EXIT_INVALID,
            "clifford",
            "--lattice",
            "A1",
            "--element",
            "e{1} e{1}",
        )


class TestKugaSatake:
    def test_default_splitting(self, capsys, tmp_path):
        path = tmp_path / "onetwo.json"
        path.write_text(
            json.dumps({"gram": [[2, 0, 0], [0, -2, 0], [0, 0, -2]]})
        )
        doc = invoke_json(
            capsys,
            "ks",
            "--lattice",
            str(path),
            "--z1",
            "0,1,0",
            "--z2",
            "0,0,1",
        )
        assert doc["j_square"] == "-4"
        assert doc["alternating_ok"] is True
        assert doc["symmetric_ok"] is True
        assert doc["definite"] is True
        assert doc["torus_dim"] == 8
        assert doc["complex_dim"] == 4
        assert doc["special_endo_rank"] == 1
        assert doc["special_endo_gram"] == [[2]]

    def test_explicit_splitting(self, capsys, tmp_path):
        path = tmp_path / "onetwo.json"
        path.write_text(
            json.dumps({"gram": [[2, 0, 0], [0, -2, 0], [0, 0, -2]]})
        )
        doc = invoke_json(
            capsys,
            "ks",
            "--lattice",
            str(path),
            "--z1",
            "0,1,0",
            "--z2",
            "0,0,1",
            "--plus",
            "1,0,0",
            "--minus",
            "0,1,0",
            "--minus",
            "0,0,1",
        )
        assert doc["j_square"] == "-4"

    def test_minus_needs_two_vectors(self, capsys, tmp_path):
        path = tmp_path / "onetwo.json"
        path.write_text(
            json.dumps({"gram": [[2, 0, 0], [0, -2, 0], [0, 0, -2]]})
        )
        error_json(
            capsys,
            EXIT_INVALID,
            "ks",
            "--lattice",
            str(path),
            "--z1",
            "0,1,0",
            "--z2",
            "0,0,1",
            "--minus",
            "0,1,0",
        )

    def test_positive_plane_rejected(self, capsys):
        err = error_json(
            capsys,
            EXIT_INVALID,
            "ks",
            "--lattice",
            "E8",
            "--z1",
            "1,0,0,0,0,0,0,0",
            "--z2",
            "0,1,0,0,0,0,0,0",
        )
        assert err["type"] == "NotNegativePlane"


class TestTransfer:
    @staticmethod
    def sqrt2_input(tmp_path):
        doc = {
            "field": {"poly": [-2, 0, 1], "integral_basis": [[1, 0], [0, 1]]},
            "gram": [
                [[0, 1], [0, 0]],
                [[0, 0], [0, 1]],
            ],
        }
        path = tmp_path / "m.json"
        path.write_text(json.dumps(doc))
        return path

    def test_admissible_example(self, capsys, tmp_path):
        path = self.sqrt2_input(tmp_path)
        doc = invoke_json(capsys, "transfer", "--input", str(path))
        assert doc["admissible"] is True
        assert doc["signature"] == [2, 2]
        assert doc["rank"] == 4
        assert doc["even"] is True
        assert sorted(map(tuple, doc["profile"])) == [(0, 2), (2, 0)]

    def test_output_feeds_other_subcommands(self, capsys, tmp_path):
        src = self.sqrt2_input(tmp_path)
        out = tmp_path / "trace.json"
        code, _, err = invoke(
            capsys, "transfer", "--input", str(src), "--output", str(out)
        )
        assert code == EXIT_OK, err
        doc = invoke_json(capsys, "info", "--lattice", str(out))
        assert doc["signature"] == [2, 2]

    def test_missing_input(self, capsys):
        error_json(capsys, EXIT_FILE, "transfer", "--input", "/no/file.json")

    def test_invalid_shape(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"field": {"poly": [-2, 0, 1]}}))
        error_json(capsys, EXIT_INVALID, "transfer", "--input", str(path))


class TestTable:
    def test_matches_golden(self, capsys):
        code, out, _ = invoke(capsys, "table")
        assert code == EXIT_OK
        with open("tests/data/feasibility_table.csv", encoding="utf-8") as fh:
            assert out == fh.read()

    def test_header(self, capsys):
        _, out, _ = invoke(capsys, "table")
        assert out.splitlines()[0] == "d,m,N"
