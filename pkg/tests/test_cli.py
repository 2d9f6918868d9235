import json
from fractions import Fraction as F

import pytest

from genmeans import MatrixWindow, RATIONAL, SequenceWindow, identity
from genmeans.cli import main
from genmeans.serialize import (
    canonical_number_from_json,
    matrix_to_json,
    sequence_from_json,
    sequence_to_json,
)


@pytest.fixture
def ones_file(tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps(sequence_to_json(SequenceWindow((F(1),) * 16, "zero"))))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_transform_pipeline_smoke(tmp_path, capsys, ones_file):
    out_path = tmp_path / "y.json"
    code = main(["transform", "--preset", "euler", "--alpha", "0.5", "--m", "2",
                 "--n", "16", "--input", ones_file, "--output", str(out_path)])
    assert code == 0
    report = json.loads(out_path.read_text())
    assert len(report["result"]["sequence"]["values"]) == 16
    assert report["backend"] == "rational"
    assert len(report["job_hash"]) == 64


def test_transform_then_inverse_round_trip(tmp_path, capsys, ones_file):
    y_path = tmp_path / "y.json"
    code = main(["transform", "--preset", "euler", "--alpha", "1/2", "--n", "16",
                 "--input", ones_file, "--output", str(y_path)])
    assert code == 0
    report = json.loads(y_path.read_text())
    seq_doc = report["result"]["sequence"]
    x_path = tmp_path / "y_seq.json"
    x_path.write_text(json.dumps(seq_doc))
    code, out = run(capsys, "inverse-transform", "--preset", "euler", "--alpha", "1/2",
                    "--n", "16", "--input", str(x_path))
    assert code == 0
    back = sequence_from_json(json.loads(out)["result"]["sequence"])
    assert back.values == (F(1),) * 16


def test_norm_command(capsys, ones_file):
    code, out = run(capsys, "norm", "--n", "16", "--m", "1", "--input", ones_file)
    assert code == 0
    result = json.loads(out)["result"]["norm"]
    assert result["value"] == {"num": "1", "den": "1"}
    assert result["arg_index"] == 0


def test_basis_command(capsys):
    code, out = run(capsys, "basis", "--j", "3", "--preset", "euler", "--alpha", "1/2",
                    "--n", "8")
    assert code == 0
    result = json.loads(out)["result"]
    transformed = [canonical_number_from_json(v) for v in result["transformed"]["values"]]
    assert transformed == ["0/1"] * 3 + ["1/1"] + ["0/1"] * 4


def test_dual_command(tmp_path, capsys):
    a = SequenceWindow((F(1), F(2)) + (F(0),) * 14, "zero")
    path = tmp_path / "a.json"
    path.write_text(json.dumps(sequence_to_json(a)))
    code, out = run(capsys, "dual", "--dual", "beta", "--space", "c0",
                    "--input", str(path), "--n", "16")
    assert code == 0
    assert json.loads(out)["result"]["verdict"]["status"] == "satisfied"


def test_chi_command_with_supplied_associate(tmp_path, capsys):
    # serialization drops row generators, so a structural file only bounds the
    # gauge from its stored window: values reported, status honest
    path = tmp_path / "atilde.json"
    path.write_text(json.dumps(matrix_to_json(identity(8).to_window())))
    code, out = run(capsys, "chi", "--atilde", str(path), "--target", "c0", "--n", "8")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["chi"]["lower"] == {"num": "1", "den": "1"}
    assert result["chi"]["status"] == "indeterminate"
    assert result["compactness"]["status"] == "indeterminate"
    # the same job under --strict signals the indeterminate verdict
    assert main(["chi", "--atilde", str(path), "--target", "c0", "--n", "8",
                 "--strict"]) == 3


def test_chi_command_zero_tail_matrix(tmp_path, capsys):
    A = MatrixWindow(((F(1), F(2), F(0), F(0)), (F(0), F(1), F(0), F(0))), "zero")
    path = tmp_path / "A.json"
    path.write_text(json.dumps(matrix_to_json(A)))
    code, out = run(capsys, "chi", "--matrix", str(path), "--target", "c0", "--n", "4")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["chi"]["lower"] == {"num": "0", "den": "1"}
    assert result["chi"]["status"] == "exact"
    assert result["compactness"]["status"] == "satisfied"


def test_chi_command_uv_preset(tmp_path, capsys):
    A = MatrixWindow(((F(1), F(0), F(1)), (F(0), F(2), F(0))), "zero")
    path = tmp_path / "A.json"
    path.write_text(json.dumps(matrix_to_json(A)))
    code, out = run(capsys, "chi", "--preset", "uv", "--u", "ones", "--v", "ones",
                    "--matrix", str(path), "--target", "c0", "--n", "8")
    assert code == 0
    result = json.loads(out)["result"]
    assert {"lower", "upper", "status"} <= set(result["chi"])
    assert result["compactness"]["status"] == "satisfied"


def test_params_file_input(tmp_path, capsys, ones_file):
    from genmeans import identity_triple
    from genmeans.serialize import params_to_json

    p = identity_triple(16, m=1)
    params_path = tmp_path / "params.json"
    params_path.write_text(json.dumps(params_to_json(p)))
    code, out = run(capsys, "norm", "--params", str(params_path), "--input", ones_file)
    assert code == 0
    assert json.loads(out)["result"]["norm"]["value"] == {"num": "1", "den": "1"}


def test_matclass_command(tmp_path, capsys):
    A = MatrixWindow(((F(1), F(0), F(2), F(0)),), "zero")
    path = tmp_path / "A.json"
    path.write_text(json.dumps(matrix_to_json(A)))
    code, out = run(capsys, "matclass", "--matrix", str(path), "--source", "l_inf",
                    "--target", "c0", "--n", "4")
    assert code == 0
    report = json.loads(out)["result"]
    assert report["overall"]["status"] == "satisfied"
    assert set(report["conditions"]) == {"4.18", "4.19"}


def test_selftest_command(capsys):
    code, out = run(capsys, "selftest")
    assert code == 0
    assert json.loads(out)["result"]["passed"] is True


def test_validation_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"values": []}))  # missing tail
    code = main(["transform", "--n", "4", "--input", str(path)])
    assert code == 2


def test_malformed_json_exit_code(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["transform", "--n", "4", "--input", str(path)]) == 2


def test_strict_indeterminate_exit_code(tmp_path):
    a_path = tmp_path / "a.json"
    a_path.write_text(json.dumps(
        sequence_to_json(SequenceWindow((F(1),) * 8, "unknown"))))
    code = main(["dual", "--dual", "beta", "--input", str(a_path), "--n", "8",
                 "--strict"])
    assert code == 3
    assert main(["dual", "--dual", "beta", "--input", str(a_path), "--n", "8"]) == 0


def test_csv_json_value_agreement(tmp_path, capsys, ones_file):
    json_out = tmp_path / "y.json"
    csv_out = tmp_path / "y.csv"
    args = ["transform", "--preset", "euler", "--alpha", "1/2", "--n", "16",
            "--input", ones_file]
    assert main(args + ["--output", str(json_out)]) == 0
    assert main(args + ["--format", "csv", "--output", str(csv_out)]) == 0
    report = json.loads(json_out.read_text())
    json_values = [canonical_number_from_json(v)
                   for v in report["result"]["sequence"]["values"]]
    csv_lines = [line for line in csv_out.read_text().splitlines()
                 if line and not line.startswith("#")][1:]
    csv_values = [line.split(",")[1] for line in csv_lines]
    assert csv_values == json_values


def test_csv_rejected_for_nested_reports(tmp_path, ones_file):
    assert main(["norm", "--n", "16", "--input", ones_file, "--format", "csv"]) == 2


def test_float_backend_flag(capsys, tmp_path):
    x = SequenceWindow((1.0,) * 8, "zero")
    path = tmp_path / "x.json"
    path.write_text(json.dumps(sequence_to_json(x)))
    code, out = run(capsys, "transform", "--preset", "euler", "--alpha", "0.5",
                    "--n", "8", "--scalar", "f64", "--input", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["backend"] == "float"
    assert isinstance(report["result"]["sequence"]["values"][0], str)
