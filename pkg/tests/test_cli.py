import json

import numpy as np
import pytest

from conftest import GOLDEN_W
from fusionframes import io
from fusionframes.cli import main
from fusionframes.complements import naimark_complement, spatial_complement
from fusionframes.model import FusionFrame, fusion_frame_operator
from fusionframes.testing import random_fusion_frame, random_parseval_frame

SPEC_DOC = '{"lambdas": ["11/4", "11/4", "10/4"], "num_subspaces": 8, "subspace_dim": 1}\n'


@pytest.fixture
def golden(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(SPEC_DOC)
    out, mat = tmp_path / "ff.json", tmp_path / "W.csv"
    assert main(["construct", "--spectrum", str(spec), "--out", str(out), "--matrix", str(mat)]) == 0
    return out, mat


def test_construct_writes_golden_matrix(golden):
    out, mat = golden
    np.testing.assert_allclose(io.load_matrix(mat), GOLDEN_W, atol=1e-12, rtol=0)
    ff = io.load_frame(out)
    assert len(ff) == 8


def test_construct_prints_matrix_without_matrix_flag(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(SPEC_DOC)
    assert main(["construct", "--spectrum", str(spec), "--out", str(tmp_path / "o.json")]) == 0
    np.testing.assert_allclose(io.matrix_from_text(capsys.readouterr().out), GOLDEN_W, atol=1e-12)


def test_construct_infeasible(tmp_path, capsys):
    spec = tmp_path / "bad.json"
    spec.write_text('{"lambdas": [1.5, 1.5, 1], "num_subspaces": 4, "subspace_dim": 1}')
    assert main(["construct", "--spectrum", str(spec), "--out", str(tmp_path / "o.json")]) == 2
    assert "lambda_M >= 2" in capsys.readouterr().err
    spec.write_text('{"lambdas": [2, 1], "num_subspaces": 2, "subspace_dim": 2}')
    assert main(["construct", "--spectrum", str(spec), "--mode", "integer", "--out", str(tmp_path / "o.json")]) == 2
    assert "fac" in capsys.readouterr().err


def test_construct_integer_and_frame_modes(tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text('{"lambdas": [2, 1, 1], "num_subspaces": 2, "subspace_dim": 2}')
    out = tmp_path / "o.json"
    assert main(["construct", "--spectrum", str(spec), "--mode", "integer", "--out", str(out),
                 "--matrix", str(tmp_path / "W.csv")]) == 0
    np.testing.assert_allclose(fusion_frame_operator(io.load_frame(out)), np.diag([2.0, 1.0, 1.0]))
    # frame mode needs m = 1
    assert main(["construct", "--spectrum", str(spec), "--mode", "frame", "--out", str(out)]) == 2


def test_verify_prints_spectrum(golden, capsys):
    out, _ = golden
    capsys.readouterr()
    assert main(["verify", "--frame", str(out)]) == 0
    text = capsys.readouterr().out
    assert "spectrum: 2.75 2.75 2.5" in text
    assert main(["verify", "--frame", str(out), "--json"]) == 0
    d = json.loads(capsys.readouterr().out)
    np.testing.assert_allclose(d["spectrum"], [2.75, 2.75, 2.5], atol=1e-9)
    assert d["is_fusion_frame"] and not d["is_tight"]


def test_verify_exit_3_when_not_spanning(tmp_path):
    p = tmp_path / "line.json"
    io.save_frame(FusionFrame.from_bases([np.eye(2)[:, [0]]]), p)
    assert main(["verify", "--frame", str(p)]) == 3


def test_io_errors_exit_1(tmp_path, capsys):
    assert main(["verify", "--frame", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"ambient_dim": 2, "subspaces": [{"weight": 1, "basis": [[1, 1]]}]}')
    assert main(["verify", "--frame", str(bad)]) == 1
    assert "basis" in capsys.readouterr().err


def test_spatial_complement_cli(tmp_path, capsys):
    line = np.eye(2)[:, [0]]
    p = tmp_path / "same.json"
    io.save_frame(FusionFrame.from_bases([line, line]), p)
    assert main(["complement", "spatial", "--frame", str(p), "--out", str(tmp_path / "c.json")]) == 2
    assert "share a nonzero vector" in capsys.readouterr().err

    ff = random_fusion_frame(np.random.default_rng(2), 3, 4)
    io.save_frame(ff, p)
    assert main(["complement", "spatial", "--frame", str(p), "--out", str(tmp_path / "c.json")]) == 0
    assert io.frame_to_text(io.load_frame(tmp_path / "c.json")) == io.frame_to_text(spatial_complement(ff))


def test_naimark_cli_matches_library(tmp_path, capsys):
    pff = random_parseval_frame(np.random.default_rng(4), 3)
    p, out = tmp_path / "p.json", tmp_path / "n.json"
    io.save_frame(pff, p)
    assert main(["complement", "naimark", "--frame", str(p), "--out", str(out)]) == 0
    expected = naimark_complement(io.load_frame(p)).frame
    assert out.read_text() == io.frame_to_text(expected)
    io.save_frame(FusionFrame.from_bases([np.eye(2)[:, [0]]], weights=[2.0]), p)
    assert main(["complement", "naimark", "--frame", str(p), "--out", str(out)]) == 2
    assert "tight" in capsys.readouterr().err


def test_complete_tight_cli(golden, tmp_path, capsys):
    out, _ = golden
    added, combined = tmp_path / "a.json", tmp_path / "c.json"
    capsys.readouterr()
    assert main(["complete", "tight", "--frame", str(out), "--out-added", str(added),
                 "--out-combined", str(combined)]) == 0
    text = capsys.readouterr().out
    assert "A = 5" in text and "added = 7" in text
    S = fusion_frame_operator(io.load_frame(combined))
    assert np.max(np.abs(S - 5 * np.eye(3))) <= 1e-9
    assert len(io.load_frame(added)) == 7


def test_complete_tight_explicit_and_infeasible(tmp_path, capsys):
    p = tmp_path / "f.json"
    io.save_frame(FusionFrame.from_bases([np.eye(2)[:, [0]], np.eye(2)[:, [1]]]), p)
    args = ["complete", "tight", "--frame", str(p), "--out-added", str(tmp_path / "a.json"),
            "--out-combined", str(tmp_path / "c.json")]
    assert main(args + ["--A", "3"]) == 0
    assert len(io.load_frame(tmp_path / "a.json")) == 4
    planes = [np.eye(3)[:, :2]] * 5 + [np.eye(3)[:, [0, 2]]]
    io.save_frame(FusionFrame.from_bases(planes), p)
    assert main(args) == 2
    assert "mu_above_count" in capsys.readouterr().err
    assert main(args + ["--search"]) == 0


def test_complete_shifts_cli(tmp_path):
    ff = random_fusion_frame(np.random.default_rng(1), 3, 2, [1, 2])
    p, out = tmp_path / "f.json", tmp_path / "s.json"
    io.save_frame(ff, p)
    assert main(["complete", "shifts", "--frame", str(p), "--out", str(out)]) == 0
    S = fusion_frame_operator(io.load_frame(out))
    np.testing.assert_allclose(S, 3 * np.eye(3), atol=1e-9)


def test_reconstruct_cli(golden, tmp_path, capsys):
    out, _ = golden
    sig = tmp_path / "f.csv"
    io.save_vector([1.5, -2.0, 0.25], sig)
    capsys.readouterr()
    for extra in ([], ["--reduced"]):
        assert main(["reconstruct", "--frame", str(out), "--signal", str(sig)] + extra) == 0
        lines = capsys.readouterr().out.splitlines()
        np.testing.assert_allclose(io.vector_from_text(lines[0]), [1.5, -2.0, 0.25], atol=1e-12)
        assert float(lines[1].split(":")[1]) <= 1e-12
    io.save_vector([1.0, 2.0], sig)
    assert main(["reconstruct", "--frame", str(out), "--signal", str(sig)]) == 1


def test_tol_flag_is_applied(tmp_path):
    # a basis that is orthonormal only to 1e-6 loads when the tolerance is relaxed
    p = tmp_path / "f.json"
    p.write_text('{"ambient_dim": 2, "subspaces": [{"weight": 1, "basis": [[1.000001, 0]]}, '
                 '{"weight": 1, "basis": [[0, 1]]}]}')
    assert main(["verify", "--frame", str(p)]) == 1
    assert main(["--tol", "1e-5", "verify", "--frame", str(p)]) == 0


def test_module_entry_point(tmp_path):
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-m", "fusionframes", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "construct" in r.stdout
