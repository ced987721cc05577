import json
import subprocess
import sys

import pytest

from alcovetorsion.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_detect_e6_p5(capsys):
    code, out, _ = run(capsys, "detect", "--type", "E6", "--prime", "5")
    assert code == 0
    data = json.loads(out)
    assert data["delta_verdict"] is True
    assert data["delta_witness"] == {"k": 0, "degree": 1}


def test_complex_dot_e7(capsys):
    code, out, _ = run(capsys, "complex", "--type", "E7", "--prime", "7", "-k", "0", "--format", "dot")
    assert code == 0
    assert "1 -- 8;" in out and "7 -- 8;" in out
    assert out.count("--") == 2


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--max-rank", "2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 14
    assert all(line.startswith("[PASS]") for line in lines[:13])


@pytest.mark.parametrize(
    "argv",
    [
        ("complex", "--type", "E6", "--prime", "4"),
        ("complex", "--type", "Q7"),
        ("facts",),
        ("series", "--type", "E7"),
        ("morse", "--type", "E7"),
        ("complex", "--type", "A2", "--prime", "3", "-k", "5"),
        ("verify",),
        ("facts", "--type", "A2", "--format", "csv"),
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_output_is_deterministic_and_written_to_file(tmp_path, capsys):
    argv = ["report", "--max-rank", "3", "--format", "csv"]
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b
    target = tmp_path / "scan.csv"
    assert main(argv + ["--out", str(target)]) == 0
    assert target.read_text() == a[1]


def test_parallel_report_matches_serial(capsys):
    serial = run(capsys, "report", "--max-rank", "3")
    parallel = run(capsys, "report", "--max-rank", "3", "--jobs", "2")
    assert serial == parallel


@pytest.mark.parametrize(
    "argv, needle",
    [
        (("facts", "--type", "Spin(10)"), '"weyl_order": 1920'),
        (("homology", "--type", "A1", "--m", "2"), "H_0 = Z ⊕ Z/2"),
        (("homology", "--type", "D5", "--prime", "3", "--format", "json"), '"reduced": true'),
        (("series", "--type", "A1", "--m", "2", "--truncate", "4"), "A1 m=2: 1 + t^2"),
        (("morse", "--type", "Spin(10)", "--prime", "3", "--format", "text"), "collapses to vertex 6"),
        (("complex", "--type", "A2", "--prime", "3", "--format", "csv"), "A2,3,0,0,3,3"),
        (("detect", "--type", "G2", "--format", "csv"), "G2,G2,3,true"),
    ],
)
def test_verbs(capsys, argv, needle):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert needle in out


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "alcovetorsion", "facts", "--type", "G2", "--format", "text"],
        capture_output=True, text=True, check=True,
    )
    assert "weyl_order: 12" in out.stdout
