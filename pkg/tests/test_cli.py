from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from z2z4steg.cli import main, parse_range
from z2z4steg.codes import Z2Z4ParityCheck
from z2z4steg.pgm import PGMImage, write_pgm


@pytest.fixture()
def cover(tmp_path):
    path = tmp_path / "cover.pgm"
    grid = (np.add.outer(np.arange(64), np.arange(56)) * 3) % 256
    write_pgm(path, PGMImage(56, 64, 255, grid.reshape(-1)))
    return path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("scheme", ["f5", "z2z4", "kp", "z2z4-product"])
def test_embed_extract(tmp_path, cover, capsys, scheme):
    msg = tmp_path / "msg.bin"
    msg.write_bytes(b"syndrome coding")
    out = tmp_path / "stego.pgm"
    code, text, _ = run(capsys, "embed", "--scheme", scheme, "--m", "3", "--cover", str(cover), "--message", str(msg), "--out", str(out))
    assert code == 0 and json.loads(text)["message_bits"] == 120
    back = tmp_path / "back.bin"
    code, _, _ = run(capsys, "extract", "--scheme", scheme, "--m", "3", "--cover", str(out), "--length", "15", "--out", str(back))
    assert code == 0 and back.read_bytes() == b"syndrome coding"


def test_length_prefix(tmp_path, cover, capsys):
    msg, out, back = tmp_path / "m", tmp_path / "s.pgm", tmp_path / "b"
    msg.write_bytes(b"abc")
    args = ["--scheme", "z2z4", "--m", "3", "--length-prefix"]
    assert run(capsys, "embed", *args, "--cover", str(cover), "--message", str(msg), "--out", str(out))[0] == 0
    assert run(capsys, "extract", *args, "--cover", str(out), "--out", str(back))[0] == 0
    assert back.read_bytes() == b"abc"


def test_oversized_message(tmp_path, cover, capsys):
    msg, out = tmp_path / "big", tmp_path / "s.pgm"
    msg.write_bytes(bytes(100_000))
    code, _, err = run(capsys, "embed", "--scheme", "z2z4", "--m", "3", "--cover", str(cover), "--message", str(msg), "--out", str(out))
    assert code == 3 and "holds" in err
    assert not out.exists()


def test_parameter_errors(tmp_path, cover, capsys):
    assert run(capsys, "info", "--scheme", "z2z4", "--m", "3", "--delta", "2")[0] == 2
    assert run(capsys, "extract", "--scheme", "z2z4", "--m", "3", "--cover", str(cover))[0] == 2
    assert run(capsys, "extract", "--scheme", "z2z4", "--m", "3", "--cover", str(tmp_path / "missing.pgm"), "--length", "1")[0] == 2
    assert run(capsys, "simulate", "--scheme", "kp", "--m", "3", "--level", "inf")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--scheme", "lsb", "--m", "3"])
    assert exc.value.code == 2


def test_simulate_json(capsys):
    code, text, _ = run(capsys, "simulate", "--scheme", "z2z4", "--m", "3", "--trials", "2000", "--seed", "7")
    report = json.loads(text)
    assert code == 0 and report["verdict"] == "pass" and report["trials"] == 2000
    assert run(capsys, "simulate", "--scheme", "z2z4", "--m", "3", "--trials", "2000", "--seed", "7")[1] == text


def test_curves_csv(capsys):
    code, text, _ = run(capsys, "curves", "--scheme", "kp", "--m", "2..6", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 1 + 4 * 65
    assert all(float(r["e"]) <= 1 + 1e-9 for r in rows)
    code, text, _ = run(capsys, "curves", "--scheme", "ternary", "--m", "1,2,3", "--format", "json", "--samples", "0")
    assert [p["label"] for p in json.loads(text)] == [f"ternary-hamming(t={t})" for t in (3, 2, 1)]


def test_info(capsys):
    code, text, _ = run(capsys, "info", "--scheme", "z2z4", "--m", "3", "--dump-matrix")
    assert code == 0
    H = Z2Z4ParityCheck.loads(text)
    assert text.splitlines()[0] == "z2z4 m=3 delta=1 alpha=3 beta=2 gamma=1"
    assert H.code_type.n == 7
    code, text, _ = run(capsys, "info", "--scheme", "f5", "--m", "2", "--dump-matrix")
    assert text.split() == ["011", "101"]
    code, text, _ = run(capsys, "info", "--scheme", "kp", "--m", "3", "--level", "inf")
    assert json.loads(text)["CI"]["D"] == pytest.approx(7 / 46)


def test_parse_range():
    assert parse_range("2..4") == [2, 3, 4]
    assert parse_range("3") == [3]
    assert parse_range("2,5") == [2, 5]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "z2z4steg", "info", "--scheme", "z2z4-product", "--m", "3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["bits_per_block"] == 24
