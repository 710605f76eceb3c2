import json
import shutil

import pytest

from pcsample.cli import main
from pcsample.io import format_dimacs
from pcsample.logic import FeatureModel

from conftest import FIXTURES, RUNNING

MODEL = str(RUNNING / "tftp5.dimacs")


def manifest(capsys):
    err = capsys.readouterr().err
    return json.loads([l for l in err.splitlines() if l.startswith("{")][-1])


@pytest.fixture
def pcs_file(tmp_path, capsys):
    out = tmp_path / "pcs.tsv"
    assert main(["extract", str(FIXTURES / "tftp"), "-o", str(out)]) == 0
    capsys.readouterr()
    return out


def test_extract(pcs_file):
    formulas = {line.split("\t")[2] for line in pcs_file.read_text().splitlines()}
    assert formulas == {
        "1",
        "TFTP_GET || TFTP_PUT",
        "(TFTP_GET || TFTP_PUT) && TFTP",
        "(TFTP_GET || TFTP_PUT) && TFTP && TFTP_BLOCKSIZE",
        "(TFTP_GET || TFTP_PUT) && TFTP && TFTP_DEBUG",
    }


def test_extract_empty_and_missing(tmp_path, capsys):
    out = tmp_path / "o.tsv"
    (tmp_path / "empty").mkdir()
    assert main(["extract", str(tmp_path / "empty"), "-o", str(out)]) == 0
    assert out.read_text() == ""
    assert main(["extract", str(tmp_path / "nope"), "-o", str(out)]) == 1


def test_extract_partial(tmp_path, capsys):
    src = tmp_path / "src"
    shutil.copytree(FIXTURES / "tftp", src)
    (src / "broken.c").write_text("int x;\n#endif\n")
    out = tmp_path / "o.tsv"
    assert main(["extract", str(src), "-o", str(out)]) == 2
    assert "networking/tftp.c" in out.read_text()
    assert manifest(capsys)["errors"] == 1


def test_sample_then_coverage(tmp_path, pcs_file, capsys):
    out = tmp_path / "s.csv"
    assert main(["sample", "--model", MODEL, "--pcs", str(pcs_file), "--t", "2", "-o", str(out)]) == 0
    m = manifest(capsys)
    assert "extract" not in m["timings"] and {"preprocess", "sample"} <= set(m["timings"])
    assert len(out.read_text().splitlines()) - 1 <= 6
    assert main(["coverage", "--model", MODEL, "--pcs", str(pcs_file), "--sample", str(out)]) == 0
    assert "ratio: 1.000000" in capsys.readouterr().out


def test_sample_without_model_uses_pc_names(tmp_path, pcs_file, capsys):
    out = tmp_path / "s.csv"
    assert main(["sample", "--pcs", str(pcs_file), "-o", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "TFTP_GET,TFTP_PUT,TFTP,TFTP_BLOCKSIZE,TFTP_DEBUG"


def test_sample_fm_mode(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert main(["sample", "--model", MODEL, "--mode", "fm", "-o", str(out)]) == 0
    assert main(["coverage", "--model", MODEL, "--mode", "fm", "--sample", str(out)]) == 0
    assert "ratio: 1.000000" in capsys.readouterr().out


def test_sample_concrete_mode(tmp_path, capsys):
    model = FeatureModel(tuple("ABCDEFG"), ((-1, 4),))
    mpath = tmp_path / "m.dimacs"
    mpath.write_text(format_dimacs(model))
    pcs = tmp_path / "pcs.tsv"
    pcs.write_text("x.c\t1\tA && B\nx.c\t2\t!C\nx.c\t3\t1\n")
    out = tmp_path / "s.csv"
    assert main(["sample", "--model", str(mpath), "--pcs", str(pcs), "--mode", "concrete", "-o", str(out)]) == 0
    assert manifest(capsys)["universe"] == 6


def test_sample_cap_and_unsat(tmp_path, pcs_file, capsys):
    out = tmp_path / "s.csv"
    assert main(["sample", "--model", MODEL, "--pcs", str(pcs_file), "--interaction-cap", "5",
                 "-o", str(out)]) == 3
    assert "group" in capsys.readouterr().err
    dead = tmp_path / "dead.dimacs"
    dead.write_text("c 1 TFTP\np cnf 1 2\n1 0\n-1 0\n")
    assert main(["sample", "--model", str(dead), "--mode", "fm", "-o", str(out)]) == 1


def test_sample_grouped_by_file(tmp_path, capsys):
    pcs = tmp_path / "pcs.tsv"
    pcs.write_text("a/x.c\t1\tA\na/x.c\t2\tA && B\nb/y.c\t1\tC\nb/y.c\t2\t!D\n")
    out = tmp_path / "s.csv"
    assert main(["sample", "--pcs", str(pcs), "--group", "file", "-o", str(out)]) == 0
    assert manifest(capsys)["group"] == "file"


def test_coverage_incling(pcs_file, capsys):
    assert main(["coverage", "--model", MODEL, "--pcs", str(pcs_file),
                 "--sample", str(RUNNING / "incling.csv"), "--json"]) == 0
    out = capsys.readouterr().out
    assert "(TFTP_GET && TFTP && TFTP_BLOCKSIZE && !TFTP_DEBUG) || (TFTP_PUT && TFTP && TFTP_BLOCKSIZE && !TFTP_DEBUG)" in out
    assert "(TFTP_GET && TFTP && !TFTP_BLOCKSIZE && TFTP_DEBUG) || (TFTP_PUT && TFTP && !TFTP_BLOCKSIZE && TFTP_DEBUG)" in out
    data = json.loads(out.strip().splitlines()[-1])
    assert data["covered_interactions"] == 17


def test_coverage_input_errors(tmp_path, pcs_file, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("TFTP,TFTP_GET,WRONG,TFTP_DEBUG,TFTP_BLOCKSIZE\n+,+,+,+,+\n")
    assert main(["coverage", "--model", MODEL, "--pcs", str(pcs_file), "--sample", str(bad)]) == 1
    assert "WRONG" in capsys.readouterr().err
    bad.write_text("TFTP,TFTP_GET,TFTP_PUT,TFTP_DEBUG,TFTP_BLOCKSIZE\n+,+,+\n")
    assert main(["coverage", "--model", MODEL, "--pcs", str(pcs_file), "--sample", str(bad)]) == 1


def test_faults(tmp_path, capsys):
    faults = str(RUNNING / "faults.tsv")
    assert main(["faults", "--sample", str(RUNNING / "presice.csv"), "--faults", faults]) == 0
    assert "blksize-undeclared\tYes" in capsys.readouterr().out
    assert main(["faults", "--sample", str(RUNNING / "incling.csv"), "--model", MODEL, "--faults", faults]) == 0
    out = capsys.readouterr().out
    assert "blksize-undeclared\tNo" in out and "No: 1" in out


def test_faults_empty_and_unknown(tmp_path, capsys):
    empty = tmp_path / "f.tsv"
    empty.write_text("")
    assert main(["faults", "--sample", str(RUNNING / "incling.csv"), "--faults", str(empty)]) == 0
    out = capsys.readouterr().out
    assert "Yes: 0" in out and "No: 0" in out
    empty.write_text("f1\tTFTP && NOT_THERE\nf2\t!TFTP\n")
    assert main(["faults", "--sample", str(RUNNING / "incling.csv"), "--faults", str(empty)]) == 0
    assert "skipped: 1" in capsys.readouterr().out


def test_random(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["random", "--model", MODEL, "--n", "5", "--seed", "7", "-o", str(a)]) == 0
    assert main(["random", "--model", MODEL, "--n", "5", "--seed", "7", "-o", str(b)]) == 0
    assert len(a.read_text().splitlines()) == 6
    assert a.read_bytes() == b.read_bytes()


def test_random_constrained_rows_parse_back(tmp_path, busybox_model, capsys):
    mpath = tmp_path / "bb.dimacs"
    mpath.write_text(format_dimacs(busybox_model))
    out = tmp_path / "r.csv"
    assert main(["random", "--model", str(mpath), "--n", "50", "-o", str(out)]) == 0
    assert main(["coverage", "--model", str(mpath), "--mode", "fm", "--sample", str(out)]) == 0
    for row in out.read_text().splitlines()[1:]:
        cells = row.split(",")
        if cells[1] == "+":
            assert cells[5] == "+" and cells[6] == "+"
