import json
import subprocess
import sys

import pytest

from cyclat.cli import main
from cyclat.docio import (parse_document, parse_entry, parse_scalar_literal,
                          serialize_document, serialize_scalar)
from cyclat.errors import DocumentError

IDENTITY_DOC = json.dumps({
    "field": {"kind": "rational"},
    "basis": [["1", "0"], ["0", "1"]],
})

HEX_DOC = json.dumps({
    "field": {"kind": "quadratic", "D": 3},
    "basis": [["1", "0"], ["1/2", "0+1/2*sqrt(3)"]],
})

NON_WR_DOC = json.dumps({
    "field": {"kind": "rational"},
    "basis": [["1", "0"], ["0", "2"]],
})

NOT_STABLE_DOC = json.dumps({
    "field": {"kind": "rational"},
    "basis": [["3", "2"], ["2", "3"]],
})


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_entry_grammar_roundtrip():
    for text in ("0", "-3", "5/7", "2-1*sqrt(3)", "1/2+3/4*sqrt(5)",
                 "0+1*sqrt(2)"):
        x = parse_scalar_literal(text)
        assert serialize_scalar(x) == text


def test_entry_grammar_rejects():
    for text in ("1+sqrt(3)", "sqrt(3)", "1.5", "1 + 1*sqrt(3)", "--2",
                 "1+0*sqrt(3)", "1/0"):
        with pytest.raises(DocumentError):
            parse_scalar_literal(text)
    with pytest.raises(DocumentError):
        parse_entry("1+1*sqrt(2)", 3, "basis[0][0]")  # mismatched D
    with pytest.raises(DocumentError):
        parse_entry("1+1*sqrt(3)", None, "basis[0][0]")  # rational doc
    with pytest.raises(DocumentError):
        parse_scalar_literal("1+1*sqrt(12)")  # not squarefree


def test_document_roundtrip():
    lat, d = parse_document(HEX_DOC)
    assert d == 3 and lat.rank == 2
    canonical = serialize_document(lat, d)
    lat2, d2 = parse_document(canonical)
    assert d2 == 3
    assert serialize_document(lat2, d2) == canonical


def test_document_diagnostics_carry_position():
    bad = json.dumps({"field": {"kind": "rational"},
                      "basis": [["1", "0"], ["0", "x"]]})
    with pytest.raises(DocumentError) as err:
        parse_document(bad)
    assert "basis[1][1]" in str(err.value)


def test_canon_identity(tmp_path, capsys):
    doc = tmp_path / "z2.json"
    doc.write_text(IDENTITY_DOC)
    code, out, _ = run(["canon", "--lattice", str(doc)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["x"] == "0"
    assert payload["field"] == "Q"
    assert payload["wr"] is True
    assert payload["height_lo"] == "1.000000000000"


def test_canon_hexagonal(tmp_path, capsys):
    doc = tmp_path / "hex.json"
    doc.write_text(HEX_DOC)
    code, out, _ = run(["canon", "--lattice", str(doc)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["x"] == "2-1*sqrt(3)"
    assert payload["field"] == "Q(sqrt(3))"


def test_canon_not_wr_exits_2(tmp_path, capsys):
    doc = tmp_path / "stretched.json"
    doc.write_text(NON_WR_DOC)
    code, out, err = run(["canon", "--lattice", str(doc)], capsys)
    assert code == 2 and out == ""
    assert "refused" in err
    # the non-stable cyclic example is likewise not well-rounded
    doc.write_text(NOT_STABLE_DOC)
    code, _, _ = run(["canon", "--lattice", str(doc)], capsys)
    assert code == 2


def test_canon_malformed_exits_64(tmp_path, capsys):
    doc = tmp_path / "bad.json"
    doc.write_text('{"field": {"kind": "rational"}, "basis": [["1", "0"], ["0", "oops"]]}')
    code, _, err = run(["canon", "--lattice", str(doc)], capsys)
    assert code == 64
    assert "basis[1][1]" in err


def test_usage_error_exits_64(capsys):
    assert main(["count", "--field", "rational"]) == 64  # missing max-height
    capsys.readouterr()
    assert main(["nonsense"]) == 64
    capsys.readouterr()
    assert main(["count", "--field", "quad:12", "--max-height", "2"]) == 64
    capsys.readouterr()


def test_count_rational(capsys):
    code, out, _ = run(["count", "--field", "rational", "--max-height", "4"],
                       capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "T,count,bound_hi"
    assert lines[1].startswith("1,1,")
    assert lines[4].startswith("4,2,")
    # bound for T=1 is (pi/(2*sqrt(12)))(1 + 256 (2+sqrt(3))) ~ 433.68
    assert lines[1] == "1,1,433.69"


def test_count_quadratic(capsys):
    code, out, _ = run(["count", "--field", "quad:2", "--max-height", "1"],
                       capsys)
    assert code == 0
    assert out.splitlines()[1].startswith("1,1,")


def test_classes(capsys):
    code, out, _ = run(["classes", "--field", "rational", "--max-height", "4",
                        "--positive-only"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,h_lo,h_hi"
    assert lines[1].split(",")[0] == "0"
    assert lines[2].split(",")[0] == "1/4"
    assert len(lines) == 3


def test_root_report(capsys):
    code, out, _ = run(["root-report", "--max-n", "4"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == ("family,n,dual,det_gram,kissing,is_cyclic,"
                        "simple_status,certificate")
    d4 = [l for l in lines if l.startswith("D,4,false")][0]
    assert "none_within_bound" in d4 and d4.endswith("-")
    a3 = [l for l in lines if l.startswith("A,3,false")][0]
    assert "simple" in a3


def test_census(capsys):
    code, out, _ = run(["census", "--n", "2", "--max-index", "2"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,index,hnf_columns,is_cyclic,is_simple,generator"
    assert len(lines) == 3  # Z^2 and the even-sum sublattice
    assert main(["census", "--n", "7", "--max-index", "2"]) == 65


def test_nf(capsys):
    code, out, _ = run(["nf", "--cyclotomic", "8"], capsys)
    assert code == 0
    row = out.strip().split("\n")[1].split(",")
    assert row[0] == "Q(zeta_8)" and row[2] == "false"
    code, out, _ = run(["nf", "--quad", "5"], capsys)
    row = out.strip().split("\n")[1].split(",")
    assert row[2] == "true" and row[4] == "true" and row[6] == "false"
    assert main(["nf", "--cyclotomic", "17", "--quad", "5"]) == 64
    capsys.readouterr()
    assert main(["nf", "--cyclotomic", "23"]) == 65  # phi(23) = 22 > 16
    capsys.readouterr()


def test_detcheck(capsys):
    code, out, _ = run(["detcheck", "--c", "1,1,0"], capsys)
    assert code == 0
    assert out.strip().split("\n")[1] == "2,2,ok"


def test_determinism_byte_identical(tmp_path, capsys):
    doc = tmp_path / "hex.json"
    doc.write_text(HEX_DOC)
    fixtures = [
        ["canon", "--lattice", str(doc)],
        ["count", "--field", "rational", "--max-height", "3"],
        ["classes", "--field", "quad:5", "--max-height", "3"],
        ["root-report", "--max-n", "3"],
        ["census", "--n", "2", "--max-index", "6"],
        ["nf", "--cyclotomic", "5"],
        ["detcheck", "--c", "2,1,0,1"],
    ]
    for args in fixtures:
        code1, out1, _ = run(args, capsys)
        code2, out2, _ = run(args, capsys)
        assert code1 == code2 == 0
        assert out1 == out2 and out1


def test_output_file_lf(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code = main(["census", "--n", "2", "--max-index", "3",
                 "--output", str(target)])
    assert code == 0
    data = target.read_bytes()
    assert b"\r" not in data and data.endswith(b"\n")


def test_plot_files(tmp_path, capsys):
    png = tmp_path / "counts.png"
    code = main(["count", "--field", "rational", "--max-height", "3",
                 "--output", str(tmp_path / "c.csv"), "--plot", str(png)])
    assert code == 0
    assert png.exists() and png.stat().st_size > 0
    png2 = tmp_path / "census.png"
    assert main(["census", "--n", "2", "--max-index", "5",
                 "--output", str(tmp_path / "x.csv"), "--plot", str(png2)]) == 0
    assert png2.exists()
    png3 = tmp_path / "roots.png"
    assert main(["root-report", "--max-n", "3",
                 "--output", str(tmp_path / "r.csv"), "--plot", str(png3)]) == 0
    assert png3.exists()


def test_console_script_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "cyclat.cli", "detcheck", "--c", "1,1"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip().split("\n")[1] == "0,0,ok"
