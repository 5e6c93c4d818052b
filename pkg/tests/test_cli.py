import json

import pytest

from poset_entropy.cli import main
from poset_entropy.fileformat import parse_posets


@pytest.fixture
def ex1_file(tmp_path, example1):
    from poset_entropy.fileformat import serialize_poset

    f = tmp_path / "ex1.poset"
    f.write_text(serialize_poset(example1))
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_entropy(capsys, ex1_file):
    code, out = run(capsys, "entropy", "--poset", ex1_file, "--format", "json-lines", "--verify")
    rec = json.loads(out.out)
    assert code == 0 and rec["entropy_exact"] == "1" and rec["fw_agrees"]


def test_linext_all(capsys, ex1_file):
    code, out = run(capsys, "linext", "--poset", ex1_file, "--method", "all", "--format", "json-lines")
    rec = json.loads(out.out)
    assert code == 0 and rec["auto"] == 13 and rec["agree"]


def test_intervals_tsv(capsys, ex1_file):
    code, out = run(capsys, "intervals", "--poset", ex1_file, "--format", "tsv")
    rows = out.out.strip().split("\n")
    assert rows[0] == "element\tchain\tlo\thi\tlength" and len(rows) == 7
    assert "a\tA\t0\t1/3\t1/3" in rows


def test_epochs_and_phantoms(capsys, ex1_file):
    code, out = run(capsys, "epochs", "--poset", ex1_file, "--format", "json-lines")
    assert code == 0 and len(out.out.strip().split("\n")) == 3
    code, out = run(capsys, "phantoms", "--poset", ex1_file, "--format", "json-lines")
    recs = [json.loads(x) for x in out.out.strip().split("\n")]
    assert {frozenset((r["u"], r["v"])) for r in recs[:-1]} == {frozenset("db"), frozenset("ec")}
    assert recs[-1]["Q_equals_P"] is True


def test_verify_bound(capsys, ex1_file):
    code, out = run(capsys, "verify-bound", "--poset", ex1_file, "--precision", "128")
    assert code == 0 and "ok" in out.out


def test_sweep_tsv(capsys, tmp_path):
    dest = tmp_path / "sweep.tsv"
    code, _ = run(capsys, "sweep", "--n-max", "5", "--workers", "2", "--out", str(dest))
    rows = dest.read_text().strip().split("\n")
    assert code == 0
    assert rows[0] == "id\tn\tlhs\tlog_e\tkappa2\tslack2\tslack3\ttight\tcase"
    assert len(rows) == 1 + 1 + 2 + 4 + 10 + 26


def test_sweep_parallel_matches_sequential(capsys):
    _, a = run(capsys, "sweep", "--n-max", "6", "--random", "10", "--seed", "4")
    _, b = run(capsys, "sweep", "--n-max", "6", "--random", "10", "--seed", "4", "--workers", "3")
    assert a.out == b.out


def test_edge_removal(capsys):
    code, out = run(capsys, "edge-removal", "--psi", "5", "--omega", "2", "--format", "json-lines")
    assert code == 0 and json.loads(out.out)["overlap"] == "1/10"
    code, out = run(capsys, "edge-removal", "--psi", "7", "--omega", "5", "--format", "json-lines")
    rec = json.loads(out.out)
    assert code == 1 and rec["check_M"] is False and rec["check_M_forward"] is True


def test_sort_sim(capsys, ex1_file):
    code, out = run(capsys, "sort-sim", "--poset", ex1_file, "--hidden", "a,d,b,e,c,f", "--format", "json-lines")
    summary = json.loads(out.out.strip().split("\n")[-1])
    assert code == 0 and summary["queries"] == 5 and summary["budget2"] == 8
    code, out = run(capsys, "sort-sim", "--poset", ex1_file, "--seed", "5", "--format", "json-lines")
    assert code == 0 and json.loads(out.out.strip().split("\n")[-1])["sound"]


def test_generate_and_render(capsys, tmp_path):
    code, out = run(capsys, "generate", "--kind", "exhaustive-width2", "--n", "4")
    assert code == 0 and len(parse_posets(out.out)) == 10
    f = tmp_path / "p.poset"
    run(capsys, "generate", "--kind", "path", "--n", "6", "--out", str(f))
    svg = tmp_path / "p.svg"
    assert main(["render", "--poset", str(f), "--out", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")
    assert main(["render", "--poset", str(f), "--q", "--out", str(svg)]) == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["entropy"],
        ["entropy", "--poset", "/nonexistent/file"],
        ["generate", "--kind", "epoch", "--psi", "4", "--omega", "2"],
        ["sort-sim", "--poset", "{ex1}", "--hidden", "f,e,d,c,b,a"],
    ],
)
def test_usage_errors(capsys, ex1_file, argv):
    argv = [a.replace("{ex1}", ex1_file) for a in argv]
    assert main(argv) == 2


def test_argparse_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_width3_is_usage_error(capsys, tmp_path):
    f = tmp_path / "w3.poset"
    f.write_text("poset v1 n=3\nelements:\na\nb\nc\ncovers:\n")
    assert main(["entropy", "--poset", str(f)]) == 2
