"""Command-line interface: subcommands, exit codes, entry schema."""

import json

import pytest

from nshecke.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# verify / report
# ---------------------------------------------------------------------------

def test_verify_quadratic(capsys):
    code, data = run_json(capsys, "verify", "quadratic", "--m", "3,4",
                          "--k", "1")
    assert code == 0
    assert len(data) == 2
    for entry in data:
        assert entry["schema"] == 1
        assert entry["check"] == "quadratic"
        assert entry["status"] == "pass"
        assert isinstance(entry["elapsed_ms"], int)
        assert set(entry) <= {"schema", "check", "m", "k", "status",
                              "witness", "value", "elapsed_ms"}


def test_verify_span_value(capsys):
    code, data = run_json(capsys, "verify", "span", "--m", "3", "--k", "2")
    assert code == 0
    assert data[0]["value"]["rank"] == 10
    assert data[0]["value"]["census"] == 10


def test_report_subset(capsys):
    code, data = run_json(capsys, "report", "--m", "3", "--k", "1",
                          "--checks", "quadratic,braid,irreps")
    assert code == 0
    assert [e["check"] for e in data] == ["quadratic", "braid", "irreps"]


def test_report_skips_inapplicable(capsys):
    # coproduct needs k >= 2 and is silently skipped in a batch at k=1
    code, data = run_json(capsys, "report", "--m", "3", "--k", "1",
                          "--checks", "coproduct")
    assert code == 0
    assert data == []


def test_report_unknown_check_exit2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["report", "--m", "3", "--k", "1", "--checks", "bogus"])
    assert e.value.code == 2


def test_bad_m_exit2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "quadratic", "--m", "2", "--k", "1"])
    assert e.value.code == 2


def test_pretty_table(capsys):
    code, out = run(capsys, "verify", "quadratic", "--m", "3", "--k", "1",
                    "--pretty")
    assert code == 0
    assert "check" in out and "pass" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["verify", "quadratic", "--m", "3", "--k", "1",
                 "--out", str(target)])
    assert code == 0
    data = json.loads(target.read_text())
    assert data[0]["status"] == "pass"


# ---------------------------------------------------------------------------
# irreps / decompose
# ---------------------------------------------------------------------------

def test_irreps(capsys):
    code, data = run_json(capsys, "irreps", "--m", "3", "--k", "2")
    assert code == 0
    assert [r["label"] for r in data] == ["eps+", "eps-", "N(1)", "N(2)"]
    assert data[0]["type"] == "1dim" and data[2]["type"] == "2dim"


def test_decompose(capsys):
    code, data = run_json(capsys, "decompose", "--m", "3", "--kl", "1",
                          "--kr", "1", "--comp-l", "1", "--comp-r", "1")
    assert code == 0
    assert data["case"] == "plus-degenerate"
    assert [s["label"] for s in data["summands"]] == ["eps+", "eps-",
                                                      "N(2)"]
    assert len(data["change_of_basis"]) == 4


# ---------------------------------------------------------------------------
# comps / cheb
# ---------------------------------------------------------------------------

def test_comps(capsys):
    code, data = run_json(capsys, "comps", "--n", "2", "--k", "3")
    assert code == 0
    assert data["count"] == 6
    assert data["closed_form"] == 6
    assert [0, 3] in data["classes"]


def test_cheb_uni(capsys):
    code, data = run_json(capsys, "cheb", "--uni", "2", "--kind", "T")
    assert code == 0
    # T_2 = 2x^2 - 1
    assert data == {"n": 1, "coeffs": {"0,0": -1, "2,0": 2}}


def test_cheb_identity(capsys):
    code, data = run_json(capsys, "cheb", "--identity", "--kl", "1,1",
                          "--kr", "1,-1")
    assert code == 0
    assert data["status"] == "pass"


# ---------------------------------------------------------------------------
# cellular / gram / decomp-matrix
# ---------------------------------------------------------------------------

def test_cellular_verify(capsys):
    code, data = run_json(capsys, "cellular", "--m", "3", "--k", "1",
                          "--verify")
    assert code == 0
    assert data["status"] == "pass"
    assert data["basis_size"] == 6


def test_cellular_dot(tmp_path, capsys):
    dot = tmp_path / "poset.dot"
    code, data = run_json(capsys, "cellular", "--m", "4", "--k", "2",
                          "--dot", str(dot))
    assert code == 0
    assert dot.read_text().startswith("digraph")


def test_gram(capsys):
    code, data = run_json(capsys, "gram", "--m", "3", "--k", "2",
                          "--stratum", "2")
    assert code == 0
    assert data["stratum"] == "(2)"
    assert len(data["matrix"]) == 2
    code, data = run_json(capsys, "gram", "--m", "3", "--k", "2",
                          "--stratum", "eps+")
    assert code == 0
    assert len(data["matrix"]) == 1


def test_gram_missing_stratum_exit2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["gram", "--m", "3", "--k", "1", "--stratum", "3"])
    assert e.value.code == 2


def test_decomp_matrix(capsys):
    code, data = run_json(capsys, "decomp-matrix", "--m", "3", "--k", "2")
    assert code == 0
    assert data["status"] == "pass"
    assert data["row_labels"] == ["eps-", "(2)", "(1)", "eps+"]
    assert data["column_labels"] == ["eps-", "(2)", "eps+"]
    assert data["matrix"] == [[1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1]]


def test_decomp_matrix_even_m_exit2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["decomp-matrix", "--m", "4", "--k", "2"])
    assert e.value.code == 2


def test_parser_requires_command():
    with pytest.raises(SystemExit) as e:
        build_parser().parse_args([])
    assert e.value.code == 2
