import json

import pytest

from finite_localization.cli import build_parser, main
from finite_localization.dsl import parse
from finite_localization.interfaces.file_utils import example_documents

EXAMPLES = dict(example_documents())


@pytest.fixture
def chain3_file(tmp_path):
    path = tmp_path / "chain3.fl"
    path.write_text(EXAMPLES["chain3.fl"], encoding="utf-8")
    return path


def test_run_structured(chain3_file, capsys):
    assert main(["run", str(chain3_file), "--format", "structured"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["document"] == "chain3.fl"
    assert data["tasks"][0]["result"]["local_objects"] == ["0", "2"]


def test_run_text_to_file(chain3_file, tmp_path):
    output = tmp_path / "report.txt"
    assert main(["run", str(chain3_file), "-o", str(output)]) == 0
    text = output.read_text(encoding="utf-8")
    assert text.startswith("document chain3.fl: 1 task(s), exit status 0")
    assert "[0] localize: ok" in text


def test_check_runs_one_check_per_declaration(tmp_path, capsys):
    path = tmp_path / "reflection.fl"
    path.write_text(EXAMPLES["reflection.fl"], encoding="utf-8")
    assert main(["check", str(path), "--format", "structured"]) == 0
    tasks = json.loads(capsys.readouterr().out)["tasks"]
    assert [t["result"]["name"] for t in tasks] == ["chain3", "two", "R", "I", "eta", "eps", "reflection"]


def test_malformed_document_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.fl"
    path.write_text("category c {\n  objects x;\n}\n", encoding="utf-8")
    assert main(["check", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_file_exits_2(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nowhere.fl")]) == 2
    assert "nowhere.fl" in capsys.readouterr().err


def test_fixture_emit_parses(capsys):
    assert main(["fixtures", "poset", "--chain", "3", "--emit"]) == 0
    document = parse(capsys.readouterr().out)
    assert document.declared_names() == ("chain3",)


def test_fixture_summary(capsys):
    assert main(["fixtures", "abelian", "--format", "structured"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["fixture"] == "abelian4"
    assert summary["objects"] == ["0", "Z2", "Z3", "Z4", "Z2xZ2"]
    assert summary["hom_sizes"]["Z4->Z2xZ2"] == 4


def test_fixture_needs_one_shape(capsys):
    assert main(["fixtures", "poset"]) == 2
    assert main(["fixtures", "poset", "--chain", "2", "--antichain", "2"]) == 2


def test_budget_exceeded_exits_1(capsys):
    assert main(["fixtures", "abelian", "--max-order", "8", "--max-objects", "5"]) == 1
    assert "budget" in capsys.readouterr().err


def test_quick_suite(capsys):
    assert main(["suite", "--quick", "--only", "dsl", "--format", "structured"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["mode"] == "quick"
    assert [c["name"] for c in data["checks"]] == ["dsl"]


def test_parser_rejects_unknown_format():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["run", "x.fl", "--format", "yaml"])
