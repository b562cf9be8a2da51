import pytest

from finite_localization.config import EngineConfig
from finite_localization.dsl import parse
from finite_localization.interfaces.file_utils import example_documents
from finite_localization.interfaces.report_utils import dumps
from finite_localization.runner import SCHEMA_VERSION, TaskRunner

EXAMPLES = dict(example_documents())


def run(text: str, **overrides):
    config = EngineConfig().with_overrides(**overrides)
    return TaskRunner.from_config(config).run(parse(text, name="test.fl"))


def test_chain3_localize():
    report = run(EXAMPLES["chain3.fl"])
    assert report.status == 0
    data = report.to_dict()
    assert data["schema_version"] == SCHEMA_VERSION
    assert data["document"] == "test.fl"
    (task,) = data["tasks"]
    assert task["status"] == "ok"
    assert task["result"] == {
        "category": "chain3",
        "f": "b",
        "exists": True,
        "local_objects": ["0", "2"],
        "table": {
            "0": {"object": "0", "unit": "id_0"},
            "1": {"object": "2", "unit": "b"},
            "2": {"object": "2", "unit": "id_2"},
        },
        "violations": [],
    }
    assert "timing" not in task


def test_missing_localization_is_flagged():
    text = "category par {\n  objects: x, y;\n  morphisms: u: x -> y, v: x -> y;\n}\n\ntask localize(par, f: u)\n"
    report = run(text)
    (task,) = report.tasks
    assert task.status == "flagged"
    assert task.result["exists"] is False
    assert task.notes
    assert report.status == 0


def test_check_tasks():
    report = run(EXAMPLES["reflection.fl"])
    statuses = [t.status for t in report.tasks]
    assert statuses[:4] == ["ok", "ok", "ok", "ok"]
    assert report.tasks[0].result["kind"] == "category"
    assert report.tasks[3].result["kind"] == "adjunction"


def test_dsl_errors_in_tasks_exit_2():
    report = run("fixture poset(chain=3)\n\ntask localize(chain3, f: 5->2)\n")
    (task,) = report.tasks
    assert task.status == "error"
    assert task.exit_code == 2
    assert report.status == 2


def test_empty_document():
    report = run("")
    assert report.tasks == []
    assert report.status == 0
    assert set(report.to_dict()) == {"schema_version", "document", "status", "tasks"}


@pytest.mark.parametrize("name", ["abelian.fl", "chain3.fl", "reflection.fl", "posets.fl"])
def test_reports_do_not_depend_on_workers(name):
    outputs = {dumps(run(EXAMPLES[name], workers=workers, seed=seed).to_dict()) for workers, seed in ((1, 0), (4, 0), (4, 7))}
    assert len(outputs) == 1


def test_timing_is_opt_in():
    report = run(EXAMPLES["chain3.fl"], include_timing=True)
    assert "timing" in report.to_dict()["tasks"][0]


# statuses that do not depend on whether a localization happens to exist
KNOWN_STATUSES = {
    "chain3.fl": {0: "ok"},
    "abelian.fl": {0: "ok", 1: "ok", 2: "ok", 6: "ok"},
    "closure_monad.fl": {0: "ok", 1: "ok"},
    "posets.fl": {0: "ok", 3: "ok", 4: "ok"},
    "reflection.fl": {0: "ok", 1: "ok", 2: "ok", 3: "ok"},
}


@pytest.mark.parametrize("name", sorted(EXAMPLES))
@pytest.mark.parametrize("workers, seed", [(1, 0), (4, 2), (4, 3), (2, 5)])
def test_bundled_documents_exit_clean(name, workers, seed):
    report = run(EXAMPLES[name], workers=workers, seed=seed)
    assert report.status == 0
    statuses = [t.status for t in report.tasks]
    assert set(statuses) <= {"ok", "flagged"}
    for index, status in KNOWN_STATUSES.get(name, {}).items():
        assert statuses[index] == status


@pytest.mark.parametrize("seed", range(6))
def test_inline_fixture_reuses_declared_fixture(seed):
    data = run(EXAMPLES["abelian.fl"], workers=4, seed=seed).to_dict()
    declared, inline = data["tasks"][1], data["tasks"][2]
    assert declared["status"] == inline["status"] == "ok"
    assert declared["result"]["all_conditions"] is True
    assert inline["result"] == declared["result"]


def test_positional_inline_fixture():
    text = "fixture abelian(max_order=4)\n\ntask verify(thm4.2, fixture abelian(4), tensor(Z/2), f: Z4->Z2)\n"
    report = run(text)
    (task,) = report.tasks
    assert task.status == "ok"
    assert task.result["all_conditions"] is True
    assert all(condition["holds"] for condition in task.result["conditions"].values())


def test_theorem_violation_exits_1():
    report = run("fixture poset(chain=3)\n\ntask verify(thm9, chain3, closure(1), A: 1)\n")
    (task,) = report.tasks
    assert task.status == "violation"
    assert task.exit_code == 1
    assert report.status == 1
    assert "TA refinement" in task.result["error"]
    assert task.result["witness"]["clauses"]["C_A U ~ C_TA U"]["holds"] is False
