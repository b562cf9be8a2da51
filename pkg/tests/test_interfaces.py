import json

import numpy as np
import pytest

from finite_localization.interfaces import StructuredInterface, TextInterface, get_interface
from finite_localization.interfaces.report_utils import format_value, to_jsonable
from finite_localization.messages import get_message

REPORT = {
    "schema_version": "1",
    "document": "doc.fl",
    "status": 0,
    "tasks": [
        {
            "index": 0,
            "command": "localize",
            "status": "flagged",
            "result": {"category": "par", "exists": False},
            "notes": ["L_u does not exist in par"],
        }
    ],
}


def test_get_interface():
    assert isinstance(get_interface("text"), TextInterface)
    assert isinstance(get_interface("structured"), StructuredInterface)
    with pytest.raises(ValueError):
        get_interface("yaml")


def test_text_render():
    text = get_interface("text").render(REPORT)
    assert text.splitlines() == [
        "document doc.fl: 1 task(s), exit status 0",
        "[0] localize: flagged",
        "    category: par",
        "    exists: no",
        "    note: L_u does not exist in par",
    ]
    empty = dict(REPORT, tasks=[])
    assert get_interface("text").render(empty) == "document doc.fl: no tasks, exit status 0\n"


def test_structured_render():
    assert json.loads(get_interface("structured").render(REPORT)) == REPORT


def test_suite_render():
    suite = {"mode": "quick", "checks": [{"name": "dsl", "passed": True, "detail": "6 documents"}]}
    assert get_interface("text").render_suite(suite).splitlines() == [
        "acceptance suite (quick)",
        "  PASS dsl (6 documents)",
        "1/1 checks passed",
    ]


def test_to_jsonable():
    assert to_jsonable({1: np.int64(3), "s": {"b", "a"}, "t": ("x", None)}) == {"1": 3, "s": ["a", "b"], "t": ["x", None]}
    assert format_value({"v": []}) == ["v: []"]


def test_messages_fall_back_to_english():
    assert get_message("error", "fr") == get_message("error")
    assert get_message("error", "EN") == "error: {message}"
