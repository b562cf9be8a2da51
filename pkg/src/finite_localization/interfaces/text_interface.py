from typing import Any, Dict, List

from ..messages import get_message
from .report_utils import format_value


class TextInterface:
    """Human-readable rendering of reports and suite results"""

    def render(self, report: Dict[str, Any]) -> str:
        tasks = report["tasks"]
        if not tasks:
            return get_message("empty_report").format(document=report["document"]) + "\n"
        lines = [get_message("report_header").format(document=report["document"], count=len(tasks), status=report["status"])]
        for task in tasks:
            lines.append(get_message("task_line").format(**task))
            lines.extend(format_value(task["result"], indent=2))
            lines.extend(get_message("task_note").format(note=note) for note in task["notes"])
            if "timing" in task:
                lines.append(f"    time: {task['timing']:.3f}s")
        return "\n".join(lines) + "\n"

    def render_suite(self, suite: Dict[str, Any]) -> str:
        lines: List[str] = [get_message("suite_header").format(mode=suite["mode"])]
        for check in suite["checks"]:
            lines.append(
                get_message("suite_line").format(
                    status="PASS" if check["passed"] else "FAIL", name=check["name"], detail=check["detail"]
                )
            )
        passed = sum(1 for c in suite["checks"] if c["passed"])
        lines.append(get_message("suite_summary").format(passed=passed, total=len(suite["checks"])))
        return "\n".join(lines) + "\n"
