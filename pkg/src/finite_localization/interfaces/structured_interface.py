from typing import Any, Dict

from .report_utils import dumps


class StructuredInterface:
    """One JSON document per run with stable field names"""

    def render(self, report: Dict[str, Any]) -> str:
        return dumps(report)

    def render_suite(self, suite: Dict[str, Any]) -> str:
        return dumps(suite)
