import json
from typing import Any, Dict, List

import numpy as np


def to_jsonable(value: Any) -> Any:
    """Plain JSON data for report values; sets are sorted so output stays stable"""
    if value is None or isinstance(value, (bool, str, int, float)):
        return value
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((to_jsonable(v) for v in value), key=repr)
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if hasattr(value, "name"):
        return str(value.name)
    return str(value)


def dumps(data: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(data), indent=2, ensure_ascii=False) + "\n"


def format_value(value: Any, indent: int = 0) -> List[str]:
    """Indented ``key: value`` lines for nested report data"""
    pad = "  " * indent
    value = to_jsonable(value)
    if isinstance(value, dict):
        if not value:
            return [f"{pad}{{}}"]
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(format_value(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
        return lines
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [f"{pad}{', '.join(_scalar(v) for v in value)}"]
        lines = []
        for item in value:
            nested = format_value(item, indent + 1)
            lines.append(f"{pad}- {nested[0].strip()}")
            lines.extend(nested[1:])
        return lines
    return [f"{pad}{_scalar(value)}"]


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (dict, list)):
        return "{}" if isinstance(value, dict) else "[]"
    return str(value)
