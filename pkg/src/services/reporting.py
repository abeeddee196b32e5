import json
import math
import re
from typing import Any

from pydantic import BaseModel

from src.schemas import Envelope

FLOAT_DIGITS = 17
_NUMBER = "\ue000"
_NUMBER_FIELD = re.compile(f'"{_NUMBER}([^"]*)"')


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _lines(value: Any, indent: int) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, item in value.items():
        if isinstance(item, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_lines(item, indent + 1))
        elif isinstance(item, list) and item and isinstance(item[0], (dict, list)):
            lines.append(f"{pad}{key}:")
            for k, row in enumerate(item):
                if isinstance(row, dict):
                    lines.append(f"{pad}  - [{k}]")
                    lines.extend(_lines(row, indent + 2))
                else:
                    lines.append(f"{pad}  [{', '.join(_scalar(x) for x in row)}]")
        elif isinstance(item, list):
            lines.append(f"{pad}{key}: [{', '.join(_scalar(x) for x in item)}]")
        else:
            lines.append(f"{pad}{key}: {_scalar(item)}")
    return lines


def render_text(command: str, exit_code: int, report: BaseModel) -> str:
    """
    The render_text function lays a report out as indented ``key: value`` lines,
    nested models as indented blocks and matrices one row per line.

    :param command: str: Command name for the header line
    :param exit_code: int: Exit code of the run
    :param report: BaseModel: Any report model
    :return: The text, ending with a newline
    """
    header = [f"{command}: {'ok' if exit_code == 0 else 'FAILED'} (exit {exit_code})"]
    return "\n".join(header + _lines(report.model_dump(mode="json"), 0)) + "\n"


def _number(value: float) -> str | None:
    if not math.isfinite(value):
        return None
    text = f"{value:.{FLOAT_DIGITS}g}"
    if "." not in text and "e" not in text:
        text += ".0"
    return _NUMBER + text


def _mark_floats(value: Any) -> Any:
    if isinstance(value, float):
        return _number(value)
    if isinstance(value, dict):
        return {key: _mark_floats(item) for key, item in value.items()}
    if isinstance(value, list):
        return [_mark_floats(item) for item in value]
    return value


def render_json(command: str, exit_code: int, report: BaseModel) -> str:
    """
    The render_json function wraps a report in the envelope and writes every float with
    17 significant digits. Non-finite floats become ``null``.

    :param command: str: Command name
    :param exit_code: int: Exit code of the run
    :param report: BaseModel: Any report model
    :return: Indented JSON, ending with a newline
    """
    envelope = Envelope(command=command, exit_code=exit_code, result=report.model_dump(mode="json"))
    marked = _mark_floats(envelope.model_dump(mode="json", by_alias=True))
    text = json.dumps(marked, indent=2, ensure_ascii=False)
    return _NUMBER_FIELD.sub(r"\1", text) + "\n"


def render(command: str, exit_code: int, report: BaseModel, output_format: str) -> str:
    if output_format == "json":
        return render_json(command, exit_code, report)
    return render_text(command, exit_code, report)
