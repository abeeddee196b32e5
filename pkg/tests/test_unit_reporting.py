import json

from src.schemas import Envelope, SpectrumMatch
from src.services import reporting


def _report() -> SpectrumMatch:
    return SpectrumMatch(matched=False, left=[0.1, 3.0, 1e20], right=[-2.5], max_diff=float("inf"))


def test_json_floats_have_seventeen_digits():
    text = reporting.render_json("graph analyze", 1, _report())
    assert '"left": [\n      0.10000000000000001,\n      3.0,\n      1e+20\n    ]' in text
    assert '"max_diff": null' in text
    assert '"schema": "oblique-kit/1"' in text


def test_json_floats_round_trip():
    text = reporting.render_json("graph analyze", 1, _report().model_copy(update={"max_diff": 0.30000000000000004}))
    result = SpectrumMatch.model_validate(Envelope.model_validate_json(text).result)
    assert result.left == [0.1, 3.0, 1e20]
    assert result.right == [-2.5]
    assert result.max_diff == 0.1 + 0.2
    assert json.loads(text)["exit_code"] == 1


def test_text_report_header():
    text = reporting.render_text("graph analyze", 0, SpectrumMatch(matched=True, left=[2.0], right=[2.0]))
    assert text.splitlines()[0] == "graph analyze: ok (exit 0)"
    assert "left: [2.0]" in text
