import json
from typing import Any

import pytest

from app.cli.main import run


def invoke(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, Any]:
    """Run the CLI and parse stdout as JSON (``None`` when it is not JSON)."""
    code = run(list(argv))
    out = capsys.readouterr().out
    try:
        return code, json.loads(out)
    except json.JSONDecodeError:
        return code, out
