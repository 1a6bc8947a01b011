from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def report(capsys):
    """Print one PASS/FAIL line for an acceptance criterion, bypassing capture."""

    def _report(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"[criterion {number:>2}] {'PASS' if ok else 'FAIL'} {title}"
        if detail:
            line += f" :: {detail}"
        with capsys.disabled():
            print("\n" + line)

    return _report
