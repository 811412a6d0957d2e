import json
import os
import sys
from importlib import resources

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from labyrinth import parse_pattern, plus_pattern  # noqa: E402

PLUS3_TEXT = "3\n#.#\n...\n#.#"


@pytest.fixture
def plus3():
    return parse_pattern(PLUS3_TEXT)


@pytest.fixture(scope="session")
def schemas():
    import jsonschema

    def check(name, instance):
        text = resources.files("labyrinth").joinpath("schemas", f"{name}.schema.json").read_text()
        jsonschema.validate(instance, json.loads(text))

    return check


@pytest.fixture(scope="session")
def plus3_session():
    return plus_pattern(3)


_CRITERIA: dict[int, tuple[str, str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, title) and let the test body run."""

    class Recorder:
        def __call__(self, number: int, title: str):
            self.number, self.title = number, title
            _CRITERIA[number] = ("FAIL", title, "")
            return self

        def note(self, text: str):
            status, title, _ = _CRITERIA[self.number]
            _CRITERIA[self.number] = (status, title, text)

        def passed(self):
            _, title, text = _CRITERIA[self.number]
            _CRITERIA[self.number] = ("PASS", title, text)
            print(f"criterion {self.number}: PASS {title} {text}".rstrip())

    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, title, text = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status} {title} {text}".rstrip())
