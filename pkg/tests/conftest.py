import re

import pytest

from syncomplex.transforms import parse

# Example listings for n = 4, copied as printed; bold entries are generators.
LISTING_A4 = r"{\bf [2,3,4,4]},{\bf [2,4,4,4]},{\bf [3,3,4,4]},[3,4,4,4],{\bf [4,3,4,4]},[4,4,4,4]"
LISTING_APRIME4 = r"{\bf [2,3,3,4]},{\bf [2,4,3,4]},[3,3,3,4],[3,4,3,4],[4,3,3,4],[4,4,3,4]"
LISTING_B4 = {
    1: r"{\bf [1,1,1,1]}",
    2: r"[2,2,2,2], \bf{[3,2,2,2]}, {\bf [4,2,2,2]}",
    3: r"{\bf[2,3,3,3]},{\bf [2,4,3,3]},[3,3,3,3],{\bf [3,4,3,3]}, [4,3,3,3],{\bf [4,4,3,3]}",
    4: r"{\bf [2,3,4,4]},{\bf [2,4,4,4]}, {\bf [3,3,4,4]}, [3,4,4,4],{\bf [4,3,4,4]},[4,4,4,4]",
}

_ITEM = re.compile(r"(\\bf\s*\{?\s*)?(\[\d+(?:,\d+)*\])")


def marked(listing: str) -> list[str]:
    """Listing entries as ``[..]`` or ``[..]*`` (bold), sorted."""
    out = []
    for bold, item in _ITEM.findall(listing):
        out.append(item + ("*" if bold else ""))
    return sorted(out)


def elements(listing: str):
    return [parse(item.rstrip("*")) for item in marked(listing)]


def generators(listing: str):
    return [parse(item.rstrip("*")) for item in marked(listing) if item.endswith("*")]


@pytest.fixture
def listing_a4():
    return LISTING_A4


@pytest.fixture
def listing_aprime4():
    return LISTING_APRIME4


@pytest.fixture
def listing_b4():
    return " , ".join(LISTING_B4.values())


_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    print(line)
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
