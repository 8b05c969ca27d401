from pathlib import Path

import pytest

from triadic import Product, load_context
from triadic.implications import Implication, ImplicationBase, Kind

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
RUNNING = FIXTURES / "running.triples"
RUNNING_SLICES = FIXTURES / "running.slices"


def _side(s: str) -> frozenset:
    return frozenset() if s == "∅" else frozenset(s)


def prod(text: str) -> Product:
    """``"abd×RPK"`` -> Product; single-letter names, ``∅`` for an empty side."""
    attrs, conds = text.split("×")
    return Product(_side(attrs), _side(conds))


def prods(text: str) -> set[Product]:
    return {prod(t.strip()) for t in text.split(";") if t.strip()}


def unary(ctx, kind, text: str) -> ImplicationBase:
    """Parse ``"∅ P ad; c KPN b"``: (premise, constraint, conclusion) triples."""
    items = []
    for chunk in text.split(";"):
        premise, constraint, conclusion = chunk.split()
        items.append(Implication(Kind(kind), _side(premise), _side(conclusion), _side(constraint)))
    return ImplicationBase.for_context(ctx, kind, items)


def binary(ctx, kind, text: str) -> ImplicationBase:
    """Parse ``"a ad P; ∅ d N"``: (premise, conclusion, constraint) triples."""
    items = []
    for chunk in text.split(";"):
        premise, conclusion, constraint = chunk.split()
        items.append(Implication(Kind(kind), _side(premise), _side(conclusion), _side(constraint)))
    return ImplicationBase.for_context(ctx, kind, items)


@pytest.fixture(scope="session")
def ctx():
    return load_context(RUNNING)


# -- acceptance reporting ---------------------------------------------------

_criteria: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = getattr(report, "criterion", None)
    if label is None:
        return
    verdict = "PASS" if report.passed else "FAIL"
    if _criteria.get(label) != "FAIL":
        _criteria[label] = verdict


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: (int("".join(ch for ch in s if ch.isdigit())), s)):
        terminalreporter.write_line(f"criterion {label}: {_criteria[label]}")
