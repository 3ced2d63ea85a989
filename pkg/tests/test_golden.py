from pathlib import Path

import pytest

from handlebody.golden import CASES, render

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("name", sorted(CASES))
def test_matches_golden_file(name):
    assert render(name) == (GOLDEN / f"{name}.txt").read_text()


def test_every_golden_file_has_a_case():
    assert {p.stem for p in GOLDEN.glob("*.txt")} == set(CASES)


def test_rendering_is_deterministic():
    assert render("special_expansion_genus2") == render("special_expansion_genus2")
