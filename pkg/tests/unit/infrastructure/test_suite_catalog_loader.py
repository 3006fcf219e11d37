from __future__ import annotations
from pathlib import Path
import pytest
from app.application.suites import SUITES
from app.infrastructure.suite_catalog_loader import SuiteCatalogLoader
from app.shared.errors import SuiteCatalogLoadError


def test_packaged_catalog_lists_every_suite() -> None:
    # when
    catalog = SuiteCatalogLoader().load_catalog()

    # then
    names = [suite.name for suite in catalog.suites]
    assert len(names) == 10
    assert set(names) == set(SUITES)
    decomposition = catalog.get("pof-decomposition")
    assert decomposition is not None
    assert decomposition.samples > 0
    assert catalog.get("nope") is None

def test_loads_catalog_from_path(tmp_path: Path) -> None:
    # given
    path = tmp_path / "suites.yaml"
    path.write_text(
        "suites:\n"
        "  - name: axioms\n"
        "    samples: 7\n"
        "    seed: 3\n"
        "    params:\n"
        "      window: 5\n",
        encoding="utf-8",
    )

    # when
    catalog = SuiteCatalogLoader(path).load_catalog()

    # then
    suite = catalog.get("axioms")
    assert suite is not None
    assert suite.samples == 7
    assert suite.seed == 3
    assert suite.budget_seconds == 60
    assert suite.params == {"window": 5}

@pytest.mark.parametrize(
    "content, message",
    [
        ("suites: [unclosed", "parse"),
        ("other: []\n", "shape"),
        ("suites: {name: axioms}\n", "shape"),
        ("suites:\n  - name: axioms\n", "map"),
        ("suites:\n  - {name: a, samples: 1, seed: 1}\n  - {name: a, samples: 2, seed: 2}\n", "Duplicate"),
    ],
)
def test_invalid_catalogs_raise(tmp_path: Path, content: str, message: str) -> None:
    # given
    path = tmp_path / "suites.yaml"
    path.write_text(content, encoding="utf-8")

    # when / then
    with pytest.raises(SuiteCatalogLoadError, match=message):
        SuiteCatalogLoader(path).load_catalog()

def test_missing_file_raises(tmp_path: Path) -> None:
    with pytest.raises(SuiteCatalogLoadError, match="read"):
        SuiteCatalogLoader(tmp_path / "absent.yaml").load_catalog()
