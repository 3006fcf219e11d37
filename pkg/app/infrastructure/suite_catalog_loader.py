from __future__ import annotations
import logging
from importlib import resources
from pathlib import Path
from typing import Any
import yaml
from app.config import SuiteCatalog, SuiteSettings
from app.shared.errors import SuiteCatalogLoadError


logger = logging.getLogger(__name__)

class SuiteCatalogError(RuntimeError):
    """Raised when the suite catalog cannot be read, parsed, or validated."""

class SuiteCatalogLoader:
    """Loads the acceptance suite catalog.
        Reads the packaged suites.yaml unless a path is given and maps it into
        SuiteSettings objects.
        """

    def __init__(self, path: str | Path | None = None) -> None:
        self._path = Path(path) if path is not None else None

    def load_catalog(self) -> SuiteCatalog:
        """Read and parse the catalog.
            Raises SuiteCatalogLoadError on read failures, YAML parse errors, or when
            the YAML structure does not match the expected schema.
            """

        try:
            data = self._parse_yaml(self._read_text())

            try:
                suites_raw = data["suites"]
                if not isinstance(suites_raw, list):
                    raise TypeError("'suites' is not a list")
            except (TypeError, KeyError) as exc:
                msg = "Unexpected suite catalog shape; expected a top-level 'suites' list"
                logger.error("%s: %s", msg, exc)
                raise SuiteCatalogError(msg) from exc

            try:
                suites = [
                    SuiteSettings(
                        name=str(raw["name"]),
                        description=str(raw.get("description", "")),
                        samples=int(raw["samples"]),
                        seed=int(raw["seed"]),
                        budget_seconds=float(raw.get("budget_seconds", 60)),
                        params=dict(raw.get("params") or {}),
                    )
                    for raw in suites_raw
                ]
            except (KeyError, TypeError, ValueError, AttributeError) as exc:
                msg = "Failed to map suite catalog entries to settings"
                logger.error("%s: %s", msg, exc)
                raise SuiteCatalogError(msg) from exc

            names = [s.name for s in suites]
            if len(set(names)) != len(names):
                msg = "Duplicate suite names in catalog"
                logger.error(msg)
                raise SuiteCatalogError(msg)

            catalog = SuiteCatalog(suites=suites)
            logger.info("Loaded suite catalog: %d suites", len(catalog.suites))
            return catalog
        except SuiteCatalogError as exc:
            raise SuiteCatalogLoadError(str(exc)) from exc
        except OSError as exc:
            raise SuiteCatalogLoadError("Failed to read suite catalog") from exc

    def _read_text(self) -> str:
        if self._path is not None:
            return self._path.read_text(encoding="utf-8")
        return resources.files("app.infrastructure.suite_catalog").joinpath("suites.yaml").read_text(encoding="utf-8")

    def _parse_yaml(self, text: str) -> Any:
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as exc:
            msg = "Failed to parse suite catalog YAML"
            logger.error(msg)
            raise SuiteCatalogError(msg) from exc
