from __future__ import annotations
import logging
from app.application.suites import SuiteDependencies
from app.cmd.session import Session, SessionDeps
from app.config import WorkbenchConfig
from app.infrastructure.element_codec import ElementCodec
from app.infrastructure.expression_parser import ExpressionParser
from app.infrastructure.report_exporter_excel import ExcelReportExporter
from app.infrastructure.subprocess_digest import SubprocessDigest
from app.infrastructure.suite_catalog_loader import SuiteCatalogLoader


logger = logging.getLogger(__name__)

def build_session_deps() -> SessionDeps:
    codec = ElementCodec()
    return SessionDeps(
        parser=ExpressionParser(),
        codec=codec,
        catalog=SuiteCatalogLoader(),
        suite_deps=SuiteDependencies(codec=codec, digest=SubprocessDigest()),
        exporter=ExcelReportExporter(),
    )

def build_session(config: WorkbenchConfig) -> Session:
    logger.debug("Session options: %s", config)
    return Session(config=config, deps=build_session_deps())
