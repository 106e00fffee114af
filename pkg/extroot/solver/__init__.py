from .pipeline import FiberOracle, SresCache, build_grid, solve
from .serialization import report_from_document, report_to_document
from .system import SystemDocument, SystemSpec, load_system, system_from_dict, system_from_document
from .verify import Verdict, verify_report


__all__ = [
    "FiberOracle",
    "SresCache",
    "SystemDocument",
    "SystemSpec",
    "Verdict",
    "build_grid",
    "load_system",
    "report_from_document",
    "report_to_document",
    "solve",
    "system_from_dict",
    "system_from_document",
    "verify_report",
]
