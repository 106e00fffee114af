"""JSON documents for solve reports (schema "extroot/1"); dyadics travel as exact "m*2^e" strings."""

from typing import Any

from ..arith.ball import ComplexBall
from ..arith.dyadic import Dyadic
from ..bounds.diagnostics import PointDiagnostics, SeparationDiagnostics
from ..constants import SCHEMA
from ..data_types import AlgebraicPoint, EntryStatus, IsolatedRoot, SolveEntry, SolveMode, SolveReport
from ..errors import SystemFormatError


def disc_to_document(disc: ComplexBall) -> dict[str, str]:
    return {"re": str(disc.re_center), "im": str(disc.im_center), "rad": str(disc.radius)}


def disc_from_document(doc: dict[str, str]) -> ComplexBall:
    return ComplexBall(Dyadic.parse(doc["re"]), Dyadic.parse(doc["im"]), Dyadic.parse(doc["rad"]))


def _point_to_document(point: AlgebraicPoint) -> dict[str, Any]:
    return {
        "index": list(point.index),
        "mult": point.mult,
        "coords": [{"disc": disc_to_document(c.disc), "mult": c.multiplicity} for c in point.coords],
    }


def _entry_to_document(entry: SolveEntry) -> dict[str, Any]:
    return {
        "point": _point_to_document(entry.point),
        "degree": entry.degree,
        "distinct": entry.distinct,
        "status": entry.status.value,
        "roots": [
            {
                "disc": disc_to_document(r.disc),
                "mult": r.multiplicity,
                "system_mult": entry.system_multiplicity(r),
            }
            for r in entry.roots
        ],
    }


def diagnostics_to_document(diagnostics: SeparationDiagnostics) -> dict[str, Any]:
    return {
        "prec": diagnostics.prec,
        "log_mahler_sum": str(diagnostics.log_mahler_sum),
        "lgdisc_sum": str(diagnostics.lgdisc_sum),
        "lsep_sum": str(diagnostics.lsep_sum),
        "per_point": [
            {
                "index": list(p.index),
                "mult": p.mult,
                "degree": p.degree,
                "log_mahler": str(p.log_mahler),
                "lgdisc": str(p.lgdisc),
                "lsep": str(p.lsep),
                "bound_ratio": p.bound_ratio(),
            }
            for p in diagnostics.per_point
        ],
    }


def report_to_document(report: SolveReport) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "mode": report.mode.value,
        "total_mult": report.total_mult,
        "entries": [_entry_to_document(e) for e in report.entries],
    }
    if report.diagnostics is not None:
        doc["diagnostics"] = diagnostics_to_document(report.diagnostics)
    if report.timing is not None:
        doc["timing"] = report.timing
    return doc


def _diagnostics_from_document(doc: dict[str, Any]) -> SeparationDiagnostics:
    diagnostics = SeparationDiagnostics(int(doc["prec"]))
    for p in doc["per_point"]:
        diagnostics.add(
            PointDiagnostics(
                tuple(p["index"]),
                int(p["mult"]),
                int(p["degree"]),
                Dyadic.parse(p["log_mahler"]),
                Dyadic.parse(p["lgdisc"]),
                Dyadic.parse(p["lsep"]),
            )
        )
    return diagnostics


def _entry_from_document(doc: dict[str, Any]) -> SolveEntry:
    p = doc["point"]
    coords = tuple(IsolatedRoot(disc_from_document(c["disc"]), int(c["mult"])) for c in p["coords"])
    point = AlgebraicPoint(tuple(int(i) for i in p["index"]), coords, int(p["mult"]))
    roots = []
    for r in doc["roots"]:
        root = IsolatedRoot(disc_from_document(r["disc"]), int(r["mult"]))
        if "system_mult" in r and int(r["system_mult"]) != point.mult * root.multiplicity:
            raise SystemFormatError(
                f"root at point {point.index} declares system_mult {r['system_mult']}, "
                f"expected {point.mult} * {root.multiplicity}"
            )
        roots.append(root)
    return SolveEntry(point, int(doc["degree"]), int(doc["distinct"]), tuple(roots), EntryStatus(doc["status"]))


def report_from_document(doc: dict[str, Any]) -> SolveReport:
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise SystemFormatError(f"not a solve report with schema {SCHEMA!r}")
    try:
        entries = [_entry_from_document(e) for e in doc["entries"]]
        report = SolveReport(entries, int(doc["total_mult"]), SolveMode(doc["mode"]))
        if "diagnostics" in doc:
            report.diagnostics = _diagnostics_from_document(doc["diagnostics"])
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, SystemFormatError):
            raise
        raise SystemFormatError(f"malformed solve report: {e!r}") from e
    report.timing = doc.get("timing")
    return report
