"""Deterministic JSON, CSV and Markdown reports of verification runs."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from eigenflats.eigenstab import VerificationRecord
from eigenflats.errors import ConfigError
from eigenflats.rootsys import RootSystem

FORMATS = ("json", "csv", "md")

CSV_FIELDS = (
    "type",
    "b",
    "vb_nonempty",
    "min_N",
    "bound",
    "equality",
    "passes",
    "orthogonal_root_indices",
    "elements_scanned",
    "wall_time_ms",
)


def group_summary(rs: RootSystem) -> Dict[str, object]:
    return {
        "type": str(rs.label),
        "rank": rs.rank,
        "order": rs.order,
        "coxeter_number": rs.coxeter_number,
        "degrees": list(rs.degrees),
        "num_roots": rs.num_roots,
    }


@dataclass
class TypeReport:
    """Records of one type, in b order, and the violation that stopped it if any."""

    group: Dict[str, object]
    records: List[VerificationRecord] = field(default_factory=list)
    error: Optional[str] = None
    counterexample: Dict[str, Any] = field(default_factory=dict)

    @property
    def passes(self) -> bool:
        return self.error is None and all(r.passes for r in self.records)

    def to_dict(self, timing: bool = True) -> Dict[str, object]:
        out: Dict[str, object] = {
            "group": self.group,
            "results": [r.to_dict(timing) for r in self.records],
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass(frozen=True)
class SkippedType:
    type: str
    reason: str

    def to_dict(self) -> Dict[str, object]:
        return {"type": self.type, "reason": self.reason}


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False)


def build_report(
    reports: Sequence[TypeReport], skipped: Sequence[SkippedType] = (), timing: bool = True
) -> Dict[str, object]:
    return {
        "reports": [r.to_dict(timing) for r in reports],
        "skipped": [s.to_dict() for s in skipped],
    }


def _csv(reports: Sequence[TypeReport], timing: bool) -> str:
    buffer = io.StringIO()
    fields = [f for f in CSV_FIELDS if timing or f != "wall_time_ms"]
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        for record in report.records:
            data = record.to_dict(timing)
            witness = data["witness"]
            row = {name: data.get(name) for name in fields}
            row["type"] = report.group["type"]
            row["orthogonal_root_indices"] = (
                " ".join(str(i) for i in witness["orthogonal_root_indices"]) if witness else ""
            )
            writer.writerow(row)
    return buffer.getvalue()


def _cell(value: object) -> str:
    return "-" if value is None else str(value)


def _markdown(
    reports: Sequence[TypeReport], skipped: Sequence[SkippedType], timing: bool
) -> str:
    lines = ["# Eigenvector stabilizer verification", ""]
    columns = ["b", "V(b) nonempty", "min N", "b*n", "equality", "passes", "elements"]
    if timing:
        columns.append("ms")
    for report in reports:
        g = report.group
        lines.append(f"## {g['type']}")
        lines.append("")
        lines.append(
            f"- rank `{g['rank']}`, |W| `{g['order']}`, h `{g['coxeter_number']}`, "
            f"|Phi| `{g['num_roots']}`, degrees `{g['degrees']}`"
        )
        lines.append("")
        lines.append("| " + " | ".join(columns) + " |")
        lines.append("|" + "---|" * len(columns))
        for record in report.records:
            cells = [
                record.b,
                record.vb_nonempty,
                record.min_N,
                record.bound,
                record.equality,
                record.passes,
                record.elements_scanned,
            ]
            if timing:
                cells.append(round(record.wall_time_ms, 3))
            lines.append("| " + " | ".join(_cell(c) for c in cells) + " |")
        if report.error is not None:
            lines.append("")
            lines.append(f"**Stopped:** {report.error}")
        lines.append("")
    if skipped:
        lines.append("## Skipped")
        lines.append("")
        for s in skipped:
            lines.append(f"- `{s.type}`: {s.reason}")
        lines.append("")
    return "\n".join(lines)


def emit_report(
    reports: Sequence[TypeReport],
    fmt: str = "json",
    skipped: Sequence[SkippedType] = (),
    timing: bool = True,
) -> str:
    """Serialize records; output depends only on the records (and timing if kept)."""
    if fmt == "json":
        return canonical_json(build_report(reports, skipped, timing)) + "\n"
    if fmt == "csv":
        return _csv(reports, timing)
    if fmt == "md":
        return _markdown(reports, skipped, timing)
    raise ConfigError(f"unknown report format {fmt!r}, expected one of {', '.join(FORMATS)}")


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
