"""Verification reports shared by the checking batteries and the CLI."""

from __future__ import annotations

import datetime as _dt
import json
from dataclasses import dataclass, field
from typing import List, Optional

from . import __version__

VERIFIED = "verified"
INCONCLUSIVE = "inconclusive"


@dataclass
class ReportItem:
    name: str
    status: str
    residual_terms: int = 0
    seconds: float = 0.0
    paper_anchor: str = ""
    degree_bound: int = 0
    residual: str = ""
    note: str = ""
    poly: object = field(default=None, repr=False, compare=False)  # the element checked; never serialized

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED


@dataclass
class Report:
    task: str
    n: int
    maxdeg: int
    items: List[ReportItem] = field(default_factory=list)
    complete_upto: Optional[int] = None

    @property
    def overall(self) -> str:
        return VERIFIED if all(it.ok for it in self.items) else INCONCLUSIVE

    @property
    def ok(self) -> bool:
        return self.overall == VERIFIED

    def failures(self) -> List[ReportItem]:
        return [it for it in self.items if not it.ok]

    def extend(self, other: "Report"):
        self.items.extend(other.items)
        if other.complete_upto is not None:
            if self.complete_upto is None:
                self.complete_upto = other.complete_upto
            else:
                self.complete_upto = min(self.complete_upto, other.complete_upto)

    def to_dict(self, timings: bool = True, timestamp: Optional[str] = None,
                residuals: bool = False) -> dict:
        items = []
        for it in self.items:
            d = {
                "name": it.name,
                "paper_anchor": it.paper_anchor,
                "status": it.status,
                "residual_terms": it.residual_terms,
                "seconds": round(it.seconds, 3) if timings else 0.0,
            }
            if residuals and it.residual:
                d["residual"] = it.residual
            if it.note:
                d["note"] = it.note
            items.append(d)
        if timestamp is None:
            timestamp = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()
        return {
            "tool_version": __version__,
            "task": self.task,
            "n": self.n,
            "maxdeg": self.maxdeg,
            "complete_upto": self.complete_upto,
            "items": items,
            "overall": self.overall,
            "timestamp": timestamp,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(**kw), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.task}  n={self.n}  maxdeg={self.maxdeg}  complete_upto={self.complete_upto}"]
        for it in self.items:
            tag = "ok " if it.ok else "?? "
            extra = f"  residual_terms={it.residual_terms}" if not it.ok else ""
            anchor = f"  [{it.paper_anchor}]" if it.paper_anchor else ""
            lines.append(f"  {tag}{it.name}{anchor}{extra}")
            if it.note:
                lines.append(f"      note: {it.note}")
            if not it.ok and it.residual:
                lines.append(f"      residual: {it.residual}")
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines) + "\n"
