from __future__ import annotations

import json
from dataclasses import dataclass, field

from .classify import ClassificationReport, Witness
from .theorems import ClaimVerdict, SearchResult, SuiteReport

RENDER_MODES = ("human", "machine")


@dataclass
class WitnessReport:
    ring: str
    witness: Witness
    verified: bool

    def to_dict(self) -> dict:
        return {"ring": self.ring, "witness": self.witness.to_dict(), "verified": self.verified}

    @classmethod
    def from_dict(cls, data: dict) -> WitnessReport:
        return cls(ring=data["ring"], witness=Witness.from_dict(data["witness"]), verified=bool(data["verified"]))


@dataclass
class SetListing:
    ring: str
    kind: str
    elements: list[int]
    inverses: list[tuple[int, int]] | None = None

    def to_dict(self) -> dict:
        return {
            "ring": self.ring,
            "kind": self.kind,
            "elements": list(self.elements),
            "inverses": [list(pair) for pair in self.inverses] if self.inverses is not None else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> SetListing:
        inverses = data.get("inverses")
        return cls(
            ring=data["ring"],
            kind=data["kind"],
            elements=[int(v) for v in data["elements"]],
            inverses=[(int(u), int(v)) for u, v in inverses] if inverses is not None else None,
        )


@dataclass
class SearchReport:
    corpus: str
    results: list[SearchResult] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"corpus": self.corpus, "results": [r.to_dict() for r in self.results]}

    @classmethod
    def from_dict(cls, data: dict) -> SearchReport:
        return cls(corpus=data["corpus"], results=[SearchResult.from_dict(r) for r in data["results"]])


Report = ClassificationReport | WitnessReport | SetListing | ClaimVerdict | SuiteReport | SearchReport

REPORT_TYPES: dict[str, type] = {
    "classification": ClassificationReport,
    "witness": WitnessReport,
    "sets": SetListing,
    "claim": ClaimVerdict,
    "suite": SuiteReport,
    "search": SearchReport,
}


def report_type(report: Report) -> str:
    for name, cls in REPORT_TYPES.items():
        if isinstance(report, cls):
            return name
    raise TypeError(f"not a report: {type(report).__name__}")


def render_machine(report: Report) -> str:
    payload = {"type": report_type(report), **report.to_dict()}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def parse_report(text: str) -> Report:
    data = json.loads(text)
    kind = data.pop("type", None)
    if kind not in REPORT_TYPES:
        raise ValueError(f"unknown report type {kind!r}")
    return REPORT_TYPES[kind].from_dict(data)


# --- human rendering ------------------------------------------------------------


def _table(rows: list[tuple[str, ...]]) -> list[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]


def _yes(value: bool) -> str:
    return "yes" if value else "no"


def _human_classification(report: ClassificationReport) -> list[str]:
    sizes = "  ".join(f"{k}: {v}" for k, v in report.sizes.items())
    rows = [("predicate", "verdict", "detail")]
    for r in report.results:
        detail = r.note
        if r.counterwitness is not None and not detail:
            detail = f"counterwitness {r.counterwitness}"
        rows.append((r.name, _yes(r.verdict), detail))
    return [f"ring: {report.label} (order {report.order})", sizes, "", *_table(rows)]


def _human_witness(report: WitnessReport) -> list[str]:
    w = report.witness
    lines = [f"ring: {report.ring}", f"element: {w.element}", f"mode: {w.mode}"]
    if w.parts is None:
        lines.append("witness: none (search exhausted)")
    else:
        lines.append(f"witness: e={w.parts[0]} u={w.parts[1]} ({'re-verified' if report.verified else 'FAILED re-check'})")
    return lines


def _human_sets(report: SetListing) -> list[str]:
    lines = [f"ring: {report.ring}", f"{report.kind} ({len(report.elements)}): {', '.join(map(str, report.elements))}"]
    if report.inverses is not None:
        lines += _table([("unit", "inverse")] + [(str(u), str(v)) for u, v in report.inverses])
    return lines


def _human_claim(verdict: ClaimVerdict) -> str:
    marker = verdict.status.upper()
    vacuous = " (vacuous)" if verdict.vacuous else ""
    witness = f" witness={verdict.witness}" if verdict.witness is not None else ""
    seconds = f" [{verdict.seconds:.3f}s]" if verdict.seconds is not None else ""
    return f"- [{marker}] {verdict.claim} on {verdict.ring}{vacuous}: {verdict.detail}{witness}{seconds}"


def _human_suite(report: SuiteReport) -> list[str]:
    s = report.summary()
    overall = "FAIL" if s["violated"] else "PASS"
    lines = [
        f"starclean suite: {overall} ({s['violated']} violated, {s['verified']} verified, "
        f"{s['vacuous']} vacuous, {s['skipped']} skipped)",
        f"corpus: {report.corpus}",
    ]
    lines += [_human_claim(cell) for cell in report.cells]
    return lines


def _human_search(report: SearchReport) -> list[str]:
    rows = [("weaker", "not stronger", "first ring", "counterwitness")]
    for r in report.results:
        counter = ", ".join(map(str, r.counterwitness)) if r.counterwitness else ""
        rows.append((r.weaker, r.stronger, r.found or f"none found ({r.searched} searched)", counter))
    return [f"corpus: {report.corpus}", *_table(rows)]


def render_human(report: Report) -> str:
    kind = report_type(report)
    if kind == "classification":
        lines = _human_classification(report)
    elif kind == "witness":
        lines = _human_witness(report)
    elif kind == "sets":
        lines = _human_sets(report)
    elif kind == "claim":
        lines = [_human_claim(report)]
    elif kind == "suite":
        lines = _human_suite(report)
    else:
        lines = _human_search(report)
    return "\n".join(lines) + "\n"


def render_report(report: Report, mode: str = "human") -> str:
    if mode not in RENDER_MODES:
        raise ValueError(f"render mode must be one of: {', '.join(RENDER_MODES)}")
    if mode == "machine":
        return render_machine(report)
    return render_human(report)
