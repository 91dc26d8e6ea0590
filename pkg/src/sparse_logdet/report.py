"""Run reports and their CSV / JSON serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

from .errors import SinkError

CSV_COLUMNS = ("j", "density", "D", "S", "rel_err_D", "rel_err_S")


@dataclass
class MatrixInfo:
    name: str
    n: int
    nnz: int
    density: float


@dataclass
class Record:
    j: int
    density: float
    D: float
    S: float | None = None
    rel_err_D: float | None = None
    rel_err_S: float | None = None


@dataclass
class Report:
    matrix: MatrixInfo
    m: int
    variant: str
    records: list[Record]
    exact: float | None = None
    exact_source: str | None = None
    timings: dict[str, float] | None = None
    peak_memory_kb: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("timings", "peak_memory_kb"):
            if out[key] is None:
                del out[key]
        if not out["notes"]:
            del out["notes"]
        return out

    @classmethod
    def from_dict(cls, data) -> "Report":
        data = dict(data)
        data["matrix"] = MatrixInfo(**data["matrix"])
        data["records"] = [Record(**r) for r in data["records"]]
        return cls(**data)


def relative_error(value, reference):
    if value is None or reference is None:
        return None
    return abs(value - reference) / abs(reference)


def build_report(info, series, splines, variant, exact=None, exact_source=None):
    """Combine an estimate series and its spline series into a :class:`Report`.

    ``splines`` holds ``S^2..S^m`` (may be empty).
    """
    records = []
    for j in range(1, series.m + 1):
        S = splines[j - 2] if j >= 2 and len(splines) >= j - 1 else None
        records.append(
            Record(
                j=j,
                density=series.x[j - 1],
                D=series.D[j - 1],
                S=S,
                rel_err_D=relative_error(series.D[j - 1], exact),
                rel_err_S=relative_error(S, exact),
            )
        )
    return Report(
        matrix=info, m=series.m, variant=variant, records=records,
        exact=exact, exact_source=exact_source if exact is not None else None,
    )


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def report_to_csv(r: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in r.records:
        w.writerow([_cell(getattr(rec, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def report_to_json(r: Report) -> str:
    return json.dumps(r.to_dict(), indent=2) + "\n"


def write_report(r: Report, fmt, sink) -> None:
    if fmt == "csv":
        text = report_to_csv(r)
    elif fmt == "json":
        text = report_to_json(r)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    try:
        if isinstance(sink, io.TextIOBase):
            sink.write(text)
        else:
            sink.write(text.encode("utf-8"))
    except (OSError, ValueError) as exc:
        raise SinkError(f"could not write report: {exc}") from exc
