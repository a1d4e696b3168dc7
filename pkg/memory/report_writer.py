import csv
import json
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from mathtools.measures import LimitTrace
from mathtools.mellin import MellinSpectrum


logger = logging.getLogger("report_writer")

NUMBER_FORMAT = "%.17g"
TRACE_COLUMNS = ("param", "re", "im")
SPECTRUM_COLUMNS = ("y", "re", "im", "modulus")


def _number(value: float) -> str:
    return NUMBER_FORMAT % float(value)


def _jsonable(value: Any) -> Any:
    """json.dumps fallback for numpy scalars, arrays and complex numbers."""
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, tuple):
        return list(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def trace_filename(index: int, name: str) -> str:
    """Deterministic CSV file name for the index-th trace of a report."""
    slug = re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_")[:60] or "trace"
    return f"trace_{index:02d}_{slug}.csv"


def dumps_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_jsonable) + "\n"


class ReportWriter:
    """
    Writes scenario results: one CSV per trace, a JSON report and a
    timing sidecar. Identical reports produce identical bytes; wall time
    lives only in timing.json.
    """

    def __init__(self, out_dir: str):
        self.out_dir = Path(out_dir)

    def emit(
        self,
        report: Dict[str, Any],
        traces: Sequence[LimitTrace],
        fmt: str = "both",
        timing: Optional[Dict[str, Any]] = None,
    ) -> List[str]:
        """
        Write the report files.

        Args:
            report: JSON-ready scenario report
            traces: Traces in report order
            fmt: csv, json or both
            timing: Wall-time information for the sidecar

        Returns:
            Paths of the written files
        """
        self.out_dir.mkdir(parents=True, exist_ok=True)
        written: List[str] = []

        if fmt in ("csv", "both"):
            for index, trace in enumerate(traces):
                path = self.out_dir / trace_filename(index, trace.name)
                self.write_trace_csv(path, trace.grid, trace.values)
                written.append(str(path))

        if fmt in ("json", "both"):
            path = self.out_dir / "report.json"
            path.write_text(dumps_report(report), encoding="utf-8")
            written.append(str(path))

        if timing is not None:
            path = self.out_dir / "timing.json"
            path.write_text(json.dumps(timing, sort_keys=True, indent=2, default=_jsonable) + "\n", encoding="utf-8")
            written.append(str(path))

        logger.info(f"Wrote {len(written)} file(s) to {self.out_dir}")
        return written

    @staticmethod
    def write_trace_csv(path: Path, grid: Sequence[float], values: Sequence[complex]):
        values = np.asarray(values)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(TRACE_COLUMNS)
            for param, value in zip(np.asarray(grid, dtype=float), values):
                value = complex(value)
                writer.writerow((_number(param), _number(value.real), _number(value.imag)))

    def write_spectrum(self, spectrum: MellinSpectrum, filename: str = "spectrum.csv") -> str:
        """Spectrum as y,re,im,modulus; located zeros are appended as comment rows."""
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / filename
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(f"# kernel {spectrum.kernel}\n")
            f.write(f"# min_modulus {_number(spectrum.min_modulus)}\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(SPECTRUM_COLUMNS)
            for y, value in zip(spectrum.y_grid, spectrum.values):
                value = complex(value)
                writer.writerow((_number(y), _number(value.real), _number(value.imag), _number(abs(value))))
            for zero in spectrum.zeros:
                f.write(
                    f"# zero y={_number(zero.y)} modulus={_number(zero.modulus)} "
                    f"bracket=[{_number(zero.bracket[0])}, {_number(zero.bracket[1])}]\n"
                )
        return str(path)


def load_trace_csv(path: str) -> Tuple[np.ndarray, np.ndarray]:
    """Read a trace CSV back as (grid, values); values are complex."""
    grid, values = [], []
    with open(path, "r", encoding="utf-8", newline="") as f:
        rows = (line for line in f if not line.startswith("#"))
        reader = csv.DictReader(rows)
        if tuple(reader.fieldnames or ()) != TRACE_COLUMNS:
            raise ValueError(f"{path} is not a trace file (columns {reader.fieldnames})")
        for row in reader:
            grid.append(float(row["param"]))
            values.append(complex(float(row["re"]), float(row["im"])))
    return np.array(grid), np.array(values)

