import csv
import io
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

from python.format_utils import fmt_csv_float


def _cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    return fmt_csv_float(value)


def csv_text(columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> str:
    """Header plus one line per row, columns in the given order, '\\n' endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(columns))
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def write_csv(path: str | Path, columns: Sequence[str], rows: List[Dict[str, Any]]) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(csv_text(columns, rows).encode("utf-8"))
    return out
