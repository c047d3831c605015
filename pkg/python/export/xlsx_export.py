from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import xlsxwriter

from python.format_utils import fmt_csv_float


def write_bounds_workbook(path: str | Path,
                          sheets: Sequence[tuple],
                          widths: Optional[Dict[str, int]] = None) -> Path:
    """Write one worksheet per (name, columns, rows) triple.

    Numbers stay numeric cells; nan and inf, which Excel cannot hold, are
    written as text.
    """
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    widths = widths or {}

    wb = xlsxwriter.Workbook(str(out))
    hdr = wb.add_format({'bold': True, 'bg_color': '#EEF2FF', 'border': 1})
    cell = wb.add_format({'border': 1})
    num = wb.add_format({'border': 1, 'num_format': '0.000000000'})

    def make_sheet(name: str, headers: List[str], rows: List[Dict[str, Any]]):
        ws = wb.add_worksheet(name[:31])
        ws.freeze_panes(1, 0)
        ws.autofilter(0, 0, 0, len(headers) - 1)

        for c, h in enumerate(headers):
            ws.write(0, c, h, hdr)
        for r, row_data in enumerate(rows, start=1):
            for c, key in enumerate(headers):
                value = row_data.get(key)
                if isinstance(value, bool) or value is None:
                    ws.write_string(r, c, fmt_csv_float(value), cell)
                elif isinstance(value, int):
                    ws.write_number(r, c, value, cell)
                elif isinstance(value, float):
                    if value != value or value in (float("inf"), float("-inf")):
                        ws.write_string(r, c, fmt_csv_float(value), cell)
                    else:
                        ws.write_number(r, c, value, num)
                else:
                    ws.write_string(r, c, str(value), cell)
        for c, h in enumerate(headers):
            ws.set_column(c, c, widths.get(h, 14))

    for name, headers, rows in sheets:
        make_sheet(name, list(headers), list(rows))
    wb.close()
    return out
