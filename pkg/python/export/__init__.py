from python.export.csv_export import csv_text, write_csv
from python.export.svg_charts import render_line_chart, write_curve_chart
from python.export.xlsx_export import write_bounds_workbook

__all__ = [
    "csv_text",
    "render_line_chart",
    "write_bounds_workbook",
    "write_csv",
    "write_curve_chart",
]
