"""
Report writer: text, JSON or CSV
"""

from __future__ import annotations

import io
import os
import sys
from typing import Any, Dict, List, Optional, TextIO

import pandas as pd

FORMATS = ("text", "json", "csv")


class ReportWriter:
    """
    Render report models to a stream, and optionally mirror them to a file

    Reports provide text_lines() and table_rows(); JSON comes from the
    pydantic model itself.
    """

    def __init__(self, fmt: str = "text", stream: Optional[TextIO] = None, file_path: Optional[str] = None):
        if fmt not in FORMATS:
            raise ValueError(f"Unknown output format {fmt!r}; expected one of {FORMATS}")
        self.fmt = fmt
        self.stream = stream if stream is not None else sys.stdout
        self.file_path = file_path
        if file_path:
            self._ensure_dir()

    def _ensure_dir(self):
        directory = os.path.dirname(self.file_path)
        if directory and not os.path.exists(directory):
            os.makedirs(directory, exist_ok=True)

    def render(self, report) -> str:
        if self.fmt == "json":
            return report.model_dump_json(indent=2) + "\n"
        if self.fmt == "csv":
            return rows_to_csv(report.table_rows())
        return "\n".join(report.text_lines()) + "\n"

    def write(self, report):
        text = self.render(report)
        self.stream.write(text)
        self.stream.flush()
        self._save_text(text)

    def save(self, report):
        """Mirror a report to the output file only"""
        self._save_text(self.render(report))

    def _save_text(self, text: str):
        if not self.file_path:
            return
        with open(self.file_path, "w", newline="", encoding="utf-8") as f:
            f.write(text)

    def write_line(self, line: str):
        """Stream a single text line, used while a scan is still running"""
        self.stream.write(line + "\n")
        self.stream.flush()


def rows_to_csv(rows: List[Dict[str, Any]]) -> str:
    buffer = io.StringIO()
    pd.DataFrame(rows).to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()
