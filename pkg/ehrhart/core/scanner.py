"""
Scan Engine - magic positivity over ranges of dimensions and graph grids
Fans whole work units (one d, one (m, m2) cell) out to worker processes
and merges the results in input order
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import partial
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from ..utils.logger import get_logger
from .analysis import hstar_report
from .bases import is_magic_positive, is_palindromic, power_to_magic
from .counting import BipartiteOracle, ehrhart_from_counts
from .errors import EhrhartError
from .exactpoly import format_rational, has_integer_coefficients
from .families import (
    cycle_dual,
    stasheff_aux,
    stasheff_dual,
    stasheff_induction_certificate,
)

logger = get_logger(__name__)


class ScanKind(str, Enum):
    CYCLE = "cycle"
    STASHEFF = "stasheff"


Witness = Tuple[int, Fraction]


@dataclass(frozen=True)
class ScanRow:
    """One dimension of a family scan"""

    kind: ScanKind
    d: int
    magic_positive: bool = False
    palindromic: bool = False
    witnesses: Tuple[Witness, ...] = ()
    # stasheff only
    aux_positive: Optional[bool] = None
    induction_holds: Optional[bool] = None
    integer_coefficients: Optional[bool] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.magic_positive and self.palindromic

    def to_record(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "d": self.d,
            "magic_positive": self.magic_positive,
            "palindromic": self.palindromic,
            "witnesses": [[index, format_rational(value)] for index, value in self.witnesses],
            "aux_positive": self.aux_positive,
            "induction_holds": self.induction_holds,
            "integer_coefficients": self.integer_coefficients,
            "error": self.error,
        }


@dataclass(frozen=True)
class TableCell:
    """One K_{m, m2} cell of the bipartite grid"""

    m: int
    m2: int
    magic_positive: bool = False
    witness: Optional[Witness] = None
    hstar_real_rooted: Optional[bool] = None
    error: Optional[str] = None

    @property
    def symbol(self) -> str:
        if self.error is not None:
            return "?"
        return "+" if self.magic_positive else "-"

    def to_record(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "m2": self.m2,
            "magic_positive": self.magic_positive,
            "witness_index": None if self.witness is None else self.witness[0],
            "witness_value": None if self.witness is None else format_rational(self.witness[1]),
            "hstar_real_rooted": self.hstar_real_rooted,
            "error": self.error,
        }


@dataclass
class ScanSummary:
    """Container for scan results"""

    kind: ScanKind
    max_d: int
    rows: List[ScanRow] = field(default_factory=list)

    @property
    def all_positive(self) -> bool:
        return bool(self.rows) and all(row.ok for row in self.rows)

    @property
    def failures(self) -> List[int]:
        return [row.d for row in self.rows if not row.ok]

    def summary_line(self) -> str:
        verdict = "all magic positive" if self.all_positive else f"failures at d={self.failures}"
        return f"{self.kind.value} scan d=2..{self.max_d}: {len(self.rows)} rows, {verdict}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "max_d": self.max_d,
            "rows": len(self.rows),
            "all_positive": self.all_positive,
            "failures": self.failures,
        }


@dataclass
class TableSummary:
    max_side: int
    max_total: int
    cells: List[TableCell] = field(default_factory=list)

    def cell(self, m: int, m2: int) -> Optional[TableCell]:
        for candidate in self.cells:
            if candidate.m == m and candidate.m2 == m2:
                return candidate
        return None

    def grid(self) -> Dict[int, Dict[int, str]]:
        rows: Dict[int, Dict[int, str]] = {}
        for cell in self.cells:
            rows.setdefault(cell.m, {})[cell.m2] = cell.symbol
        return rows

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_side": self.max_side,
            "max_total": self.max_total,
            "cells": len(self.cells),
            "positive": sum(1 for cell in self.cells if cell.magic_positive),
            "errors": sum(1 for cell in self.cells if cell.error is not None),
        }


# ========== WORK UNITS (module level so worker processes can pickle them) ========== #

def scan_cycle_row(d: int) -> ScanRow:
    try:
        magic = power_to_magic(cycle_dual(d), d)
        verdict = is_magic_positive(magic)
        return ScanRow(
            kind=ScanKind.CYCLE,
            d=d,
            magic_positive=verdict.positive,
            palindromic=is_palindromic(magic),
            witnesses=verdict.witnesses,
        )
    except EhrhartError as e:
        logger.error(f"cycle scan failed at d={d}: {e}", exc_info=True)
        return ScanRow(kind=ScanKind.CYCLE, d=d, error=str(e))


def scan_stasheff_row(d: int) -> ScanRow:
    try:
        polynomial = stasheff_dual(d)
        magic = power_to_magic(polynomial, d)
        verdict = is_magic_positive(magic)
        aux_positive = is_magic_positive(power_to_magic(stasheff_aux(d), d)).positive if d >= 1 else None
        induction = stasheff_induction_certificate(d).holds if d >= 2 else None
        return ScanRow(
            kind=ScanKind.STASHEFF,
            d=d,
            magic_positive=verdict.positive,
            palindromic=is_palindromic(magic),
            witnesses=verdict.witnesses,
            aux_positive=aux_positive,
            induction_holds=induction,
            integer_coefficients=has_integer_coefficients(polynomial),
        )
    except EhrhartError as e:
        logger.error(f"stasheff scan failed at d={d}: {e}", exc_info=True)
        return ScanRow(kind=ScanKind.STASHEFF, d=d, error=str(e))


def bipartite_cell(shape: Tuple[int, int], oversample: int = 1) -> TableCell:
    m, m2 = shape
    d = m + m2 - 1
    try:
        polynomial = ehrhart_from_counts(BipartiteOracle(m, m2), d, oversample)
        verdict = is_magic_positive(power_to_magic(polynomial, d))
        roots = hstar_report(polynomial, d).roots
        return TableCell(
            m=m,
            m2=m2,
            magic_positive=verdict.positive,
            witness=verdict.witnesses[0] if verdict.witnesses else None,
            hstar_real_rooted=roots.real_rooted,
        )
    except EhrhartError as e:
        logger.error(f"K_{{{m},{m2}}} cell failed: {e}", exc_info=True)
        return TableCell(m=m, m2=m2, error=str(e))


_ROW_BUILDERS: Dict[ScanKind, Callable[[int], ScanRow]] = {
    ScanKind.CYCLE: scan_cycle_row,
    ScanKind.STASHEFF: scan_stasheff_row,
}


def table_shapes(max_side: int, max_total: int) -> List[Tuple[int, int]]:
    """(m, m2) with 2 <= m, m2 <= max_side and m + m2 <= max_total, row-major"""
    return [
        (m, m2)
        for m in range(2, max_side + 1)
        for m2 in range(2, max_side + 1)
        if m + m2 <= max_total
    ]


class ScanEngine:
    """
    Scan engine for family and grid sweeps

    Features:
    - cycle / stasheff magic-positivity scans over d = 2..max_d
    - the K_{m,m2} magic-positivity grid
    - ordered, streamable results independent of the worker count
    """

    def __init__(self, config: Dict[str, Any] = None):
        """Initialize scan engine"""
        self._lock = threading.RLock()

        self.config = config or {}
        self.threads = int(self.config.get('threads', 0))
        self.oversample = int(self.config.get('oversample', 1))
        if self.threads < 0:
            raise ValueError(f"threads must be >= 0, got {self.threads}")

        logger.info(
            f"ScanEngine initialized | Workers: {self.workers} | Oversample: {self.oversample}"
        )

    @property
    def workers(self) -> int:
        if self.threads == 0:
            return os.cpu_count() or 1
        return self.threads

    def _ordered_map(self, fn: Callable, items: Iterable) -> Iterator:
        items = list(items)
        if self.workers == 1 or len(items) <= 1:
            yield from map(fn, items)
            return
        with ProcessPoolExecutor(max_workers=min(self.workers, len(items))) as executor:
            yield from executor.map(fn, items)

    def iter_scan(self, kind: ScanKind, max_d: int) -> Iterator[ScanRow]:
        """
        Yield scan rows for d = 2..max_d in order as they complete

        Args:
            kind: cycle or stasheff
            max_d: Largest dimension, at least 2
        """
        kind = ScanKind(kind)
        if max_d < 2:
            raise ValueError(f"max_d must be >= 2, got {max_d}")
        logger.info(f"Starting {kind.value} scan | d=2..{max_d}")
        for row in self._ordered_map(_ROW_BUILDERS[kind], range(2, max_d + 1)):
            logger.debug(f"{kind.value} d={row.d} positive={row.magic_positive}")
            yield row

    def run_scan(self, kind: ScanKind, max_d: int) -> ScanSummary:
        with self._lock:
            summary = ScanSummary(kind=ScanKind(kind), max_d=max_d)
            summary.rows.extend(self.iter_scan(kind, max_d))
            logger.info(f"Scan complete | {summary.summary_line()}")
            return summary

    def run_table(self, max_side: int = 11, max_total: int = 13) -> TableSummary:
        """
        Magic positivity of the K_{m,m2} duals over the grid

        Args:
            max_side: Largest side size
            max_total: Largest m + m2

        Returns:
            TableSummary with cells in row-major order
        """
        with self._lock:
            shapes = table_shapes(max_side, max_total)
            logger.info(f"Starting bipartite table | {len(shapes)} cells")
            summary = TableSummary(max_side=max_side, max_total=max_total)
            cell_builder = partial(bipartite_cell, oversample=self.oversample)
            summary.cells.extend(self._ordered_map(cell_builder, shapes))
            logger.info(f"Table complete | {summary.to_dict()}")
            return summary


__all__ = [
    "ScanEngine",
    "ScanKind",
    "ScanRow",
    "ScanSummary",
    "TableCell",
    "TableSummary",
    "bipartite_cell",
    "scan_cycle_row",
    "scan_stasheff_row",
    "table_shapes",
]
