"""
Report records for the command line
"""

from .reports import (
    CheckReport,
    CountReportModel,
    PolynomialReport,
    RootCountModel,
    ScanReport,
    ScanRowModel,
    SelftestCheckModel,
    SelftestReport,
    SequenceFlagsModel,
    TableCellModel,
    TableReport,
    WitnessModel,
)

__all__ = [
    'CheckReport',
    'CountReportModel',
    'PolynomialReport',
    'RootCountModel',
    'ScanReport',
    'ScanRowModel',
    'SelftestCheckModel',
    'SelftestReport',
    'SequenceFlagsModel',
    'TableCellModel',
    'TableReport',
    'WitnessModel',
]
