"""
Utilities Package
"""

from .logger import get_logger, set_package_level
from .config_loader import ConfigLoader
from .report_writer import ReportWriter

__all__ = ['get_logger', 'set_package_level', 'ConfigLoader', 'ReportWriter']
