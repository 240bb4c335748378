"""
Ehrhart Toolkit Package
"""

__version__ = '1.0.0'
__author__ = 'Ehrhart Toolkit Team'

from .utils import get_logger, ConfigLoader
from .core import (
    Poly,
    MagicForm,
    HStarVector,
    GraphSpec,
    family_ehrhart,
    parse_family,
    parse_graph,
    power_to_magic,
    power_to_hstar,
    is_magic_positive,
    ehrhart_from_counts,
    real_root_report,
)

__all__ = [
    'get_logger',
    'ConfigLoader',
    'Poly',
    'MagicForm',
    'HStarVector',
    'GraphSpec',
    'family_ehrhart',
    'parse_family',
    'parse_graph',
    'power_to_magic',
    'power_to_hstar',
    'is_magic_positive',
    'ehrhart_from_counts',
    'real_root_report',
]
