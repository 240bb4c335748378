"""
Core components for the Ehrhart toolkit.

This package contains exact polynomial arithmetic, basis changes, the
closed-form families, the counting oracles, coefficient analysis and the
scan / self-test engines built on them.
"""

from .errors import (
    BudgetExceededError,
    DegreeError,
    EhrhartError,
    GraphError,
    InterpolationError,
    ParseError,
    ZeroPolynomialError,
)
from .exactpoly import (
    ArithOp,
    Poly,
    Rational,
    big_binom,
    binom_linear,
    format_rational,
    lagrange_interpolate,
    parse_rational,
    poly_arith,
    poly_eval,
)
from .bases import (
    HStarVector,
    MagicForm,
    MagicVerdict,
    hstar_to_power,
    is_magic_positive,
    is_palindromic,
    magic_to_power,
    power_to_hstar,
    power_to_magic,
)
from .families import (
    FamilyId,
    FamilyKind,
    cycle_dual,
    family_ehrhart,
    get_family_builder,
    parse_family,
    stasheff_aux,
    stasheff_dual,
)
from .counting import (
    CountingOracle,
    CountMethod,
    CountReport,
    GraphSpec,
    choose_oracle,
    count_bipartite_dual,
    count_complete_minus_edge_dual,
    count_cycle_dual,
    count_graph_dual,
    count_stasheff_dual,
    ehrhart_from_counts,
    parse_graph,
    spread_count,
)
from .analysis import (
    BMatrix,
    RootCountReport,
    cycle_B_term,
    cycle_C,
    cycle_coeff_via_C,
    hstar_report,
    real_root_report,
    sequence_checks,
)
from .scanner import ScanEngine, ScanKind, ScanSummary, TableSummary
from .selftest import SelfTestRunner

__all__ = [
    'EhrhartError',
    'ParseError',
    'GraphError',
    'BudgetExceededError',
    'DegreeError',
    'InterpolationError',
    'ZeroPolynomialError',
    'Rational',
    'Poly',
    'ArithOp',
    'poly_arith',
    'poly_eval',
    'binom_linear',
    'lagrange_interpolate',
    'big_binom',
    'parse_rational',
    'format_rational',
    'MagicForm',
    'HStarVector',
    'MagicVerdict',
    'power_to_magic',
    'magic_to_power',
    'is_magic_positive',
    'is_palindromic',
    'power_to_hstar',
    'hstar_to_power',
    'FamilyId',
    'FamilyKind',
    'parse_family',
    'get_family_builder',
    'family_ehrhart',
    'stasheff_dual',
    'stasheff_aux',
    'cycle_dual',
    'GraphSpec',
    'CountReport',
    'CountMethod',
    'CountingOracle',
    'parse_graph',
    'choose_oracle',
    'count_stasheff_dual',
    'count_cycle_dual',
    'count_graph_dual',
    'count_bipartite_dual',
    'count_complete_minus_edge_dual',
    'spread_count',
    'ehrhart_from_counts',
    'BMatrix',
    'RootCountReport',
    'real_root_report',
    'sequence_checks',
    'hstar_report',
    'cycle_B_term',
    'cycle_C',
    'cycle_coeff_via_C',
    'ScanEngine',
    'ScanKind',
    'ScanSummary',
    'TableSummary',
    'SelfTestRunner',
]
