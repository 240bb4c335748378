"""
Cross-oracle self test

Each check recomputes a published value or an identity two independent
ways and reports pass/fail with a short detail string. Ranges are kept
small enough for the whole suite to finish in well under a minute.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Tuple

from ..utils.logger import get_logger
from .analysis import cycle_C, cycle_C_case, cycle_coeff_via_C, hstar_report
from .bases import MagicForm, is_magic_positive, is_palindromic, magic_to_power, power_to_magic
from .counting import (
    BipartiteOracle,
    GraphDfsOracle,
    MinusEdgeOracle,
    count_cycle_dual,
    count_stasheff_dual,
    ehrhart_from_counts,
    parse_graph,
    spread_count,
    spread_count_brute,
)
from .errors import EhrhartError
from .exactpoly import Poly, format_rational
from .families import (
    FamilyId,
    FamilyKind,
    cycle_dual,
    family_ehrhart,
    stasheff_aux,
    stasheff_dual,
    stasheff_induction_certificate,
    type_a_dual,
)
from .scanner import bipartite_cell, scan_cycle_row

logger = get_logger(__name__)

CheckResult = Tuple[bool, str]


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str

    def to_record(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _fractions(*values: str) -> Tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


STASHEFF_POWER = {
    2: _fractions("1", "7/2", "7/2"),
    3: _fractions("1", "5", "9", "6"),
    4: _fractions("1", "13/2", "67/4", "41/2", "41/4"),
    5: _fractions("1", "8", "107/4", "47", "175/4", "35/2"),
}

STASHEFF_MAGIC = {
    2: _fractions("1", "3/2", "1"),
    3: _fractions("1", "2", "2", "1"),
    4: _fractions("1", "5/2", "13/4", "5/2", "1"),
    5: _fractions("1", "3", "19/4", "19/4", "3", "1"),
}

K37_MAGIC = _fractions("1", "27/5", "34/5", "-142/15", "88/5", "88/5", "-142/15", "34/5", "27/5", "1")
K10_MINUS_EDGE_POWER = _fractions("1", "149/15", "45", "1084/9", "210", "3766/15", "210", "364/3", "46", "92/9")
K10_MINUS_EDGE_MAGIC = _fractions("1", "14/15", "23/15", "-19/45", "31/15", "31/15", "-19/45", "23/15", "14/15", "1")


# ========== CHECK 1: STASHEFF TABLE ========== #

def check_stasheff_table() -> CheckResult:
    for d, expected in STASHEFF_POWER.items():
        polynomial = stasheff_dual(d)
        if polynomial.coeffs != expected:
            return False, f"power basis mismatch at d={d}: {polynomial}"
        magic = power_to_magic(polynomial, d)
        if magic.a != STASHEFF_MAGIC[d]:
            return False, f"magic basis mismatch at d={d}"
    return True, "d=2..5 power and magic coefficients match"


# ========== CHECK 2: RECURRENCE VS BOX COUNTING ========== #

def check_stasheff_counting(max_d: int = 4, max_n: int = 4) -> CheckResult:
    for d in range(1, max_d + 1):
        polynomial = stasheff_dual(d)
        for n in range(max_n + 1):
            counted = count_stasheff_dual(d, n)
            if counted != polynomial(n):
                return False, f"d={d} n={n}: counted {counted}, recurrence {polynomial(n)}"
    return True, f"d<={max_d}, n<={max_n}"


# ========== CHECK 3: CYCLE FORMULA VS BOX COUNTING ========== #

def check_cycle_counting(max_d: int = 5, max_n: int = 3) -> CheckResult:
    for d in range(1, max_d + 1):
        polynomial = cycle_dual(d)
        for n in range(max_n + 1):
            counted = count_cycle_dual(d, n)
            if counted != polynomial(n):
                return False, f"d={d} n={n}: counted {counted}, formula {polynomial(n)}"
    return True, f"d<={max_d}, n<={max_n}"


# ========== CHECK 4: K_{3,7} COUNTEREXAMPLE ========== #

def check_k37() -> CheckResult:
    oracle = BipartiteOracle(3, 7)
    polynomial = ehrhart_from_counts(oracle, 9)
    if oracle.count(1) != 2967:
        return False, f"E(1) = {oracle.count(1)}"
    if polynomial.leading != Fraction(128, 3):
        return False, f"leading coefficient {format_rational(polynomial.leading)}"
    if polynomial.coefficient(1) != Fraction(72, 5) or polynomial.coefficient(0) != 1:
        return False, "trailing coefficients differ"
    magic = power_to_magic(polynomial, 9)
    if magic.a != K37_MAGIC:
        return False, "magic coefficients differ"
    if polynomial != magic_to_power(MagicForm(9, K37_MAGIC)):
        return False, "magic expansion does not reproduce the count polynomial"
    return True, "leading 128/3, witnesses -142/15 at 3 and 6"


# ========== CHECK 5: K_10 MINUS AN EDGE ========== #

def check_k10_minus_edge() -> CheckResult:
    oracle = MinusEdgeOracle(10)
    polynomial = ehrhart_from_counts(oracle, 9)
    if oracle.count(1) != 1025:
        return False, f"E(1) = {oracle.count(1)}"
    if polynomial.leading != Fraction(92, 9):
        return False, f"leading coefficient {format_rational(polynomial.leading)}"
    if polynomial.coeffs != K10_MINUS_EDGE_POWER:
        return False, f"power coefficients {polynomial.to_strings()}"
    magic = power_to_magic(polynomial, 9)
    if magic.a != K10_MINUS_EDGE_MAGIC:
        return False, "magic coefficients differ"
    verdict = is_magic_positive(magic)
    expected = ((3, Fraction(-19, 45)), (6, Fraction(-19, 45)))
    if verdict.witnesses != expected:
        return False, f"witnesses {verdict.to_record()['witnesses']}"
    return True, "leading 92/9, witnesses -19/45 at 3 and 6"


# ========== CHECK 6: BIPARTITE GRID BOUNDARY ========== #

def check_bipartite_boundary() -> CheckResult:
    if not bipartite_cell((2, 8)).magic_positive:
        return False, "K_{2,8} should be magic positive"
    cell = bipartite_cell((2, 9))
    if cell.magic_positive:
        return False, "K_{2,9} should not be magic positive"
    if not cell.hstar_real_rooted:
        return False, "K_{2,9} h* should be real-rooted"
    return True, "K_{2,8} positive, K_{2,9} negative"


# ========== CHECK 7: CYCLE SCAN ========== #

def check_cycle_scan(max_d: int = 40) -> CheckResult:
    for d in range(2, max_d + 1):
        row = scan_cycle_row(d)
        if not row.ok:
            return False, f"cycle d={d} not magic positive and palindromic"
    return True, f"d=2..{max_d} magic positive"


# ========== CHECK 8: C_I MACHINERY ========== #

def check_cycle_machinery(max_d: int = 9, closed_form_d: int = 16) -> CheckResult:
    for d in range(1, max_d + 1):
        magic = power_to_magic(cycle_dual(d), d)
        for i in range(d + 1):
            if cycle_coeff_via_C(d, i) != magic.a[i]:
                return False, f"sum of C_I differs from a_{i} at d={d}"
    for d in range(2, closed_form_d + 1):
        for i in range(1, d + 1):
            if cycle_C_case(d, [i]).closed_form != cycle_C(d, [i]):
                return False, f"single closed form fails at d={d}, I={{{i}}}"
            for j in range(i + 1, d + 1):
                if cycle_C_case(d, [i, j]).closed_form != cycle_C(d, [i, j]):
                    return False, f"pair closed form fails at d={d}, I={{{i},{j}}}"
    if cycle_C(6, [1, 2, 4]) * 720 != -76:
        return False, "6! * C_{1,2,4} != -76"
    return True, f"a_i = sum C_I for d<={max_d}; closed forms for d<={closed_form_d}"


# ========== CHECK 9: STASHEFF INDUCTION ========== #

def check_stasheff_induction(max_d: int = 16) -> CheckResult:
    base = power_to_magic(stasheff_aux(1), 1)
    if base.a != (Fraction(1), Fraction(1, 2)):
        return False, "F_1 should be (n+1) + n/2"
    for d in range(1, max_d + 1):
        if not is_magic_positive(power_to_magic(stasheff_dual(d), d)).positive:
            return False, f"E_{d} not magic positive"
        if not is_magic_positive(power_to_magic(stasheff_aux(d), d)).positive:
            return False, f"F_{d} not magic positive"
        if d >= 2 and not stasheff_induction_certificate(d).holds:
            return False, f"induction identity fails at d={d}"
    return True, f"d=1..{max_d}"


def _family_polynomials(max_d: int) -> List[Tuple[str, Poly, int]]:
    entries = []
    for kind in FamilyKind:
        for d in range(1 if kind is FamilyKind.CYCLE else 0, max_d + 1):
            entries.append((f"{kind.value}:{d}", family_ehrhart(FamilyId(kind, d)), d))
    return entries


# ========== CHECK 10: H* SUITE ========== #

def check_hstar_suite(max_d: int = 8) -> CheckResult:
    entries = _family_polynomials(max_d)
    entries.append(("k_bipartite:3,7", ehrhart_from_counts(BipartiteOracle(3, 7), 9), 9))
    entries.append(("complete_minus_edge:10", ehrhart_from_counts(MinusEdgeOracle(10), 9), 9))
    for name, polynomial, d in entries:
        report = hstar_report(polynomial, d)
        if not report.healthy:
            return False, f"{name}: h* {[format_rational(x) for x in report.vector.h]} fails"
    return True, f"{len(entries)} polynomials"


# ========== CHECK 11: REFLEXIVITY ========== #

def check_reflexivity(max_d: int = 10) -> CheckResult:
    for name, polynomial, d in _family_polynomials(max_d):
        magic = power_to_magic(polynomial, d)
        if magic.a[0] != 1 or magic.a[d] != 1 or not is_palindromic(magic):
            return False, f"{name} magic form is not palindromic with unit ends"
    return True, f"all families d<={max_d}"


# ========== CHECK 12: TRIANGULATION ========== #

def check_triangulation(max_n: int = 3) -> CheckResult:
    for k in range(4):
        for s in range(7):
            if spread_count(k, s) != spread_count_brute(k, s):
                return False, f"N_{k}({s}) closed form differs from enumeration"
    for v in range(2, 7):
        for n in range(6):
            if sum(spread_count(v - 1, s) for s in range(n + 1)) != type_a_dual(v - 1)(n):
                return False, f"K_{v} spread sum differs from the typeA closed form at n={n}"
    shapes = {
        "k_bipartite:2,2": BipartiteOracle(2, 2),
        "k_bipartite:2,3": BipartiteOracle(2, 3),
        "k_bipartite:3,3": BipartiteOracle(3, 3),
        "complete_minus_edge:4": MinusEdgeOracle(4),
        "complete_minus_edge:5": MinusEdgeOracle(5),
    }
    for name, closed in shapes.items():
        graph = parse_graph(name)
        for root in range(graph.num_vertices):
            generic = GraphDfsOracle(graph.with_root(root))
            for n in range(max_n + 1):
                if generic.count(n) != closed.count(n):
                    return False, f"{name} root={root} n={n}: dfs {generic.count(n)} vs closed {closed.count(n)}"
    return True, "spread kernel and closed counters agree with the generic counter"


SELFTEST_CHECKS: Dict[str, Callable[[], CheckResult]] = {
    'stasheff_table': check_stasheff_table,
    'stasheff_counting': check_stasheff_counting,
    'cycle_counting': check_cycle_counting,
    'k37_counterexample': check_k37,
    'k10_minus_edge_counterexample': check_k10_minus_edge,
    'bipartite_boundary': check_bipartite_boundary,
    'cycle_scan': check_cycle_scan,
    'cycle_machinery': check_cycle_machinery,
    'stasheff_induction': check_stasheff_induction,
    'hstar_suite': check_hstar_suite,
    'reflexivity': check_reflexivity,
    'triangulation': check_triangulation,
}


class SelfTestRunner:
    """Runs every registered check, isolating failures per check"""

    def __init__(self, checks: Dict[str, Callable[[], CheckResult]] = None):
        self._lock = threading.RLock()
        self.checks = dict(checks or SELFTEST_CHECKS)
        self._outcomes: List[CheckOutcome] = []
        logger.info(f"SelfTestRunner initialized | Checks: {len(self.checks)}")

    def run(self) -> List[CheckOutcome]:
        with self._lock:
            self._outcomes = []
            for name, check in self.checks.items():
                try:
                    passed, detail = check()
                except EhrhartError as e:
                    logger.error(f"Self-test {name} raised: {e}", exc_info=True)
                    passed, detail = False, f"{type(e).__name__}: {e}"
                if not passed:
                    logger.warning(f"Self-test {name} failed: {detail}")
                self._outcomes.append(CheckOutcome(name=name, passed=passed, detail=detail))
            return list(self._outcomes)

    @property
    def all_passed(self) -> bool:
        with self._lock:
            return bool(self._outcomes) and all(outcome.passed for outcome in self._outcomes)


__all__ = ["CheckOutcome", "SELFTEST_CHECKS", "SelfTestRunner"]
