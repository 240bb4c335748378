"""
Coefficient analysis

- exact real-root counting (squarefree reduction + Sturm chain)
- sequence flags: nonnegative, log-concave, unimodal, palindromic
- the B_i / C_I coefficient machinery for the cycle duals
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .bases import HStarVector, hstar_sum_matches, power_to_hstar
from .errors import BudgetExceededError, ZeroPolynomialError
from .exactpoly import Poly, make_monic, poly_derivative, poly_divmod, poly_gcd, to_rational
from ..utils.logger import get_logger

logger = get_logger(__name__)


# ========== REAL ROOTS ========== #

@dataclass(frozen=True)
class RootCountReport:
    squarefree_degree: int
    real_roots: int

    @property
    def real_rooted(self) -> bool:
        return self.real_roots == self.squarefree_degree

    def to_record(self) -> dict:
        return {
            "squarefree_degree": self.squarefree_degree,
            "real_roots": self.real_roots,
            "real_rooted": self.real_rooted,
        }


def squarefree_part(p: Poly) -> Poly:
    """p / gcd(p, p'), made monic"""
    if p.is_zero:
        raise ZeroPolynomialError("zero polynomial has no squarefree part")
    g = poly_gcd(p, poly_derivative(p))
    quotient, _ = poly_divmod(p, g)
    return make_monic(quotient)


def sturm_chain(p: Poly) -> List[Poly]:
    """p, p', then negated remainders until the remainder vanishes"""
    chain = [p, poly_derivative(p)]
    while not chain[-1].is_zero:
        _, remainder = poly_divmod(chain[-2], chain[-1])
        chain.append(-remainder)
    chain.pop()
    return chain


def _sign_changes(signs: Iterable[int]) -> int:
    changes = 0
    previous = 0
    for sign in signs:
        if sign == 0:
            continue
        if previous and sign != previous:
            changes += 1
        previous = sign
    return changes


def _sign_at_infinity(p: Poly, positive: bool) -> int:
    sign = 1 if p.leading > 0 else -1
    if not positive and p.degree % 2 == 1:
        sign = -sign
    return sign


def real_root_report(p: Poly) -> RootCountReport:
    """
    Count distinct real roots exactly

    Raises:
        ZeroPolynomialError: p is the zero polynomial
    """
    if p.is_zero:
        raise ZeroPolynomialError("real_root_report is undefined for the zero polynomial")
    core = squarefree_part(p)
    if core.degree == 0:
        return RootCountReport(squarefree_degree=0, real_roots=0)
    chain = sturm_chain(core)
    at_minus = _sign_changes(_sign_at_infinity(q, positive=False) for q in chain)
    at_plus = _sign_changes(_sign_at_infinity(q, positive=True) for q in chain)
    return RootCountReport(squarefree_degree=core.degree, real_roots=at_minus - at_plus)


# ========== SEQUENCES ========== #

@dataclass(frozen=True)
class SequenceFlags:
    nonnegative: bool
    log_concave: bool
    unimodal: bool
    palindromic: bool

    def to_record(self) -> dict:
        return {
            "nonnegative": self.nonnegative,
            "log_concave": self.log_concave,
            "unimodal": self.unimodal,
            "palindromic": self.palindromic,
        }


def _is_unimodal(values: Sequence[Fraction]) -> bool:
    k = 0
    while k + 1 < len(values) and values[k] <= values[k + 1]:
        k += 1
    return all(values[i] >= values[i + 1] for i in range(k, len(values) - 1))


def sequence_checks(seq: Sequence) -> SequenceFlags:
    values = [to_rational(x) for x in seq]
    size = len(values)
    return SequenceFlags(
        nonnegative=all(x >= 0 for x in values),
        log_concave=all(values[i] ** 2 >= values[i - 1] * values[i + 1] for i in range(1, size - 1)),
        unimodal=_is_unimodal(values),
        palindromic=all(values[i] == values[size - 1 - i] for i in range(size)),
    )


@dataclass(frozen=True)
class HStarReport:
    vector: HStarVector
    integral: bool
    h0_is_one: bool
    sum_matches: bool
    flags: SequenceFlags
    roots: RootCountReport

    @property
    def healthy(self) -> bool:
        """Nonnegative integer palindromic vector, h*_0 = 1, real-rooted"""
        return (
            self.integral
            and self.h0_is_one
            and self.sum_matches
            and self.flags.nonnegative
            and self.flags.palindromic
            and self.roots.real_rooted
        )


def hstar_report(p: Poly, d: int) -> HStarReport:
    vector = power_to_hstar(p, d)
    return HStarReport(
        vector=vector,
        integral=all(x.denominator == 1 for x in vector.h),
        h0_is_one=vector.h[0] == 1,
        sum_matches=hstar_sum_matches(vector, p),
        flags=sequence_checks(vector.h),
        roots=real_root_report(vector.as_poly()),
    )


# ========== CYCLE COEFFICIENT MACHINERY ========== #

@dataclass(frozen=True)
class BMatrix:
    """
    2 x d shift matrix: b[1][j] = j - i, b[2][j] = d + 1 - j - i, j = 1..d

    Row 2 is row 1 reversed.
    """

    d: int
    i: int

    def __post_init__(self):
        if not 0 <= self.i <= self.d // 2:
            raise ValueError(f"shift index {self.i} outside 0..{self.d // 2}")

    def entry(self, row: int, j: int) -> int:
        if not 1 <= j <= self.d:
            raise IndexError(f"column {j} outside 1..{self.d}")
        if row == 1:
            return j - self.i
        if row == 2:
            return self.d + 1 - j - self.i
        raise IndexError(f"row {row} must be 1 or 2")

    def rows(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        columns = range(1, self.d + 1)
        return (
            tuple(self.entry(1, j) for j in columns),
            tuple(self.entry(2, j) for j in columns),
        )


def _as_index_set(d: int, indices: Iterable[int]) -> FrozenSet[int]:
    chosen = frozenset(int(j) for j in indices)
    for j in chosen:
        if not 1 <= j <= d:
            raise ValueError(f"index {j} outside 1..{d}")
    return chosen


@lru_cache(maxsize=4096)
def _b_rows(d: int, i: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    return BMatrix(d, i).rows()


def _scaled_b_term(d: int, i: int, chosen: FrozenSet[int]) -> int:
    """d! * B_i^I as an exact integer"""
    if i >= 1 and (i not in chosen or (d + 1 - i) in chosen):
        return 0
    first, second = _b_rows(d, i)
    product = comb(d + 1, i)
    for j in range(1, d + 1):
        product *= second[j - 1] if j in chosen else first[j - 1]
        if product == 0:
            return 0
    return -product if i % 2 else product


def cycle_B_term(d: int, i: int, indices: Iterable[int]) -> Fraction:
    """
    B_i^I = (-1)^i C(d+1, i) / d! * prod_{j in I} b[2][j] * prod_{j not in I} b[1][j]

    Zero for i >= 1 whenever i is not in I or d+1-i is in I.
    """
    if not 0 <= i <= d // 2:
        raise ValueError(f"shift index {i} outside 0..{d // 2}")
    chosen = _as_index_set(d, indices)
    return Fraction(_scaled_b_term(d, i, chosen), factorial(d))


def _scaled_c(d: int, chosen: FrozenSet[int]) -> int:
    return sum(_scaled_b_term(d, i, chosen) for i in range(d // 2 + 1))


def cycle_C(d: int, indices: Iterable[int]) -> Fraction:
    """C_I = sum_{i=0}^{floor(d/2)} B_i^I, the i = 0 term included"""
    chosen = _as_index_set(d, indices)
    return Fraction(_scaled_c(d, chosen), factorial(d))


def cycle_coeff_via_C(d: int, i: int, budget: Optional[int] = None) -> Fraction:
    """
    a_i of the cycle dual as the sum of C_I over all i-subsets of 1..d

    Raises:
        BudgetExceededError: C(d, i) subsets exceed the budget
    """
    if not 0 <= i <= d:
        raise ValueError(f"coefficient index {i} outside 0..{d}")
    subsets = comb(d, i)
    if budget is not None and subsets > budget:
        logger.warning(f"cycle_coeff_via_C({d}, {i}): {subsets} subsets exceed budget {budget}")
        raise BudgetExceededError(
            f"{subsets} subsets of size {i} exceed the budget of {budget}",
            budget=budget,
        )
    total = sum(_scaled_c(d, frozenset(I)) for I in combinations(range(1, d + 1), i))
    return Fraction(total, factorial(d))


@dataclass(frozen=True)
class CaseReport:
    label: str
    closed_form: Optional[Fraction]

    @property
    def positive(self) -> Optional[bool]:
        return None if self.closed_form is None else self.closed_form > 0


def cycle_C_case(d: int, indices: Iterable[int]) -> CaseReport:
    """
    Classify I (|I| <= 2) and return the closed form of C_I

    single_low   I = {i}, i <= d//2          i/(d+1-i)
    single_high  I = {i}, i > d//2           (d+1-i)/i
    low          I = {i<j}, j <= d//2        ij/((d+1-i)(d+1-j))
    mixed        I = {i<j}, i <= d//2 < j    ((d+1-j)/j) B_0^{i} + ((d+1-j-i)/(j-i)) B_i^{i}
    base         I = {i<j}, d//2 < i         (d+1-i)(d+1-j)/(ij)
    """
    chosen = sorted(_as_index_set(d, indices))
    half = d // 2
    if len(chosen) == 1:
        i = chosen[0]
        if i <= half:
            return CaseReport("single_low", Fraction(i, d + 1 - i))
        return CaseReport("single_high", Fraction(d + 1 - i, i))
    if len(chosen) == 2:
        i, j = chosen
        if j <= half:
            return CaseReport("low", Fraction(i * j, (d + 1 - i) * (d + 1 - j)))
        if i <= half:
            base_single = Fraction(d + 1 - i, i)
            shifted_single = Fraction(i, d + 1 - i) - base_single
            value = Fraction(d + 1 - j, j) * base_single + Fraction(d + 1 - j - i, j - i) * shifted_single
            return CaseReport("mixed", value)
        return CaseReport("base", Fraction((d + 1 - i) * (d + 1 - j), i * j))
    return CaseReport("unclassified", None)
