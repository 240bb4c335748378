"""
Basis changes for Ehrhart polynomials

Three bases of the polynomials of degree <= d are supported:

- power basis      n^i
- magic basis      n^i (1+n)^(d-i)
- h*-basis         C(n+d-j, d)

The magic and h* forms always carry their ambient degree d, because the
same polynomial has different coefficients for different d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Tuple

from .errors import DegreeError, EhrhartError
from .exactpoly import Poly, binom_linear, compose_linear, format_rational, to_rational
from ..utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class MagicForm:
    """Coefficients a_0..a_d of sum a_i n^i (1+n)^(d-i)"""

    d: int
    a: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.d < 0:
            raise ValueError(f"ambient degree must be >= 0, got {self.d}")
        values = tuple(to_rational(x) for x in self.a)
        if len(values) != self.d + 1:
            raise ValueError(f"MagicForm of degree {self.d} needs {self.d + 1} coefficients, got {len(values)}")
        object.__setattr__(self, "a", values)

    def to_record(self) -> dict:
        return {"d": self.d, "coefficients": [format_rational(x) for x in self.a]}


@dataclass(frozen=True)
class HStarVector:
    """Coefficients h*_0..h*_d of sum h*_j C(n+d-j, d)"""

    d: int
    h: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.d < 0:
            raise ValueError(f"ambient degree must be >= 0, got {self.d}")
        values = tuple(to_rational(x) for x in self.h)
        if len(values) != self.d + 1:
            raise ValueError(f"HStarVector of degree {self.d} needs {self.d + 1} entries, got {len(values)}")
        object.__setattr__(self, "h", values)

    def to_record(self) -> dict:
        return {"d": self.d, "coefficients": [format_rational(x) for x in self.h]}

    def as_poly(self) -> Poly:
        """h*(t) as a power-basis polynomial in t"""
        return Poly(self.h)


@dataclass(frozen=True)
class MagicVerdict:
    """Magic positivity verdict with every negative coefficient as witness"""

    positive: bool
    witnesses: Tuple[Tuple[int, Fraction], ...] = ()

    def to_record(self) -> dict:
        return {
            "positive": self.positive,
            "witnesses": [[index, format_rational(value)] for index, value in self.witnesses],
        }


def _check_degree(p: Poly, d: int):
    if d < 0:
        raise DegreeError(f"ambient degree must be >= 0, got {d}")
    if p.degree is not None and p.degree > d:
        raise DegreeError(f"polynomial of degree {p.degree} exceeds ambient degree {d}")


def power_to_magic(p: Poly, d: int) -> MagicForm:
    """
    Expand p in the magic basis of degree d

    Uses n^k = n^k ((n+1) - n)^(d-k), which gives
    a_i = sum_{k<=i} c_k (-1)^(i-k) C(d-k, i-k).

    Raises:
        DegreeError: deg(p) > d
    """
    _check_degree(p, d)
    coeffs = [p.coefficient(k) for k in range(d + 1)]
    a: List[Fraction] = []
    for i in range(d + 1):
        total = Fraction(0)
        for k in range(i + 1):
            c = coeffs[k]
            if c == 0:
                continue
            term = c * comb(d - k, i - k)
            total += term if (i - k) % 2 == 0 else -term
        a.append(total)
    return MagicForm(d, tuple(a))


def magic_to_power(m: MagicForm) -> Poly:
    """sum a_i n^i (1+n)^(d-i) in the power basis"""
    d = m.d
    coeffs = [Fraction(0)] * (d + 1)
    for i, a in enumerate(m.a):
        if a == 0:
            continue
        for extra in range(d - i + 1):
            coeffs[i + extra] += a * comb(d - i, extra)
    return Poly(tuple(coeffs))


def is_magic_positive(m: MagicForm) -> MagicVerdict:
    witnesses = tuple((i, a) for i, a in enumerate(m.a) if a < 0)
    return MagicVerdict(positive=not witnesses, witnesses=witnesses)


def is_palindromic(m: MagicForm) -> bool:
    """a_j == a_{d-j} for every j"""
    return all(m.a[j] == m.a[m.d - j] for j in range(m.d + 1))


def power_to_hstar(p: Poly, d: int) -> HStarVector:
    """
    h*-vector of p in the basis C(n+d-j, d)

    h*_j = sum_{i<=j} (-1)^i C(d+1, i) p(j-i). The result is re-expanded
    and compared with p at d+1 points before being returned.

    Raises:
        DegreeError: deg(p) > d
    """
    _check_degree(p, d)
    values = [p(k) for k in range(d + 1)]
    h: List[Fraction] = []
    for j in range(d + 1):
        total = Fraction(0)
        for i in range(j + 1):
            term = comb(d + 1, i) * values[j - i]
            total += term if i % 2 == 0 else -term
        h.append(total)

    vector = HStarVector(d, tuple(h))
    expanded = hstar_to_power(vector)
    for n in range(d + 1):
        if expanded(n) != values[n]:
            logger.error(f"h* re-expansion mismatch at n={n} for degree {d}")
            raise EhrhartError(f"h* re-expansion disagrees with the source polynomial at n={n}")
    return vector


def hstar_to_power(h: HStarVector) -> Poly:
    d = h.d
    result = Poly()
    for j, value in enumerate(h.h):
        if value == 0:
            continue
        result = result + binom_linear(1, d - j, d).scale(value)
    return result


def hstar_sum_matches(h: HStarVector, p: Poly) -> bool:
    """sum h*_j == d! times the n^d coefficient of p"""
    return sum(h.h, Fraction(0)) == factorial(h.d) * p.coefficient(h.d)


def magic_shift(m: MagicForm) -> MagicForm:
    """n times the form: coefficients move up one index, degree d+1"""
    return MagicForm(m.d + 1, (Fraction(0),) + m.a)


def magic_lift(m: MagicForm) -> MagicForm:
    """(n+1) times the form: same indices, degree d+1"""
    return MagicForm(m.d + 1, m.a + (Fraction(0),))


def magic_add(left: MagicForm, right: MagicForm) -> MagicForm:
    if left.d != right.d:
        raise DegreeError(f"cannot add magic forms of degree {left.d} and {right.d}")
    return MagicForm(left.d, tuple(x + y for x, y in zip(left.a, right.a)))


def magic_scale(m: MagicForm, factor) -> MagicForm:
    factor = to_rational(factor)
    return MagicForm(m.d, tuple(x * factor for x in m.a))


def reciprocity_holds(p: Poly, d: int) -> bool:
    """E(-1-n) == (-1)^d E(n) as polynomials"""
    reflected = compose_linear(p, -1, -1)
    return reflected == p.scale(-1 if d % 2 else 1)
