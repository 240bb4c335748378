"""
Exact rational scalars and dense univariate polynomials

Every coefficient is a ``fractions.Fraction``; there is no floating point
anywhere in this module. Polynomials are in the power basis of the
variable n, index i holding the coefficient of n^i.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import InterpolationError, ParseError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string into a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ParseError(f"Not a rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into a reduced Fraction"""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ParseError(f"Malformed rational: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise ParseError(f"Zero denominator: {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Poly:
    """
    Dense univariate polynomial over Q

    Trailing zeros are stripped on construction, so the zero polynomial
    has ``coeffs == ()`` and ``degree is None``.
    """

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        trimmed = [Fraction(c) for c in self.coeffs]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed))

    @classmethod
    def of(cls, values: Iterable[RationalLike]) -> "Poly":
        return cls(tuple(to_rational(v) for v in values))

    @classmethod
    def constant(cls, value: RationalLike) -> "Poly":
        return cls((to_rational(value),))

    @classmethod
    def monomial(cls, power: int, coefficient: RationalLike = 1) -> "Poly":
        return cls((Fraction(0),) * power + (to_rational(coefficient),))

    @classmethod
    def linear(cls, slope: RationalLike, intercept: RationalLike) -> "Poly":
        """slope·n + intercept"""
        return cls((to_rational(intercept), to_rational(slope)))

    @property
    def degree(self) -> Optional[int]:
        """Highest power with a nonzero coefficient; None for the zero polynomial"""
        if not self.coeffs:
            return None
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    def __sub__(self, other: "Poly") -> "Poly":
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coefficient(i) - other.coefficient(i) for i in range(size)))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Union["Poly", RationalLike]) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(to_rational(other))
        if self.is_zero or other.is_zero:
            return Poly()
        product = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return Poly(tuple(product))

    __rmul__ = __mul__

    def scale(self, factor: RationalLike) -> "Poly":
        factor = to_rational(factor)
        return Poly(tuple(c * factor for c in self.coeffs))

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval(self, x)

    def to_strings(self) -> List[str]:
        if self.is_zero:
            return ["0"]
        return [format_rational(c) for c in self.coeffs]

    def __str__(self) -> str:
        return render_poly(self)


class ArithOp(str, Enum):
    """Binary operations accepted by poly_arith"""
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    SCALE = "scale"


def poly_arith(
    p: Poly,
    q: Optional[Poly],
    op: Union[ArithOp, str],
    c: Optional[RationalLike] = None,
) -> Poly:
    """
    Exact power-basis arithmetic

    Args:
        p: Left operand
        q: Right operand (ignored for scale)
        op: add, sub, mul or scale
        c: Scalar for scale

    Returns:
        Resulting polynomial
    """
    op = ArithOp(op)
    if op is ArithOp.SCALE:
        if c is None:
            raise ValueError("scale requires a scalar")
        return p.scale(c)
    if q is None:
        raise ValueError(f"{op.value} requires two polynomials")
    if op is ArithOp.ADD:
        return p + q
    if op is ArithOp.SUB:
        return p - q
    return p * q


def poly_eval(p: Poly, x: RationalLike) -> Fraction:
    """Exact Horner evaluation"""
    x = to_rational(x)
    value = Fraction(0)
    for c in reversed(p.coeffs):
        value = value * x + c
    return value


def big_binom(n: int, k: int) -> int:
    """Exact C(n, k); zero when k > n"""
    if n < 0 or k < 0:
        raise ValueError(f"big_binom needs nonnegative arguments, got ({n}, {k})")
    return math.comb(n, k)


def _linear_product(a: int, b: int, d: int) -> List[int]:
    """Integer coefficients of prod_{j<d} (a·n + b − j)"""
    coeffs = [1]
    for j in range(d):
        shift = b - j
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c * shift
            nxt[i + 1] += c * a
        coeffs = nxt
    return coeffs


def binom_linear(a: int, b: int, d: int) -> Poly:
    """
    C(a·n + b, d) as a polynomial in n

    The falling product is built over the integers and divided by d!
    once at the end.
    """
    if d < 0:
        raise ValueError(f"binom_linear needs d >= 0, got {d}")
    denominator = math.factorial(d)
    return Poly(tuple(Fraction(c, denominator) for c in _linear_product(a, b, d)))


def lagrange_interpolate(points: Sequence[Tuple[RationalLike, RationalLike]]) -> Poly:
    """
    Unique polynomial of degree < len(points) through the given points

    Uses Newton divided differences, then expands the Newton form.

    Raises:
        InterpolationError: no points, or repeated x
    """
    if not points:
        raise InterpolationError("Interpolation needs at least one point")

    xs = [to_rational(x) for x, _ in points]
    ys = [to_rational(y) for _, y in points]
    seen = set()
    for x in xs:
        if x in seen:
            raise InterpolationError(f"Duplicate interpolation node x={format_rational(x)}")
        seen.add(x)

    table = list(ys)
    size = len(xs)
    for level in range(1, size):
        for i in range(size - 1, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level])

    result = Poly.constant(table[-1])
    for i in range(size - 2, -1, -1):
        result = result * Poly.linear(1, -xs[i]) + Poly.constant(table[i])
    return result


def poly_derivative(p: Poly) -> Poly:
    return Poly(tuple(c * i for i, c in enumerate(p.coeffs) if i > 0))


def poly_divmod(p: Poly, q: Poly) -> Tuple[Poly, Poly]:
    """Euclidean division over Q: p = quotient·q + remainder"""
    if q.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    remainder = list(p.coeffs)
    divisor_degree = q.degree
    lead = q.leading
    if len(remainder) <= divisor_degree:
        return Poly(), p
    quotient = [Fraction(0)] * (len(remainder) - divisor_degree)
    for shift in range(len(remainder) - 1 - divisor_degree, -1, -1):
        factor = remainder[shift + divisor_degree] / lead
        quotient[shift] = factor
        if factor == 0:
            continue
        for i, c in enumerate(q.coeffs):
            remainder[shift + i] -= factor * c
    return Poly(tuple(quotient)), Poly(tuple(remainder[:divisor_degree]))


def make_monic(p: Poly) -> Poly:
    if p.is_zero:
        return p
    return p.scale(1 / p.leading)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) is 0"""
    a, b = p, q
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return make_monic(a)


def compose_linear(p: Poly, a: RationalLike, b: RationalLike) -> Poly:
    """p(a·n + b)"""
    inner = Poly.linear(a, b)
    result = Poly()
    for c in reversed(p.coeffs):
        result = result * inner + Poly.constant(c)
    return result


def has_integer_coefficients(p: Poly) -> bool:
    return all(c.denominator == 1 for c in p.coeffs)


def poly_from_strings(values: Sequence[str]) -> Poly:
    return Poly(tuple(parse_rational(v) for v in values))


def poly_to_strings(p: Poly) -> List[str]:
    return p.to_strings()


def render_poly(p: Poly, variable: str = "n") -> str:
    """Human readable form, highest power first: 7/2·n^2 + 7/2·n + 1"""
    if p.is_zero:
        return "0"
    terms: List[str] = []
    for power in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[power]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        magnitude = abs(c)
        if power == 0:
            body = format_rational(magnitude)
        else:
            monomial = variable if power == 1 else f"{variable}^{power}"
            body = monomial if magnitude == 1 else f"{format_rational(magnitude)}*{monomial}"
        if not terms:
            terms.append(body if sign == "+" else f"-{body}")
        else:
            terms.append(f"{sign} {body}")
    return " ".join(terms)
