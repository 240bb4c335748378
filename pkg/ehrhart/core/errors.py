"""
Exception hierarchy

Verdicts (not magic positive, not real-rooted) are returned as data.
Only malformed input, refused work and broken invariants raise.
"""

from typing import Optional


class EhrhartError(Exception):
    """Base class for every error raised by the package"""

    exit_code = 1


class ParseError(EhrhartError, ValueError):
    """Unparseable family, graph or rational string"""

    exit_code = 2


class GraphError(ParseError):
    """Graph is not simple, not connected, or has an invalid root"""


class BudgetExceededError(EhrhartError):
    """An enumeration would exceed its configured budget"""

    exit_code = 3

    def __init__(self, message: str, budget: int, expanded: Optional[int] = None):
        super().__init__(message)
        self.budget = budget
        self.expanded = expanded


class DegreeError(EhrhartError, ValueError):
    """Polynomial degree exceeds the ambient degree of a basis"""


class InterpolationError(EhrhartError, ValueError):
    """Duplicate nodes, or the over-sample point disagrees with the fit"""

    def __init__(self, message: str, expected=None, actual=None):
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class ZeroPolynomialError(EhrhartError, ValueError):
    """Operation undefined on the zero polynomial"""
