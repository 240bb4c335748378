"""
Closed-form Ehrhart polynomials of the reflexive families

Available families (all duals, d = dimension):
- cross:     dual of the cross polytope, (2n+1)^d
- typeA:     dual of the type A root polytope, sum_k C(d+1, k) n^k
- typeC:     dual of the type C root polytope, (n+1)^d + n^d
- tree:      dual symmetric edge polytope of a tree on d+1 vertices (= cross)
- complete:  dual symmetric edge polytope of K_{d+1} (= typeA)
- stasheff:  dual of the Stasheff polytope, by the three-term recurrence
- cycle:     dual symmetric edge polytope of C_{d+1}, alternating binomial sum
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Callable, Dict, Optional

from .bases import (
    MagicForm,
    is_magic_positive,
    magic_add,
    magic_lift,
    magic_scale,
    magic_shift,
    power_to_magic,
)
from .errors import ParseError
from .exactpoly import Poly, binom_linear
from ..utils.logger import get_logger

logger = get_logger(__name__)


class FamilyKind(str, Enum):
    CROSS = "cross"
    TYPE_A = "typeA"
    TYPE_C = "typeC"
    TREE = "tree"
    COMPLETE = "complete"
    STASHEFF = "stasheff"
    CYCLE = "cycle"


@dataclass(frozen=True)
class FamilyId:
    kind: FamilyKind
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ParseError(f"family dimension must be >= 0, got {self.d}")
        if self.kind is FamilyKind.CYCLE and self.d < 1:
            raise ParseError("cycle family needs d >= 1")

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.d}"


_KIND_ALIASES: Dict[str, FamilyKind] = {
    'cross': FamilyKind.CROSS,
    'cross_dual': FamilyKind.CROSS,
    'typea': FamilyKind.TYPE_A,
    'typea_dual': FamilyKind.TYPE_A,
    'typec': FamilyKind.TYPE_C,
    'typec_dual': FamilyKind.TYPE_C,
    'tree': FamilyKind.TREE,
    'tree_dual': FamilyKind.TREE,
    'complete': FamilyKind.COMPLETE,
    'complete_dual': FamilyKind.COMPLETE,
    'stasheff': FamilyKind.STASHEFF,
    'stasheff_dual': FamilyKind.STASHEFF,
    'cycle': FamilyKind.CYCLE,
    'cycle_dual': FamilyKind.CYCLE,
}


def parse_family(text: str) -> FamilyId:
    """
    Parse "kind:d" into a FamilyId

    Raises:
        ParseError: unknown kind or bad dimension
    """
    name, sep, dim = text.strip().partition(":")
    if not sep:
        raise ParseError(f"Family must look like 'kind:d', got {text!r}")
    kind = _KIND_ALIASES.get(name.strip().lower())
    if kind is None:
        raise ParseError(f"Unknown family {name!r}")
    try:
        d = int(dim)
    except ValueError:
        raise ParseError(f"Family dimension is not an integer: {dim!r}") from None
    return FamilyId(kind, d)


def cross_dual(d: int) -> Poly:
    """(2n+1)^d"""
    return Poly(tuple(Fraction(comb(d, k) * 2 ** k) for k in range(d + 1)))


def type_a_dual(d: int) -> Poly:
    return Poly(tuple(Fraction(comb(d + 1, k)) for k in range(d + 1)))


def type_c_dual(d: int) -> Poly:
    """(n+1)^d + n^d; d = 0 is the single point"""
    if d == 0:
        return Poly.constant(1)
    coeffs = [Fraction(comb(d, k)) for k in range(d + 1)]
    coeffs[d] += 1
    return Poly(tuple(coeffs))


class StasheffCache:
    """
    Memoized three-term recurrence

    E_0 = 1, E_1 = 2n+1,
    E_d = (2n+1) E_{d-1} - (1/2) n (n+1) E_{d-2}.
    Entries are computed once, in order, under the lock.
    """

    _TWO_N_PLUS_ONE = Poly.linear(2, 1)
    _HALF_N_N_PLUS_ONE = Poly((0, Fraction(1, 2), Fraction(1, 2)))

    def __init__(self):
        self._lock = threading.RLock()
        self._entries: Dict[int, Poly] = {0: Poly.constant(1), 1: Poly.linear(2, 1)}

    def get(self, d: int) -> Poly:
        if d < 0:
            raise ValueError(f"stasheff dimension must be >= 0, got {d}")
        with self._lock:
            if d not in self._entries:
                top = max(self._entries)
                for k in range(top + 1, d + 1):
                    self._entries[k] = (
                        self._TWO_N_PLUS_ONE * self._entries[k - 1]
                        - self._HALF_N_N_PLUS_ONE * self._entries[k - 2]
                    )
                logger.debug(f"Stasheff recurrence extended to d={d}")
            return self._entries[d]

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)


_stasheff_cache = StasheffCache()


def stasheff_dual(d: int) -> Poly:
    return _stasheff_cache.get(d)


def stasheff_aux(d: int) -> Poly:
    """F_d = E_d - (n/2) E_{d-1}, d >= 1"""
    if d < 1:
        raise ValueError(f"stasheff_aux needs d >= 1, got {d}")
    return stasheff_dual(d) - Poly.monomial(1, Fraction(1, 2)) * stasheff_dual(d - 1)


def cycle_dual(d: int) -> Poly:
    """
    Ehrhart polynomial of the dual of P_{C_{d+1}}

    sum_{i=0}^{floor(d/2)} (-1)^i C(d+1, i) C((d+1-2i) n + (d-i), d)
    """
    if d < 1:
        raise ValueError(f"cycle_dual needs d >= 1, got {d}")
    total = Poly()
    for i in range(d // 2 + 1):
        weight = comb(d + 1, i) * (-1 if i % 2 else 1)
        total = total + binom_linear(d + 1 - 2 * i, d - i, d).scale(weight)
    return total


FamilyBuilder = Callable[[int], Poly]

_BUILDERS: Dict[FamilyKind, FamilyBuilder] = {
    FamilyKind.CROSS: cross_dual,
    FamilyKind.TREE: cross_dual,
    FamilyKind.TYPE_A: type_a_dual,
    FamilyKind.COMPLETE: type_a_dual,
    FamilyKind.TYPE_C: type_c_dual,
    FamilyKind.STASHEFF: stasheff_dual,
    FamilyKind.CYCLE: cycle_dual,
}


def get_family_builder(kind) -> Optional[FamilyBuilder]:
    """
    Get the polynomial builder for a family kind

    Args:
        kind: FamilyKind or a name such as 'cross', 'tree_dual', 'typeA'

    Returns:
        Builder taking d, or None for unknown names
    """
    if not isinstance(kind, FamilyKind):
        kind = _KIND_ALIASES.get(str(kind).lower())
        if kind is None:
            return None
    return _BUILDERS[kind]


def family_ehrhart(family: FamilyId) -> Poly:
    return _BUILDERS[family.kind](family.d)


def family_magic_closed_form(family: FamilyId) -> Optional[MagicForm]:
    """Known magic expansions; None for the recurrence-defined families"""
    d = family.d
    if family.kind in (FamilyKind.CROSS, FamilyKind.TREE):
        return MagicForm(d, tuple(comb(d, i) for i in range(d + 1)))
    if family.kind in (FamilyKind.TYPE_A, FamilyKind.COMPLETE):
        return MagicForm(d, (1,) * (d + 1))
    if family.kind is FamilyKind.TYPE_C:
        if d == 0:
            return MagicForm(0, (1,))
        return MagicForm(d, (1,) + (0,) * (d - 1) + (1,))
    return None


@dataclass(frozen=True)
class InductionCertificate:
    """
    One step of the Stasheff magic-positivity induction

    lhs is the magic form of F_d, rhs the magic form of
    (n/2) E_{d-1} + (n+1) F_{d-1}; they must coincide.
    """

    d: int
    lhs: MagicForm
    rhs: MagicForm

    rhs_parts_positive: bool = False

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def stasheff_induction_certificate(d: int) -> InductionCertificate:
    if d < 2:
        raise ValueError(f"induction step needs d >= 2, got {d}")
    previous = power_to_magic(stasheff_dual(d - 1), d - 1)
    previous_aux = power_to_magic(stasheff_aux(d - 1), d - 1)
    rhs = magic_add(
        magic_scale(magic_shift(previous), Fraction(1, 2)),
        magic_lift(previous_aux),
    )
    lhs = power_to_magic(stasheff_aux(d), d)
    parts_positive = is_magic_positive(previous).positive and is_magic_positive(previous_aux).positive
    return InductionCertificate(d=d, lhs=lhs, rhs=rhs, rhs_parts_positive=parts_positive)
