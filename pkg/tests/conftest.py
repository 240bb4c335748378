"""Shared fixtures and oracles for the test suite"""

import random
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from ehrhart.core.exactpoly import Poly

REPO_ROOT = Path(__file__).resolve().parent.parent

N = sympy.Symbol("n")


def to_sympy(p: Poly, variable=N) -> sympy.Poly:
    """Independent sympy copy of a Poly (power basis, rational coefficients)"""
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0]
    return sympy.Poly(coeffs, variable, domain="QQ")


def from_sympy(expr, variable=N) -> Poly:
    poly = sympy.Poly(sympy.expand(expr), variable, domain="QQ")
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return Poly(tuple(coeffs))


def random_poly(rng: random.Random, max_degree: int = 12) -> Poly:
    degree = rng.randint(0, max_degree)
    return Poly(tuple(
        Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        for _ in range(degree + 1)
    ))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def repo_config_dir():
    return REPO_ROOT / "config"


@pytest.fixture
def config_dir(tmp_path):
    (tmp_path / "graphs").mkdir()
    return tmp_path


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for var in ("EHRHART_CONFIG_DIR", "EHRHART_FORMAT", "EHRHART_THREADS",
                "EHRHART_NODE_BUDGET", "EHRHART_BOX_BUDGET", "LOG_FILE"):
        monkeypatch.delenv(var, raising=False)
