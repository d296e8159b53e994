import itertools
from fractions import Fraction

import pytest

from degenqg.uqglmn import build_algebra

SMALL_RANKS = [(1, 1), (2, 1), (1, 2)]
RANK4 = [(2, 2), (3, 1), (1, 3)]


def evaluate(s, x):
    """Value of a Scalar at q = x (a Fraction), straight from its stored form."""
    num = sum(Fraction(c) * x ** i for i, c in enumerate(s.n))
    den = sum(Fraction(c) * x ** i for i, c in enumerate(s.d))
    return x ** s.v * num / den


def pbw_basis_gl11(max_len):
    """F^a K1^i K2^j E^c with a, c in {0, 1}, of length <= max_len, built letter by letter."""
    U = build_algebra(1, 1)
    F, E = U.pres.letter("F", 1), U.pres.letter("E", 1)
    out = set()
    for a, c in itertools.product((0, 1), repeat=2):
        for i, j in itertools.product(range(-max_len, max_len + 1), repeat=2):
            if a + c + abs(i) + abs(j) > max_len:
                continue
            (kw,) = U.K_word({1: i, 2: j}).terms
            out.add((F,) * a + kw + (E,) * c)
    return out


@pytest.fixture(scope="session")
def u11():
    return build_algebra(1, 1)


@pytest.fixture(scope="session")
def u21():
    return build_algebra(2, 1)


@pytest.fixture(scope="session")
def u12():
    return build_algebra(1, 2)


@pytest.fixture(scope="session")
def u22():
    return build_algebra(2, 2)
