import pytest

from conftest import RANK4, SMALL_RANKS
from degenqg.casimir import build_l_operators
from degenqg.rewrite import Status
from degenqg.scalars import ONE, Q, Q_INV, QQ, ZERO
from degenqg.tensorrep import RepMatrix, embed_legs, rep_check_identity
from degenqg.uqglmn import build_algebra
from degenqg.ybe import (EXPONENT_CLASSES, _Legs, build_r, build_r_variants, formal_exponent_census,
                         hecke_literal, llr_sides, r_minus_t_closed_form, rep_inverse,
                         swap_matrix, verify_llr_numeric, verify_llr_suite, verify_numeric_ybe,
                         verify_pi_of_l, verify_r_matrix, verify_spectral_ybe)

ALL_RANKS = SMALL_RANKS + RANK4 + [(2, 3), (3, 2), (1, 4), (4, 1)]


def _all_verified(results):
    bad = [r for r in results if r[-1].status != Status.VERIFIED]
    assert not bad, bad[:3]


def test_r_gl11_by_hand(u11):
    # basis v1v1, v1v2, v2v1, v2v2
    R = build_r(u11)
    expected = RepMatrix.from_dense([
        [Q, ZERO, ZERO, ZERO],
        [ZERO, ONE, QQ, ZERO],
        [ZERO, ZERO, ONE, ZERO],
        [ZERO, ZERO, ZERO, -Q_INV],
    ])
    assert R == expected


@pytest.mark.parametrize("m,n", ALL_RANKS)
def test_r_matrix_identities(m, n):
    _all_verified(verify_r_matrix(build_algebra(m, n)))


@pytest.mark.parametrize("m,n", ALL_RANKS)
def test_hecke_quadratic(m, n):
    # braided form as the quadratic (Rc - q)(Rc + q^-1) = 0, i.e. Rc^2 = QQ Rc + 1
    U = build_algebra(m, n)
    _, _, Rc, Rci = build_r_variants(build_r(U))
    I = RepMatrix.identity(U.N ** 2)
    assert Rc * Rc == Rc.scale(QQ) + I
    assert Rci == Rc - I.scale(QQ)


@pytest.mark.parametrize("m,n", SMALL_RANKS + RANK4)
def test_unbraided_hecke_reading_fails(m, n):
    assert hecke_literal(build_algebra(m, n)).status == Status.FAILED


def test_inverse_and_swap():
    T = swap_matrix(3)
    assert T * T == RepMatrix.identity(9)
    M = RepMatrix.from_dense([[Q, ONE], [ZERO, QQ]])
    assert M * rep_inverse(M) == RepMatrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        rep_inverse(RepMatrix.from_dense([[ONE, ONE], [ONE, ONE]]))


def test_numeric_ybe_rejects_non_solution():
    bad = RepMatrix.identity(4) + RepMatrix.unit(4, 1, 2).scale(Q) + RepMatrix.unit(4, 2, 3)
    assert verify_numeric_ybe(bad).status == Status.FAILED


def test_r_minus_t_is_transpose_inverse(u21):
    R = build_r(u21)
    RmT = r_minus_t_closed_form(u21)
    T = swap_matrix(3)
    assert T * RmT * T * R == RepMatrix.identity(9)


@pytest.mark.parametrize("m,n", SMALL_RANKS + [(2, 2)])
def test_llr_suite(m, n):
    _all_verified(verify_llr_suite(build_algebra(m, n)))


@pytest.mark.parametrize("m,n", SMALL_RANKS + RANK4)
def test_llr_numeric_and_pi(m, n):
    U = build_algebra(m, n)
    _all_verified(verify_llr_numeric(U))
    _all_verified(verify_pi_of_l(U))


def test_llr_sides_are_nontrivial(u11):
    for name, (lhs, rhs) in llr_sides(u11).items():
        assert not lhs.is_zero(), name
        assert lhs.legs == 2


def test_swapped_llr_fails(u11):
    # L+12 L+13 = L+13 L+12 without R is false
    g = _Legs(u11, build_l_operators(u11))
    v = rep_check_identity(g.Lp12 * g.Lp13, g.Lp13 * g.Lp12)
    assert v.status == Status.FAILED


def test_exponent_census():
    assert formal_exponent_census() == sorted(EXPONENT_CLASSES)
    assert len(EXPONENT_CLASSES) == 7


@pytest.mark.parametrize("m,n", SMALL_RANKS + [(2, 2)])
def test_spectral_ybe(m, n):
    v, census = verify_spectral_ybe(build_algebra(m, n))
    assert v.status == Status.VERIFIED
    assert set(census) <= set(EXPONENT_CLASSES)
    assert all(x.status == Status.VERIFIED for x in census.values())


def test_embedding_of_r_agrees_with_kron(u11):
    R = build_r(u11)
    I = RepMatrix.identity(2)
    assert embed_legs(R, 3, (1, 2)) == R.kron(I)
    assert embed_legs(R, 3, (2, 3)) == I.kron(R)
