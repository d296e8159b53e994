import pytest

from conftest import RANK4, SMALL_RANKS
from degenqg.casimir import (DIAGONAL_CONVENTIONS, X, build_l_operators, casimir_closed_form,
                             casimir_weights, central_element, closed_form_agreement,
                             gamma_elements, gamma_from_x, verify_centrality,
                             verify_gamma_commutation, verify_intertwining)
from degenqg.rewrite import Status
from degenqg.scalars import QQ
from degenqg.tensorrep import RepMatrix, UMatrix, natural_rep, rep_check_identity
from degenqg.uqglmn import build_algebra


def _all_verified(results):
    bad = [r for r in results if r[-1].status != Status.VERIFIED]
    assert not bad, bad[:3]


@pytest.mark.parametrize("m,n", SMALL_RANKS + [(2, 2)])
def test_lminus_inverse(m, n):
    U = build_algebra(m, n)
    ops = build_l_operators(U)
    _all_verified(ops.inverse_verdicts)


@pytest.mark.parametrize("m,n", SMALL_RANKS + [(2, 2)])
def test_intertwining(m, n):
    _all_verified(verify_intertwining(build_algebra(m, n)))


def test_l_operator_shapes(u21):
    ops = build_l_operators(u21)
    # L^+ lower triangular, L^- upper triangular in (row, col)
    assert all(i >= j for i, j in ops.Lplus.entries)
    assert all(i <= j for i, j in ops.Lminus.entries)
    assert ops.Lplus.entry(1, 1) == u21.K(1)
    assert ops.Lminus.entry(3, 3) == u21.K(3, -1)


def test_pi_of_l_plus_is_triangular_r(u11):
    # pi(QQ K_2 E_12) = QQ diag(1, q_2) e_12 = QQ e_12
    ops = build_l_operators(u11)
    M = natural_rep(ops.Lplus.entry(2, 1), u11)
    assert M == RepMatrix.unit(2, 1, 2).scale(QQ)


@pytest.mark.parametrize("m,n", SMALL_RANKS + [(2, 2)])
def test_gamma_commutes_with_coproduct(m, n):
    U = build_algebra(m, n)
    _all_verified(verify_gamma_commutation(U, "gammaV"))
    _all_verified(verify_gamma_commutation(U, "gamma"))


@pytest.mark.parametrize("m,n", SMALL_RANKS + [(2, 2)])
def test_gamma_from_x(m, n):
    U = build_algebra(m, n)
    G = gamma_elements(U).gamma
    assert rep_check_identity(gamma_from_x(U), G).status == Status.VERIFIED
    single = gamma_from_x(U, double_diagonal=False)
    diag = UMatrix(U, 1, {(a - 1, a - 1): X(U, a, a) for a in range(1, U.N + 1)})
    assert rep_check_identity(single + diag, G).status == Status.VERIFIED
    assert rep_check_identity(single, G).status == Status.FAILED


@pytest.mark.parametrize("m,n", SMALL_RANKS + RANK4)
@pytest.mark.parametrize("variant", ["gamma", "gammaV"])
def test_c1_is_central(m, n, variant):
    U = build_algebra(m, n)
    c = central_element(U, 1, variant)
    _all_verified(verify_centrality(U, c))
    # an independent check: a central element acts on the irreducible natural module by a scalar
    P = natural_rep(c, U)
    s = P[(0, 0)]
    assert P == RepMatrix.identity(U.N).scale(s)


@pytest.mark.parametrize("m,n", SMALL_RANKS)
def test_c2_is_central(m, n):
    U = build_algebra(m, n)
    _all_verified(verify_centrality(U, central_element(U, 2)))


def test_generic_element_is_not_central(u21):
    res = verify_centrality(u21, u21.K(1))
    assert any(v.status == Status.FAILED for _, v in res)


@pytest.mark.parametrize("m,n", SMALL_RANKS + [(2, 2)])
def test_closed_form_conventions(m, n):
    U = build_algebra(m, n)
    res = closed_form_agreement(U)
    assert set(res) == set(DIAGONAL_CONVENTIONS)
    assert res["derived"].status == Status.VERIFIED
    assert res["X"].status == Status.FAILED
    assert res["unit"].status == Status.FAILED


def test_casimir_weights_match_k2rho(u22):
    W = natural_rep(u22.k2rho(), u22)
    w = casimir_weights(u22)
    for b in range(1, 5):
        assert W[(b - 1, b - 1)] == w[b]


def test_gl11_casimir_value(u11):
    # weights w_1 = q^-1, w_2 = -q^-1; evaluating the closed form by hand on
    # the natural module gives 1 on both diagonal entries
    U = u11
    c = central_element(U, 1)
    assert U.reduce(c - casimir_closed_form(U)).is_zero()
    assert natural_rep(c, U) == RepMatrix.identity(2)


def test_bad_arguments(u11):
    with pytest.raises(ValueError):
        central_element(u11, 0)
    with pytest.raises(ValueError):
        casimir_closed_form(u11, "other")
