import itertools

import pytest

from conftest import SMALL_RANKS
from degenqg.rewrite import NCPoly, Status
from degenqg.rll import (Isomorphism, RllHandle, build_rll, build_rll_alphabet,
                         compare_with_listed, containment_mutation, example_gl11_relations,
                         generate_by_matrices, generate_rll_relations, linear_span,
                         listed_relations, r_coefficient, rll_antipode, rll_coproduct,
                         rll_counit, rll_hopf, rll_instance, same_span, triangular_inverse,
                         verify_example_gl11, verify_isomorphism, SIGN_PATTERNS)
from degenqg.scalars import ONE, Q, ZERO
from degenqg.tensorrep import UMatrix, pi_tensor_one
from degenqg.uqglmn import build_algebra
from degenqg.ybe import build_r, build_r_variants


def _all_verified(results):
    bad = [r for r in results if r[-1].status != Status.VERIFIED]
    assert not bad, bad[:3]


def test_alphabet_order():
    names = [(L.kind, L.indices) for L in build_rll_alphabet(1, 1)]
    assert names == [("LminusGen", (2, 1)), ("LminusGen", (1, 1)), ("LplusGen", (1, 1)),
                     ("LminusGen", (2, 2)), ("LplusGen", (2, 2)), ("LplusGen", (1, 2))]


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2)])
def test_r_coefficient_matches_matrix(m, n):
    h = RllHandle(m, n, "free")
    R = build_r(h)
    N = m + n
    for a, b, c, d in itertools.product(range(1, N + 1), repeat=4):
        # e_ab (x) e_cd sits at row (a, c), column (b, d)
        assert R[((a - 1) * N + c - 1, (b - 1) * N + d - 1)] == r_coefficient((m, n), a, c, b, d)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
@pytest.mark.parametrize("pattern", SIGN_PATTERNS)
def test_index_formula_matches_matrix_product(m, n, pattern):
    h = RllHandle(m, n, "free")
    N = m + n
    D = generate_by_matrices(h, pattern)
    for a, b, c, d in itertools.product(range(1, N + 1), repeat=4):
        key = ((a - 1) * N + c - 1, (b - 1) * N + d - 1)
        assert D.get(key, NCPoly.zero()) == rll_instance(h, pattern, a, b, c, d)


def test_letters_outside_triangle_are_zero():
    h = RllHandle(2, 1, "free")
    assert h.lp(2, 1).is_zero() and h.lm(1, 2).is_zero()
    assert not h.lp(1, 2).is_zero() and not h.lm(2, 1).is_zero()


@pytest.mark.parametrize("m,n", SMALL_RANKS + [(2, 2)])
def test_generated_relations_hold_in_uq(m, n):
    # independent oracle: psi sends every RLL relation to zero in U_q(gl_{m,n})
    U = build_algebra(m, n)
    h = RllHandle(m, n, "free")
    iso = Isomorphism(U, h)
    for name, r in generate_rll_relations(h):
        assert U.check_zero(iso.psi(r)).status == Status.VERIFIED, name


def test_generated_relation_count_gl11():
    h = RllHandle(1, 1, "free")
    rels = generate_rll_relations(h)
    assert rels
    assert all(not r.is_zero() for _, r in rels)
    assert all(name.startswith(("RLL++", "RLL--", "RLL-+")) for name, _ in rels)


@pytest.mark.parametrize("m,n", SMALL_RANKS + [(2, 2)])
def test_listed_transposed_matches_generated(m, n):
    _all_verified(compare_with_listed(m, n, transposed=True))


def test_literal_listed_misses_lminus_square():
    res = compare_with_listed(1, 1, transposed=False)
    failed = [name for name, v in res if v.status != Status.VERIFIED]
    assert failed == ["generated_in_listed[RLL--[1,2,1,2]]"]
    h = build_rll(1, 1, "generated")
    assert h.check_zero(h.mul(h.lm(2, 1), h.lm(2, 1))).status == Status.VERIFIED
    lit = build_rll(1, 1, "listed")
    assert lit.check_zero(lit.mul(lit.lm(2, 1), lit.lm(2, 1))).status == Status.FAILED


def test_listed_literal_family_is_vacuous_for_lminus():
    h = RllHandle(2, 1, "free")
    names = [name for name, _ in listed_relations(h, transposed=False)]
    assert not any(name.startswith("--:square") for name in names)
    names_t = [name for name, _ in listed_relations(h, transposed=True)]
    assert any(name.startswith("--:square") for name in names_t)


@pytest.mark.parametrize("name,expected", [
    ("++:square[1,2]", Status.FAILED),
    ("--:square[1,2]", Status.FAILED),
    ("-+:mixed[2,1,1,2]", Status.FAILED),
    ("++:nested[1,1,2,2]", Status.VERIFIED),
    ("-+:comm[1,1,2,2]", Status.VERIFIED),
])
def test_dropping_relations(name, expected):
    # the nilpotency and mixed relations are independent, the others follow from the rest
    assert containment_mutation(1, 1, name).status == expected


def test_example_gl11():
    _all_verified(verify_example_gl11())
    fam = example_gl11_relations(RllHandle(1, 1, "free"))
    assert sorted(fam) == ["diagonal", "mixed", "nilpotent", "q-commutation"]


def test_linear_span_helpers():
    h = RllHandle(1, 1, "free")
    x, y = h.lp(1, 1), h.lp(1, 2)
    assert same_span([x + y, x - y], [x, y])
    assert not same_span([x], [y])
    assert len(linear_span([x, x.scale(Q), y])) == 2
    assert linear_span([NCPoly.zero()]) == []


def test_coproduct_and_counit_on_letters():
    h = build_rll(1, 1, "generated")
    n = len(h.pres.alphabet)
    d = rll_coproduct(h, h.lp(1, 2))
    expected = h.lp(1, 1) * h.lp(1, 2).shifted(n) + h.lp(1, 2) * h.lp(2, 2).shifted(n)
    assert h.square.reduce(d) == h.square.reduce(expected)
    assert rll_counit(h, h.lp(1, 1)) == ONE
    assert rll_counit(h, h.lp(1, 2)) == ZERO
    assert rll_counit(h, h.lp(1, 1) * h.lm(2, 2) + h.lm(2, 1)) == ONE


def test_triangular_inverse_gl11():
    h = build_rll(1, 1, "generated")
    inv = triangular_inverse(h, "+")
    # (l^+)^{-1}_12 = -l^-_11 l^+_12 l^-_22
    assert h.check_zero(inv[(1, 2)] + h.mul(h.lm(1, 1), h.lp(1, 2), h.lm(2, 2))).status == Status.VERIFIED
    assert h.check_zero(rll_antipode(h, h.lp(1, 1)) - h.lm(1, 1)).status == Status.VERIFIED


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
def test_rll_hopf(m, n):
    _all_verified(rll_hopf(m, n))


@pytest.mark.parametrize("m,n", SMALL_RANKS + [(2, 2)])
def test_isomorphism(m, n):
    _all_verified(verify_isomorphism(m, n))


def test_psi_of_l_matrices_gives_r(u21):
    # (pi (x) 1) psi(L^+) = R and (pi (x) 1) psi(L^-) = R^{-T}
    U = u21
    h = RllHandle(2, 1, "free")
    iso = Isomorphism(U, h)
    R = build_r(U)
    _, RmT, _, _ = build_r_variants(R)
    for sign, target in (("+", R), ("-", RmT)):
        M = h.matrix(sign)
        image = UMatrix(U, 1, {k: iso.psi(v) for k, v in M.entries.items()})
        assert pi_tensor_one(image) == target


def test_unknown_source_rejected():
    with pytest.raises(ValueError):
        RllHandle(1, 1, "other")
    with pytest.raises(ValueError):
        RllHandle(3, 3)
