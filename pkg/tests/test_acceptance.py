"""Acceptance criteria, one test each, at exact (zero) tolerance.

Each test prints a single PASS/FAIL line with its runtime and budget, then
asserts.  Equality always means reduction to the zero normal form, or exact
equality of matrices over Q(q).
"""

import contextlib
import io
import json
import time

import pytest

from conftest import pbw_basis_gl11
from degenqg import cli
from degenqg.casimir import (antipode_first_leg, build_l_operators, central_element,
                             closed_form_agreement, ebar_expansion_verdict, verify_centrality,
                             verify_intertwining)
from degenqg.rewrite import Status, tensor_power
from degenqg.rll import (build_rll, compare_with_listed, rll_hopf, verify_example_gl11,
                         verify_isomorphism)
from degenqg.scalars import QQ, Q_INV
from degenqg.tensorrep import RepMatrix, UMatrix, rep_check_identity
from degenqg.uqglmn import build_algebra
from degenqg.ybe import (EXPONENT_CLASSES, build_r, build_r_variants, formal_exponent_census,
                         verify_llr_suite, verify_numeric_ybe, verify_spectral_ybe)

RANKS_LE3 = [(1, 1), (1, 2), (2, 1)]
RANKS_LE4 = RANKS_LE3 + [(1, 3), (2, 2), (3, 1)]


class Criterion:
    def __init__(self, capsys, number, title, budget):
        self.capsys, self.number, self.title, self.budget = capsys, number, title, budget
        self.failures = []
        self.t0 = time.perf_counter()

    def check(self, label, ok):
        if not ok:
            self.failures.append(label)

    def verdicts(self, label, pairs):
        for name, v in pairs:
            self.check(f"{label}:{name}", v.status == Status.VERIFIED)

    def finish(self):
        elapsed = time.perf_counter() - self.t0
        if elapsed >= self.budget:
            self.failures.append(f"runtime {elapsed:.1f}s over budget {self.budget}s")
        ok = not self.failures
        with self.capsys.disabled():
            line = f"\ncriterion {self.number:>2}: {'PASS' if ok else 'FAIL'}  " \
                   f"{elapsed:7.2f}s / {self.budget}s  {self.title}"
            if not ok:
                line += f"  [{len(self.failures)} failing, first: {self.failures[0]}]"
            print(line)
        assert ok, self.failures[:5]


@pytest.fixture
def criterion(capsys):
    return lambda number, title, budget: Criterion(capsys, number, title, budget)


def test_criterion_01_casimir_ground_truth(criterion):
    c = criterion(1, "casimir --m 1 --n 1 --k 1 --variant gammaV equals the gl(1|1) example", 5)
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(["casimir", "--m", "1", "--n", "1", "--k", "1", "--variant", "gammaV",
                         "--format", "json"])
    c.check("exit code", code == 0)
    U = build_algebra(1, 1)
    got = U.pres.poly_from_json(json.loads(buf.getvalue())["element"])
    target = U.K(1, 2).scale(Q_INV) - U.K(2, 2).scale(Q_INV) \
        - U.mul(U.K(1), U.K(2), U.f(1), U.e(1)).scale(QQ * QQ)
    c.check("C1 - target reduces to zero", U.reduce(got - target).is_zero())
    c.finish()


def test_criterion_02_centrality(criterion):
    c = criterion(2, "[C_k, g] = 0 for k in {1, 2} at (1,1), (1,2), (2,1), (2,2)", 600)
    for m, n in RANKS_LE3 + [(2, 2)]:
        U = build_algebra(m, n)
        for k in (1, 2):
            c.verdicts(f"({m},{n}) C{k}", verify_centrality(U, central_element(U, k, "gamma")))
    c.finish()


def test_criterion_03_closed_form(criterion):
    c = criterion(3, "closed form equals the partial trace C_1, convention recorded", 600)
    for m, n in [(1, 1), (2, 2), (2, 1), (1, 2)]:
        U = build_algebra(m, n)
        c.check(f"({m},{n}) derived", closed_form_agreement(U)["derived"].status == Status.VERIFIED)
        report, code = cli.run(cli.RunConfig(m, n, suites=["closed-form"]))
        (rec,) = report["records"]
        c.check(f"({m},{n}) report status", rec["status"] == "Verified" and code == 0)
        c.check(f"({m},{n}) convention recorded", rec["detail"].get("diagonal_convention") == "derived")
    c.finish()


def test_criterion_04_l_inverse(criterion):
    c = criterion(4, "L^- (S(x)1)(L^-) = (S(x)1)(L^-) L^- = 1 and the Ebar recursion, m+n <= 4", 120)
    for m, n in RANKS_LE4:
        U = build_algebra(m, n)
        ops = build_l_operators(U, check=False)
        S1 = antipode_first_leg(U, ops.Lminus)
        I = UMatrix.identity(U)
        c.verdicts(f"({m},{n})", [("L- S(L-)", rep_check_identity(ops.Lminus * S1, I)),
                                  ("S(L-) L-", rep_check_identity(S1 * ops.Lminus, I))])
        for a in range(1, U.N + 1):
            for b in range(a + 1, U.N + 1):
                c.verdicts(f"({m},{n})", [(f"Ebar[{b},{a}]", ebar_expansion_verdict(U, a, b))])
    c.finish()


def test_criterion_05_intertwining(criterion):
    c = criterion(5, "L-operator intertwining and the four unipotent identities, m+n <= 3", 300)
    for m, n in RANKS_LE3:
        res = verify_intertwining(build_algebra(m, n))
        c.check(f"({m},{n}) tilde count", sum(name.startswith("Ltilde") for name, _ in res)
                == 4 * (m + n - 1))
        c.verdicts(f"({m},{n})", res)
    c.finish()


def test_criterion_06_commutation(criterion):
    c = criterion(6, "root-vector commutation suites, m+n <= 4", 120)
    for m, n in RANKS_LE4:
        triples = build_algebra(m, n).verify_commutation_suite()
        c.check(f"({m},{n}) nonempty", bool(triples))
        c.verdicts(f"({m},{n})", [(f"{name}{idx}", v) for name, idx, v in triples])
    c.finish()


def test_criterion_07_ybe(criterion):
    c = criterion(7, "numeric YBE m+n <= 4; LLR suite and direct expansion with census m+n <= 3", 900)
    for m, n in RANKS_LE4:
        c.verdicts(f"({m},{n})", [("numeric YBE", verify_numeric_ybe(build_r(build_algebra(m, n))))])
    for m, n in RANKS_LE3:
        U = build_algebra(m, n)
        llr = verify_llr_suite(U)
        c.check(f"({m},{n}) seven LLR", set(EXPONENT_CLASSES.values()) <= {name for name, _ in llr})
        c.verdicts(f"({m},{n})", llr)
        verdict, census = verify_spectral_ybe(U)
        c.check(f"({m},{n}) direct", verdict.status == Status.VERIFIED)
        c.check(f"({m},{n}) census", sorted(census) == formal_exponent_census() == sorted(EXPONENT_CLASSES))
    c.finish()


def test_criterion_08_hecke_literal(criterion):
    # The literal form Rcheck^{-1} = R - (q - q^-1) Id is checked as stated.  It
    # does not hold: the braided form Rcheck^{-1} = Rcheck - (q - q^-1) Id does
    # (see test_ybe.py::test_hecke_quadratic).
    c = criterion(8, "Rcheck^-1 = R - (q - q^-1) Id, m+n <= 4 (literal reading)", 10)
    for m, n in RANKS_LE4:
        R = build_r(build_algebra(m, n))
        _, _, _, Rci = build_r_variants(R)
        c.check(f"({m},{n})", Rci == R - RepMatrix.identity(R.dim).scale(QQ))
    c.finish()


def test_criterion_09_rll(criterion):
    c = criterion(9, "U(R): ideal equality, Hopf axioms, isomorphism, gl(1|1) relation families", 600)
    for m, n in RANKS_LE3:
        c.verdicts(f"({m},{n}) ideal", compare_with_listed(m, n, transposed=True))
        c.verdicts(f"({m},{n}) hopf", rll_hopf(m, n))
        c.verdicts(f"({m},{n}) iso", verify_isomorphism(m, n))
    ex = verify_example_gl11()
    families = {name for name, _ in ex if name.startswith("verbatim[")}
    c.check("four families", families == {"verbatim[diagonal]", "verbatim[nilpotent]",
                                           "verbatim[q-commutation]", "verbatim[mixed]"})
    c.verdicts("example", ex)
    c.finish()


def test_criterion_10_engine(criterion):
    c = criterion(10, "confluence certificates, PBW census at (1,1), mutation suite", 600)
    for m, n in RANKS_LE4:
        U = build_algebra(m, n)
        for name, P in (("U", U.pres), ("U(x)U", U.square)):
            c.check(f"({m},{n}) {name} certificate", P.certificate(P.completion_degree) == [])
    for m, n in RANKS_LE3:
        h = build_rll(m, n, "generated")
        cube = tensor_power(h.pres, 3)
        for name, P in (("U(R)", h.pres), ("U(R)(x)U(R)", h.square), ("U(R)^(x)3", cube)):
            c.check(f"({m},{n}) {name} certificate", P.certificate(P.completion_degree) == [])
    U = build_algebra(1, 1)
    words = U.pres.normal_words(3)
    c.check("PBW census", len(words) == len(set(words)) and set(words) == pbw_basis_gl11(3))
    for m, n in [(1, 1), (2, 1)]:
        muts = cli.mutation_suite(build_algebra(m, n))
        c.check(f"({m},{n}) ten mutants", len(muts) == 10)
        for name, v in muts:
            c.check(f"({m},{n}) mutant {name}",
                    v.status == Status.FAILED and v.witness is not None and not cli._witness_empty(v.witness))
    c.finish()
