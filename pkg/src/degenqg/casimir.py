"""L-operators, the Gamma element and central elements built from them."""

from __future__ import annotations

from dataclasses import dataclass, field

from .rewrite import NCPoly, Verdict
from .scalars import QQ
from .tensorrep import (RepMatrix, UMatrix, natural_rep, one_tensor_pi,
                        partial_trace_last, rep_check_identity)


@dataclass
class LOperators:
    handle: object
    Lplus: UMatrix
    Lminus: UMatrix
    LminusInv: UMatrix
    Ltilde_plus: UMatrix
    Ltilde_minus: UMatrix
    inverse_verdicts: list = field(default_factory=list)


@dataclass
class GammaElement:
    gammaV: UMatrix
    gamma: UMatrix


def _cache(U) -> dict:
    c = getattr(U, "_casimir_cache", None)
    if c is None:
        c = {}
        U._casimir_cache = c
    return c


def build_l_operators(U, check: bool = True) -> LOperators:
    """L^+, L^-, the closed-form inverse of L^- and the unipotent parts."""
    cache = _cache(U)
    if "ops" in cache:
        return cache["ops"]
    N = U.N
    lp, lm, lmi, tp, tm = {}, {}, {}, {}, {}
    one = U.one()
    for a in range(1, N + 1):
        i = a - 1
        lp[(i, i)] = U.K(a)
        lm[(i, i)] = U.K(a, -1)
        lmi[(i, i)] = U.K(a)
        tp[(i, i)] = one
        tm[(i, i)] = one
    for a in range(1, N + 1):
        for b in range(a + 1, N + 1):
            # entries (row, col): L^+ at (b,a), L^- and its inverse at (a,b)
            lp[(b - 1, a - 1)] = U.mul(U.K(b), U.E(a, b)).scale(QQ)
            lm[(a - 1, b - 1)] = U.mul(U.E(b, a), U.K(b, -1)).scale(-QQ)
            lmi[(a - 1, b - 1)] = U.mul(U.K(a), U.Ebar(b, a)).scale(QQ)
            tp[(b - 1, a - 1)] = U.E(a, b).scale(QQ)
            tm[(a - 1, b - 1)] = U.E(b, a).scale(-QQ)
    ops = LOperators(U, UMatrix(U, 1, lp), UMatrix(U, 1, lm), UMatrix(U, 1, lmi),
                     UMatrix(U, 1, tp), UMatrix(U, 1, tm))
    if check:
        ops.inverse_verdicts = verify_lminus_inverse(U, ops)
    cache["ops"] = ops
    return ops


def verify_lminus_inverse(U, ops: LOperators):
    I = UMatrix.identity(U)
    out = [("Lminus*LminusInv", rep_check_identity(ops.Lminus * ops.LminusInv, I)),
           ("LminusInv*Lminus", rep_check_identity(ops.LminusInv * ops.Lminus, I)),
           ("(S(x)1)Lminus", rep_check_identity(antipode_first_leg(U, ops.Lminus), ops.LminusInv))]
    for a in range(1, U.N + 1):
        for b in range(a + 1, U.N + 1):
            out.append((f"Ebar_expansion[{b},{a}]", ebar_expansion_verdict(U, a, b)))
    return out


def antipode_first_leg(U, A: UMatrix) -> UMatrix:
    return UMatrix(U, A.legs, {k: U.S(v) for k, v in A.entries.items()})


def ebar_expansion_verdict(U, a: int, b: int) -> Verdict:
    """Ebar_ba = E_ba + (q - q^-1) sum_{a<c<b} E_ca Ebar_bc."""
    rhs = U.E(b, a)
    for c in range(a + 1, b):
        rhs = rhs + U.mul(U.E(c, a), U.Ebar(b, c)).scale(QQ)
    return U.check_zero(U.Ebar(b, a) - rhs)


def delta_rep(U, u, prime: bool = False) -> UMatrix:
    """(1 (x) pi) Delta(u), or of Delta'(u) when ``prime``."""
    d = U.DeltaPrime(u) if prime else U.Delta(u)
    return one_tensor_pi(d, U)


def verify_intertwining(U, ops: LOperators | None = None):
    """L^{+-} (1 (x) pi)Delta(u) = (1 (x) pi)Delta'(u) L^{+-} on generators, plus the
    four identities for the unipotent parts."""
    ops = ops or build_l_operators(U)
    out = []
    for name, g in U.generators():
        D, Dp = delta_rep(U, g), delta_rep(U, g, prime=True)
        out.append((f"L+[{name}]", rep_check_identity(ops.Lplus * D, Dp * ops.Lplus)))
        out.append((f"L-[{name}]", rep_check_identity(ops.Lminus * D, Dp * ops.Lminus)))
    N = U.N
    I = RepMatrix.identity(N)
    kr = lambda u, M: UMatrix.kron(U, u, M)
    one = U.one()
    for c in range(1, N):
        pk, pki = natural_rep(U.k(c), U), natural_rep(U.k(c, -1), U)
        up, dn = RepMatrix.unit(N, c, c + 1), RepMatrix.unit(N, c + 1, c)
        e, f = U.e(c), U.f(c)
        kc, kci = U.k(c), U.k(c, -1)
        Tp, Tm = ops.Ltilde_plus, ops.Ltilde_minus
        out.append((f"Ltilde+_e[{c}]", rep_check_identity(
            Tp * (kr(e, pk) + kr(one, up)), (kr(e, pki) + kr(one, up)) * Tp)))
        out.append((f"Ltilde+_f[{c}]", rep_check_identity(
            Tp * (kr(f, I) + kr(kci, dn)), (kr(f, I) + kr(kc, dn)) * Tp)))
        out.append((f"Ltilde-_e[{c}]", rep_check_identity(
            Tm * (kr(e, I) + kr(kci, up)), (kr(e, I) + kr(kc, up)) * Tm)))
        out.append((f"Ltilde-_f[{c}]", rep_check_identity(
            Tm * (kr(f, pk) + kr(one, dn)), (kr(f, pki) + kr(one, dn)) * Tm)))
    return out


def gamma_elements(U, ops: LOperators | None = None) -> GammaElement:
    cache = _cache(U)
    if "gamma" not in cache:
        ops = ops or build_l_operators(U)
        gv = ops.LminusInv * ops.Lplus
        g = (gv - UMatrix.identity(U)).scale(QQ.inverse())
        cache["gamma"] = GammaElement(gv, g)
    return cache["gamma"]


def X(U, a: int, b: int) -> NCPoly:
    """X_ab = K_b E_ab (a<b), K_b Ebar_ab (a>b), (K_a - 1)/(q - q^-1) (a=b)."""
    if a < b:
        return U.mul(U.K(b), U.E(a, b))
    if a > b:
        return U.mul(U.K(b), U.Ebar(a, b))
    return (U.K(a) - U.one()).scale(QQ.inverse())


def gamma_from_x(U, double_diagonal: bool = True) -> UMatrix:
    """sum X_ab (x) e_ba + (q - q^-1) sum_{a>=b, a>=c} X_ab X_ca (x) e_bc.

    Both triangular factors of (L^-)^{-1} L^+ carry X_aa on the diagonal, so
    the linear diagonal term appears twice; ``double_diagonal=False`` gives
    the single-count expansion, which differs from Gamma by sum X_aa (x) e_aa.
    """
    N = U.N
    ent = {}

    def add(key, v):
        ent[key] = ent[key] + v if key in ent else v

    for a in range(1, N + 1):
        for b in range(1, N + 1):
            add((b - 1, a - 1), X(U, a, b))
        if double_diagonal:
            add((a - 1, a - 1), X(U, a, a))
    for a in range(1, N + 1):
        for b in range(1, a + 1):
            for c in range(1, a + 1):
                add((b - 1, c - 1), U.mul(X(U, a, b), X(U, c, a)).scale(QQ))
    return UMatrix(U, 1, ent)


def gamma_power(U, k: int, variant: str = "gamma") -> UMatrix:
    if variant not in ("gamma", "gammaV"):
        raise ValueError(f"unknown variant {variant!r}")
    cache = _cache(U)
    key = ("pow", variant, k)
    if key in cache:
        return cache[key]
    G = gamma_elements(U)
    base = G.gamma if variant == "gamma" else G.gammaV
    res = base if k == 1 else gamma_power(U, k - 1, variant) * base
    cache[key] = res
    return res


def central_element(U, k: int = 1, variant: str = "gamma") -> NCPoly:
    """C_k = Tr_2((1 (x) pi(K_2rho)) Gamma^k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    W = natural_rep(U.k2rho(), U)
    return partial_trace_last(gamma_power(U, k, variant), W)


def verify_centrality(U, c: NCPoly):
    return [(name, U.check_zero(U.mul(c, g) - U.mul(g, c))) for name, g in U.generators()]


def verify_gamma_commutation(U, variant: str = "gammaV"):
    G = gamma_elements(U)
    base = G.gamma if variant == "gamma" else G.gammaV
    return [(f"[Gamma,Delta({name})]", rep_check_identity(base * delta_rep(U, g), delta_rep(U, g) * base))
            for name, g in U.generators()]


def casimir_weights(U) -> dict:
    """b -> q_b^{w_b}, the diagonal of pi(K_2rho) in the displayed exponent form."""
    m, n = U.m, U.n
    odd = (m + n) % 2
    out = {}
    for b in range(1, m + n + 1):
        if b <= m:
            e = m - n + 1 - 2 * b + odd
        else:
            e = 3 * m + n + 1 - 2 * b - odd
        out[b] = U.qa(b) ** e
    return out


DIAGONAL_CONVENTIONS = ("derived", "X", "unit")


def casimir_closed_form(U, diagonal: str = "derived") -> NCPoly:
    """Closed-form quantum Casimir.

    Linear part sum_b w_b (K_b - 1)/(q - q^-1) plus (q - q^-1) times
    sum_{a>=b} w_b K_b Ebar_ab K_a E_ba, with w_b the K_2rho weights.  The
    diagonal a = b terms involve root vectors that do not exist, and
    ``diagonal`` chooses how to read them:

    ``"derived"``  K_b (K_b - 1)/(q - q^-1)^2, the diagonal that the product
                   (L^-)^{-1} L^+ actually produces (both triangular factors
                   contribute X_bb, plus the X_bb^2 cross term);
    ``"X"``        X_bb^2 = ((K_b - 1)/(q - q^-1))^2;
    ``"unit"``     Ebar_bb = E_bb = 1, i.e. K_b^2.
    """
    if diagonal not in DIAGONAL_CONVENTIONS:
        raise ValueError(f"unknown diagonal convention {diagonal!r}")
    N = U.N
    w = casimir_weights(U)
    out = NCPoly.zero()
    for b in range(1, N + 1):
        out = out + (U.K(b) - U.one()).scale(w[b] * QQ.inverse())
    quad = NCPoly.zero()
    for b in range(1, N + 1):
        for a in range(b, N + 1):
            if a != b:
                t = U.mul(U.K(b), U.Ebar(a, b), U.K(a), U.E(b, a))
            elif diagonal == "derived":
                t = U.mul(U.K(b), X(U, b, b)).scale(QQ.inverse())
            elif diagonal == "X":
                t = U.mul(X(U, b, b), X(U, b, b))
            else:
                t = U.K(b, 2)
            quad = quad + t.scale(w[b])
    return U.reduce(out + quad.scale(QQ))


def closed_form_agreement(U):
    """Which diagonal conventions make the closed form equal C_1 (gamma variant)."""
    c1 = central_element(U, 1, "gamma")
    return {d: U.check_zero(casimir_closed_form(U, d) - c1) for d in DIAGONAL_CONVENTIONS}
