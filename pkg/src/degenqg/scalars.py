"""Exact arithmetic in Q(q) and in Laurent extensions Q(q)[x^{+-1}, y^{+-1}].

Univariate integer polynomials are tuples of ``int`` in ascending degree
order with no trailing zeros; the zero polynomial is ``()``.

A :class:`Scalar` is stored as ``q**v * N(q) / D(q)`` where neither ``N`` nor
``D`` is divisible by ``q``, ``gcd(N, D) = 1`` over ``Z[q]`` and ``D`` has a
positive leading coefficient.  This form is unique, so equality and hashing
are structural.  Laurent polynomials in ``q`` (the overwhelmingly common
case) have ``D == (1,)`` and never need a gcd.
"""

from __future__ import annotations

from math import gcd as igcd
from math import isqrt

Poly = tuple

ONE_POLY: Poly = (1,)


# ---------------------------------------------------------------------------
# dense integer polynomials
# ---------------------------------------------------------------------------

def _trim(c: list) -> Poly:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def padd(f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    c = list(f)
    for i, b in enumerate(g):
        c[i] += b
    return _trim(c)


def psub(f: Poly, g: Poly) -> Poly:
    c = list(f) + [0] * (len(g) - len(f))
    for i, b in enumerate(g):
        c[i] -= b
    return _trim(c)


def pneg(f: Poly) -> Poly:
    return tuple(-a for a in f)


def pscale(f: Poly, k: int) -> Poly:
    if not k:
        return ()
    return tuple(a * k for a in f)


def pmul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    if len(f) == 1:
        return pscale(g, f[0])
    if len(g) == 1:
        return pscale(f, g[0])
    c = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                c[i + j] += a * b
    return tuple(c)


def pshift(f: Poly, k: int) -> Poly:
    """Multiply by q**k, k >= 0."""
    if not f or not k:
        return f
    return (0,) * k + f


def pcontent(f: Poly) -> int:
    c = 0
    for a in f:
        c = igcd(c, a)
        if c == 1:
            break
    return c


def pprimitive(f: Poly) -> Poly:
    c = pcontent(f)
    if c <= 1:
        return f
    return tuple(a // c for a in f)


def pdivexact(f: Poly, g: Poly):
    """Return f / g if g divides f exactly in Z[q], else None."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return ()
    if len(g) == 1:
        d = g[0]
        if d == 1:
            return f
        out = []
        for a in f:
            k, r = divmod(a, d)
            if r:
                return None
            out.append(k)
        return tuple(out)
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return None
    r = list(f)
    lc = g[-1]
    quo = [0] * (df - dg + 1)
    for i in range(df - dg, -1, -1):
        k, rem = divmod(r[i + dg], lc)
        if rem:
            return None
        quo[i] = k
        if k:
            for j, b in enumerate(g):
                r[i + j] -= k * b
    if any(r[:dg]):
        return None
    return tuple(quo)


def peval(f: Poly, x: int) -> int:
    acc = 0
    for a in reversed(f):
        acc = acc * x + a
    return acc


def _interpolate(h: int, x: int) -> Poly:
    out = []
    half = x // 2
    while h:
        g = h % x
        if g > half:
            g -= x
        out.append(g)
        h = (h - g) // x
    return tuple(out)


def _prem(f: Poly, g: Poly) -> Poly:
    df, dg = len(f) - 1, len(g) - 1
    r = list(f)
    lc = g[-1]
    for i in range(df - dg, -1, -1):
        a = r[i + dg]
        if a:
            for k in range(len(r)):
                r[k] *= lc
            for j, b in enumerate(g):
                r[i + j] -= a * b
        else:
            for k in range(len(r)):
                r[k] *= lc
    return _trim(r[:dg] if dg else [])


def _prs_gcd(f: Poly, g: Poly) -> Poly:
    f, g = pprimitive(f), pprimitive(g)
    if len(f) < len(g):
        f, g = g, f
    while g:
        if len(g) == 1:
            return ONE_POLY
        r = _prem(f, g)
        f, g = g, pprimitive(r)
    return f


def _canon_sign(f: Poly) -> Poly:
    return pneg(f) if f and f[-1] < 0 else f


def pgcd(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor in Z[q], with positive leading coefficient."""
    if not f:
        return _canon_sign(g)
    if not g:
        return _canon_sign(f)
    cf, cg = pcontent(f), pcontent(g)
    c = igcd(cf, cg)
    if len(f) == 1 or len(g) == 1:
        return (c,)
    pf = f if cf == 1 else tuple(a // cf for a in f)
    pg = g if cg == 1 else tuple(a // cg for a in g)
    if pf == pg or pf == pneg(pg):
        return pscale(_canon_sign(pf), c)
    h = _heu_gcd(pf, pg)
    if h is None:
        h = _prs_gcd(pf, pg)
    return pscale(_canon_sign(h), c)


def _heu_gcd(f: Poly, g: Poly):
    # heuristic gcd of primitive polynomials: gcd of values at a large
    # integer, recovered by balanced base-x digit expansion
    nf = max(abs(a) for a in f)
    ng = max(abs(a) for a in g)
    b = 2 * min(nf, ng) + 29
    x = max(min(b, 99 * isqrt(b)),
            2 * min(nf // abs(f[-1]), ng // abs(g[-1])) + 2)
    for _ in range(6):
        ff, gg = peval(f, x), peval(g, x)
        if ff and gg:
            h = _interpolate(igcd(ff, gg), x)
            if h:
                h = pprimitive(h)
                if pdivexact(f, h) is not None and pdivexact(g, h) is not None:
                    return h
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def _split_q(f: Poly):
    """Return (k, f / q**k) with f / q**k having a nonzero constant term."""
    k = 0
    while k < len(f) and not f[k]:
        k += 1
    return k, (f[k:] if k else f)


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------

class Scalar:
    """An element of Q(q), immutable and canonical."""

    __slots__ = ("v", "n", "d", "_hash")

    def __init__(self, num=(), den=ONE_POLY, shift: int = 0):
        if isinstance(num, int):
            num = (num,) if num else ()
        if isinstance(den, int):
            den = (den,)
        num, den = _trim(list(num)), _trim(list(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        self._set(*_normalize(shift, num, den))

    def _set(self, v, n, d):
        self.v = v
        self.n = n
        self.d = d
        self._hash = None

    @classmethod
    def _raw(cls, v: int, n: Poly, d: Poly) -> "Scalar":
        s = object.__new__(cls)
        s.v, s.n, s.d, s._hash = v, n, d, None
        return s

    @classmethod
    def from_int(cls, k: int) -> "Scalar":
        if not k:
            return ZERO
        return cls._raw(0, (k,), ONE_POLY)

    @classmethod
    def laurent(cls, coeffs: dict) -> "Scalar":
        """Build sum_k coeffs[k] * q**k."""
        coeffs = {k: c for k, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo, hi = min(coeffs), max(coeffs)
        return cls._raw(lo, tuple(coeffs.get(k, 0) for k in range(lo, hi + 1)), ONE_POLY)

    # -- views ---------------------------------------------------------------

    @property
    def num(self) -> Poly:
        """Numerator as a polynomial in q (canonical num/den form)."""
        return pshift(self.n, self.v) if self.v > 0 else self.n

    @property
    def den(self) -> Poly:
        return pshift(self.d, -self.v) if self.v < 0 else self.d

    def is_zero(self) -> bool:
        return not self.n

    def is_one(self) -> bool:
        return self.v == 0 and self.n == ONE_POLY and self.d == ONE_POLY

    def is_laurent(self) -> bool:
        return self.d == ONE_POLY

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                other = Scalar.from_int(other)
            else:
                return NotImplemented
        if not self.n:
            return other
        if not other.n:
            return self
        v1, v2 = self.v, other.v
        v = v1 if v1 < v2 else v2
        n1 = pshift(self.n, v1 - v)
        n2 = pshift(other.n, v2 - v)
        d1, d2 = self.d, other.d
        if d1 == d2:
            n = padd(n1, n2)
            if not n:
                return ZERO
            k, n = _split_q(n)
            if d1 == ONE_POLY:
                return Scalar._raw(v + k, n, d1)
            g = pgcd(n, d1)
            if g != ONE_POLY:
                n, d = _fix_den_sign(pdivexact(n, g), pdivexact(d1, g))
                return Scalar._raw(v + k, n, d)
            return Scalar._raw(v + k, n, d1)
        g = pgcd(d1, d2)
        if g == ONE_POLY:
            n = padd(pmul(n1, d2), pmul(n2, d1))
            d = pmul(d1, d2)
        else:
            a, b = pdivexact(d1, g), pdivexact(d2, g)
            n = padd(pmul(n1, b), pmul(n2, a))
            d = pmul(d1, b)
        if not n:
            return ZERO
        k, n = _split_q(n)
        h = pgcd(n, d)
        if h != ONE_POLY:
            n, d = pdivexact(n, h), pdivexact(d, h)
        n, d = _fix_den_sign(n, d)
        return Scalar._raw(v + k, n, d)

    __radd__ = __add__

    def __neg__(self):
        if not self.n:
            return self
        return Scalar._raw(self.v, pneg(self.n), self.d)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                if not other or not self.n:
                    return ZERO
                return Scalar._raw(self.v, pscale(self.n, other), self.d) \
                    if self.d == ONE_POLY or pcontent(self.d) == 1 \
                    else self * Scalar.from_int(other)
            return NotImplemented
        if not self.n or not other.n:
            return ZERO
        if self.d == ONE_POLY and other.d == ONE_POLY:
            return Scalar._raw(self.v + other.v, pmul(self.n, other.n), ONE_POLY)
        n1, d1, n2, d2 = self.n, self.d, other.n, other.d
        g = pgcd(n1, d2)
        if g != ONE_POLY:
            n1, d2 = pdivexact(n1, g), pdivexact(d2, g)
        g = pgcd(n2, d1)
        if g != ONE_POLY:
            n2, d1 = pdivexact(n2, g), pdivexact(d1, g)
        n, d = _fix_den_sign(pmul(n1, n2), pmul(d1, d2))
        return Scalar._raw(self.v + other.v, n, d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.n:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        n, d = _fix_den_sign(self.d, self.n)
        return Scalar._raw(-self.v, n, d)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing --------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.v == other.v and self.n == other.n and self.d == other.d
        if isinstance(other, int):
            return self == Scalar.from_int(other)
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.v, self.n, self.d))
        return h

    def __bool__(self):
        return bool(self.n)

    def canon(self) -> "Scalar":
        """Re-normalise from the num/den view (idempotent)."""
        return Scalar(self.num, self.den)

    # -- rendering -------------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        num, den = self.num, self.den
        ns = poly_text(num)
        if den == ONE_POLY:
            return ns
        ds = poly_text(den)
        if _nterms(num) > 1:
            ns = f"({ns})"
        if _nterms(den) > 1 or (den[-1] != 1 and len(den) > 1):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def to_latex(self) -> str:
        num, den = self.num, self.den
        if den == ONE_POLY:
            return poly_text(num, latex=True)
        return r"\frac{%s}{%s}" % (poly_text(num, latex=True), poly_text(den, latex=True))

    def to_json(self) -> dict:
        return {"num": [[c, e] for e, c in enumerate(self.num) if c],
                "den": [[c, e] for e, c in enumerate(self.den) if c]}

    @classmethod
    def from_json(cls, obj: dict) -> "Scalar":
        def build(terms):
            if not terms:
                return ()
            top = max(e for _, e in terms)
            c = [0] * (top + 1)
            for coef, e in terms:
                c[e] += coef
            return tuple(c)
        return cls(build(obj["num"]), build(obj["den"]))


def _fix_den_sign(n: Poly, d: Poly):
    if d[-1] < 0:
        return pneg(n), pneg(d)
    return n, d


def _normalize(shift: int, num: Poly, den: Poly):
    if not num:
        return 0, (), ONE_POLY
    kn, num = _split_q(num)
    kd, den = _split_q(den)
    g = pgcd(num, den)
    if g != ONE_POLY:
        num, den = pdivexact(num, g), pdivexact(den, g)
    num, den = _fix_den_sign(num, den)
    return shift + kn - kd, num, den


def _nterms(f: Poly) -> int:
    return sum(1 for a in f if a)


def poly_text(f: Poly, var: str = "q", latex: bool = False) -> str:
    if not f:
        return "0"
    parts = []
    for e in range(len(f) - 1, -1, -1):
        c = f[e]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else (f"{var}^{{{e}}}" if latex else f"{var}^{e}")
            body = mono if a == 1 else f"{a}{'' if latex else '*'}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f"{sign}{body}"
    return out


ZERO = Scalar._raw(0, (), ONE_POLY)
ONE = Scalar._raw(0, ONE_POLY, ONE_POLY)
Q = Scalar._raw(1, ONE_POLY, ONE_POLY)
Q_INV = Scalar._raw(-1, ONE_POLY, ONE_POLY)
#: q - q^{-1}
QQ = Q - Q_INV


def as_scalar(c) -> Scalar:
    if isinstance(c, Scalar):
        return c
    if isinstance(c, int):
        return Scalar.from_int(c)
    raise TypeError(f"cannot coerce {type(c).__name__} to Scalar")


def q_power(k: int) -> Scalar:
    return Scalar._raw(k, ONE_POLY, ONE_POLY)


def q_sub(a: int, params) -> Scalar:
    """q_a: q for a <= m, p = -q^{-1} for m < a <= m + n."""
    m, n = params
    if not 1 <= a <= m + n:
        raise IndexError(f"index {a} outside 1..{m + n}")
    return Q if a <= m else -Q_INV


# ---------------------------------------------------------------------------
# Laurent polynomials in the spectral parameters
# ---------------------------------------------------------------------------

class SpectralScalar:
    """A finite sum of Scalar * x**i * y**j with no zero coefficients stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: as_scalar(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, i: int, j: int, c=ONE) -> "SpectralScalar":
        return cls({(i, j): c})

    def __add__(self, other):
        other = _spectral(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SpectralScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return SpectralScalar({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_spectral(other))

    def __mul__(self, other):
        other = _spectral(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                s = out.get(k, ZERO) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return SpectralScalar(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (SpectralScalar, Scalar, int)):
            return self.terms == _spectral(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "SpectralScalar(0)"
        body = " + ".join(f"({c})*x^{i}*y^{j}" for (i, j), c in sorted(self.terms.items()))
        return f"SpectralScalar({body})"


def _spectral(c) -> SpectralScalar:
    if isinstance(c, SpectralScalar):
        return c
    return SpectralScalar({(0, 0): as_scalar(c)})
