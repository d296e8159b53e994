"""Natural representation and matrices over U (x) End(V)^{(x)d}.

Matrices are sparse dicts ``{(row, col): entry}`` with 0-based indices.  A
multi-leg index is big-endian mixed radix: basis vector v_{a1} (x) ... (x)
v_{ad} sits at ``sum (a_k - 1) * N**(d-k)``.
"""

from __future__ import annotations

import itertools

from .rewrite import NCPoly, Status, Verdict, _coerce
from .scalars import ONE, ZERO, Scalar, as_scalar


class RepMatrix:
    """Square matrix of Scalars."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries=None):
        self.dim = dim
        self.entries = {k: as_scalar(v) for k, v in (entries or {}).items() if v}

    @classmethod
    def identity(cls, dim: int) -> "RepMatrix":
        return cls(dim, {(i, i): ONE for i in range(dim)})

    @classmethod
    def unit(cls, dim: int, i: int, j: int) -> "RepMatrix":
        """Matrix unit e_ij with 1-based indices."""
        return cls(dim, {(i - 1, j - 1): ONE})

    @classmethod
    def from_dense(cls, rows) -> "RepMatrix":
        rows = [list(r) for r in rows]
        return cls(len(rows), {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    def to_dense(self):
        return [[self.entries.get((i, j), ZERO) for j in range(self.dim)] for i in range(self.dim)]

    def __getitem__(self, ij):
        return self.entries.get(ij, ZERO)

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return RepMatrix(self.dim, out)

    def __neg__(self):
        return RepMatrix(self.dim, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RepMatrix":
        c = as_scalar(c)
        return RepMatrix(self.dim, {k: v * c for k, v in self.entries.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        rows = {}
        for (i, k), a in other.entries.items():
            rows.setdefault(i, []).append((k, a))
        out = {}
        for (i, j), a in self.entries.items():
            for k, b in rows.get(j, ()):
                s = out.get((i, k), ZERO) + a * b
                if s:
                    out[(i, k)] = s
                else:
                    out.pop((i, k), None)
        return RepMatrix(self.dim, out)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, RepMatrix) and self.dim == other.dim and self.entries == other.entries

    def is_zero(self) -> bool:
        return not self.entries

    def trace(self) -> Scalar:
        t = ZERO
        for (i, j), v in self.entries.items():
            if i == j:
                t = t + v
        return t

    def kron(self, other: "RepMatrix") -> "RepMatrix":
        d = other.dim
        return RepMatrix(self.dim * d, {
            (i * d + k, j * d + l): a * b
            for (i, j), a in self.entries.items() for (k, l), b in other.entries.items()})

    def transpose(self) -> "RepMatrix":
        return RepMatrix(self.dim, {(j, i): v for (i, j), v in self.entries.items()})

    def __repr__(self):
        return f"RepMatrix(dim={self.dim}, nnz={len(self.entries)})"


# ---------------------------------------------------------------------------
# natural representation
# ---------------------------------------------------------------------------

_LETTER_MATS: dict = {}


def letter_matrix(handle, code: int) -> RepMatrix:
    key = (handle.params, code)
    M = _LETTER_MATS.get(key)
    if M is None:
        L = handle.pres.alphabet[code]
        N = handle.N
        a = L.indices[0]
        if L.kind == "E":
            M = RepMatrix.unit(N, a, a + 1)
        elif L.kind == "F":
            M = RepMatrix.unit(N, a + 1, a)
        else:
            qa = handle.qa(a)
            if L.kind == "Kminus":
                qa = qa.inverse()
            M = RepMatrix.identity(N) + RepMatrix.unit(N, a, a).scale(qa - ONE)
        _LETTER_MATS[key] = M
    return M


def natural_rep(u, handle) -> RepMatrix:
    """pi(u) for an element of the single-copy algebra."""
    u = _coerce(u)
    N = handle.N
    out = RepMatrix(N)
    for w, c in u.terms.items():
        M = RepMatrix.identity(N)
        for x in w:
            M = M * letter_matrix(handle, x)
            if M.is_zero():
                break
        out = out + M.scale(c)
    return out


# ---------------------------------------------------------------------------
# UMatrix
# ---------------------------------------------------------------------------

class UMatrix:
    """Square matrix with algebra entries: an element of U (x) End(V)^{(x)legs}."""

    __slots__ = ("handle", "legs", "dim", "entries")

    def __init__(self, handle, legs: int = 1, entries=None):
        if legs < 1:
            raise ValueError("legs must be >= 1")
        self.handle = handle
        self.legs = legs
        self.dim = handle.N ** legs
        self.entries = {}
        for k, v in (entries or {}).items():
            v = _coerce(v)
            if not v.is_zero():
                self.entries[k] = v

    @classmethod
    def identity(cls, handle, legs: int = 1) -> "UMatrix":
        one = NCPoly.scalar(ONE)
        return cls(handle, legs, {(i, i): one for i in range(handle.N ** legs)})

    @classmethod
    def kron(cls, handle, u, M: RepMatrix, legs: int = 1) -> "UMatrix":
        """u (x) M with u an algebra element and M a scalar matrix."""
        u = _coerce(u)
        if M.dim != handle.N ** legs:
            raise ValueError("dimension mismatch")
        return cls(handle, legs, {k: u.scale(v) for k, v in M.entries.items()})

    @classmethod
    def from_rep(cls, handle, M: RepMatrix, legs: int = 1) -> "UMatrix":
        return cls.kron(handle, NCPoly.scalar(ONE), M, legs)

    def entry(self, i: int, j: int) -> NCPoly:
        """Entry at 1-based single-leg position (row i, col j)."""
        return self.entries.get((i - 1, j - 1), NCPoly.zero())

    def _same(self, other):
        if not isinstance(other, UMatrix) or other.legs != self.legs or other.handle is not self.handle:
            raise ValueError("UMatrix shape or handle mismatch")

    def __add__(self, other):
        self._same(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out[k] + v if k in out else v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return UMatrix(self.handle, self.legs, out)

    def __neg__(self):
        return UMatrix(self.handle, self.legs, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "UMatrix":
        c = as_scalar(c)
        return UMatrix(self.handle, self.legs, {k: v.scale(c) for k, v in self.entries.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return umatrix_mul(self, other)

    def reduced(self) -> "UMatrix":
        red = self.handle.reduce
        return UMatrix(self.handle, self.legs, {k: red(v) for k, v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def to_json(self) -> dict:
        pres = self.handle.pres
        return {"legs": self.legs, "dim": self.dim,
                "entries": [[i, j, pres.poly_to_json(v)]
                            for (i, j), v in sorted(self.entries.items())]}

    def __repr__(self):
        return f"UMatrix(legs={self.legs}, dim={self.dim}, nnz={len(self.entries)})"


def umatrix_mul(A: UMatrix, B: UMatrix) -> UMatrix:
    A._same(B)
    mul = A.handle.mul
    rows = {}
    for (k, j), b in B.entries.items():
        rows.setdefault(k, []).append((j, b))
    acc = {}
    for (i, k), a in A.entries.items():
        for j, b in rows.get(k, ()):
            acc.setdefault((i, j), []).append(mul(a, b))
    out = {}
    for key, parts in acc.items():
        s = parts[0]
        for p in parts[1:]:
            s = s + p
        if not s.is_zero():
            out[key] = s
    return UMatrix(A.handle, A.legs, out)


def _split(idx: int, N: int, legs: int):
    out = []
    for _ in range(legs):
        out.append(idx % N)
        idx //= N
    return out[::-1]


def _join(parts, N: int) -> int:
    idx = 0
    for p in parts:
        idx = idx * N + p
    return idx


def embed_legs(A, total_legs: int, positions) -> "UMatrix | RepMatrix":
    """Place A's legs at ``positions`` (1-based) of a ``total_legs``-fold product."""
    positions = tuple(positions)
    is_rep = isinstance(A, RepMatrix)
    N = A.handle.N if not is_rep else round(A.dim ** (1 / len(positions)))
    legs_in = len(positions)
    if not is_rep and A.legs != legs_in:
        raise ValueError("leg count does not match positions")
    if N ** legs_in != A.dim:
        raise ValueError("dimension mismatch")
    if len(set(positions)) != legs_in or not all(1 <= p <= total_legs for p in positions):
        raise ValueError(f"bad leg positions {positions} for {total_legs} legs")
    others = [k for k in range(1, total_legs + 1) if k not in positions]
    out = {}
    for (i, j), v in A.entries.items():
        ii, jj = _split(i, N, legs_in), _split(j, N, legs_in)
        for rest in itertools.product(range(N), repeat=len(others)):
            row = [0] * total_legs
            col = [0] * total_legs
            for p, a, b in zip(positions, ii, jj):
                row[p - 1], col[p - 1] = a, b
            for p, r in zip(others, rest):
                row[p - 1] = col[p - 1] = r
            out[(_join(row, N), _join(col, N))] = v
    if is_rep:
        return RepMatrix(N ** total_legs, out)
    return UMatrix(A.handle, total_legs, out)


def embed_leg(A, total_legs: int, position: int):
    return embed_legs(A, total_legs, (position,))


def partial_trace_last(A: UMatrix, weight: RepMatrix) -> NCPoly:
    """sum_{a,b} weight_ab A_ba, i.e. Tr over End(V) of (1 (x) weight) A."""
    if A.legs != 1 or weight.dim != A.dim:
        raise ValueError("dimension mismatch")
    out = NCPoly.zero()
    for (a, b), w in weight.entries.items():
        v = A.entries.get((b, a))
        if v is not None:
            out = out + v.scale(w)
    return A.handle.reduce(out)


def rep_check_identity(lhs: UMatrix, rhs: UMatrix) -> Verdict:
    """Entrywise check_zero of lhs - rhs; aggregates the worst status."""
    lhs._same(rhs)
    if lhs.entries == rhs.entries:
        return Verdict(Status.VERIFIED)
    diff = lhs - rhs
    verdicts = []
    for key, v in diff.entries.items():
        r = lhs.handle.check_zero(v)
        r.detail["entry"] = key
        verdicts.append(r)
    return Verdict.worst(verdicts)


def one_tensor_pi(p: NCPoly, handle) -> UMatrix:
    """(1 (x) pi) of a normal element of the tensor square."""
    out = {}
    for w, c in p.terms.items():
        u1, u2 = handle.split_slots(w, 2)
        M = natural_rep(NCPoly.word(u2), handle)
        for key, s in M.entries.items():
            piece = NCPoly.word(u1, c * s)
            out[key] = out[key] + piece if key in out else piece
    return UMatrix(handle, 1, out)


def pi_tensor_one(A: UMatrix) -> RepMatrix:
    """(pi (x) 1) of a single-leg UMatrix, as a two-leg scalar matrix."""
    h = A.handle
    N = h.N
    out = RepMatrix(N * N)
    for (i, j), v in A.entries.items():
        P = natural_rep(v, h)
        out = out + P.kron(RepMatrix(N, {(i, j): ONE}))
    return out
