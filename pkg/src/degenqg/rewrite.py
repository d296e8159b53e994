"""Free noncommutative algebras over Q(q) with oriented rewriting.

Words are tuples of integer letter codes; the integer order *is* the letter
precedence, so the degree-lexicographic order on words is simply
``(len(w), w)``.  A :class:`Presentation` owns an alphabet, a rule set
``lhs -> rhs`` and the degree up to which all overlap ambiguities have been
checked to resolve.

Normal forms are computed by folding letters one at a time onto an already
normal prefix: in ``u + (x,)`` with ``u`` normal, the only possible redex is
a suffix, and inter-reduction makes it unique.  Results are memoised per
``(prefix, letter)`` pair and the memo is dropped whenever the rules change.
"""

from __future__ import annotations

import hashlib
import heapq
import json
import logging
import sys
from dataclasses import dataclass, field
from enum import Enum

from .scalars import ONE, ZERO, Scalar, as_scalar

log = logging.getLogger(__name__)

DEFAULT_RULE_CAP = 50_000

sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))


class ResourceLimitError(RuntimeError):
    """Raised when completion exceeds the configured rule cap."""


# ---------------------------------------------------------------------------
# letters and words
# ---------------------------------------------------------------------------

LETTER_KINDS = ("F", "Kminus", "Kplus", "E", "LplusGen", "LminusGen")


@dataclass(frozen=True)
class Letter:
    kind: str
    indices: tuple
    copy: int = 1

    def __post_init__(self):
        if self.kind not in LETTER_KINDS:
            raise ValueError(f"unknown letter kind {self.kind!r}")

    def with_copy(self, copy: int) -> "Letter":
        return Letter(self.kind, self.indices, copy)

    def text(self) -> str:
        i = "".join(str(a) for a in self.indices)
        base = {
            "F": f"f{i}",
            "E": f"e{i}",
            "Kplus": f"K{i}",
            "Kminus": f"K{i}^-1",
            "LplusGen": f"l+{i}",
            "LminusGen": f"l-{i}",
        }[self.kind]
        return base if self.copy == 1 else f"{base}@{self.copy}"

    def latex(self) -> str:
        i = "".join(str(a) for a in self.indices)
        base = {
            "F": f"f_{{{i}}}",
            "E": f"e_{{{i}}}",
            "Kplus": f"K_{{{i}}}",
            "Kminus": f"K_{{{i}}}^{{-1}}",
            "LplusGen": rf"\ell^{{+}}_{{{i}}}",
            "LminusGen": rf"\ell^{{-}}_{{{i}}}",
        }[self.kind]
        return base if self.copy == 1 else rf"{base}^{{({self.copy})}}"

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if len(self.indices) == 1:
            out["index"] = self.indices[0]
        else:
            out["indices"] = list(self.indices)
        out["copy"] = self.copy
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Letter":
        idx = (obj["index"],) if "index" in obj else tuple(obj["indices"])
        return cls(obj["kind"], idx, obj.get("copy", 1))


def word_key(w: tuple):
    return (len(w), w)


def monomial_compare(u: tuple, v: tuple) -> int:
    """Degree-lexicographic comparison of words: -1, 0 or 1."""
    ku, kv = word_key(u), word_key(v)
    return (ku > kv) - (ku < kv)


def _contains(w: tuple, s: tuple) -> bool:
    ls = len(s)
    if ls > len(w):
        return False
    for i in range(len(w) - ls + 1):
        if w[i:i + ls] == s:
            return True
    return False


# ---------------------------------------------------------------------------
# NCPoly
# ---------------------------------------------------------------------------

def _acc(out: dict, w: tuple, c: Scalar):
    s = out.get(w)
    if s is None:
        out[w] = c
    else:
        s = s + c
        if s:
            out[w] = s
        else:
            del out[w]


class NCPoly:
    """A finite Q(q)-linear combination of words (free-algebra element)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {tuple(w): as_scalar(c) for w, c in terms.items() if c}

    @classmethod
    def _wrap(cls, terms: dict) -> "NCPoly":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def word(cls, w, c=ONE) -> "NCPoly":
        return cls({tuple(w): c})

    @classmethod
    def scalar(cls, c) -> "NCPoly":
        return cls({(): c})

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._wrap({})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def leading(self):
        """(word, coefficient) of the deglex-largest word."""
        w = max(self.terms, key=word_key)
        return w, self.terms[w]

    def scalar_part(self) -> Scalar:
        return self.terms.get((), ZERO)

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return NCPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._wrap({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, -c)
        return NCPoly._wrap(out)

    def __rsub__(self, other):
        return _coerce(other) - self

    def scale(self, c) -> "NCPoly":
        c = as_scalar(c)
        if not c:
            return NCPoly.zero()
        if c.is_one():
            return self
        return NCPoly._wrap({w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        """Free-algebra (concatenation) product, or scaling by a Scalar/int."""
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        out = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                _acc(out, u + v, a * b)
        return NCPoly._wrap(out)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (NCPoly, Scalar, int)):
            return self.terms == _coerce(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"NCPoly({len(self.terms)} terms, deg {self.degree()})"

    def shifted(self, offset: int) -> "NCPoly":
        """Relabel every letter code by ``offset`` (tensor-slot embedding)."""
        if not offset:
            return self
        return NCPoly._wrap({tuple(x + offset for x in w): c for w, c in self.terms.items()})

    def reversed_words(self) -> "NCPoly":
        return NCPoly._wrap({w[::-1]: c for w, c in self.terms.items()})


def _coerce(x) -> NCPoly:
    if isinstance(x, NCPoly):
        return x
    return NCPoly.scalar(as_scalar(x))


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

class Status(str, Enum):
    VERIFIED = "Verified"
    FAILED = "Failed"
    UNDECIDED = "Undecided"


_RANK = {Status.VERIFIED: 0, Status.UNDECIDED: 1, Status.FAILED: 2}


@dataclass
class Verdict:
    status: Status
    witness: NCPoly | None = None
    needed_degree: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status is Status.VERIFIED

    @staticmethod
    def worst(verdicts) -> "Verdict":
        verdicts = list(verdicts)
        if not verdicts:
            return Verdict(Status.VERIFIED)
        return max(verdicts, key=lambda v: _RANK[v.status])


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Overlap:
    degree: int
    word: tuple
    left: tuple
    right: tuple


class Presentation:
    """An alphabet, an inter-reduced rewriting system, and its certified degree.

    ``relations`` are oriented on construction (leading word becomes the
    lhs, made monic) and inter-reduced, but overlaps are only examined by
    :meth:`complete`.
    """

    def __init__(self, alphabet, relations=(), params=None, name: str = "",
                 max_rules: int = DEFAULT_RULE_CAP):
        self.alphabet = tuple(alphabet)
        self.code = {l: i for i, l in enumerate(self.alphabet)}
        if len(self.code) != len(self.alphabet):
            raise ValueError("alphabet letters must be distinct")
        self.params = params
        self.name = name
        self.max_rules = max_rules
        self.relations = [r for r in relations]
        self.rules: dict = {}
        self.completion_degree = 0
        self._lengths: list = []
        self._prefix: dict = {}
        self._suffix: dict = {}
        self._cache: dict = {}
        self._word_cache: dict = {}
        self.stats = {"overlaps": 0, "rules_added": 0}
        for r in self.relations:
            self._insert(_coerce(r).terms)
        self._interreduce_rhs()

    # -- construction helpers ----------------------------------------------------

    def copy(self) -> "Presentation":
        new = object.__new__(Presentation)
        new.alphabet = self.alphabet
        new.code = self.code
        new.params = self.params
        new.name = self.name
        new.max_rules = self.max_rules
        new.relations = list(self.relations)
        new.rules = dict(self.rules)
        new.completion_degree = self.completion_degree
        new._lengths = list(self._lengths)
        new._prefix = {k: set(v) for k, v in self._prefix.items()}
        new._suffix = {k: set(v) for k, v in self._suffix.items()}
        new._cache = {}
        new._word_cache = {}
        new.stats = dict(self.stats)
        return new

    @classmethod
    def from_rules(cls, alphabet, rules: dict, params=None, name="",
                   completion_degree: int = 0, relations=()) -> "Presentation":
        """Adopt an already inter-reduced rule set verbatim."""
        pres = cls(alphabet, (), params=params, name=name)
        pres.relations = list(relations)
        for lhs, rhs in rules.items():
            pres._add_rule(tuple(lhs), dict(rhs))
        pres.completion_degree = completion_degree
        return pres

    def letter(self, kind: str, *indices, copy: int = 1) -> int:
        return self.code[Letter(kind, tuple(indices), copy)]

    def gen(self, kind: str, *indices, copy: int = 1) -> NCPoly:
        return NCPoly.word((self.letter(kind, *indices, copy=copy),))

    def one(self) -> NCPoly:
        return NCPoly.scalar(ONE)

    @property
    def rule_count(self) -> int:
        return len(self.rules)

    def max_rule_degree(self) -> int:
        return max((len(l) for l in self.rules), default=0)

    # -- rule bookkeeping -------------------------------------------------------

    def _add_rule(self, lhs: tuple, rhs: dict):
        self.rules[lhs] = rhs
        for k in range(1, len(lhs)):
            self._prefix.setdefault(lhs[:k], set()).add(lhs)
            self._suffix.setdefault(lhs[-k:], set()).add(lhs)
        if len(lhs) not in self._lengths:
            self._lengths.append(len(lhs))
            self._lengths.sort()
        self._cache.clear()
        self._word_cache.clear()

    def _drop_rule(self, lhs: tuple) -> dict:
        rhs = self.rules.pop(lhs)
        for k in range(1, len(lhs)):
            self._prefix[lhs[:k]].discard(lhs)
            self._suffix[lhs[-k:]].discard(lhs)
        self._lengths = sorted({len(l) for l in self.rules})
        self._cache.clear()
        self._word_cache.clear()
        return rhs

    def _insert(self, terms: dict) -> list:
        """Reduce, orient and add a relation; returns the new lhs words."""
        added = []
        work = [terms]
        while work:
            p = self._nf_terms(work.pop())
            if not p:
                continue
            lead = max(p, key=word_key)
            inv = p[lead].inverse()
            rhs = {w: -(c * inv) for w, c in p.items() if w != lead}
            for lhs in [l for l in self.rules if len(l) > len(lead) and _contains(l, lead)]:
                old = self._drop_rule(lhs)
                rel = {w: -c for w, c in old.items()}
                rel[lhs] = ONE
                work.append(rel)
                if lhs in added:
                    added.remove(lhs)
            self._add_rule(lead, rhs)
            added.append(lead)
            self.stats["rules_added"] += 1
            if len(self.rules) > self.max_rules:
                raise ResourceLimitError(
                    f"rule count {len(self.rules)} exceeds cap {self.max_rules} "
                    f"(latest lhs degree {len(lead)})")
        return added

    def _interreduce_rhs(self):
        changed = False
        for lhs in list(self.rules):
            rhs = self.rules[lhs]
            nf = self._nf_terms(rhs)
            if nf != rhs:
                self.rules[lhs] = nf
                changed = True
        if changed:
            self._cache.clear()
            self._word_cache.clear()

    # -- normal forms -------------------------------------------------------------

    def _append(self, u: tuple, x: int) -> dict:
        key = (u, x)
        res = self._cache.get(key)
        if res is not None:
            return res
        w = u + (x,)
        rules = self.rules
        res = None
        lw = len(w)
        for ln in self._lengths:
            if ln > lw:
                break
            s = w[lw - ln:] if ln else ()
            rhs = rules.get(s)
            if rhs is not None:
                prefix = w[:lw - ln]
                res = {}
                for t, c in rhs.items():
                    for w2, c2 in self._concat(prefix, t).items():
                        _acc(res, w2, c * c2)
                break
        if res is None:
            res = {w: ONE}
        self._cache[key] = res
        return res

    def _concat(self, u: tuple, t: tuple) -> dict:
        """Normal form of u*t where u is a normal word."""
        if not t:
            return {u: ONE}
        cur = self._append(u, t[0])
        for x in t[1:]:
            nxt = {}
            for w, c in cur.items():
                for w2, c2 in self._append(w, x).items():
                    _acc(nxt, w2, c * c2)
            cur = nxt
            if not cur:
                break
        return cur

    def _nf_word(self, w: tuple) -> dict:
        res = self._word_cache.get(w)
        if res is None:
            res = self._concat((), w)
            self._word_cache[w] = res
        return res

    def _nf_terms(self, terms: dict) -> dict:
        out = {}
        for w, c in terms.items():
            for w2, c2 in self._nf_word(w).items():
                _acc(out, w2, c * c2)
        return out

    def reduce(self, p) -> NCPoly:
        """Normal form of ``p`` modulo the current rules."""
        return NCPoly._wrap(self._nf_terms(_coerce(p).terms))

    def mul(self, *factors) -> NCPoly:
        """Normal form of the product of the factors, left to right."""
        if not factors:
            return self.one()
        acc = self._nf_terms(_coerce(factors[0]).terms)
        for f in factors[1:]:
            f = _coerce(f)
            if not acc:
                break
            if f.is_scalar():
                c = f.scalar_part()
                acc = {w: x * c for w, x in acc.items()} if c else {}
                continue
            out = {}
            for u, a in acc.items():
                for v, b in f.terms.items():
                    ab = a * b
                    for w2, c2 in self._concat(u, v).items():
                        _acc(out, w2, ab * c2)
            acc = out
        return NCPoly._wrap(acc)

    def power(self, p, k: int) -> NCPoly:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, p)
        return out

    def is_normal_word(self, w: tuple) -> bool:
        for ln in self._lengths:
            for i in range(len(w) - ln + 1):
                if w[i:i + ln] in self.rules:
                    return False
        return True

    def normal_words(self, max_len: int):
        """All irreducible words of length <= ``max_len``, in deglex order.

        Irreducibility is inherited by prefixes, so words are grown letter by
        letter and only normal ones are extended.
        """
        out = [()]
        layer = [()]
        for _ in range(max_len):
            nxt = []
            for w in layer:
                for x in range(len(self.alphabet)):
                    v = w + (x,)
                    if self.is_normal_word(v):
                        nxt.append(v)
            out += nxt
            layer = nxt
        return out

    def reduce_step(self, w: tuple):
        """One rewriting step on a word: earliest-starting redex, longest lhs.

        Returns ``(position, lhs, result)`` or ``None`` for a normal word.
        """
        for i in range(len(w)):
            for ln in reversed(self._lengths):
                s = w[i:i + ln]
                if len(s) == ln and s in self.rules:
                    rhs = self.rules[s]
                    res = {w[:i] + t + w[i + ln:]: c for t, c in rhs.items()}
                    return i, s, NCPoly._wrap(res)
        return None

    def reduce_by_steps(self, p, max_steps: int = 10_000_000) -> NCPoly:
        """Normal form by repeated single steps (slow reference path)."""
        terms = dict(_coerce(p).terms)
        steps = 0
        while True:
            for w in sorted(terms, key=word_key, reverse=True):
                step = self.reduce_step(w)
                if step is not None:
                    break
            else:
                return NCPoly._wrap(terms)
            c = terms.pop(w)
            for w2, c2 in step[2].terms.items():
                _acc(terms, w2, c * c2)
            steps += 1
            if steps > max_steps:
                raise RuntimeError("reduction step bound exceeded")

    # -- completion -----------------------------------------------------------------

    def overlaps_of(self, lhs: tuple, degree_bound: int):
        """All overlaps in which ``lhs`` takes part, on either side."""
        out = []
        la = len(lhs)
        for k in range(1, la):
            for b in self._prefix.get(lhs[-k:], ()):
                if len(b) > k:
                    w = lhs + b[k:]
                    if len(w) <= degree_bound:
                        out.append(Overlap(len(w), w, lhs, b))
            for a in self._suffix.get(lhs[:k], ()):
                if len(a) > k and a != lhs:
                    w = a + lhs[k:]
                    if len(w) <= degree_bound:
                        out.append(Overlap(len(w), w, a, lhs))
        return out

    def all_overlaps(self, degree_bound: int):
        out = []
        for a in self.rules:
            la = len(a)
            for k in range(1, la):
                for b in self._prefix.get(a[-k:], ()):
                    if len(b) > k:
                        w = a + b[k:]
                        if len(w) <= degree_bound:
                            out.append(Overlap(len(w), w, a, b))
        out.sort()
        return out

    def overlap_difference(self, ov: Overlap) -> dict:
        """NF(rhs_left * v) - NF(u * rhs_right) for the overlap word u.b = a.v."""
        a, b, w = ov.left, ov.right, ov.word
        v = w[len(a):]
        u = w[:len(w) - len(b)]
        out = {}
        for t, c in self.rules[a].items():
            for w2, c2 in self._nf_word(t + v).items():
                _acc(out, w2, c * c2)
        for t, c in self.rules[b].items():
            for w2, c2 in self._nf_word(u + t).items():
                _acc(out, w2, -(c * c2))
        return out

    def certificate(self, degree_bound: int | None = None):
        """Unresolved overlaps of degree <= bound (empty list == certified)."""
        d = self.completion_degree if degree_bound is None else degree_bound
        return [ov for ov in self.all_overlaps(d) if self.overlap_difference(ov)]

    def complete(self, degree_bound: int, max_rules: int | None = None) -> "Presentation":
        """Return a new presentation whose overlaps up to ``degree_bound`` resolve."""
        if degree_bound < self.max_rule_degree():
            raise ValueError(f"degree bound {degree_bound} below max rule degree "
                             f"{self.max_rule_degree()}")
        new = self.copy()
        if max_rules is not None:
            new.max_rules = max_rules
        new._run_completion(degree_bound)
        return new

    def _run_completion(self, d: int):
        heap = self.all_overlaps(d)
        heapq.heapify(heap)
        rounds = 0
        while True:
            rounds += 1
            while heap:
                ov = heapq.heappop(heap)
                if ov.left not in self.rules or ov.right not in self.rules:
                    continue
                self.stats["overlaps"] += 1
                diff = self.overlap_difference(ov)
                if diff:
                    for lhs in self._insert(diff):
                        if lhs in self.rules:
                            for o in self.overlaps_of(lhs, d):
                                heapq.heappush(heap, o)
            self._interreduce_rhs()
            bad = self.certificate(d)
            if not bad:
                break
            log.debug("completion round %d: %d unresolved overlaps", rounds, len(bad))
            for ov in bad:
                if ov.left in self.rules and ov.right in self.rules:
                    heapq.heappush(heap, ov)
        self.completion_degree = d
        log.info("%s: completed to degree %d with %d rules", self.name, d, len(self.rules))

    # -- rendering / serialisation -------------------------------------------------

    def word_text(self, w: tuple, latex: bool = False) -> str:
        if not w:
            return "1"
        if latex:
            return " ".join(self.alphabet[x].latex() for x in w)
        return "*".join(self.alphabet[x].text() for x in w)

    def render(self, p, fmt: str = "text") -> str:
        p = _coerce(p)
        if p.is_zero():
            return "0"
        latex = fmt == "latex"
        parts = []
        for w in sorted(p.terms, key=word_key, reverse=True):
            c = p.terms[w]
            sign = ""
            if c.is_laurent() and all(a <= 0 for a in c.num):
                sign, c = "-", -c
            cs = c.to_latex() if latex else c.to_text()
            ws = self.word_text(w, latex)
            if not w:
                parts.append(sign + (f"({cs})" if _needs_paren(c) else cs))
            elif c.is_one():
                parts.append(sign + ws)
            else:
                sep = " " if latex else "*"
                parts.append(f"{sign}({cs}){sep}{ws}")
        out = parts[0]
        for s in parts[1:]:
            out += (" - " + s[1:]) if s.startswith("-") else (" + " + s)
        return out

    def poly_to_json(self, p) -> dict:
        p = _coerce(p)
        return {"terms": [
            {"coef": c.to_json(), "word": [self.alphabet[x].to_json() for x in w]}
            for w, c in sorted(p.terms.items(), key=lambda t: word_key(t[0]))
        ]}

    def poly_from_json(self, obj: dict) -> NCPoly:
        terms = {}
        for t in obj["terms"]:
            w = tuple(self.code[Letter.from_json(l)] for l in t["word"])
            _acc(terms, w, Scalar.from_json(t["coef"]))
        return NCPoly._wrap(terms)

    def precedence_hash(self) -> str:
        text = "|".join(l.text() for l in self.alphabet)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        m, n = self.params if self.params else (None, None)
        return {
            "header": {"m": m, "n": n, "precedence_hash": self.precedence_hash(),
                       "completion_degree": self.completion_degree, "name": self.name},
            "alphabet": [l.to_json() for l in self.alphabet],
            "rules": [{"lhs": [self.alphabet[x].to_json() for x in lhs],
                       "rhs": self.poly_to_json(NCPoly._wrap(rhs))}
                      for lhs, rhs in sorted(self.rules.items(), key=lambda t: word_key(t[0]))],
            "relations": [self.poly_to_json(r) for r in self.relations],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Presentation":
        alphabet = [Letter.from_json(l) for l in obj["alphabet"]]
        h = obj["header"]
        params = (h["m"], h["n"]) if h.get("m") is not None else None
        shell = cls(alphabet, (), params=params, name=h.get("name", ""))
        rules = {tuple(shell.code[Letter.from_json(l)] for l in r["lhs"]):
                 shell.poly_from_json(r["rhs"]).terms for r in obj["rules"]}
        relations = [shell.poly_from_json(r) for r in obj["relations"]]
        pres = cls.from_rules(alphabet, rules, params=params, name=h.get("name", ""),
                              completion_degree=h["completion_degree"], relations=relations)
        if pres.precedence_hash() != h["precedence_hash"]:
            raise ValueError("precedence hash mismatch")
        return pres

    def dumps(self) -> str:
        body = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        digest = hashlib.sha256(body.encode()).hexdigest()
        return json.dumps({"checksum": digest, "body": body})

    @classmethod
    def loads(cls, text: str) -> "Presentation":
        outer = json.loads(text)
        body = outer["body"]
        if hashlib.sha256(body.encode()).hexdigest() != outer["checksum"]:
            raise ValueError("presentation cache checksum mismatch")
        return cls.from_json(json.loads(body))

    def __repr__(self):
        return (f"Presentation({self.name!r}, {len(self.alphabet)} letters, "
                f"{len(self.rules)} rules, degree {self.completion_degree})")


def _needs_paren(c: Scalar) -> bool:
    return not c.is_laurent() or sum(1 for a in c.n if a) > 1


# ---------------------------------------------------------------------------
# verdicts against a presentation
# ---------------------------------------------------------------------------

def check_zero(p, pres: Presentation) -> Verdict:
    """Verified iff ``p`` reduces to 0; Failed only within the certified degree."""
    p = _coerce(p)
    nf = pres.reduce(p)
    needed = p.degree()
    if nf.is_zero():
        return Verdict(Status.VERIFIED, needed_degree=max(needed, 0))
    if pres.completion_degree >= needed:
        return Verdict(Status.FAILED, witness=nf, needed_degree=needed)
    return Verdict(Status.UNDECIDED, witness=nf, needed_degree=needed)


def check_equal(lhs, rhs, pres: Presentation) -> Verdict:
    return check_zero(_coerce(lhs) - _coerce(rhs), pres)


# ---------------------------------------------------------------------------
# tensor powers
# ---------------------------------------------------------------------------

def tensor_power(pres: Presentation, k: int = 2, certify: bool = True) -> Presentation:
    """U^{(x)k}: k tagged copies of the alphabet, slots commuting with each other.

    Copy ``c`` occupies codes ``(c-1)*N .. c*N-1`` so that every letter of a
    later slot outranks every letter of an earlier one, and the cross rules
    ``y_j x_i -> x_i y_j`` (j > i) move letters towards their own slot.
    """
    if any(l.copy != 1 for l in pres.alphabet):
        raise ValueError("tensor_power expects a single-copy presentation")
    n = len(pres.alphabet)
    alphabet = [l.with_copy(c) for c in range(1, k + 1) for l in pres.alphabet]
    rules = {}
    for c in range(k):
        off = c * n
        for lhs, rhs in pres.rules.items():
            rules[tuple(x + off for x in lhs)] = {
                tuple(x + off for x in w): s for w, s in rhs.items()}
    for hi in range(1, k):
        for lo in range(hi):
            for y in range(hi * n, (hi + 1) * n):
                for x in range(lo * n, (lo + 1) * n):
                    rules[(y, x)] = {(x, y): ONE}
    out = Presentation.from_rules(alphabet, rules, params=pres.params,
                                  name=f"{pres.name}^(x){k}")
    if certify:
        d = pres.completion_degree
        if out.certificate(d):
            out = out.complete(d)
        out.completion_degree = d
    return out


def tensor_square(pres: Presentation, certify: bool = True) -> Presentation:
    return tensor_power(pres, 2, certify=certify)


def tensor(pres_k: Presentation, n_letters: int, *factors) -> NCPoly:
    """Pure tensor f1 (x) f2 (x) ... as an element of the tensor power.

    Each factor is a normal element of the single-copy presentation with
    ``n_letters`` letters; the concatenated words are already normal.
    """
    out = NCPoly.scalar(ONE)
    for slot, f in enumerate(factors):
        out = out * _coerce(f).shifted(slot * n_letters)
    return out
