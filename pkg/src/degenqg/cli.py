"""Command-line driver: build handles, run verification suites, render elements.

Every flag can also be set through an environment variable named
``DEGENQG_<FLAG>`` (upper case, dashes as underscores); explicit flags win.
Exit codes: 0 all Verified, 1 some Failed, 2 some Undecided and none Failed,
3 configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .casimir import (build_l_operators, casimir_closed_form, central_element,
                      closed_form_agreement, verify_centrality,
                      verify_gamma_commutation, verify_intertwining)
from .rewrite import NCPoly, Presentation, Status, Verdict, check_zero
from .tensorrep import RepMatrix, UMatrix, rep_check_identity
from .uqglmn import MAX_RANK, Uqglmn, build_alphabet, default_degree_bound

log = logging.getLogger("degenqg")

ENV_PREFIX = "DEGENQG_"
REPORT_SCHEMA = "report_v1"
EXIT_OK, EXIT_FAILED, EXIT_UNDECIDED, EXIT_CONFIG = 0, 1, 2, 3
SUITE_ORDER = ("hopf", "commutation", "linverse", "intertwining", "centrality",
               "closed-form", "ybe", "hecke", "rll", "engine")
VERIFY_TARGETS = ("centrality", "intertwining", "linverse", "ybe", "commutation", "hopf",
                  "closed-form", "hecke", "rll", "engine", "all")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    m: int
    n: int
    degree_bound: int | None = None
    suites: list = field(default_factory=list)
    format: str = "text"
    cache_dir: str | None = None
    parallelism: int = 1
    direct: bool = False
    llr: bool = False

    def validate(self):
        if self.m < 1:
            raise ConfigError("m must be >= 1")
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.m + self.n > MAX_RANK:
            raise ConfigError(f"m+n must be <= {MAX_RANK}")
        if self.degree_bound is not None and self.degree_bound < 4:
            raise ConfigError("degree bound must be >= 4")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")
        if self.format not in ("text", "json", "latex"):
            raise ConfigError(f"unknown format {self.format!r}")

    @property
    def degree(self) -> int:
        return default_degree_bound(self.m, self.n) if self.degree_bound is None else self.degree_bound


# ---------------------------------------------------------------------------
# presentation cache
# ---------------------------------------------------------------------------

def cache_path(cache_dir, m: int, n: int, degree: int) -> Path:
    h = Presentation(build_alphabet(m, n)).precedence_hash()
    return Path(cache_dir) / f"uqglmn_m{m}_n{n}_d{degree}_{h}.json"


def write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_HANDLES: dict = {}


def load_algebra(cfg: RunConfig) -> Uqglmn:
    """Completed U_q(gl_{m,n}), via the cache directory when one is configured."""
    key = (cfg.m, cfg.n, cfg.degree, cfg.cache_dir)
    if key in _HANDLES:
        return _HANDLES[key]
    U = None
    path = cache_path(cfg.cache_dir, cfg.m, cfg.n, cfg.degree) if cfg.cache_dir else None
    if path is not None and path.exists():
        try:
            pres = Presentation.loads(path.read_text())
            if pres.params != (cfg.m, cfg.n) or pres.completion_degree != cfg.degree:
                raise ValueError("cache header does not match the configuration")
            U = Uqglmn(cfg.m, cfg.n, presentation=pres)
            log.info("loaded %s from %s", pres.name, path)
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            log.warning("cache %s unusable (%s); rebuilding", path, exc)
            U = None
    if U is None:
        U = Uqglmn(cfg.m, cfg.n, cfg.degree)
        if path is not None:
            write_atomic(path, U.pres.dumps())
    _HANDLES[key] = U
    return U


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

_IDX = re.compile(r"\[(-?[0-9]+(?:, ?-?[0-9]+)*)\]")


def _indices(name: str):
    m = _IDX.search(name)
    return [int(x) for x in m.group(1).split(",")] if m else []


def make_record(suite: str, name: str, v: Verdict, pres: Presentation | None, millis: float,
                indices=None, fmt: str = "text", detail=None) -> dict:
    rec = {"suite": suite, "name": name,
           "indices": list(indices) if indices is not None else _indices(name),
           "status": v.status.value, "millis": round(millis, 3)}
    if v.witness is not None and pres is not None and v.status != Status.VERIFIED:
        rec["witness"] = pres.render(v.witness, "latex" if fmt == "latex" else "text")
    if v.needed_degree is not None and v.status != Status.VERIFIED:
        rec["needed_degree"] = v.needed_degree
    extra = dict(v.detail or {})
    extra.update(detail or {})
    if extra:
        rec["detail"] = {k: (list(x) if isinstance(x, tuple) else x) for k, x in extra.items()}
    return rec


def _records(suite, pairs, pres, t0, fmt, detail=None):
    """Turn (name, Verdict) pairs into records sharing the suite's mean time."""
    pairs = list(pairs)
    each = (time.perf_counter() - t0) * 1000 / max(len(pairs), 1)
    return [make_record(suite, name, v, pres, each, fmt=fmt, detail=detail) for name, v in pairs]


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_hopf(cfg, U):
    t0 = time.perf_counter()
    pairs = U.verify_hopf_axioms() + U.verify_k2rho()
    return _records("hopf", pairs, U.square, t0, cfg.format)


def suite_commutation(cfg, U):
    t0 = time.perf_counter()
    triples = U.verify_commutation_suite()
    each = (time.perf_counter() - t0) * 1000 / max(len(triples), 1)
    return [make_record("commutation", name, v, U.pres, each, indices=idx, fmt=cfg.format)
            for name, idx, v in triples]


def suite_linverse(cfg, U):
    t0 = time.perf_counter()
    ops = build_l_operators(U)
    return _records("linverse", ops.inverse_verdicts, U.pres, t0, cfg.format)


def suite_intertwining(cfg, U):
    t0 = time.perf_counter()
    pairs = verify_intertwining(U) + verify_gamma_commutation(U)
    return _records("intertwining", pairs, U.pres, t0, cfg.format)


def suite_centrality(cfg, U, ks=(1, 2)):
    out = []
    for k in ks:
        t0 = time.perf_counter()
        c = central_element(U, k, "gamma")
        pairs = [(f"C{k}:{name}", v) for name, v in verify_centrality(U, c)]
        out += _records("centrality", pairs, U.pres, t0, cfg.format, detail={"k": k})
    return out


def suite_closed_form(cfg, U):
    t0 = time.perf_counter()
    agree = closed_form_agreement(U)
    derived = agree["derived"]
    rec = _records("closed-form", [("closed_form=C1", derived)], U.pres, t0, cfg.format)
    rec[0]["detail"] = {"diagonal_convention": "derived",
                        "conventions": {k: v.status.value for k, v in agree.items()}}
    return rec


def suite_ybe(cfg, U):
    """R-matrix identities, LLR suite and (unless skipped) the direct expansion.

    ``--llr`` restricts to the LLR route; ``--direct`` forces the direct
    bivariate expansion, which is otherwise run only for m+n <= 3.
    """
    from . import ybe
    run_direct = cfg.direct or (U.N <= 3 and not cfg.llr)
    out = []
    t0 = time.perf_counter()
    out += _records("ybe", ybe.verify_r_matrix(U) + ybe.verify_pi_of_l(U), U.pres, t0, cfg.format)
    t0 = time.perf_counter()
    pairs = ybe.verify_llr_suite(U) + [(f"numeric_{a}", v) for a, v in ybe.verify_llr_numeric(U)]
    out += _records("ybe", pairs, U.pres, t0, cfg.format)
    if run_direct:
        t0 = time.perf_counter()
        verdict, census = ybe.verify_spectral_ybe(U)
        pairs = [(f"spectral[{i},{j}]", v) for (i, j), v in sorted(census.items())]
        ok = sorted(census) == ybe.formal_exponent_census()
        pairs.append(("spectral_census", Verdict(Status.VERIFIED if ok else Status.FAILED,
                                                 detail={"exponents": [list(k) for k in sorted(census)]})))
        out += _records("ybe", pairs, U.pres, t0, cfg.format)
    for r in out:
        r.setdefault("detail", {})
        r["detail"]["rules"] = U.pres.rule_count
    return out


def suite_hecke(cfg, U):
    from . import ybe
    t0 = time.perf_counter()
    pairs = [(name, v) for name, v in ybe.verify_r_matrix(U) if name == "hecke"]
    return _records("hecke", pairs, None, t0, cfg.format)


def suite_rll(cfg, U, parts=("compare", "hopf", "isomorphism")):
    from . import rll
    out = []
    h = rll.build_rll(cfg.m, cfg.n, "generated", cfg.degree)
    for part in parts:
        t0 = time.perf_counter()
        if part == "compare":
            pairs = rll.compare_with_listed(cfg.m, cfg.n, True, cfg.degree)
            pres = h.pres
        elif part == "hopf":
            pairs = rll.rll_hopf(cfg.m, cfg.n, cfg.degree)
            pres = h.square
        elif part == "isomorphism":
            pairs = rll.verify_isomorphism(cfg.m, cfg.n, cfg.degree)
            pres = None
        elif part == "example":
            pairs = rll.verify_example_gl11() if (cfg.m, cfg.n) == (1, 1) else []
            pres = h.pres
        else:
            raise ConfigError(f"unknown rll part {part!r}")
        out += _records(f"rll-{part}", pairs, pres, t0, cfg.format)
    return out


def mutation_suite(U):
    """Ten deliberately corrupted identities; each must come back Failed.

    Returns (name, Verdict) with the verdict of the corrupted identity itself.
    """
    from . import ybe
    e, f, K = U.e(1), U.f(1), U.K
    qa = U.qa(1)
    out = []
    out.append(("K e K^-1 with squared scalar",
                U.check_zero(U.mul(K(1), e, K(1, -1)) - e.scale(qa * qa))))
    kk = (U.k(1) - U.k(1, -1)).scale((qa - qa.inverse()).inverse())
    out.append(("{e,f} anticommutator", U.check_zero(U.mul(e, f) + U.mul(f, e) - kk)))
    out.append(("e f = f e", U.check_zero(U.mul(e, f) - U.mul(f, e))))
    out.append(("S(e) = -k^-1 e", U.check_zero(U.S(e) + U.mul(U.k(1, -1), e))))
    out.append(("cocommutative Delta(e)", check_zero(U.Delta(e) - U.DeltaPrime(e), U.square)))
    out.append(("S^2(e) = e", U.check_zero(U.S(U.S(e)) - e)))
    c = central_element(U, 1, "gamma") + K(1)
    out.append(("C1 + K1 central", U.check_zero(U.mul(c, e) - U.mul(e, c))))
    c1 = central_element(U, 1, "gamma")
    out.append(("closed form with X_bb^2 diagonal", U.check_zero(casimir_closed_form(U, "X") - c1)))
    ops = build_l_operators(U)
    v = rep_check_identity(ops.Lminus * ops.Lplus, UMatrix.identity(U))
    out.append(("L^- L^+ = 1", v))
    g = ybe._Legs(U, ops)
    out.append(("L+_12 L+_13 = L+_13 L+_12", rep_check_identity(g.Lp12 * g.Lp13, g.Lp13 * g.Lp12)))
    return out


def suite_engine(cfg, U):
    from . import rll
    out = []
    t0 = time.perf_counter()
    pres_list = [("uq", U.pres), ("uq_square", U.square),
                 ("rll", rll.build_rll(cfg.m, cfg.n, "generated", cfg.degree).pres)]
    pairs = []
    for name, p in pres_list:
        bad = p.certificate(p.completion_degree)
        pairs.append((f"certificate[{name}]", Verdict(
            Status.VERIFIED if not bad else Status.FAILED,
            detail={"degree": p.completion_degree, "rules": p.rule_count, "unresolved": len(bad)})))
    out += _records("engine", pairs, None, t0, cfg.format)
    t0 = time.perf_counter()
    pairs = []
    for name, v in mutation_suite(U):
        caught = v.status == Status.FAILED and v.witness is not None and not _witness_empty(v.witness)
        pairs.append((f"mutation[{name}]", Verdict(Status.VERIFIED if caught else Status.FAILED,
                                                   detail={"mutant_status": v.status.value})))
    out += _records("engine", pairs, None, t0, cfg.format)
    return out


def _witness_empty(w) -> bool:
    if isinstance(w, NCPoly):
        return w.is_zero()
    return not w


SUITES = {
    "hopf": suite_hopf,
    "commutation": suite_commutation,
    "linverse": suite_linverse,
    "intertwining": suite_intertwining,
    "centrality": suite_centrality,
    "closed-form": suite_closed_form,
    "ybe": suite_ybe,
    "hecke": suite_hecke,
    "rll": suite_rll,
    "engine": suite_engine,
}


def _run_one(name: str, cfg_dict: dict):
    cfg = RunConfig(**cfg_dict)
    return SUITES[name](cfg, load_algebra(cfg))


def run(cfg: RunConfig):
    """Run the configured suites in dependency order; returns (report, exit code)."""
    cfg.validate()
    names = [s for s in SUITE_ORDER if s in cfg.suites]
    records = []
    if cfg.parallelism > 1 and len(names) > 1:
        if cfg.cache_dir:
            load_algebra(cfg)  # populate the cache once before fanning out
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            futures = [pool.submit(_run_one, s, asdict(cfg)) for s in names]
            for fut in futures:
                records += fut.result()
    else:
        U = load_algebra(cfg)
        for s in names:
            records += SUITES[s](cfg, U)
    report = build_report(cfg, records)
    return report, exit_code(report)


def build_report(cfg: RunConfig, records) -> dict:
    counts = {s.value: 0 for s in Status}
    for r in records:
        counts[r["status"]] += 1
    conf = asdict(cfg)
    conf["degree_bound"] = cfg.degree
    return {"schema": REPORT_SCHEMA, "engine_version": __version__, "config": conf,
            "summary": dict(counts, total=len(records)), "records": records}


def exit_code(report) -> int:
    s = report["summary"]
    if s[Status.FAILED.value]:
        return EXIT_FAILED
    if s[Status.UNDECIDED.value]:
        return EXIT_UNDECIDED
    return EXIT_OK


def render_report(report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    lines = []
    for r in report["records"]:
        line = f"{r['status']:<9} {r['suite']:<14} {r['name']}"
        if r.get("indices"):
            line += f" {tuple(r['indices'])}"
        if "witness" in r:
            line += f"  witness: {r['witness']}"
        lines.append(line)
    s = report["summary"]
    lines.append(f"summary: {s['Verified']} verified, {s['Failed']} failed, "
                 f"{s['Undecided']} undecided ({s['total']} checks)")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

_ELEMENT = re.compile(r"^(?P<kind>e|f|K|Kinv|E|Ebar|C|CV|Cas|K2rho|R|RminusT|Lplus|Lminus|LminusInv)"
                      r"(?:_?(?P<idx>\d+))?$")


def named_element(U: Uqglmn, name: str):
    """Resolve an element name: e1, f1, K2, Kinv2, E_13, Ebar_31, C1, CV2, Cas,
    K2rho, R, RminusT, Lplus, Lminus, LminusInv."""
    from . import ybe
    mt = _ELEMENT.match(name)
    if not mt:
        raise ConfigError(f"unknown element {name!r}")
    kind, idx = mt.group("kind"), mt.group("idx")
    digits = [int(c) for c in idx] if idx else []

    def need(k):
        if len(digits) != k or not all(1 <= d <= U.N for d in digits):
            raise ConfigError(f"element {name!r} needs {k} index digit(s) in 1..{U.N}")

    if kind in ("e", "f"):
        need(1)
        if digits[0] >= U.N:
            raise ConfigError(f"{name}: index must be < {U.N}")
        return (U.e if kind == "e" else U.f)(digits[0])
    if kind in ("K", "Kinv"):
        need(1)
        return U.K(digits[0], 1 if kind == "K" else -1)
    if kind in ("E", "Ebar"):
        need(2)
        if digits[0] == digits[1]:
            raise ConfigError("root vectors need distinct indices")
        return (U.E if kind == "E" else U.Ebar)(*digits)
    if kind in ("C", "CV"):
        k = int(idx) if idx else 1
        if k < 1:
            raise ConfigError("k must be >= 1")
        return central_element(U, k, "gamma" if kind == "C" else "gammaV")
    if kind == "Cas":
        return casimir_closed_form(U)
    if kind == "K2rho":
        return U.k2rho()
    if kind in ("R", "RminusT"):
        R = ybe.build_r(U)
        return R if kind == "R" else ybe.build_r_variants(R)[1]
    ops = build_l_operators(U)
    return {"Lplus": ops.Lplus, "Lminus": ops.Lminus, "LminusInv": ops.LminusInv}[kind]


def render_element(U: Uqglmn, x, fmt: str, meta: dict | None = None) -> str:
    meta = dict(meta or {})
    if isinstance(x, RepMatrix):
        rows = x.to_dense()
        if fmt == "json":
            return json.dumps(dict(meta, matrix=[[c.to_json() for c in r] for r in rows]), sort_keys=True)
        if fmt == "latex":
            body = r" \\ ".join(" & ".join(c.to_latex() for c in r) for r in rows)
            return r"\begin{pmatrix} " + body + r" \end{pmatrix}"
        return "\n".join("  ".join(c.to_text() for c in r) for r in rows)
    if isinstance(x, UMatrix):
        if fmt == "json":
            return json.dumps(dict(meta, umatrix=x.to_json()), sort_keys=True)
        lines = []
        for (i, j), v in sorted(x.entries.items()):
            lines.append(f"[{i + 1},{j + 1}] {U.pres.render(v, fmt)}")
        return "\n".join(lines)
    x = U.reduce(x)
    if fmt == "json":
        return json.dumps(dict(meta, element=U.pres.poly_to_json(x), text=U.pres.render(x)), sort_keys=True)
    return U.pres.render(x, fmt)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _env(name: str, default, kind=str):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return default
    if kind is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    try:
        return kind(raw)
    except ValueError:
        raise ConfigError(f"bad value {raw!r} for {ENV_PREFIX + name.upper()}")


def _common(p: argparse.ArgumentParser, fmt_default="text"):
    p.add_argument("--m", type=int, default=_env("m", None, int))
    p.add_argument("--n", type=int, default=_env("n", None, int))
    p.add_argument("--degree-bound", type=int, default=_env("degree_bound", None, int))
    p.add_argument("--format", choices=("text", "json", "latex"), default=_env("format", fmt_default))
    p.add_argument("--cache-dir", default=_env("cache_dir", None))
    p.add_argument("--parallelism", type=int, default=_env("parallelism", 1, int))
    p.add_argument("-v", "--verbose", action="store_true", default=_env("verbose", False, bool))


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="degenqg", description="Exact verification suites for U_q(gl_{m,n}).")
    ap.add_argument("--version", action="version", version=f"degenqg {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("casimir", help="central elements from the partial trace or the closed form")
    _common(c)
    c.add_argument("--k", type=int, default=_env("k", 1, int))
    c.add_argument("--variant", choices=("gammaV", "gamma"), default=_env("variant", "gamma"))
    c.add_argument("--closed-form", action="store_true", default=_env("closed_form", False, bool))
    c.add_argument("--diagonal", choices=("derived", "X", "unit"), default=_env("diagonal", "derived"))

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("target", choices=VERIFY_TARGETS)
    _common(v)
    v.add_argument("--direct", action="store_true", default=_env("direct", False, bool))
    v.add_argument("--llr", action="store_true", default=_env("llr", False, bool))

    r = sub.add_parser("rll", help="the RLL algebra U(R)")
    r.add_argument("action", choices=("generate", "compare", "hopf", "isomorphism"))
    _common(r)

    x = sub.add_parser("export", help="render a named element")
    x.add_argument("element")
    _common(x)
    return ap


def _config(ns, suites) -> RunConfig:
    if ns.m is None or ns.n is None:
        raise ConfigError("--m and --n are required")
    cfg = RunConfig(m=ns.m, n=ns.n, degree_bound=ns.degree_bound, suites=list(suites),
                    format=ns.format, cache_dir=ns.cache_dir, parallelism=ns.parallelism,
                    direct=getattr(ns, "direct", False), llr=getattr(ns, "llr", False))
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return _dispatch(ns)
    except ConfigError as exc:
        print(f"degenqg: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def _dispatch(ns) -> int:
    if ns.command == "verify":
        suites = SUITE_ORDER if ns.target == "all" else (ns.target,)
        cfg = _config(ns, suites)
        report, code = run(cfg)
        print(render_report(report, cfg.format))
        return code
    if ns.command == "rll":
        cfg = _config(ns, ())
        return _rll_command(cfg, ns.action)
    cfg = _config(ns, ())
    U = load_algebra(cfg)
    if ns.command == "casimir":
        if ns.k < 1:
            raise ConfigError("k must be >= 1")
        if ns.closed_form:
            x = casimir_closed_form(U, ns.diagonal)
            meta = {"m": cfg.m, "n": cfg.n, "closed_form": True, "diagonal_convention": ns.diagonal}
        else:
            x = central_element(U, ns.k, ns.variant)
            meta = {"m": cfg.m, "n": cfg.n, "k": ns.k, "variant": ns.variant}
        print(render_element(U, x, cfg.format, meta))
        return EXIT_OK
    x = named_element(U, ns.element)
    print(render_element(U, x, cfg.format, {"m": cfg.m, "n": cfg.n, "element": ns.element}))
    return EXIT_OK


def _rll_command(cfg: RunConfig, action: str) -> int:
    from . import rll
    h = rll.build_rll(cfg.m, cfg.n, "generated", cfg.degree)
    if action == "generate":
        rels = rll.generate_rll_relations(h) + h.inverse_relations()
        if cfg.format == "json":
            print(json.dumps({"m": cfg.m, "n": cfg.n, "relations": [
                {"name": name, "relation": h.pres.poly_to_json(r)} for name, r in rels]}, sort_keys=True))
        else:
            for name, r in rels:
                print(f"{name}: {h.render(r, cfg.format)} = 0")
        return EXIT_OK
    parts = {"compare": ("compare", "example"), "hopf": ("hopf",), "isomorphism": ("isomorphism",)}[action]
    records = suite_rll(cfg, None, parts)
    report = build_report(cfg, records)
    print(render_report(report, cfg.format))
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
