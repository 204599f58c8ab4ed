"""Command-line driver.

Subcommands: catalog, product, dproduct, hallnum, table, verify.  Exit
codes: 0 success, 1 verification failure, 2 invalid input, 3 budget
exceeded.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import BACKEND, __version__
from . import derived as D
from . import hall as H
from .cache import Cache, CacheCorrupted, cache_key
from .catalog import Catalog
from .errors import DEFAULT_BUDGET, BudgetExceeded, HallforgeError
from .quiver import QuiverError, linear_quiver, load_quiver, parse_vector, vec_add, vec_le, vectors_below

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class JobConfig:
    quiver: object
    q: int
    bound: tuple | None
    amp: tuple
    budget: int
    cache_dir: Path | None
    fmt: str

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.bound is not None and (len(self.bound) != self.quiver.n or any(b < 0 for b in self.bound)):
            raise ValueError(f"bound {self.bound} does not fit a quiver with {self.quiver.n} vertices")
        if self.amp[0] > self.amp[1]:
            raise ValueError(f"empty amplitude interval {self.amp}")


def _resolve_quiver(source):
    if source is None:
        raise ValueError("--quiver is required")
    path = Path(source)
    if path.is_file():
        return load_quiver(path)
    if source.startswith("A") and source[1:].isdigit():
        return linear_quiver(int(source[1:]))
    if "\n" in source or source.strip().startswith("{"):
        return load_quiver(source)
    raise ValueError(f"quiver file {source!r} not found")


def _parse_amp(text):
    vals = parse_vector(text)
    if len(vals) == 1:
        return (-abs(vals[0]), abs(vals[0]))
    if len(vals) != 2:
        raise ValueError(f"amplitude must be 'a,b' or a single bound, got {text!r}")
    return tuple(vals)


# ---------------------------------------------------------------------------
# shared computations


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def element_csv(element) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["class", "num", "den"])
    for cls, c in element.items():
        w.writerow([cls.label, c.numerator, c.denominator])
    return buf.getvalue()


def element_text(element, fmt) -> str:
    if fmt == "csv":
        return element_csv(element)
    return json.dumps(element.to_json(), indent=2) + "\n"


def compute_table(cat: Catalog, degree, mode="classical", amp=(0, 0), bound=None) -> str:
    """CSV (m, n, r, g) of every structure constant landing in ``degree``."""
    degree = tuple(degree)
    rows = []
    if mode == "classical":
        nonzero = [d for d in vectors_below(degree) if any(d) and any(a - b for a, b in zip(degree, d))]
        for dm in nonzero:
            dn = tuple(a - b for a, b in zip(degree, dm))
            for m, n, r, g in H.structure_constants(cat, dm, dn):
                rows.append(((m.sort_key, n.sort_key, r.sort_key), [m.label, n.label, r.label, str(g)]))
    else:
        cap = tuple(bound) if bound is not None else tuple(abs(x) for x in degree)
        objs = [o for o in D.objects_in_range(cat, amp, cap) if not o.is_zero]
        for m in objs:
            for n in objs:
                if vec_add(D.k0_class(m), D.k0_class(n)) != degree or not D.fits(cap, m, n):
                    continue
                consts = D.derived_structure(n, m, cat.budget)
                for r in D.candidate_targets(n, m, cat.budget):
                    g = consts.get(r, Fraction(0))
                    rows.append(((m.sort_key, n.sort_key, r.sort_key), [m.label, n.label, r.label, _format_coeff(g)]))
    rows.sort(key=lambda t: t[0])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "n", "r", "g"])
    for _, row in rows:
        w.writerow(row)
    return buf.getvalue()


class Session:
    """Catalog and cache for one invocation."""

    def __init__(self, cfg: JobConfig, err=None, read_cache=True):
        self.cfg = cfg
        self.err = err or sys.stderr
        self.catalog = Catalog(cfg.quiver, cfg.q, cfg.budget)
        self.cache = Cache(cfg.cache_dir) if cfg.cache_dir is not None else Cache()
        if cfg.bound is not None and read_cache:
            self._load_catalog(cfg.bound)

    def _load(self, key):
        # a damaged entry is reported and recomputed; `verify` reports it as a failure
        try:
            return self.cache.load(key)
        except CacheCorrupted as exc:
            self.err.write(f"hallforge: warning: {exc}; recomputing\n")
            return None

    def _payload(self, bound, args, data):
        return {
            "quiver": self.cfg.quiver.to_json(),
            "q": self.cfg.q,
            "bound": list(bound) if bound is not None else None,
            "extra": json.dumps(args, sort_keys=True),
            "args": args,
            "data": data,
        }

    def _load_catalog(self, bound):
        key = cache_key(self.cfg.quiver, self.cfg.q, bound, "catalog", json.dumps({}, sort_keys=True))
        payload = self._load(key)
        if payload is None:
            data = self.catalog.to_json(bound)
            self.cache.store(key, "catalog", self._payload(bound, {}, data))
        else:
            self.catalog.load_json(payload["data"])
        return key

    def table(self, degree, mode, amp):
        bound = self.cfg.bound
        args = {"degree": list(degree), "mode": mode, "amp": list(amp), "bound": list(bound) if bound is not None else None}
        key = cache_key(self.cfg.quiver, self.cfg.q, bound, f"table-{mode}", json.dumps(args, sort_keys=True))
        payload = self._load(key)
        if payload is not None:
            return payload["data"]
        data = compute_table(self.catalog, degree, mode, tuple(amp), bound)
        self.cache.store(key, f"table-{mode}", self._payload(bound, args, data))
        return data


# ---------------------------------------------------------------------------
# subcommands


def cmd_catalog(session: Session, args, out) -> int:
    cfg = session.cfg
    bound = cfg.bound
    if bound is None:
        raise ValueError("catalog needs --bound")
    cat = session.catalog
    counts = {d: len(cat.iso_classes(d)) for d in vectors_below(bound)}
    indec = len(cat.catalog(bound))
    if cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["dims", "classes"])
        for d, c in counts.items():
            w.writerow([",".join(map(str, d)), c])
    else:
        summary = {
            "quiver": cfg.quiver.digest(),
            "q": cfg.q,
            "bound": list(bound),
            "indecomposables": indec,
            "classes": {",".join(map(str, d)): c for d, c in counts.items()},
        }
        out.write(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


def _operand(session, label, mode):
    cat = session.catalog
    if mode == "classical":
        return H.HallElement.basis(cat, cat.parse_label(label))
    return D.DerivedHallElement.basis(cat, D.PerfectObject.parse(cat, label))


def cmd_product(session: Session, args, out, mode=None) -> int:
    mode = mode or args.mode
    lhs = _operand(session, args.lhs, mode)
    rhs = _operand(session, args.rhs, mode)
    out.write(element_text(lhs * rhs, session.cfg.fmt))
    return EXIT_OK


def cmd_dproduct(session: Session, args, out) -> int:
    return cmd_product(session, args, out, mode="derived")


def cmd_hallnum(session: Session, args, out) -> int:
    cat = session.catalog
    r, m, n = (cat.parse_label(x) for x in (args.r, args.m, args.n))
    g = H.hall_number_subcount(cat, r, m, n)
    if args.check:
        H.hall_number_extcount(cat, r, m, n)
    if session.cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["m", "n", "r", "g"])
        w.writerow([m.label, n.label, r.label, g])
    else:
        out.write(json.dumps({"r": r.label, "m": m.label, "n": n.label, "g": str(g)}, indent=2) + "\n")
    return EXIT_OK


def cmd_table(session: Session, args, out) -> int:
    degree = parse_vector(args.degree)
    if len(degree) != session.cfg.quiver.n:
        raise ValueError(f"degree {degree} has the wrong length")
    if args.mode == "classical" and session.cfg.bound is not None and not vec_le(degree, session.cfg.bound):
        raise ValueError(f"degree {degree} exceeds bound {session.cfg.bound}")
    out.write(session.table(degree, args.mode, session.cfg.amp))
    return EXIT_OK


def cmd_verify(session: Session, args, out) -> int:
    from .verify import run_suite

    cfg = session.cfg
    bound = cfg.bound if cfg.bound is not None else (2,) * cfg.quiver.n
    report = run_suite(args.suite, session.catalog, bound, cfg.amp, cache=session.cache)
    out.write(report.dumps() + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument parsing


def _global_options(suppress: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--quiver", default=default, help="quiver file (DSL or JSON), or A<n>")
    p.add_argument("--q", type=int, default=argparse.SUPPRESS if suppress else 2, help="field size (prime)")
    p.add_argument("--bound", default=default, help="dimension-vector bound d1,d2,...")
    p.add_argument("--amp", default=argparse.SUPPRESS if suppress else "0,0", help="amplitude interval a,b")
    p.add_argument("--budget", type=int, default=argparse.SUPPRESS if suppress else DEFAULT_BUDGET)
    p.add_argument("--cache", default=default, help="cache directory (default $HALLFORGE_CACHE)")
    p.add_argument("--format", dest="fmt", choices=["json", "csv"], default=argparse.SUPPRESS if suppress else "json")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hallforge", description="Exact Ringel-Hall and derived Hall algebra engine.",
                                     parents=[_global_options(False)])
    parser.add_argument("--version", action="version", version=f"hallforge {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _global_options(True)

    p = sub.add_parser("catalog", parents=[common], help="enumerate iso classes up to the bound")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("product", parents=[common], help="product of two basis elements")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--mode", choices=["classical", "derived"], default="classical")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("dproduct", parents=[common], help="derived product of two objects")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=cmd_dproduct)

    p = sub.add_parser("hallnum", parents=[common], help="Hall number g^R_{M,N}")
    p.add_argument("r")
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("--check", action="store_true", help="also run the exact-sequence count")
    p.set_defaults(func=cmd_hallnum)

    p = sub.add_parser("table", parents=[common], help="structure constants landing in one degree")
    p.add_argument("degree")
    p.add_argument("--mode", choices=["classical", "derived"], default="classical")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["hall", "derived", "all"])
    p.set_defaults(func=cmd_verify)
    return parser


def config_from_args(args) -> JobConfig:
    quiver = _resolve_quiver(args.quiver)
    bound = parse_vector(args.bound) if args.bound else None
    cache_dir = Path(args.cache) if args.cache else None
    return JobConfig(quiver, int(args.q), bound, _parse_amp(args.amp), int(args.budget), cache_dir, args.fmt)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = config_from_args(args)
        session = Session(cfg, err, read_cache=args.command != "verify")
        return args.func(session, args, out)
    except BudgetExceeded as exc:
        err.write(f"hallforge: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except CacheCorrupted as exc:
        err.write(f"hallforge: corrupted cache: {exc}\n")
        return EXIT_VERIFY
    except (QuiverError, HallforgeError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        err.write(f"hallforge: error: {msg}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
