"""Verification suites: algebraic laws and oracle agreements, as reports.

Each ``check_*`` function returns a ``Check`` with the number of cases
examined and the first few failures.  ``run_suite`` bundles them for the
CLI; the acceptance tests call the same functions with their own ranges.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import derived as D
from . import hall as H
from . import rep as R
from .catalog import Catalog, validate_catalog_json
from .quiver import Quiver, vec_add, vec_le

MAX_FAILURES = 5


@dataclass
class Check:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(msg)
        elif len(self.failures) == MAX_FAILURES:
            self.failures.append("...")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases, "failures": self.failures}


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# classical checks


def _basis(cat, cls):
    return H.HallElement.basis(cat, cls)


def check_dual_algorithm(cat: Catalog, bound) -> Check:
    """Subobject count == exact-sequence count for every triple with dim R <= bound."""
    chk = Check("hall.dual_algorithm")
    classes = cat.classes_below(bound)
    for r in classes:
        for m in classes:
            if not vec_le(m.dims, r.dims):
                continue
            for n in cat.iso_classes(tuple(a - b for a, b in zip(r.dims, m.dims))):
                chk.cases += 1
                a = H.hall_number_subcount(cat, r, m, n)
                b = H.hall_number_extcount(cat, r, m, n, check=False)
                if a != b:
                    chk.fail(f"R={r} M={m} N={n}: subcount {a} != extcount {b}")
    return chk


def _triples_within(cat, bound):
    classes = cat.classes_below(bound)
    for x in classes:
        for y in classes:
            xy = vec_add(x.dims, y.dims)
            if not vec_le(xy, bound):
                continue
            for z in classes:
                if vec_le(vec_add(xy, z.dims), bound):
                    yield x, y, z


def check_associativity(cat: Catalog, bound) -> Check:
    """(x*y)*z == x*(y*z) and unit laws on basis triples with dim sum <= bound."""
    chk = Check("hall.associativity_unit")
    one = H.HallElement.unit(cat)
    for x in cat.classes_below(bound):
        chk.cases += 1
        bx = _basis(cat, x)
        if one * bx != bx or bx * one != bx:
            chk.fail(f"unit law fails for {x}")
    for x, y, z in _triples_within(cat, bound):
        chk.cases += 1
        bx, by, bz = _basis(cat, x), _basis(cat, y), _basis(cat, z)
        left = (bx * by) * bz
        right = bx * (by * bz)
        if left != right:
            chk.fail(f"({x}*{y})*{z} = {left} but {x}*({y}*{z}) = {right}")
    return chk


def check_grading(cat: Catalog, bound) -> Check:
    """Products of homogeneous elements are homogeneous of the summed degree."""
    chk = Check("hall.grading")
    classes = cat.classes_below(bound)
    degrees = sorted({c.dims for c in classes})
    whole = {d: sum((_basis(cat, c) for c in cat.iso_classes(d)), H.HallElement(cat)) for d in degrees}
    for x in classes:
        for y in classes:
            d = vec_add(x.dims, y.dims)
            if not vec_le(d, bound):
                continue
            chk.cases += 1
            prod = _basis(cat, x) * _basis(cat, y)
            if prod and prod.degrees() != {d}:
                chk.fail(f"{x}*{y} has degrees {sorted(prod.degrees())}, expected {d}")
    for d1 in degrees:
        for d2 in degrees:
            d = vec_add(d1, d2)
            if not vec_le(d, bound):
                continue
            chk.cases += 1
            prod = whole[d1] * whole[d2]
            if prod and prod.degrees() != {d}:
                chk.fail(f"degree {d1} * degree {d2} lands in {sorted(prod.degrees())}")
    return chk


def check_filtration(cat: Catalog, sequences) -> Check:
    """Flag counts == both bracketings of the iterated binary product."""
    chk = Check("hall.filtration")
    for seq in sequences:
        chk.cases += 1
        flags = H.multi_product_filtration(cat, seq, check=False)
        right = _basis(cat, seq[-1])
        for c in reversed(seq[:-1]):
            right = _basis(cat, c) * right
        left = _basis(cat, seq[0])
        for c in seq[1:]:
            left = left * _basis(cat, c)
        if not flags == right == left:
            chk.fail(f"{[str(c) for c in seq]}: flags {flags}, right {right}, left {left}")
    return chk


def simple_sequences(cat: Catalog, length: int, bound=None):
    simples = [cat.simple(v) for v in cat.quiver.vertices]
    for seq in itertools.product(simples, repeat=length):
        if bound is None or vec_le(H._total_dims(cat, seq), bound):
            yield list(seq)


def check_ext_bruteforce(cat: Catalog, bound) -> Check:
    """dim Ext^1 from counting middle terms == dim Hom - Euler form."""
    chk = Check("hall.ext1_bruteforce")
    classes = cat.classes_below(bound)
    for m in classes:
        for n in classes:
            if not vec_le(vec_add(m.dims, n.dims), bound):
                continue
            chk.cases += 1
            a = H.ext1_dim_bruteforce(cat, m, n)
            b = R.ext1_dim(m.rep, n.rep)
            if a != b:
                chk.fail(f"Ext^1({m},{n}): counted {a}, Euler form {b}")
    return chk


def check_invariance(cat: Catalog, bound, seed=0) -> Check:
    """Hall numbers do not change when representatives are replaced by random isomorphic copies."""
    import numpy as np

    rng = np.random.default_rng(seed)
    chk = Check("hall.representative_invariance")
    classes = cat.classes_below(bound)
    for r in classes:
        for m in classes:
            if not vec_le(m.dims, r.dims):
                continue
            for n in cat.iso_classes(tuple(a - b for a, b in zip(r.dims, m.dims))):
                chk.cases += 1
                rr = R.random_base_change(r.rep, rng)
                count = 0
                for s in R.iter_subrepresentations(rr, n.dims, cat.budget):
                    if cat.classify(s.sub) == n and cat.classify(s.quotient) == m:
                        count += 1
                if count != H.hall_number(cat, r, m, n):
                    chk.fail(f"R={r} M={m} N={n}: {count} after base change")
    return chk


def hall_suite(cat: Catalog, bound) -> list[Check]:
    seqs = [s for n in (2, 3) for s in simple_sequences(cat, n, bound)]
    return [
        check_dual_algorithm(cat, bound),
        check_associativity(cat, bound),
        check_grading(cat, bound),
        check_filtration(cat, seqs),
        check_ext_bruteforce(cat, bound),
        check_invariance(cat, bound),
    ]


# ---------------------------------------------------------------------------
# derived checks


def check_classical_limit(cat: Catalog, bound) -> tuple[Check, Check]:
    """Derived products of modules == classical products, and the other slot order fails somewhere.

    Pairs range over module classes with dim M + dim N <= bound.  The slot
    pin only counts pairs with M*N != N*M; where the classical product is
    commutative the two orders cannot be told apart.
    """
    chk = Check("derived.classical_limit")
    pin = Check("derived.slot_convention")
    classes = cat.classes_below(bound)
    literal_fails = 0
    for m in classes:
        for n in classes:
            if not vec_le(vec_add(m.dims, n.dims), bound):
                continue
            chk.cases += 1
            mn = _basis(cat, m) * _basis(cat, n)
            classical = D.DerivedHallElement.from_classical(mn)
            a = D.DerivedHallElement.basis(cat, m)
            b = D.DerivedHallElement.basis(cat, n)
            if D.derived_product(a, b, slot=D.SLOT_SWAPPED) != classical:
                chk.fail(f"{m}*{n}: derived != classical")
            if mn == _basis(cat, n) * _basis(cat, m):
                continue
            pin.cases += 1
            if D.derived_product(a, b, slot=D.SLOT_LITERAL) != classical:
                literal_fails += 1
    if pin.cases and literal_fails == 0:
        pin.fail("both slot assignments reproduce the classical product; convention not pinned")
    return chk, pin


def check_derived_associativity(cat: Catalog, amp, cap) -> Check:
    """Associativity and unit on basis triples of objects in amplitude amp with summed per-degree dims <= cap."""
    chk = Check("derived.associativity_unit")
    objs = [o for o in D.objects_in_range(cat, amp, cap)]
    one = D.DerivedHallElement.unit(cat)
    B = lambda o: D.DerivedHallElement.basis(cat, o)  # noqa: E731
    for x in objs:
        chk.cases += 1
        if one * B(x) != B(x) or B(x) * one != B(x):
            chk.fail(f"unit law fails for {x}")
    for x in objs:
        for y in objs:
            if not D.fits(cap, x, y):
                continue
            xy = B(x) * B(y)
            for z in objs:
                if not D.fits(cap, x, y, z):
                    continue
                chk.cases += 1
                left = xy * B(z)
                right = B(x) * (B(y) * B(z))
                if left != right:
                    chk.fail(f"({x})*({y})*({z}): {left} != {right}")
    return chk


def check_derived_grading(cat: Catalog, amp, cap) -> Check:
    chk = Check("derived.k0_grading")
    objs = D.objects_in_range(cat, amp, cap)
    for x in objs:
        for y in objs:
            if not D.fits(cap, x, y):
                continue
            chk.cases += 1
            prod = D.DerivedHallElement.basis(cat, x) * D.DerivedHallElement.basis(cat, y)
            want = vec_add(D.k0_class(x), D.k0_class(y))
            if prod and prod.degrees() != {want}:
                chk.fail(f"{x} * {y} has K0 degrees {sorted(prod.degrees())}, expected {want}")
    return chk


def check_arrows(cat: Catalog) -> tuple[Check, Check]:
    """Cone additivity and finite positive homotopy tables on every enumerated arrow."""
    cone_chk = Check("derived.cone_additivity")
    fin = Check("derived.local_finiteness")
    for u in D.enumerated_arrows(cat):
        cone_chk.cases += 1
        fin.cases += 1
        want = tuple(a - b for a, b in zip(D.k0_class(u.target), D.k0_class(u.source)))
        if D.k0_class(u.cone) != want:
            cone_chk.fail(f"arrow {u.source} -> {u.target}: k0(cone {u.cone}) != {want}")
        for table in (u.pi, D.pi_orders_object(u.target), D.pi_orders_object(u.source)):
            if not table.is_finite() or any(not isinstance(v, int) or v < 1 for v in table.as_dict().values()):
                fin.fail(f"arrow {u.source} -> {u.target}: bad table {table.as_dict()}")
    return cone_chk, fin


def check_aut_closed_form(cat: Catalog, amp, cap) -> Check:
    """|Aut_D(x)| closed form == unit count in End_D(x) for every object in range."""
    chk = Check("derived.aut_closed_form")
    for x in D.objects_in_range(cat, amp, cap):
        chk.cases += 1
        a = D.aut_order_derived(x, cat.budget)
        b = D.units_bruteforce(x, cat.budget)
        if a != b:
            chk.fail(f"|Aut {x}|: closed form {a}, brute force {b}")
    return chk


def check_closed_form_oracle(cat: Catalog, amp, cap) -> Check:
    """Orbit-weighted structure constants == Toen's closed formula (independent cross-check)."""
    chk = Check("derived.closed_form_oracle")
    objs = D.objects_in_range(cat, amp, cap)
    for a in objs:
        for b in objs:
            if not D.fits(cap, a, b):
                continue
            got = D.derived_structure(b, a, cat.budget)
            for y in D.candidate_targets(b, a, cat.budget):
                chk.cases += 1
                want = D.closed_form_coefficient(b, a, y, cat.budget)
                if got.get(y, Fraction(0)) != want:
                    chk.fail(f"sub {b}, cone {a}, target {y}: {got.get(y, 0)} != {want}")
    return chk


def derived_suite(cat: Catalog, bound, amp) -> list[Check]:
    limit, pin = check_classical_limit(cat, bound)
    checks = [limit, pin]
    if amp != (0, 0):
        checks.append(check_derived_associativity(cat, amp, bound))
        checks.append(check_derived_grading(cat, amp, bound))
        checks.append(check_aut_closed_form(cat, amp, bound))
        checks.append(check_closed_form_oracle(cat, amp, bound))
    checks.extend(check_arrows(cat))
    return checks


# ---------------------------------------------------------------------------
# cache checks


def check_cache(cache) -> Check:
    """Checksums, key recomputation and payload revalidation for every cache entry."""
    from .cache import CacheCorrupted, cache_key

    chk = Check("cache.revalidation")
    for problem in cache.audit():
        chk.cases += 1
        chk.fail(problem)
    for path in cache.entries():
        try:
            entry = cache.read_entry(path)
        except CacheCorrupted:
            continue
        chk.cases += 1
        payload = entry["payload"]
        try:
            quiver = Quiver.from_json(payload["quiver"])
            key = cache_key(quiver, payload["q"], payload["bound"], entry["kind"], payload.get("extra", ""))
            if key != entry["key"]:
                chk.fail(f"{path}: key recomputation mismatch")
                continue
            cat = Catalog(quiver, payload["q"])
            if entry["kind"] == "catalog":
                for msg in validate_catalog_json(cat, payload["data"]):
                    chk.fail(f"{path}: {msg}")
            elif entry["kind"].startswith("table"):
                from .cli import compute_table

                fresh = compute_table(cat, **payload["args"])
                if fresh != payload["data"]:
                    chk.fail(f"{path}: table differs from recomputation")
        except Exception as exc:  # any payload that fails to revalidate
            chk.fail(f"{path}: {type(exc).__name__}: {exc}")
    return chk


def run_suite(suite: str, cat: Catalog, bound, amp=(0, 0), cache=None) -> Report:
    report = Report(suite)
    if suite in ("hall", "all"):
        report.checks.extend(hall_suite(cat, bound))
    if suite in ("derived", "all"):
        report.checks.extend(derived_suite(cat, bound, tuple(amp)))
    if cache is not None:
        report.checks.append(check_cache(cache))
    return report
