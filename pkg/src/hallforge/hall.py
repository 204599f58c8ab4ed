"""Ringel-Hall numbers and the dimension-graded Hall algebra.

Hall numbers are computed two ways: by counting subrepresentations
(``hall_number_subcount``) and by counting short exact sequences divided by
automorphism orders (``hall_number_extcount``).  Convention: ``g^R_{M,N}``
counts subobjects N' of R with N' ~ N and R/N' ~ M, and
``[M] * [N] = sum_R g^R_{M,N} [R]``.
"""
from __future__ import annotations

import csv
import io
from fractions import Fraction

import numpy as np

from . import ff
from . import rep as R
from .catalog import Catalog, IsoClass
from .errors import DEFAULT_BUDGET, IntegralityError, QuiverMismatch, check_budget
from .quiver import vec_add, vec_sub


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class HallElement:
    """A finite Q-linear combination of iso classes; immutable."""

    __slots__ = ("catalog", "_terms")

    def __init__(self, catalog: Catalog, terms=None):
        self.catalog = catalog
        clean = {}
        for cls, c in (terms or {}).items():
            c = _as_fraction(c)
            if c:
                clean[cls] = clean.get(cls, Fraction(0)) + c
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def basis(cls, catalog, iso: IsoClass) -> "HallElement":
        return cls(catalog, {iso: 1})

    @classmethod
    def unit(cls, catalog) -> "HallElement":
        return cls(catalog, {catalog.zero(): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(class, coefficient) pairs ordered by (dims, catalog order)."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key)

    def coefficient(self, iso: IsoClass) -> Fraction:
        return self._terms.get(iso, Fraction(0))

    def degrees(self) -> set:
        return {c.dims for c in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self):
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("element is not homogeneous of a single degree")
        return next(iter(degs))

    def _check(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.catalog.digest() != self.catalog.digest():
            raise QuiverMismatch("Hall elements over different quivers or fields")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return type(self)(self.catalog, out)

    def __neg__(self):
        return type(self)(self.catalog, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return type(self)(self.catalog, {k: v * c for k, v in self._terms.items()})
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return other * self
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._multiply(other)

    def _multiply(self, other):
        return product(self, other)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.catalog.digest() == other.catalog.digest() and self._terms == other._terms

    def __hash__(self):
        return hash((self.catalog.digest(), frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for cls, c in self.items():
            parts.append(f"[{cls.label}]" if c == 1 else f"{c}*[{cls.label}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"HallElement({self})"

    def to_json(self) -> dict:
        return {
            "q": self.catalog.q,
            "quiver": self.catalog.quiver.digest(),
            "terms": [
                {"class": cls.label, "num": str(c.numerator), "den": str(c.denominator)}
                for cls, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, catalog, data) -> "HallElement":
        if data.get("q") != catalog.q or data.get("quiver") != catalog.quiver.digest():
            raise QuiverMismatch("Hall element JSON belongs to another quiver or field")
        terms = {}
        for t in data["terms"]:
            iso = catalog.parse_label(t["class"])
            terms[iso] = terms.get(iso, Fraction(0)) + Fraction(int(t["num"]), int(t["den"]))
        return cls(catalog, terms)


# ---------------------------------------------------------------------------
# Hall numbers


def hall_number_subcount(catalog: Catalog, r: IsoClass, m: IsoClass, n: IsoClass, budget=None) -> int:
    """Number of subrepresentations N' of R with N' ~ N and R/N' ~ M."""
    budget = catalog.budget if budget is None else budget
    if r.dims != vec_add(m.dims, n.dims):
        return 0
    count = 0
    for s in R.iter_subrepresentations(r.rep, n.dims, budget):
        if catalog.classify(s.sub) == n and catalog.classify(s.quotient) == m:
            count += 1
    return count


def exact_pair_count(r: IsoClass, m: IsoClass, n: IsoClass, budget=DEFAULT_BUDGET) -> int:
    """Number of pairs (i: N -> R injective, p: R -> M surjective) with ker p = im i."""
    rr, mm, nn = r.rep, m.rep, n.rep
    if r.dims != vec_add(m.dims, n.dims):
        return 0
    p = rr.p
    h_in = R.hom_space_cached(nn, rr)
    h_out = R.hom_space_cached(rr, mm)
    check_budget("injection enumeration", p**h_in.dim, budget)
    combos = ff.all_vectors(h_in.dim, p)
    flat_in = h_in.elements_flat(combos)
    injections = flat_in[R.injective_mask(h_in, flat_in)]
    by_image: dict[bytes, int] = {}
    total = 0
    for row in injections:
        mats = h_in.layout.unflatten(row)
        key = b"".join(ff.rref_array(x.T, p)[0].tobytes() if x.size else b"|" for x in mats)
        if key not in by_image:
            by_image[key] = _surjections_killing(h_out, mats, p, budget)
        total += by_image[key]
    return total


def _surjections_killing(h_out: R.HomSpace, inj, p, budget) -> int:
    """Surjections R -> M vanishing on the image of ``inj``.

    By dimension count such a surjection has kernel exactly im(inj).
    """
    if h_out.dim == 0:
        dummy = np.zeros((1, h_out.layout.length), dtype=np.int64)
        return int(R.surjective_mask(h_out, dummy).sum())
    comps = []
    for b in h_out.basis:
        mats = h_out.layout.unflatten(b)
        comps.append(np.concatenate([ff.mul_array(x, y, p).reshape(-1) for x, y in zip(mats, inj)]))
    cmat = np.array(comps, dtype=np.int64).reshape(h_out.dim, -1)
    ker = ff.kernel_array(cmat.T, p) if cmat.shape[1] else np.eye(h_out.dim, dtype=np.int64)
    check_budget("surjection enumeration", p ** ker.shape[0], budget)
    coords = ff.all_vectors(ker.shape[0], p) @ ker % p
    flat = h_out.elements_flat(coords)
    return int(R.surjective_mask(h_out, flat).sum())


def hall_number_extcount(catalog: Catalog, r: IsoClass, m: IsoClass, n: IsoClass, budget=None, check=True) -> Fraction:
    """e^R_{M,N} / (a_M a_N), asserted integral and (by default) equal to the subobject count."""
    budget = catalog.budget if budget is None else budget
    if r.dims != vec_add(m.dims, n.dims):
        return Fraction(0)
    e = exact_pair_count(r, m, n, budget)
    g = Fraction(e, R.aut_order(m.rep, budget) * R.aut_order(n.rep, budget))
    if g.denominator != 1:
        raise IntegralityError(f"e/(a_M a_N) = {g} for R={r}, M={m}, N={n}")
    if check:
        sub = hall_number_subcount(catalog, r, m, n, budget)
        if sub != g:
            raise IntegralityError(f"Hall number mismatch for R={r}, M={m}, N={n}: {g} vs {sub}")
    return g


# ---------------------------------------------------------------------------
# the algebra


class _Memo:
    """Per-catalog write-once tables of Hall numbers and basis products."""

    def __init__(self):
        self.g: dict = {}
        self.prod: dict = {}


def _memo(catalog: Catalog) -> _Memo:
    memo = getattr(catalog, "_hall_memo", None)
    if memo is None:
        memo = _Memo()
        catalog._hall_memo = memo
    return memo


def hall_number(catalog: Catalog, r: IsoClass, m: IsoClass, n: IsoClass) -> int:
    """Memoized g^R_{M,N} (subobject count)."""
    memo = _memo(catalog)
    key = (r, m, n)
    hit = memo.g.get(key)
    if hit is None:
        hit = memo.g.setdefault(key, hall_number_subcount(catalog, r, m, n))
    return hit


def basis_product(catalog: Catalog, m: IsoClass, n: IsoClass) -> dict:
    """{R: g^R_{M,N}} over all classes R of degree dim M + dim N (zero entries dropped)."""
    memo = _memo(catalog)
    key = (m, n)
    hit = memo.prod.get(key)
    if hit is not None:
        return hit
    if m.is_zero:
        out = {n: 1}
    elif n.is_zero:
        out = {m: 1}
    else:
        out = {}
        for r in catalog.iso_classes(vec_add(m.dims, n.dims)):
            g = _count_by_class(catalog, r, m, n)
            if g:
                out[r] = g
    return memo.prod.setdefault(key, out)


def _count_by_class(catalog, r, m, n) -> int:
    memo = _memo(catalog)
    key = (r, m, n)
    if key in memo.g:
        return memo.g[key]
    # one subspace scan of R fills g^R_{M', N} for every quotient class M'
    counts: dict = {}
    for s in R.iter_subrepresentations(r.rep, n.dims, catalog.budget):
        if catalog.classify(s.sub) == n:
            mq = catalog.classify(s.quotient)
            counts[mq] = counts.get(mq, 0) + 1
    for mq in catalog.iso_classes(vec_sub(r.dims, n.dims)):
        memo.g.setdefault((r, mq, n), counts.get(mq, 0))
    return memo.g[key]


def product(x: HallElement, y: HallElement) -> HallElement:
    """Bilinear Hall product."""
    if x.catalog.digest() != y.catalog.digest():
        raise QuiverMismatch("Hall elements over different quivers or fields")
    cat = x.catalog
    out: dict = {}
    for m, a in x._terms.items():
        for n, b in y._terms.items():
            for r, g in basis_product(cat, m, n).items():
                out[r] = out.get(r, Fraction(0)) + a * b * g
    return HallElement(cat, out)


def flag_count(catalog: Catalog, top: R.Representation, classes, budget=None) -> int:
    """Flags top = M_1 > M_2 > ... > M_{r+1} = 0 with M_i/M_{i+1} ~ classes[i]."""
    budget = catalog.budget if budget is None else budget
    if not classes:
        return int(top.total_dim == 0)
    first, rest = classes[0], classes[1:]
    if top.dims != vec_add(first.dims, _total_dims(catalog, rest)):
        return 0
    if not rest:
        return int(catalog.classify(top) == first)
    count = 0
    for s in R.iter_subrepresentations(top, vec_sub(top.dims, first.dims), budget):
        if catalog.classify(s.quotient) == first:
            count += flag_count(catalog, s.sub, rest, budget)
    return count


def _total_dims(catalog, classes):
    d = catalog.quiver.zero()
    for c in classes:
        d = vec_add(d, c.dims)
    return d


def multi_product_filtration(catalog: Catalog, classes, check=True) -> HallElement:
    """sum_M |flags of M with subquotients N_1, ..., N_r| [M], N_1 on top.

    With ``check`` the result is compared with the right-nested binary product.
    """
    classes = list(classes)
    if not classes:
        raise ValueError("need at least one class")
    d = _total_dims(catalog, classes)
    out = {}
    for mcls in catalog.iso_classes(d):
        c = flag_count(catalog, mcls.rep, classes)
        if c:
            out[mcls] = c
    result = HallElement(catalog, out)
    if check:
        folded = HallElement.basis(catalog, classes[-1])
        for c in reversed(classes[:-1]):
            folded = HallElement.basis(catalog, c) * folded
        if folded != result:
            raise IntegralityError(f"flag count {result} differs from iterated product {folded}")
    return result


def structure_constants(catalog: Catalog, degree_m, degree_n, include_zero=True) -> list[tuple[IsoClass, IsoClass, IsoClass, int]]:
    """(M, N, R, g^R_{M,N}) for every class M of degree_m, N of degree_n, R of the sum."""
    rows = []
    for m in catalog.iso_classes(degree_m):
        for n in catalog.iso_classes(degree_n):
            prod = basis_product(catalog, m, n)
            for r in catalog.iso_classes(vec_add(m.dims, n.dims)):
                g = prod.get(r, 0)
                if g or include_zero:
                    rows.append((m, n, r, g))
    return rows


def structure_constants_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "n", "r", "g"])
    for m, n, r, g in rows:
        w.writerow([m.label, n.label, r.label, g])
    return buf.getvalue()


def ext1_dim_bruteforce(catalog: Catalog, m: IsoClass, n: IsoClass, budget=None) -> int:
    """dim Ext^1(M, N) from counting middle terms, without the Euler form.

    Uses |Ext^1(M,N)| = sum_E |{exact N -> E -> M}| / |Aut E| * |Hom(M,N)|:
    each extension class is the orbit of Aut(E) on exact pairs, with
    stabilizer of size |Hom(M,N)|.
    """
    budget = catalog.budget if budget is None else budget
    total = Fraction(0)
    for e in catalog.iso_classes(vec_add(m.dims, n.dims)):
        pairs = exact_pair_count(e, m, n, budget)
        if pairs:
            total += Fraction(pairs, R.aut_order(e.rep, budget))
    size = total * catalog.q ** R.hom_dim(m.rep, n.rep)
    if size.denominator != 1:
        raise IntegralityError(f"|Ext^1| came out as {size}")
    size = int(size)
    k = 0
    while catalog.q**k < size:
        k += 1
    if catalog.q**k != size:
        raise IntegralityError(f"|Ext^1| = {size} is not a power of q")
    return k
