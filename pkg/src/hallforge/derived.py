"""Split complexes over a hereditary path algebra and the derived Hall product.

Every object of the bounded derived category of representations of a
loop-free quiver splits as ``x = sum_i H^i(x)[-i]``; a ``PerfectObject``
stores that cohomology.  Conventions (cohomological):

* ``H^i(x[n]) = H^{i+n}(x)``
* ``Hom_D(M[s], N[t]) = Ext^{t-s}(M, N)``, nonzero only for ``t - s`` in {0, 1}
* ``Hom_D(x, y[j]) = sum_{a,b} Ext^{j+a-b}(H^a x, H^b y)``

Morphisms are coordinate vectors over the components of that sum.  Yoneda
composition of two Ext^1 pieces vanishes, so composition is assembled from
module maps acting on maps and on extension cocycles.

Cones are computed at chain level.  The source is replaced by the
quasi-isomorphic complex built from the two-term blocks
``[H^{a-1}(y) -> E_a]``, where ``E_a`` is the extension of ``H^a(x)`` by
``H^{a-1}(y)`` named by the Ext^1 part of the morphism; the morphism then
becomes an honest chain map and the cohomology of its mapping cone is read
off with exact linear algebra.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import ff
from . import rep as R
from .catalog import Catalog, IsoClass
from .errors import DEFAULT_BUDGET, DimensionMismatch, IntegralityError, QuiverMismatch, check_budget
from .hall import HallElement
from .quiver import vec_add, vec_le

SLOT_SWAPPED = "swapped"
SLOT_LITERAL = "literal"
DEFAULT_SLOT = SLOT_SWAPPED


# ---------------------------------------------------------------------------
# objects


@dataclass(frozen=True)
class PerfectObject:
    """A split complex, given by its nonzero cohomology classes.

    ``support`` is a tuple of ``(degree, IsoClass)`` pairs sorted by degree.
    """

    support: tuple
    catalog: Catalog = field(compare=False, hash=False, repr=False)
    # iso labels repeat across quivers and fields, so equality (and every
    # lru_cache keyed on objects) must also see which catalog they live in
    context: str = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "context", self.catalog.digest())

    @classmethod
    def make(cls, catalog: Catalog, cohomology) -> "PerfectObject":
        items = cohomology.items() if isinstance(cohomology, dict) else cohomology
        merged = {}
        for deg, iso in items:
            if iso is None or iso.is_zero:
                continue
            if int(deg) in merged:
                raise ValueError(f"degree {deg} given twice")
            merged[int(deg)] = iso
        return cls(tuple(sorted(merged.items())), catalog)

    @classmethod
    def zero(cls, catalog) -> "PerfectObject":
        return cls((), catalog)

    @classmethod
    def module(cls, catalog, iso: IsoClass, degree=0) -> "PerfectObject":
        """The class ``iso`` placed in cohomological degree ``degree``."""
        return cls.make(catalog, {degree: iso})

    @property
    def degrees(self) -> tuple:
        return tuple(d for d, _ in self.support)

    @property
    def is_zero(self) -> bool:
        return not self.support

    def H(self, i) -> IsoClass | None:
        for d, iso in self.support:
            if d == i:
                return iso
        return None

    def H_or_zero(self, i) -> IsoClass:
        iso = self.H(i)
        return self.catalog.zero() if iso is None else iso

    def dims(self, i) -> tuple:
        iso = self.H(i)
        return self.catalog.quiver.zero() if iso is None else iso.dims

    def shift(self, n: int) -> "PerfectObject":
        """x[n]: cohomology moves from degree i to degree i - n."""
        return PerfectObject(tuple((d - n, iso) for d, iso in self.support), self.catalog)

    def __getitem__(self, n):
        return self.shift(n)

    def k0_class(self) -> tuple:
        return k0_class(self)

    def amplitude(self):
        return amplitude(self)

    @property
    def label(self) -> str:
        if not self.support:
            return "0"
        if len(self.support) == 1 and self.support[0][0] == 0:
            # modules in degree 0 keep their classical label
            return self.support[0][1].label
        return ", ".join(f"{iso.label}@{d}" for d, iso in self.support)

    @property
    def sort_key(self):
        return (self.k0_class(), tuple((d, iso.sort_key) for d, iso in self.support))

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        return self.label

    def to_json(self) -> dict:
        return {"support": {str(d): iso.label for d, iso in self.support}}

    @classmethod
    def from_json(cls, catalog, data) -> "PerfectObject":
        return cls.make(catalog, {int(d): catalog.parse_label(lbl) for d, lbl in data["support"].items()})

    @classmethod
    def parse(cls, catalog, label: str) -> "PerfectObject":
        """Inverse of ``label``: ``"S1@0, M(1,1)@-1"``; a bare class label means degree 0."""
        label = label.strip()
        if label == "0":
            return cls.zero(catalog)
        coh = {}
        for tok in label.split(", "):
            cls_lbl, at, deg = tok.strip().rpartition("@")
            if not at:
                cls_lbl, deg = deg, "0"
            d = int(deg)
            if d in coh:
                raise ValueError(f"degree {d} given twice in {label!r}")
            coh[d] = catalog.parse_label(cls_lbl)
        return cls.make(catalog, coh)


def k0_class(x: PerfectObject) -> tuple:
    """sum_i (-1)^i dim H^i(x)."""
    out = x.catalog.quiver.zero()
    for d, iso in x.support:
        out = vec_add(out, tuple((-1) ** (d % 2) * v for v in iso.dims))
    return out


def amplitude(x: PerfectObject):
    """(min, max) of the cohomological support, or None for the zero object."""
    if x.is_zero:
        return None
    return (x.degrees[0], x.degrees[-1])


def _same_catalog(x: PerfectObject, y: PerfectObject) -> None:
    if x.catalog is not y.catalog and x.catalog.digest() != y.catalog.digest():
        raise QuiverMismatch("objects over different quivers or fields")


def module_ext(e: int, m: IsoClass, n: IsoClass) -> int:
    """dim Ext^e(M, N) for a hereditary category."""
    if e == 0:
        return R.hom_dim(m.rep, n.rep)
    if e == 1:
        return R.ext1_dim(m.rep, n.rep)
    return 0


def ext_dim(x: PerfectObject, y: PerfectObject, n: int) -> int:
    """dim Hom_D(x, y[n]) = sum_{a,b} dim Ext^{n+a-b}(H^a x, H^b y)."""
    _same_catalog(x, y)
    return sum(module_ext(n + a - b, ma, nb) for a, ma in x.support for b, nb in y.support)


# ---------------------------------------------------------------------------
# graded Hom spaces and composition


@dataclass(frozen=True)
class _Component:
    a: int
    b: int
    e: int
    offset: int
    dim: int
    space: object  # HomSpace (e == 0) or ExtSpace (e == 1)


class GradedHom:
    """Hom_D(x, y[j]) as a direct sum of module Hom / Ext^1 components."""

    def __init__(self, x: PerfectObject, y: PerfectObject, j: int):
        _same_catalog(x, y)
        self.source = x
        self.target = y
        self.degree = j
        comps = []
        off = 0
        for a, ma in x.support:
            for b, nb in y.support:
                e = j + a - b
                if e == 0:
                    sp = R.hom_space_cached(ma.rep, nb.rep)
                elif e == 1:
                    sp = R.ext_space_cached(ma.rep, nb.rep)
                else:
                    continue
                if sp.dim:
                    comps.append(_Component(a, b, e, off, sp.dim, sp))
                    off += sp.dim
        self.components = tuple(comps)
        self.dim = off
        self._index = {(c.a, c.b): c for c in comps}

    def component(self, a, b):
        return self._index.get((a, b))

    def split(self, coords) -> dict:
        coords = np.asarray(coords, dtype=np.int64)
        return {(c.a, c.b): coords[..., c.offset:c.offset + c.dim] for c in self.components}

    def piece(self, coords, a, b):
        """Module map (e=0) or cocycle (e=1) of the (a, b) component, per vertex / per arrow."""
        c = self._index.get((a, b))
        if c is None:
            return None
        sub = np.asarray(coords, dtype=np.int64)[c.offset:c.offset + c.dim]
        if c.e == 0:
            return c.space.element(sub)
        return c.space.cocycle(sub)


@functools.lru_cache(maxsize=100000)
def graded_hom(x: PerfectObject, y: PerfectObject, j: int = 0) -> GradedHom:
    return GradedHom(x, y, j)


def _flat_composite(quiver, c1: _Component, b1, c2: _Component, b2, p):
    """Flattened composite of basis vector b1 of c1 followed by b2 of c2."""
    if c1.e == 0 and c2.e == 0:
        f = c1.space.layout.unflatten(b1)
        g = c2.space.layout.unflatten(b2)
        return np.concatenate([ff.mul_array(gv, fv, p).reshape(-1) for fv, gv in zip(f, g)]) if f else np.zeros(0, np.int64)
    if c1.e == 1 and c2.e == 0:
        xi = c1.space.layout.unflatten(b1)
        g = c2.space.layout.unflatten(b2)
        parts = [ff.mul_array(g[t], xi[k], p).reshape(-1) for k, t in enumerate(quiver.tgt_index)]
    else:
        f = c1.space.layout.unflatten(b1)
        eta = c2.space.layout.unflatten(b2)
        parts = [ff.mul_array(eta[k], f[s], p).reshape(-1) for k, s in enumerate(quiver.src_index)]
    return np.concatenate(parts) if parts else np.zeros(0, np.int64)


@functools.lru_cache(maxsize=100000)
def composition_tensor(x: PerfectObject, y: PerfectObject, z: PerfectObject, j: int, k: int) -> np.ndarray:
    """T[i, l, m]: coordinate m of (basis_i of Hom(y, z[k])) o (basis_l of Hom(x, y[j])).

    The composite lies in Hom(x, z[j+k]).
    """
    h1 = graded_hom(x, y, j)
    h2 = graded_hom(y, z, k)
    h3 = graded_hom(x, z, j + k)
    quiver = x.catalog.quiver
    p = x.catalog.q
    t = np.zeros((h2.dim, h1.dim, h3.dim), dtype=np.int64)
    for c1 in h1.components:
        for c2 in h2.components:
            if c2.a != c1.b or c1.e + c2.e > 1:
                continue
            c3 = h3.component(c1.a, c2.b)
            if c3 is None:
                continue
            basis1 = c1.space.basis
            basis2 = c2.space.basis
            flats = np.array([
                _flat_composite(quiver, c1, b1, c2, b2, p)
                for b2 in basis2 for b1 in basis1
            ], dtype=np.int64).reshape(len(basis2) * len(basis1), -1)
            if c3.e == 0:
                coords = c3.space.coords_flat(flats)
            else:
                coords = c3.space.reduce_flat(flats)
            t[c2.offset:c2.offset + c2.dim, c1.offset:c1.offset + c1.dim, c3.offset:c3.offset + c3.dim] = (
                coords.reshape(c2.dim, c1.dim, c3.dim)
            )
    t %= p
    t.setflags(write=False)
    return t


def compose(second, first, x, y, z, j=0, k=0) -> np.ndarray:
    """Coordinates of second o first, for first in Hom(x, y[j]) and second in Hom(y, z[k])."""
    t = composition_tensor(x, y, z, j, k)
    p = x.catalog.q
    return np.einsum("i,l,ilm->m", np.asarray(second, np.int64), np.asarray(first, np.int64), t) % p


@dataclass(frozen=True, eq=False)
class DerivedMorphism:
    """An element of Hom_D(source, target) given by coordinates.

    ``cocycles`` optionally overrides the cocycle used to realize the Ext^1
    component from degree a, as ``{a: per-arrow matrices}``; it must be
    cohomologous to the coordinate class.
    """

    source: PerfectObject
    target: PerfectObject
    coords: tuple
    cocycles: tuple = ()

    @property
    def space(self) -> GradedHom:
        return graded_hom(self.source, self.target, 0)

    def vector(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=np.int64).reshape(-1)

    def hom_part(self, a):
        """Module map H^a(x) -> H^a(y) as per-vertex matrices (zero if absent)."""
        piece = self.space.piece(self.vector(), a, a)
        if piece is not None:
            return piece
        xa, ya = self.source.H_or_zero(a), self.target.H_or_zero(a)
        return tuple(np.zeros((m, n), dtype=np.int64) for n, m in zip(xa.dims, ya.dims))

    def ext_part(self, a):
        """Cocycle of the Ext^1(H^a x, H^{a-1} y) component, per arrow."""
        override = dict(self.cocycles)
        if a in override:
            return override[a]
        piece = self.space.piece(self.vector(), a, a - 1)
        if piece is not None:
            return piece
        xa, yb = self.source.H_or_zero(a), self.target.H_or_zero(a - 1)
        q = self.source.catalog.quiver
        return tuple(np.zeros((yb.dims[t], xa.dims[s]), dtype=np.int64) for s, t in zip(q.src_index, q.tgt_index))


def enumerate_morphisms(x: PerfectObject, y: PerfectObject, budget=DEFAULT_BUDGET) -> list[DerivedMorphism]:
    """All q^{dim Hom_D(x, y)} morphisms, in base-q counting order of coordinates."""
    h = graded_hom(x, y, 0)
    check_budget("derived Hom enumeration", x.catalog.q ** h.dim, budget)
    return [DerivedMorphism(x, y, tuple(int(v) for v in c)) for c in ff.all_vectors(h.dim, x.catalog.q)]


# ---------------------------------------------------------------------------
# chain-level cones


def _block_matrix(row_dims, col_dims, blocks):
    """Assemble a matrix from {(row_block, col_block): array}."""
    out = np.zeros((sum(row_dims), sum(col_dims)), dtype=np.int64)
    ro = np.concatenate([[0], np.cumsum(row_dims)]).astype(int)
    co = np.concatenate([[0], np.cumsum(col_dims)]).astype(int)
    for (i, j), m in blocks.items():
        out[ro[i]:ro[i + 1], co[j]:co[j + 1]] = m
    return out


def cohomology_rep(term: R.Representation, d_in, d_out) -> R.Representation:
    """ker(d_out) / im(d_in) with its induced arrow maps.

    ``d_in`` and ``d_out`` are per-vertex matrices of representation morphisms
    into and out of ``term``.
    """
    p = term.p
    kernels = []
    for v, n in enumerate(term.dims):
        if n == 0:
            kernels.append(np.zeros((0, 0), dtype=np.int64))
            continue
        dv = d_out[v]
        kernels.append(ff.kernel_array(dv, p).T if dv.shape[0] else np.eye(n, dtype=np.int64))
    krep = R.restrict(term, kernels)
    bases = []
    for v, kb in enumerate(kernels):
        k = kb.shape[1]
        if k == 0 or d_in[v].shape[1] == 0:
            bases.append(np.zeros((0, k), dtype=np.int64))
            continue
        coords = ff.solve_array(kb, d_in[v] % p, p)
        if coords is None:
            raise AssertionError("d o d != 0")
        r, piv = ff.rref_array(coords.T, p)
        bases.append(r[: len(piv)])
    _, quo = R.sub_and_quotient(krep, bases)
    return quo


class ChainRealization:
    """The source of a morphism as a complex with an honest chain map to the target.

    Degree n of the complex is ``E_n + Yb_n`` where ``E_n`` is the extension
    of H^n(x) by H^{n-1}(y) (present when n is in the support of x) and
    ``Yb_n`` is a copy of H^n(y) (present when n + 1 is in the support of x).
    The differential is the inclusion ``Yb_n -> E_{n+1}``.
    """

    def __init__(self, u: DerivedMorphism):
        self.u = u
        x, y = u.source, u.target
        cat = x.catalog
        self.quiver = cat.quiver
        self.p = cat.q
        self.E = {}
        self.Yb = {}
        for a in x.degrees:
            xa = x.H(a).rep
            yb = y.H_or_zero(a - 1).rep
            self.E[a] = R.extension(xa, yb, u.ext_part(a))
            self.Yb[a - 1] = yb
        self.Y = {b: iso.rep for b, iso in y.support}
        self.f = {a: u.hom_part(a) for a in x.degrees}

    def _zero(self):
        return R.Representation.zero(self.quiver, self.p)

    def cone_term(self, n):
        """Pieces [E_{n+1}, Yb_{n+1}, Y_n] of the mapping cone in degree n."""
        z = self._zero()
        return [self.E.get(n + 1, z), self.Yb.get(n + 1, z), self.Y.get(n, z)]

    def cone_differential(self, n):
        """Per-vertex matrices of d: cone^n -> cone^{n+1}, d(x', w) = (-d x', u x')."""
        src = self.cone_term(n)
        dst = self.cone_term(n + 1)
        p = self.p
        mats = []
        for v in range(self.quiver.n):
            cd = [r.dims[v] for r in src]
            rd = [r.dims[v] for r in dst]
            blocks = {}
            # E_{n+1} -> Y_{n+1}: f o projection
            if n + 1 in self.E and cd[0] and rd[2]:
                ydim = self.Yb[n].dims[v]
                fv = self.f[n + 1][v]
                proj = np.zeros((fv.shape[1], cd[0]), dtype=np.int64)
                proj[:, ydim:] = np.eye(fv.shape[1], dtype=np.int64)
                blocks[(2, 0)] = ff.mul_array(fv, proj, p)
            # Yb_{n+1} -> E_{n+2}: minus the inclusion; Yb_{n+1} -> Y_{n+1}: identity
            if cd[1]:
                if rd[0]:
                    inc = np.zeros((rd[0], cd[1]), dtype=np.int64)
                    inc[: cd[1], :] = np.eye(cd[1], dtype=np.int64)
                    blocks[(0, 1)] = (-inc) % p
                if rd[2]:
                    blocks[(2, 1)] = np.eye(cd[1], dtype=np.int64)
            mats.append(_block_matrix(rd, cd, blocks) % p)
        return mats

    def cone_degrees(self):
        degs = set(self.Y) | {a - 1 for a in self.E} | {a - 1 for a in self.Yb}
        return sorted(degs) if degs else []

    def cone_cohomology(self, n) -> R.Representation:
        term = R.direct_sum_all(self.cone_term(n), self.quiver, self.p)
        return cohomology_rep(term, self.cone_differential(n - 1), self.cone_differential(n))


def cone(u: DerivedMorphism) -> PerfectObject:
    """Cofiber of u in split normal form."""
    real = ChainRealization(u)
    cat = u.source.catalog
    coh = {}
    for n in real.cone_degrees():
        h = real.cone_cohomology(n)
        if h.total_dim:
            coh[n] = cat.classify(h)
    return PerfectObject.make(cat, coh)


# ---------------------------------------------------------------------------
# automorphisms and homotopy-group orders


@dataclass(frozen=True)
class PiOrderTable:
    """|pi_i| for i >= 1; unlisted entries are 1."""

    orders: tuple  # ((i, order), ...) with order != 1

    @classmethod
    def make(cls, mapping) -> "PiOrderTable":
        items = mapping.items() if isinstance(mapping, dict) else mapping
        clean = []
        for i, v in items:
            if int(i) < 1:
                raise ValueError("homotopy group index must be >= 1")
            if int(v) < 1:
                raise ValueError(f"|pi_{i}| = {v} is not a positive integer")
            if int(v) != 1:
                clean.append((int(i), int(v)))
        return cls(tuple(sorted(clean)))

    def __getitem__(self, i) -> int:
        return dict(self.orders).get(i, 1)

    def as_dict(self) -> dict:
        return dict(self.orders)

    def is_finite(self) -> bool:
        return all(isinstance(v, int) and v >= 1 for _, v in self.orders)

    def weight(self) -> Fraction:
        """prod_i |pi_i|^{(-1)^i}."""
        w = Fraction(1)
        for i, v in self.orders:
            w *= Fraction(v) if i % 2 == 0 else Fraction(1, v)
        return w


def aut_order_derived(x: PerfectObject, budget=DEFAULT_BUDGET) -> int:
    """|Aut_D(x)| = prod_a |Aut H^a| * q^{sum_a dim Ext^1(H^a, H^{a-1})}."""
    q = x.catalog.q
    order = 1
    for a, iso in x.support:
        order *= R.aut_order(iso.rep, budget)
        below = x.H(a - 1)
        if below is not None:
            order *= q ** R.ext1_dim(iso.rep, below.rep)
    return order


def units_bruteforce(x: PerfectObject, budget=DEFAULT_BUDGET) -> int:
    """Number of units of End_D(x): elements whose left multiplication is bijective."""
    h = graded_hom(x, x, 0)
    q = x.catalog.q
    check_budget("endomorphism enumeration", q**h.dim, budget)
    if h.dim == 0:
        return 1
    t = composition_tensor(x, x, x, 0, 0)
    count = 0
    for chunk in R._chunks(ff.all_vectors(h.dim, q)):
        left = np.einsum("ni,ilm->nlm", chunk, t) % q
        count += int((ff.batch_rank(left, q) == h.dim).sum())
    return count


@functools.lru_cache(maxsize=4096)
def _derived_aut_coords(x: PerfectObject, budget) -> np.ndarray:
    """Coordinates of all units of End_D(x): invertible diagonal parts, arbitrary Ext^1 parts."""
    h = graded_hom(x, x, 0)
    q = x.catalog.q
    check_budget("derived automorphism enumeration", aut_order_derived(x, budget), budget)
    factors = []
    for c in h.components:
        if c.e == 0:
            factors.append((c, np.asarray(R.automorphisms(x.H(c.a).rep, budget))))
        else:
            factors.append((c, ff.all_vectors(c.dim, q)))
    sizes = [f.shape[0] for _, f in factors]
    idx = np.indices(sizes).reshape(len(sizes), -1).T if sizes else np.zeros((1, 0), dtype=np.int64)
    out = np.zeros((idx.shape[0], h.dim), dtype=np.int64)
    for k, (c, f) in enumerate(factors):
        out[:, c.offset:c.offset + c.dim] = f[idx[:, k]]
    out.setflags(write=False)
    return out


def derived_automorphisms(x: PerfectObject, budget=DEFAULT_BUDGET) -> np.ndarray:
    return _derived_aut_coords(x, budget)


def _higher_range(*objs):
    degs = [d for o in objs for d in o.degrees]
    if not degs:
        return 0
    return max(degs) - min(degs) + 2


def pi_orders_object(x: PerfectObject, budget=DEFAULT_BUDGET) -> PiOrderTable:
    """|pi_1| = |Aut_D(x)|, |pi_i| = q^{dim Ext^{1-i}(x, x)} for i >= 2."""
    q = x.catalog.q
    table = {1: aut_order_derived(x, budget)}
    for i in range(2, _higher_range(x) + 2):
        table[i] = q ** ext_dim(x, x, 1 - i)
    return PiOrderTable.make(table)


def _delta_matrix(u_vec, x, y, j):
    """Matrix (rows = domain coords) of (phi, psi) -> psi o u - u o phi on Hom(x,x[j]) + Hom(y,y[j])."""
    p = x.catalog.q
    hx = graded_hom(x, x, j)
    hy = graded_hom(y, y, j)
    hxy = graded_hom(x, y, j)
    if hxy.dim == 0:
        return np.zeros((hx.dim + hy.dim, 0), dtype=np.int64)
    # psi o u: first u in Hom(x, y), second psi in Hom(y, y[j])
    t_left = composition_tensor(x, y, y, 0, j)
    a = np.einsum("l,ilm->im", u_vec, t_left) if hy.dim else np.zeros((0, hxy.dim), np.int64)
    # u o phi: first phi in Hom(x, x[j]), second u in Hom(x, y)
    t_right = composition_tensor(x, x, y, j, 0)
    b = np.einsum("i,ilm->lm", u_vec, t_right) if hx.dim else np.zeros((0, hxy.dim), np.int64)
    return np.concatenate([(-b) % p, a % p], axis=0).astype(np.int64)


def arrow_cohomology_dims(u: DerivedMorphism, j_min=None) -> dict:
    """{j: (dim ker delta_j, dim coker delta_j)} for the arrow endomorphism complex."""
    x, y = u.source, u.target
    p = x.catalog.q
    if j_min is None:
        j_min = -_higher_range(x, y) - 1
    out = {}
    vec = u.vector()
    for j in range(j_min, 1):
        m = _delta_matrix(vec, x, y, j)
        r = ff.rank_array(m, p) if m.size else 0
        out[j] = (m.shape[0] - r, m.shape[1] - r)
    return out


def pi_orders_arrow_raw(u: DerivedMorphism, stabilizer: int) -> PiOrderTable:
    """Homotopy group orders of the arrow moduli at u.

    |pi_1| = |Stab(u)| * q^{dim coker delta_{-1}}; |pi_i| = q^{h_{1-i}} for
    i >= 2 with h_j = dim ker delta_j + dim coker delta_{j-1}.
    """
    q = u.source.catalog.q
    span = _higher_range(u.source, u.target)
    dims = arrow_cohomology_dims(u, -span - 2)
    table = {1: stabilizer * q ** dims[-1][1]}
    for i in range(2, span + 2):
        j = 1 - i
        table[i] = q ** (dims[j][0] + dims[j - 1][1])
    return PiOrderTable.make(table)


# ---------------------------------------------------------------------------
# arrow classes


@dataclass(frozen=True, eq=False)
class ArrowClass:
    """An Aut(x) x Aut(y) orbit of morphisms x -> y."""

    source: PerfectObject
    target: PerfectObject
    representative: DerivedMorphism
    cone: PerfectObject
    orbit_size: int
    stabilizer: int
    pi: PiOrderTable

    def weight(self) -> Fraction:
        """prod_i |pi_i(arrows, u)|^{(-1)^i} |pi_i(objects, target)|^{(-1)^{i+1}}."""
        return self.pi.weight() / pi_orders_object(self.target).weight()


def pi_orders_arrow(u: ArrowClass) -> PiOrderTable:
    return u.pi


def _action_matrices(x, y, budget):
    q = x.catalog.q
    h = graded_hom(x, y, 0)
    ax = derived_automorphisms(x, budget)
    ay = derived_automorphisms(y, budget)
    check_budget("arrow orbit enumeration", ax.shape[0] * ay.shape[0], budget)
    if h.dim == 0:
        return h, None, None, ax.shape[0] * ay.shape[0]
    t_left = composition_tensor(x, y, y, 0, 0)  # [psi, u, out]
    t_right = composition_tensor(x, x, y, 0, 0)  # [u, phi, out]
    left = np.einsum("ni,ilm->nlm", ay, t_left) % q  # u @ left[n]
    right = np.einsum("nl,ilm->nim", ax, t_right) % q  # u @ right[n]
    return h, left, right, ax.shape[0] * ay.shape[0]


def morphism_orbits(x: PerfectObject, y: PerfectObject, budget=DEFAULT_BUDGET):
    """Yield (representative coords, orbit size) for each Aut(x) x Aut(y) orbit on Hom_D(x, y)."""
    q = x.catalog.q
    h, left, right, group = _action_matrices(x, y, budget)
    if h.dim == 0:
        yield np.zeros(0, dtype=np.int64), 1
        return
    check_budget("derived Hom enumeration", q**h.dim, budget)
    seen = np.zeros(q**h.dim, dtype=bool)
    allv = ff.all_vectors(h.dim, q)
    for code in range(q**h.dim):
        if seen[code]:
            continue
        u = allv[code]
        stage = np.unique(ff.encode(np.einsum("l,nlm->nm", u, right) % q, q))
        stage_vecs = allv[stage]
        orbit = np.unique(ff.encode(np.einsum("sl,nlm->snm", stage_vecs, left).reshape(-1, h.dim) % q, q))
        seen[orbit] = True
        yield u, int(orbit.shape[0])


def arrow_classes_to(x: PerfectObject, y: PerfectObject, cone_class: PerfectObject | None = None, budget=DEFAULT_BUDGET) -> list[ArrowClass]:
    """Orbits of morphisms x -> y, optionally filtered by cone class."""
    out = []
    group = aut_order_derived(x, budget) * aut_order_derived(y, budget)
    for u, size in morphism_orbits(x, y, budget):
        mor = DerivedMorphism(x, y, tuple(int(v) for v in u))
        c = cone(mor)
        if cone_class is not None and c != cone_class:
            continue
        if group % size:
            raise IntegralityError(f"orbit of size {size} in a group of order {group}")
        stab = group // size
        out.append(ArrowClass(x, y, mor, c, size, stab, pi_orders_arrow_raw(mor, stab)))
    return out


def candidate_targets(x: PerfectObject, z: PerfectObject, budget=DEFAULT_BUDGET) -> list[PerfectObject]:
    """Objects y that can sit in a triangle x -> y -> z -> x[1].

    Uses dim H^i(y) <= dim H^i(x) + dim H^i(z) vertexwise and k0(y) = k0(x) + k0(z).
    """
    _same_catalog(x, z)
    cat = x.catalog
    degs = sorted(set(x.degrees) | set(z.degrees))
    per_degree = []
    for d in degs:
        bound = vec_add(x.dims(d), z.dims(d))
        per_degree.append(cat.classes_below(bound))
    want = vec_add(k0_class(x), k0_class(z))
    out = []
    for combo in itertools.product(*per_degree):
        y = PerfectObject.make(cat, dict(zip(degs, combo)))
        if k0_class(y) == want:
            out.append(y)
    out.sort()
    return out


def arrow_classes(x_class: PerfectObject, cone_class: PerfectObject, bound=None, budget=DEFAULT_BUDGET) -> dict:
    """{target y: [ArrowClass]} for every arrow u with source x and cone z, grouped by target.

    ``bound``, if given, is a predicate on candidate targets.
    """
    out = {}
    for y in candidate_targets(x_class, cone_class, budget):
        if bound is not None and not bound(y):
            continue
        classes = arrow_classes_to(x_class, y, cone_class, budget)
        if classes:
            out[y] = classes
    return out


# ---------------------------------------------------------------------------
# the derived Hall algebra


class DerivedHallElement(HallElement):
    """A finitely supported Q-valued function on iso classes of split complexes."""

    __slots__ = ()

    @classmethod
    def unit(cls, catalog) -> "DerivedHallElement":
        return cls(catalog, {PerfectObject.zero(catalog): 1})

    @classmethod
    def basis(cls, catalog, obj) -> "DerivedHallElement":
        if isinstance(obj, IsoClass):
            obj = PerfectObject.module(catalog, obj)
        return cls(catalog, {obj: 1})

    @classmethod
    def from_classical(cls, element: HallElement) -> "DerivedHallElement":
        cat = element.catalog
        return cls(cat, {PerfectObject.module(cat, iso): c for iso, c in element.items()})

    def degrees(self) -> set:
        return {k0_class(o) for o in self._terms}

    def _multiply(self, other):
        return derived_product(self, other)

    def __repr__(self):
        return f"DerivedHallElement({self})"

    @classmethod
    def from_json(cls, catalog, data) -> "DerivedHallElement":
        if data.get("q") != catalog.q or data.get("quiver") != catalog.quiver.digest():
            raise QuiverMismatch("element JSON belongs to another quiver or field")
        terms = {}
        for t in data["terms"]:
            obj = PerfectObject.parse(catalog, t["class"])
            terms[obj] = terms.get(obj, Fraction(0)) + Fraction(int(t["num"]), int(t["den"]))
        return cls(catalog, terms)


def _dmemo(catalog):
    memo = getattr(catalog, "_derived_memo", None)
    if memo is None:
        memo = {}
        catalog._derived_memo = memo
    return memo


def arrow_classes_cached(sub: PerfectObject, quotient: PerfectObject, budget=DEFAULT_BUDGET) -> dict:
    """Memoized ``arrow_classes(sub, quotient)``."""
    memo = _dmemo(sub.catalog)
    key = ("arrows", sub, quotient)
    hit = memo.get(key)
    if hit is None:
        hit = memo.setdefault(key, arrow_classes(sub, quotient, budget=budget))
    return hit


def derived_structure(sub: PerfectObject, quotient: PerfectObject, budget=DEFAULT_BUDGET) -> dict:
    """{y: sum of arrow weights over classes u: sub -> y with cone ~ quotient}."""
    memo = _dmemo(sub.catalog)
    key = ("structure", sub, quotient)
    hit = memo.get(key)
    if hit is not None:
        return hit
    out = {}
    for y, classes in arrow_classes_cached(sub, quotient, budget).items():
        w = sum((c.weight() for c in classes), Fraction(0))
        if w:
            out[y] = w
    return memo.setdefault(key, out)


def enumerated_arrows(catalog: Catalog):
    """Every ArrowClass computed so far for this catalog."""
    for key, val in list(_dmemo(catalog).items()):
        if key[0] == "arrows":
            for classes in val.values():
                yield from classes


def derived_product(x_elem: DerivedHallElement, y_elem: DerivedHallElement, bound=None, slot=DEFAULT_SLOT,
                    budget=DEFAULT_BUDGET) -> DerivedHallElement:
    """Bilinear derived Hall product.

    ``slot`` fixes which factor is the source of the arrow: with the default
    ``"swapped"`` the second factor is the source (sub) and the first is the
    cone (quotient), which reproduces the classical product on modules; with
    ``"literal"`` the first factor is the source.  ``bound``, if given, is a
    predicate restricting the output support.
    """
    if x_elem.catalog.digest() != y_elem.catalog.digest():
        raise QuiverMismatch("elements over different quivers or fields")
    if slot not in (SLOT_SWAPPED, SLOT_LITERAL):
        raise ValueError(f"unknown slot convention {slot!r}")
    cat = x_elem.catalog
    out = {}
    for a, ca in x_elem._terms.items():
        for b, cb in y_elem._terms.items():
            sub, quo = (b, a) if slot == SLOT_SWAPPED else (a, b)
            for y, w in derived_structure(sub, quo, budget).items():
                if bound is None or bound(y):
                    out[y] = out.get(y, Fraction(0)) + ca * cb * w
    return DerivedHallElement(cat, out)


def simple_shifted(catalog: Catalog, alpha, s: int) -> PerfectObject:
    """S_i[-s] for alpha = the unit vector of vertex i."""
    alpha = tuple(alpha)
    if sorted(alpha) != [0] * (len(alpha) - 1) + [1] or len(alpha) != catalog.quiver.n:
        raise DimensionMismatch(f"{alpha} is not a simple class")
    v = catalog.quiver.vertices[alpha.index(1)]
    return PerfectObject.module(catalog, catalog.simple(v), s)


def lusztig_monomial(catalog: Catalog, seq, slot=DEFAULT_SLOT, budget=DEFAULT_BUDGET) -> DerivedHallElement:
    """1_{alpha_1, s_1} * ... * 1_{alpha_m, s_m}, where 1_{alpha, s} is the class of S_i[-s]."""
    result = DerivedHallElement.unit(catalog)
    for alpha, s in seq:
        factor = DerivedHallElement.basis(catalog, simple_shifted(catalog, alpha, s))
        result = derived_product(result, factor, slot=slot, budget=budget)
    return result


# ---------------------------------------------------------------------------
# independent closed-form oracle


def cone_count(x: PerfectObject, y: PerfectObject, z: PerfectObject, budget=DEFAULT_BUDGET) -> int:
    """|{u in Hom_D(x, y) : cone(u) ~ z}|, one cone per morphism (no orbit reduction)."""
    return sum(1 for u in enumerate_morphisms(x, y, budget) if cone(u) == z)


def closed_form_coefficient(sub: PerfectObject, quotient: PerfectObject, y: PerfectObject, budget=DEFAULT_BUDGET) -> Fraction:
    """Toen's closed formula for the derived Hall number, used only as a cross-check.

    |Hom(x, y)_z| / |Aut x| * prod_{i>0} |Hom(x[i], y)|^{(-1)^i} / |Hom(x[i], x)|^{(-1)^i},
    with x the source and z the cone.
    """
    q = sub.catalog.q
    val = Fraction(cone_count(sub, y, quotient, budget), aut_order_derived(sub, budget))
    for i in range(1, _higher_range(sub, y) + 2):
        e = ext_dim(sub, y, -i) - ext_dim(sub, sub, -i)
        val *= Fraction(q) ** (e if i % 2 == 0 else -e)
    return val


# ---------------------------------------------------------------------------
# enumeration helpers


def objects_in_range(catalog: Catalog, amp, cap) -> list[PerfectObject]:
    """Every object with support in [amp[0], amp[1]] and each H^i of dims <= cap, sorted."""
    lo, hi = amp
    degs = list(range(lo, hi + 1))
    classes = catalog.classes_below(cap)
    out = [PerfectObject.make(catalog, dict(zip(degs, combo))) for combo in itertools.product(classes, repeat=len(degs))]
    out.sort()
    return out


def fits(cap, *objs) -> bool:
    """Whether the summed per-degree dims of ``objs`` stay <= cap at every vertex."""
    degs = {d for o in objs for d in o.degrees}
    for d in degs:
        total = None
        for o in objs:
            total = o.dims(d) if total is None else vec_add(total, o.dims(d))
        if not vec_le(total, cap):
            return False
    return True
