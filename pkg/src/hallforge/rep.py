"""Representations of a quiver over F_p and the linear algebra around them.

Matrices act on column vectors: the map of an arrow ``a: i -> j`` has shape
``dims[j] x dims[i]``.  A morphism ``m -> n`` is a tuple of per-vertex
matrices ``phi[v]`` of shape ``n.dims[v] x m.dims[v]`` with
``phi[t(a)] @ m_a == n_a @ phi[s(a)]`` for every arrow.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from . import ff
from .errors import DEFAULT_BUDGET, DimensionMismatch, FieldMismatch, QuiverMismatch, check_budget
from .ff import Matrix, as_field
from .quiver import Quiver, check_vector, euler_form


class Representation:
    """A finite-dimensional representation; immutable and hashable by content."""

    __slots__ = ("quiver", "field", "dims", "maps", "_hash")

    def __init__(self, quiver: Quiver, field, dims, maps=None):
        self.quiver = quiver
        self.field = as_field(field)
        self.dims = check_vector(quiver, dims, nonnegative=True)
        p = self.field.p
        if maps is None:
            maps = {}
        if isinstance(maps, dict):
            unknown = set(maps) - {a.name for a in quiver.arrows}
            if unknown:
                raise DimensionMismatch(f"maps given for unknown arrows {sorted(unknown)}")
            seq = [maps.get(a.name) for a in quiver.arrows]
        else:
            seq = list(maps)
            if len(seq) != len(quiver.arrows):
                raise DimensionMismatch(f"expected {len(quiver.arrows)} arrow maps, got {len(seq)}")
        arrays = []
        for a, s, t, m in zip(quiver.arrows, quiver.src_index, quiver.tgt_index, seq):
            shape = (self.dims[t], self.dims[s])
            if m is None:
                arr = np.zeros(shape, dtype=np.int64)
            else:
                if isinstance(m, Matrix):
                    if m.field != self.field:
                        raise FieldMismatch(f"arrow {a.name}: {m.field!r} vs {self.field!r}")
                    m = m.a
                arr = np.array(m, dtype=np.int64)
                if arr.size == 0:
                    arr = arr.reshape(shape)
                if arr.shape != shape:
                    raise DimensionMismatch(f"arrow {a.name}: map has shape {arr.shape}, expected {shape}")
            arr = np.ascontiguousarray(arr % p)
            arr.setflags(write=False)
            arrays.append(arr)
        self.maps = tuple(arrays)
        self._hash = None

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def map(self, name) -> Matrix:
        return Matrix(self.field, self.maps[self.quiver.arrow_index(name)])

    def key(self):
        return (self.field.p, self.dims, tuple(m.tobytes() for m in self.maps))

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.quiver == other.quiver
            and self.key() == other.key()
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        maps = {a.name: m.tolist() for a, m in zip(self.quiver.arrows, self.maps)}
        return f"Representation(dims={self.dims}, maps={maps}, {self.field!r})"

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "maps": {a.name: m.tolist() for a, m in zip(self.quiver.arrows, self.maps)}}

    @classmethod
    def from_json(cls, quiver, field, data) -> "Representation":
        return cls(quiver, field, data["dims"], data.get("maps", {}))

    @classmethod
    def zero(cls, quiver, field):
        return cls(quiver, field, quiver.zero())

    @classmethod
    def simple(cls, quiver, field, vertex):
        return cls(quiver, field, quiver.unit(vertex))

    def change_basis(self, mats) -> "Representation":
        """The isomorphic representation g . self with g[v] invertible."""
        p = self.p
        inv = [ff.inverse_array(np.array(g, dtype=np.int64), p) if d else np.zeros((0, 0), dtype=np.int64)
               for g, d in zip(mats, self.dims)]
        new = []
        for m, s, t in zip(self.maps, self.quiver.src_index, self.quiver.tgt_index):
            g = np.array(mats[t], dtype=np.int64).reshape(self.dims[t], self.dims[t])
            new.append(ff.mul_array(ff.mul_array(g, m, p), inv[s], p))
        return Representation(self.quiver, self.field, self.dims, new)


def _check_pair(m: Representation, n: Representation) -> None:
    if m.quiver != n.quiver:
        raise QuiverMismatch("representations live on different quivers")
    if m.field != n.field:
        raise FieldMismatch(f"{m.field!r} vs {n.field!r}")


# ---------------------------------------------------------------------------
# Hom and Ext^1


class HomLayout:
    """Flattened coordinates for tuples of per-vertex n_v x m_v matrices."""

    def __init__(self, mdims, ndims):
        self.mdims = mdims
        self.ndims = ndims
        self.offsets = []
        off = 0
        for a, b in zip(mdims, ndims):
            self.offsets.append(off)
            off += a * b
        self.length = off

    def unflatten(self, vec) -> tuple[np.ndarray, ...]:
        return tuple(
            np.asarray(vec[o:o + a * b], dtype=np.int64).reshape(b, a)
            for o, a, b in zip(self.offsets, self.mdims, self.ndims)
        )

    def flatten(self, mats) -> np.ndarray:
        if self.length == 0:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([np.asarray(x, dtype=np.int64).reshape(-1) for x in mats])

    def block(self, flat: np.ndarray, v: int) -> np.ndarray:
        """Per-vertex matrices of a (N, length) batch as an (N, n_v, m_v) stack."""
        o = self.offsets[v]
        a, b = self.mdims[v], self.ndims[v]
        return flat[:, o:o + a * b].reshape(-1, b, a)


class ArrowLayout:
    """Flattened coordinates for tuples of per-arrow n_t(a) x m_s(a) matrices."""

    def __init__(self, quiver, mdims, ndims):
        self.shapes = [(ndims[t], mdims[s]) for s, t in zip(quiver.src_index, quiver.tgt_index)]
        self.offsets = []
        off = 0
        for r, c in self.shapes:
            self.offsets.append(off)
            off += r * c
        self.length = off

    def unflatten(self, vec):
        return tuple(
            np.asarray(vec[o:o + r * c], dtype=np.int64).reshape(r, c)
            for o, (r, c) in zip(self.offsets, self.shapes)
        )

    def flatten(self, mats):
        if self.length == 0:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([np.asarray(x, dtype=np.int64).reshape(-1) for x in mats])


def intertwiner_system(m: Representation, n: Representation) -> np.ndarray:
    """Matrix of phi -> (phi_t m_a - n_a phi_s)_a from vertex to arrow layout."""
    q = m.quiver
    p = m.p
    hl = HomLayout(m.dims, n.dims)
    al = ArrowLayout(q, m.dims, n.dims)
    d = np.zeros((al.length, hl.length), dtype=np.int64)
    for k, (s, t) in enumerate(zip(q.src_index, q.tgt_index)):
        rows = slice(al.offsets[k], al.offsets[k] + n.dims[t] * m.dims[s])
        if n.dims[t] * m.dims[s] == 0:
            continue
        # row-major vec(A X B) = (A kron B^T) vec(X)
        if n.dims[t] * m.dims[t]:
            ct = slice(hl.offsets[t], hl.offsets[t] + n.dims[t] * m.dims[t])
            d[rows, ct] += np.kron(np.eye(n.dims[t], dtype=np.int64), m.maps[k].T)
        if n.dims[s] * m.dims[s]:
            cs = slice(hl.offsets[s], hl.offsets[s] + n.dims[s] * m.dims[s])
            d[rows, cs] -= np.kron(n.maps[k], np.eye(m.dims[s], dtype=np.int64))
    return d % p


class HomSpace:
    """Basis of Hom(m, n) with a coordinate map."""

    def __init__(self, m: Representation, n: Representation):
        _check_pair(m, n)
        self.source = m
        self.target = n
        self.layout = HomLayout(m.dims, n.dims)
        p = m.p
        self.system = intertwiner_system(m, n)
        self.basis = ff.kernel_array(self.system, p)  # (k, L)
        self.dim = self.basis.shape[0]
        _, piv = ff.rref_array(self.basis, p) if self.dim else (None, [])
        self._piv = piv
        self._inv = ff.inverse_array(self.basis[:, piv], p) if self.dim else None

    def element(self, coords) -> tuple[np.ndarray, ...]:
        vec = np.asarray(coords, dtype=np.int64) @ self.basis % self.source.p if self.dim else np.zeros(self.layout.length, dtype=np.int64)
        return self.layout.unflatten(vec)

    def elements_flat(self, coords: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return np.zeros((coords.shape[0], self.layout.length), dtype=np.int64)
        return coords @ self.basis % self.source.p

    def coords(self, mats) -> np.ndarray:
        """Coordinates of a morphism given as per-vertex matrices."""
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        vec = self.layout.flatten(mats) % self.source.p
        return vec[self._piv] @ self._inv % self.source.p

    def coords_flat(self, flat: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return np.zeros((flat.shape[0], 0), dtype=np.int64)
        return flat[:, self._piv] @ self._inv % self.source.p


class ExtSpace:
    """Ext^1(m, n) as the cokernel of the intertwiner system.

    A class is represented by a cocycle: one n_t(a) x m_s(a) matrix per arrow;
    the extension it defines has vertex spaces n_v + m_v and arrow maps
    [[n_a, xi_a], [0, m_a]].  The basis cocycles are standard unit vectors
    complementary to the coboundaries.
    """

    def __init__(self, m: Representation, n: Representation):
        _check_pair(m, n)
        self.source = m
        self.target = n
        q = m.quiver
        p = m.p
        self.layout = ArrowLayout(q, m.dims, n.dims)
        system = intertwiner_system(m, n)
        if system.size:
            r, piv = ff.rref_array(system.T, p)
            self._img = r[: len(piv)]
        else:
            piv = []
            self._img = np.zeros((0, self.layout.length), dtype=np.int64)
        self._img_piv = piv
        pset = set(piv)
        self._free = [c for c in range(self.layout.length) if c not in pset]
        self.dim = len(self._free)
        self.basis = np.zeros((self.dim, self.layout.length), dtype=np.int64)
        for k, c in enumerate(self._free):
            self.basis[k, c] = 1

    def reduce_flat(self, flat: np.ndarray) -> np.ndarray:
        """Coordinates of a (N, L) batch of cocycles."""
        p = self.source.p
        if self.dim == 0:
            return np.zeros((flat.shape[0], 0), dtype=np.int64)
        flat = flat % p
        if self._img_piv:
            flat = (flat - flat[:, self._img_piv] @ self._img) % p
        return flat[:, self._free]

    def coords(self, cocycle) -> np.ndarray:
        return self.reduce_flat(self.layout.flatten(cocycle)[None, :])[0]

    def cocycle(self, coords) -> tuple[np.ndarray, ...]:
        vec = np.asarray(coords, dtype=np.int64) @ self.basis % self.source.p if self.dim else np.zeros(self.layout.length, dtype=np.int64)
        return self.layout.unflatten(vec)

    def middle_term(self, coords) -> Representation:
        return extension(self.source, self.target, self.cocycle(coords))


def extension(m: Representation, n: Representation, cocycle) -> Representation:
    """Middle term of 0 -> n -> E -> m -> 0 for the given cocycle."""
    q = m.quiver
    dims = tuple(a + b for a, b in zip(n.dims, m.dims))
    maps = []
    for k, (s, t) in enumerate(zip(q.src_index, q.tgt_index)):
        e = np.zeros((dims[t], dims[s]), dtype=np.int64)
        e[: n.dims[t], : n.dims[s]] = n.maps[k]
        e[: n.dims[t], n.dims[s]:] = cocycle[k]
        e[n.dims[t]:, n.dims[s]:] = m.maps[k]
        maps.append(e)
    return Representation(q, m.field, dims, maps)


@functools.lru_cache(maxsize=20000)
def hom_space_cached(m: Representation, n: Representation) -> HomSpace:
    return HomSpace(m, n)


@functools.lru_cache(maxsize=20000)
def ext_space_cached(m: Representation, n: Representation) -> ExtSpace:
    return ExtSpace(m, n)


def hom_space(m: Representation, n: Representation) -> list[tuple[Matrix, ...]]:
    """Basis of Hom(m, n) as tuples of per-vertex matrices."""
    hs = hom_space_cached(m, n)
    return [tuple(Matrix(m.field, x) for x in hs.layout.unflatten(row)) for row in hs.basis]


def hom_dim(m: Representation, n: Representation) -> int:
    return hom_space_cached(m, n).dim


def ext1_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1(m, n) = dim Hom(m, n) - <dim m, dim n> (hereditary)."""
    _check_pair(m, n)
    return hom_dim(m, n) - euler_form(m.quiver, m.dims, n.dims)


# ---------------------------------------------------------------------------
# enumeration over a Hom space


def _combos(k: int, p: int, budget, what):
    check_budget(what, p**k, budget)
    return ff.all_vectors(k, p)


def _chunks(arr, size=1 << 15):
    for i in range(0, arr.shape[0], size):
        yield arr[i:i + size]


def invertible_mask(hs: HomSpace, flat: np.ndarray) -> np.ndarray:
    """Which rows of a (N, L) batch of morphisms are isomorphisms."""
    p = hs.source.p
    ok = np.ones(flat.shape[0], dtype=bool)
    for v, (a, b) in enumerate(zip(hs.layout.mdims, hs.layout.ndims)):
        if a != b:
            ok[:] = False
            return ok
        if a == 0:
            continue
        ok &= ff.batch_rank(hs.layout.block(flat, v), p) == a
    return ok


def injective_mask(hs: HomSpace, flat: np.ndarray) -> np.ndarray:
    p = hs.source.p
    ok = np.ones(flat.shape[0], dtype=bool)
    for v, a in enumerate(hs.layout.mdims):
        if a:
            ok &= ff.batch_rank(hs.layout.block(flat, v), p) == a
    return ok


def surjective_mask(hs: HomSpace, flat: np.ndarray) -> np.ndarray:
    p = hs.source.p
    ok = np.ones(flat.shape[0], dtype=bool)
    for v, b in enumerate(hs.layout.ndims):
        if b:
            ok &= ff.batch_rank(hs.layout.block(flat, v), p) == b
    return ok


@functools.lru_cache(maxsize=4096)
def _automorphism_coords(m: Representation, budget) -> np.ndarray:
    hs = hom_space_cached(m, m)
    combos = _combos(hs.dim, m.p, budget, "automorphism enumeration")
    keep = [c[invertible_mask(hs, hs.elements_flat(c))] for c in _chunks(combos)]
    out = np.concatenate(keep) if keep else np.zeros((0, hs.dim), dtype=np.int64)
    out.setflags(write=False)
    return out


def automorphisms(m: Representation, budget=DEFAULT_BUDGET) -> np.ndarray:
    """Coordinates (in the End(m) basis) of every automorphism of m."""
    return _automorphism_coords(m, budget)


def aut_order(m: Representation, budget=DEFAULT_BUDGET) -> int:
    """|Aut(m)| by testing all q^{dim End m} endomorphisms."""
    if m.total_dim == 0:
        return 1
    return int(automorphisms(m, budget).shape[0])


def direct_sum(m: Representation, n: Representation) -> Representation:
    _check_pair(m, n)
    q = m.quiver
    dims = tuple(a + b for a, b in zip(m.dims, n.dims))
    maps = []
    for k, (s, t) in enumerate(zip(q.src_index, q.tgt_index)):
        e = np.zeros((dims[t], dims[s]), dtype=np.int64)
        e[: m.dims[t], : m.dims[s]] = m.maps[k]
        e[m.dims[t]:, m.dims[s]:] = n.maps[k]
        maps.append(e)
    return Representation(q, m.field, dims, maps)


def direct_sum_all(reps, quiver, field) -> Representation:
    out = Representation.zero(quiver, field)
    for r in reps:
        out = direct_sum(out, r)
    return out


# ---------------------------------------------------------------------------
# subrepresentations


def restrict(r: Representation, bases) -> Representation:
    """Subrepresentation spanned by per-vertex column bases (invariant subspaces)."""
    q = r.quiver
    p = r.p
    dims = tuple(b.shape[1] for b in bases)
    maps = []
    for k, (s, t) in enumerate(zip(q.src_index, q.tgt_index)):
        img = ff.mul_array(r.maps[k], bases[s], p)
        if dims[t] == 0:
            maps.append(np.zeros((0, dims[s]), dtype=np.int64))
            continue
        x = ff.solve_array(bases[t], img, p)
        if x is None:
            raise ValueError("subspaces are not invariant")
        maps.append(x)
    return Representation(q, r.field, dims, maps)


@dataclass(frozen=True)
class Subrepresentation:
    """A subrepresentation U of r with induced sub and quotient representations.

    ``bases[v]`` is the RREF basis of U_v, one row per basis vector.
    """

    bases: tuple
    sub: Representation
    quotient: Representation


def _residual(rref_rows, piv, vecs, p):
    """vecs (columns) minus their projection onto the RREF row space."""
    if not piv:
        return vecs % p
    return (vecs - rref_rows.T @ vecs[piv, :]) % p


def _sub_and_quotient(r: Representation, bases):
    q = r.quiver
    p = r.p
    pivs = []
    for b in bases:
        pivs.append([int(np.nonzero(row)[0][0]) for row in b])
    nonpiv = [[c for c in range(d) if c not in set(pv)] for d, pv in zip(r.dims, pivs)]
    sub_maps = []
    quo_maps = []
    for k, (s, t) in enumerate(zip(q.src_index, q.tgt_index)):
        img = ff.mul_array(r.maps[k], bases[s].T, p)  # r_t x k_s
        sub_maps.append(img[pivs[t], :] % p)
        comp = np.zeros((r.dims[s], len(nonpiv[s])), dtype=np.int64)
        for j, c in enumerate(nonpiv[s]):
            comp[c, j] = 1
        qimg = _residual(bases[t], pivs[t], ff.mul_array(r.maps[k], comp, p), p)
        quo_maps.append(qimg[nonpiv[t], :] % p)
    sub = Representation(q, r.field, tuple(b.shape[0] for b in bases), sub_maps)
    quo = Representation(q, r.field, tuple(len(c) for c in nonpiv), quo_maps)
    return sub, quo


def sub_and_quotient(r: Representation, bases):
    """Induced (sub, quotient) for an invariant subspace given by per-vertex RREF row bases."""
    return _sub_and_quotient(r, bases)


def _invariant(r, k, bases, pivs, s, t):
    img = ff.mul_array(r.maps[k], bases[s].T, r.p)
    return not _residual(bases[t], pivs[t], img, r.p).any()


def iter_subrepresentations(r: Representation, d, budget=DEFAULT_BUDGET):
    """Yield every subrepresentation of r with dimension vector d."""
    q = r.quiver
    d = check_vector(q, d, nonnegative=True)
    if any(x > y for x, y in zip(d, r.dims)):
        return
    p = r.p
    total = 1
    for n, k in zip(r.dims, d):
        total *= ff.gaussian_binomial(n, k, p)
    check_budget("subrepresentation scan", total, budget)
    order = list(range(q.n))
    arrows_at = {v: [] for v in order}
    for k, (s, t) in enumerate(zip(q.src_index, q.tgt_index)):
        arrows_at[max(order.index(s), order.index(t))].append((k, s, t))
    bases = [None] * q.n
    pivs = [None] * q.n

    def rec(i):
        if i == len(order):
            sub, quo = _sub_and_quotient(r, bases)
            yield Subrepresentation(tuple(b.copy() for b in bases), sub, quo)
            return
        v = order[i]
        for b in ff.subspaces(r.dims[v], d[v], p):
            bases[v] = b
            pivs[v] = [int(np.nonzero(row)[0][0]) for row in b]
            if all(_invariant(r, k, bases, pivs, s, t) for k, s, t in arrows_at[i]):
                yield from rec(i + 1)

    yield from rec(0)


def subrepresentations(r: Representation, d, budget=DEFAULT_BUDGET) -> list[Subrepresentation]:
    return list(iter_subrepresentations(r, d, budget))


# ---------------------------------------------------------------------------
# decomposition and isomorphism


def _batch_power(stack: np.ndarray, e: int, p: int) -> np.ndarray:
    n = stack.shape[1]
    result = np.broadcast_to(np.eye(n, dtype=np.int64), stack.shape).copy()
    base = stack % p
    while e:
        if e & 1:
            result = np.einsum("bij,bjk->bik", result, base) % p
        base = np.einsum("bij,bjk->bik", base, base) % p
        e >>= 1
    return result


def _fitting_candidates(hs: HomSpace, budget):
    """Endomorphism batches to test: basis elements first, then everything."""
    k = hs.dim
    p = hs.source.p
    yield np.eye(k, dtype=np.int64)
    pairs = [np.eye(k, dtype=np.int64)[i] + c * np.eye(k, dtype=np.int64)[j]
             for i in range(k) for j in range(i + 1, k) for c in range(1, p)]
    if pairs:
        yield np.array(pairs) % p
    yield from _chunks(_combos(k, p, budget, "idempotent search"))


def split_endomorphism(m: Representation, budget=DEFAULT_BUDGET):
    """An endomorphism that is neither nilpotent nor invertible, or None.

    None means End(m) is local, i.e. m is indecomposable (or zero).
    """
    if m.total_dim == 0:
        return None
    hs = hom_space_cached(m, m)
    if hs.dim <= 1:
        return None
    p = m.p
    e = max(m.dims)
    for coords in _fitting_candidates(hs, budget):
        flat = hs.elements_flat(coords)
        nil = np.ones(flat.shape[0], dtype=bool)
        inv = np.ones(flat.shape[0], dtype=bool)
        for v, dv in enumerate(m.dims):
            if dv == 0:
                continue
            blk = hs.layout.block(flat, v)
            pw = _batch_power(blk, e, p)
            nil &= ~pw.reshape(pw.shape[0], -1).any(axis=1)
            inv &= ff.batch_rank(blk, p) == dv
        hit = np.nonzero(~nil & ~inv)[0]
        if hit.size:
            return hs.layout.unflatten(flat[hit[0]])
    return None


def is_indecomposable(m: Representation, budget=DEFAULT_BUDGET) -> bool:
    return m.total_dim > 0 and split_endomorphism(m, budget) is None


def fitting_split(m: Representation, f) -> tuple[Representation, Representation]:
    """m = im f^N (+) ker f^N for an endomorphism f (Fitting's lemma)."""
    p = m.p
    e = max(m.dims)
    im_bases = []
    ker_bases = []
    for v, dv in enumerate(m.dims):
        if dv == 0:
            im_bases.append(np.zeros((0, 0), dtype=np.int64))
            ker_bases.append(np.zeros((0, 0), dtype=np.int64))
            continue
        g = np.eye(dv, dtype=np.int64)
        for _ in range(e):
            g = ff.mul_array(g, f[v], p)
        im_bases.append(ff.column_space_array(g, p))
        ker_bases.append(ff.kernel_array(g, p).T.copy())
    return restrict(m, im_bases), restrict(m, ker_bases)


def decompose(m: Representation, budget=DEFAULT_BUDGET) -> list[Representation]:
    """Indecomposable summands of m (Krull-Schmidt), in discovery order."""
    if m.total_dim == 0:
        return []
    f = split_endomorphism(m, budget)
    if f is None:
        return [m]
    a, b = fitting_split(m, f)
    return decompose(a, budget) + decompose(b, budget)


def _cheap_invariants_differ(m: Representation, n: Representation) -> bool:
    if m.dims != n.dims:
        return True
    hmm = hom_dim(m, m)
    return hom_dim(n, n) != hmm or hom_dim(m, n) != hmm or hom_dim(n, m) != hmm


def find_isomorphism(m: Representation, n: Representation, budget=DEFAULT_BUDGET):
    """An invertible intertwiner m -> n (per-vertex matrices), or None."""
    _check_pair(m, n)
    if m.dims != n.dims:
        return None
    if m.total_dim == 0:
        return tuple(np.zeros((0, 0), dtype=np.int64) for _ in m.dims)
    hs = hom_space_cached(m, n)
    for coords in _chunks(_combos(hs.dim, m.p, budget, "isomorphism search")):
        flat = hs.elements_flat(coords)
        hit = np.nonzero(invertible_mask(hs, flat))[0]
        if hit.size:
            return hs.layout.unflatten(flat[hit[0]])
    return None


def is_isomorphic_bruteforce(m: Representation, n: Representation, budget=DEFAULT_BUDGET) -> bool:
    return find_isomorphism(m, n, budget) is not None


def is_isomorphic(m: Representation, n: Representation, catalog=None, budget=DEFAULT_BUDGET) -> bool:
    """Decide m ~= n.

    Dimension vectors and Hom-dimension invariants first; then canonical
    labels from ``catalog`` when given; brute-force intertwiner search last.
    """
    _check_pair(m, n)
    if _cheap_invariants_differ(m, n):
        return False
    if m == n:
        return True
    if catalog is not None:
        return catalog.classify(m) == catalog.classify(n)
    return is_isomorphic_bruteforce(m, n, budget)


def all_representations(quiver: Quiver, field, dims, budget=DEFAULT_BUDGET):
    """Yield every representation with the given dimension vector."""
    field = as_field(field)
    dims = check_vector(quiver, dims, nonnegative=True)
    shapes = [(dims[t], dims[s]) for s, t in zip(quiver.src_index, quiver.tgt_index)]
    n_entries = sum(r * c for r, c in shapes)
    check_budget("representation enumeration", field.p**n_entries, budget)
    for vals in itertools.product(range(field.p), repeat=n_entries):
        maps = []
        off = 0
        for r, c in shapes:
            maps.append(np.array(vals[off:off + r * c], dtype=np.int64).reshape(r, c))
            off += r * c
        yield Representation(quiver, field, dims, maps)


def random_base_change(r: Representation, rng) -> Representation:
    """A random isomorphic copy of r."""
    p = r.p
    mats = []
    for d in r.dims:
        while True:
            g = rng.integers(0, p, size=(d, d))
            if d == 0 or ff.rank_array(g, p) == d:
                break
        mats.append(g)
    return r.change_basis(mats)
