"""Indecomposable catalogs and canonical isomorphism-class labels.

A ``Catalog`` belongs to one (quiver, field).  Indecomposables of a given
dimension vector are found by exhaustive enumeration and numbered in order
of first appearance, so numbering never depends on query order.  Every
representation is labeled by the multiset of catalog members in its
Krull-Schmidt decomposition.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from . import rep as R
from .errors import DEFAULT_BUDGET, UnknownLabel
from .ff import as_field
from .quiver import Quiver, vec_add, vec_le, vec_sub, vectors_below


@dataclass(frozen=True)
class IsoClass:
    """Isomorphism class of a representation.

    ``parts`` is the sorted multiset ``((dims, index, multiplicity), ...)`` of
    indecomposable catalog members; ``rep`` is the canonical representative
    (their direct sum in that order).
    """

    label: str
    dims: tuple
    parts: tuple
    rep: R.Representation = field(compare=False, hash=False, repr=False)

    @property
    def sort_key(self):
        return (self.dims, tuple((d, i, -m) for d, i, m in self.parts))

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        return self.label


_MNAME = re.compile(r"^M\(([0-9,]+)\)(?:#(\d+))?$")


class Catalog:
    """Memoized catalog of indecomposables and iso-class labeling for one quiver and field."""

    def __init__(self, quiver: Quiver, field, budget=DEFAULT_BUDGET):
        self.quiver = quiver
        self.field = as_field(field)
        self.budget = budget
        self._indec: dict[tuple, list[R.Representation]] = {}
        self._labels: dict[R.Representation, IsoClass] = {}
        self._classes: dict[tuple, list[IsoClass]] = {}

    @property
    def q(self) -> int:
        return self.field.p

    def digest(self) -> str:
        d = self.__dict__.get("_digest")
        if d is None:
            d = self._digest = f"{self.quiver.digest()}-q{self.q}"
        return d

    # -- indecomposables ------------------------------------------------

    def indecomposables(self, d) -> list[R.Representation]:
        """Pairwise non-isomorphic indecomposables of dimension vector exactly d."""
        d = tuple(d)
        if d in self._indec:
            return self._indec[d]
        found: list[R.Representation] = []
        if any(d):
            nonzero = [i for i, x in enumerate(d) if x]
            if len(nonzero) == 1 and d[nonzero[0]] == 1:
                found = [R.Representation(self.quiver, self.field, d)]
            elif self._connected_support(d):
                for m in R.all_representations(self.quiver, self.field, d, self.budget):
                    if not R.is_indecomposable(m, self.budget):
                        continue
                    if any(R.is_isomorphic(m, x, budget=self.budget) for x in found):
                        continue
                    found.append(m)
        self._indec[d] = found
        return found

    def _connected_support(self, d) -> bool:
        # an indecomposable has connected support
        support = {i for i, x in enumerate(d) if x}
        start = next(iter(support))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for s, t in zip(self.quiver.src_index, self.quiver.tgt_index):
                for a, b in ((s, t), (t, s)):
                    if a == v and b in support and b not in seen:
                        seen.add(b)
                        stack.append(b)
        return seen == support

    def catalog(self, bound) -> list[tuple[tuple, int, R.Representation]]:
        """All indecomposables with dims <= bound as (dims, index, rep)."""
        out = []
        for d in vectors_below(bound):
            if any(d):
                out.extend((d, i, m) for i, m in enumerate(self.indecomposables(d)))
        return out

    def indec_name(self, d, idx) -> str:
        nz = [i for i, x in enumerate(d) if x]
        if len(nz) == 1 and d[nz[0]] == 1:
            return f"S{self.quiver.vertices[nz[0]]}"
        name = "M(" + ",".join(str(x) for x in d) + ")"
        return name if idx == 0 else f"{name}#{idx}"

    def _parse_indec_name(self, name):
        if name.startswith("S") and name[1:] in self.quiver.vertices:
            return self.quiver.unit(name[1:]), 0
        m = _MNAME.match(name)
        if not m:
            raise UnknownLabel(f"cannot parse indecomposable name {name!r}")
        d = tuple(int(x) for x in m.group(1).split(","))
        if len(d) != self.quiver.n:
            raise UnknownLabel(f"{name!r} has the wrong number of coordinates")
        idx = int(m.group(2) or 0)
        if idx >= len(self.indecomposables(d)):
            raise UnknownLabel(f"no indecomposable {name!r}")
        return d, idx

    # -- classes ----------------------------------------------------------

    def from_parts(self, parts) -> IsoClass:
        """IsoClass from an iterable of (dims, index, multiplicity)."""
        merged: dict[tuple, int] = {}
        for d, i, mlt in parts:
            if mlt:
                merged[(tuple(d), i)] = merged.get((tuple(d), i), 0) + mlt
        items = tuple(sorted((d, i, mlt) for (d, i), mlt in merged.items()))
        dims = self.quiver.zero()
        summands = []
        names = []
        for d, i, mlt in items:
            dims = vec_add(dims, tuple(x * mlt for x in d))
            summands.extend([self.indecomposables(d)[i]] * mlt)
            nm = self.indec_name(d, i)
            names.append(nm if mlt == 1 else f"{nm}^{mlt}")
        label = "+".join(names) if names else "0"
        rep = R.direct_sum_all(summands, self.quiver, self.field)
        return IsoClass(label, dims, items, rep)

    def parse_label(self, label: str) -> IsoClass:
        label = label.strip()
        if label == "0":
            return self.from_parts(())
        parts = []
        for tok in label.split("+"):
            tok = tok.strip()
            name, _, mult = tok.partition("^")
            d, i = self._parse_indec_name(name)
            parts.append((d, i, int(mult) if mult else 1))
        return self.from_parts(parts)

    def match_indecomposable(self, m: R.Representation) -> int:
        cands = self.indecomposables(m.dims)
        if len(cands) == 1:
            # the catalog of this dimension vector is complete
            return 0
        for i, x in enumerate(cands):
            if R.is_isomorphic(m, x, budget=self.budget):
                return i
        raise AssertionError(f"indecomposable {m!r} missing from catalog")

    def classify(self, m: R.Representation) -> IsoClass:
        """Canonical IsoClass of a representation."""
        hit = self._labels.get(m)
        if hit is not None:
            return hit
        parts = [(x.dims, self.match_indecomposable(x), 1) for x in R.decompose(m, self.budget)]
        cls = self.from_parts(parts)
        if len(self._labels) > 200000:
            self._labels.clear()
        self._labels[m] = cls
        return cls

    def iso_classes(self, d) -> list[IsoClass]:
        """Every iso class of dimension vector d, sorted."""
        d = tuple(d)
        if d in self._classes:
            return self._classes[d]
        pieces = [(e, i) for e in vectors_below(d) if any(e) for i in range(len(self.indecomposables(e)))]
        out = []

        def rec(k, remaining, acc):
            if not any(remaining):
                out.append(self.from_parts(acc))
                return
            if k == len(pieces):
                return
            e, i = pieces[k]
            mlt = 0
            rem = remaining
            while True:
                rec(k + 1, rem, acc + ([(e, i, mlt)] if mlt else []))
                rem = vec_sub(rem, e)
                if not vec_le((0,) * len(rem), rem):
                    break
                mlt += 1

        rec(0, d, [])
        out.sort()
        self._classes[d] = out
        return out

    def classes_below(self, bound) -> list[IsoClass]:
        return [c for d in vectors_below(bound) for c in self.iso_classes(d)]

    def zero(self) -> IsoClass:
        return self.from_parts(())

    def simple(self, v) -> IsoClass:
        return self.from_parts([(self.quiver.unit(v), 0, 1)])

    def hom_fingerprint(self, m: R.Representation, bound=None):
        """dim Hom(X, m) for every catalog member X with dims <= bound (default dim m)."""
        bound = m.dims if bound is None else bound
        return tuple(R.hom_dim(x, m) for _, _, x in self.catalog(bound))

    # -- persistence ------------------------------------------------------

    def to_json(self, bound) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "quiver_digest": self.quiver.digest(),
            "q": self.q,
            "bound": list(bound),
            "indecomposables": [
                {"dims": list(d), "index": i, "name": self.indec_name(d, i), "rep": m.to_json()}
                for d, i, m in self.catalog(bound)
            ],
        }

    def load_json(self, data) -> None:
        """Seed the indecomposable tables from a persisted catalog."""
        table: dict[tuple, list] = {}
        for entry in data["indecomposables"]:
            d = tuple(entry["dims"])
            table.setdefault(d, []).append((entry["index"], R.Representation.from_json(self.quiver, self.field, entry["rep"])))
        for d in vectors_below(tuple(data["bound"])):
            if any(d):
                self._indec[d] = [m for _, m in sorted(table.get(d, []), key=lambda t: t[0])]


def validate_catalog_json(catalog: Catalog, data, budget=DEFAULT_BUDGET) -> list[str]:
    """Problems found when re-checking a persisted catalog; empty if sound."""
    problems = []
    if data.get("quiver_digest") != catalog.quiver.digest() or data.get("q") != catalog.q:
        problems.append("catalog header does not match quiver/field")
    by_dim: dict[tuple, list] = {}
    for entry in data.get("indecomposables", []):
        try:
            m = R.Representation.from_json(catalog.quiver, catalog.field, entry["rep"])
        except Exception as exc:  # malformed payload
            problems.append(f"entry {entry.get('name')}: {exc}")
            continue
        if tuple(entry["dims"]) != m.dims:
            problems.append(f"entry {entry.get('name')}: dims mismatch")
        if not R.is_indecomposable(m, budget):
            problems.append(f"entry {entry.get('name')}: not indecomposable")
        by_dim.setdefault(m.dims, []).append(m)
    for d, ms in by_dim.items():
        for a, b in itertools.combinations(ms, 2):
            if R.is_isomorphic(a, b, budget=budget):
                problems.append(f"duplicate isomorphic entries in dimension {d}")
    bound = tuple(data.get("bound", ()))
    if bound:
        fresh = Catalog(catalog.quiver, catalog.field, budget)
        for d in vectors_below(bound):
            if any(d) and len(fresh.indecomposables(d)) != len(by_dim.get(d, [])):
                problems.append(f"dimension {d}: expected {len(fresh.indecomposables(d))} indecomposables, found {len(by_dim.get(d, []))}")
    return problems


def random_representation(quiver, field, dims, rng) -> R.Representation:
    field = as_field(field)
    maps = [rng.integers(0, field.p, size=(dims[t], dims[s])) for s, t in zip(quiver.src_index, quiver.tgt_index)]
    return R.Representation(quiver, field, dims, maps)


def indecomposable_catalog(quiver, field, bound, budget=DEFAULT_BUDGET):
    """Pairwise non-isomorphic indecomposables with dims <= bound."""
    return [m for _, _, m in Catalog(quiver, field, budget).catalog(bound)]

