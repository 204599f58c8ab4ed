"""Quivers, their text/JSON formats, dimension vectors and the Euler form.

DSL, one statement per line::

    # A2
    vertex 1
    vertex 2
    arrow a: 1 -> 2

Dimension vectors and K0 classes are plain tuples of ints indexed by vertex
declaration order.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import DimensionMismatch, HallforgeError


class QuiverError(HallforgeError, ValueError):
    """Invalid quiver data (loops, duplicates, unknown vertices)."""


class QuiverSyntaxError(QuiverError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


class Quiver:
    """A finite quiver without loops; immutable."""

    __slots__ = ("vertices", "arrows", "_vindex", "_aindex", "src_index", "tgt_index")

    def __init__(self, vertices, arrows=()):
        vertices = tuple(str(v) for v in vertices)
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*map(str, a)) for a in arrows)
        if len(set(vertices)) != len(vertices):
            dup = next(v for v in vertices if vertices.count(v) > 1)
            raise QuiverError(f"duplicate vertex {dup!r}")
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise QuiverError(f"duplicate arrow {dup!r}")
        vindex = {v: i for i, v in enumerate(vertices)}
        for a in arrows:
            for end in (a.src, a.tgt):
                if end not in vindex:
                    raise QuiverError(f"arrow {a.name!r} uses unknown vertex {end!r}")
            if a.src == a.tgt:
                raise QuiverError(f"arrow {a.name!r} is a loop at {a.src!r}")
        self.vertices = vertices
        self.arrows = arrows
        self._vindex = vindex
        self._aindex = {a.name: i for i, a in enumerate(arrows)}
        self.src_index = tuple(vindex[a.src] for a in arrows)
        self.tgt_index = tuple(vindex[a.tgt] for a in arrows)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, v) -> int:
        try:
            return self._vindex[str(v)]
        except KeyError:
            raise QuiverError(f"unknown vertex {v!r}") from None

    def arrow_index(self, name) -> int:
        try:
            return self._aindex[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def unit(self, v) -> tuple[int, ...]:
        i = self.vertex_index(v)
        return tuple(int(j == i) for j in range(self.n))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.n

    def render(self) -> str:
        """Canonical DSL text; ``parse_quiver(q.render()) == q``."""
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {a.name}: {a.src} -> {a.tgt}" for a in self.arrows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in self.arrows],
        }

    @classmethod
    def from_json(cls, data) -> "Quiver":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(data["vertices"], [(a["name"], a["src"], a["tgt"]) for a in data.get("arrows", [])])
        except (KeyError, TypeError) as exc:
            raise QuiverError(f"malformed quiver JSON: {exc}") from None

    def digest(self) -> str:
        return hashlib.sha256(self.render().encode()).hexdigest()[:16]

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({list(self.vertices)}, {[(a.name, a.src, a.tgt) for a in self.arrows]})"


_IDENT = r"[A-Za-z0-9_.']+"
_VERTEX_RE = re.compile(rf"vertex\s+({_IDENT})\s*$")
_ARROW_RE = re.compile(rf"arrow\s+({_IDENT})\s*:\s*({_IDENT})\s*->\s*({_IDENT})\s*$")


def parse_quiver(text: str) -> Quiver:
    """Parse the quiver DSL.  Syntax errors carry 1-based line/column."""
    vertices = []
    arrows = []
    seen_v = {}
    seen_a = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        keyword = stripped.split()[0]
        if keyword == "vertex":
            m = _VERTEX_RE.match(stripped)
            if not m:
                raise QuiverSyntaxError("expected 'vertex <id>'", lineno, col)
            v = m.group(1)
            if v in seen_v:
                raise QuiverSyntaxError(f"duplicate vertex {v!r}", lineno, col)
            seen_v[v] = lineno
            vertices.append(v)
        elif keyword == "arrow":
            m = _ARROW_RE.match(stripped)
            if not m:
                raise QuiverSyntaxError("expected 'arrow <name>: <src> -> <tgt>'", lineno, col)
            name, src, tgt = m.groups()
            if name in seen_a:
                raise QuiverSyntaxError(f"duplicate arrow {name!r}", lineno, col)
            for end in (src, tgt):
                if end not in seen_v:
                    raise QuiverSyntaxError(f"unknown vertex {end!r}", lineno, col + stripped.index(end))
            if src == tgt:
                raise QuiverSyntaxError(f"arrow {name!r} is a loop at {src!r}", lineno, col)
            seen_a[name] = lineno
            arrows.append((name, src, tgt))
        else:
            raise QuiverSyntaxError(f"unknown statement {keyword!r}", lineno, col)
    if not vertices:
        raise QuiverSyntaxError("quiver has no vertices", 1, 1)
    return Quiver(vertices, arrows)


def load_quiver(source) -> Quiver:
    """Accept DSL text, JSON text, a dict, or a path to either format."""
    if isinstance(source, Quiver):
        return source
    if isinstance(source, dict):
        return Quiver.from_json(source)
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).is_file()):
        source = Path(source).read_text(encoding="utf-8")
    if source.lstrip().startswith("{"):
        try:
            return Quiver.from_json(json.loads(source))
        except json.JSONDecodeError as exc:
            raise QuiverSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return parse_quiver(source)


def check_vector(q: Quiver, d, nonnegative=False) -> tuple[int, ...]:
    d = tuple(int(x) for x in d)
    if len(d) != q.n:
        raise DimensionMismatch(f"vector {d} has length {len(d)}, quiver has {q.n} vertices")
    if nonnegative and any(x < 0 for x in d):
        raise DimensionMismatch(f"dimension vector {d} has a negative entry")
    return d


def euler_form(q: Quiver, d, e) -> int:
    """<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j."""
    d = check_vector(q, d)
    e = check_vector(q, e)
    value = sum(x * y for x, y in zip(d, e))
    for s, t in zip(q.src_index, q.tgt_index):
        value -= d[s] * e[t]
    return value


def vec_add(d, e):
    return tuple(x + y for x, y in zip(d, e))


def vec_sub(d, e):
    return tuple(x - y for x, y in zip(d, e))


def vec_le(d, e) -> bool:
    return all(x <= y for x, y in zip(d, e))


def vectors_below(bound):
    """All nonnegative vectors componentwise <= bound, lexicographic."""
    import itertools

    return [tuple(v) for v in itertools.product(*(range(b + 1) for b in bound))]


def parse_vector(text: str) -> tuple[int, ...]:
    text = text.strip().strip("()[]")
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def linear_quiver(n: int) -> Quiver:
    """Equioriented A_n: 1 -> 2 -> ... -> n."""
    vs = [str(i) for i in range(1, n + 1)]
    return Quiver(vs, [(f"a{i}", vs[i - 1], vs[i]) for i in range(1, n)])
