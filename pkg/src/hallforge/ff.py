"""Exact arithmetic and dense linear algebra over prime fields F_p.

Matrices are immutable wrappers around C-contiguous int64 arrays holding
canonical residues.  The array-level helpers (``rref_array``,
``kernel_array`` ...) are what the rest of the package calls in its inner
loops; ``Matrix`` and the functions ``mat_mul``/``rank``/``kernel_basis``/
``solve`` are the public surface.
"""
from __future__ import annotations

import itertools

import numpy as np

from ._backend import kernels
from .errors import DimensionMismatch, FieldMismatch

MAX_PRIME = 65521


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The field F_p for a prime 2 <= p <= 65521."""

    __slots__ = ("p", "_inv")

    def __init__(self, p: int):
        p = int(p)
        if not 2 <= p <= MAX_PRIME or not _is_prime(p):
            raise ValueError(f"{p} is not a prime in [2, {MAX_PRIME}]")
        self.p = p
        self._inv = None

    @property
    def inverses(self) -> list[int]:
        if self._inv is None:
            self._inv = [0] + [pow(a, self.p - 2, self.p) for a in range(1, self.p)]
        return self._inv

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inverses[a]

    def elements(self) -> range:
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def as_field(field) -> PrimeField:
    return field if isinstance(field, PrimeField) else PrimeField(field)


class Matrix:
    """An immutable rows x cols matrix over a prime field."""

    __slots__ = ("field", "a")

    def __init__(self, field, data, shape=None):
        self.field = as_field(field)
        arr = np.array(data, dtype=np.int64)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            if arr.size == 0 and shape is None:
                arr = arr.reshape(0, 0)
            else:
                raise ValueError("matrix data must be two-dimensional")
        arr = np.ascontiguousarray(arr % self.field.p)
        arr.setflags(write=False)
        self.a = arr

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.a.ravel())

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.a.T)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        _check_same(self, other)
        if self.a.shape != other.a.shape:
            raise DimensionMismatch(f"{self.a.shape} + {other.a.shape}")
        return Matrix(self.field, self.a + other.a)

    def __sub__(self, other):
        _check_same(self, other)
        if self.a.shape != other.a.shape:
            raise DimensionMismatch(f"{self.a.shape} - {other.a.shape}")
        return Matrix(self.field, self.a - other.a)

    def __neg__(self):
        return Matrix(self.field, -self.a)

    def scale(self, c: int) -> "Matrix":
        return Matrix(self.field, self.a * int(c))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.field.p, self.a.shape, self.a.tobytes()))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.a.tolist()})"


def _check_same(a: Matrix, b: Matrix) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")


# ---------------------------------------------------------------------------
# array-level helpers (no Matrix wrapping, used in hot paths)


def mul_array(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return (a @ b) % p


def rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` (copied) and its pivot columns."""
    m = np.array(a, dtype=np.int64, order="C") % p
    if m.size == 0:
        return m, []
    pivots = kernels.rref_inplace(m, p)
    return m, [int(c) for c in pivots]


def rank_array(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_array(a, p)[1])


def kernel_array(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right null space as the rows of a (k, cols) array.

    One basis vector per free column, in increasing column order; the free
    coordinate is 1 and the other free coordinates are 0.
    """
    rows, cols = a.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref_array(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        out[k, c] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = (-r[i, c]) % p
    return out


def solve_array(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some x with a x = b (b may be a vector or a matrix of right-hand sides)."""
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    rows, cols = a.shape
    if bb.shape[0] != rows:
        raise DimensionMismatch(f"system has {rows} rows, right-hand side {bb.shape[0]}")
    aug = np.concatenate([a % p, bb % p], axis=1)
    r, pivots = rref_array(aug, p)
    if any(c >= cols for c in pivots):
        return None
    x = np.zeros((cols, bb.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c, :] = r[i, cols:]
    return x[:, 0] if vec else x


def inverse_array(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    x = solve_array(a, np.eye(n, dtype=np.int64), p)
    if x is None or rank_array(a, p) != n:
        raise ZeroDivisionError("matrix is singular")
    return x


def column_space_array(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the column space as the columns of an RREF-derived array."""
    r, pivots = rref_array(a.T, p)
    return r[: len(pivots)].T.copy()


def batch_rank(stack: np.ndarray, p: int) -> np.ndarray:
    stack = np.ascontiguousarray(stack, dtype=np.int64)
    return kernels.batch_rank(stack, p)


def all_vectors(dim: int, p: int) -> np.ndarray:
    """All p**dim coordinate vectors, in base-p counting order (first coordinate slowest)."""
    if dim == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(p), repeat=dim)), dtype=np.int64)


def encode(vectors: np.ndarray, p: int) -> np.ndarray:
    """Base-p integer code of each row (first coordinate most significant)."""
    k = vectors.shape[-1]
    weights = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return vectors @ weights


def subspaces(n: int, k: int, p: int):
    """Yield every k-dimensional subspace of F_p^n as its (k, n) RREF basis.

    Each subspace appears exactly once; the total count is the Gaussian
    binomial [n choose k]_p.
    """
    if k < 0 or k > n:
        return
    if k == 0:
        yield np.zeros((0, n), dtype=np.int64)
        return
    for piv in itertools.combinations(range(n), k):
        pivset = set(piv)
        free_slots = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, n) if c not in pivset]
        base = np.zeros((k, n), dtype=np.int64)
        for i, pc in enumerate(piv):
            base[i, pc] = 1
        for vals in itertools.product(range(p), repeat=len(free_slots)):
            m = base.copy()
            for (i, c), v in zip(free_slots, vals):
                m[i, c] = v
            yield m


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# ---------------------------------------------------------------------------
# public Matrix operations


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    _check_same(a, b)
    return Matrix(a.field, mul_array(a.a, b.a, a.field.p))


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    r, pivots = rref_array(a.a, a.field.p)
    return Matrix(a.field, r.reshape(a.a.shape)), pivots


def rank(a: Matrix) -> int:
    return rank_array(a.a, a.field.p)


def kernel_basis(a: Matrix) -> list[tuple[int, ...]]:
    return [tuple(int(v) for v in row) for row in kernel_array(a.a, a.field.p)]


def solve(a: Matrix, b) -> tuple[int, ...] | None:
    vec = np.array(b, dtype=np.int64).reshape(-1)
    x = solve_array(a.a, vec, a.field.p)
    return None if x is None else tuple(int(v) for v in x)
