"""Exact rational scalars, vectors and dense matrices.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions;
matrices are immutable row-major grids. Nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Rational = Fraction
Vec = Tuple[Fraction, ...]
Scalar = Union[int, Fraction]


def rat(p: int, q: int = 1) -> Fraction:
    """Reduced fraction ``p/q`` with positive denominator."""
    if q == 0:
        raise ValueError(f"zero denominator in rat({p}, {q})")
    return Fraction(p, q)


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: Union[str, int]) -> Fraction:
    """Inverse of :func:`format_rat`. Accepts ``"p/q"``, ``"p"`` or a bare int."""
    if isinstance(s, bool):
        raise ValueError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"not a rational: {s!r}")
    text = s.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {s!r}") from None
    return rat(p, q)


# -- vectors ---------------------------------------------------------------

def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vec:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vec(entries: Iterable[Scalar]) -> Vec:
    return tuple(Fraction(e) for e in entries)


def vec_add(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
    if len(x) != len(y):
        raise ValueError(f"vector length mismatch: {len(x)} vs {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
    if len(x) != len(y):
        raise ValueError(f"vector length mismatch: {len(x)} vs {len(y)}")
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c: Scalar, x: Sequence[Fraction]) -> Vec:
    return tuple(c * a for a in x)


# -- matrices --------------------------------------------------------------

class Matrix:
    """Immutable dense matrix over the rationals.

    Supports ``A @ B`` (product), ``A @ v`` for a tuple ``v`` (application),
    ``A + B``, ``A - B``, ``c * A`` and ``-A``. Equality is exact.
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, entries: Iterable[Iterable[Scalar]], cols: int | None = None):
        grid = tuple(tuple(Fraction(e) for e in row) for row in entries)
        if not grid:
            raise ValueError("matrix needs at least one row")
        width = len(grid[0])
        if cols is not None and width != cols:
            raise ValueError(f"expected {cols} columns, got {width}")
        if width == 0:
            raise ValueError("matrix needs at least one column")
        for row in grid:
            if len(row) != width:
                raise ValueError("ragged matrix rows")
        self.rows = len(grid)
        self.cols = width
        self.entries = grid
        self._hash = None

    @classmethod
    def _raw(cls, grid: tuple) -> "Matrix":
        # trusted constructor: grid is already a rectangular tuple of Fractions
        m = cls.__new__(cls)
        m.rows = len(grid)
        m.cols = len(grid[0])
        m.entries = grid
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        if rows < 1 or cols < 1:
            raise ValueError("matrix shape must be positive")
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        if n < 1:
            raise ValueError("matrix shape must be positive")
        one, z = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]]) -> "Matrix":
        if not columns:
            raise ValueError("matrix needs at least one column")
        return cls([[c[i] for c in columns] for i in range(len(columns[0]))])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> Vec:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vec]:
        return [tuple(col) for col in zip(*self.entries)]

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def apply(self, v: Sequence[Fraction]) -> Vec:
        if len(v) != self.cols:
            raise ValueError(f"cannot apply {self.rows}x{self.cols} matrix to length-{len(v)} vector")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((row[j] * x for j, x in nz), Fraction(0)) for row in self.entries)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        if isinstance(other, tuple):
            return self.apply(other)
        return NotImplemented

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        _check_same_shape(self, other)
        return Matrix._raw(tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        _check_same_shape(self, other)
        return Matrix._raw(tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.entries))

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            c = Fraction(c)
            return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.entries))
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rat(e) for e in row) for row in self.entries)
        return f"Matrix([{body}])"


def _check_same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product ``a @ b``."""
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = b.entries
    zero = Fraction(0)
    out = []
    for row in a.entries:
        acc = [zero] * b.cols
        for k, x in enumerate(row):
            if not x:
                continue
            for j, y in enumerate(bt[k]):
                if y:
                    acc[j] += x * y
        out.append(tuple(acc))
    return Matrix._raw(tuple(out))


def mat_lincomb(terms: Iterable[tuple[Scalar, Matrix]],
                shape: tuple[int, int] | None = None) -> Matrix:
    """Exact linear combination ``sum(c * A for c, A in terms)``.

    The empty sum needs ``shape``; it returns the zero matrix of that shape.
    """
    terms = list(terms)
    if not terms:
        if shape is None:
            raise ValueError("empty linear combination needs an explicit shape")
        return Matrix.zeros(*shape)
    rows, cols = terms[0][1].shape
    if shape is not None and shape != (rows, cols):
        raise ValueError(f"shape mismatch: {shape} vs {(rows, cols)}")
    acc = [[Fraction(0)] * cols for _ in range(rows)]
    for c, m in terms:
        if m.shape != (rows, cols):
            raise ValueError(f"shape mismatch: {(rows, cols)} vs {m.shape}")
        c = Fraction(c)
        if not c:
            continue
        for i, r in enumerate(m.entries):
            ai = acc[i]
            for j, x in enumerate(r):
                if x:
                    ai[j] += c * x
    return Matrix._raw(tuple(tuple(r) for r in acc))


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[Vec]:
    """Basis of ``{x : A x = 0}`` by exact reduced row echelon form."""
    mat = [[Fraction(e) for e in r] for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        p = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -mat[i][fc]
        basis.append(tuple(x))
    return basis
