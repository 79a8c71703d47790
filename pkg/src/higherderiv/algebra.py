"""Finite-dimensional associative algebras given by structure constants."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .exactmath import Matrix, Scalar, Vec, unit_vec, vec, vec_add, vec_sub, zero_vec
from .maps import LinearMap

SEMIPRIME_VALUES = ("yes", "no", "unknown")


class Algebra:
    """Algebra on basis ``e_0..e_{d-1}`` with ``e_i e_j = sum_k sc[i][j][k] e_k``.

    ``semiprime`` is metadata ("yes", "no" or "unknown"); it is never computed.
    Products are evaluated through a sparse copy of the structure constants.
    """

    def __init__(self, name: str, sc, unit: Optional[Sequence[Scalar]] = None,
                 semiprime: str = "unknown", basis: Optional[Sequence[str]] = None):
        tensor = tuple(tuple(vec(cell) for cell in row) for row in sc)
        d = len(tensor)
        if d < 1:
            raise ValueError("algebra dimension must be positive")
        for row in tensor:
            if len(row) != d or any(len(cell) != d for cell in row):
                raise ValueError(f"structure constants must have shape {d}x{d}x{d}")
        if semiprime not in SEMIPRIME_VALUES:
            raise ValueError(f"semiprime must be one of {SEMIPRIME_VALUES}, got {semiprime!r}")
        if unit is not None:
            unit = vec(unit)
            if len(unit) != d:
                raise ValueError(f"unit has length {len(unit)}, expected {d}")
        if basis is None:
            basis = tuple(f"e{i + 1}" for i in range(d))
        elif len(basis) != d:
            raise ValueError(f"{len(basis)} basis names for dimension {d}")
        self.name = name
        self.dim = d
        self.sc = tensor
        self.unit: Optional[Vec] = unit
        self.semiprime = semiprime
        self.basis = tuple(basis)
        self._sparse = tuple(
            tuple(tuple((k, c) for k, c in enumerate(cell) if c) for cell in row)
            for row in tensor)
        self._basis_vecs = tuple(unit_vec(d, i) for i in range(d))
        self._zero = zero_vec(d)
        if unit is not None:
            for i, e in enumerate(self._basis_vecs):
                if self.mul(unit, e) != e or self.mul(e, unit) != e:
                    raise ValueError(f"given unit is not two-sided neutral on {self.basis[i]}")

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.sc, self.unit, self.semiprime) == (other.sc, other.unit, other.semiprime)

    def __hash__(self) -> int:
        return hash((self.sc, self.unit))

    def zero(self) -> Vec:
        return self._zero

    def basis_vectors(self) -> tuple[Vec, ...]:
        return self._basis_vecs

    def mul_basis(self, i: int, j: int) -> Vec:
        return self.sc[i][j]

    def mul(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
        d = self.dim
        if len(x) != d or len(y) != d:
            raise ValueError(f"vector lengths {len(x)}, {len(y)} do not match dimension {d}")
        ynz = [(j, b) for j, b in enumerate(y) if b]
        if not ynz:
            return self._zero
        acc = [Fraction(0)] * d
        for i, a in enumerate(x):
            if not a:
                continue
            row = self._sparse[i]
            for j, b in ynz:
                ab = a * b
                for k, c in row[j]:
                    acc[k] += ab * c
        return tuple(acc)

    def jordan(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
        return vec_add(self.mul(x, y), self.mul(y, x))

    def is_associative(self) -> bool:
        return check_associativity(self)

    def is_commutative(self) -> bool:
        return all(self.sc[i][j] == self.sc[j][i]
                   for i in range(self.dim) for j in range(i + 1, self.dim))


def mul(alg: Algebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
    return alg.mul(x, y)


def jordan(alg: Algebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
    """Jordan product ``xy + yx``."""
    return alg.jordan(x, y)


def check_associativity(alg: Algebra) -> bool:
    """True iff ``(e_i e_j) e_k = e_i (e_j e_k)`` for all basis triples."""
    b = alg.basis_vectors()
    for i in range(alg.dim):
        for j in range(alg.dim):
            eij = alg.mul_basis(i, j)
            for k in range(alg.dim):
                if alg.mul(eij, b[k]) != alg.mul(b[i], alg.mul_basis(j, k)):
                    return False
    return True


def _empty_tensor(d: int) -> list:
    return [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]


def matrix_algebra(n: int) -> Algebra:
    """Full matrix algebra M_n(Q) on matrix units e_pq, ordered row-major by (p, q)."""
    if n < 1:
        raise ValueError("matrix_algebra needs n >= 1")
    idx = {(p, q): p * n + q for p in range(n) for q in range(n)}
    d = n * n
    sc = _empty_tensor(d)
    # e_pq e_rs = δ_qr e_ps
    for (p, q), a in idx.items():
        for s in range(n):
            sc[a][idx[(q, s)]][idx[(p, s)]] = Fraction(1)
    unit = [Fraction(0)] * d
    for p in range(n):
        unit[idx[(p, p)]] = Fraction(1)
    basis = [f"e{p + 1}{q + 1}" if n < 10 else f"e{p + 1},{q + 1}" for p in range(n) for q in range(n)]
    return Algebra(f"M{n}", sc, unit=unit, semiprime="yes", basis=basis)


def upper_triangular(n: int) -> Algebra:
    """Upper-triangular n×n matrices on units e_pq (p <= q). Not semiprime."""
    if n < 2:
        raise ValueError("upper_triangular needs n >= 2")
    pairs = [(p, q) for p in range(n) for q in range(p, n)]
    idx = {pq: a for a, pq in enumerate(pairs)}
    d = len(pairs)
    sc = _empty_tensor(d)
    for (p, q), a in idx.items():
        for s in range(q, n):
            sc[a][idx[(q, s)]][idx[(p, s)]] = Fraction(1)
    unit = [Fraction(0)] * d
    for p in range(n):
        unit[idx[(p, p)]] = Fraction(1)
    basis = [f"e{p + 1}{q + 1}" for p, q in pairs]
    return Algebra(f"T{n}", sc, unit=unit, semiprime="no", basis=basis)


def dual_numbers() -> Algebra:
    """Q[ε]/(ε²) on basis (1, ε). Not semiprime."""
    sc = _empty_tensor(2)
    sc[0][0][0] = Fraction(1)
    sc[0][1][1] = Fraction(1)
    sc[1][0][1] = Fraction(1)
    return Algebra("dual", sc, unit=[1, 0], semiprime="no", basis=["1", "eps"])


def builtin(name: str) -> Algebra:
    """Look up a shipped algebra: ``M<n>``, ``T<n>`` or ``dual``."""
    key = name.strip()
    if key.lower() == "dual":
        return dual_numbers()
    if len(key) > 1 and key[0] in "MT" and key[1:].isdigit():
        n = int(key[1:])
        return matrix_algebra(n) if key[0] == "M" else upper_triangular(n)
    raise KeyError(f"unknown builtin algebra {name!r} (try M2, M3, T2, dual)")


def inner_derivation(alg: Algebra, x: Sequence[Scalar]) -> LinearMap:
    """Matrix of ``d_x(a) = xa - ax``."""
    x = vec(x)
    cols = [vec_sub(alg.mul(x, e), alg.mul(e, x)) for e in alg.basis_vectors()]
    return LinearMap(Matrix.from_columns(cols))
