"""Linear maps on an algebra and the {g,h}-derivation checkers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Sequence

from .exactmath import Matrix, Scalar, Vec, format_rat, vec_add, vec_sub

if TYPE_CHECKING:
    from .algebra import Algebra


class LinearMap:
    """Square rational matrix acting on algebra coordinates.

    ``p @ q`` is composition (``q`` first), ``p(v)`` is application.
    """

    __slots__ = ("mat",)

    def __init__(self, mat: Matrix):
        if not isinstance(mat, Matrix):
            mat = Matrix(mat)
        if mat.rows != mat.cols:
            raise ValueError(f"linear map needs a square matrix, got {mat.rows}x{mat.cols}")
        self.mat = mat

    @property
    def dim(self) -> int:
        return self.mat.rows

    def __call__(self, v: Sequence[Fraction]) -> Vec:
        return self.mat.apply(v)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if not isinstance(other, LinearMap):
            return NotImplemented
        return compose(self, other)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if not isinstance(other, LinearMap):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        if not isinstance(other, LinearMap):
            return NotImplemented
        _check_dims(self, other)
        return LinearMap(self.mat - other.mat)

    def __neg__(self) -> "LinearMap":
        return LinearMap(-self.mat)

    def __rmul__(self, c) -> "LinearMap":
        if isinstance(c, (int, Fraction)):
            return scale(c, self)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.mat == other.mat

    def __hash__(self) -> int:
        return hash(self.mat)

    def __repr__(self) -> str:
        return f"LinearMap({self.mat!r})"

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def power(self, k: int) -> "LinearMap":
        out = identity(self.dim)
        for _ in range(k):
            out = self @ out
        return out


def _check_dims(p: LinearMap, q: LinearMap) -> None:
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")


def identity(d: int) -> LinearMap:
    return LinearMap(Matrix.identity(d))


def zero(d: int) -> LinearMap:
    return LinearMap(Matrix.zeros(d, d))


def compose(p: LinearMap, q: LinearMap) -> LinearMap:
    """``p ∘ q``: apply ``q`` first."""
    _check_dims(p, q)
    return LinearMap(p.mat @ q.mat)


def add(p: LinearMap, q: LinearMap) -> LinearMap:
    _check_dims(p, q)
    return LinearMap(p.mat + q.mat)


def scale(c: Scalar, p: LinearMap) -> LinearMap:
    return LinearMap(Fraction(c) * p.mat)


@dataclass(frozen=True)
class MapTriple:
    f: LinearMap
    g: LinearMap
    h: LinearMap

    def __post_init__(self):
        if not (self.f.dim == self.g.dim == self.h.dim):
            raise ValueError(
                f"triple dimensions differ: f={self.f.dim}, g={self.g.dim}, h={self.h.dim}")

    @property
    def dim(self) -> int:
        return self.f.dim


@dataclass(frozen=True)
class Violation:
    """First failing instance of an identity on a pair of basis elements.

    ``n`` is the order for higher systems and ``None`` for single triples.
    """

    identity: str
    i: int
    j: int
    lhs: Vec
    rhs: Vec
    n: Optional[int] = None

    def describe(self, basis: Sequence[str] | None = None) -> str:
        a = basis[self.i] if basis else f"e{self.i + 1}"
        b = basis[self.j] if basis else f"e{self.j + 1}"
        where = f"n={self.n}, " if self.n is not None else ""
        lhs = "[" + ", ".join(format_rat(x) for x in self.lhs) + "]"
        rhs = "[" + ", ".join(format_rat(x) for x in self.rhs) + "]"
        return f"{self.identity} fails at {where}(a, b) = ({a}, {b}): lhs={lhs} rhs={rhs}"

    def to_json(self, basis: Sequence[str] | None = None) -> dict:
        out = {
            "identity": self.identity,
            "pair": [basis[self.i], basis[self.j]] if basis else [self.i, self.j],
            "lhs": [format_rat(x) for x in self.lhs],
            "rhs": [format_rat(x) for x in self.rhs],
        }
        if self.n is not None:
            out["n"] = self.n
        return out


def _require_dim(t: MapTriple, alg: "Algebra") -> None:
    if t.dim != alg.dim:
        raise ValueError(f"map dimension {t.dim} does not match algebra dimension {alg.dim}")


def gh_violation(t: MapTriple, alg: "Algebra") -> Optional[Violation]:
    """Return the first basis pair breaking either {g,h}-derivation identity.

    Checked in order per pair: ``f(ab) = g(a)b + a h(b)`` then
    ``f(ab) = h(a)b + a g(b)``. Both are bilinear, so basis pairs suffice.
    """
    _require_dim(t, alg)
    f, g, h = t.f.mat, t.g.mat, t.h.mat
    gcols, hcols = g.columns(), h.columns()
    basis = alg.basis_vectors()
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = f.apply(alg.mul_basis(i, j))
            rhs = vec_add(alg.mul(gcols[i], basis[j]), alg.mul(basis[i], hcols[j]))
            if lhs != rhs:
                return Violation("f(ab) = g(a)b + a h(b)", i, j, lhs, rhs)
            rhs = vec_add(alg.mul(hcols[i], basis[j]), alg.mul(basis[i], gcols[j]))
            if lhs != rhs:
                return Violation("f(ab) = h(a)b + a g(b)", i, j, lhs, rhs)
    return None


def is_gh_derivation(t: MapTriple, alg: "Algebra") -> bool:
    return gh_violation(t, alg) is None


def jordan_gh_violation(t: MapTriple, alg: "Algebra") -> Optional[Violation]:
    """First basis pair breaking ``f(a∘b) = g(a)∘b + a∘h(b)``."""
    _require_dim(t, alg)
    f, g, h = t.f.mat, t.g.mat, t.h.mat
    gcols, hcols = g.columns(), h.columns()
    basis = alg.basis_vectors()
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = f.apply(alg.jordan(basis[i], basis[j]))
            rhs = vec_add(alg.jordan(gcols[i], basis[j]), alg.jordan(basis[i], hcols[j]))
            if lhs != rhs:
                return Violation("f(a∘b) = g(a)∘b + a∘h(b)", i, j, lhs, rhs)
    return None


def is_jordan_gh_derivation(t: MapTriple, alg: "Algebra") -> bool:
    return jordan_gh_violation(t, alg) is None


def left_multiplication(alg: "Algebra", u: Sequence[Fraction]) -> LinearMap:
    """Matrix of ``a ↦ u a``."""
    return LinearMap(Matrix.from_columns([alg.mul(u, e) for e in alg.basis_vectors()]))


def right_multiplication(alg: "Algebra", u: Sequence[Fraction]) -> LinearMap:
    """Matrix of ``a ↦ a u``."""
    return LinearMap(Matrix.from_columns([alg.mul(e, u) for e in alg.basis_vectors()]))


def gh_from_inner_plus_scalar(alg: "Algebra", x: Sequence[Scalar],
                              lam: Scalar, mu: Scalar) -> MapTriple:
    """``(d_x + (λ+μ)I, d_x + λI, d_x + μI)``, a {g,h}-derivation on a unital algebra."""
    from .algebra import inner_derivation

    if alg.unit is None:
        raise ValueError(f"algebra {alg.name!r} has no unit")
    d = inner_derivation(alg, x)
    one = identity(alg.dim)
    lam, mu = Fraction(lam), Fraction(mu)
    return MapTriple(d + scale(lam + mu, one), d + scale(lam, one), d + scale(mu, one))


def one_sided_residual(t: MapTriple, alg: "Algebra") -> tuple[bool, bool]:
    """Which of the two {g,h} identities hold, as ``(first, mirrored)``."""
    _require_dim(t, alg)
    gcols, hcols = t.g.mat.columns(), t.h.mat.columns()
    basis = alg.basis_vectors()
    first = mirrored = True
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = t.f(alg.mul_basis(i, j))
            if first and vec_sub(lhs, vec_add(alg.mul(gcols[i], basis[j]),
                                              alg.mul(basis[i], hcols[j]))) != alg.zero():
                first = False
            if mirrored and vec_sub(lhs, vec_add(alg.mul(hcols[i], basis[j]),
                                                 alg.mul(basis[i], gcols[j]))) != alg.zero():
                mirrored = False
    return first, mirrored
