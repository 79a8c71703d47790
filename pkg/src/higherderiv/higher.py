"""Truncated higher {g_n,h_n}-derivations and their characterizing sequences.

A :class:`HigherSystem` holds ``f_n, g_n, h_n`` for ``n = 0..N`` with the
index-0 maps equal to the identity. A :class:`CharSequence` holds
``F_n, G_n, H_n`` for ``n = 1..N`` (``F_0 = G_0 = H_0 = 0`` implicitly).
The two are related by ``(n+1) f_{n+1} = sum_{k=0}^{n} F_{k+1} f_{n-k}``
and the same recursion for ``g`` and ``h``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Optional, Sequence, Tuple

from .algebra import Algebra
from .exactmath import Matrix, mat_lincomb, nullspace
from .maps import (LinearMap, MapTriple, Violation, gh_from_inner_plus_scalar, gh_violation,
                   identity, scale)
from .symbolic import coefficient, compositions

__all__ = [
    "CharSequence", "HigherSystem", "PreconditionError",
    "build_from_char", "closed_form_from_char", "extract_char",
    "higher_violation", "is_higher_derivation",
    "is_jordan_higher_derivation", "jordan_higher_violation",
    "jordan_perturbation_basis", "ordinary_higher", "random_char_sequence",
    "search_jordan_counterexample",
]


class PreconditionError(ValueError):
    """An input failed the identity an operation requires.

    ``index`` is the first offending order ``n``; ``violation`` pins the
    failing basis pair when one is known.
    """

    def __init__(self, message: str, index: Optional[int] = None,
                 violation: Optional[Violation] = None):
        super().__init__(message)
        self.index = index
        self.violation = violation


@dataclass(frozen=True)
class HigherSystem:
    f: Tuple[LinearMap, ...]
    g: Tuple[LinearMap, ...]
    h: Tuple[LinearMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        object.__setattr__(self, "g", tuple(self.g))
        object.__setattr__(self, "h", tuple(self.h))
        if not self.f or not (len(self.f) == len(self.g) == len(self.h)):
            raise ValueError("f, g, h must be nonempty and of equal length")
        d = self.f[0].dim
        one = identity(d)
        for name, seq in (("f", self.f), ("g", self.g), ("h", self.h)):
            if any(m.dim != d for m in seq):
                raise ValueError(f"maps in {name} do not share dimension {d}")
            if seq[0] != one:
                raise ValueError(f"{name}_0 must be the identity map")

    @property
    def N(self) -> int:
        return len(self.f) - 1

    @property
    def dim(self) -> int:
        return self.f[0].dim

    def triple(self, n: int) -> MapTriple:
        return MapTriple(self.f[n], self.g[n], self.h[n])

    def truncate(self, N: int) -> "HigherSystem":
        if not 0 <= N <= self.N:
            raise ValueError(f"cannot truncate order-{self.N} system to {N}")
        return HigherSystem(self.f[:N + 1], self.g[:N + 1], self.h[:N + 1])

    @classmethod
    def trivial(cls, dim: int, N: int) -> "HigherSystem":
        one, z = identity(dim), LinearMap(Matrix.zeros(dim, dim))
        seq = (one,) + (z,) * N
        return cls(seq, seq, seq)


@dataclass(frozen=True)
class CharSequence:
    """``F[n-1], G[n-1], H[n-1]`` store ``F_n, G_n, H_n`` for ``n = 1..N``."""

    dim: int
    F: Tuple[LinearMap, ...] = ()
    G: Tuple[LinearMap, ...] = ()
    H: Tuple[LinearMap, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "F", tuple(self.F))
        object.__setattr__(self, "G", tuple(self.G))
        object.__setattr__(self, "H", tuple(self.H))
        if not (len(self.F) == len(self.G) == len(self.H)):
            raise ValueError("F, G, H must have equal length")
        for name, seq in (("F", self.F), ("G", self.G), ("H", self.H)):
            if any(m.dim != self.dim for m in seq):
                raise ValueError(f"maps in {name} do not share dimension {self.dim}")

    @property
    def N(self) -> int:
        return len(self.F)

    def triple(self, n: int) -> MapTriple:
        if not 1 <= n <= self.N:
            raise IndexError(f"characterizing index {n} outside 1..{self.N}")
        return MapTriple(self.F[n - 1], self.G[n - 1], self.H[n - 1])

    def truncate(self, N: int) -> "CharSequence":
        if not 0 <= N <= self.N:
            raise ValueError(f"cannot truncate length-{self.N} sequence to {N}")
        return CharSequence(self.dim, self.F[:N], self.G[:N], self.H[:N])

    @classmethod
    def from_triples(cls, dim: int, triples: Sequence[MapTriple]) -> "CharSequence":
        return cls(dim, [t.f for t in triples], [t.g for t in triples], [t.h for t in triples])


# -- checkers ----------------------------------------------------------------

def _require_dim(sys: HigherSystem, alg: Algebra) -> None:
    if sys.dim != alg.dim:
        raise ValueError(f"system dimension {sys.dim} does not match algebra dimension {alg.dim}")


class _Images:
    """Memoized basis images and pairwise products for a system."""

    def __init__(self, sys: HigherSystem, alg: Algebra):
        self.alg = alg
        self.cols = {
            "g": [m.mat.columns() for m in sys.g],
            "h": [m.mat.columns() for m in sys.h],
        }
        self._prods: Dict[tuple, tuple] = {}

    def prod(self, left: str, a: int, i: int, right: str, b: int, j: int):
        key = (left, a, i, right, b, j)
        out = self._prods.get(key)
        if out is None:
            out = self.alg.mul(self.cols[left][a][i], self.cols[right][b][j])
            self._prods[key] = out
        return out


def _sum_vecs(vs, d):
    acc = [Fraction(0)] * d
    for v in vs:
        for k, x in enumerate(v):
            if x:
                acc[k] += x
    return tuple(acc)


def higher_violation(sys: HigherSystem, alg: Algebra) -> Optional[Violation]:
    """First ``(n, e_i, e_j)`` breaking either product identity, smallest ``n`` first.

    Identities: ``f_n(ab) = sum_k g_{n-k}(a) h_k(b)`` and
    ``f_n(ab) = sum_k h_{n-k}(a) g_k(b)``.
    """
    _require_dim(sys, alg)
    d = alg.dim
    im = _Images(sys, alg)
    for n in range(sys.N + 1):
        fn = sys.f[n].mat
        for i in range(d):
            for j in range(d):
                lhs = fn.apply(alg.mul_basis(i, j))
                rhs = _sum_vecs((im.prod("g", n - k, i, "h", k, j) for k in range(n + 1)), d)
                if lhs != rhs:
                    return Violation("f_n(ab) = Σ g_{n-k}(a) h_k(b)", i, j, lhs, rhs, n)
                rhs = _sum_vecs((im.prod("h", n - k, i, "g", k, j) for k in range(n + 1)), d)
                if lhs != rhs:
                    return Violation("f_n(ab) = Σ h_{n-k}(a) g_k(b)", i, j, lhs, rhs, n)
    return None


def is_higher_derivation(sys: HigherSystem, alg: Algebra) -> bool:
    return higher_violation(sys, alg) is None


def jordan_higher_violation(sys: HigherSystem, alg: Algebra) -> Optional[Violation]:
    """First ``(n, e_i, e_j)`` breaking ``f_n(a∘b) = sum_k g_{n-k}(a)∘h_k(b)``.

    The mirrored form ``sum_k h_{n-k}(a)∘g_k(b)`` is checked as well; if it
    ever disagrees with the first form that is reported too.
    """
    _require_dim(sys, alg)
    d = alg.dim
    im = _Images(sys, alg)
    e = alg.basis_vectors()
    for n in range(sys.N + 1):
        fn = sys.f[n].mat
        for i in range(d):
            for j in range(d):
                lhs = fn.apply(alg.jordan(e[i], e[j]))
                rhs = _sum_vecs(
                    (v for k in range(n + 1)
                     for v in (im.prod("g", n - k, i, "h", k, j), im.prod("h", k, j, "g", n - k, i))),
                    d)
                if lhs != rhs:
                    return Violation("f_n(a∘b) = Σ g_{n-k}(a)∘h_k(b)", i, j, lhs, rhs, n)
                mirrored = _sum_vecs(
                    (v for k in range(n + 1)
                     for v in (im.prod("h", n - k, i, "g", k, j), im.prod("g", k, j, "h", n - k, i))),
                    d)
                if lhs != mirrored:
                    return Violation("f_n(a∘b) = Σ h_{n-k}(a)∘g_k(b)", i, j, lhs, mirrored, n)
    return None


def is_jordan_higher_derivation(sys: HigherSystem, alg: Algebra) -> bool:
    return jordan_higher_violation(sys, alg) is None


# -- constructions -----------------------------------------------------------

def _recurse(gens: Sequence[LinearMap], dim: int) -> list[LinearMap]:
    seq = [identity(dim)]
    for n in range(len(gens)):
        terms = [(Fraction(1, n + 1), gens[k].mat @ seq[n - k].mat) for k in range(n + 1)]
        seq.append(LinearMap(mat_lincomb(terms, (dim, dim))))
    return seq


def build_from_char(cs: CharSequence, alg: Algebra, check: bool = True) -> HigherSystem:
    """Rebuild ``f_n, g_n, h_n`` from a characterizing sequence by the recursion.

    With ``check`` every ``(F_n, G_n, H_n)`` must be a {G_n,H_n}-derivation;
    the first failing index raises :class:`PreconditionError`.
    """
    if cs.dim != alg.dim:
        raise ValueError(f"sequence dimension {cs.dim} does not match algebra dimension {alg.dim}")
    if check:
        for n in range(1, cs.N + 1):
            v = gh_violation(cs.triple(n), alg)
            if v is not None:
                raise PreconditionError(
                    f"(F_{n}, G_{n}, H_{n}) is not a {{G,H}}-derivation: {v.describe(alg.basis)}",
                    index=n, violation=v)
    return HigherSystem(_recurse(cs.F, cs.dim), _recurse(cs.G, cs.dim), _recurse(cs.H, cs.dim))


def _unrecurse(seq: Sequence[LinearMap]) -> list[LinearMap]:
    # F_n = n f_n - sum_{k=0}^{n-2} F_{k+1} f_{n-1-k}
    dim = seq[0].dim
    gens: list[LinearMap] = []
    for n in range(1, len(seq)):
        terms = [(n, seq[n].mat)]
        terms += [(-1, gens[k].mat @ seq[n - 1 - k].mat) for k in range(n - 1)]
        gens.append(LinearMap(mat_lincomb(terms, (dim, dim))))
    return gens


def extract_char(sys: HigherSystem, alg: Algebra, check: bool = True) -> CharSequence:
    """Characterizing sequence of a higher {g_n,h_n}-derivation.

    Inverse of :func:`build_from_char`. With ``check`` the system is verified
    first and a :class:`PreconditionError` names the first failing order.
    """
    _require_dim(sys, alg)
    if check:
        v = higher_violation(sys, alg)
        if v is not None:
            raise PreconditionError(
                f"system is not a higher {{g_n,h_n}}-derivation: {v.describe(alg.basis)}",
                index=v.n, violation=v)
    return CharSequence(sys.dim, _unrecurse(sys.f), _unrecurse(sys.g), _unrecurse(sys.h))


def _closed_form(gens: Sequence[LinearMap], n: int, dim: int) -> LinearMap:
    if n == 0:
        return identity(dim)
    cache: Dict[tuple, Matrix] = {}

    def word(w):
        if w not in cache:
            m = gens[w[0] - 1].mat
            cache[w] = m if len(w) == 1 else m @ word(w[1:])
        return cache[w]

    terms = [(coefficient(c), word(c)) for c in compositions(n)]
    return LinearMap(mat_lincomb(terms, (dim, dim)))


def closed_form_from_char(cs: CharSequence, n: int) -> Tuple[LinearMap, LinearMap, LinearMap]:
    """``(f_n, g_n, h_n)`` summed directly over the compositions of ``n``.

    Each composition ``(r_1..r_i)`` contributes ``a_{r_1..r_i} F_{r_1}...F_{r_i}``
    with ``a`` the product of reciprocal suffix sums.
    """
    if not 0 <= n <= cs.N:
        raise ValueError(f"order {n} outside 0..{cs.N}")
    return (_closed_form(cs.F, n, cs.dim), _closed_form(cs.G, n, cs.dim),
            _closed_form(cs.H, n, cs.dim))


def ordinary_higher(t: MapTriple, alg: Algebra, N: int) -> HigherSystem:
    """``f_n = f^n/n!`` (likewise g, h) from a single {g,h}-derivation."""
    if N < 0:
        raise ValueError("truncation order must be >= 0")
    v = gh_violation(t, alg)
    if v is not None:
        raise PreconditionError(f"triple is not a {{g,h}}-derivation: {v.describe(alg.basis)}",
                                violation=v)

    def powers(m: LinearMap) -> list[LinearMap]:
        out = [identity(m.dim)]
        for n in range(1, N + 1):
            out.append(m @ out[-1])
        return [scale(Fraction(1, factorial(n)), p) for n, p in enumerate(out)]

    return HigherSystem(powers(t.f), powers(t.g), powers(t.h))


# -- randomized generation and the Jordan counterexample search ----------------

def _random_rational(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def random_char_sequence(alg: Algebra, N: int, rng: random.Random, span: int = 3) -> CharSequence:
    """Random sequence of inner-plus-scalar {g,h}-derivation triples.

    ``x`` has integer entries in ``[-span, span]``; ``λ, μ`` are small rationals.
    Non-unital algebras get plain inner derivations.
    """
    triples = []
    for _ in range(N):
        x = [rng.randint(-span, span) for _ in range(alg.dim)]
        if alg.unit is None:
            from .algebra import inner_derivation
            d = inner_derivation(alg, x)
            triples.append(MapTriple(d, d, d))
        else:
            triples.append(gh_from_inner_plus_scalar(alg, x, _random_rational(rng, span),
                                                     _random_rational(rng, span)))
    return CharSequence.from_triples(alg.dim, triples)


@lru_cache(maxsize=32)
def jordan_perturbation_basis(alg: Algebra) -> Tuple[MapTriple, ...]:
    """Basis of all triples ``(P, Q, R)`` with ``P(a∘b) = Q(a)∘b + a∘R(b)``.

    Adding such a triple at the top order of a higher system keeps the
    Jordan identities intact, so these are the natural search directions.
    """
    d = alg.dim
    dd = d * d
    e = alg.basis_vectors()
    jord = [[alg.jordan(e[i], e[j]) for j in range(d)] for i in range(d)]
    rows = []
    # unknowns: P[r][c] -> r*d + c, Q -> dd + r*d + c, R -> 2dd + r*d + c
    for i in range(d):
        for j in range(d):
            for k in range(d):
                row = [Fraction(0)] * (3 * dd)
                for c, x in enumerate(jord[i][j]):
                    if x:
                        row[k * d + c] += x
                for r in range(d):
                    y = jord[r][j][k]
                    if y:
                        row[dd + r * d + i] -= y
                    z = jord[i][r][k]
                    if z:
                        row[2 * dd + r * d + j] -= z
                rows.append(row)
    out = []
    for v in nullspace(rows, 3 * dd):
        mats = [Matrix([v[off + r * d: off + (r + 1) * d] for r in range(d)])
                for off in (0, dd, 2 * dd)]
        out.append(MapTriple(*(LinearMap(m) for m in mats)))
    return tuple(out)


def _perturbation(alg: Algebra, rng: random.Random) -> MapTriple:
    d = alg.dim
    basis = jordan_perturbation_basis(alg)
    if basis and rng.random() < 0.75:
        terms = [(rng.randint(-2, 2), t) for t in basis]
        shape = (d, d)
        return MapTriple(
            LinearMap(mat_lincomb([(c, t.f.mat) for c, t in terms], shape)),
            LinearMap(mat_lincomb([(c, t.g.mat) for c, t in terms], shape)),
            LinearMap(mat_lincomb([(c, t.h.mat) for c, t in terms], shape)))

    def noise() -> LinearMap:
        return LinearMap(Matrix([[rng.choice((-1, 0, 0, 0, 1)) for _ in range(d)]
                                 for _ in range(d)]))
    return MapTriple(noise(), noise(), noise())


def _trial(alg: Algebra, N: int, seed: int, i: int) -> Optional[HigherSystem]:
    rng = random.Random(f"{seed}:{i}")
    base = build_from_char(random_char_sequence(alg, N, rng), alg, check=False)
    m = rng.randint(1, N)
    p = _perturbation(alg, rng)
    f, g, h = list(base.f), list(base.g), list(base.h)
    f[m], g[m], h[m] = f[m] + p.f, g[m] + p.g, h[m] + p.h
    cand = HigherSystem(f, g, h)
    if is_jordan_higher_derivation(cand, alg) and not is_higher_derivation(cand, alg):
        return cand
    return None


def search_jordan_counterexample(alg: Algebra, N: int, trials: int,
                                 seed: int) -> Optional[HigherSystem]:
    """Look for a system that is Jordan-higher but not higher.

    Trial ``i`` draws a random valid system from ``random.Random(f"{seed}:{i}")``,
    perturbs one order, and keeps it if only the Jordan identities survive.
    On a semiprime algebra no witness should exist.
    """
    if N < 1 or trials <= 0:
        return None
    for i in range(trials):
        found = _trial(alg, N, seed, i)
        if found is not None:
            return found
    return None
