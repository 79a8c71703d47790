"""Integer compositions and noncommutative polynomials in generators F1, F2, ...

A word ``(r1, ..., ri)`` stands for the composite ``F_r1 F_r2 ... F_ri``, read
as written: ``F_ri`` is applied first. The empty word is the identity.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .exactmath import Matrix, Scalar, format_rat
from .maps import LinearMap

Composition = Tuple[int, ...]
Word = Tuple[int, ...]


def _compositions_by_parts(n: int, k: int) -> Iterator[Composition]:
    # lexicographic order among compositions of n with exactly k parts
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions_by_parts(n - first, k - 1):
            yield (first,) + rest


def compositions(n: int) -> list[Composition]:
    """All 2**(n-1) compositions of ``n``: fewest parts first, then lexicographic."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"compositions needs an integer n >= 1, got {n!r}")
    out: list[Composition] = []
    for k in range(1, n + 1):
        out.extend(_compositions_by_parts(n, k))
    return out


def coefficient(parts: Iterable[int]) -> Fraction:
    """Product of reciprocals of the suffix sums of ``parts``.

    >>> coefficient((1, 1, 2))
    Fraction(1, 24)
    """
    parts = tuple(parts)
    if any((not isinstance(r, int)) or r < 1 for r in parts):
        raise ValueError(f"composition parts must be positive integers: {parts!r}")
    out = Fraction(1)
    suffix = 0
    for r in reversed(parts):
        suffix += r
        out /= suffix
    return out


class NCPolynomial:
    """Finite rational combination of words; zero coefficients are dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Word, Fraction] = {}
        for word, c in items:
            word = tuple(word)
            if any((not isinstance(r, int)) or r < 1 for r in word):
                raise ValueError(f"generator indices must be positive integers: {word!r}")
            acc[word] = acc.get(word, Fraction(0)) + Fraction(c)
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def one(cls) -> "NCPolynomial":
        return cls({(): 1})

    @classmethod
    def generator(cls, r: int) -> "NCPolynomial":
        return cls({(r,): 1})

    @property
    def terms(self) -> Dict[Word, Fraction]:
        return dict(self._terms)

    def coefficient_of(self, word: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        """Terms in lexicographic word order, the order used for rendering."""
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, Fraction(0)) + c
        return NCPolynomial(acc)

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            acc: Dict[Word, Fraction] = {}
            for (u, a), (v, b) in _cartesian(self._terms.items(), other._terms.items()):
                w = u + v
                acc[w] = acc.get(w, Fraction(0)) + a * b
            return NCPolynomial(acc)
        if isinstance(other, (int, Fraction)):
            return NCPolynomial({w: c * other for w, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return NCPolynomial({w: c * v for w, v in self._terms.items()})
        return NotImplemented

    def __repr__(self) -> str:
        return f"NCPolynomial({render_text(self)!r})"

    def __str__(self) -> str:
        return render_text(self)


def render_text(p: NCPolynomial) -> str:
    """E.g. ``"1/6 F1 F1 F1 + 1/6 F1 F2 + 1/3 F2 F1 + 1/3 F3"``; the zero polynomial is ``"0"``."""
    if not len(p):
        return "0"
    pieces = []
    for word, c in p.sorted_terms():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = " ".join(f"F{r}" for r in word) if word else "I"
        body = mono if mag == 1 else f"{format_rat(mag)} {mono}"
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f"{sign} {body}")
    return " ".join(pieces)


def render_json(p: NCPolynomial) -> list[dict]:
    return [{"word": list(w), "coeff": format_rat(c)} for w, c in p.sorted_terms()]


@lru_cache(maxsize=None)
def expand_f(n: int) -> NCPolynomial:
    """Closed-form expansion of the n-th map in the characterizing generators.

    Sum over compositions ``c`` of ``n`` of ``coefficient(c) * F_c``;
    ``expand_f(0)`` is the identity.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"expand_f needs an integer n >= 0, got {n!r}")
    if n == 0:
        return NCPolynomial.one()
    return NCPolynomial((c, coefficient(c)) for c in compositions(n))


@lru_cache(maxsize=None)
def expand_via_recursion(n: int) -> NCPolynomial:
    """Same expansion, built from ``(m+1) f_{m+1} = sum_k F_{k+1} f_{m-k}``."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"expand_via_recursion needs an integer n >= 0, got {n!r}")
    if n == 0:
        return NCPolynomial.one()
    m = n - 1
    acc = NCPolynomial()
    for k in range(m + 1):
        acc = acc + NCPolynomial.generator(k + 1) * expand_via_recursion(m - k)
    return Fraction(1, n) * acc


def evaluate(p: NCPolynomial, assign: Mapping[int, LinearMap], dim: int) -> LinearMap:
    """Substitute maps for generators; unassigned generators are the zero map."""
    for r, m in assign.items():
        if m.dim != dim:
            raise ValueError(f"generator F{r} has dimension {m.dim}, expected {dim}")
    total = Matrix.zeros(dim, dim)
    cache: Dict[Word, Matrix] = {(): Matrix.identity(dim)}

    def word_matrix(w: Word) -> Matrix | None:
        if w in cache:
            return cache[w]
        if w[0] not in assign:
            return None
        rest = word_matrix(w[1:])
        out = None if rest is None else assign[w[0]].mat @ rest
        cache[w] = out
        return out

    for w, c in p.sorted_terms():
        if any(r not in assign for r in w):
            continue
        total = total + c * word_matrix(w)
    return LinearMap(total)
