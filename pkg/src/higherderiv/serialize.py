"""JSON encoding of algebras, maps, systems and characterizing sequences.

Rationals are written as ``"p/q"`` strings (``"p"`` when ``q = 1``).
Decoding errors raise :class:`SchemaError` carrying a JSON path such as
``$.f[1].mat[0][2]``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import SEMIPRIME_VALUES, Algebra, builtin
from .exactmath import Matrix, format_rat, parse_rat
from .higher import CharSequence, HigherSystem
from .maps import LinearMap, MapTriple


class SchemaError(ValueError):
    def __init__(self, path: str, message: str, source: str | None = None,
                 line: int | None = None):
        self.path = path
        self.message = message
        self.source = source
        self.line = line
        where = source or "<input>"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {path}: {message}")


def _rats(xs) -> list[str]:
    return [format_rat(x) for x in xs]


# -- encoders -----------------------------------------------------------------

def algebra_to_json(alg: Algebra) -> dict:
    return {
        "name": alg.name,
        "dim": alg.dim,
        "unit": None if alg.unit is None else _rats(alg.unit),
        "semiprime": alg.semiprime,
        "sc": [[_rats(cell) for cell in row] for row in alg.sc],
    }


def map_to_json(m: LinearMap) -> dict:
    return {"dim": m.dim, "mat": [_rats(row) for row in m.mat.entries]}


def triple_to_json(t: MapTriple) -> dict:
    return {"f": map_to_json(t.f), "g": map_to_json(t.g), "h": map_to_json(t.h)}


def system_to_json(sys: HigherSystem) -> dict:
    return {
        "N": sys.N,
        "f": [map_to_json(m) for m in sys.f],
        "g": [map_to_json(m) for m in sys.g],
        "h": [map_to_json(m) for m in sys.h],
    }


def charseq_to_json(cs: CharSequence) -> dict:
    """``F[0]`` is ``F_1``; arrays are indexed from 1 in the mathematical sense."""
    return {
        "N": cs.N,
        "dim": cs.dim,
        "F": [map_to_json(m) for m in cs.F],
        "G": [map_to_json(m) for m in cs.G],
        "H": [map_to_json(m) for m in cs.H],
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


# -- decoders -----------------------------------------------------------------

def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise SchemaError(path, message)


def _field(obj: Any, key: str, path: str) -> Any:
    _expect(isinstance(obj, dict), path, "expected an object")
    _expect(key in obj, path, f"missing key {key!r}")
    return obj[key]


def _int(x: Any, path: str) -> int:
    _expect(isinstance(x, int) and not isinstance(x, bool), path, "expected an integer")
    return x


def _rat(x: Any, path: str):
    try:
        return parse_rat(x)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _rat_list(xs: Any, n: int, path: str) -> list:
    _expect(isinstance(xs, list), path, "expected an array")
    _expect(len(xs) == n, path, f"expected {n} entries, got {len(xs)}")
    return [_rat(x, f"{path}[{i}]") for i, x in enumerate(xs)]


def algebra_from_json(obj: Any, path: str = "$") -> Algebra:
    name = _field(obj, "name", path)
    _expect(isinstance(name, str), f"{path}.name", "expected a string")
    d = _int(_field(obj, "dim", path), f"{path}.dim")
    _expect(d >= 1, f"{path}.dim", "dimension must be positive")
    unit = _field(obj, "unit", path)
    if unit is not None:
        unit = _rat_list(unit, d, f"{path}.unit")
    semiprime = _field(obj, "semiprime", path)
    _expect(semiprime in SEMIPRIME_VALUES, f"{path}.semiprime",
            f"expected one of {list(SEMIPRIME_VALUES)}")
    sc = _field(obj, "sc", path)
    _expect(isinstance(sc, list) and len(sc) == d, f"{path}.sc", f"expected {d} rows")
    tensor = []
    for i, row in enumerate(sc):
        _expect(isinstance(row, list) and len(row) == d, f"{path}.sc[{i}]", f"expected {d} cells")
        tensor.append([_rat_list(cell, d, f"{path}.sc[{i}][{j}]") for j, cell in enumerate(row)])
    basis = obj.get("basis")
    if basis is not None:
        _expect(isinstance(basis, list) and len(basis) == d
                and all(isinstance(b, str) for b in basis),
                f"{path}.basis", f"expected {d} strings")
    try:
        return Algebra(name, tensor, unit=unit, semiprime=semiprime, basis=basis)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def map_from_json(obj: Any, path: str = "$", dim: int | None = None) -> LinearMap:
    d = _int(_field(obj, "dim", path), f"{path}.dim")
    _expect(d >= 1, f"{path}.dim", "dimension must be positive")
    if dim is not None:
        _expect(d == dim, f"{path}.dim", f"expected dimension {dim}, got {d}")
    mat = _field(obj, "mat", path)
    _expect(isinstance(mat, list) and len(mat) == d, f"{path}.mat", f"expected {d} rows")
    rows = [_rat_list(r, d, f"{path}.mat[{i}]") for i, r in enumerate(mat)]
    return LinearMap(Matrix(rows))


def _map_list(obj: Any, key: str, count: int, path: str, dim: int | None) -> list[LinearMap]:
    xs = _field(obj, key, path)
    p = f"{path}.{key}"
    _expect(isinstance(xs, list), p, "expected an array")
    _expect(len(xs) == count, p, f"expected {count} maps, got {len(xs)}")
    out = []
    for i, m in enumerate(xs):
        out.append(map_from_json(m, f"{p}[{i}]", dim))
        dim = out[-1].dim
    return out


def triple_from_json(obj: Any, path: str = "$") -> MapTriple:
    f = map_from_json(_field(obj, "f", path), f"{path}.f")
    g = map_from_json(_field(obj, "g", path), f"{path}.g", f.dim)
    h = map_from_json(_field(obj, "h", path), f"{path}.h", f.dim)
    return MapTriple(f, g, h)


def system_from_json(obj: Any, path: str = "$") -> HigherSystem:
    N = _int(_field(obj, "N", path), f"{path}.N")
    _expect(N >= 0, f"{path}.N", "truncation order must be >= 0")
    f = _map_list(obj, "f", N + 1, path, None)
    g = _map_list(obj, "g", N + 1, path, f[0].dim)
    h = _map_list(obj, "h", N + 1, path, f[0].dim)
    try:
        return HigherSystem(f, g, h)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def charseq_from_json(obj: Any, path: str = "$") -> CharSequence:
    N = _int(_field(obj, "N", path), f"{path}.N")
    _expect(N >= 0, f"{path}.N", "length must be >= 0")
    dim = obj.get("dim") if isinstance(obj, dict) else None
    if dim is not None:
        dim = _int(dim, f"{path}.dim")
    F = _map_list(obj, "F", N, path, dim)
    if dim is None:
        _expect(N > 0, path, "an empty sequence needs an explicit 'dim'")
        dim = F[0].dim
    G = _map_list(obj, "G", N, path, dim)
    H = _map_list(obj, "H", N, path, dim)
    return CharSequence(dim, F, G, H)


# -- files --------------------------------------------------------------------

def load_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError("$", f"cannot read file: {exc.strerror}", source=str(p)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg} (column {exc.colno})",
                          source=str(p), line=exc.lineno) from None


def _load(path, decoder):
    obj = load_json(path)
    try:
        return decoder(obj)
    except SchemaError as exc:
        raise SchemaError(exc.path, exc.message, source=str(path)) from None


def load_algebra(name_or_path: str) -> Algebra:
    """Builtin name (``M2``, ``T2``, ``dual``...) or path to an algebra JSON file."""
    if not Path(name_or_path).exists():
        try:
            return builtin(name_or_path)
        except KeyError:
            pass
    return _load(name_or_path, algebra_from_json)


def load_system(path: str | Path) -> HigherSystem:
    return _load(path, system_from_json)


def load_charseq(path: str | Path) -> CharSequence:
    return _load(path, charseq_from_json)


def write_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")
