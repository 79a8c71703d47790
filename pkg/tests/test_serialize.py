import json
import random
from fractions import Fraction

import pytest

from higherderiv import (build_from_char, dual_numbers, matrix_algebra, random_char_sequence,
                         upper_triangular)
from higherderiv.serialize import (SchemaError, algebra_from_json, algebra_to_json,
                                   charseq_from_json, charseq_to_json, load_algebra,
                                   load_system, map_from_json, map_to_json, system_from_json,
                                   system_to_json, triple_from_json, triple_to_json, write_json)
from higherderiv.maps import gh_from_inner_plus_scalar


@pytest.mark.parametrize("alg", [matrix_algebra(2), upper_triangular(3), dual_numbers()])
def test_algebra_roundtrip(alg):
    obj = algebra_to_json(alg)
    assert set(obj) == {"name", "dim", "unit", "semiprime", "sc"}
    assert all(isinstance(x, str) for x in obj["unit"])
    assert algebra_from_json(json.loads(json.dumps(obj))) == alg


def test_rationals_render_as_strings():
    alg = matrix_algebra(2)
    t = gh_from_inner_plus_scalar(alg, [1, 0, 0, 0], Fraction(1, 2), 0)
    obj = map_to_json(t.g)
    assert obj["dim"] == 4
    assert obj["mat"][0][0] == "1/2"
    assert map_from_json(obj) == t.g
    assert triple_from_json(triple_to_json(t)) == t


def test_system_and_charseq_roundtrip():
    alg = matrix_algebra(2)
    cs = random_char_sequence(alg, 3, random.Random(1))
    s = build_from_char(cs, alg)
    assert system_from_json(json.loads(json.dumps(system_to_json(s)))) == s
    obj = charseq_to_json(cs)
    assert len(obj["F"]) == 3
    assert charseq_from_json(obj) == cs


def test_empty_charseq_needs_dim():
    assert charseq_from_json({"N": 0, "dim": 4, "F": [], "G": [], "H": []}).dim == 4
    with pytest.raises(SchemaError):
        charseq_from_json({"N": 0, "F": [], "G": [], "H": []})


@pytest.mark.parametrize("mutate, path", [
    (lambda o: o.pop("N"), "$"),
    (lambda o: o["f"][1]["mat"][0].__setitem__(2, "1/0"), "$.f[1].mat[0][2]"),
    (lambda o: o["g"][0]["mat"].pop(), "$.g[0].mat"),
    (lambda o: o.__setitem__("N", "two"), "$.N"),
    (lambda o: o["h"].pop(), "$.h"),
])
def test_schema_errors_carry_paths(mutate, path):
    alg = matrix_algebra(2)
    obj = system_to_json(build_from_char(random_char_sequence(alg, 2, random.Random(0)), alg))
    mutate(obj)
    with pytest.raises(SchemaError) as info:
        system_from_json(obj)
    assert info.value.path == path


def test_bad_json_reports_file_and_line(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{\n  "N": 1,\n  "f": [\n}\n')
    with pytest.raises(SchemaError) as info:
        load_system(p)
    assert info.value.line == 4
    assert str(p) in str(info.value)


def test_load_algebra_by_name_or_file(tmp_path):
    assert load_algebra("M2") == matrix_algebra(2)
    p = tmp_path / "t2.json"
    write_json(algebra_to_json(upper_triangular(2)), p)
    assert load_algebra(str(p)) == upper_triangular(2)
    with pytest.raises(SchemaError):
        load_algebra(str(tmp_path / "missing.json"))


def test_bad_unit_rejected():
    obj = algebra_to_json(dual_numbers())
    obj["unit"] = ["0", "1"]
    with pytest.raises(SchemaError):
        algebra_from_json(obj)
