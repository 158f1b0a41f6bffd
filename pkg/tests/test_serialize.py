import json

import pytest

from abelianj import serialize
from abelianj.assoc import CommAssocAlgebra
from abelianj.lie import LieAlgebra
from abelianj.linalg import rat, vec
from abelianj.serialize import (
    InputError, ValidationFailure, algebra_from_dict, algebra_to_dict, emit,
    instance_from_dict, instance_to_dict, load_algebra, load_instance,
    load_matrix, matrix_from_file_dict, parse_scalar,
)


def minimal_instance(**overrides):
    data = {
        "dim": 2,
        "basis": ["e1", "e2"],
        "brackets": [{"pair": [0, 1], "value": {"1": "1"}}],
    }
    data.update(overrides)
    return data


def test_parse_scalar_accepts_ints_and_fractions():
    assert parse_scalar(3) == rat(3)
    assert parse_scalar("-7/2") == rat(-7, 2)
    assert parse_scalar("0") == 0


def test_parse_scalar_rejections():
    for bad in (True, False, 1.5, "1/0", "seven", None, [1]):
        with pytest.raises(InputError):
            parse_scalar(bad)
    # decimal strings are exact rationals, not floats, so they parse
    assert parse_scalar("0.5") == rat(1, 2)


def test_round_trip_is_byte_identical(fixtures_dir):
    for path in sorted(fixtures_dir.glob("*.json")):
        text = path.read_text(encoding="utf-8")
        data = json.loads(text)
        if "products" in data:
            again = emit(algebra_to_dict(algebra_from_dict(data)))
        else:
            inst = instance_from_dict(data)
            again = emit(instance_to_dict(inst.algebra, inst.j, inst.metric))
        assert again == text, path.name


def test_header_validation():
    with pytest.raises(InputError):
        instance_from_dict([1, 2])
    with pytest.raises(InputError):
        instance_from_dict(minimal_instance(extra=1))
    with pytest.raises(InputError):
        instance_from_dict({"basis": [], "brackets": []})
    with pytest.raises(InputError):
        instance_from_dict(minimal_instance(dim=True))
    with pytest.raises(InputError):
        instance_from_dict(minimal_instance(dim=-1))
    with pytest.raises(InputError):
        instance_from_dict(minimal_instance(basis=["x", "x"]))
    with pytest.raises(InputError):
        instance_from_dict(minimal_instance(basis=["x"]))


def test_bracket_entry_validation():
    cases = [
        [{"pair": [0, 1]}],
        [{"pair": [0], "value": {}}],
        [{"pair": [1, 0], "value": {}}],
        [{"pair": [0, 2], "value": {}}],
        [{"pair": [0, True], "value": {}}],
        [{"pair": [0, 1], "value": {"1": "1"}},
         {"pair": [0, 1], "value": {"1": "2"}}],
        [{"pair": [0, 1], "value": {"two": "1"}}],
        [{"pair": [0, 1], "value": {"5": "1"}}],
        [{"pair": [0, 1], "value": "1"}],
    ]
    for brackets in cases:
        with pytest.raises(InputError):
            instance_from_dict(minimal_instance(brackets=brackets))


def test_jacobi_failure_is_validation():
    data = minimal_instance(
        dim=3, basis=["e1", "e2", "e3"],
        brackets=[{"pair": [0, 1], "value": {"0": "1"}},
                  {"pair": [0, 2], "value": {"1": "1"}},
                  {"pair": [1, 2], "value": {"0": "1"}}])
    with pytest.raises(ValidationFailure) as exc:
        instance_from_dict(data)
    assert "Jacobi" in str(exc.value)


def test_j_failure_channels():
    # well-formed matrix that is not a complex structure: validation failure
    data = minimal_instance(J=[["1", "0"], ["0", "1"]])
    with pytest.raises(ValidationFailure):
        instance_from_dict(data)
    # malformed J array: input error
    with pytest.raises(InputError):
        instance_from_dict(minimal_instance(J=[["0", "-1"]]))
    with pytest.raises(InputError):
        instance_from_dict(minimal_instance(J=[["0", "x"], ["1", "0"]]))


def test_metric_failure_channels():
    good_j = [["0", "-1"], ["1", "0"]]
    data = {"dim": 2, "basis": ["e1", "e2"], "brackets": [],
            "J": good_j, "metric": [["1", "2"], ["2", "1"]]}
    with pytest.raises(ValidationFailure):
        instance_from_dict(data)
    data["metric"] = [["1", "0"], ["0"]]
    with pytest.raises(InputError):
        instance_from_dict(data)
    # SPD but not J-compatible
    data2 = {"dim": 4, "basis": ["e1", "e2", "e3", "e4"], "brackets": [],
             "J": [["0", "0", "-1", "0"], ["0", "0", "0", "-1"],
                   ["1", "0", "0", "0"], ["0", "1", "0", "0"]],
             "metric": [["1", "0", "0", "0"], ["0", "1", "0", "0"],
                        ["0", "0", "2", "0"], ["0", "0", "0", "2"]]}
    with pytest.raises(ValidationFailure) as exc:
        instance_from_dict(data2)
    assert "compatible" in str(exc.value)


def test_instance_triple_requires_both_parts():
    inst = instance_from_dict(minimal_instance())
    assert inst.j is None and inst.metric is None
    with pytest.raises(InputError):
        inst.triple()
    with_j = instance_from_dict(minimal_instance(
        dim=2, brackets=[], J=[["0", "-1"], ["1", "0"]]))
    with pytest.raises(InputError):
        with_j.triple()


def test_algebra_round_trip_and_failure():
    a = CommAssocAlgebra(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 1): {0: -1}})
    data = algebra_to_dict(a)
    assert algebra_from_dict(data) == a
    bad = {"dim": 2, "basis": ["x", "y"],
           "products": [{"pair": [0, 0], "value": {"1": "1"}},
                        {"pair": [1, 1], "value": {"0": "1"}}]}
    with pytest.raises(ValidationFailure):
        algebra_from_dict(bad)
    with pytest.raises(InputError):
        algebra_from_dict({"dim": 2, "products": [], "brackets": []})


def test_products_allow_diagonal_pairs():
    data = {"dim": 1, "basis": ["t"],
            "products": [{"pair": [0, 0], "value": {"0": "1"}}]}
    assert algebra_from_dict(data).m[0][0] == vec((1,))


def test_matrix_file_parsing(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"matrix": [["1", "1/2"], ["0", "1"]]}),
                    encoding="utf-8")
    m = load_matrix(str(path))
    assert m.rows[0][1] == rat(1, 2)
    with pytest.raises(InputError):
        matrix_from_file_dict({"rows": []})
    with pytest.raises(InputError):
        matrix_from_file_dict({"matrix": [["1", "2"]]})


def test_load_errors(tmp_path):
    with pytest.raises(InputError):
        load_instance(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        load_algebra(str(bad))


def test_save_and_reload(tmp_path):
    g = LieAlgebra(2, {(0, 1): {1: rat(1, 3)}})
    path = tmp_path / "inst.json"
    serialize.save_instance(str(path), g)
    inst = load_instance(str(path))
    assert inst.algebra == g
    assert "1/3" in path.read_text(encoding="utf-8")
