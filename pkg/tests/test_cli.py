import json

import pytest

from abelianj import serialize
from abelianj.cli import main
from abelianj.constructions import standard_complex_structure
from abelianj.hermitian import InnerProduct
from abelianj.lie import LieAlgebra


def fx(fixtures_dir, name):
    return str(fixtures_dir / name)


def test_check_human_output(fixtures_dir, capsys):
    code = main(["check", fx(fixtures_dir, "aff_c_j1.json")])
    out = capsys.readouterr().out
    assert code == 0
    assert "jacobi: ok" in out
    assert "unimodular: no" in out
    assert "integrable: yes  abelian: yes" in out
    assert "kahler: no" in out
    assert "curvature norm^2: 6" in out
    assert "curvature norm^2: 12" in out


def test_check_json_output(fixtures_dir, capsys):
    code = main(["check", "--json", fx(fixtures_dir, "aff_c_j1.json")])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert data["dim"] == 4
    assert data["series"] == {"solvable": True, "nilpotent": False, "2step": True}
    assert data["J"]["abelian"] and data["J"]["integrable"]
    assert all(data["J"]["report"].values())
    assert data["metric"]["kahler"] is False
    assert data["connections"]["first_canonical"]["curvature_norm_sq"] == "6"
    assert data["connections"]["levi_civita"]["flags"]["is_metric"] is True


def test_check_require_pass_and_fail(fixtures_dir, capsys):
    assert main(["check", fx(fixtures_dir, "aff_c_j1.json"),
                 "--require", "solvable", "--require", "2step"]) == 0
    assert main(["check", fx(fixtures_dir, "aff_c_j1.json"),
                 "--require", "kahler"]) == 1
    out = capsys.readouterr().out
    assert "require kahler: FAIL" in out
    assert main(["check", fx(fixtures_dir, "kahler_two_blocks.json"),
                 "--require", "kahler", "--require", "abelian-j"]) == 0
    assert main(["check", fx(fixtures_dir, "nilpotent_step3.json"),
                 "--require", "nilpotent"]) == 0
    assert main(["check", fx(fixtures_dir, "aff_c_j1.json"),
                 "--require", "nilpotent"]) == 1


def test_check_missing_parts(tmp_path, capsys):
    bare = tmp_path / "bare.json"
    serialize.save_instance(str(bare), LieAlgebra(2, {(0, 1): {1: 1}}))
    assert main(["check", str(bare)]) == 0
    assert main(["check", str(bare), "--complex"]) == 2
    assert main(["check", str(bare), "--metric"]) == 2
    assert main(["check", str(bare), "--require", "abelian-j"]) == 2
    capsys.readouterr()


def test_check_bad_files(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert main(["check", str(missing)]) == 2
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{", encoding="utf-8")
    assert main(["check", str(garbled)]) == 2
    jacobi = tmp_path / "jacobi.json"
    jacobi.write_text(json.dumps({
        "dim": 3, "basis": ["e1", "e2", "e3"],
        "brackets": [{"pair": [0, 1], "value": {"0": "1"}},
                     {"pair": [0, 2], "value": {"1": "1"}},
                     {"pair": [1, 2], "value": {"0": "1"}}]}), encoding="utf-8")
    assert main(["check", str(jacobi)]) == 1
    err = capsys.readouterr().err
    assert "validation failed" in err


def test_construct_aff_round_trip(fixtures_dir, tmp_path, capsys):
    out_path = tmp_path / "aff.json"
    code = main(["construct", "aff",
                 "--algebra", fx(fixtures_dir, "prod_complex.json"),
                 "-o", str(out_path)])
    assert code == 0
    inst = serialize.load_instance(str(out_path))
    assert inst.algebra == LieAlgebra(4, {(0, 2): {2: 1}, (0, 3): {3: 1},
                                          (1, 2): {3: 1}, (1, 3): {2: -1}})
    assert inst.j == standard_complex_structure(2)
    assert inst.metric is None
    # canonical emission: a load/emit round trip is byte-identical
    text = out_path.read_text(encoding="utf-8")
    again = serialize.emit(serialize.instance_to_dict(inst.algebra, inst.j))
    assert again == text
    # the double product against the zero product is the same construction
    code = main(["construct", "double-product",
                 "--dot", fx(fixtures_dir, "prod_complex.json"),
                 "--star", fx(fixtures_dir, "prod_zero2.json")])
    assert code == 0
    assert capsys.readouterr().out == text


def test_construct_incompatible_pair(fixtures_dir, capsys):
    code = main(["construct", "double-product",
                 "--dot", fx(fixtures_dir, "prod_dual_numbers.json"),
                 "--star", fx(fixtures_dir, "prod_split_pair.json")])
    assert code == 1
    capsys.readouterr()


def test_construct_semidirect(tmp_path, capsys):
    t_path = tmp_path / "t.json"
    t_path.write_text(json.dumps({"matrix": [["1", "0"], ["0", "1"]]}),
                      encoding="utf-8")
    code = main(["construct", "semidirect", "--n", "1", "--t", str(t_path)])
    out = capsys.readouterr().out
    assert code == 0
    inst = serialize.instance_from_dict(json.loads(out))
    assert inst.algebra.dim == 4 and inst.j is not None

    bad_t = tmp_path / "bad.json"
    bad_t.write_text(json.dumps({"matrix": [["1", "0"], ["0", "2"]]}),
                     encoding="utf-8")
    assert main(["construct", "semidirect", "--n", "1", "--t", str(bad_t)]) == 1
    shape = tmp_path / "shape.json"
    shape.write_text(json.dumps({"rows": []}), encoding="utf-8")
    assert main(["construct", "semidirect", "--n", "1", "--t", str(shape)]) == 2
    assert main(["construct", "semidirect", "--n", "0", "--t", str(t_path)]) == 2
    capsys.readouterr()


def test_decompose_kahler_success(fixtures_dir, tmp_path, capsys):
    rep_path = tmp_path / "dec.json"
    code = main(["decompose-kahler",
                 "--instance", fx(fixtures_dir, "kahler_two_blocks_scaled.json"),
                 "--report", str(rep_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "n = 2" in out and "(s = 1)" in out
    assert "r^2 = 4, c = 1/4" in out
    data = json.loads(rep_path.read_text(encoding="utf-8"))
    assert data["n"] == 2 and data["s"] == 1
    assert [f["norm_sq"] for f in data["factors"]] == ["4", "1"]
    assert [f["curvature"] for f in data["factors"]] == ["1/4", "1"]
    # the embedded model is itself a loadable instance
    model = serialize.instance_from_dict(data["model"])
    assert model.algebra.dim == 6


def test_decompose_kahler_failures(fixtures_dir, tmp_path, capsys):
    assert main(["decompose-kahler",
                 "--instance", fx(fixtures_dir, "aff_c_j1.json")]) == 1
    capsys.readouterr()

    sqrt2 = tmp_path / "sqrt2.json"
    g = LieAlgebra(4, {(0, 2): {2: 1}, (0, 3): {3: 1},
                       (1, 2): {3: 1}, (1, 3): {2: 2}})
    serialize.save_instance(str(sqrt2), g, standard_complex_structure(2),
                            InnerProduct.diagonal([1, 2, 1, 2]))
    assert main(["decompose-kahler", "--instance", str(sqrt2)]) == 1
    err = capsys.readouterr().err
    assert "--float-fallback" in err
    assert main(["decompose-kahler", "--instance", str(sqrt2),
                 "--float-fallback"]) == 1
    capsys.readouterr()

    no_metric = tmp_path / "nometric.json"
    serialize.save_instance(str(no_metric), LieAlgebra.abelian(2))
    assert main(["decompose-kahler", "--instance", str(no_metric)]) == 2
    capsys.readouterr()


def test_fuzz_and_report(tmp_path, capsys):
    rep_path = tmp_path / "trials.json"
    code = main(["fuzz", "--seed", "5", "--trials", "10",
                 "--report", str(rep_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "seed 5, 10 trials" in out
    assert "counterexamples: 0" in out
    data = json.loads(rep_path.read_text(encoding="utf-8"))
    assert data["trials"] == 10 and data["counterexamples"] == []

    assert main(["report", str(rep_path)]) == 0
    assert "seed 5" in capsys.readouterr().out

    bogus = tmp_path / "bogus.json"
    bogus.write_text(json.dumps({"seed": 1}), encoding="utf-8")
    assert main(["report", str(bogus)]) == 2
    assert main(["report", str(tmp_path / "missing.json")]) == 2
    assert main(["fuzz", "--seed", "1", "--trials", "0"]) == 2
    capsys.readouterr()


def test_argparse_contract():
    with pytest.raises(SystemExit) as exc:
        main(["fuzz"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
