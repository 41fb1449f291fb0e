import json
import random

import pytest

from facial import io
from facial.bar import FiniteMonoid, bar_facial
from facial.bifacial import random_twisted_product
from facial.cli import main
from facial.cotriple import PointedSet, cotriple_bifacial, product_comonad
from facial.moore import MooreLoop
from facial.random_instances import random_contracted


def roundtrip(to_json, from_json, obj):
    first = io.dumps(to_json(obj))
    second = io.dumps(to_json(from_json(json.loads(first))))
    return first, second


@pytest.mark.parametrize("F", [bar_facial(FiniteMonoid.cyclic(3), "P", 2),
                               random_contracted(random.Random(2), [2, 3, 2])],
                         ids=["bar P", "random contracted"])
def test_facial_roundtrip(F):
    first, second = roundtrip(io.facial_to_json, io.facial_from_json, F)
    assert first == second


def test_bifacial_roundtrip():
    for Z in (random_twisted_product(random.Random(1), 2, 2),
              cotriple_bifacial(product_comonad(PointedSet(["e*", "e1"], "e*")),
                                bar_facial(FiniteMonoid.cyclic(2), "G", 1), 1)):
        first, second = roundtrip(io.bifacial_to_json, io.bifacial_from_json, Z)
        assert first == second


def test_monoid_and_loop_roundtrip():
    M = FiniteMonoid.named("s3")
    first, second = roundtrip(io.monoid_to_json, io.monoid_from_json, M)
    assert first == second
    w = MooreLoop.through([("1/2", 0), (1, "3/4")], speeds=[1, "1/3", 2])
    assert io.loop_from_json(io.loop_to_json(w)) == w


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_acceptance_commands(capsys):
    assert main(["homology", "--bar", "trivial", "--n", "1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["results"]["homology"] == ["H0 = Z", "H1 = Z"]
    assert main(["milnor", "--group", "trivial", "--n", "1"]) == 0
    assert "H1 = 0" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["validate", "--bar", "s3", "--variant", "P"],
    ["bar", "--group", "z2", "--n", "3"],
    ["milnor", "--group", "z2", "--n", "2"],
    ["join", "--group", "z3", "--n", "2"],
    ["hopf", "--group", "z3"],
    ["rectify", "--count", "6"],
    ["libman", "--count", "1"],
    ["libman", "--cotriple"],
    ["bifacial-compare", "--count", "2"],
    ["petitlibman"],
    ["cotriple", "--x-size", "2", "--e-size", "2"],
    ["moore", "--count", "10"],
])
def test_commands_pass(argv, capsys):
    assert main(argv) == 0, capsys.readouterr().out


def test_json_report(capsys):
    assert main(["hopf", "--group", "z2", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] and report["command"] == "hopf" and report["witness"] is None
    assert io.dumps(report) == io.dumps(json.loads(io.dumps(report)))


def test_identity_failure_prints_witness(tmp_path, capsys):
    F = {"levels": [{"cells": ["a", "b"], "basepoint": "a"}, {"cells": ["x", "y"], "basepoint": "x"}],
         "faces": {"1,0": {"x": "a", "y": "a"}, "1,1": {"x": "a", "y": "b"}},
         "augmentation": {"cells": ["p", "q"], "basepoint": "p", "map": {"a": "p", "b": "q"}}}
    path = write(tmp_path, "bad.json", F)
    assert main(["validate", "--input", path, "--mode", "augmentation"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "witness:" in out


def test_structural_errors(tmp_path, capsys):
    F = io.facial_to_json(bar_facial(FiniteMonoid.cyclic(2), "G", 2))
    F["faces"]["2,1"]['["g1","g1"]'] = "nowhere"
    assert main(["validate", "--input", write(tmp_path, "f.json", F)]) == 2
    err = capsys.readouterr().err
    assert "nowhere" in err
    assert main(["validate", "--input", str(tmp_path / "missing.json")]) == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert main(["homology", "--input", str(tmp_path / "junk.json")]) == 2
    assert main(["milnor", "--group", "and"]) == 2
    assert main(["milnor", "--group", "z3", "--n", "9", "--budget", "100"]) == 2
    assert main(["bar", "--budget", "0"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
