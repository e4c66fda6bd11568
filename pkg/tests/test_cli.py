import json
import xml.dom.minidom

import pytest

from lcocycle.cli import ParseError, resolve, run


def out_json(capsys, argv):
    code = run(argv)
    return code, json.loads(capsys.readouterr().out)


def test_verify(capsys):
    assert run(["verify", "tetrahedron"]) == 0
    assert "OK: sum = 0 in B4" in capsys.readouterr().out
    assert run(["verify", "cube-edges"]) == 0


def test_verify_exclusion_fails(capsys):
    from lcocycle.braid import TETRAHEDRON_STRATA
    for name in TETRAHEDRON_STRATA:
        assert run(["verify", "tetrahedron", "--exclude", name]) == 1
    assert "NONZERO" in capsys.readouterr().out


def test_invariants(capsys):
    code, o = out_json(capsys, ["invariants", "--dt", "4 6 8 2"])
    assert code == 0 and o["conway"] == "1 - z^2" and o["v2"] == -1
    code, o = out_json(capsys, ["invariants", "--pd", "[1,1,2,2]"])
    assert o["conway"] == "1" and o["v2"] == 0
    code, o = out_json(capsys, ["invariants", "--name", "trefoil+", "--cabled"])
    assert o["components"] == 2 and o["linking"] == {"0-1": 3}


def test_scan_json(capsys):
    code, o = out_json(capsys, ["scan", "--knot", "1 1 1", "--aux", "fig8"])
    assert code == 0
    assert len(o["terms"]) == 8
    assert sum(e["kind"] != "RII-opposite" for e in o["events"]) >= 4
    assert "invariants" in o["terms"][0]


def test_scan_cancel_table(capsys):
    assert run(["scan", "--knot", "1 1 1", "--cabled", "--filter", "d-green", "--cancel",
                "--format", "table"]) == 0
    assert capsys.readouterr().out.strip()


def test_bracket(capsys):
    code, o = out_json(capsys, ["bracket", "trefoil+", "fig8"])
    assert code == 0 and o["raw_terms"] > 0 and o["nonzero"] is False


def test_tree_and_compare(capsys):
    code, o = out_json(capsys, ["tree", "--name", "trefoil+"])
    assert code == 0 and len(o["digest"]) == 64
    code, o = out_json(capsys, ["compare", "8_17", "inv:8_17"])
    assert code == 0 and o["equal"] is False


def test_render(tmp_path):
    f = tmp_path / "k.svg"
    assert run(["render", "--name", "fig8", "--cabled", "-o", str(f)]) == 0
    xml.dom.minidom.parse(str(f))


@pytest.mark.parametrize("argv", [
    ["scan", "--knot", "1 x 1"],
    ["invariants"],
    ["invariants", "--knot", "1", "--dt", "4 6 2"],
    ["nonsense"],
    ["tree", "--name", "trefoil+", "--depth", "-1"],
    ["scan", "--knot", "1 1 1", "--aux", "1 1 1", "--crossing", "0"],
])
def test_parse_errors(argv, capsys):
    assert run(argv) == 2


def test_model_error(capsys):
    assert run(["scan", "--knot", "1 1 1", "--aux", "1"]) == 4
    assert "model error" in capsys.readouterr().err


def test_resource_error(monkeypatch, capsys):
    monkeypatch.setenv("LCOCYCLE_MAX_CROSSINGS", "2")
    assert run(["scan", "--knot", "1 1 1"]) == 3


def test_resolve_forms():
    assert resolve("braid:1 1 1").n_crossings() == 3
    assert resolve("dt:4 6 2").n_crossings() == 3
    assert resolve("name:fig8").n_crossings() == 4
    assert resolve("product").n_crossings() == 7
    with pytest.raises(ParseError):
        resolve("zz:1")
