import io
import json

import pytest

from conftest import FIXTURES
from somp import serialize as ser
from somp.cli import main
from somp.core import make_even
from somp.morphism import make_even_embedding


def run(argv, stdin="", capsys=None, monkeypatch=None):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(capsys, monkeypatch):
    return lambda argv, stdin="": run(argv, stdin, capsys, monkeypatch)


def test_generate_even6_then_analyze(cli):
    code, out, _ = cli(["generate", "--family", "even", "--n", "6"])
    assert code == 0
    code, out, _ = cli(["analyze", "-"], out)
    assert code == 0
    report = json.loads(out)
    assert report["states"]["total"] == 6 and report["states"]["all_states_dirac"]
    assert report["flags"] == {"point_distinguishing": True, "lattice": False, "delta_closed": True, "boolean": False}
    assert report["cardinalities"]["quotient_points"] == 6


def test_even4_states(cli):
    _, even4, _ = cli(["generate", "--family", "even", "--n", "4"])
    code, out, _ = cli(["states", "-"], even4)
    assert code == 0
    assert len(json.loads(out)["states"]) == 8
    code, out, _ = cli(["states", "-", "--format", "table"], even4)
    assert out.splitlines()[0] == "8 states, 4 non-Dirac"
    assert "[1-indexed {1}]" in out


def test_validate_broken(cli, tmp_path):
    f = tmp_path / "broken.json"
    f.write_text('{"universe":2,"events":[[],[0],[0,1]]}')
    code, out, err = cli(["validate", str(f)])
    assert code == 1
    assert "MissingComplement" in err
    assert json.loads(out)["violations"] == [{"kind": "MissingComplement", "events": [[0]]}]


def test_validate_ok(cli):
    code, out, _ = cli(["validate", "-"], ser.somp_to_json(make_even(4)))
    assert code == 0 and json.loads(out)["ok"]


def test_close(cli):
    code, out, _ = cli(["close", "-"], '{"universe":4,"events":[[0,1],[0,2]]}')
    assert code == 0 and len(json.loads(out)["events"]) == 6
    code, _, err = cli(["close", "-", "--cap", "4"], '{"universe":4,"events":[[0,1],[0,2]]}')
    assert code == 1 and err.startswith("CapExceeded")


def test_bigsets_quotient(cli):
    _, b, _ = cli(["generate", "--family", "bigsets", "--n", "8", "--a", "0,1,2,3", "--b", "0,1,4,5"])
    code, out, _ = cli(["quotient", "-"], b)
    obj = json.loads(out)
    assert obj["partition"]["blocks"] == [[0, 1], [2, 3], [4, 5], [6, 7]]
    code, out, _ = cli(["quotient", "-", "--transversal"], b)
    assert json.loads(out)["points"] == [0, 2, 4, 6]
    code, out, _ = cli(["quotient", "-", "--format", "table"], b)
    assert "block 0: {0,1} [1-indexed {1,2}]" in out


def test_stone_variants(cli, tmp_path):
    _, even4, _ = cli(["generate", "--family", "even", "--n", "4"])
    for mode, points in (("dirac", 4), ("all", 8), ("delta", 4)):
        code, out, _ = cli(["stone", "-", "--states", mode], even4)
        assert code == 0
        assert json.loads(out)["rep"]["universe"] == points
    f = tmp_path / "states.json"
    _, states, _ = cli(["states", "-"], even4)
    obj = json.loads(states)
    obj["states"] = obj["states"][:3]
    f.write_text(json.dumps(obj))
    code, out, err = cli(["stone", "-", "--states", str(f)], even4)
    # the first three lexicographic states do not separate
    assert code == 1 and err.startswith("NotSeparating")


def test_check_morphism_and_find_iso(cli, tmp_path):
    small, big = make_even(4), make_even(6)
    (tmp_path / "a.json").write_text(ser.somp_to_json(small))
    (tmp_path / "b.json").write_text(ser.somp_to_json(big))
    (tmp_path / "h.json").write_text(ser.morphism_to_json(make_even_embedding(small, big)))
    code, out, _ = cli(["check-morphism", str(tmp_path / "a.json"), str(tmp_path / "b.json"), str(tmp_path / "h.json")])
    assert code == 0
    assert json.loads(out) == {"morphism": True, "injective": True, "surjective": False, "isomorphism": False, "violations": []}

    code, out, _ = cli(["find-iso", str(tmp_path / "a.json"), str(tmp_path / "a.json")])
    assert code == 0 and json.loads(out)["table"] == list(range(8))
    (tmp_path / "p.json").write_text(ser.somp_to_json(FIXTURES["powerset3"]))
    code, _, err = cli(["find-iso", str(tmp_path / "a.json"), str(tmp_path / "p.json")])
    assert code == 1 and err.startswith("NoIsomorphism")

    (tmp_path / "bad.json").write_text("[0,7,2,3,4,5,6,1]")
    code, _, err = cli(["check-morphism", str(tmp_path / "a.json"), str(tmp_path / "a.json"), str(tmp_path / "bad.json")])
    assert code == 1 and err.startswith("NotAMorphism")


def test_usage_errors(cli):
    assert cli(["bogus"])[0] == 2
    assert cli(["generate", "--family", "even"])[0] == 2
    assert cli(["analyze", "/nonexistent/file.json"])[0] == 2
    code, _, err = cli(["generate", "--family", "even", "--n", "3"])
    assert code == 1 and err.startswith("InvalidUniverse")


def test_product(cli, tmp_path):
    (tmp_path / "e.json").write_text(ser.somp_to_json(make_even(4)))
    code, out, _ = cli(["generate", "--family", "product", "--left", str(tmp_path / "e.json"), "--right", str(tmp_path / "e.json")])
    obj = json.loads(out)
    assert obj["universe"] == 8 and len(obj["events"]) == 64


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_pipelines_are_closed(cli, name):
    s = FIXTURES[name]
    text = ser.somp_to_json(s)
    outputs = {}
    for argv in (["close", "-"], ["quotient", "-"], ["quotient", "-", "--transversal"], ["stone", "-", "--states", "dirac"]):
        code, out, _ = cli(argv, text)
        assert code == 0
        outputs[" ".join(argv)] = out
    for produced in outputs.values():
        for consumer in (["validate", "-"], ["analyze", "-"], ["quotient", "-"], ["states", "-"]):
            code, out, _ = cli(consumer, produced)
            assert code == 0, (consumer, produced[:80])


def test_json_output_is_deterministic(cli):
    text = ser.somp_to_json(FIXTURES["bigsets"])
    for argv in (["analyze", "-"], ["states", "-"], ["stone", "-", "--states", "all"], ["quotient", "-"]):
        first = cli(argv, text)[1]
        assert cli(argv, text)[1] == first
