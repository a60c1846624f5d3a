import io
import json

import jsonschema
import pytest

from finfound import boolattice as ba
from finfound import codec, games, lebesgue, logic
from finfound.cli import load_schema, run

RESULT_SCHEMA = load_schema("result-v1.json")
DIAMOND = {"elements": ["0", "a", "b", "c", "1"],
           "covers": [["0", "a"], ["0", "b"], ["0", "c"], ["a", "1"], ["b", "1"], ["c", "1"]]}


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def structured(*argv):
    code, text = cli(*argv, "--format", "structured")
    doc = json.loads(text)
    jsonschema.validate(doc, RESULT_SCHEMA)
    return code, doc


def doc(**kw):
    return json.dumps({"version": 1, **kw})


def test_codec_pair_figure():
    assert cli("codec", "pair", "3", "3") == (0, "24\n")


def test_codec_matches_library():
    for n in (0, 5, 11, 12345):
        code, d = structured("codec", "unpair", str(n))
        assert code == 0 and tuple(d["result"]["pair"]) == codec.unpair(n)
    code, d = structured("codec", "seq-encode", "1", "2")
    assert d["result"]["value"] == 47
    assert cli("codec", "seq-decode", "47") == (0, "1 2\n")
    code, d = structured("codec", "seq-decode", "0")
    assert code == 1 and d["status"] == "negative"


def test_codec_bad_argument(capsys):
    with pytest.raises(SystemExit) as e:
        run(["codec", "pair", "-1", "2"])
    assert e.value.code == 2


def test_cantor_table():
    code, text = cli("cantor", "--depth", "3")
    rows = text.strip().splitlines()
    assert code == 0 and rows[-1].split("\t") == ["3", "8", "8/27"]
    code, d = structured("cantor", "--depth", "3")
    assert d["result"]["rows"][-1] == {"n": 3, "components": 8, "length": "8/27"}


def test_cantor_bound():
    code, _ = cli("cantor", "--depth", "5", "--bound", "4")
    assert code == 2


def test_decimal_flag():
    code, text = cli("cantor", "--depth", "1", "--decimal")
    assert "2/3 (approx 0.666667)" in text


def test_sat_unsat():
    code, text = cli("sat", "solve", "--expr", "x & !x")
    assert code == 1 and text.strip() == "UNSAT"


def test_sat_model_matches_library(tmp_path):
    f = tmp_path / "f.txt"
    f.write_text("x | y\n# comment\n!x\n")
    code, d = structured("sat", "solve", "--file", str(f))
    assert code == 0 and d["result"]["model"] == logic.sat(["x | y", "!x"])


def test_sat_parse_error():
    code, _ = cli("sat", "solve", "--expr", "x & y |")
    assert code == 2


def test_sat_chain():
    code, d = structured("sat", "chain", "--base", "x", "--enum", "y", "--enum", "x & y")
    assert code == 0 and d["result"]["valuation"] == {"x": 1, "y": 1}


def test_order_commands():
    code, d = structured("order", "validate", "--json", doc(poset={"divisors_of": 24}))
    assert code == 0 and d["result"]["least"] == 1 and d["result"]["greatest"] == 24
    code, d = structured("order", "validate", "--json",
                         doc(poset={"elements": ["a", "b"], "pairs": [["a", "a"], ["b", "b"], ["a", "b"], ["b", "a"]]}))
    assert code == 1 and "antisymmetry" in d["message"]
    code, d = structured("order", "extend", "--json", doc(poset={"elements": ["a", "b"], "covers": []}))
    assert d["result"]["order"] == ["a", "b"]
    code, d = structured("order", "terminates", "--json",
                         doc(reduction={"carrier": ["a", "b"], "step": [["a", "b"], ["b", "a"]]}))
    assert code == 1 and d["result"]["cycle"] == ["a", "b"]
    code, d = structured("order", "downsets", "--json", doc(poset={"elements": ["a", "b"], "covers": [["a", "b"]]}))
    assert d["result"]["downsets"] == [[], ["a"], ["a", "b"]]


def test_downsets_bound_flag():
    code, _ = cli("order", "downsets", "--bound", "1", "--json",
                  doc(poset={"elements": ["a", "b"], "covers": []}))
    assert code == 2


def test_boolalg_commands():
    code, d = structured("boolalg", "classify", "--json",
                         doc(algebra={"poset": DIAMOND, "subset": ["1", "a"]}))
    r = d["result"]
    assert code == 0 and r["is_filter"] and r["is_maximal"] and not r["is_prime"]
    code, d = structured("boolalg", "ultrafilters", "--json", doc(algebra={"powerset": [1, 2]}))
    assert d["result"]["ultrafilters"] == [[[1], [1, 2]], [[2], [1, 2]]]
    code, d = structured("boolalg", "quotient", "--json",
                         doc(algebra={"powerset": [1, 2, 3], "ideal": [[], [2], [3], [2, 3]]}))
    assert len(d["result"]["classes"]) == 2
    code, d = structured("boolalg", "stone", "--json", doc(algebra={"powerset": [1, 2]}))
    assert d["result"]["points"] == 2


def test_boolalg_negative():
    code, d = structured("boolalg", "ultrafilters", "--json", doc(algebra={"poset": DIAMOND}))
    assert code == 1 and "not distributive" in d["message"]
    no_join = {"elements": ["0", "a", "b", "c", "d"],
               "covers": [["0", "a"], ["0", "b"], ["a", "c"], ["b", "c"], ["a", "d"], ["b", "d"]]}
    code, d = structured("boolalg", "classify", "--json", doc(algebra={"poset": no_join, "subset": ["0"]}))
    assert code == 1 and "not a lattice" in d["message"]


def test_boolalg_tables():
    b = ba.powerset_algebra([1])
    els = [[], [1]]
    tables = {"elements": els, "meet": [[[], []], [[], [1]]], "join": [[[], [1]], [[1], [1]]],
              "neg": [[1], []]}
    code, d = structured("boolalg", "stone", "--json", doc(algebra={"tables": tables}))
    assert code == 0 and d["result"]["points"] == len(ba.ultrafilters(b))


def test_setalg_commands():
    fam = {"universe": [1, 2, 3, 4], "members": [[1, 2], [2, 3]]}
    code, d = structured("setalg", "atoms", "--json", doc(family=fam))
    assert d["result"]["atoms"] == [[1], [2], [3], [4]]
    code, d = structured("setalg", "algebra", "--json", doc(family=fam))
    assert len(d["result"]["members"]) == 16
    code, d = structured("setalg", "pilambda", "--json", doc(family=fam))
    assert d["result"]["pi_closed"] is False and d["result"]["equal"] is False
    code, d = structured("setalg", "cylinder", "--k", "2", "--sum", "1")
    assert d["result"]["measure"] == "1/2"
    assert cli("setalg", "cylinder", "--k", "1", "--words", "0") == (0, "1/2\n")
    assert cli("setalg", "cylinder")[0] == 2


def test_measure_commands():
    code, d = structured("measure", "length", "--json",
                         doc(measure={"set": [[0, "1/3"], ["1/2", 1]]}))
    assert d["result"]["length"] == "5/6"
    code, d = structured("measure", "outer", "--json",
                         doc(measure={"target": [[0, 1]], "cover": [[[0, "3/4"]]]}))
    assert code == 1 and d["result"]["witness"] == "7/8"
    code, d = structured("measure", "outer", "--json",
                         doc(measure={"target": [[0, 1]], "cover": [[[0, "1/2"]], [["1/4", 1]]]}))
    assert code == 0 and d["result"]["cover_sum"] == "5/4"
    code, d = structured("measure", "cara", "--json",
                         doc(measure={"set": [[0, "0.5"]], "test": [["1/4", "3/4"]]}))
    assert d["result"]["ok"] and d["result"]["inside"] == "1/4"
    assert cli("measure", "length", "--json", doc(measure={"set": [[0, 2]]}))[0] == 2


def test_game_commands():
    code, d = structured("game", "solve", "--json", doc(game={"m": 2, "d": 1, "winning": ["00", "11"]}))
    assert d["result"]["winner"] == "Demon"
    strat = {tuple(e["prefix"]): e["move"] for e in d["result"]["strategy"]}
    assert strat == games.solve(games.GameSpec(2, 1, {(0, 0), (1, 1)})).strategy
    code, d = structured("game", "solve", "--json", doc(game={"m": 2, "d": 1, "predicate": "all"}))
    assert d["result"]["winner"] == "Angel"
    code, d = structured("game", "choice", "--json",
                         doc(choice={"m": 3, "d": 1, "family": [["0"], ["1", "2"]]}))
    assert d["result"]["choices"] == [[0], [1]]


def test_schema_rejections(tmp_path):
    assert cli("order", "validate", "--json", doc(poset={"bogus": 1}))[0] == 2
    assert cli("order", "validate", "--json", '{"poset": {"divisors_of": 4}}')[0] == 2
    assert cli("order", "validate", "--json", "not json")[0] == 2
    assert cli("order", "validate", str(tmp_path / "missing.json"))[0] == 2
    # right schema, wrong document kind for the command
    assert cli("game", "solve", "--json", doc(poset={"divisors_of": 4}))[0] == 2


def test_document_from_file(tmp_path):
    p = tmp_path / "d.json"
    p.write_text(doc(measure={"set": [[0, "1/2"]]}))
    assert cli("measure", "length", str(p)) == (0, "]0,1/2]: 1/2\n")


def test_error_structured_output():
    code, d = structured("measure", "length", "--json", doc(measure={"set": [[0, 2]]}))
    assert code == 2 and d["status"] == "error" and d["result"] is None
