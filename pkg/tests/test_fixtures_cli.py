import io
import json

import pytest

from effpath import pca
from effpath.cli import main
from effpath.fixture_io import (
    FixtureError, compile_code, parse_fixture_file, parse_fixture_text,
    serialize_fixture_file,
)
from effpath.fixtures import fixture_library


# --- code literals ----------------------------------------------------------

def test_raw_naturals_are_codes():
    assert compile_code(42) == 42
    with pytest.raises(FixtureError):
        compile_code(-1)


def test_lambda_sugar_compiles_to_the_identity():
    c = compile_code("(lambda (x) x)")
    for n in (0, 7, 1000):
        assert pca.apply(c, n) == n


def test_lambda_with_two_variables():
    c = compile_code("(lambda (x y) x)")
    assert pca.apply(pca.apply(c, 3), 9) == 3


def test_constant_symbols_apply():
    c = compile_code("(SUCC 4)")
    assert c == 5
    assert pca.apply(compile_code("SUCC"), 4) == 5


def test_table_literal():
    c = compile_code("(table (3 5) (4 6))")
    assert pca.apply(c, 3) == 5 and pca.apply(c, 4) == 6


def test_tuple_and_const_literals():
    assert compile_code("(tuple 1 2)") == pca.tuple_encode(1, 2)
    assert pca.apply(compile_code("(const 9)"), 123) == 9


def test_bad_literals_are_rejected():
    for text in ("(lambda (x) y)", "wat", "(", "())", "(table (1))"):
        with pytest.raises(FixtureError):
            compile_code(text)


def test_parse_errors_carry_position():
    with pytest.raises(FixtureError, match="line 1"):
        compile_code("(K 1")


# --- fixture files ----------------------------------------------------------

_DOC = {
    "format": 1,
    "objects": {
        "X": {
            "cells": ["a", "b"],
            "realizer": {"a": 0, "b": "(SUCC 0)"},
            "hom": {"a a": [0], "a b": [0], "b a": [0], "b b": [0]},
            "expect": {"valid": True},
            "note": "an interval with computed realizers",
        },
    },
    "morphisms": {
        "sw": {"dom": "X", "cod": "X",
               "zero_map": {"a": "b", "b": "a"}},
    },
}


def test_parse_and_resolve():
    ff = parse_fixture_text(json.dumps(_DOC))
    X = ff.resolve("X")
    assert X.realizer == {"a": 0, "b": 1}
    sw = ff.resolve("sw")
    assert sw.zero_map == {"a": "b", "b": "a"}
    assert ff.expectations["X"] == {"valid": True}


def test_round_trip_is_the_identity():
    ff = parse_fixture_text(json.dumps(_DOC))
    text = serialize_fixture_file(ff)
    ff2 = parse_fixture_text(text)
    assert ff2.spec == ff.spec
    assert serialize_fixture_file(ff2) == text


def test_malformed_json_reports_position():
    with pytest.raises(FixtureError, match="line"):
        parse_fixture_text('{"format": 1,,}')


def test_unknown_fields_are_rejected():
    bad = {"format": 1, "objects": {"X": {"cells": ["a"],
                                          "hom": {"a": [0]}}}}
    with pytest.raises(FixtureError, match="hom key"):
        parse_fixture_text(json.dumps(bad))


def test_wrong_version_is_rejected():
    with pytest.raises(FixtureError, match="format"):
        parse_fixture_text('{"format": 99}')


def test_untrackable_morphism_is_rejected():
    doc = {
        "format": 1,
        "objects": {
            "J": {"cells": ["a", "b"], "realizer": {"a": 0, "b": 0},
                  "hom": {"a a": [0], "b b": [0]}},
            "2": {"cells": ["a", "b"], "realizer": {"a": 0, "b": 1},
                  "hom": {"a a": [0], "b b": [0]}},
        },
        "morphisms": {
            "bad": {"dom": "J", "cod": "2",
                    "zero_map": {"a": "a", "b": "b"}},
        },
    }
    with pytest.raises(FixtureError, match="not trackable"):
        parse_fixture_text(json.dumps(doc))


def test_level_one_objects_parse():
    doc = {"format": 1,
           "objects": {"X": {"cells": ["a"], "realizer": {"a": 3},
                             "hom": {"a a": [0]}, "level": 1}}}
    ff = parse_fixture_text(json.dumps(doc))
    X = ff.objects1["X"]
    assert X.hom2_of("a", "a", 0, 0)


# --- the shipped library ----------------------------------------------------

def test_library_ships_the_expected_names():
    lib = fixture_library()
    for name in ("I", "J", "0", "1", "2", "N5", "E2I", "L", "U",
                 "P(I)", "P(J)", "P(2)", "eff1:I", "eff1:J", "eff1:Z2",
                 "eff1:E2I", "eff1:I->1", "eff1:Z2->1"):
        assert name in lib, name
        assert lib[name].expect, name
        assert lib[name].note != "" or name.endswith("->1")


# --- the command line -------------------------------------------------------

def _run(argv):
    out = io.StringIO()
    rc = main(argv, out=out)
    return rc, out.getvalue()


def test_check_object_command():
    rc, text = _run(["check-object", "I"])
    assert rc == 0 and "valid" in text


def test_tiny_fuel_reports_unknown():
    rc, text = _run(["check-object", "I", "--fuel", "1"])
    assert rc == 3 and "unknown" in text


def test_unknown_fixture_is_a_config_error():
    rc, _text = _run(["check-object", "nope"])
    assert rc == 2


def test_level_guard_on_prefixed_commands():
    rc, _text = _run(["eff1-check-object", "I"])
    assert rc == 2
    rc, text = _run(["eff1-check-object", "eff1:I"])
    assert rc == 0 and "valid" in text


def test_malformed_file_is_a_parse_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    rc, _text = _run(["check-object", "X", "--fixtures", str(p)])
    assert rc == 2


def test_file_fixtures_resolve(tmp_path):
    p = tmp_path / "f.json"
    p.write_text(json.dumps(_DOC))
    rc, text = _run(["check-morphism", f"{p}#sw"])
    assert rc == 0 and "valid" in text
    rc, text = _run(["homotopic", "sw", "sw", "--fixtures", str(p)])
    assert rc == 0 and "yes" in text


def test_decision_commands():
    rc, text = _run(["discrete", "J"])
    assert rc == 0 and ": no" in text
    rc, text = _run(["hlevel", "J", "--n", "0"])
    assert rc == 0 and "verified" in text
    rc, text = _run(["hlevel", "J", "--n", "-1"])
    assert rc == 0 and "refuted" in text
    rc, text = _run(["equivalence", "E2I"])
    assert rc == 0 and ": no" in text
    rc, text = _run(["transport", "E2I"])
    assert rc == 0 and ": yes" in text
    rc, text = _run(["resize", "L"])
    assert rc == 0 and ": yes" in text
    rc, text = _run(["classify", "L"])
    assert rc == 0 and ": yes" in text
    rc, text = _run(["classify", "E2I"])
    assert rc == 0 and ": no" in text  # two points per fibre


def test_construction_commands():
    rc, text = _run(["path-object", "2"])
    assert rc == 0 and "2 cells" in text
    rc, text = _run(["pullback", "E2I", "E2I"])
    assert rc == 0 and "valid" in text
    rc, text = _run(["exp-j", "2"])
    assert rc == 0 and "valid" in text
    rc, text = _run(["pi", "E2I"])
    assert rc == 0 and "fibration: yes" in text
    rc, text = _run(["truncate", "J", "--n", "-1"])
    assert rc == 0 and "verified" in text


def test_suite_subset_passes():
    rc, text = _run(["suite", "I", "J", "U", "P(2)"])
    assert rc == 0
    assert "fail" not in text
    assert text.count("pass") >= 10


def test_suite_rejects_unknown_names():
    rc, _text = _run(["suite", "wat"])
    assert rc == 2


def test_json_reports_are_deterministic():
    rc1, t1 = _run(["suite", "I", "U", "--format", "json"])
    rc2, t2 = _run(["suite", "I", "U", "--format", "json", "--jobs", "4"])
    assert rc1 == rc2 == 0
    assert t1 == t2
    data = json.loads(t1)
    assert all(r["status"] == "pass" for r in data)
