import json
import pathlib
from importlib import resources

import jsonschema
import numpy as np
import pytest
import yaml
from hypothesis import given, settings, strategies as st

from eqktheory.algebra import cyclic_group, make_finite_field, make_galois_gring
from eqktheory.cli import ConfigError, load_preset, main, parse_config, preset_names
from eqktheory.cli.checks import CRITERIA, hom_classes

GOLDEN = pathlib.Path(__file__).parent / "golden"
SCHEMA = json.loads((resources.files("eqktheory.cli") / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return code, rep


# the h1 example

def test_h1_gl2_f4(capsys):
    code, rep = run_json(capsys, "h1", "--p", "2", "--dtotal", "2", "--dsub", "1", "--n", "2")
    assert code == 0
    assert rep["result"]["cocycle_count"] == 30 and rep["result"]["class_count"] == 1
    # the least cocycle: identity at e, the swap matrix at the generator
    assert rep["result"]["representatives"] == [[[[1, 0], [0, 1]], [[0, 1], [1, 0]]]]


def test_h1_from_preset(capsys):
    code, rep = run_json(capsys, "h1", "--preset", "f3-triv-c2")
    assert code == 0
    assert (rep["result"]["cocycle_count"], rep["result"]["class_count"]) == (2, 2)


# golden files and determinism

@pytest.mark.parametrize("name,argv", [
    ("h1_f4_n2", ["h1", "--p", "2", "--dtotal", "2", "--dsub", "1", "--n", "2"]),
    ("k0_f3-triv-c2", ["k0", "--preset", "f3-triv-c2"]),
    ("galois_f2xf2-swap", ["galois-check", "--preset", "f2xf2-swap"]),
    ("strictify_seed7", ["strictify-test", "--count", "10", "--seed", "7"]),
])
def test_golden_reports(capsys, name, argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_golden_k0_values():
    rep = json.loads((GOLDEN / "k0_f3-triv-c2.json").read_text())["result"]
    top = rep["subgroups"][1]
    assert top["generators"] == ["trivial", "sign"] and top["group"] == "Z^2"
    res = {(r["from"], r["to"]): r["matrix"] for r in rep["restriction"]}
    tr = {(r["from"], r["to"]): r["matrix"] for r in rep["transfer"]}
    assert res[("{e,s^1}", "{e}")] == [[1, 1]]
    assert tr[("{e}", "{e,s^1}")] == [[1], [1]]
    assert rep["mackey_check"]


def test_fixed_seed_is_byte_identical(capsys):
    argv = ["strictify-test", "--count", "8", "--seed", "11", "--json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_seed_changes_instances(capsys):
    a = run_json(capsys, "strictify-test", "--count", "8", "--seed", "1")[1]
    b = run_json(capsys, "strictify-test", "--count", "8", "--seed", "2")[1]
    assert a["config"]["seed"] == 1 and b["config"]["seed"] == 2


def test_timing_only_on_request(capsys):
    _, rep = run_json(capsys, "galois-check", "--preset", "f4-c2")
    assert all("seconds" not in c for c in rep["checks"])
    _, rep = run_json(capsys, "galois-check", "--preset", "f4-c2", "--timing")
    assert all(c["seconds"] >= 0 for c in rep["checks"])


# exit codes

def test_failed_check_exits_one(capsys):
    code, rep = run_json(capsys, "galois-check", "--preset", "f2-triv-c2")
    assert code == 1 and not rep["passed"]
    assert rep["checks"][0]["witnesses"][0]["kind"] == "not surjective"


MALFORMED = [
    ("group: C9\n", 1, 8, "unknown group preset"),
    ("ring:\n  field: {p: 4}\n", 2, 10, "not prime"),
    ("ring: {field: {p: 2, d: 2, modulus: [1, 0, 1]}}\n", 1, 15, "reducible"),
    ("group: C2\nflavour: 1\n", 2, 1, "unknown key"),
    ("ring: [\n", 2, 1, "expected"),
    ("seed: -1\n", 1, 7, ">= 0"),
    ("truncation: three\n", 1, 13, "integer"),
    ("group: C3\nring: {field: {p: 2, d: 2}}\naction: {frobenius: {fixed_degree: 1}}\n", 3, 9,
     "order"),
    ("group: C2\nring: {field: {p: 5}}\naction: {generators: {s^1: [0, 4, 3, 2, 1]}}\n", 3, 9,
     "automorphism"),
    ("group: C2\nring: {field: {p: 5}}\naction: {generators: {t: [0, 1, 2, 3, 4]}}\n", 3, 23,
     "unknown group element"),
    ("", None, None, "empty"),
]


@pytest.mark.parametrize("text,line,col,msg", MALFORMED)
def test_malformed_config_exits_two(capsys, tmp_path, text, line, col, msg):
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    code, out, err = run(capsys, "k0", "--config", str(path))
    assert code == 2 and out == ""
    assert msg in err
    if line is not None:
        assert f"bad.yaml:{line}:{col}:" in err


def test_missing_config_and_unknown_preset(capsys):
    assert run(capsys, "k0", "--config", "/nonexistent/x.yaml")[0] == 2
    code, _, err = run(capsys, "k0", "--preset", "f7-c5")
    assert code == 2 and "unknown preset" in err


def test_budget_error_is_surfaced_verbatim(capsys):
    code, _, err = run(capsys, "h1", "--n", "3")
    assert code == 2
    assert "GL_3(F4) multiplication table: needs 32920473600 > budget 10000000" in err


def test_precondition_error_exits_two(capsys):
    code, _, err = run(capsys, "assembly", "--preset", "f4-c2")
    assert code == 2 and "not invertible" in err


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["h1", "--n", "x"])
    assert e.value.code == 2
    capsys.readouterr()
    assert run(capsys, "h1", "--p", "2")[0] == 2
    assert run(capsys, "k0", "--max-rank", "-1")[0] == 2


# configuration

def test_presets_cover_the_acceptance_instances():
    assert set(preset_names()) >= {"f4-c2", "f9-c2", "f8-c3", "f3-triv-c2", "f2-triv-c2",
                                    "f2xf2-swap"}
    for name in preset_names():
        cfg = load_preset(name)
        assert cfg.name == name
        cfg.gring()


@pytest.mark.parametrize("name", ["f4-c2", "f9-c2", "f8-c3", "f3-triv-c2", "f5-triv-s3",
                                  "f2xf2-swap"])
def test_config_round_trips_through_yaml(name):
    cfg = load_preset(name)
    d = cfg.as_dict()
    d.pop("name")
    again = parse_config(yaml.safe_dump(d), name=name)
    assert again == cfg


def test_generator_images_give_the_frobenius():
    text = "group: C2\nring: {field: {p: 2, d: 2}}\naction: {generators: {s^1: [0, 1, 3, 2]}}\n"
    GR = parse_config(text).gring()
    assert np.array_equal(GR.act_table, make_galois_gring(2, 2, 1).act_table)


def test_explicit_group_table():
    text = ("group: {table: [[0, 1, 2], [1, 2, 0], [2, 0, 1]], names: [e, a, b]}\n"
            "ring: {field: {p: 2, d: 3}}\naction: trivial\n")
    GR = parse_config(text).gring()
    assert GR.group.order == 3 and GR.is_trivial_action()
    with pytest.raises(ConfigError):
        parse_config("group: {table: [[0, 1], [0, 1]]}\n")


def test_flags_override_the_config(capsys):
    _, rep = run_json(capsys, "k0", "--preset", "f4-c2", "--max-rank", "2", "--seed", "5",
                      "--budget-objects", "1000")
    assert rep["config"]["truncation"] == 2 and rep["result"]["max_rank"] == 2
    assert rep["config"]["seed"] == 5 and rep["config"]["budgets"]["objects"] == 1000


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["f4-c2", "f9-c2", "f3-triv-c2", "f2xf2-swap"]),
       st.integers(0, 5), st.integers(0, 10**6), st.integers(1, 10**7))
def test_as_dict_round_trips(name, rank, seed, budget):
    cfg = load_preset(name).with_flags(rank, seed, budget)
    d = json.loads(json.dumps(cfg.as_dict()))
    d.pop("name")
    assert parse_config(yaml.safe_dump(d), name=name) == cfg


# the schema

@pytest.mark.parametrize("argv", [["k0", "--preset", "f2-triv-c2"],
                                  ["assembly", "--preset", "f9-c2", "--max-rank", "2"],
                                  ["skeleton-test", "--preset", "f4-c2"],
                                  ["galois-check", "--preset", "f4-c2", "--timing"]])
def test_reports_round_trip_through_the_schema(capsys, argv):
    _, rep = run_json(capsys, *argv)
    assert json.loads(json.dumps(rep)) == rep


def test_schema_rejects_malformed_reports():
    good = json.loads((GOLDEN / "h1_f4_n2.json").read_text())
    jsonschema.validate(good, SCHEMA)
    for mutate in (lambda r: r["checks"][0].update(verdict="maybe"),
                   lambda r: r.pop("passed"),
                   lambda r: r.update(command="nope"),
                   lambda r: r["config"].update(seed=-1)):
        bad = json.loads(json.dumps(good))
        mutate(bad)
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(bad, SCHEMA)


# the suite

def test_every_criterion_appears_once():
    names = [c.__name__ for c in CRITERIA]
    assert len(CRITERIA) == 11 and len(set(names)) == 11


def test_hom_classes_cross_check():
    # C2 -> GL_n(F3) up to conjugacy: sign choices on an eigenbasis
    F3 = make_finite_field(3, 1)
    assert [hom_classes(F3, cyclic_group(2), n) for n in (1, 2)] == [2, 3]


def test_suite_command(capsys):
    code, rep = run_json(capsys, "suite", "--preset", "f4-c2", "--max-rank", "3")
    assert code == 0 and rep["passed"]
    names = [c["name"] for c in rep["checks"]]
    assert len(names) == len(set(names)) == 11
    assert [n.split()[0] for n in names] == [str(k) for k in range(1, 12)]
