import json
from fractions import Fraction as F

import pytest

from gwrev import fileformats as ff
from gwrev.checker import build_balance_graph, cycle_product
from gwrev.cli import main
from gwrev.core import SupportClass

from .conftest import (
    break_condition_i,
    break_condition_ii,
    three_label_plain,
    two_label_spec,
    two_label_template,
    two_label_weights,
)


def write(path, obj):
    path.write_text(ff.canonical_json(obj))
    return str(path)


@pytest.fixture
def spec_path(tmp_path):
    return write(tmp_path / "spec.json", ff.spec_to_obj(two_label_spec()))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def test_check_passes_on_worked_spec(capsys, spec_path):
    code, report = run(capsys, "check", spec_path)
    assert code == 0
    assert report["ok"] is True
    assert report["condition_i"] == "pass"
    assert report["condition_ii"] == "pass"


def test_check_names_condition_i(capsys, tmp_path):
    path = write(tmp_path / "broken.json",
                 ff.spec_to_obj(break_condition_i(two_label_spec())))
    code, report = run(capsys, "check", path)
    assert code == 1
    assert "condition_i" in report["failed"]
    witness = report["condition_i_counterexample"]
    assert (witness["i"], witness["j"], witness["k"], tuple(witness["c"])) == (
        1, 1, 2, (1, 1))


def test_check_names_condition_ii_with_replayable_cycle(capsys, tmp_path):
    broken = break_condition_ii(two_label_spec())
    path = write(tmp_path / "broken.json", ff.spec_to_obj(broken))
    code, report = run(capsys, "check", path)
    assert code == 1
    assert "condition_ii" in report["failed"]
    cycle = [
        SupportClass(entry["label"], tuple(entry["c"]))
        for entry in report["violating_cycle"]
    ]
    graph = build_balance_graph(broken)
    assert cycle_product(graph, cycle) != 1


def test_check_malformed_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "mode": "pair", "offsp')
    assert main(["check", str(bad)]) == 2
    assert main(["check", str(tmp_path / "missing.json")]) == 2


def test_check_plain_spec(capsys, tmp_path):
    path = write(tmp_path / "plain.json", ff.plain_spec_to_obj(three_label_plain()))
    code, report = run(capsys, "check", path)
    assert code == 0 and report["ok"] is True
    broken = three_label_plain(p31=F(1, 4), p32=F(3, 4))
    path = write(tmp_path / "bad_plain.json", ff.plain_spec_to_obj(broken))
    code, report = run(capsys, "check", path)
    assert code == 1
    assert "cycles" in report["failed"]
    assert report["violating_cycle"][0] == report["violating_cycle"][-1]


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

def test_construct_writes_verified_measure(capsys, tmp_path, spec_path):
    out = tmp_path / "measure.json"
    code, result = run(capsys, "construct", spec_path, str(out))
    assert code == 0 and result["verified"] is True
    text = out.read_text()
    assert '"3/8"' in text and '"5/8"' in text
    measure = ff.load_measure(out)
    assert measure.root_dist == {1: F(3, 8), 2: F(5, 8)}


def test_construct_rejects_broken_spec(capsys, tmp_path):
    path = write(tmp_path / "broken.json",
                 ff.spec_to_obj(break_condition_i(two_label_spec())))
    out = tmp_path / "measure.json"
    code, report = run(capsys, "construct", path, str(out))
    assert code == 1
    assert "condition_i" in report["failed"]
    assert not out.exists()


def test_construct_plain_direct_form(capsys, tmp_path):
    path = write(tmp_path / "plain.json", ff.plain_spec_to_obj(three_label_plain()))
    out = tmp_path / "measure.json"
    code, _ = run(capsys, "construct", path, str(out))
    assert code == 0
    text = out.read_text()
    assert '"3/7"' in text and '"2/7"' in text
    code, result = run(capsys, "verify", str(out))
    assert code == 0 and result["ok"] is True


def test_construct_plain_explicit_form(capsys, tmp_path):
    from gwrev.norelabel import expand_plain_spec

    path = write(tmp_path / "plain.json",
                 ff.spec_to_obj(expand_plain_spec(three_label_plain())))
    out = tmp_path / "measure.json"
    code, _ = run(capsys, "construct", path, str(out))
    assert code == 0
    assert ff.load_measure(out).root_dist == {1: F(3, 7), 2: F(2, 7), 3: F(2, 7)}


def test_construct_single_type_augmented_law(capsys, tmp_path):
    spec_obj = {
        "n": 1,
        "mode": "pair",
        "offspring": [
            {"parent": 1, "child": 1,
             "dist": [{"c": [1], "p": "1/2"}, {"c": [2], "p": "1/2"}]},
        ],
    }
    path = write(tmp_path / "agw.json", spec_obj)
    out = tmp_path / "measure.json"
    code, _ = run(capsys, "construct", path, str(out))
    assert code == 0
    measure = ff.load_measure(out)
    assert measure.neighbor_dist[1] == {(2,): F(1, 2), (3,): F(1, 2)}


# ---------------------------------------------------------------------------
# parametrize
# ---------------------------------------------------------------------------

def test_parametrize_matches_construct_byte_for_byte(capsys, tmp_path, spec_path):
    measure_a = tmp_path / "a.json"
    run(capsys, "construct", spec_path, str(measure_a))
    tmpl = write(tmp_path / "tmpl.json", ff.template_to_obj(two_label_template()))
    params = write(tmp_path / "params.json",
                   ff.weights_to_obj(two_label_weights(F(1, 2), F(1, 2))))
    measure_b = tmp_path / "b.json"
    code, _ = run(capsys, "parametrize", tmpl, params, str(measure_b))
    assert code == 0
    assert measure_a.read_bytes() == measure_b.read_bytes()


def test_parametrize_rejects_bad_template(capsys, tmp_path):
    tmpl = write(tmp_path / "tmpl.json", {
        "n": 2,
        "classes": [{"label": 1, "c": [0, 1]}, {"label": 2, "c": [0, 1]}],
    })
    params = write(tmp_path / "params.json", {"weights": [
        {"label": 1, "c": [0, 1], "p": "1"},
        {"label": 2, "c": [0, 1], "p": "1"},
    ]})
    code, report = run(capsys, "parametrize", tmpl, params, str(tmp_path / "m.json"))
    assert code == 1
    assert any("support_symmetry" in name for name in report["failed"])


# ---------------------------------------------------------------------------
# cover / simulate / verify
# ---------------------------------------------------------------------------

def test_cover_star_and_verify(capsys, tmp_path):
    gpath = tmp_path / "star.txt"
    gpath.write_text("1 0\n1 2\n1 3\n")
    out = tmp_path / "measure.json"
    dot = tmp_path / "pairs.dot"
    code, result = run(capsys, "cover", str(gpath), str(out), "--dot", str(dot))
    assert code == 0
    assert result["labels"] == [1, 2, 1, 1]
    assert "digraph" in dot.read_text()
    code, _ = run(capsys, "verify", str(out))
    assert code == 0
    measure = ff.load_measure(out)
    assert measure.root_dist == {1: F(1, 2), 2: F(1, 2)}


def test_simulate_flow(capsys, tmp_path, spec_path):
    out = tmp_path / "measure.json"
    run(capsys, "construct", spec_path, str(out))
    code, result = run(
        capsys, "simulate", str(out), "--trials", "4000", "--seed", "7",
        "--from", "1:(1,1)", "--to", "2:(1,1)",
    )
    assert code == 0
    assert result["ok"] is True
    assert [r["exact"] for r in result["estimates"]] == ["3/32", "3/32"]
    assert all(r["within_4se"] for r in result["estimates"])
    assert all(r["seed"] == 7 and r["trials"] == 4000 for r in result["estimates"])


def test_simulate_mtp(capsys, tmp_path, spec_path):
    out = tmp_path / "measure.json"
    run(capsys, "construct", spec_path, str(out))
    code, result = run(
        capsys, "simulate", str(out), "--trials", "4000", "--seed", "7",
        "--mtp", "1,2",
    )
    assert code == 0
    assert result["estimates"][0]["exact"] == result["estimates"][1]["exact"] == "3/8"


def test_simulate_requires_flags(capsys, tmp_path, spec_path):
    out = tmp_path / "measure.json"
    run(capsys, "construct", spec_path, str(out))
    code = main(["simulate", str(out), "--trials", "10", "--seed", "1"])
    assert code == 2


def test_verify_detects_tampering(capsys, tmp_path, spec_path):
    out = tmp_path / "measure.json"
    run(capsys, "construct", spec_path, str(out))
    obj = json.loads(out.read_text())
    by_label = {entry["label"]: entry for entry in obj["root"]}
    by_label[1]["p"], by_label[2]["p"] = by_label[2]["p"], by_label[1]["p"]
    out.write_text(ff.canonical_json(obj))
    code, result = run(capsys, "verify", str(out))
    assert code == 1
    assert result["violations"]
