import os

import pytest

import tlfe

PHI0 = "(!b U a) | ((!a U b) & F c)"
FIXTURES = os.path.join(os.path.dirname(__file__), "..", "..", "fixtures")


def test_parse_and_progress():
    assert tlfe.parse(PHI0, ["a", "b", "c"]) == "((!b U a) | ((!a U b) & F c))"
    assert tlfe.progress("F a", ["a"], ["a"]) == "true"
    assert tlfe.is_good_prefix("F a", ["a"], [[], ["a"]])
    assert not tlfe.is_good_prefix("F a", ["a"], [[], []])


def test_compile_and_commits():
    dfa = tlfe.compile(PHI0, ["a", "b", "c"])
    assert dfa.live_state_count == 4
    assert dfa.accepts([["a"]])
    assert not dfa.accepts([["b"]])
    commits = tlfe.commit_states(dfa)
    expected = dfa.next(dfa.initial, ["b"])
    assert list(commits) == [expected]
    assert commits[expected] == [["a"]]
    assert tlfe.verify_witness(dfa, expected, commits[expected])


def test_json_round_trip():
    dfa = tlfe.compile(PHI0, ["a", "b", "c"])
    again = tlfe.Dfa.from_json(dfa.to_json())
    assert again.to_json() == dfa.to_json()


def test_errors_are_translated():
    with pytest.raises(ValueError):
        tlfe.compile("G a", ["a"])
    with pytest.raises(ValueError):
        tlfe.load_map("not a map")
    with pytest.raises(RuntimeError):
        tlfe.compile("F a & F b & F c", ["a", "b", "c"], max_states=1)


def test_scenario_map():
    m = tlfe.load_map_file(os.path.join(FIXTURES, "descent.map"))
    ours = tlfe.run_episode(m)
    assert ours.satisfied and ours.method == "ours"
    assert len(ours.trajectory) == ours.steps + 1
    assert ours.trajectory[0] == m.start
    base = tlfe.run_episode(m, method="baseline")
    assert base.verdict == "unsatisfiable"
    frame = ours.render("ascii", [0])
    assert "@" in frame
    assert ours.render("svg").startswith("<svg")
    assert ours.trace_jsonl().count("\n") == ours.steps + 1


def test_random_map_and_bench():
    a = tlfe.random_map(20, 5, 3)
    assert a.to_text() == tlfe.random_map(20, 5, 3).to_text()
    assert a.label(0, 0) is None
    records, summary = tlfe.run_bench(blocks=[0], n_maps=3, seed=7)
    assert len(records) == 6
    assert {row["method"] for row in summary} == {"ours", "baseline"}
    assert all(row["runs"] == 3 for row in summary)
