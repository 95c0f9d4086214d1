import json

from hypertor.corpus import CORPUS_DIR, corpus_run, load_cases, structural_diff


def test_bundled_corpus_passes():
    summary = corpus_run()
    assert summary.ok, [r.diffs for r in summary.results if not r.passed]
    assert summary.passed == len(load_cases()) >= 10


def test_tag_filter():
    assert [c.name for c in load_cases(tag="parity")] == ["tor_parity"]
    summary = corpus_run(tag="no-such-tag")
    assert summary.results == [] and summary.ok


def test_seed_does_not_change_the_summary():
    a = corpus_run(tag="mf", seed=1).to_dict()
    b = corpus_run(tag="mf", seed=2).to_dict()
    assert a == b


def test_structural_diff():
    assert structural_diff({"a": 1}, {"a": 1, "b": 2}) == []
    assert structural_diff({"a": 1}, {"a": 2}) == ["$.a: expected 1, got 2"]
    assert structural_diff({"a": 1}, {}) == ["$.a: missing"]
    assert structural_diff([1, 2], [1, 2, 3]) != []
    assert structural_diff({"x": True}, {"x": 1}) != []
    assert structural_diff({"l": [{"i": 0}]}, {"l": [{"i": 0, "length": 3}]}) == []


def test_mismatch_and_empty_scripts(tmp_path):
    (tmp_path / "bad.hsl").write_text("ring R = F(7)[x] / (x^2);\nM = ideal(x);\nlength(M);\n")
    (tmp_path / "bad.json").write_text(json.dumps({"tags": ["t"], "results": [{"payload": {"length": 2}}]}))
    (tmp_path / "empty.hsl").write_text("")
    (tmp_path / "empty.json").write_text(json.dumps({"tags": ["t"], "results": []}))
    (tmp_path / "broken.hsl").write_text("ring R = F(7)[x]; theta(M, M);")
    summary = corpus_run(directory=tmp_path)
    by_name = {r.name: r for r in summary.results}
    assert not by_name["bad"].passed and "length" in by_name["bad"].diffs[0]
    assert by_name["empty"].passed
    assert not by_name["broken"].passed and "UnboundName" in by_name["broken"].diffs[0]


def test_every_script_has_a_golden():
    for script in CORPUS_DIR.glob("*.hsl"):
        assert script.with_suffix(".json").exists(), script.name
