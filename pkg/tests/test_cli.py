import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from srlim.cli import (
    complex_from_document,
    document_digest,
    normalize_document,
    parse_document,
    run,
    serialize_document,
)

TRIANGLE = {"vertices": ["1", "2", "3"], "facets": [["1", "2"], ["2", "3"], ["1", "3"]]}
PENTAGON = {"vertices": list("12345"),
            "facets": [["1", "2"], ["2", "3"], ["3", "4"], ["4", "5"], ["1", "5"]]}
SQUARE = {"vertices": list("1234"), "facets": [["1", "2"], ["2", "3"], ["3", "4"], ["1", "4"]]}


def call(argv, doc):
    out, err = io.StringIO(), io.StringIO()
    text = doc if isinstance(doc, str) else json.dumps(doc)
    code = run(argv, stdin=io.StringIO(text), stdout=out, stderr=err)
    return code, (json.loads(out.getvalue()) if out.getvalue() else None), err.getvalue()


def test_bk_table_triangle():
    code, rep, _ = call(["bk-table", "--coeffs", "Q", "--jmax", "3", "--imax", "4"], TRIANGLE)
    assert code == 0
    entries = rep["result"]["table"]["entries"]
    col0 = [e["free_rank"] for e in entries if e["i"] == 0 and e["q"] % 2 == 0]
    assert col0 == [1, 3, 6, 9]
    assert all(e["free_rank"] == 0 and e["torsion"] == [] for e in entries if e["i"] > 0 or e["q"] % 2)
    assert set(rep) == {"command", "input_digest", "result", "version"}


def test_ci_pentagon_not_ci():
    code, rep, _ = call(["ci"], PENTAGON)
    assert code == 0
    res = rep["result"]
    assert res["ci"] is False
    a, b = res["witness"]
    assert set(a) & set(b)


def test_hilbert_degree_zero():
    for doc in (TRIANGLE, PENTAGON, {"vertices": [], "facets": []}):
        code, rep, _ = call(["hilbert", "--max-degree", "0"], doc)
        assert code == 0 and rep["result"]["coefficients"] == [1]


def test_simple_commands():
    assert call(["faces"], TRIANGLE)[1]["result"]["f_vector"] == [1, 3, 3]
    assert call(["nonfaces"], SQUARE)[1]["result"]["minimal_nonfaces"] == [["1", "3"], ["2", "4"]]
    assert len(call(["sr-basis", "--degree", "3"], TRIANGLE)[1]["result"]["basis"]) == 9
    assert call(["lim", "--degree", "3", "--coeffs", "Z"], TRIANGLE)[1]["result"]["limit"] == \
        {"free_rank": 9, "torsion": []}
    lims = call(["higher-lim", "--degree", "2", "--imax", "3"], SQUARE)[1]["result"]["lim"]
    assert [x["free_rank"] for x in lims] == [8, 0, 0, 0]
    for cmd in ("fat-check", "twin-check", "kan-check"):
        code, rep, _ = call([cmd, "--coeffs", "F3"], SQUARE)
        assert code == 0 and rep["result"]["pass"]


def test_model_commands():
    code, rep, _ = call(["model"], SQUARE)
    assert code == 0 and rep["result"]["model"]["differential"]["w2"] == "v2*v4"
    code, rep, _ = call(["koszul-check", "--cutoff", "8"], SQUARE)
    assert code == 0 and rep["result"]["koszul"]["dims"] == [1, 0, 4, 0, 8, 0, 12, 0, 16]
    code, rep, _ = call(["aut-gens"], SQUARE)
    assert code == 0 and rep["result"]["admissible_permutations"] == 8
    code, rep, _ = call(["model"], PENTAGON)
    assert code == 1 and rep["result"]["ci"] is False
    code, _, err = call(["model", "--coeffs", "F2"], SQUARE)
    assert code == 2


@pytest.mark.parametrize("doc", [
    "not json",
    "[]",
    {"vertices": ["1"], "facets": [["2"]]},
    {"vertices": ["1"], "facets": [["1", "1"]]},
    {"vertices": ["1"], "facets": [], "extra": 1},
    {"vertices": ["1"]},
    {"vertices": [1], "facets": []},
    {"vertices": ["1", "1"], "facets": []},
])
def test_input_errors_exit_2(doc):
    code, rep, err = call(["faces"], doc)
    assert code == 2 and rep is None and err.startswith("error:")


def test_bad_domain_exit_2():
    assert call(["faces", "--coeffs", "F4"], TRIANGLE)[0] == 2
    assert call(["faces", "--coeffs", "R"], TRIANGLE)[0] == 2


def test_check_failure_exit_1(monkeypatch):
    import srlim.cli as cli
    from srlim.checks import CheckResult
    monkeypatch.setattr(cli, "is_fat", lambda d: CheckResult.failed((0,), "forced"))
    code, rep, _ = call(["fat-check", "--jmax", "1"], TRIANGLE)
    assert code == 1
    assert rep["result"]["degrees"][0]["witness"] == ["1"]


def test_file_option(tmp_path):
    f = tmp_path / "k.json"
    f.write_text(json.dumps(TRIANGLE))
    code, rep, _ = call(["faces", "--file", str(f)], "")
    assert code == 0 and rep["input_digest"] == document_digest(TRIANGLE)
    assert call(["faces", "--file", str(tmp_path / "missing.json")], "")[0] == 2


def test_digest_ignores_presentation_order():
    shuffled = {"vertices": ["3", "1", "2"], "facets": [["3", "1"], ["2", "1"], ["3", "2"], ["1"]]}
    assert document_digest(shuffled) == document_digest(TRIANGLE)
    assert document_digest(SQUARE) != document_digest(TRIANGLE)


labels = st.lists(st.sampled_from(list("abcdefg")), min_size=1, max_size=6, unique=True)


@given(labels.flatmap(lambda ls: st.tuples(
    st.just(ls), st.lists(st.lists(st.sampled_from(ls), min_size=1, unique=True), max_size=5))))
def test_round_trip(data):
    ls, facets = data
    doc = {"vertices": ls, "facets": facets}
    norm = normalize_document(doc)
    again = normalize_document(parse_document(serialize_document(norm)))
    assert again == norm
    k1 = complex_from_document(doc)
    k2 = complex_from_document(norm)
    assert {frozenset(k1.face_labels(f)) for f in k1.faces} == \
        {frozenset(k2.face_labels(f)) for f in k2.faces}


def test_reports_are_byte_identical():
    outs = set()
    for threads in ("1", "4", "1"):
        out = io.StringIO()
        run(["fat-check", "--threads", threads], stdin=io.StringIO(json.dumps(SQUARE)), stdout=out)
        outs.add(out.getvalue())
    assert len(outs) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "srlim", "nonfaces"], input=json.dumps(TRIANGLE),
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["minimal_nonfaces"] == [["1", "2", "3"]]
    bad = subprocess.run([sys.executable, "-m", "srlim", "nope"], input="", capture_output=True, text=True)
    assert bad.returncode == 2
