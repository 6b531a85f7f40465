import json

import pytest

from kimura3 import cli
from kimura3.errors import ProofViolation
from kimura3.polytope import Flow, Point, vertex_of


def call(capsys, *argv):
    code = cli.main(list(argv))
    out = json.loads(capsys.readouterr().out)
    return code, out["status"], out["payload"]


def test_gen_vertices(capsys):
    assert call(capsys, "gen-vertices", "--n", "2") == (0, "ok", ["00", "aa", "bb", "gg"])


def test_facets(capsys):
    code, _, payload = call(capsys, "facets", "--n", "3")
    assert code == 0 and len(payload) == 12
    assert {"g": "a", "A": [1]} in payload


def test_eval_s(capsys):
    code, _, payload = call(capsys, "eval-s", "--point", "aa/bb", "--A", "1", "--g", "b")
    assert code == 0 and payload["S"] == 0


def test_member(capsys):
    code, status, payload = call(capsys, "member", "--point", "aa/bb")
    assert (code, status) == (0, "ok")
    assert payload["member"] is False and payload["violated"] == {"g": "b", "A": [1]}
    _, _, payload = call(capsys, "member", "--point", "ab/ab")
    assert payload["member"] is True


def test_canonicalize(capsys):
    code, _, payload = call(capsys, "canonicalize", "--point", "00a/0bb/agg")
    assert code == 0 and payload["point"]["k"] == 3


def test_decompose(capsys, tmp_path):
    x = Point.from_presentation("0aa/0aa")
    f = tmp_path / "x.json"
    f.write_text(json.dumps({"columns": [list(c) for c in x.columns]}))
    code, _, payload = call(capsys, "decompose", "--point", str(f), "--trace")
    assert code == 0 and payload["trace"]
    total = vertex_of(Flow.parse(payload["flows"][0]))
    for s in payload["flows"][1:]:
        total = total + vertex_of(Flow.parse(s))
    assert total == x


def test_verify_normality(capsys):
    code, _, payload = call(capsys, "--json", "verify-normality", "--n", "1-2", "--k", "2-3")
    assert code == 0 and len(payload["reports"]) == 4
    assert all(r["witnesses"] == [] for r in payload["reports"])


def test_enumerate(capsys):
    code, _, payload = call(capsys, "enumerate", "--n", "2", "--k", "2", "--kind", "sums")
    assert code == 0 and payload["count"] == 10


def test_selfcheck(capsys):
    code, _, payload = call(capsys, "selfcheck")
    assert code == 0 and all(r["passed"] for r in payload)


@pytest.mark.parametrize(
    "argv",
    [
        ["decompose", "--point", "a/b"],
        ["decompose", "--point", "aa/b"],
        ["decompose", "--point", "aa/bb"],
        ["member", "--point", "a/0b"],
        ["eval-s", "--point", "aa/bb", "--A", "1,2", "--g", "a"],
        ["gen-vertices", "--n", "0"],
        ["bogus"],
        ["gen-vertices"],
        ["enumerate", "--n", "8", "--k", "8", "--budget", "100"],
    ],
)
def test_errors_exit_1(capsys, argv):
    code, status, payload = call(capsys, *argv)
    assert (code, status) == (1, "error") and payload["message"]


def test_proof_violation_exit_2(capsys, monkeypatch):
    def boom(x, k):
        raise ProofViolation("step left the polytope")

    monkeypatch.setattr(cli, "decompose", boom)
    assert call(capsys, "decompose", "--point", "ab/ab")[:2] == (2, "violation")


def test_witness_exit_2(capsys, monkeypatch):
    from kimura3.oracle import EnumerationReport

    fake = EnumerationReport(2, 2, 11, 10, [Point.from_presentation("aa/bb")])
    monkeypatch.setattr(cli, "verify_normality", lambda *a, **kw: fake)
    code, status, payload = call(capsys, "verify-normality", "--n", "2", "--k", "2")
    assert (code, status) == (2, "violation")
    assert payload["reports"][0]["witnesses"][0]["columns"] == [[0, 2, 0, 0], [0, 0, 2, 0]]
