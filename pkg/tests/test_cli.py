import json
from pathlib import Path

import pytest

from hopalg.cli import main
from hopalg.gstar import bstar_basis, steenrod_skeleton
from hopalg.bigraded import BiDegree

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "word, want", [("Sq1 Sq1", "0"), ("Sq2 Sq2", "Sq3 Sq1"), ("Sq4", "Sq4"), ("Sq2 Sq3", "Sq5 + Sq4 Sq1")]
)
def test_adem(capsys, word, want):
    assert run(capsys, "adem", word) == (0, want + "\n", "")


def test_adem_bad_input(capsys):
    code, _, err = run(capsys, "adem", "Sq0")
    assert code == 2 and "error" in err


def test_basis(capsys):
    assert run(capsys, "basis", "--degree", "0")[:2] == (0, "1\ncount 1\n")
    assert run(capsys, "basis", "--degree", "3")[:2] == (0, "Sq3, Sq2 Sq1\ncount 2\n")
    code, out, _ = run(capsys, "basis", "--degree", "10", "--oracle")
    assert code == 0 and out.rstrip().endswith("AGREE")
    assert run(capsys, "basis", "--degree", "-1")[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["resolve"])
    assert exc.value.code == 2
    capsys.readouterr()
    assert run(capsys, "gstar-verify", "--max-n", "-1")[0] == 2
    assert run(capsys, "relations", "--max-degree", "1")[0] == 2


def test_relations(capsys):
    code, out, _ = run(capsys, "relations", "--max-degree", "4")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == ["r1,1", "r1,2", "r2,2", "r1,3"]


@pytest.mark.parametrize("prime", ["2", "3"])
def test_gstar_verify(capsys, prime):
    code, out, _ = run(capsys, "gstar-verify", "--prime", prime, "--max-n", "12")
    assert code == 0 and "all checks pass" in out


def test_gstar_verify_broken_fixture(capsys):
    code, out, _ = run(
        capsys, "gstar-verify", "--presentation", str(FIXTURES / "broken_gstar.json"), "--max-n", "4"
    )
    assert code == 1
    last = out.splitlines()[-1]
    assert last.startswith("FAIL") and "[p]_1 [1]" in last


def test_presentation_roundtrip_through_cli(capsys, tmp_path):
    code, out, _ = run(capsys, "gstar-presentation", "--prime", "2", "--max-index", "8")
    assert code == 0
    p = tmp_path / "g.json"
    p.write_text(out)
    code, out, _ = run(capsys, "gstar-verify", "--presentation", str(p), "--max-n", "6")
    assert code == 0
    p.write_text("[]")
    assert run(capsys, "gstar-verify", "--presentation", str(p))[0] == 2
    assert run(capsys, "gstar-verify", "--presentation", str(tmp_path / "missing.json"))[0] == 2


def test_bstar_basis(capsys, tmp_path):
    assert run(capsys, "bstar-basis", "--degree", "0", "--dimension", "0")[:2] == (0, "1\ncount 1\n")
    sparse = tmp_path / "sparse.json"
    sparse.write_text(json.dumps({
        "schema": 1, "ring": {"p": 2, "exponent": 2},
        "generators": [{"label": "x", "degree": 2, "dimension": 0}],
    }))
    # nothing from E fits in (1,1)
    assert run(capsys, "bstar-basis", "--degree", "1", "--dimension", "1", "--skeleton", str(sparse))[:2] == (
        0,
        "[1]\ncount 1\n",
    )
    # with Sq1 available, [p]_1 (bidegree (0,1)) combines with it
    code, out, _ = run(capsys, "bstar-basis", "--degree", "1", "--dimension", "1")
    assert out.splitlines() == ["[1]", "[p]_1 Sq1", "Sq1 [p]_1", "count 3"]
    code, out, _ = run(capsys, "bstar-basis", "--degree", "4", "--dimension", "1")
    want = len(bstar_basis(steenrod_skeleton(4), BiDegree(4, 1)))
    assert code == 0 and out.splitlines()[-1] == f"count {want}"
    code, out, _ = run(capsys, "skeleton", "--max-degree", "3")
    p = tmp_path / "s.json"
    p.write_text(out)
    code, out, _ = run(capsys, "bstar-basis", "--degree", "3", "--dimension", "1", "--skeleton", str(p))
    assert code == 0 and out.splitlines()[-1] == f"count {len(bstar_basis(steenrod_skeleton(3), BiDegree(3, 1)))}"
    bad = json.loads(p.read_text())
    bad["rules"] = [{"lhs": ["Sq1"], "rhs": []}]
    p.write_text(json.dumps(bad))
    assert run(capsys, "bstar-basis", "--degree", "1", "--dimension", "0", "--skeleton", str(p))[0] == 2


def test_resolve_chart(capsys, tmp_path):
    out_path = tmp_path / "chart.json"
    code, _, _ = run(capsys, "resolve", "--max-s", "3", "--max-t", "8", "--out", str(out_path))
    assert code == 0
    classes = {(c["s"], c["t"]) for c in json.loads(out_path.read_text())["classes"]}
    assert {(1, 1), (1, 2), (1, 4), (1, 8)} <= classes
    code, _, _ = run(capsys, "resolve", "--max-s", "8", "--max-t", "9", "--out", str(out_path))
    classes = {(c["s"], c["t"]) for c in json.loads(out_path.read_text())["classes"]}
    assert all((s, s) in classes for s in range(9))


def test_resolve_oracle(capsys):
    code, out, _ = run(capsys, "resolve", "--max-s", "5", "--max-t", "13", "--oracle")
    assert code == 0 and "AGREE on s <= 5, t <= 13" in out


def test_resolve_render_and_dump(capsys, tmp_path):
    svg = tmp_path / "c.svg"
    dump = tmp_path / "d.json"
    code, _, _ = run(
        capsys, "resolve", "--max-s", "2", "--max-t", "5",
        "--render", "svg", "--render-out", str(svg), "--dump", str(dump),
    )
    assert code == 0 and svg.read_text().startswith("<svg")
    assert json.loads(dump.read_text())["complete"]
    code, out, _ = run(capsys, "resolve", "--max-s", "2", "--max-t", "5", "--render", "ascii")
    assert code == 0 and " |o" in out


def test_resolve_resource_bound(capsys, tmp_path):
    out_path = tmp_path / "chart.json"
    code, _, err = run(
        capsys, "resolve", "--max-s", "5", "--max-t", "13", "--max-basis", "12", "--out", str(out_path)
    )
    assert code == 3 and "frontier" in err
    assert json.loads(out_path.read_text())["schema"] == 1


def test_backend_flag(capsys):
    assert run(capsys, "--backend", "python", "adem", "Sq2 Sq2")[0] == 0


def test_resolve_deterministic(capsys, tmp_path):
    texts = []
    for threads in ("1", "1", "4"):
        p = tmp_path / f"c{len(texts)}.json"
        assert run(capsys, "resolve", "--max-s", "5", "--max-t", "13", "--threads", threads, "--out", str(p))[0] == 0
        texts.append(p.read_bytes())
    assert len(set(texts)) == 1
