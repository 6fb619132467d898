import json

import pytest

from modalkit.cli import main
from modalkit.kripke import frame_from_doc, model_from_doc, eval_modal
from modalkit.syntax import parse_fol, parse_modal


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_modal(capsys):
    code, out, _ = run(capsys, "parse", "--text", "[]p -> p")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "[] p -> p"
    assert "modal-depth: 1" in lines[1]


def test_parse_fol(capsys):
    code, out, _ = run(capsys, "parse", "--kind", "fol", "--text", "!x. ~R(x,x)")
    assert code == 0
    assert "quantifier-rank: 1" in out


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "parse", "--text", "p &")
    assert code == 3
    assert "position" in err


def test_gen_frame_ring(capsys):
    code, out, _ = run(capsys, "gen-frame", "--family", "ring", "--n", "6")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["worlds"]) == 7
    frame_from_doc(doc)


def test_gen_frame_union(capsys):
    code, out, _ = run(capsys, "gen-frame", "--family", "union", "--n", "5")
    assert code == 0
    assert len(json.loads(out)["worlds"]) == 8


def test_translate_st_only(capsys):
    code, out, _ = run(capsys, "translate", "--logic", "st-only", "--text", "[]false")
    assert code == 0
    f = parse_fol(out.strip())
    assert "W" in str(f) and "R" in str(f)


def test_translate_embedding_reparses(capsys):
    code, out, _ = run(capsys, "translate", "--logic", "L0", "--text", "[]false")
    assert code == 0
    parse_fol(out.strip())


def test_translate_tptp(capsys):
    code, out, _ = run(capsys, "translate", "--logic", "st-only",
                       "--text", "[]p", "--tptp")
    assert code == 0
    assert out.strip().startswith("fof(")


def test_check_refuted_with_countermodel(capsys):
    code, out, _ = run(capsys, "check", "--logic", "L1",
                       "--text", "~(<>[]false & <>^4<>[]false & ~<>^2<>[]false & ~<>^3<>[]false)")
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "refuted" and doc["world"] == "w1"
    model = model_from_doc(doc["model"])
    refuted = parse_modal("~(<>[]false & <>^4<>[]false & ~<>^2<>[]false & ~<>^3<>[]false)")
    assert eval_modal(model, doc["world"], {}, refuted) is False


def test_check_member(capsys):
    code, out, _ = run(capsys, "check", "--logic", "L0", "--text",
                       "~(<>[]false & <>^2[]false)")
    assert code == 0
    assert json.loads(out)["verdict"] == "no_countermodel"


def test_check_budget_exceeded(capsys):
    code, out, _ = run(capsys, "check", "--logic", "L0",
                       "--text", "forall y. (P(y) | ~P(y))", "--budget", "5")
    assert code == 2
    assert json.loads(out)["verdict"] == "budget_exceeded"


def test_check_missing_file(capsys):
    code, _, err = run(capsys, "check", "--logic", "L0",
                       "--formula", "/nonexistent/f.txt")
    assert code == 3
    assert "/nonexistent/f.txt" in err


def test_ef_compare(tmp_path, capsys):
    for name, n in [("a.json", 4), ("b.json", 5)]:
        code, out, _ = run(capsys, "gen-frame", "--family", "ring", "--n", str(n))
        (tmp_path / name).write_text(out)
    code, out, _ = run(capsys, "ef-compare",
                       "--left", str(tmp_path / "a.json"),
                       "--right", str(tmp_path / "b.json"),
                       "--rounds", "2", "--find-rank", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["duplicator_wins"] is True
    assert doc["smallest_distinguishing_rank"] == 3


def test_ef_compare_corrupt_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    good = tmp_path / "good.json"
    run(capsys, "gen-frame", "--family", "chain", "--n", "2")
    good.write_text(json.dumps({"worlds": ["u"], "edges": []}))
    code, _, err = run(capsys, "ef-compare", "--left", str(bad),
                       "--right", str(good), "--rounds", "1")
    assert code == 3
    assert "bad.json" in err


def test_verify_lemmas_all_pass(tmp_path, capsys):
    out_file = tmp_path / "report.jsonl"
    code, _, err = run(capsys, "verify-lemmas", "--out", str(out_file),
                       "--alpha-max", "3", "--beta-max", "3",
                       "--random-frames", "5",
                       "--correspondence-samples", "20",
                       "--truncation-samples", "20",
                       "--marked-max", "2", "--ef-max", "1")
    assert code == 0
    records = [json.loads(line) for line in out_file.read_text().splitlines()]
    names = [r["check"] for r in records]
    assert names == sorted(names)
    assert records[0]["check"] == "_meta"
    assert all(r["pass"] for r in records[1:])
    assert "PASS" in err


def test_verify_lemmas_skips_beta_below_range(tmp_path, capsys):
    out_file = tmp_path / "report.jsonl"
    code, _, _ = run(capsys, "verify-lemmas", "--out", str(out_file),
                     "--beta-max", "1", "--alpha-max", "2",
                     "--random-frames", "2", "--correspondence-samples", "5",
                     "--truncation-samples", "5", "--marked-max", "1",
                     "--ef-max", "1")
    assert code == 0
    beta = [json.loads(line) for line in out_file.read_text().splitlines()
            if json.loads(line)["check"] == "beta_parity"][0]
    assert beta["pass"] is None
    assert "at least 2" in beta["skipped"]
