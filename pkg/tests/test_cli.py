import json
import os

from eudsplit.cli import main
from eudsplit.conllu import load_conllu

from conftest import data_path, edges_of


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_split_writes_tree_files_and_repair_log(tmp_path, capsys):
    outdir = tmp_path / "trees"
    code, _ = run(capsys, "split", "--mode", "fixed", data_path("goldens.conllu"), str(outdir))
    assert code == 0
    for name in ("basic", "relative", "conjunct", "control"):
        assert (outdir / f"{name}.conllu").exists()
    basic = load_conllu(str(outdir / "basic.conllu"))
    tape = {s.sent_id: s for s in basic}["tape-01"]
    assert tape.token(7).basic_deprel == "acl:-1"
    assert all(t.deps == () for t in tape.tokens)
    log = (outdir / "repairs.tsv").read_text(encoding="utf-8")
    assert log.splitlines()[0] == "tree\tsent_id\ttoken\taction\tdetail"
    assert "relative\tpinchers-01\t10\treroot" in log


def test_split_empty_file(tmp_path, capsys):
    src = tmp_path / "empty.conllu"
    src.write_text("", encoding="utf-8")
    outdir = tmp_path / "out"
    code, _ = run(capsys, "split", str(src), str(outdir))
    assert code == 0
    assert (outdir / "basic.conllu").read_text(encoding="utf-8") == ""


def test_encode_decode_round_trip_via_files(tmp_path, capsys):
    labels = tmp_path / "labels.tsv"
    code, _ = run(capsys, "encode", data_path("stench_tree.conllu"), "-o", str(labels))
    assert code == 0
    lines = labels.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "That\t_\tdet"
    assert lines[5] == "stench\t<\\\\>\tobj"

    back = tmp_path / "tree.conllu"
    code, _ = run(capsys, "decode", str(labels), "-o", str(back))
    assert code == 0
    [original] = load_conllu(data_path("stench_tree.conllu"))
    [decoded] = load_conllu(str(back))
    assert [t.form for t in decoded.tokens] == [t.form for t in original.tokens]
    assert [(t.basic_head, t.basic_deprel) for t in decoded.tokens] == \
           [(t.basic_head, t.basic_deprel) for t in original.tokens]


def test_decode_repairs_corrupted_labels(tmp_path, capsys):
    labels = tmp_path / "labels.tsv"
    run(capsys, "encode", data_path("stench_tree.conllu"), "-o", str(labels))
    lines = labels.read_text(encoding="utf-8").splitlines()
    lines[1] = "church\t_\tnsubj"  # drop its brackets
    labels.write_text("\n".join(lines) + "\n", encoding="utf-8")
    out = tmp_path / "tree.conllu"
    code, _ = run(capsys, "decode", str(labels), "-o", str(out))
    assert code == 0  # repairs never fail the run
    [decoded] = load_conllu(str(out))
    assert decoded.n == 8


def test_split_then_collate_restores_deps(tmp_path, capsys):
    outdir = tmp_path / "trees"
    run(capsys, "split", "--mode", "fixed", data_path("suite.conllu"), str(outdir))
    pred = tmp_path / "pred.conllu"
    code, _ = run(
        capsys, "collate", "--drop-extra-roots",
        "--original", data_path("suite.conllu"), "-o", str(pred),
        str(outdir / "basic.conllu"), str(outdir / "relative.conllu"),
        str(outdir / "conjunct.conllu"), str(outdir / "control.conllu"),
    )
    assert code == 0
    gold = load_conllu(data_path("suite.conllu"))
    out = load_conllu(str(pred))
    for g, p in zip(gold, out):
        assert edges_of(g) == edges_of(p), g.sent_id
    # the suite file is canonically ordered, so the round trip is byte-identical
    assert pred.read_text(encoding="utf-8") == \
        open(data_path("suite.conllu"), encoding="utf-8").read()


def test_eval_text_and_json(tmp_path, capsys):
    code, out = run(capsys, "eval", data_path("suite.conllu"), data_path("suite.conllu"))
    assert code == 0
    assert "EUAS" in out and "100.00" in out
    code, out = run(capsys, "eval", "--format", "json",
                    data_path("suite.conllu"), data_path("suite.conllu"))
    assert code == 0
    payload = json.loads(out)
    assert payload["elas"]["f1"] == 100.0


def test_eval_directory_breakdown(tmp_path, capsys):
    for d in ("gold", "pred"):
        os.makedirs(tmp_path / d)
    for name, src in (("a.conllu", "goldens.conllu"), ("b.conllu", "suite.conllu")):
        data = open(data_path(src), encoding="utf-8").read()
        (tmp_path / "gold" / name).write_text(data, encoding="utf-8")
        (tmp_path / "pred" / name).write_text(data, encoding="utf-8")
    code, out = run(capsys, "eval", "--format", "json",
                    str(tmp_path / "gold"), str(tmp_path / "pred"))
    assert code == 0
    payload = json.loads(out)
    assert set(payload["breakdown"]) == {"a", "b"}


def test_roundtrip_fixed_mode_is_lossless(capsys):
    code, out = run(capsys, "roundtrip", "--mode", "fixed", "--drop-extra-roots",
                    "--format", "json", data_path("suite.conllu"))
    assert code == 0
    payload = json.loads(out)
    assert payload["euas"]["f1"] == 100.0
    assert payload["eulas"]["f1"] == 100.0
    assert payload["elas"]["f1"] == 100.0
    assert payload["warnings"]["encode_drops"] == 0


def test_roundtrip_faithful_mode_is_lossy(capsys):
    code, out = run(capsys, "roundtrip", "--mode", "faithful", "--format", "json",
                    data_path("suite.conllu"))
    assert code == 0
    payload = json.loads(out)
    assert payload["elas"]["f1"] < 100.0


def test_roundtrip_writes_predictions(tmp_path, capsys):
    pred = tmp_path / "pred.conllu"
    code, _ = run(capsys, "roundtrip", "--mode", "fixed", "--drop-extra-roots",
                  "--pred-out", str(pred), data_path("suite.conllu"))
    assert code == 0
    assert len(load_conllu(str(pred))) == 25


def test_roundtrip_frequency_predictor(capsys):
    code, out = run(capsys, "roundtrip", "--predictor", "frequency", "--drop-extra-roots",
                    "--format", "json", data_path("suite.conllu"))
    assert code == 0
    payload = json.loads(out)
    assert payload["elas"]["f1"] < 100.0


def test_trees_flag_restricts_the_pipeline(tmp_path, capsys):
    outdir = tmp_path / "trees"
    code, _ = run(capsys, "split", "--trees", "basic,relative",
                  data_path("goldens.conllu"), str(outdir))
    assert code == 0
    assert (outdir / "basic.conllu").exists()
    assert not (outdir / "conjunct.conllu").exists()


def test_stats_formats_and_figure(tmp_path, capsys):
    code, out = run(capsys, "stats", data_path("suite.conllu"))
    assert code == 0
    assert "in-degree" in out
    code, out = run(capsys, "stats", "--format", "csv", data_path("suite.conllu"))
    assert out.startswith("in_degree,node_count,coverage_pct")
    fig = tmp_path / "degrees.png"
    code, out = run(capsys, "stats", "--format", "json", "--figure", str(fig),
                    data_path("suite.conllu"))
    assert code == 0
    payload = json.loads(out)
    assert payload["coverage"]["2"] == 100.0
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_eval_figure(tmp_path, capsys):
    fig = tmp_path / "metrics.png"
    code, _ = run(capsys, "eval", "--figure", str(fig),
                  data_path("suite.conllu"), data_path("suite.conllu"))
    assert code == 0
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_jobs_flag_gives_identical_output(tmp_path, capsys):
    code, solo = run(capsys, "roundtrip", "--mode", "fixed", "--drop-extra-roots",
                     "--format", "json", data_path("suite.conllu"))
    assert code == 0
    code, multi = run(capsys, "roundtrip", "--mode", "fixed", "--drop-extra-roots",
                      "--format", "json", "--jobs", "2", data_path("suite.conllu"))
    assert code == 0
    assert solo == multi


def test_missing_file_fails_cleanly(capsys):
    assert main(["eval", "no_such.conllu", "also_missing.conllu"]) == 1


def test_reject_policy_fails_on_empty_nodes(tmp_path, capsys):
    src = tmp_path / "empty_nodes.conllu"
    src.write_text(
        "# sent_id = e-1\n"
        "1\ta\ta\tX\t_\t_\t0\troot\t0:root\t_\n"
        "1.1\tb\tb\tX\t_\t_\t_\t_\t1:dep\t_\n",
        encoding="utf-8",
    )
    assert main(["stats", str(src)]) == 0  # drop policy is the default
    assert main(["stats", "--empty-nodes", "reject", str(src)]) == 1
