import json

from quatram.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def records(out):
    return [json.loads(line) for line in out.splitlines() if line]


def test_catalog_tag2_e2(capsys):
    code, out = run_cli(capsys, "catalog", "--tag", "2", "--e", "2")
    assert code == 0
    recs = records(out)
    assert [(r["s1"], r["s2"], r["s3"]) for r in recs] == \
        [(1, 5, 13), (1, 7, 15), (3, 5, 13)]
    assert all(r["schema"] == 1 and r["tag"] == "2" for r in recs)
    assert all(r["hasse_arf_integral"] for r in recs)


def test_catalog_all_tags(capsys):
    code, out = run_cli(capsys, "catalog", "--e", "2")
    recs = records(out)
    tags = [r["tag"] for r in recs]
    assert set(tags) <= {"1", "1*", "2"}
    assert len(recs) == 11  # 4 tag-1, 4 tag-1*, 3 tag-2 at e = 2


def test_catalog_hasse_arf_filter(capsys):
    code, out = run_cli(capsys, "catalog", "--e", "2", "--only-hasse-arf")
    recs = records(out)
    assert [(r["s1"], r["s2"], r["s3"]) for r in recs] == \
        [(1, 2, 3), (3, 5, 9)]
    assert all(not r["hasse_arf_integral"] for r in recs)
    assert recs[0]["upper"] == "1|3/2"


def test_catalog_csv(capsys):
    code, out = run_cli(capsys, "catalog", "--tag", "2", "--e", "2",
                        "--format", "csv")
    lines = out.splitlines()
    assert lines[0].startswith("schema,field,tag,e,s1,s2,s3")
    assert len(lines) == 4


def test_witness_match(capsys):
    code, out = run_cli(capsys, "witness", "--field", "Q2i",
                        "--triple", "1,7,15")
    assert code == 0
    rec = records(out)[-1]
    assert rec["match"] is True
    assert (rec["s1"], rec["s2"], rec["s3"]) == (1, 7, 15)
    assert rec["tag"] == "2"
    assert {"u_class", "v_class", "k_class"} <= rec.keys()


def test_witness_not_in_catalog(capsys):
    code, out = run_cli(capsys, "witness", "--field", "Q2i",
                        "--triple", "1,6,15")
    assert code == 1


def test_verify_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out = run_cli(capsys, "verify", "--field", "Q2i",
                            "--samples", "5", "--seed", "7")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    summary = records(outs[0])[-1]
    assert summary["violations"] == 0
    assert summary["accepted"] == 5


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "quatram.cfg"
    cfg.write_text("format = csv\nfield = Q2i\nseed = 7\n")
    code, out = run_cli(capsys, "--config", str(cfg), "verify",
                        "--samples", "3")
    assert code == 0
    assert out.splitlines()[0].startswith("schema,")
