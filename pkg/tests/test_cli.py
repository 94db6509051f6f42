import json

from quasihopf import cli
from quasihopf.qha import BUILTIN_NAMES


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_builtins_listed(capsys):
    code, out, _ = run(capsys, "builtins")
    assert code == 0
    for name in BUILTIN_NAMES:
        assert name in out


def test_export_verify_roundtrip(tmp_path, capsys):
    for name in BUILTIN_NAMES:
        path = tmp_path / f"{name}.json"
        code, _, _ = run(capsys, "export", name, "-o", str(path))
        assert code == 0
        code, out, _ = run(capsys, "verify", str(path), "--derived")
        assert code == 0, out
        # export of the re-imported algebra is bit-identical
        path2 = tmp_path / f"{name}2.json"
        code, _, _ = run(capsys, "export", name, "-o", str(path2))
        assert path.read_text() == path2.read_text()


def test_verify_flags_corrupted_alpha(tmp_path, capsys):
    code, out, _ = run(capsys, "export", "drinfeld_h2", "-o", str(tmp_path / "d.json"))
    obj = json.loads((tmp_path / "d.json").read_text())
    obj["alpha"] = ["1", "0"]
    (tmp_path / "bad.json").write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", str(tmp_path / "bad.json"))
    assert code == 1
    assert "H3" in out


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "--report", "json", "verify", "group_z2")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert all(set(item) == {"id", "status", "details"} for item in data["items"])


def test_missing_algebra_is_input_error(capsys):
    code, _, err = run(capsys, "verify", "/nonexistent/file.json")
    assert code == 2
    assert "error" in err


def test_malformed_json_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2


def test_end_command(capsys):
    code, out, _ = run(capsys, "end", "sweedler_h4")
    assert code == 0
    assert "spans_agree" in out


def test_end_with_module_file(tmp_path, capsys):
    # the regular module as an explicit file
    from quasihopf import qhio
    from quasihopf.repcat import regular_module
    from conftest import get_algebra
    h = get_algebra("drinfeld_h2")
    (tmp_path / "C.json").write_text(
        qhio.dumps(qhio.module_to_obj(regular_module(h))))
    code, out, _ = run(capsys, "end", "drinfeld_h2", "--left", str(tmp_path / "C.json"))
    assert code == 0


def test_check_triangle_scripts(capsys):
    code, _, _ = run(capsys, "check", "drinfeld_h2",
                     "--lhs", "(eta(C,C) * id(C)) ; eps(C*C, C)",
                     "--rhs", "id(C*C)")
    assert code == 0
    code, _, _ = run(capsys, "check", "drinfeld_h2",
                     "--lhs", "braid(A,A) ; mu(A)", "--rhs", "mu(A)")
    assert code == 0
    code, _, _ = run(capsys, "check", "drinfeld_h2",
                     "--lhs", "s(A) ; t(A)", "--rhs", "id(heart(A))")
    assert code == 0


def test_check_failure_exits_one(capsys):
    code, out, _ = run(capsys, "check", "sweedler_h4",
                       "--lhs", "braid(A,A)", "--rhs", "id(A*A)")
    assert code == 1
    assert "witness" in out


def test_check_syntax_error_exits_two(capsys):
    code, _, err = run(capsys, "check", "group_z2", "--lhs", "mu(A", "--rhs", "mu(A)")
    assert code == 2


def test_eval_text_and_json(capsys):
    code, out, _ = run(capsys, "eval", "group_z2", "--expr", "pi(C)")
    assert code == 0 and "->" in out
    code, out, _ = run(capsys, "--report", "json", "eval", "group_z2",
                       "--expr", "pi(C)")
    data = json.loads(out)
    assert data["source_dim"] == 4 and data["target_dim"] == 2


def test_equiv_command(capsys):
    code, out, _ = run(capsys, "equiv", "group_z2", "--objects", "unit,C")
    assert code == 0
    assert "hom_dims" in out


def test_context_file(tmp_path, capsys):
    from quasihopf import qhio
    from quasihopf.repcat import tensor, regular_module
    from conftest import get_algebra
    h = get_algebra("group_z2")
    cc = tensor(regular_module(h), regular_module(h))
    ctx = {"modules": {"CC": qhio.module_to_obj(cc)}}
    (tmp_path / "ctx.json").write_text(json.dumps(ctx))
    code, _, _ = run(capsys, "check", "group_z2", "--context", str(tmp_path / "ctx.json"),
                     "--lhs", "id(CC)", "--rhs", "id(C*C)")
    assert code == 0


def test_context_morphisms(tmp_path, capsys):
    from conftest import get_algebra
    h = get_algebra("group_z2")
    swap = {"source": "C", "target": "C", "matrix": ["0", "1", "1", "0"]}
    (tmp_path / "ctx.json").write_text(json.dumps({"morphisms": {"rg": swap}}))
    code, _, _ = run(capsys, "check", "group_z2",
                     "--context", str(tmp_path / "ctx.json"),
                     "--lhs", "rg ; rg", "--rhs", "id(C)")
    assert code == 0
    # a non-linear map is rejected at load time
    bad = {"source": "C", "target": "C", "matrix": ["1", "0", "0", "0"]}
    (tmp_path / "ctx2.json").write_text(json.dumps({"morphisms": {"pr": bad}}))
    code, _, err = run(capsys, "check", "group_z2",
                       "--context", str(tmp_path / "ctx2.json"),
                       "--lhs", "pr", "--rhs", "pr")
    assert code == 2


def test_invalid_context_module_exits_two(tmp_path, capsys):
    ctx = {"modules": {"X": {"dim": 1, "action": ["1", "5"]}}}  # not a module
    (tmp_path / "ctx.json").write_text(json.dumps(ctx))
    code, _, err = run(capsys, "check", "group_z2",
                       "--context", str(tmp_path / "ctx.json"),
                       "--lhs", "id(X)", "--rhs", "id(X)")
    assert code == 2
