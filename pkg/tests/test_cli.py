import io
import json

import pytest

from dibug.cli import main, repl
from dibug.relexpr import UNKNOWN, Bool, Int
from dibug.textfmt import result_text, value_text

GOLDEN_SCENARIO = """condbreak 0
A line 8 status running final returned(2)
A.a = 2
A.b = 2
A.i = 1
B line 8 status running final returned(-1998)
B.b = -2
B.a = 4
B.i = 1
halt conditional 0
"""


def write_script(tmp_path, name, lines):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n")
    return path


def test_scenario_golden(workdir, capfd):
    script = write_script(workdir, "scenario.dbg", [
        "load A gcd_correct.wl",
        "load B gcd_swapped.wl",
        "input A 2 4",
        "input B 2 4",
        'condbreak "A.a != B.b"',
        "start",
        "continue",
        "print",
        "quit",
    ])
    code = main(["run", str(script)])
    out, err = capfd.readouterr()
    assert code == 0
    assert err == ""
    assert out == GOLDEN_SCENARIO


def test_fix_scenario(workdir, capfd):
    script = write_script(workdir, "fix.dbg", [
        "load A gcd_correct.wl",
        "load B gcd_swapped.wl",
        "input A 2 4",
        "input B 2 4",
        "start",
        "stop",
        "load B gcd_fixed.wl",
        "start",
        "print",
        "quit",
    ])
    code = main(["run", str(script)])
    out, _ = capfd.readouterr()
    assert code == 0
    assert "A line 1 status running final returned(2)" in out
    assert "B line 1 status running final returned(2)" in out


def test_breakpoint_and_stepsize_verbs(workdir, capfd):
    script = write_script(workdir, "bp.dbg", [
        "load A gcd_correct.wl",
        "input A 2 4",
        "stepsize A 2",
        "break A 5",
        "start",
        "continue",
        "print",
        "quit",
    ])
    code = main(["run", str(script)])
    out, _ = capfd.readouterr()
    assert code == 0
    assert "A line 5 status running" in out
    assert "halt breakpoint A 5" in out


def test_singlestep_and_watch_verbs(workdir, capfd):
    script = write_script(workdir, "ss.dbg", [
        "load A gcd_correct.wl",
        "input A 2 4",
        'watch "A.i"',
        "start",
        "singlestep A",
        "singlestep A",
        "print",
        "quit",
    ])
    code = main(["run", str(script)])
    out, _ = capfd.readouterr()
    assert code == 0
    assert "watch 0" in out.splitlines()[0]
    assert "A line 3 status running" in out
    assert 'watch 0 "A.i" = 0' in out


def test_scoped_condbreak_verb(workdir, capfd):
    script = write_script(workdir, "scoped.dbg", [
        "load A gcd_correct.wl",
        "load B gcd_swapped.wl",
        "input A 2 4",
        "input B 2 4",
        'condbreak "A.a != B.b" A:1-1',
        "start",
        "continue",
        "print",
        "quit",
    ])
    code = main(["run", str(script)])
    out, _ = capfd.readouterr()
    assert code == 0
    assert "halt all_terminated" in out


def test_save_and_open_round_trip(workdir, capfd):
    saver = write_script(workdir, "save.dbg", [
        "load A gcd_correct.wl",
        "input A 2 4",
        'watch "A.i"',
        "save saved.dibug.json",
        "quit",
    ])
    assert main(["run", str(saver)]) == 0
    assert (workdir / "saved.dibug.json").exists()
    opener = write_script(workdir, "open.dbg", [
        "open saved.dibug.json",
        "start",
        "print",
        "quit",
    ])
    code = main(["run", str(opener)])
    out, _ = capfd.readouterr()
    assert code == 0
    assert "A line 1 status running final returned(2)" in out
    assert 'watch 0 "A.i" = ?' in out


def test_open_resolves_source_paths(workdir, capfd):
    doc = {
        "version": 1,
        "programs": [{"pid": "A", "path": "gcd_correct.wl", "inputs": [2, 4]}],
    }
    (workdir / "paths.dibug.json").write_text(json.dumps(doc))
    script = write_script(workdir, "open.dbg", [
        "open paths.dibug.json",
        "start",
        "print",
        "quit",
    ])
    code = main(["run", str(script)])
    out, _ = capfd.readouterr()
    assert code == 0
    assert "A line 1 status running final returned(2)" in out


def test_importcex_verb(workdir, capfd):
    (workdir / "inputs.cex.json").write_text(json.dumps([{"pid": "A", "inputs": [6, 9]}]))
    script = write_script(workdir, "cex.dbg", [
        "load A gcd_correct.wl",
        "input A 2 4",
        "importcex inputs.cex.json",
        "start",
        "print",
        "quit",
    ])
    code = main(["run", str(script)])
    out, _ = capfd.readouterr()
    assert code == 0
    assert "A line 1 status running final returned(3)" in out
    assert "A.a = 6" in out


def test_script_comments_and_blank_lines(workdir, capfd):
    script = write_script(workdir, "c.dbg", [
        "# whole-line comment",
        "",
        "load A gcd_correct.wl  # trailing comment",
        "input A 2 4",
        "quit",
    ])
    assert main(["run", str(script)]) == 0


def test_script_error_reports_file_and_line(workdir, capfd):
    script = write_script(workdir, "bad.dbg", ["load A gcd_correct.wl", "step"])
    code = main(["run", str(script)])
    _, err = capfd.readouterr()
    assert code == 1
    assert f"{script}:2: error: stepping requires debug mode" in err


def test_script_unknown_command(workdir, capfd):
    script = write_script(workdir, "bad.dbg", ["frobnicate"])
    code = main(["run", str(script)])
    _, err = capfd.readouterr()
    assert code == 1
    assert "unknown command 'frobnicate'" in err


def test_script_compile_failure_prints_diagnostics(workdir, capfd):
    (workdir / "broken.wl").write_text("int main( {\n}\n")
    script = write_script(workdir, "bad.dbg", ["load A broken.wl", "input A", "start"])
    code = main(["run", str(script)])
    _, err = capfd.readouterr()
    assert code == 1
    assert "error: compilation failed" in err
    assert "A: 1:" in err and "parse error" in err


def test_script_bad_scope_argument(workdir, capfd):
    script = write_script(workdir, "bad.dbg", ['condbreak "A.a != 0" A:x-2'])
    code = main(["run", str(script)])
    _, err = capfd.readouterr()
    assert code == 1
    assert "bad scope 'A:x-2'" in err


def test_load_into_unavailable_slot(workdir, capfd):
    script = write_script(workdir, "bad.dbg", ["load C gcd_correct.wl"])
    code = main(["run", str(script)])
    _, err = capfd.readouterr()
    assert code == 1
    assert "cannot load into 'C': next free slot is 'B'" in err


def test_missing_script_file(tmp_path, capfd):
    code = main(["run", str(tmp_path / "nope.dbg")])
    _, err = capfd.readouterr()
    assert code == 1
    assert "error:" in err


# --- repl ---

def test_repl_echoes_state_and_survives_errors(workdir):
    cmds = (
        f"load A {workdir}/gcd_correct.wl\n"
        "input A 2 4\n"
        "start\n"
        "step\n"
        "bogus\n"
        "stop\n"
        "quit\n"
    )
    out = io.StringIO()
    code = repl(stdin=io.StringIO(cmds), out=out)
    text = out.getvalue()
    assert code == 0
    assert text.startswith("dibug repl")
    assert "A line 1 status running" in text  # echoed after start
    assert "A line 2 status running" in text  # echoed after step
    assert "error: unknown command 'bogus'" in text


def test_repl_ends_on_eof(workdir):
    out = io.StringIO()
    assert repl(stdin=io.StringIO("print\n"), out=out) == 0
    assert "error: inspecting state requires debug mode" in out.getvalue()


# --- exec ---

def test_exec_status_line(workdir, capfd):
    code = main(["exec", str(workdir / "gcd_swapped.wl"), "--args", "2", "4"])
    out, _ = capfd.readouterr()
    assert code == 0
    assert out == "status returned(-1998)\n"


def test_exec_print_trace(workdir, capfd):
    code = main(["exec", str(workdir / "gcd_correct.wl"), "--args", "2", "4", "--print-trace"])
    out, _ = capfd.readouterr()
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "point 0 line 1 depth 1 status running"
    assert lines[-2] == "points 8"
    assert lines[-1] == "status returned(2)"
    assert len(lines) == 10


def test_exec_wrong_arity(workdir, capfd):
    code = main(["exec", str(workdir / "gcd_correct.wl")])
    _, err = capfd.readouterr()
    assert code == 1
    assert "main expects 2 inputs, got 0" in err


def test_exec_compile_error(workdir, capfd):
    (workdir / "broken.wl").write_text("int main( {\n}\n")
    code = main(["exec", str(workdir / "broken.wl")])
    _, err = capfd.readouterr()
    assert code == 1
    assert "parse error" in err


def test_exec_missing_file(tmp_path, capfd):
    code = main(["exec", str(tmp_path / "nope.wl")])
    _, err = capfd.readouterr()
    assert code == 1


def test_main_requires_subcommand(capfd):
    with pytest.raises(SystemExit):
        main([])


# --- snapshot text helpers ---

def test_value_text():
    assert value_text(5) == "5"
    assert value_text(-3) == "-3"
    assert value_text((1, 2)) == "[1, 2]"
    assert value_text(()) == "[]"


def test_result_text():
    assert result_text(UNKNOWN) == "?"
    assert result_text(Bool(True)) == "true"
    assert result_text(Bool(False)) == "false"
    assert result_text(Int(-3)) == "-3"
