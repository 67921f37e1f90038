import json

import pytest

from dibug.persist import (
    SESSION_VERSION,
    import_counterexample,
    load_counterexample,
    load_session,
    parse_document,
    resolve_sources,
    save_session,
    session_to_doc,
)
from dibug.session import DebugSession, FileFormatError, WrongModeError


def rich_session(gcd_correct, gcd_swapped):
    s = DebugSession()
    s.set_source("A", gcd_correct)
    s.set_inputs("A", [2, 4])
    s.set_step_size("A", 2)
    s.toggle_breakpoint("A", 4)
    s.toggle_breakpoint("A", 9)
    s.add_program()
    s.set_source("B", gcd_swapped)
    s.set_inputs("B", [2, 4])
    s.add_conditional_breakpoint("A.a != B.b", scope={"B": (3, 9)})
    s.add_watch("A.a - B.b")
    s.add_watch("A.i", scope={"A": (3, 9)})
    return s


def test_round_trip(gcd_correct, gcd_swapped):
    s = rich_session(gcd_correct, gcd_swapped)
    data = save_session(s)
    loaded = load_session(data)
    assert loaded.mode == "edit"
    for orig, back in zip(s.slots, loaded.slots):
        assert (orig.pid, orig.name, orig.source) == (back.pid, back.name, back.source)
        assert orig.inputs == back.inputs
        assert orig.step_size == back.step_size
        assert orig.breakpoints == back.breakpoints
    assert [(c.expr.text, c.scope) for c in loaded.cond_breakpoints] == [
        ("A.a != B.b", {"B": (3, 9)})
    ]
    assert [(w.expr.text, w.scope) for w in loaded.watches] == [
        ("A.a - B.b", {}),
        ("A.i", {"A": (3, 9)}),
    ]
    # a second save of the loaded session produces identical bytes
    assert save_session(loaded) == data


def test_canonical_bytes(gcd_correct, gcd_swapped):
    s = rich_session(gcd_correct, gcd_swapped)
    data = save_session(s)
    assert data == save_session(s)
    assert data.endswith(b"\n")
    doc = json.loads(data)
    assert doc["version"] == SESSION_VERSION
    # keys are sorted throughout
    assert data == (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()
    # breakpoints are stored sorted
    assert doc["programs"][0]["breakpoints"] == [4, 9]


def test_save_requires_edit_mode(paired_session):
    paired_session.start_debug()
    with pytest.raises(WrongModeError):
        save_session(paired_session)


def test_loaded_ids_restart_from_zero(gcd_correct, gcd_swapped):
    s = rich_session(gcd_correct, gcd_swapped)
    s.remove_conditional_breakpoint(0)
    s.add_conditional_breakpoint("A.a != B.b")  # cbid 1
    loaded = load_session(save_session(s))
    assert [c.cbid for c in loaded.cond_breakpoints] == [0]
    assert [w.wid for w in loaded.watches] == [0, 1]


def test_load_continues_pid_sequence(gcd_correct):
    doc = {
        "version": 1,
        "programs": [
            {"pid": "A", "source": gcd_correct},
            {"pid": "D", "source": gcd_correct},
        ],
    }
    s = load_session(doc)
    assert s.pids() == ["A", "D"]
    assert s.add_program() == "E"


def test_load_defaults(gcd_correct):
    doc = {"version": 1, "programs": [{"pid": "A", "source": gcd_correct}]}
    s = load_session(doc)
    slot = s.slot("A")
    assert slot.inputs == [] and slot.step_size == 1 and slot.breakpoints == set()
    assert slot.name == "A"


def bad_load(doc, needle):
    with pytest.raises(FileFormatError) as exc:
        load_session(doc)
    assert needle in exc.value.message
    assert exc.value.code == 304


def test_load_rejects_bad_documents(gcd_correct):
    entry = {"pid": "A", "source": gcd_correct}
    bad_load("not json {", "not valid JSON")
    bad_load(b"\xff\xfe", "not valid UTF-8")
    bad_load([], "must be an object")
    bad_load({"version": 2, "programs": [entry]}, "unsupported session file version")
    bad_load({"version": 1}, "at least one program")
    bad_load({"version": 1, "programs": []}, "at least one program")
    bad_load({"version": 1, "programs": [entry, entry]}, "duplicate program ids")
    bad_load({"version": 1, "programs": [{"pid": "a", "source": ""}]}, "invalid program id")
    bad_load({"version": 1, "programs": [{"pid": "A"}]}, "needs a source string")
    bad_load(
        {"version": 1, "programs": [{"pid": "A", "path": "x.wl"}]},
        "resolve it before loading",
    )
    bad_load(
        {"version": 1, "programs": [{"pid": "A", "source": "", "inputs": [1.5]}]},
        "inputs must be integers",
    )
    bad_load(
        {"version": 1, "programs": [{"pid": "A", "source": "", "step_size": 0}]},
        "step_size must be an integer >= 1",
    )
    bad_load(
        {"version": 1, "programs": [{"pid": "A", "source": "", "breakpoints": [0]}]},
        "breakpoints must be line numbers",
    )
    bad_load(
        {"version": 1, "programs": [entry],
         "watches": [{"text": "B.b"}]},
        "unknown program 'B'",
    )
    bad_load(
        {"version": 1, "programs": [entry],
         "conditional_breakpoints": [{"text": "A.a"}]},
        "must be a boolean expression",
    )
    bad_load(
        {"version": 1, "programs": [entry],
         "watches": [{"text": "A.a", "scope": {"A": [9, 3]}}]},
        "invalid scope range",
    )
    bad_load(
        {"version": 1, "programs": [entry], "watches": [{"scope": {}}]},
        "needs a text field",
    )


def test_resolve_sources(tmp_path, gcd_correct):
    (tmp_path / "prog.wl").write_text(gcd_correct)
    doc = {
        "version": 1,
        "programs": [
            {"pid": "A", "path": "prog.wl", "inputs": [2, 4]},
            {"pid": "B", "source": "inline"},
        ],
    }
    resolved = resolve_sources(doc, str(tmp_path))
    assert resolved["programs"][0]["source"] == gcd_correct
    assert "path" not in resolved["programs"][0]
    assert resolved["programs"][0]["inputs"] == [2, 4]
    assert resolved["programs"][1]["source"] == "inline"
    # the input document is not mutated
    assert "path" in doc["programs"][0]


def test_resolve_sources_missing_file(tmp_path):
    doc = {"version": 1, "programs": [{"pid": "A", "path": "nope.wl"}]}
    with pytest.raises(FileFormatError, match="cannot read source file"):
        resolve_sources(doc, str(tmp_path))


def test_parse_document_accepts_bytes_and_str():
    assert parse_document(b'{"a": 1}') == {"a": 1}
    assert parse_document('{"a": 1}') == {"a": 1}


# --- counterexamples ---

def test_load_counterexample():
    doc = [{"pid": "A", "inputs": [2, 4]}, {"pid": "B", "inputs": []}]
    assert load_counterexample(doc) == [("A", [2, 4]), ("B", [])]
    assert load_counterexample(json.dumps(doc)) == [("A", [2, 4]), ("B", [])]


def test_load_counterexample_rejects_bad_documents():
    with pytest.raises(FileFormatError, match="must be a list"):
        load_counterexample({})
    with pytest.raises(FileFormatError, match="duplicate program id"):
        load_counterexample([{"pid": "A", "inputs": []}, {"pid": "A", "inputs": []}])
    with pytest.raises(FileFormatError, match="inputs for 'A' must be integers"):
        load_counterexample([{"pid": "A", "inputs": [True]}])
    with pytest.raises(FileFormatError, match="invalid program id"):
        load_counterexample([{"inputs": []}])


def test_import_counterexample(paired_session):
    s = paired_session
    import_counterexample(s, [{"pid": "A", "inputs": [6, 9]}])
    assert s.slot("A").inputs == [6, 9]
    assert s.slot("B").inputs == [2, 4]
    import_counterexample(s, [])  # no-op
    assert s.slot("A").inputs == [6, 9]


def test_import_counterexample_is_atomic(paired_session):
    s = paired_session
    with pytest.raises(Exception) as exc:
        import_counterexample(
            s, [{"pid": "A", "inputs": [1, 1]}, {"pid": "Q", "inputs": []}]
        )
    assert exc.value.code == 201
    assert s.slot("A").inputs == [2, 4]  # nothing was written


def test_import_counterexample_requires_edit_mode(paired_session):
    paired_session.start_debug()
    with pytest.raises(WrongModeError):
        import_counterexample(paired_session, [{"pid": "A", "inputs": [1, 1]}])
