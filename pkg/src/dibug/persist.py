"""Session and counterexample documents.

Session files (`.dibug.json`) persist the edit-mode configuration: sources,
inputs, step sizes, breakpoints, conditional breakpoints, and watches; traces
are never persisted. Saving always inlines source text; a hand-written file
may instead give a relative `.wl` path per program, which must be resolved
against its base directory (resolve_sources) before the document is loaded.

Counterexample files (`.cex.json`) are a list of {pid, inputs} records, one
per program, as handed over from a relational verifier.
"""

import json
import os

from .session import (
    DebugSession,
    FileFormatError,
    ProgramSlot,
    SessionError,
    WrongModeError,
)

SESSION_VERSION = 1


def _canonical_bytes(doc):
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")


def _scope_to_doc(scope):
    return {pid: [start, end] for pid, (start, end) in sorted(scope.items())}


def session_to_doc(session) -> dict:
    return {
        "version": SESSION_VERSION,
        "programs": [
            {
                "pid": s.pid,
                "name": s.name,
                "source": s.source,
                "inputs": list(s.inputs),
                "step_size": s.step_size,
                "breakpoints": sorted(s.breakpoints),
            }
            for s in session.slots
        ],
        "conditional_breakpoints": [
            {"text": cb.expr.text, "scope": _scope_to_doc(cb.scope)}
            for cb in session.cond_breakpoints
        ],
        "watches": [
            {"text": w.expr.text, "scope": _scope_to_doc(w.scope)}
            for w in session.watches
        ],
    }


def save_session(session) -> bytes:
    """Canonical UTF-8 JSON for the session; requires edit mode."""
    if session.mode != "edit":
        raise WrongModeError("saving requires edit mode")
    return _canonical_bytes(session_to_doc(session))


def parse_document(data):
    """Bytes or str to a JSON document; malformed input is a file format error."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise FileFormatError(f"not valid UTF-8: {e}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"not valid JSON: {e}") from None


def _want(cond, message):
    if not cond:
        raise FileFormatError(message)


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _check_pid(pid):
    _want(
        isinstance(pid, str) and len(pid) == 1 and "A" <= pid <= "Z",
        f"invalid program id {pid!r}",
    )
    return pid


def _program_entry(entry):
    _want(isinstance(entry, dict), "program entry must be an object")
    pid = _check_pid(entry.get("pid"))
    if "path" in entry:
        raise FileFormatError(
            f"program '{pid}' uses a source path; resolve it before loading"
        )
    source = entry.get("source")
    _want(isinstance(source, str), f"program '{pid}' needs a source string")
    name = entry.get("name", pid)
    _want(isinstance(name, str), f"program '{pid}' has a non-string name")
    inputs = entry.get("inputs", [])
    _want(
        isinstance(inputs, list) and all(_is_int(v) for v in inputs),
        f"program '{pid}' inputs must be integers",
    )
    step_size = entry.get("step_size", 1)
    _want(
        _is_int(step_size) and step_size >= 1,
        f"program '{pid}' step_size must be an integer >= 1",
    )
    breakpoints = entry.get("breakpoints", [])
    _want(
        isinstance(breakpoints, list) and all(_is_int(b) and b >= 1 for b in breakpoints),
        f"program '{pid}' breakpoints must be line numbers",
    )
    return ProgramSlot(
        pid,
        name,
        source=source,
        inputs=list(inputs),
        step_size=step_size,
        breakpoints=set(breakpoints),
    )


def _scope_from_doc(doc):
    _want(isinstance(doc, dict), "scope must be an object")
    scope = {}
    for pid, span in doc.items():
        _check_pid(pid)
        _want(
            isinstance(span, list) and len(span) == 2 and all(_is_int(v) for v in span),
            f"scope for '{pid}' must be [start_line, end_line]",
        )
        scope[pid] = (span[0], span[1])
    return scope


def load_session(doc) -> DebugSession:
    """Build an edit-mode session from a parsed document (bytes/str accepted)."""
    if isinstance(doc, (bytes, str)):
        doc = parse_document(doc)
    _want(isinstance(doc, dict), "session document must be an object")
    _want(doc.get("version") == SESSION_VERSION, "unsupported session file version")
    programs = doc.get("programs")
    _want(isinstance(programs, list) and programs, "at least one program required")
    slots = [_program_entry(e) for e in programs]
    pids = [s.pid for s in slots]
    _want(len(set(pids)) == len(pids), "duplicate program ids")

    session = DebugSession()
    session.slots = slots
    session._next_pid = max(ord(p) - ord("A") for p in pids) + 1
    for key, add in (
        ("conditional_breakpoints", session.add_conditional_breakpoint),
        ("watches", session.add_watch),
    ):
        entries = doc.get(key, [])
        _want(isinstance(entries, list), f"{key} must be a list")
        for entry in entries:
            _want(isinstance(entry, dict) and isinstance(entry.get("text"), str),
                  f"each {key.replace('_', ' ')} entry needs a text field")
            scope = _scope_from_doc(entry.get("scope", {}))
            try:
                add(entry["text"], scope)
            except SessionError as e:
                raise FileFormatError(f"invalid entry in {key}: {e.message}") from None
    return session


def resolve_sources(doc, base_dir) -> dict:
    """Replace relative `path` entries with inline source text read from disk."""
    _want(isinstance(doc, dict), "session document must be an object")
    programs = doc.get("programs")
    _want(isinstance(programs, list), "programs must be a list")
    out = dict(doc)
    resolved = []
    for entry in programs:
        _want(isinstance(entry, dict), "program entry must be an object")
        if "path" in entry and "source" not in entry:
            path = entry["path"]
            _want(isinstance(path, str), "source path must be a string")
            try:
                with open(os.path.join(base_dir, path), encoding="utf-8") as f:
                    text = f.read()
            except OSError as e:
                raise FileFormatError(f"cannot read source file {path!r}: {e}") from None
            entry = {k: v for k, v in entry.items() if k != "path"}
            entry["source"] = text
        resolved.append(entry)
    out["programs"] = resolved
    return out


def load_counterexample(doc) -> list:
    """Validate a counterexample document into a list of (pid, inputs) pairs."""
    if isinstance(doc, (bytes, str)):
        doc = parse_document(doc)
    _want(isinstance(doc, list), "counterexample document must be a list")
    entries = []
    seen = set()
    for item in doc:
        _want(isinstance(item, dict), "counterexample entry must be an object")
        pid = _check_pid(item.get("pid"))
        _want(pid not in seen, f"duplicate program id '{pid}'")
        seen.add(pid)
        inputs = item.get("inputs")
        _want(
            isinstance(inputs, list) and all(_is_int(v) for v in inputs),
            f"inputs for '{pid}' must be integers",
        )
        entries.append((pid, list(inputs)))
    return entries


def import_counterexample(session, doc):
    """Set each listed program's inputs; everything else is untouched."""
    if session.mode != "edit":
        raise WrongModeError("importing a counterexample requires edit mode")
    entries = load_counterexample(doc)
    for pid, _ in entries:
        session.slot(pid)  # all pids must exist before any write
    for pid, inputs in entries:
        session.set_inputs(pid, inputs)
