"""Method-name dispatch shared by the WebSocket service and the CLI.

Every operation on a session is addressed by a dotted method name with a
params object, and answers with a result object. State-changing methods are
flagged so callers know when to emit a fresh state document.
"""

from .persist import import_counterexample, load_session, session_to_doc
from .relexpr import UNKNOWN, Bool, Int
from .session import (
    DebugSession,
    InvalidArgumentError,
    SessionError,
    UnknownMethodError,
    WrongModeError,
)

__all__ = ["Dispatcher", "state_doc", "SessionError"]


def _status_json(status):
    return str(status)


def _value_json(v):
    return list(v) if isinstance(v, tuple) else v


def _result_json(r):
    if r is UNKNOWN:
        return {"kind": "unknown"}
    if isinstance(r, Bool):
        return {"kind": "bool", "value": r.value}
    if isinstance(r, Int):
        return {"kind": "int", "value": r.value}
    raise TypeError(f"unexpected result {r!r}")


def _halt_json(halt):
    kind = halt[0]
    if kind == "breakpoint":
        return {"kind": kind, "pid": halt[1], "line": halt[2]}
    if kind == "conditional":
        return {"kind": kind, "cbid": halt[1]}
    return {"kind": kind}


def _scope_json(scope):
    return {pid: [start, end] for pid, (start, end) in sorted(scope.items())}


def state_doc(session) -> dict:
    """Full state document: the session snapshot plus all edit-mode fields."""
    debugging = session.mode == "debug"
    snap = session.get_snapshot() if debugging else None
    views = {p.pid: p for p in snap.programs} if snap else {}
    watch_values = {w.wid: w.value for w in snap.watches} if snap else {}

    programs = []
    for s in session.slots:
        entry = {
            "pid": s.pid,
            "name": s.name,
            "source": s.source,
            "inputs": list(s.inputs),
            "step_size": s.step_size,
            "breakpoints": sorted(s.breakpoints),
        }
        if debugging:
            view = views[s.pid]
            entry.update(
                cursor=view.cursor,
                line=view.line,
                status=_status_json(view.status),
                bindings={k: _value_json(v) for k, v in view.bindings.items()},
                final=_status_json(view.final_status),
                trace_length=len(s.trace.points),
            )
        programs.append(entry)

    watches = []
    for w in session.watches:
        entry = {"wid": w.wid, "text": w.expr.text, "scope": _scope_json(w.scope)}
        if debugging:
            entry["value"] = _result_json(watch_values[w.wid])
        watches.append(entry)

    return {
        "mode": session.mode,
        "programs": programs,
        "conditional_breakpoints": [
            {
                "cbid": cb.cbid,
                "text": cb.expr.text,
                "scope": _scope_json(cb.scope),
                "enabled": cb.enabled,
            }
            for cb in session.cond_breakpoints
        ],
        "watches": watches,
        "halt": _halt_json(session.halt_reason) if debugging else {"kind": "none"},
    }


def _diagnostics_json(diagnostics):
    return {
        pid: [
            {"line": d.line, "column": d.column, "kind": d.kind, "message": d.message}
            for d in diags
        ]
        for pid, diags in diagnostics.items()
    }


# --- param readers ---


def _get(params, key, kinds, what):
    value = params.get(key)
    if not isinstance(value, kinds) or isinstance(value, bool):
        raise InvalidArgumentError(f"parameter '{key}' must be {what}")
    return value


def _pid(params):
    return _get(params, "pid", str, "a program id")


def _scope_param(params):
    scope = params.get("scope")
    if scope is None:
        return {}
    if not isinstance(scope, dict):
        raise InvalidArgumentError("parameter 'scope' must be an object")
    out = {}
    for pid, span in scope.items():
        if not (isinstance(span, (list, tuple)) and len(span) == 2):
            raise InvalidArgumentError("scope entries must be [start_line, end_line]")
        out[pid] = (span[0], span[1])
    return out


class Dispatcher:
    """Routes dotted method names to one shared DebugSession."""

    def __init__(self, session=None):
        self.session = session or DebugSession()

    def handle(self, method, params):
        """Returns (result, state_changed); raises SessionError on failure."""
        handler = _METHODS.get(method)
        if handler is None:
            raise UnknownMethodError(f"unknown method '{method}'")
        if not isinstance(params, dict):
            raise InvalidArgumentError("params must be an object")
        func, changes = handler
        return func(self, params), changes

    # --- handlers ---

    def _program_add(self, params):
        return {"pid": self.session.add_program()}

    def _program_remove(self, params):
        self.session.remove_program(_pid(params))
        return {}

    def _set_source(self, params):
        self.session.set_source(_pid(params), _get(params, "source", str, "a string"))
        return {}

    def _set_inputs(self, params):
        inputs = params.get("inputs")
        if not isinstance(inputs, list):
            raise InvalidArgumentError("parameter 'inputs' must be a list")
        self.session.set_inputs(_pid(params), inputs)
        return {}

    def _set_step_size(self, params):
        self.session.set_step_size(_pid(params), _get(params, "size", int, "an integer"))
        return {}

    def _start(self, params):
        try:
            self.session.start_debug()
        except SessionError as e:
            if e.code == 301:
                e.data = _diagnostics_json(e.data)
            raise
        return {}

    def _stop(self, params):
        self.session.stop_debug()
        return {}

    def _step(self, params):
        self.session.step()
        return {}

    def _step_back(self, params):
        self.session.step_back()
        return {}

    def _step_over(self, params):
        self.session.step_over()
        return {}

    def _step_out(self, params):
        self.session.step_out()
        return {}

    def _single_step(self, params):
        self.session.single_step(_pid(params))
        return {}

    def _continue(self, params):
        self.session.continue_run()
        return {}

    def _bp_toggle(self, params):
        self.session.toggle_breakpoint(_pid(params), _get(params, "line", int, "an integer"))
        return {}

    def _cbp_add(self, params):
        text = _get(params, "text", str, "a string")
        cbid = self.session.add_conditional_breakpoint(text, _scope_param(params))
        return {"cbid": cbid}

    def _cbp_remove(self, params):
        self.session.remove_conditional_breakpoint(_get(params, "cbid", int, "an integer"))
        return {}

    def _watch_add(self, params):
        text = _get(params, "text", str, "a string")
        return {"wid": self.session.add_watch(text, _scope_param(params))}

    def _watch_remove(self, params):
        self.session.remove_watch(_get(params, "wid", int, "an integer"))
        return {}

    def _state_get(self, params):
        return state_doc(self.session)

    def _session_save(self, params):
        if self.session.mode != "edit":
            raise WrongModeError("saving requires edit mode")
        return {"document": session_to_doc(self.session)}

    def _session_open(self, params):
        doc = params.get("document")
        self.session = load_session(doc)
        return {}

    def _cex_import(self, params):
        entries = params.get("entries")
        import_counterexample(self.session, entries)
        return {}


_METHODS = {
    "program.add": (Dispatcher._program_add, True),
    "program.remove": (Dispatcher._program_remove, True),
    "program.setSource": (Dispatcher._set_source, True),
    "program.setInputs": (Dispatcher._set_inputs, True),
    "program.setStepSize": (Dispatcher._set_step_size, True),
    "debug.start": (Dispatcher._start, True),
    "debug.stop": (Dispatcher._stop, True),
    "debug.step": (Dispatcher._step, True),
    "debug.stepBack": (Dispatcher._step_back, True),
    "debug.stepOver": (Dispatcher._step_over, True),
    "debug.stepOut": (Dispatcher._step_out, True),
    "debug.singleStep": (Dispatcher._single_step, True),
    "debug.continue": (Dispatcher._continue, True),
    "bp.toggle": (Dispatcher._bp_toggle, True),
    "cbp.add": (Dispatcher._cbp_add, True),
    "cbp.remove": (Dispatcher._cbp_remove, True),
    "watch.add": (Dispatcher._watch_add, True),
    "watch.remove": (Dispatcher._watch_remove, True),
    "state.get": (Dispatcher._state_get, False),
    "session.save": (Dispatcher._session_save, False),
    "session.open": (Dispatcher._session_open, True),
    "cex.import": (Dispatcher._cex_import, True),
}
