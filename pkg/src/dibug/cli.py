"""Command line front door: scripted sessions, a REPL, the service, and a
one-shot program runner.

`dibg run script.dbg` replays a command script against a fresh session and is
the headless path to every debugger feature. `dibg repl` is the same command
set interactively. `dibg serve` starts the WebSocket service. `dibg exec`
compiles and runs one program, optionally dumping its whole trace.

Script verbs mirror the session operations one-to-one:

    load A gcd1.wl          input A 2 4           stepsize B 3
    break A 4               condbreak "A.a != B.b" [A:3-9 ...]
    watch "A.a - B.b"       start | stop | step | stepback | stepover
    stepout | singlestep A  continue | print | save f | open f
    importcex f             quit
"""

import argparse
import json
import shlex
import sys

from .dispatch import Dispatcher
from .frontend import compile_program
from .diagnostics import CompileError
from .interp import execute
from .persist import resolve_sources, save_session
from .service import DEFAULT_PORT, run_stdio, serve
from .session import SessionError, SourceErrors
from .textfmt import format_diagnostics, format_snapshot

# verbs that take no arguments and map straight onto a method
_PLAIN_VERBS = {
    "start": "debug.start",
    "stop": "debug.stop",
    "step": "debug.step",
    "stepback": "debug.stepBack",
    "stepover": "debug.stepOver",
    "stepout": "debug.stepOut",
    "continue": "debug.continue",
}


class CommandError(Exception):
    pass


def _parse_scope(args):
    """Scope arguments of the form `A:3-9`."""
    scope = {}
    for arg in args:
        pid, sep, span = arg.partition(":")
        start, sep2, end = span.partition("-")
        if not (sep and sep2 and start.isdigit() and end.isdigit()):
            raise CommandError(f"bad scope '{arg}' (expected P:start-end)")
        scope[pid] = [int(start), int(end)]
    return scope


def _int_args(args, what):
    try:
        return [int(a) for a in args]
    except ValueError:
        raise CommandError(f"{what} must be integers") from None


class CommandLoop:
    """Shared engine for scripts and the REPL."""

    def __init__(self, out=None, base_dir=".", echo_state=False):
        self.dispatcher = Dispatcher()
        self.out = out if out is not None else sys.stdout
        self.base_dir = base_dir
        self.echo_state = echo_state
        self.done = False

    @property
    def session(self):
        return self.dispatcher.session

    def call(self, method, **params):
        return self.dispatcher.handle(method, params)

    def run_line(self, line):
        words = shlex.split(line, comments=True)
        if not words:
            return
        verb, args = words[0], words[1:]
        handler = getattr(self, f"cmd_{verb}", None)
        if handler is None and verb not in _PLAIN_VERBS:
            raise CommandError(f"unknown command '{verb}'")
        if handler is not None:
            handler(args)
        else:
            _, changed = self.call(_PLAIN_VERBS[verb])
            self._maybe_echo(changed)

    def _maybe_echo(self, changed):
        if self.echo_state and changed and self.session.mode == "debug":
            print(format_snapshot(self.session.get_snapshot()), file=self.out)

    def _path(self, arg):
        import os

        return arg if os.path.isabs(arg) else os.path.join(self.base_dir, arg)

    # --- verbs with arguments ---

    def cmd_load(self, args):
        if len(args) != 2:
            raise CommandError("usage: load <pid> <file.wl>")
        pid, path = args
        with open(self._path(path), encoding="utf-8") as f:
            text = f.read()
        if pid not in self.session.pids():
            result, _ = self.call("program.add")
            if result["pid"] != pid:
                raise CommandError(f"cannot load into '{pid}': next free slot is '{result['pid']}'")
        _, changed = self.call("program.setSource", pid=pid, source=text)
        self._maybe_echo(changed)

    def cmd_input(self, args):
        if len(args) < 1:
            raise CommandError("usage: input <pid> <ints...>")
        _, changed = self.call(
            "program.setInputs", pid=args[0], inputs=_int_args(args[1:], "inputs")
        )
        self._maybe_echo(changed)

    def cmd_stepsize(self, args):
        if len(args) != 2:
            raise CommandError("usage: stepsize <pid> <n>")
        _, changed = self.call(
            "program.setStepSize", pid=args[0], size=_int_args(args[1:], "step size")[0]
        )
        self._maybe_echo(changed)

    def cmd_break(self, args):
        if len(args) != 2:
            raise CommandError("usage: break <pid> <line>")
        _, changed = self.call(
            "bp.toggle", pid=args[0], line=_int_args(args[1:], "line")[0]
        )
        self._maybe_echo(changed)

    def cmd_condbreak(self, args):
        if not args:
            raise CommandError('usage: condbreak "<expr>" [P:start-end ...]')
        result, changed = self.call(
            "cbp.add", text=args[0], scope=_parse_scope(args[1:])
        )
        print(f"condbreak {result['cbid']}", file=self.out)
        self._maybe_echo(changed)

    def cmd_watch(self, args):
        if not args:
            raise CommandError('usage: watch "<expr>" [P:start-end ...]')
        result, changed = self.call("watch.add", text=args[0], scope=_parse_scope(args[1:]))
        print(f"watch {result['wid']}", file=self.out)
        self._maybe_echo(changed)

    def cmd_singlestep(self, args):
        if len(args) != 1:
            raise CommandError("usage: singlestep <pid>")
        _, changed = self.call("debug.singleStep", pid=args[0])
        self._maybe_echo(changed)

    def cmd_print(self, args):
        print(format_snapshot(self.session.get_snapshot()), file=self.out)

    def cmd_save(self, args):
        if len(args) != 1:
            raise CommandError("usage: save <file>")
        with open(self._path(args[0]), "wb") as f:
            f.write(save_session(self.session))

    def cmd_open(self, args):
        import os

        if len(args) != 1:
            raise CommandError("usage: open <file>")
        path = self._path(args[0])
        with open(path, "rb") as f:
            doc = json.load(f)
        doc = resolve_sources(doc, os.path.dirname(path) or ".")
        _, changed = self.call("session.open", document=doc)
        self._maybe_echo(changed)

    def cmd_importcex(self, args):
        if len(args) != 1:
            raise CommandError("usage: importcex <file>")
        with open(self._path(args[0]), encoding="utf-8") as f:
            entries = json.load(f)
        _, changed = self.call("cex.import", entries=entries)
        self._maybe_echo(changed)

    def cmd_quit(self, args):
        self.done = True


def _describe(err) -> str:
    if isinstance(err, SourceErrors):
        return f"error: {err.message}\n{format_diagnostics(err.diagnostics)}"
    if isinstance(err, SessionError):
        return f"error: {err.message}"
    return f"error: {err}"


def run_script(path, out=None) -> int:
    import os

    out = out if out is not None else sys.stdout
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    loop = CommandLoop(out=out, base_dir=os.path.dirname(os.path.abspath(path)))
    for lineno, line in enumerate(lines, start=1):
        try:
            loop.run_line(line)
        except (CommandError, SessionError, OSError, ValueError) as e:
            out.flush()
            print(f"{path}:{lineno}: {_describe(e)}", file=sys.stderr)
            return 1
        if loop.done:
            break
    out.flush()
    return 0


def repl(stdin=None, out=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    out = out if out is not None else sys.stdout
    loop = CommandLoop(out=out, base_dir=".", echo_state=True)
    print("dibug repl; commands: load input stepsize break condbreak watch "
          "start stop step stepback stepover stepout singlestep continue "
          "print save open importcex quit", file=out)
    while not loop.done:
        print("> ", end="", file=out, flush=True)
        line = stdin.readline()
        if not line:
            break
        try:
            loop.run_line(line)
        except (CommandError, SessionError, OSError, ValueError) as e:
            print(_describe(e), file=out)
    out.flush()
    return 0


def exec_program(path, args, print_trace=False, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        program = compile_program(text)
    except CompileError as e:
        for d in e.diagnostics:
            print(str(d), file=sys.stderr)
        return 1
    if len(args) != len(program.main.params):
        print(
            f"error: main expects {len(program.main.params)} inputs, got {len(args)}",
            file=sys.stderr,
        )
        return 1
    trace = execute(program, args)
    if print_trace:
        for p in trace.points:
            print(f"point {p.index} line {p.line} depth {p.depth} status {p.status}", file=out)
        print(f"points {len(trace.points)}", file=out)
    print(f"status {trace.final_status}", file=out)
    out.flush()
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="dibg", description="relational time-travel debugger")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a command script")
    p_run.add_argument("script")

    sub.add_parser("repl", help="interactive command loop")

    p_serve = sub.add_parser("serve", help="start the WebSocket service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=DEFAULT_PORT)
    p_serve.add_argument("--stdio", action="store_true", help="JSON lines on stdio instead")
    p_serve.add_argument("--static", default=None, help="also serve this directory over HTTP")

    p_exec = sub.add_parser("exec", help="run one program to completion")
    p_exec.add_argument("program")
    p_exec.add_argument("--args", type=int, nargs="*", default=[])
    p_exec.add_argument("--print-trace", action="store_true")

    ns = parser.parse_args(argv)
    if ns.command == "run":
        return run_script(ns.script)
    if ns.command == "repl":
        return repl()
    if ns.command == "serve":
        if ns.stdio:
            return run_stdio()
        serve(host=ns.host, port=ns.port, static_dir=ns.static)
        return 0
    return exec_program(ns.program, ns.args, print_trace=ns.print_trace)
