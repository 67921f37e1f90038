"""WebSocket RPC service exposing one debug session.

Wire format: UTF-8 JSON, one message per frame. Requests are
{id, method, params}; each gets exactly one {id, result} or
{id, error: {code, message, data?}} response. Every state-changing request is
followed by a {event: "snapshot", data: <state document>} broadcast to all
connected clients, so every client converges on the same view.

The same newline-delimited message surface is available on stdin/stdout for
headless use.
"""

import asyncio
import json
import sys

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from pydantic import BaseModel, Field, ValidationError

from .dispatch import Dispatcher, state_doc
from .session import SessionError

DEFAULT_PORT = 7317


class RpcRequest(BaseModel):
    id: int
    method: str
    params: dict = Field(default_factory=dict)


class RpcError(BaseModel):
    code: int
    message: str
    data: object = None


def _error_body(code, message, data=None):
    return RpcError(code=code, message=message, data=data).model_dump(exclude_none=True)


def process_frame(dispatcher, raw):
    """One request in, (response, event_or_None, fatal) out.

    fatal means the frame was not a valid request envelope; the transport
    should close, leaving the session untouched.
    """
    msg = None
    try:
        msg = json.loads(raw)
        req = RpcRequest.model_validate(msg)
    except (json.JSONDecodeError, ValidationError) as e:
        rid = msg.get("id") if isinstance(msg, dict) and isinstance(msg.get("id"), int) else None
        return (
            {"id": rid, "error": _error_body(103, f"malformed request: {e}")},
            None,
            True,
        )
    try:
        result, changed = dispatcher.handle(req.method, req.params)
    except SessionError as e:
        return (
            {"id": req.id, "error": _error_body(e.code, e.message, e.data)},
            None,
            False,
        )
    event = {"event": "snapshot", "data": state_doc(dispatcher.session)} if changed else None
    return {"id": req.id, "result": result}, event, False


def create_app(dispatcher=None, static_dir=None) -> FastAPI:
    dispatcher = dispatcher or Dispatcher()
    app = FastAPI(title="dibug")
    app.state.dispatcher = dispatcher
    clients = set()
    lock = asyncio.Lock()

    @app.websocket("/session")
    async def session_endpoint(ws: WebSocket):
        await ws.accept()
        clients.add(ws)
        try:
            while True:
                raw = await ws.receive_text()
                async with lock:
                    response, event, fatal = process_frame(dispatcher, raw)
                    await ws.send_text(json.dumps(response))
                    if event is not None:
                        payload = json.dumps(event)
                        for client in list(clients):
                            try:
                                await client.send_text(payload)
                            except Exception:
                                clients.discard(client)
                if fatal:
                    await ws.close()
                    break
        except WebSocketDisconnect:
            pass
        finally:
            clients.discard(ws)

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def run_stdio(dispatcher=None, stdin=None, stdout=None) -> int:
    """Newline-delimited JSON loop over stdio; returns a process exit code."""
    dispatcher = dispatcher or Dispatcher()
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        response, event, fatal = process_frame(dispatcher, line)
        print(json.dumps(response), file=stdout, flush=True)
        if event is not None:
            print(json.dumps(event), file=stdout, flush=True)
        if fatal:
            return 1
    return 0


def serve(host="127.0.0.1", port=DEFAULT_PORT, static_dir=None, dispatcher=None):
    """Run the WebSocket service until interrupted."""
    import uvicorn

    app = create_app(dispatcher, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
