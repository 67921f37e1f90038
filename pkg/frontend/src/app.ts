// Wiring between the session client and the view: one App owns the latest
// state document plus a few UI flags and re-renders on every change. All
// semantics stay on the server; a gesture is exactly one protocol request,
// and nothing is sent while offline or while a request is in flight.

import { RpcFailure, SessionClient, type WsFactory, type WsLike } from "./client.js";
import type { Diagnostic, StateDoc } from "./protocol.js";
import { render, type UiModel } from "./view.js";

export interface AppOptions {
  wsFactory?: WsFactory;
  reconnectDelayMs?: number;
}

export class App {
  readonly client: SessionClient;
  state: StateDoc | null = null;
  connected = false;
  busy = false;
  panelErrors: Record<string, string[]> = {};
  globalError = "";

  constructor(
    readonly root: HTMLElement,
    endpoint: string,
    opts: AppOptions = {},
  ) {
    const factory: WsFactory =
      opts.wsFactory ?? ((url) => new WebSocket(url) as unknown as WsLike);
    this.client = new SessionClient(
      endpoint,
      factory,
      {
        onOpen: () => this.handleOpen(),
        onClose: () => this.handleClose(),
        onState: (doc) => this.handleState(doc),
      },
      opts.reconnectDelayMs ?? 1000,
    );
  }

  start(): void {
    this.client.connect();
    this.render();
  }

  /** one user gesture: at most one request, ignored while offline or busy */
  gesture(method: string, params: Record<string, unknown>): void {
    if (!this.client.open || this.busy) return;
    this.busy = true;
    this.globalError = "";
    this.render();
    this.client
      .request(method, params)
      .then((result) => {
        if (method === "debug.start") this.panelErrors = {};
        if (method === "state.get") this.state = result as StateDoc;
      })
      .catch((err) => this.showError(err))
      .finally(() => {
        this.busy = false;
        this.render();
      });
  }

  private handleOpen(): void {
    this.connected = true;
    // resync: the full view is a function of state.get alone
    this.busy = true;
    this.render();
    this.client
      .request("state.get", {})
      .then((result) => {
        this.state = result as StateDoc;
      })
      .catch(() => {})
      .finally(() => {
        this.busy = false;
        this.render();
      });
  }

  private handleClose(): void {
    this.connected = false;
    this.busy = false;
    this.render();
  }

  private handleState(doc: StateDoc): void {
    this.state = doc;
    this.render();
  }

  private showError(err: unknown): void {
    if (err instanceof RpcFailure) {
      const { code, message, data } = err.rpc;
      if (code === 301 && data && typeof data === "object") {
        this.panelErrors = {};
        for (const [pid, diags] of Object.entries(data as Record<string, Diagnostic[]>)) {
          this.panelErrors[pid] = diags.map(
            (d) => `${d.line}:${d.column}: ${d.kind} error: ${d.message}`,
          );
        }
        return;
      }
      this.globalError = `error ${code}: ${message}`;
      return;
    }
    this.globalError = err instanceof Error ? err.message : String(err);
  }

  render(): void {
    const model: UiModel = {
      state: this.state,
      connected: this.connected,
      busy: this.busy,
      panelErrors: this.panelErrors,
      globalError: this.globalError,
      actions: { gesture: (m, p) => this.gesture(m, p) },
    };
    render(this.root, model);
  }
}

export function bind(root: HTMLElement, endpoint: string, opts: AppOptions = {}): App {
  const app = new App(root, endpoint, opts);
  app.start();
  return app;
}
