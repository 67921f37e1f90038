// WebSocket session client: numbered requests matched to responses, pushed
// state events handed to the owner, automatic reconnect after a drop.

import type { EventFrame, ResponseFrame, RpcError, StateDoc } from "./protocol.js";

export interface WsLike {
  readyState: number;
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
}

export type WsFactory = (url: string) => WsLike;

export interface ClientHooks {
  onOpen(): void;
  onClose(): void;
  onState(doc: StateDoc): void;
}

export class RpcFailure extends Error {
  constructor(readonly rpc: RpcError) {
    super(rpc.message);
  }
}

const WS_OPEN = 1;

interface Pending {
  resolve(value: unknown): void;
  reject(err: Error): void;
}

export class SessionClient {
  /** every frame actually sent, oldest first */
  readonly log: { method: string; params: unknown }[] = [];
  private ws: WsLike | null = null;
  private nextId = 1;
  private pending = new Map<number, Pending>();
  private closed = false;

  constructor(
    private readonly url: string,
    private readonly factory: WsFactory,
    private readonly hooks: ClientHooks,
    private readonly reconnectDelayMs = 1000,
  ) {}

  connect(): void {
    this.closed = false;
    const ws = this.factory(this.url);
    this.ws = ws;
    ws.onopen = () => this.hooks.onOpen();
    ws.onmessage = (ev) => this.handleMessage(ev.data);
    ws.onclose = () => this.handleClose(ws);
  }

  /** stop for good; no reconnect */
  shutdown(): void {
    this.closed = true;
    this.ws?.close();
  }

  get open(): boolean {
    return this.ws !== null && this.ws.readyState === WS_OPEN;
  }

  request(method: string, params: Record<string, unknown>): Promise<unknown> {
    if (!this.ws || this.ws.readyState !== WS_OPEN) {
      return Promise.reject(new Error("not connected"));
    }
    const id = this.nextId++;
    this.log.push({ method, params });
    this.ws.send(JSON.stringify({ id, method, params }));
    return new Promise((resolve, reject) => {
      this.pending.set(id, { resolve, reject });
    });
  }

  private handleMessage(text: string): void {
    const frame = JSON.parse(text) as ResponseFrame | EventFrame;
    if ("event" in frame) {
      if (frame.event === "state") this.hooks.onState(frame.data);
      return;
    }
    if (frame.id === null) return; // fatal protocol error; close follows
    const entry = this.pending.get(frame.id);
    if (!entry) return;
    this.pending.delete(frame.id);
    if (frame.error) entry.reject(new RpcFailure(frame.error));
    else entry.resolve(frame.result);
  }

  private handleClose(ws: WsLike): void {
    if (this.ws !== ws) return; // a stale socket closing late
    this.ws = null;
    for (const entry of this.pending.values()) {
      entry.reject(new Error("connection closed"));
    }
    this.pending.clear();
    this.hooks.onClose();
    if (!this.closed) {
      setTimeout(() => {
        if (!this.closed && this.ws === null) this.connect();
      }, this.reconnectDelayMs);
    }
  }
}
