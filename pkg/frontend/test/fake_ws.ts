// Scripted stand-in for the browser WebSocket: tests open/close it and feed
// frames by hand, and can read back everything the client sent.

import type { WsLike } from "../src/client.js";

export interface SentFrame {
  id: number;
  method: string;
  params: Record<string, unknown>;
}

export class FakeWebSocket implements WsLike {
  static all: FakeWebSocket[] = [];

  readyState = 0; // CONNECTING
  sent: string[] = [];
  onopen: ((ev?: unknown) => void) | null = null;
  onmessage: ((ev: { data: string }) => void) | null = null;
  onclose: ((ev?: unknown) => void) | null = null;

  constructor(readonly url: string) {
    FakeWebSocket.all.push(this);
  }

  send(data: string): void {
    if (this.readyState !== 1) throw new Error("send on non-open socket");
    this.sent.push(data);
  }

  close(): void {
    this.drop();
  }

  // --- test-side controls ---

  open(): void {
    this.readyState = 1;
    this.onopen?.();
  }

  drop(): void {
    if (this.readyState === 3) return;
    this.readyState = 3;
    this.onclose?.();
  }

  push(frame: unknown): void {
    this.onmessage?.({ data: JSON.stringify(frame) });
  }

  frames(): SentFrame[] {
    return this.sent.map((s) => JSON.parse(s) as SentFrame);
  }

  last(): SentFrame {
    const all = this.frames();
    if (!all.length) throw new Error("nothing sent");
    return all[all.length - 1];
  }

  /** answer the most recent request */
  respond(result: unknown = {}): void {
    this.push({ id: this.last().id, result });
  }

  fail(code: number, message: string, data?: unknown): void {
    const error: Record<string, unknown> = { code, message };
    if (data !== undefined) error.data = data;
    this.push({ id: this.last().id, error });
  }

  event(data: unknown): void {
    this.push({ event: "state", data });
  }

  static reset(): void {
    FakeWebSocket.all = [];
  }

  static latest(): FakeWebSocket {
    if (!FakeWebSocket.all.length) throw new Error("no socket created");
    return FakeWebSocket.all[FakeWebSocket.all.length - 1];
  }
}

export function fakeFactory(url: string): WsLike {
  return new FakeWebSocket(url);
}
