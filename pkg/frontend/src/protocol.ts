// Wire types for the debugger service: JSON frames over one WebSocket.
// Everything here mirrors the server's state document; the client renders it
// verbatim and never computes program semantics on its own.

export type Scope = Record<string, [number, number]>;

export interface ProgramEntry {
  pid: string;
  name: string;
  source: string;
  inputs: number[];
  step_size: number;
  breakpoints: number[];
  // debug mode only
  cursor?: number;
  line?: number;
  status?: string;
  bindings?: Record<string, number | number[]>;
  final?: string;
  trace_length?: number;
}

export type ResultValue =
  | { kind: "int"; value: number }
  | { kind: "bool"; value: boolean }
  | { kind: "unknown" };

export interface WatchEntry {
  wid: number;
  text: string;
  scope: Scope;
  value?: ResultValue;
}

export interface CbpEntry {
  cbid: number;
  text: string;
  scope: Scope;
  enabled: boolean;
}

export type Halt =
  | { kind: "none" }
  | { kind: "all_terminated" }
  | { kind: "breakpoint"; pid: string; line: number }
  | { kind: "conditional"; cbid: number };

export interface StateDoc {
  mode: "edit" | "debug";
  programs: ProgramEntry[];
  conditional_breakpoints: CbpEntry[];
  watches: WatchEntry[];
  halt: Halt;
}

export interface Diagnostic {
  line: number;
  column: number;
  kind: string;
  message: string;
}

export interface RpcError {
  code: number;
  message: string;
  data?: unknown;
}

export interface ResponseFrame {
  id: number | null;
  result?: unknown;
  error?: RpcError;
}

export interface EventFrame {
  event: "state";
  data: StateDoc;
}

export function resultText(v: ResultValue | undefined): string {
  if (!v || v.kind === "unknown") return "?";
  return String(v.value);
}

export function bindingText(v: number | number[]): string {
  return Array.isArray(v) ? `[${v.join(", ")}]` : String(v);
}

export function haltText(h: Halt): string {
  switch (h.kind) {
    case "none":
      return "halt: none";
    case "all_terminated":
      return "halt: all programs finished";
    case "breakpoint":
      return `halt: breakpoint ${h.pid} line ${h.line}`;
    case "conditional":
      return `halt: conditional breakpoint ${h.cbid}`;
  }
}

export function scopeText(scope: Scope): string {
  const parts = Object.keys(scope)
    .sort()
    .map((pid) => `${pid}:${scope[pid][0]}-${scope[pid][1]}`);
  return parts.join(" ");
}
