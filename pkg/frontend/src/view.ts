// DOM rendering. The whole page is rebuilt from the latest state document on
// every change; the only local state carried across renders is the focused
// widget's in-progress value, so typing survives server pushes.

import {
  bindingText,
  haltText,
  resultText,
  scopeText,
  type CbpEntry,
  type ProgramEntry,
  type Scope,
  type StateDoc,
  type WatchEntry,
} from "./protocol.js";

export interface Actions {
  /** one user gesture, one protocol request */
  gesture(method: string, params: Record<string, unknown>): void;
}

export interface UiModel {
  state: StateDoc | null;
  connected: boolean;
  busy: boolean;
  panelErrors: Record<string, string[]>;
  globalError: string;
  actions: Actions;
}

type Child = Node | string;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | boolean | (() => void)> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "onclick") node.addEventListener("click", value as () => void);
    else if (key === "onchange") node.addEventListener("change", value as () => void);
    else if (typeof value === "boolean") {
      if (value) node.setAttribute(key, "");
    } else node.setAttribute(key, value as string);
  }
  node.append(...children);
  return node;
}

function parseIntList(text: string): number[] | null {
  const parts = text.trim().split(/\s+/).filter((p) => p.length > 0);
  const out: number[] = [];
  for (const part of parts) {
    if (!/^-?\d+$/.test(part)) return null;
    out.push(Number(part));
  }
  return out;
}

function scopeFromInputs(container: HTMLElement, pids: string[]): Scope {
  const scope: Scope = {};
  for (const pid of pids) {
    const start = container.querySelector<HTMLInputElement>(`input[data-opt="${pid}:start"]`);
    const end = container.querySelector<HTMLInputElement>(`input[data-opt="${pid}:end"]`);
    if (start && end && start.value !== "" && end.value !== "") {
      scope[pid] = [Number(start.value), Number(end.value)];
    }
  }
  return scope;
}

// --- sections ---

function controlBar(ui: UiModel): HTMLElement {
  const state = ui.state;
  const editing = state?.mode === "edit";
  const debugging = state?.mode === "debug";
  const dead = ui.busy || !ui.connected || !state;
  const go = (method: string) => () => ui.actions.gesture(method, {});

  const button = (id: string, label: string, method: string, enabledIn: boolean) =>
    el("button", { id, onclick: go(method), disabled: dead || !enabledIn }, label);

  return el(
    "div",
    { id: "controls" },
    button("btn-play", "Play", "debug.start", !!editing),
    button("btn-stop", "Stop", "debug.stop", !!debugging),
    button("btn-step", "Step", "debug.step", !!debugging),
    button("btn-stepback", "StepBack", "debug.stepBack", !!debugging),
    button("btn-stepover", "StepOver", "debug.stepOver", !!debugging),
    button("btn-stepout", "StepOut", "debug.stepOut", !!debugging),
    button("btn-continue", "Continue", "debug.continue", !!debugging),
    el(
      "button",
      { id: "btn-addprog", onclick: go("program.add"), disabled: dead || !editing },
      "Add program",
    ),
    el("span", { id: "mode" }, state ? `mode: ${state.mode}` : "connecting"),
    el("span", { id: "halt" }, state && debugging ? haltText(state.halt) : ""),
  );
}

function sourceListing(ui: UiModel, entry: ProgramEntry): HTMLElement {
  const listing = el("div", { class: "listing" });
  const lines = entry.source.length ? entry.source.split("\n") : [];
  lines.forEach((text, i) => {
    const n = i + 1;
    const gutter = el(
      "button",
      {
        class: entry.breakpoints.includes(n) ? "gutter bp" : "gutter",
        "data-line": String(n),
        disabled: ui.busy || !ui.connected,
        onclick: () => ui.actions.gesture("bp.toggle", { pid: entry.pid, line: n }),
      },
      String(n),
    );
    const row = el(
      "div",
      { class: n === entry.line ? "line current" : "line", "data-line": String(n) },
      gutter,
      el("span", { class: "code" }, text),
    );
    listing.append(row);
  });
  return listing;
}

function variableTable(entry: ProgramEntry): HTMLElement {
  const table = el("table", { class: "vars" });
  const bindings = entry.bindings ?? {};
  for (const [name, value] of Object.entries(bindings)) {
    table.append(
      el(
        "tr",
        { "data-var": name },
        el("td", {}, name),
        el("td", { class: "value" }, bindingText(value)),
      ),
    );
  }
  return table;
}

function panel(ui: UiModel, entry: ProgramEntry): HTMLElement {
  const state = ui.state!;
  const editing = state.mode === "edit";
  const dead = ui.busy || !ui.connected;
  const box = el("section", { class: "panel", "data-pid": entry.pid });

  const title = el("h2", {}, `Program ${entry.pid}`);
  if (editing) {
    title.append(
      el(
        "button",
        {
          class: "remove",
          disabled: dead,
          onclick: () => ui.actions.gesture("program.remove", { pid: entry.pid }),
        },
        "remove",
      ),
    );
  }
  box.append(title);

  if (editing) {
    const source = el("textarea", {
      class: "source",
      "data-key": `src:${entry.pid}`,
      rows: "12",
      disabled: dead,
    });
    source.value = entry.source;
    source.addEventListener("change", () =>
      ui.actions.gesture("program.setSource", { pid: entry.pid, source: source.value }),
    );
    box.append(source);
    if (entry.breakpoints.length) {
      box.append(el("div", { class: "bps" }, `breakpoints: ${entry.breakpoints.join(", ")}`));
    }
  } else {
    box.append(
      el(
        "div",
        { class: "position" },
        `point ${entry.cursor} line ${entry.line} ${entry.status ?? ""}`,
      ),
    );
    box.append(sourceListing(ui, entry));
  }

  const fields = el("div", { class: "fields" });
  const inputs = el("input", {
    class: "inputs",
    "data-key": `inputs:${entry.pid}`,
    disabled: dead || !editing,
  });
  inputs.value = entry.inputs.join(" ");
  inputs.addEventListener("change", () => {
    const parsed = parseIntList(inputs.value);
    if (parsed === null) {
      inputs.classList.add("bad");
      return;
    }
    inputs.classList.remove("bad");
    ui.actions.gesture("program.setInputs", { pid: entry.pid, inputs: parsed });
  });
  fields.append(el("label", {}, "inputs "), inputs);

  const size = el("input", {
    class: "stepsize",
    "data-key": `stepsize:${entry.pid}`,
    type: "number",
    min: "1",
    disabled: dead,
  });
  size.value = String(entry.step_size);
  size.addEventListener("change", () =>
    ui.actions.gesture("program.setStepSize", { pid: entry.pid, size: Number(size.value) }),
  );
  fields.append(el("label", {}, " step size "), size);

  if (!editing) {
    fields.append(
      el(
        "button",
        {
          class: "singlestep",
          disabled: dead,
          onclick: () => ui.actions.gesture("debug.singleStep", { pid: entry.pid }),
        },
        "SingleStep",
      ),
    );
  }
  box.append(fields);

  if (!editing) {
    box.append(variableTable(entry));
    box.append(el("div", { class: "returns" }, `returns ${entry.final ?? ""}`));
  }

  const errors = ui.panelErrors[entry.pid] ?? [];
  if (errors.length) {
    box.append(el("div", { class: "diags" }, ...errors.map((m) => el("div", { class: "diag" }, m))));
  }
  return box;
}

function optEditor(pids: string[]): HTMLElement {
  const body = el("div", { class: "opt-body" });
  for (const pid of pids) {
    body.append(
      el(
        "span",
        { class: "opt-row" },
        `${pid}: `,
        el("input", { type: "number", "data-opt": `${pid}:start`, placeholder: "from" }),
        el("input", { type: "number", "data-opt": `${pid}:end`, placeholder: "to" }),
      ),
    );
  }
  return body;
}

function exprSection(
  ui: UiModel,
  kind: "watch" | "cbp",
  rows: (WatchEntry | CbpEntry)[],
): HTMLElement {
  const state = ui.state!;
  const dead = ui.busy || !ui.connected;
  const pids = state.programs.map((p) => p.pid);
  const section = el("section", { id: kind === "watch" ? "watches" : "cbps" });
  section.append(el("h2", {}, kind === "watch" ? "Watches" : "Conditional breakpoints"));

  for (const row of rows) {
    const id = kind === "watch" ? (row as WatchEntry).wid : (row as CbpEntry).cbid;
    const hit =
      kind === "cbp" && state.halt.kind === "conditional" && state.halt.cbid === id;
    const line = el(
      "div",
      { class: hit ? "row hit" : "row", "data-id": String(id) },
      el("span", { class: "expr" }, row.text),
    );
    if (kind === "watch") {
      line.append(el("span", { class: "value" }, ` = ${resultText((row as WatchEntry).value)}`));
    }
    const scope = scopeText(row.scope);
    if (scope) line.append(el("span", { class: "scope" }, ` [${scope}]`));
    line.append(
      el(
        "button",
        {
          class: "remove",
          disabled: dead,
          onclick: () =>
            ui.actions.gesture(
              kind === "watch" ? "watch.remove" : "cbp.remove",
              kind === "watch" ? { wid: id } : { cbid: id },
            ),
        },
        "x",
      ),
    );
    section.append(line);
  }

  const text = el("input", {
    class: "new-expr",
    "data-key": `${kind}-new`,
    placeholder: kind === "watch" ? "e.g. A.i" : "e.g. A.a != B.b",
  });
  const opt = optEditor(pids);
  opt.hidden = true;
  const optToggle = el(
    "button",
    { class: "opt-toggle", onclick: () => (opt.hidden = !opt.hidden) },
    "Opt",
  );
  const add = el(
    "button",
    {
      class: "add",
      disabled: dead,
      onclick: () => {
        if (!text.value.trim()) return;
        const scope = scopeFromInputs(opt, pids);
        const params: Record<string, unknown> = { text: text.value };
        if (Object.keys(scope).length) params.scope = scope;
        ui.actions.gesture(kind === "watch" ? "watch.add" : "cbp.add", params);
      },
    },
    "Add",
  );
  section.append(el("div", { class: "new-row" }, text, optToggle, add), opt);
  return section;
}

// --- top level ---

export function render(root: HTMLElement, ui: UiModel): void {
  const focused = document.activeElement as HTMLElement | null;
  const focusKey = focused?.dataset?.key;
  const focusValue =
    focused instanceof HTMLInputElement || focused instanceof HTMLTextAreaElement
      ? focused.value
      : undefined;

  root.textContent = "";
  const banner = el("div", { id: "banner" }, "connection lost, reconnecting...");
  banner.hidden = ui.connected;
  root.append(banner);

  if (ui.globalError) root.append(el("div", { id: "error" }, ui.globalError));
  root.append(controlBar(ui));

  if (ui.state) {
    const panels = el("div", { id: "panels" });
    for (const entry of ui.state.programs) panels.append(panel(ui, entry));
    root.append(panels);
    root.append(exprSection(ui, "watch", ui.state.watches));
    root.append(exprSection(ui, "cbp", ui.state.conditional_breakpoints));
  }

  if (focusKey && focusValue !== undefined) {
    const again = root.querySelector<HTMLInputElement | HTMLTextAreaElement>(
      `[data-key="${focusKey}"]`,
    );
    if (again) {
      again.value = focusValue;
      again.focus();
    }
  }
}
