/** Staged chat flow: messages, confirmation affordances, live visualizations.

 * The console is a pure view over server events: it renders payloads as
 * received, issues the corresponding confirmation messages, and never
 * recomputes statistics client-side.
 */

import { ApiClient, UpstreamError } from "./api.js";
import { renderCensusLayer } from "./censusLayer.js";
import { renderFwiLayer } from "./fwiLayer.js";
import { renderIncidents } from "./incidents.js";
import { syncUrl, type ViewState } from "./state.js";
import {
  PERIODS,
  SEASONS,
  type CensusPayload,
  type ConsoleEvent,
  type Envelope,
  type FwiPayload,
  type GeoPointPayload,
  type IncidentPayload,
  type Period,
  type Season,
} from "./types.js";

export interface ChatOptions {
  facilitator?: boolean;
  updateUrl?: boolean;
}

const STAGE_GROUPS: Record<string, string> = {
  profile_collection: "profile",
  profile_confirmation: "profile",
  planning: "plan",
  plan_confirmation: "plan",
  analysis: "analysis",
  closed: "analysis",
};

const RUBRIC_QUESTIONS = [
  "Does the response answer the last question?",
  "Do the analyses follow from the data and literature?",
  "Is the response accessible for this user?",
];

export class ChatFlow {
  readonly root: HTMLElement;
  private readonly api: ApiClient;
  private readonly state: ViewState;
  private readonly options: ChatOptions;

  stage = "profile_collection";
  private lastText: string | null = null;
  private fwiPayload: FwiPayload | null = null;
  private pinConfirmPending = false;
  readonly capturedLabels: Array<{ question: string; label: string }> = [];

  private messagesEl!: HTMLElement;
  private vizEl!: HTMLElement;
  private affordancesEl!: HTMLElement;
  private inputEl!: HTMLInputElement;
  private errorEl!: HTMLElement;
  private headerEl!: HTMLElement;
  private selectorsEl!: HTMLElement;

  constructor(root: HTMLElement, api: ApiClient, state: ViewState,
              options: ChatOptions = {}) {
    this.root = root;
    this.api = api;
    this.state = state;
    this.options = options;
    this.buildShell();
  }

  private buildShell(): void {
    this.root.replaceChildren();
    this.root.classList.add("console");

    this.headerEl = document.createElement("div");
    this.headerEl.className = "progress-header";
    for (const step of ["profile", "plan", "analysis"]) {
      const span = document.createElement("span");
      span.setAttribute("data-step", step);
      span.textContent = step === "profile" ? "Profile"
        : step === "plan" ? "Plan" : "Analysis";
      this.headerEl.append(span);
    }

    this.messagesEl = document.createElement("div");
    this.messagesEl.className = "messages";
    this.messagesEl.setAttribute("data-role", "messages");

    this.selectorsEl = document.createElement("div");
    this.selectorsEl.className = "selectors";
    this.selectorsEl.hidden = true;

    this.vizEl = document.createElement("div");
    this.vizEl.className = "viz";
    this.vizEl.setAttribute("data-role", "viz");

    this.affordancesEl = document.createElement("div");
    this.affordancesEl.className = "affordances";
    this.affordancesEl.setAttribute("data-role", "affordances");

    this.errorEl = document.createElement("div");
    this.errorEl.className = "banner banner-error";
    this.errorEl.setAttribute("data-role", "error");
    this.errorEl.hidden = true;

    const form = document.createElement("form");
    form.className = "input-row";
    this.inputEl = document.createElement("input");
    this.inputEl.type = "text";
    this.inputEl.setAttribute("data-role", "input");
    const button = document.createElement("button");
    button.type = "submit";
    button.textContent = "Send";
    form.append(this.inputEl, button);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const text = this.inputEl.value.trim();
      if (text) {
        this.inputEl.value = "";
        void this.send(text);
      }
    });

    this.root.append(this.headerEl, this.messagesEl, this.selectorsEl,
                     this.vizEl, this.affordancesEl, this.errorEl, form);
    if (this.options.facilitator) {
      this.root.append(this.buildFacilitatorPanel());
    }
    this.updateHeader();
  }

  private buildFacilitatorPanel(): HTMLElement {
    const panel = document.createElement("div");
    panel.className = "facilitator-panel";
    panel.setAttribute("data-role", "facilitator");
    for (const question of RUBRIC_QUESTIONS) {
      const row = document.createElement("div");
      const label = document.createElement("span");
      label.textContent = question;
      row.append(label);
      for (const answer of ["Yes", "Could be better", "No"]) {
        const btn = document.createElement("button");
        btn.type = "button";
        btn.textContent = answer;
        btn.addEventListener("click", () => {
          this.capturedLabels.push({ question, label: answer });
        });
        row.append(btn);
      }
      panel.append(row);
    }
    return panel;
  }

  async start(): Promise<void> {
    const session = await this.api.createSession();
    this.state.sessionId = session.session_id;
    this.stage = session.stage;
    this.updateHeader();
    if (this.options.updateUrl) syncUrl(this.state);
    await this.send("Hello");
  }

  async send(text: string): Promise<void> {
    if (!this.state.sessionId) throw new Error("no session");
    this.lastText = text;
    this.pinConfirmPending = false;
    this.addMessage("user", text);
    this.errorEl.hidden = true;
    try {
      const response = await this.api.sendMessage(this.state.sessionId, text);
      this.stage = response.stage;
      for (const event of response.events) {
        this.applyEvent(event);
      }
      this.updateHeader();
      this.renderAffordances();
    } catch (error) {
      this.showError(error);
    }
  }

  private showError(error: unknown): void {
    this.errorEl.replaceChildren();
    this.errorEl.hidden = false;
    const message = document.createElement("span");
    message.textContent = error instanceof Error
      ? `Request failed: ${error.message}`
      : "Request failed.";
    this.errorEl.append(message);
    const retryable = error instanceof UpstreamError ? error.retryable : true;
    if (retryable && this.lastText !== null) {
      const retry = document.createElement("button");
      retry.type = "button";
      retry.textContent = "Retry";
      retry.setAttribute("data-role", "retry");
      const failed = this.lastText;
      // The user bubble from the failed attempt stays; resend only re-issues
      // the request instead of echoing the text a second time.
      retry.addEventListener("click", () => {
        void this.resend(failed);
      });
      this.errorEl.append(retry);
    }
  }

  private async resend(text: string): Promise<void> {
    this.errorEl.hidden = true;
    if (!this.state.sessionId) return;
    try {
      const response = await this.api.sendMessage(this.state.sessionId, text);
      this.stage = response.stage;
      for (const event of response.events) {
        this.applyEvent(event);
      }
      this.updateHeader();
      this.renderAffordances();
    } catch (error) {
      this.showError(error);
    }
  }

  private applyEvent(event: ConsoleEvent): void {
    if (event.kind === "text") {
      this.addMessage("assistant", String(event.payload["text"] ?? ""));
      return;
    }
    if (event.kind === "stage") {
      this.stage = String(event.payload["to"] ?? this.stage);
      this.updateHeader();
      return;
    }
    if (event.kind === "map_layer") {
      this.applyMapLayer(event.payload);
      return;
    }
    // chart events carry the same payload envelopes the map layers already
    // rendered; the charts are drawn from those payloads directly.
  }

  private applyMapLayer(payload: Record<string, unknown>): void {
    const layer = String(payload["layer"] ?? "");
    const data = payload["data"] as Envelope<unknown> | GeoPointPayload | undefined;
    if (layer === "location_pin" && data) {
      this.renderPinConfirm(data as GeoPointPayload);
      return;
    }
    const envelope = data as Envelope<unknown>;
    if (!envelope || typeof envelope !== "object") return;
    if (envelope.type === "fwi_query_result") {
      this.fwiPayload = envelope.value as FwiPayload;
      this.renderSelectors();
      this.renderFwi();
      return;
    }
    if (envelope.type === "incident_query_result") {
      const panel = this.panelFor("incidents");
      renderIncidents(panel, envelope.value as IncidentPayload);
      return;
    }
    if (envelope.type === "census_query_result") {
      const panel = this.panelFor("census");
      renderCensusLayer(panel, envelope.value as CensusPayload);
    }
  }

  private panelFor(name: string): HTMLElement {
    let panel = this.vizEl.querySelector<HTMLElement>(`[data-panel="${name}"]`);
    if (!panel) {
      panel = document.createElement("div");
      panel.setAttribute("data-panel", name);
      this.vizEl.append(panel);
    }
    return panel;
  }

  private renderPinConfirm(point: GeoPointPayload): void {
    const panel = this.panelFor("pin");
    panel.replaceChildren();
    const note = document.createElement("div");
    note.className = "pin-note";
    note.setAttribute("data-role", "pin-note");
    note.textContent =
      `Pin placed at ${point.latitude}, ${point.longitude}.`;
    panel.append(note);
    this.pinConfirmPending = true;
  }

  private renderSelectors(): void {
    this.selectorsEl.hidden = false;
    this.selectorsEl.replaceChildren();
    const seasonSelect = document.createElement("select");
    seasonSelect.setAttribute("data-role", "season-select");
    for (const season of SEASONS) {
      const option = document.createElement("option");
      option.value = season;
      option.textContent = season;
      option.selected = season === this.state.season;
      seasonSelect.append(option);
    }
    seasonSelect.addEventListener("change", () => {
      this.state.season = seasonSelect.value as Season;
      this.renderFwi();
      if (this.options.updateUrl) syncUrl(this.state);
    });
    const periodSelect = document.createElement("select");
    periodSelect.setAttribute("data-role", "period-select");
    for (const period of PERIODS) {
      const option = document.createElement("option");
      option.value = period;
      option.textContent = this.fwiPayload?.period_labels?.[period] ?? period;
      option.selected = period === this.state.period;
      periodSelect.append(option);
    }
    periodSelect.addEventListener("change", () => {
      this.state.period = periodSelect.value as Period;
      this.renderFwi();
      if (this.options.updateUrl) syncUrl(this.state);
    });
    this.selectorsEl.append(seasonSelect, periodSelect);
  }

  private renderFwi(): void {
    if (!this.fwiPayload) return;
    renderFwiLayer(this.panelFor("fwi"), this.fwiPayload,
                   this.state.season, this.state.period);
  }

  private addMessage(role: "user" | "assistant", text: string): void {
    const bubble = document.createElement("div");
    bubble.className = `message message-${role}`;
    bubble.setAttribute("data-message-role", role);
    bubble.textContent = text;
    this.messagesEl.append(bubble);
  }

  private updateHeader(): void {
    const active = STAGE_GROUPS[this.stage] ?? "profile";
    for (const span of this.headerEl.querySelectorAll("span")) {
      span.classList.toggle("active", span.getAttribute("data-step") === active);
    }
    this.headerEl.setAttribute("data-stage", this.stage);
  }

  private actionButton(label: string, message: string, role: string): HTMLElement {
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = label;
    button.setAttribute("data-role", role);
    button.addEventListener("click", () => void this.send(message));
    return button;
  }

  private focusButton(label: string, placeholder: string): HTMLElement {
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = label;
    button.setAttribute("data-role", "focus-input");
    button.addEventListener("click", () => {
      this.inputEl.placeholder = placeholder;
      this.inputEl.focus();
    });
    return button;
  }

  private renderAffordances(): void {
    this.affordancesEl.replaceChildren();
    if (this.pinConfirmPending) {
      this.affordancesEl.append(
        this.actionButton("Confirm location", "yes", "confirm-location"),
        this.focusButton("Adjust", "Describe the correct location"));
      return;
    }
    if (this.stage === "profile_confirmation") {
      this.affordancesEl.append(
        this.actionButton("Accept profile", "accept", "accept-profile"),
        this.focusButton("Revise…", "revise <field>"));
    } else if (this.stage === "plan_confirmation") {
      this.affordancesEl.append(
        this.actionButton("Approve plan", "looks good", "approve-plan"),
        this.focusButton("Suggest changes", "Describe the change"));
    } else if (this.stage === "analysis") {
      this.affordancesEl.append(
        this.actionButton("Proceed", "proceed", "proceed"),
        this.actionButton("Census summary", "census", "census"));
    }
  }
}
