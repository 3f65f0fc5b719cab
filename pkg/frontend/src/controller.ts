/** Session controller: one live session against one combined model.
 *
 * Holds no propagation logic. Every mutation is sent with the revision the
 * view was computed from. An accepted toggle first paints the state delta
 * the service returned, then fetches the full session view again
 * (poll-after-mutate), so the screen always settles on a state map the
 * service produced. A 409 means another write won the race: the controller
 * refetches, raises a notice, and the user retries against the fresh view.
 */

import { ApiClient, ApiError, type ModelDetail, type SessionView } from "./api.js";

export interface Notice {
  kind: "info" | "conflict" | "error";
  text: string;
}

export type Listener = (view: SessionView, notice: Notice | null) => void;

export class SessionController {
  private view: SessionView | null = null;
  private listeners: Listener[] = [];

  constructor(
    readonly api: ApiClient,
    readonly detail: ModelDetail,
    readonly mode: "minmax" | "prob" = "minmax",
  ) {}

  get current(): SessionView {
    if (!this.view) {
      throw new Error("session not started");
    }
    return this.view;
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private publish(notice: Notice | null): void {
    for (const listener of this.listeners) {
      listener(this.current, notice);
    }
  }

  async start(): Promise<SessionView> {
    this.view = await this.api.createSession(this.detail.id, this.mode);
    this.publish(null);
    return this.view;
  }

  async toggle(stepId: string): Promise<void> {
    const before = this.current;
    const active = !before.activeSteps.includes(stepId);
    let accepted;
    try {
      accepted = await this.api.toggle(before.sessionId, stepId, active, before.revision);
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.view = await this.api.getSession(before.sessionId);
        this.publish({
          kind: "conflict",
          text: "Another change landed first; the view has been refreshed. Try again.",
        });
        return;
      }
      throw error;
    }
    // paint the service's own answer right away
    const states = { ...before.states };
    for (const change of accepted.delta) {
      states[change.paragonId] = change.new;
    }
    this.view = {
      ...before,
      revision: accepted.revision,
      activeSteps: active
        ? [...before.activeSteps, stepId]
        : before.activeSteps.filter((id) => id !== stepId),
      states,
      warnings: accepted.warnings,
      rootImpact: accepted.rootImpact,
    };
    this.publish(null);
    // then settle on the authoritative session record
    this.view = await this.api.getSession(before.sessionId);
    this.publish(null);
  }

  async reset(): Promise<void> {
    const before = this.current;
    try {
      await this.api.reset(before.sessionId, before.revision);
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.view = await this.api.getSession(before.sessionId);
        this.publish({
          kind: "conflict",
          text: "Another change landed first; the view has been refreshed. Try again.",
        });
        return;
      }
      throw error;
    }
    this.view = await this.api.getSession(before.sessionId);
    this.publish({ kind: "info", text: "Session reset." });
  }

  async stop(): Promise<void> {
    if (this.view) {
      await this.api.deleteSession(this.view.sessionId);
      this.view = null;
    }
  }
}
