/** DOM rendering for the two linked panes.
 *
 * Everything shown is lifted straight off the service payloads: step text
 * is the server's display form (number prefix and "(S)" marker included),
 * paragon states are the session StateMap verbatim (exposed as data-state
 * for scripted checks), and warning badges exist exactly for the pairs the
 * service reported.
 */

import type { ModelDetail, SequenceWarning, SessionView, StepNode, ParagonNode } from "./api.js";
import { ACTUATOR_CLASS, stateColor } from "./colors.js";
import { cimLayout, connectors, dmLayout } from "./layout.js";

export interface ViewHooks {
  onToggle: (stepId: string) => void;
}

const SVG_NS = "http://www.w3.org/2000/svg";
const STRIP_W = 90;

function px(value: number): string {
  return `${value}px`;
}

function stepTitle(step: StepNode, warning: SequenceWarning | undefined, index: Map<string, StepNode>): string {
  const parts = [`refinement ${step.refinement}`, `actuator ${step.actuatorCode}`];
  if (step.modelRef) {
    parts.push(`see model ${step.modelRef}`);
  }
  if (warning) {
    const predecessor = index.get(warning.predecessorId);
    parts.push(`out of order: active before ${predecessor ? predecessor.display : warning.predecessorId}`);
  }
  return parts.join("; ");
}

export function renderViews(
  container: HTMLElement,
  detail: ModelDetail,
  view: SessionView,
  hooks: ViewHooks,
): void {
  const cim = cimLayout(detail.cim.root);
  const dm = dmLayout(detail.dm.root);
  const warningsByStep = new Map(view.warnings.map((w) => [w.stepId, w]));
  const stepIndex = new Map<string, StepNode>();
  const indexSteps = (step: StepNode): void => {
    stepIndex.set(step.id, step);
    step.children.forEach(indexSteps);
  };
  indexSteps(detail.cim.root);

  container.textContent = "";

  const cimPane = document.createElement("div");
  cimPane.className = "pane cim-pane";
  cimPane.style.width = px(cim.width);
  cimPane.style.height = px(cim.height);

  const drawStep = (step: StepNode): void => {
    const box = cim.boxes.get(step.id);
    if (!box) {
      throw new Error(`no layout for step ${step.id}`);
    }
    const el = document.createElement("div");
    const active = view.activeSteps.includes(step.id);
    const warning = warningsByStep.get(step.id);
    el.className = `step ${ACTUATOR_CLASS[step.actuator] ?? "actuator-unknown"}`;
    if (step.number === null) {
      el.classList.add("goal");
    }
    if (active) {
      el.classList.add("active");
    }
    el.dataset.stepId = step.id;
    el.dataset.number = step.number === null ? "goal" : String(step.number);
    el.dataset.active = String(active);
    el.style.left = px(box.x);
    el.style.top = px(box.y);
    el.style.width = px(box.width);
    el.style.height = px(box.height);
    el.setAttribute("role", "button");
    el.tabIndex = 0;
    el.title = stepTitle(step, warning, stepIndex);

    const label = document.createElement("span");
    label.className = "step-label";
    label.textContent = step.display;
    el.appendChild(label);

    if (warning) {
      const badge = document.createElement("span");
      badge.className = "warning-badge";
      badge.textContent = "⚠";
      badge.dataset.predecessorId = warning.predecessorId;
      el.appendChild(badge);
    }

    el.addEventListener("click", () => hooks.onToggle(step.id));
    cimPane.appendChild(el);
    step.children.forEach(drawStep);
  };
  drawStep(detail.cim.root);

  const strip = document.createElementNS(SVG_NS, "svg");
  strip.setAttribute("class", "links-layer");
  strip.setAttribute("width", String(STRIP_W));
  strip.setAttribute("height", String(Math.max(cim.height, dm.height)));
  for (const connector of connectors(detail.links, cim, dm)) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("class", "link-line");
    line.setAttribute("x1", "0");
    line.setAttribute("y1", String(connector.stepY));
    line.setAttribute("x2", String(STRIP_W));
    line.setAttribute("y2", String(connector.paragonY));
    line.setAttribute("data-step-id", connector.stepId);
    line.setAttribute("data-paragon-id", connector.paragonId);
    strip.appendChild(line);
  }

  const dmPane = document.createElement("div");
  dmPane.className = "pane dm-pane";
  dmPane.style.width = px(dm.width);
  dmPane.style.height = px(dm.height);

  const drawParagon = (paragon: ParagonNode): void => {
    const box = dm.boxes.get(paragon.id);
    if (!box) {
      throw new Error(`no layout for paragon ${paragon.id}`);
    }
    const value = view.states[paragon.id];
    if (value === undefined) {
      throw new Error(`no state for paragon ${paragon.id}`);
    }
    const el = document.createElement("div");
    el.className = `paragon state-${stateColor(value)}`;
    el.dataset.paragonId = paragon.id;
    el.dataset.state = String(value);
    el.style.left = px(box.x);
    el.style.top = px(box.y);
    el.style.width = px(box.width);
    el.style.height = px(box.height);
    if (paragon.definition) {
      el.title = paragon.definition;
    }

    const name = document.createElement("span");
    name.className = "paragon-name";
    name.textContent = paragon.name;
    el.appendChild(name);

    const state = document.createElement("span");
    state.className = "paragon-state";
    state.textContent = String(value);
    el.appendChild(state);

    dmPane.appendChild(el);
    paragon.children.forEach(drawParagon);
  };
  drawParagon(detail.dm.root);

  container.appendChild(cimPane);
  container.appendChild(strip);
  container.appendChild(dmPane);
}
