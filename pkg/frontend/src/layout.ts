/** Client-side layout for the two panes.
 *
 * Intrusion pane: one column per step number, lowest number at the far
 * left, the goal in its own column at the far right, rows by tree depth.
 * Reading the columns right to left therefore follows the model's
 * direction without asking the server for coordinates.
 *
 * Dependency pane: an indented tree list, one row per paragon in
 * pre-order, indent by depth.
 */

import type { ImpactLink, ParagonNode, StepNode } from "./api.js";

export interface Box {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface PaneLayout {
  boxes: Map<string, Box>;
  width: number;
  height: number;
}

export const STEP_W = 180;
export const STEP_H = 46;
const COL_GAP = 22;
const ROW_GAP = 16;

export const PARAGON_W = 230;
export const PARAGON_H = 30;
const INDENT = 26;
const DM_ROW_GAP = 8;

export function cimLayout(root: StepNode): PaneLayout {
  const boxes = new Map<string, Box>();
  let maxNumber = 0;
  let maxDepth = 0;

  const scan = (step: StepNode, depth: number): void => {
    maxNumber = Math.max(maxNumber, step.number ?? 0);
    maxDepth = Math.max(maxDepth, depth);
    for (const child of step.children) {
      scan(child, depth + 1);
    }
  };
  scan(root, 0);

  const place = (step: StepNode, depth: number): void => {
    const column = step.number ?? maxNumber + 1;
    boxes.set(step.id, {
      x: (column - 1) * (STEP_W + COL_GAP),
      y: depth * (STEP_H + ROW_GAP),
      width: STEP_W,
      height: STEP_H,
    });
    for (const child of step.children) {
      place(child, depth + 1);
    }
  };
  place(root, 0);

  return {
    boxes,
    width: (maxNumber + 1) * (STEP_W + COL_GAP) - COL_GAP,
    height: (maxDepth + 1) * (STEP_H + ROW_GAP) - ROW_GAP,
  };
}

export function dmLayout(root: ParagonNode): PaneLayout {
  const boxes = new Map<string, Box>();
  let row = 0;
  let width = 0;

  const place = (paragon: ParagonNode, depth: number): void => {
    const x = depth * INDENT;
    boxes.set(paragon.id, {
      x,
      y: row * (PARAGON_H + DM_ROW_GAP),
      width: PARAGON_W,
      height: PARAGON_H,
    });
    width = Math.max(width, x + PARAGON_W);
    row += 1;
    for (const child of paragon.children) {
      place(child, depth + 1);
    }
  };
  place(root, 0);

  return { boxes, width, height: row * (PARAGON_H + DM_ROW_GAP) - DM_ROW_GAP };
}

export interface Connector {
  stepId: string;
  paragonId: string;
  stepY: number;
  paragonY: number;
}

/** Endpoints for the ribbon strip between the panes: one line per impact
 * link, anchored at the vertical centres of the two boxes. */
export function connectors(
  links: ImpactLink[],
  cim: PaneLayout,
  dm: PaneLayout,
): Connector[] {
  const out: Connector[] = [];
  for (const link of links) {
    const step = cim.boxes.get(link.stepId);
    const paragon = dm.boxes.get(link.paragonId);
    if (!step || !paragon) {
      continue;
    }
    out.push({
      stepId: link.stepId,
      paragonId: link.paragonId,
      stepY: step.y + step.height / 2,
      paragonY: paragon.y + paragon.height / 2,
    });
  }
  return out;
}
