/** Display mappings. Pure presentation: the values themselves always come
 * from the service, these only pick a colour class for a number. */

export type StateColor = "green" | "amber" | "red";

/** 1 is fully available (green), 0 is lost (red), anything between is
 * degraded (amber). Matches the service's own display convention. */
export function stateColor(value: number): StateColor {
  if (value >= 1) {
    return "green";
  }
  if (value <= 0) {
    return "red";
  }
  return "amber";
}

export const ACTUATOR_CLASS: Record<string, string> = {
  MANUAL: "actuator-manual",
  AUTOMATIC: "actuator-automatic",
  DUAL: "actuator-dual",
  UNKNOWN: "actuator-unknown",
};
