"""Graphviz DOT output for intrusion models.

The drawing convention: the goal sits at the right (rankdir=RL with edges
running parent -> child), steps are filled boxes colour-coded by actuator
(manual yellow, automatic blue, both green, unknown orange), and labels
show the step number, title and the ``(S)`` sequence marker. The root is
drawn as a distinct goal ellipse with no actuator fill, since it is the
objective rather than a performed step.
"""

from __future__ import annotations

from .model import Actuator, CimModel, CimStep, numbered_label

_FILL = {
    Actuator.MANUAL: "yellow",
    Actuator.AUTOMATIC: "blue",
    Actuator.DUAL: "green",
    Actuator.UNKNOWN: "orange",
}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def cim_to_dot(model: CimModel) -> str:
    """Render to DOT text; node order is pre-order, so output is stable."""
    lines = [
        "digraph intrusion_model {",
        "  rankdir=RL;",
        "  node [shape=box, style=filled];",
        f"  {_quote(model.root.id)} [label={_quote(model.root.label)}, shape=ellipse, fillcolor=white];",
    ]

    def visit(step: CimStep) -> None:
        for child in step.children:
            lines.append(
                f"  {_quote(child.id)} [label={_quote(numbered_label(child))}, "
                f"fillcolor={_FILL[child.actuator]}];"
            )
            lines.append(f"  {_quote(step.id)} -> {_quote(child.id)};")
            visit(child)

    visit(model.root)
    lines.append("}")
    return "\n".join(lines) + "\n"
