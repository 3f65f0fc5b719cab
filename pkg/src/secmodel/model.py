"""Core domain types and semantic validation.

Three model families live here:

* attack trees: labelled nodes combined with OR / AND / SAND operators,
  where SAND means the children must succeed left to right;
* intrusion models: numbered, hierarchical steps with OR / AND refinements,
  an actuator marking (manual / automatic / both / unknown) and an explicit
  ``sequenced`` flag replacing the SAND operator;
* dependency models: trees of "paragons" (desirable conditions) whose
  states live in [0, 1] and combine through AND / OR relationships.

An :class:`ImpactLink` ties an intrusion step to the paragon it degrades
(or restores); :class:`CombinedModel` bundles one intrusion model, one
dependency model and the links between them.

Validators return a list of :class:`Violation` records instead of raising,
so callers can report every problem at once.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterator
from urllib.parse import urlparse

# Intrusion models are drawn with the root goal at the right and its
# refinement fanning out leftwards; the marker is fixed.
RIGHT_TO_LEFT = "right-to-left"

# Display thresholds for paragon states: exactly 1 is healthy (green),
# exactly 0 is failed (red), anything between is degraded (amber).
GREEN, AMBER, RED = "green", "amber", "red"


class Operator(str, enum.Enum):
    """Attack-tree combinators. SAND is AND with left-to-right ordering."""

    LEAF = "LEAF"
    OR = "OR"
    AND = "AND"
    SAND = "SAND"


class Refinement(str, enum.Enum):
    """How an intrusion step's children combine."""

    OR = "OR"
    AND = "AND"


class Actuator(str, enum.Enum):
    """Who performs a step: a person, software, either, or not yet known."""

    MANUAL = "MANUAL"
    AUTOMATIC = "AUTOMATIC"
    DUAL = "DUAL"
    UNKNOWN = "UNKNOWN"

    @property
    def code(self) -> str:
        return _ACTUATOR_CODES[self]


_ACTUATOR_CODES = {
    Actuator.MANUAL: "[M]",
    Actuator.AUTOMATIC: "[A]",
    Actuator.DUAL: "[A+M]",
    Actuator.UNKNOWN: "[?]",
}


class Relationship(str, enum.Enum):
    """How a paragon's children combine into its state."""

    AND = "AND"
    OR = "OR"


def state_color(value: float) -> str:
    """Display colour for a paragon state (1 green, 0 red, else amber)."""
    if value >= 1.0:
        return GREEN
    if value <= 0.0:
        return RED
    return AMBER


def format_state(value: float) -> str:
    """Shortest text form that parses back to exactly the same float."""
    value = float(value)
    return str(int(value)) if value.is_integer() else repr(value)


# ---------------------------------------------------------------------------
# attack trees


@dataclass(frozen=True)
class AttackTreeNode:
    id: str
    label: str
    operator: Operator = Operator.LEAF
    children: tuple[AttackTreeNode, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class AttackTree:
    root: AttackTreeNode

    def nodes(self) -> Iterator[AttackTreeNode]:
        return walk_tree(self.root)


def walk_tree(node: AttackTreeNode) -> Iterator[AttackTreeNode]:
    """Pre-order traversal (parent before children, children in order)."""
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(current.children))


# ---------------------------------------------------------------------------
# intrusion models


@dataclass(frozen=True)
class ExternalReference:
    """Structured source citation attached to an intrusion model."""

    title: str
    url: str | None = None
    publisher: str | None = None
    doi: str | None = None


@dataclass(frozen=True)
class CimStep:
    id: str
    label: str
    refinement: Refinement = Refinement.OR
    actuator: Actuator = Actuator.UNKNOWN
    sequenced: bool = False
    number: int | None = None
    model_ref: str | None = None
    children: tuple[CimStep, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class CimModel:
    name: str
    root: CimStep
    references: tuple[ExternalReference, ...] = ()
    direction: str = RIGHT_TO_LEFT

    def __post_init__(self) -> None:
        object.__setattr__(self, "references", tuple(self.references))

    def steps(self) -> Iterator[CimStep]:
        return walk_steps(self.root)


def walk_steps(step: CimStep) -> Iterator[CimStep]:
    """Pre-order traversal of an intrusion step hierarchy."""
    stack = [step]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(current.children))


def display_label(step: CimStep) -> str:
    """Label as drawn: a ``(S)`` suffix marks sequence-constrained steps."""
    return step.label + "(S)" if step.sequenced else step.label


def numbered_label(step: CimStep) -> str:
    """Display label with the step number prefix (``17. Foo(S)``)."""
    text = display_label(step)
    return f"{step.number}. {text}" if step.number is not None else text


def step_index(model: CimModel) -> dict[str, CimStep]:
    """Map step id -> step. Assumes ids are unique (validated models)."""
    return {s.id: s for s in model.steps()}


def number_index(model: CimModel) -> dict[int, CimStep]:
    """Map step number -> step, skipping the unnumbered root."""
    return {s.number: s for s in model.steps() if s.number is not None}


def step_parents(model: CimModel) -> dict[str, CimStep | None]:
    """Map step id -> parent step (None for the root)."""
    parents: dict[str, CimStep | None] = {model.root.id: None}
    for step in model.steps():
        for child in step.children:
            parents[child.id] = step
    return parents


# ---------------------------------------------------------------------------
# dependency models


@dataclass(frozen=True)
class Paragon:
    """A desirable condition; state 1 means fully holding, 0 fully lost."""

    id: str
    name: str
    relationship: Relationship = Relationship.AND
    base_state: float = 1.0
    definition: str = ""
    children: tuple[Paragon, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class DependencyModel:
    name: str
    root: Paragon

    def paragons(self) -> Iterator[Paragon]:
        return walk_paragons(self.root)


def walk_paragons(paragon: Paragon) -> Iterator[Paragon]:
    """Pre-order traversal of a paragon tree."""
    stack = [paragon]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(current.children))


def paragon_index(model: DependencyModel) -> dict[str, Paragon]:
    return {p.id: p for p in model.paragons()}


# ---------------------------------------------------------------------------
# combined models


@dataclass(frozen=True)
class ImpactLink:
    """When the step becomes active, the paragon is driven to target_state."""

    step_id: str
    paragon_id: str
    target_state: float


@dataclass(frozen=True)
class CombinedModel:
    cim: CimModel
    dm: DependencyModel
    links: tuple[ImpactLink, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "links", tuple(self.links))


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    """One semantic problem: a stable code, the offending id, and prose."""

    code: str
    subject: str
    message: str


_DOI_RE = re.compile(r"^10\.\d{4,9}/\S+$")


def _has_control_chars(text: str) -> bool:
    return any(ord(ch) < 32 for ch in text)


def validate_reference(ref: ExternalReference, subject: str = "") -> list[Violation]:
    out: list[Violation] = []
    if not ref.title.strip():
        out.append(Violation("empty-reference-title", subject, "reference title is empty"))
    for name in ("title", "url", "publisher", "doi"):
        value = getattr(ref, name)
        if value is not None and _has_control_chars(value):
            out.append(
                Violation(
                    "reference-control-chars",
                    subject,
                    f"reference {name} contains control characters",
                )
            )
    if ref.url is not None:
        parsed = urlparse(ref.url)
        if parsed.scheme not in ("http", "https") or not parsed.netloc:
            out.append(
                Violation("malformed-url", subject, f"reference url is not http(s): {ref.url!r}")
            )
    if ref.doi is not None and not _DOI_RE.match(ref.doi):
        out.append(Violation("malformed-doi", subject, f"reference doi is malformed: {ref.doi!r}"))
    return out


def _check_shape(root, kind: str) -> tuple[list, list[Violation]]:
    """Walk a candidate tree defensively, flagging duplicate ids and
    revisited objects (sharing or cycles smuggled past the frozen types).
    Returns the nodes reached exactly once, plus any violations."""
    out: list[Violation] = []
    seen_objects: set[int] = set()
    seen_ids: set[str] = set()
    nodes = []
    stack = [root]
    while stack:
        node = stack.pop()
        if id(node) in seen_objects:
            out.append(Violation("not-a-tree", node.id, f"{kind} {node.id!r} is reachable twice"))
            continue
        seen_objects.add(id(node))
        if node.id in seen_ids:
            out.append(Violation("duplicate-id", node.id, f"duplicate {kind} id {node.id!r}"))
        seen_ids.add(node.id)
        nodes.append(node)
        stack.extend(reversed(node.children))
    return nodes, out


def _check_label_text(value: str, code: str, subject: str, what: str) -> list[Violation]:
    """Labels travel as XML attributes, where any control character would
    be lost to whitespace normalization; ban them outright."""
    out: list[Violation] = []
    if not value.strip():
        out.append(Violation(f"empty-{code}", subject, f"{what} of {subject!r} is empty"))
    if _has_control_chars(value):
        out.append(
            Violation(f"{code}-control-chars", subject, f"{what} of {subject!r} contains control characters")
        )
    return out


def validate_attack_tree(tree: AttackTree) -> list[Violation]:
    """LEAF nodes are childless, internal nodes have at least one child."""
    nodes, out = _check_shape(tree.root, "node")
    for node in nodes:
        if node.operator is Operator.LEAF and node.children:
            out.append(Violation("leaf-with-children", node.id, f"LEAF node {node.id!r} has children"))
        if node.operator is not Operator.LEAF and not node.children:
            out.append(
                Violation("empty-refinement", node.id, f"{node.operator.value} node {node.id!r} has no children")
            )
        out.extend(_check_label_text(node.label, "label", node.id, "label"))
    return out


def validate_cim(model: CimModel) -> list[Violation]:
    """Numbering is a bijection onto 1..N over non-root steps, the root is
    unnumbered, and sequencing only appears under AND refinements with all
    siblings agreeing (a sequence constrains the whole sibling group)."""
    steps, out = _check_shape(model.root, "step")
    if model.direction != RIGHT_TO_LEFT:
        out.append(Violation("bad-direction", "", f"direction must be {RIGHT_TO_LEFT!r}"))
    if model.root.number is not None:
        out.append(Violation("root-numbered", model.root.id, "root step must not carry a number"))
    if model.root.sequenced:
        out.append(Violation("root-sequenced", model.root.id, "root step cannot be sequenced"))

    numbers = [s.number for s in steps if s is not model.root]
    if any(n is None for n in numbers):
        missing = [s.id for s in steps if s is not model.root and s.number is None]
        for sid in missing:
            out.append(Violation("missing-number", sid, f"step {sid!r} has no number"))
    else:
        expected = list(range(1, len(numbers) + 1))
        if sorted(numbers) != expected:
            out.append(
                Violation(
                    "numbering-not-bijective",
                    model.root.id,
                    f"step numbers {sorted(numbers)} do not form 1..{len(numbers)}",
                )
            )

    for step in steps:
        out.extend(_check_label_text(step.label, "label", step.id, "label"))
        if step.children:
            flags = {c.sequenced for c in step.children}
            if flags == {True} and step.refinement is not Refinement.AND:
                out.append(
                    Violation(
                        "sequenced-under-non-and",
                        step.id,
                        f"sequenced children of {step.id!r} require an AND refinement",
                    )
                )
            if len(flags) > 1:
                out.append(
                    Violation(
                        "mixed-sequencing",
                        step.id,
                        f"children of {step.id!r} mix sequenced and unsequenced steps",
                    )
                )
    for i, ref in enumerate(model.references):
        out.extend(validate_reference(ref, subject=f"reference[{i}]"))
    return out


def validate_dm(model: DependencyModel) -> list[Violation]:
    """Paragon ids are unique and base states stay within [0, 1]."""
    paragons, out = _check_shape(model.root, "paragon")
    for paragon in paragons:
        if not 0.0 <= paragon.base_state <= 1.0:
            out.append(
                Violation(
                    "state-out-of-range",
                    paragon.id,
                    f"paragon {paragon.id!r} base state {paragon.base_state} outside [0, 1]",
                )
            )
        out.extend(_check_label_text(paragon.name, "paragon-name", paragon.id, "name"))
        # Definitions travel as element text: newlines and tabs survive
        # there, but a carriage return would be silently normalized away.
        if any(ord(ch) < 32 and ch not in "\n\t" for ch in paragon.definition):
            out.append(
                Violation(
                    "definition-control-chars",
                    paragon.id,
                    f"definition of {paragon.id!r} contains control characters",
                )
            )
    return out


def validate_combined(model: CombinedModel) -> list[Violation]:
    """Both halves validate, and every link resolves exactly once."""
    out = validate_cim(model.cim) + validate_dm(model.dm)
    step_ids = {s.id for s in model.cim.steps()}
    paragon_ids = {p.id for p in model.dm.paragons()}
    seen_pairs: set[tuple[str, str]] = set()
    for link in model.links:
        key = (link.step_id, link.paragon_id)
        if link.step_id not in step_ids:
            out.append(Violation("dangling-link", link.step_id, f"link step {link.step_id!r} does not exist"))
        if link.paragon_id not in paragon_ids:
            out.append(
                Violation("dangling-link", link.paragon_id, f"link paragon {link.paragon_id!r} does not exist")
            )
        if key in seen_pairs:
            out.append(
                Violation("duplicate-link", link.step_id, f"duplicate link {link.step_id!r} -> {link.paragon_id!r}")
            )
        seen_pairs.add(key)
        if not 0.0 <= link.target_state <= 1.0:
            out.append(
                Violation(
                    "state-out-of-range",
                    link.step_id,
                    f"link target state {link.target_state} outside [0, 1]",
                )
            )
    return out


def require_valid(violations: list[Violation]) -> None:
    """Raise ValidationFailedError if any violations were collected."""
    if violations:
        from .errors import ValidationFailedError

        raise ValidationFailedError(violations)
