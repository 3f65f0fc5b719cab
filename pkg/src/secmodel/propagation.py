"""Dependency-state propagation and interactive what-if sessions.

States live in [0, 1]: 1 means the paragon fully holds, 0 means it is
fully lost. Leaves contribute their base state unless overridden; internal
paragons combine their children according to their relationship and the
propagation mode:

* ``minmax`` -- AND takes the minimum child state, OR the maximum. The
  default, and the mode every worked example uses.
* ``prob`` -- states are read as probabilities of independent conditions:
  AND multiplies child states, OR combines failure probabilities
  (1 - prod(1 - s)).

An override on an internal paragon replaces its computed value before
propagation continues upward, so a degraded composite masks whatever its
children report.

A :class:`Session` holds a combined model plus the ordered set of active
intrusion steps. Activating a step applies its impact links as overrides;
when several active steps target the same paragon the most recently
activated one wins. Sessions are immutable: toggles return a new session
plus the list of state changes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import StateOutOfRangeError, UnknownParagonError, UnknownStepError
from .model import (
    CombinedModel,
    DependencyModel,
    ImpactLink,
    Relationship,
    paragon_index,
    step_index,
    walk_steps,
)

StateMap = dict[str, float]


class Mode(str, enum.Enum):
    MINMAX = "minmax"
    PROB = "prob"


def _combine(relationship: Relationship, values: list[float], mode: Mode) -> float:
    if mode is Mode.MINMAX:
        return min(values) if relationship is Relationship.AND else max(values)
    if relationship is Relationship.AND:
        out = 1.0
        for value in values:
            out *= value
        return out
    out = 1.0
    for value in values:
        out *= 1.0 - value
    return 1.0 - out


def propagate(
    dm: DependencyModel,
    overrides: StateMap | None = None,
    mode: Mode | str = Mode.MINMAX,
) -> StateMap:
    """Compute the state of every paragon under the given overrides.

    Override keys must name paragons in the model and values must lie in
    [0, 1]; violations raise UnknownParagonError / StateOutOfRangeError.
    """
    mode = Mode(mode)
    overrides = dict(overrides or {})
    index = paragon_index(dm)
    for key, value in overrides.items():
        if key not in index:
            raise UnknownParagonError(f"unknown paragon {key!r}")
        if not 0.0 <= value <= 1.0:
            raise StateOutOfRangeError(
                f"override for {key!r} is {value}, outside [0, 1]"
            )

    states: StateMap = {}
    stack: list[tuple[object, bool]] = [(dm.root, True)]
    while stack:
        paragon, enter = stack.pop()
        if enter:
            stack.append((paragon, False))
            for child in paragon.children:
                stack.append((child, True))
            continue
        if paragon.id in overrides:
            value = overrides[paragon.id]
        elif not paragon.children:
            value = paragon.base_state
        else:
            value = _combine(
                paragon.relationship,
                [states[child.id] for child in paragon.children],
                mode,
            )
        states[paragon.id] = value
    return states


# ---------------------------------------------------------------------------
# sessions


@dataclass(frozen=True)
class SequenceWarning:
    """An active sequenced step whose earlier sibling is still inactive."""

    step_id: str
    predecessor_id: str


@dataclass(frozen=True)
class StateChange:
    paragon_id: str
    old: float
    new: float


@dataclass(frozen=True)
class RootImpact:
    """Root state plus a path of paragon ids witnessing where it comes from."""

    state: float
    path: tuple[str, ...]


@dataclass(frozen=True)
class Session:
    model: CombinedModel
    mode: Mode
    activation: tuple[str, ...]
    states: StateMap


def overrides_for(model: CombinedModel, activation: tuple[str, ...]) -> StateMap:
    """Overrides produced by the active steps, in activation order.

    Later activations overwrite earlier ones targeting the same paragon
    (last writer wins); a step's own links apply in declaration order.
    """
    by_step: dict[str, list[ImpactLink]] = {}
    for link in model.links:
        by_step.setdefault(link.step_id, []).append(link)
    out: StateMap = {}
    for step_id in activation:
        for link in by_step.get(step_id, ()):
            out[link.paragon_id] = link.target_state
    return out


def create_session(model: CombinedModel, mode: Mode | str = Mode.MINMAX) -> Session:
    mode = Mode(mode)
    states = propagate(model.dm, overrides_for(model, ()), mode)
    return Session(model=model, mode=mode, activation=(), states=states)


def state_delta(
    dm: DependencyModel, old: StateMap, new: StateMap
) -> tuple[StateChange, ...]:
    """Changed paragon states, in the model's pre-order."""
    return tuple(
        StateChange(p.id, old[p.id], new[p.id])
        for p in dm.paragons()
        if old[p.id] != new[p.id]
    )


def toggle_step(
    session: Session, step_id: str, active: bool
) -> tuple[Session, tuple[StateChange, ...]]:
    """Activate or deactivate a step; returns the new session and delta.

    Toggling a step to the state it is already in is a no-op with an
    empty delta. Deactivating removes the step from the activation order
    entirely, so its overrides vanish and earlier writers shine through.
    """
    if step_id not in step_index(session.model.cim):
        raise UnknownStepError(f"unknown step {step_id!r}")
    activation = list(session.activation)
    if active:
        if step_id not in activation:
            activation.append(step_id)
    elif step_id in activation:
        activation.remove(step_id)
    new_states = propagate(
        session.model.dm,
        overrides_for(session.model, tuple(activation)),
        session.mode,
    )
    delta = state_delta(session.model.dm, session.states, new_states)
    new_session = Session(
        model=session.model,
        mode=session.mode,
        activation=tuple(activation),
        states=new_states,
    )
    return new_session, delta


def reset_session(session: Session) -> tuple[Session, tuple[StateChange, ...]]:
    """Deactivate everything in one move."""
    fresh = create_session(session.model, session.mode)
    delta = state_delta(session.model.dm, session.states, fresh.states)
    return fresh, delta


def check_sequence(session: Session) -> tuple[SequenceWarning, ...]:
    """Warn for every active sequenced step with an inactive predecessor.

    Predecessors are the sequenced siblings with smaller numbers under the
    same parent; inactive ancestors elsewhere in the model are not this
    check's business.
    """
    active = set(session.activation)
    warnings: list[SequenceWarning] = []
    for parent in walk_steps(session.model.cim.root):
        group = sorted(
            (c for c in parent.children if c.sequenced and c.number is not None),
            key=lambda step: step.number,
        )
        for position, child in enumerate(group):
            if child.id not in active:
                continue
            for predecessor in group[:position]:
                if predecessor.id not in active:
                    warnings.append(SequenceWarning(child.id, predecessor.id))
    return tuple(warnings)


def root_impact(session: Session) -> RootImpact:
    """Root state with a witness path for the dominant contribution.

    The path descends greedily from the root through the first child whose
    state equals the parent's value, stopping at a leaf, at an overridden
    paragon (its value no longer comes from children), or when no child
    attains the value (probabilistic mode blends children, so the path may
    stop early there).
    """
    overrides = overrides_for(session.model, session.activation)
    states = session.states
    current = session.model.dm.root
    path = [current.id]
    while current.id not in overrides and current.children:
        target = states[current.id]
        for child in current.children:
            if states[child.id] == target:
                current = child
                path.append(child.id)
                break
        else:
            break
    return RootImpact(state=states[session.model.dm.root.id], path=tuple(path))
