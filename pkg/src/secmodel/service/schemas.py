"""Wire schemas for the HTTP service.

Field names are camelCase because this is the JSON contract consumed by
browser clients; converters from the domain dataclasses live next to the
schemas they feed.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from ..model import (
    CimModel,
    CimStep,
    CombinedModel,
    DependencyModel,
    ExternalReference,
    Paragon,
    display_label,
)
from ..propagation import RootImpact, SequenceWarning, StateChange


class StepOut(BaseModel):
    id: str
    label: str
    display: str
    refinement: Literal["OR", "AND"]
    actuator: Literal["MANUAL", "AUTOMATIC", "DUAL", "UNKNOWN"]
    actuatorCode: str
    sequenced: bool
    number: int | None = None
    modelRef: str | None = None
    children: list[StepOut] = Field(default_factory=list)


class ReferenceOut(BaseModel):
    title: str
    url: str | None = None
    publisher: str | None = None
    doi: str | None = None


class ParagonOut(BaseModel):
    id: str
    name: str
    relationship: Literal["AND", "OR"]
    baseState: float
    definition: str = ""
    children: list[ParagonOut] = Field(default_factory=list)


class LinkOut(BaseModel):
    stepId: str
    paragonId: str
    targetState: float


class IntrusionOut(BaseModel):
    name: str
    direction: str
    references: list[ReferenceOut]
    root: StepOut


class DependencyOut(BaseModel):
    name: str
    root: ParagonOut


class ModelSummary(BaseModel):
    id: str
    name: str
    steps: int
    paragons: int


class ModelDetail(BaseModel):
    id: str
    name: str
    cim: IntrusionOut
    dm: DependencyOut
    links: list[LinkOut]


class SessionCreate(BaseModel):
    modelId: str
    mode: Literal["minmax", "prob"] = "minmax"


class ToggleRequest(BaseModel):
    stepId: str
    active: bool
    revision: int = Field(ge=0)


class ResetRequest(BaseModel):
    revision: int | None = Field(default=None, ge=0)


class StateChangeOut(BaseModel):
    paragonId: str
    old: float
    new: float


class WarningOut(BaseModel):
    stepId: str
    predecessorId: str


class RootImpactOut(BaseModel):
    state: float
    path: list[str]


class SessionView(BaseModel):
    sessionId: str
    modelId: str
    mode: str
    revision: int
    activeSteps: list[str]
    states: dict[str, float]
    warnings: list[WarningOut]
    rootImpact: RootImpactOut


class ToggleResponse(BaseModel):
    sessionId: str
    revision: int
    delta: list[StateChangeOut]
    warnings: list[WarningOut]
    rootImpact: RootImpactOut


# ---------------------------------------------------------------------------
# converters from domain objects


def step_out(step: CimStep) -> StepOut:
    return StepOut(
        id=step.id,
        label=step.label,
        display=display_label(step),
        refinement=step.refinement.value,
        actuator=step.actuator.value,
        actuatorCode=step.actuator.code,
        sequenced=step.sequenced,
        number=step.number,
        modelRef=step.model_ref,
        children=[step_out(child) for child in step.children],
    )


def paragon_out(paragon: Paragon) -> ParagonOut:
    return ParagonOut(
        id=paragon.id,
        name=paragon.name,
        relationship=paragon.relationship.value,
        baseState=paragon.base_state,
        definition=paragon.definition,
        children=[paragon_out(child) for child in paragon.children],
    )


def reference_out(ref: ExternalReference) -> ReferenceOut:
    return ReferenceOut(title=ref.title, url=ref.url, publisher=ref.publisher, doi=ref.doi)


def intrusion_out(model: CimModel) -> IntrusionOut:
    return IntrusionOut(
        name=model.name,
        direction=model.direction,
        references=[reference_out(ref) for ref in model.references],
        root=step_out(model.root),
    )


def dependency_out(model: DependencyModel) -> DependencyOut:
    return DependencyOut(name=model.name, root=paragon_out(model.root))


def model_summary(model_id: str, model: CombinedModel) -> ModelSummary:
    return ModelSummary(
        id=model_id,
        name=model.cim.name,
        steps=sum(1 for _ in model.cim.steps()) - 1,
        paragons=sum(1 for _ in model.dm.paragons()),
    )


def model_detail(model_id: str, model: CombinedModel) -> ModelDetail:
    return ModelDetail(
        id=model_id,
        name=model.cim.name,
        cim=intrusion_out(model.cim),
        dm=dependency_out(model.dm),
        links=[
            LinkOut(
                stepId=link.step_id,
                paragonId=link.paragon_id,
                targetState=link.target_state,
            )
            for link in model.links
        ],
    )


def warnings_out(warnings: tuple[SequenceWarning, ...]) -> list[WarningOut]:
    return [
        WarningOut(stepId=w.step_id, predecessorId=w.predecessor_id) for w in warnings
    ]


def delta_out(delta: tuple[StateChange, ...]) -> list[StateChangeOut]:
    return [
        StateChangeOut(paragonId=c.paragon_id, old=c.old, new=c.new) for c in delta
    ]


def root_impact_out(impact: RootImpact) -> RootImpactOut:
    return RootImpactOut(state=impact.state, path=list(impact.path))
