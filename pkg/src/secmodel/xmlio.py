"""Native XML documents for intrusion, dependency and combined models.

Three document kinds, recognised by file suffix and root element:

========== ==================== =====================
suffix     root element         payload
========== ==================== =====================
.cim.xml   <intrusionModel>     CimModel
.dm.xml    <dependencyModel>    DependencyModel
.oiirp.xml <combinedModel>      CombinedModel
========== ==================== =====================

The outermost element always carries ``schemaVersion`` (currently 1).
Reading is the validation gate: a document that parses but whose model
breaks an invariant raises ValidationFailedError listing every violation.
Writing is deterministic (fixed attribute order, two-space indentation),
and also refuses invalid models so files on disk are always loadable.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .errors import (
    InvalidModelError,
    MalformedXmlError,
    UnsupportedSchemaVersionError,
)
from .model import (
    Actuator,
    CimModel,
    CimStep,
    CombinedModel,
    DependencyModel,
    ExternalReference,
    ImpactLink,
    Paragon,
    Refinement,
    Relationship,
    format_state,
    require_valid,
    validate_cim,
    validate_combined,
    validate_dm,
)

SCHEMA_VERSION = 1

KIND_CIM = "cim"
KIND_DM = "dm"
KIND_COMBINED = "oiirp"

_SUFFIX_KINDS = (
    (".oiirp.xml", KIND_COMBINED),
    (".cim.xml", KIND_CIM),
    (".dm.xml", KIND_DM),
)


@dataclass(frozen=True)
class ModelDocument:
    kind: str
    payload: CimModel | DependencyModel | CombinedModel
    schema_version: int = SCHEMA_VERSION


def document_for(payload) -> ModelDocument:
    """Wrap a bare model in a current-version document."""
    if isinstance(payload, CimModel):
        return ModelDocument(KIND_CIM, payload)
    if isinstance(payload, DependencyModel):
        return ModelDocument(KIND_DM, payload)
    if isinstance(payload, CombinedModel):
        return ModelDocument(KIND_COMBINED, payload)
    raise InvalidModelError(f"no document kind for {type(payload).__name__}")


def kind_for_path(name: str) -> str | None:
    """Document kind implied by a file name, or None."""
    for suffix, kind in _SUFFIX_KINDS:
        if str(name).endswith(suffix):
            return kind
    return None


# ---------------------------------------------------------------------------
# writing


def _bool_text(value: bool) -> str:
    return "true" if value else "false"


def _reference_el(parent: ET.Element, ref: ExternalReference) -> None:
    attrs = {"title": ref.title}
    for name in ("url", "publisher", "doi"):
        value = getattr(ref, name)
        if value is not None:
            attrs[name] = value
    ET.SubElement(parent, "reference", attrs)


def _step_el(parent: ET.Element, step: CimStep) -> None:
    attrs = {"id": step.id}
    if step.number is not None:
        attrs["number"] = str(step.number)
    attrs["label"] = step.label
    attrs["refinement"] = step.refinement.value
    attrs["actuator"] = step.actuator.value
    attrs["sequenced"] = _bool_text(step.sequenced)
    if step.model_ref is not None:
        attrs["modelRef"] = step.model_ref
    el = ET.SubElement(parent, "step", attrs)
    for child in step.children:
        _step_el(el, child)


def _cim_el(parent: ET.Element, model: CimModel, versioned: bool) -> ET.Element:
    attrs = {}
    if versioned:
        attrs["schemaVersion"] = str(SCHEMA_VERSION)
    attrs["name"] = model.name
    attrs["direction"] = model.direction
    el = (
        ET.SubElement(parent, "intrusionModel", attrs)
        if parent is not None
        else ET.Element("intrusionModel", attrs)
    )
    if model.references:
        refs_el = ET.SubElement(el, "references")
        for ref in model.references:
            _reference_el(refs_el, ref)
    _step_el(el, model.root)
    return el


def _paragon_el(parent: ET.Element, paragon: Paragon) -> None:
    el = ET.SubElement(
        parent,
        "paragon",
        {
            "id": paragon.id,
            "name": paragon.name,
            "relationship": paragon.relationship.value,
            "state": format_state(paragon.base_state),
        },
    )
    if paragon.definition:
        def_el = ET.SubElement(el, "definition")
        def_el.text = paragon.definition
    for child in paragon.children:
        _paragon_el(el, child)


def _dm_el(parent: ET.Element, model: DependencyModel, versioned: bool) -> ET.Element:
    attrs = {}
    if versioned:
        attrs["schemaVersion"] = str(SCHEMA_VERSION)
    attrs["name"] = model.name
    el = (
        ET.SubElement(parent, "dependencyModel", attrs)
        if parent is not None
        else ET.Element("dependencyModel", attrs)
    )
    _paragon_el(el, model.root)
    return el


def write_model(document: ModelDocument) -> bytes:
    """Serialize a document; deterministic and valid-by-construction."""
    if document.schema_version != SCHEMA_VERSION:
        raise InvalidModelError(
            f"cannot write schema version {document.schema_version}"
        )
    payload = document.payload
    if isinstance(payload, CimModel):
        require_valid(validate_cim(payload))
        root = _cim_el(None, payload, versioned=True)
    elif isinstance(payload, DependencyModel):
        require_valid(validate_dm(payload))
        root = _dm_el(None, payload, versioned=True)
    elif isinstance(payload, CombinedModel):
        require_valid(validate_combined(payload))
        root = ET.Element("combinedModel", {"schemaVersion": str(SCHEMA_VERSION)})
        _cim_el(root, payload.cim, versioned=False)
        _dm_el(root, payload.dm, versioned=False)
        if payload.links:
            links_el = ET.SubElement(root, "links")
            for link in payload.links:
                ET.SubElement(
                    links_el,
                    "link",
                    {
                        "step": link.step_id,
                        "paragon": link.paragon_id,
                        "target": format_state(link.target_state),
                    },
                )
    else:
        raise InvalidModelError(f"cannot write a {type(payload).__name__}")

    tree = ET.ElementTree(root)
    ET.indent(tree, space="  ")
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


# ---------------------------------------------------------------------------
# reading


def _attr(el: ET.Element, name: str, subject: str) -> str:
    value = el.get(name)
    if value is None:
        raise MalformedXmlError(f"{subject}: missing attribute {name!r}")
    return value


def _enum_value(el: ET.Element, name: str, enum_cls, default, subject: str):
    raw = el.get(name)
    if raw is None:
        return default
    try:
        return enum_cls(raw)
    except ValueError as exc:
        raise MalformedXmlError(f"{subject}: bad {name} value {raw!r}") from exc


def _bool_attr(el: ET.Element, name: str, subject: str) -> bool:
    raw = el.get(name, "false")
    if raw == "true":
        return True
    if raw == "false":
        return False
    raise MalformedXmlError(f"{subject}: bad boolean {name}={raw!r}")


def _float_attr(el: ET.Element, name: str, default: float, subject: str) -> float:
    raw = el.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise MalformedXmlError(f"{subject}: bad number {name}={raw!r}") from exc


def _read_step(el: ET.Element) -> CimStep:
    step_id = _attr(el, "id", "step")
    subject = f"step {step_id!r}"
    raw_number = el.get("number")
    if raw_number is None:
        number = None
    else:
        try:
            number = int(raw_number)
        except ValueError as exc:
            raise MalformedXmlError(f"{subject}: bad number {raw_number!r}") from exc
    return CimStep(
        id=step_id,
        label=_attr(el, "label", subject),
        refinement=_enum_value(el, "refinement", Refinement, Refinement.OR, subject),
        actuator=_enum_value(el, "actuator", Actuator, Actuator.UNKNOWN, subject),
        sequenced=_bool_attr(el, "sequenced", subject),
        number=number,
        model_ref=el.get("modelRef"),
        children=tuple(_read_step(child) for child in el if child.tag == "step"),
    )


def _read_cim(el: ET.Element) -> CimModel:
    references: list[ExternalReference] = []
    for refs_el in el.findall("references"):
        for ref_el in refs_el.findall("reference"):
            references.append(
                ExternalReference(
                    title=_attr(ref_el, "title", "reference"),
                    url=ref_el.get("url"),
                    publisher=ref_el.get("publisher"),
                    doi=ref_el.get("doi"),
                )
            )
    step_els = el.findall("step")
    if len(step_els) != 1:
        raise MalformedXmlError(
            f"intrusionModel needs exactly one root step, found {len(step_els)}"
        )
    root = _read_step(step_els[0])
    return CimModel(
        name=el.get("name", root.label),
        root=root,
        references=tuple(references),
        direction=el.get("direction", "right-to-left"),
    )


def _read_paragon(el: ET.Element) -> Paragon:
    paragon_id = _attr(el, "id", "paragon")
    subject = f"paragon {paragon_id!r}"
    definition_el = el.find("definition")
    return Paragon(
        id=paragon_id,
        name=_attr(el, "name", subject),
        relationship=_enum_value(el, "relationship", Relationship, Relationship.AND, subject),
        base_state=_float_attr(el, "state", 1.0, subject),
        definition="" if definition_el is None else (definition_el.text or ""),
        children=tuple(_read_paragon(child) for child in el if child.tag == "paragon"),
    )


def _read_dm(el: ET.Element) -> DependencyModel:
    paragon_els = el.findall("paragon")
    if len(paragon_els) != 1:
        raise MalformedXmlError(
            f"dependencyModel needs exactly one root paragon, found {len(paragon_els)}"
        )
    root = _read_paragon(paragon_els[0])
    return DependencyModel(name=el.get("name", root.name), root=root)


def _read_combined(el: ET.Element) -> CombinedModel:
    cim_el = el.find("intrusionModel")
    dm_el = el.find("dependencyModel")
    if cim_el is None or dm_el is None:
        raise MalformedXmlError(
            "combinedModel needs one intrusionModel and one dependencyModel"
        )
    links: list[ImpactLink] = []
    links_el = el.find("links")
    if links_el is not None:
        for link_el in links_el.findall("link"):
            links.append(
                ImpactLink(
                    step_id=_attr(link_el, "step", "link"),
                    paragon_id=_attr(link_el, "paragon", "link"),
                    target_state=_float_attr(link_el, "target", 1.0, "link"),
                )
            )
    return CombinedModel(cim=_read_cim(cim_el), dm=_read_dm(dm_el), links=tuple(links))


_READERS = {
    "intrusionModel": (KIND_CIM, _read_cim, validate_cim),
    "dependencyModel": (KIND_DM, _read_dm, validate_dm),
    "combinedModel": (KIND_COMBINED, _read_combined, validate_combined),
}


def read_model(data: bytes | str) -> ModelDocument:
    """Parse and validate one model document."""
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXmlError(f"not well-formed XML: {exc}") from exc
    if root.tag not in _READERS:
        raise MalformedXmlError(f"unexpected root element {root.tag!r}")
    raw_version = root.get("schemaVersion")
    if raw_version is None:
        raise MalformedXmlError("missing schemaVersion attribute")
    try:
        version = int(raw_version)
    except ValueError as exc:
        raise MalformedXmlError(f"bad schemaVersion {raw_version!r}") from exc
    if version != SCHEMA_VERSION:
        raise UnsupportedSchemaVersionError(
            f"schema version {version} is not supported (expected {SCHEMA_VERSION})"
        )
    kind, reader, validator = _READERS[root.tag]
    payload = reader(root)
    require_valid(validator(payload))
    return ModelDocument(kind=kind, payload=payload, schema_version=version)
