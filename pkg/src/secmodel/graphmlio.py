"""GraphML pivot: one neutral graph form shared by all three model families.

Every model kind flattens to a :class:`PivotGraph` (directed, attribute
maps on the graph, nodes and edges) and is rebuilt from one. The GraphML
serialization declares every attribute with a ``<key>`` element and keeps
node and edge order stable, so writing is deterministic and
read(write(g)) == g.

Attribute vocabulary by model kind (graph attribute ``modelKind`` selects
the kind: SAND, CIM or DM):

* SAND nodes: ``label``, ``operator``.
* CIM nodes: ``label``, ``refinement``, ``actuator``, ``sequenced``,
  ``number`` (absent on the root), ``modelRef`` (optional); the root node
  additionally carries the model's source references as newline-joined
  ``refTitles`` / ``refUrls`` / ``refPublishers`` / ``refDois`` columns
  (an empty segment means the field is absent). Graph attributes ``name``
  and ``direction``.
* DM nodes: ``label`` (the paragon name), ``relationship``, ``state``
  (the base state), ``definition`` (optional). Graph attribute ``name``.

Edges run parent -> child and carry an explicit integer ``order`` (the
child's position), because sibling order is meaningful in every family.
"""

from __future__ import annotations

import enum
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .errors import (
    CycleDetectedError,
    EmptyDocumentError,
    InvalidModelError,
    MalformedDocumentError,
    MissingRequiredKeyError,
    MultipleRootsError,
    NotATreeError,
    SchemaViolationError,
    UnknownModelKindError,
)
from .model import (
    Actuator,
    AttackTree,
    AttackTreeNode,
    CimModel,
    CimStep,
    DependencyModel,
    ExternalReference,
    Operator,
    Paragon,
    Refinement,
    Relationship,
    format_state,
    require_valid,
    validate_attack_tree,
    validate_cim,
    validate_dm,
)

GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


class ModelKind(str, enum.Enum):
    SAND = "SAND"
    CIM = "CIM"
    DM = "DM"


@dataclass(frozen=True)
class PivotNode:
    id: str
    attrs: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PivotEdge:
    source: str
    target: str
    order: int


@dataclass(frozen=True)
class PivotGraph:
    kind: ModelKind
    nodes: tuple[PivotNode, ...]
    edges: tuple[PivotEdge, ...]
    attrs: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))


# Canonical declaration order; only keys actually used are declared.
_GRAPH_KEYS = ("name", "direction")
_NODE_KEYS = (
    "label",
    "operator",
    "refinement",
    "actuator",
    "sequenced",
    "number",
    "modelRef",
    "refTitles",
    "refUrls",
    "refPublishers",
    "refDois",
    "relationship",
    "state",
    "definition",
)
_EDGE_KEYS = ("order",)
_KEY_TYPES = {"sequenced": "boolean", "number": "int", "order": "int", "state": "double"}


# ---------------------------------------------------------------------------
# model <-> pivot


def to_pivot(model: AttackTree | CimModel | DependencyModel) -> PivotGraph:
    """Flatten a model into the neutral graph form (nodes in pre-order)."""
    if isinstance(model, AttackTree):
        return _tree_to_pivot(model)
    if isinstance(model, CimModel):
        return _cim_to_pivot(model)
    if isinstance(model, DependencyModel):
        return _dm_to_pivot(model)
    raise InvalidModelError(f"cannot pivot a {type(model).__name__}")


def _flatten(root, node_attrs) -> tuple[list[PivotNode], list[PivotEdge]]:
    nodes: list[PivotNode] = []
    edges: list[PivotEdge] = []

    def visit(node) -> None:
        nodes.append(PivotNode(id=node.id, attrs=node_attrs(node)))
        for position, child in enumerate(node.children):
            edges.append(PivotEdge(source=node.id, target=child.id, order=position))
            visit(child)

    visit(root)
    return nodes, edges


def _tree_to_pivot(tree: AttackTree) -> PivotGraph:
    def attrs(node: AttackTreeNode) -> dict:
        return {"label": node.label, "operator": node.operator.value}

    nodes, edges = _flatten(tree.root, attrs)
    return PivotGraph(kind=ModelKind.SAND, nodes=tuple(nodes), edges=tuple(edges))


def _cim_to_pivot(model: CimModel) -> PivotGraph:
    def attrs(step: CimStep) -> dict:
        out: dict = {
            "label": step.label,
            "refinement": step.refinement.value,
            "actuator": step.actuator.value,
            "sequenced": step.sequenced,
        }
        if step.number is not None:
            out["number"] = step.number
        if step.model_ref is not None:
            out["modelRef"] = step.model_ref
        return out

    nodes, edges = _flatten(model.root, attrs)
    if model.references:
        refs = model.references
        root_attrs = dict(nodes[0].attrs)
        root_attrs["refTitles"] = "\n".join(r.title for r in refs)
        for key, fieldname in (
            ("refUrls", "url"),
            ("refPublishers", "publisher"),
            ("refDois", "doi"),
        ):
            values = [getattr(r, fieldname) for r in refs]
            if any(v is not None for v in values):
                root_attrs[key] = "\n".join(v or "" for v in values)
        nodes[0] = PivotNode(id=nodes[0].id, attrs=root_attrs)
    return PivotGraph(
        kind=ModelKind.CIM,
        nodes=tuple(nodes),
        edges=tuple(edges),
        attrs={"name": model.name, "direction": model.direction},
    )


def _dm_to_pivot(model: DependencyModel) -> PivotGraph:
    def attrs(paragon: Paragon) -> dict:
        out: dict = {
            "label": paragon.name,
            "relationship": paragon.relationship.value,
            "state": paragon.base_state,
        }
        if paragon.definition:
            out["definition"] = paragon.definition
        return out

    nodes, edges = _flatten(model.root, attrs)
    return PivotGraph(
        kind=ModelKind.DM,
        nodes=tuple(nodes),
        edges=tuple(edges),
        attrs={"name": model.name},
    )


def _tree_shape(graph: PivotGraph) -> tuple[PivotNode, dict[str, list[str]]]:
    """Check the pivot is a single rooted tree; return root and child map."""
    if not graph.nodes:
        raise EmptyDocumentError("graph has no nodes")
    by_id: dict[str, PivotNode] = {}
    for node in graph.nodes:
        if node.id in by_id:
            raise NotATreeError(f"duplicate node id {node.id!r}")
        by_id[node.id] = node
    children: dict[str, list[tuple[int, int, str]]] = {n.id: [] for n in graph.nodes}
    parent_count: dict[str, int] = {n.id: 0 for n in graph.nodes}
    for position, edge in enumerate(graph.edges):
        if edge.source not in by_id or edge.target not in by_id:
            raise NotATreeError(
                f"edge {edge.source!r} -> {edge.target!r} has a dangling endpoint"
            )
        children[edge.source].append((edge.order, position, edge.target))
        parent_count[edge.target] += 1
        if parent_count[edge.target] > 1:
            raise NotATreeError(f"node {edge.target!r} has multiple parents")
    roots = [n.id for n in graph.nodes if parent_count[n.id] == 0]
    if len(roots) > 1:
        raise MultipleRootsError(f"graph has {len(roots)} roots: {sorted(roots)}")
    if not roots:
        raise CycleDetectedError("every node has a parent; the graph is cyclic")
    ordered = {
        node_id: [target for _, _, target in sorted(entries)]
        for node_id, entries in children.items()
    }
    # Count reachable nodes; leftovers form disconnected cycles.
    seen: set[str] = set()
    stack = [roots[0]]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        stack.extend(ordered[current])
    if len(seen) != len(graph.nodes):
        raise CycleDetectedError("graph has nodes unreachable from the root")
    return by_id[roots[0]], ordered


def _need(node: PivotNode, key: str):
    if key not in node.attrs:
        raise MissingRequiredKeyError(f"node {node.id!r} is missing {key!r}")
    return node.attrs[key]


def _enum_attr(node: PivotNode, key: str, enum_cls, default=None):
    if key not in node.attrs:
        if default is None:
            raise MissingRequiredKeyError(f"node {node.id!r} is missing {key!r}")
        return default
    try:
        return enum_cls(node.attrs[key])
    except ValueError as exc:
        raise InvalidModelError(
            f"node {node.id!r}: bad {key} value {node.attrs[key]!r}"
        ) from exc


def from_pivot(graph: PivotGraph) -> AttackTree | CimModel | DependencyModel:
    """Rebuild the typed model a pivot graph encodes, validating it."""
    if graph.kind is ModelKind.SAND:
        return _pivot_to_tree(graph)
    if graph.kind is ModelKind.CIM:
        return _pivot_to_cim(graph)
    if graph.kind is ModelKind.DM:
        return _pivot_to_dm(graph)
    raise UnknownModelKindError(f"unknown model kind {graph.kind!r}")


def _pivot_to_tree(graph: PivotGraph) -> AttackTree:
    root, children = _tree_shape(graph)
    by_id = {n.id: n for n in graph.nodes}

    def build(node: PivotNode) -> AttackTreeNode:
        return AttackTreeNode(
            id=node.id,
            label=str(_need(node, "label")),
            operator=_enum_attr(node, "operator", Operator),
            children=tuple(build(by_id[c]) for c in children[node.id]),
        )

    tree = AttackTree(root=build(root))
    require_valid(validate_attack_tree(tree))
    return tree


def _decode_references(node: PivotNode) -> tuple[ExternalReference, ...]:
    titles_raw = node.attrs.get("refTitles")
    if titles_raw is None:
        return ()
    titles = str(titles_raw).split("\n")

    def column(key: str) -> list[str | None]:
        raw = node.attrs.get(key)
        if raw is None:
            return [None] * len(titles)
        parts = [part or None for part in str(raw).split("\n")]
        if len(parts) != len(titles):
            raise SchemaViolationError(
                f"node {node.id!r}: {key} has {len(parts)} entries for {len(titles)} titles"
            )
        return parts

    urls, publishers, dois = column("refUrls"), column("refPublishers"), column("refDois")
    return tuple(
        ExternalReference(title=t, url=u, publisher=p, doi=d)
        for t, u, p, d in zip(titles, urls, publishers, dois)
    )


def _pivot_to_cim(graph: PivotGraph) -> CimModel:
    root, children = _tree_shape(graph)
    by_id = {n.id: n for n in graph.nodes}

    def build(node: PivotNode) -> CimStep:
        number = node.attrs.get("number")
        if number is not None and not isinstance(number, int):
            raise InvalidModelError(f"node {node.id!r}: number must be an int")
        sequenced = node.attrs.get("sequenced", False)
        if not isinstance(sequenced, bool):
            raise InvalidModelError(f"node {node.id!r}: sequenced must be a boolean")
        model_ref = node.attrs.get("modelRef")
        return CimStep(
            id=node.id,
            label=str(_need(node, "label")),
            refinement=_enum_attr(node, "refinement", Refinement, Refinement.OR),
            actuator=_enum_attr(node, "actuator", Actuator, Actuator.UNKNOWN),
            sequenced=sequenced,
            number=number,
            model_ref=None if model_ref is None else str(model_ref),
            children=tuple(build(by_id[c]) for c in children[node.id]),
        )

    model = CimModel(
        name=str(graph.attrs.get("name") or root.attrs.get("label", "")),
        root=build(root),
        references=_decode_references(root),
        direction=str(graph.attrs.get("direction", "right-to-left")),
    )
    require_valid(validate_cim(model))
    return model


def _pivot_to_dm(graph: PivotGraph) -> DependencyModel:
    root, children = _tree_shape(graph)
    by_id = {n.id: n for n in graph.nodes}

    def build(node: PivotNode) -> Paragon:
        state = node.attrs.get("state", 1.0)
        if not isinstance(state, (int, float)) or isinstance(state, bool):
            raise InvalidModelError(f"node {node.id!r}: state must be a number")
        return Paragon(
            id=node.id,
            name=str(_need(node, "label")),
            relationship=_enum_attr(node, "relationship", Relationship, Relationship.AND),
            base_state=float(state),
            definition=str(node.attrs.get("definition", "")),
            children=tuple(build(by_id[c]) for c in children[node.id]),
        )

    model = DependencyModel(
        name=str(graph.attrs.get("name") or root.attrs.get("label", "")),
        root=build(root),
    )
    require_valid(validate_dm(model))
    return model


# ---------------------------------------------------------------------------
# pivot <-> GraphML bytes


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_state(value)
    return str(value)


def write_graphml(graph: PivotGraph) -> bytes:
    """Serialize deterministically: stable key set, node and edge order."""
    root = ET.Element("graphml", {"xmlns": GRAPHML_NS})

    used_graph = [k for k in _GRAPH_KEYS if k in graph.attrs]
    used_node = [k for k in _NODE_KEYS if any(k in n.attrs for n in graph.nodes)]
    used_edge = list(_EDGE_KEYS)
    declared = (
        [("graph", "modelKind")]
        + [("graph", k) for k in used_graph]
        + [("node", k) for k in used_node]
        + [("edge", k) for k in used_edge]
    )
    for domain, name in declared:
        ET.SubElement(
            root,
            "key",
            {
                "id": name,
                "for": domain,
                "attr.name": name,
                "attr.type": _KEY_TYPES.get(name, "string"),
            },
        )

    graph_el = ET.SubElement(root, "graph", {"id": "G", "edgedefault": "directed"})
    kind_el = ET.SubElement(graph_el, "data", {"key": "modelKind"})
    kind_el.text = graph.kind.value
    for key in used_graph:
        data = ET.SubElement(graph_el, "data", {"key": key})
        data.text = _format_value(graph.attrs[key])

    for node in graph.nodes:
        node_el = ET.SubElement(graph_el, "node", {"id": node.id})
        for key in used_node:
            if key in node.attrs:
                data = ET.SubElement(node_el, "data", {"key": key})
                data.text = _format_value(node.attrs[key])

    for position, edge in enumerate(graph.edges):
        edge_el = ET.SubElement(
            graph_el,
            "edge",
            {"id": f"e{position}", "source": edge.source, "target": edge.target},
        )
        data = ET.SubElement(edge_el, "data", {"key": "order"})
        data.text = str(edge.order)

    tree = ET.ElementTree(root)
    ET.indent(tree, space="  ")
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


_PARSERS = {
    "string": lambda text: text,
    "boolean": lambda text: {"true": True, "false": False}[text],
    "int": int,
    "long": int,
    "float": float,
    "double": float,
}


def read_graphml(data: bytes | str) -> PivotGraph:
    """Parse GraphML, checking data against its declared keys."""
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedDocumentError(f"not well-formed XML: {exc}") from exc
    if _local(root.tag) != "graphml":
        raise MalformedDocumentError(f"root element is {_local(root.tag)!r}, not graphml")

    keys: dict[str, tuple[str, str]] = {}  # id -> (domain, type)
    key_names: dict[str, str] = {}  # id -> attr.name
    for el in root:
        if _local(el.tag) != "key":
            continue
        key_id, domain = el.get("id"), el.get("for")
        name, type_ = el.get("attr.name"), el.get("attr.type")
        if not key_id or not domain or not name or not type_:
            raise SchemaViolationError("key element missing id/for/attr.name/attr.type")
        if key_id in keys:
            raise SchemaViolationError(f"duplicate key id {key_id!r}")
        if type_ not in _PARSERS:
            raise SchemaViolationError(f"key {key_id!r} has unknown type {type_!r}")
        keys[key_id] = (domain, type_)
        key_names[key_id] = name

    graph_el = next((el for el in root if _local(el.tag) == "graph"), None)
    if graph_el is None:
        raise MalformedDocumentError("document has no graph element")

    def read_data(parent, domain: str, subject: str) -> dict:
        out: dict = {}
        for el in parent:
            if _local(el.tag) != "data":
                continue
            key_id = el.get("key")
            if key_id is None or key_id not in keys:
                raise SchemaViolationError(f"{subject}: data references undeclared key {key_id!r}")
            declared_domain, type_ = keys[key_id]
            if declared_domain not in (domain, "all"):
                raise SchemaViolationError(
                    f"{subject}: key {key_id!r} is for {declared_domain!r}, used on a {domain}"
                )
            text = el.text or ""
            try:
                value = _PARSERS[type_](text)
            except (ValueError, KeyError) as exc:
                raise SchemaViolationError(
                    f"{subject}: value {text!r} is not a valid {type_}"
                ) from exc
            out[key_names[key_id]] = value
        return out

    graph_attrs = read_data(graph_el, "graph", "graph")
    kind_raw = graph_attrs.pop("modelKind", None)
    if kind_raw is None:
        raise UnknownModelKindError("graph does not declare a modelKind")
    try:
        kind = ModelKind(kind_raw)
    except ValueError as exc:
        raise UnknownModelKindError(f"unknown modelKind {kind_raw!r}") from exc

    nodes: list[PivotNode] = []
    node_ids: set[str] = set()
    edges: list[PivotEdge] = []
    for el in graph_el:
        tag = _local(el.tag)
        if tag == "node":
            node_id = el.get("id")
            if node_id is None:
                raise MalformedDocumentError("node element has no id")
            if node_id in node_ids:
                raise MalformedDocumentError(f"duplicate node id {node_id!r}")
            node_ids.add(node_id)
            nodes.append(PivotNode(id=node_id, attrs=read_data(el, "node", f"node {node_id!r}")))
        elif tag == "edge":
            source, target = el.get("source"), el.get("target")
            if source is None or target is None:
                raise MalformedDocumentError("edge element is missing source/target")
            attrs = read_data(el, "edge", f"edge {source!r}->{target!r}")
            if "order" not in attrs:
                raise SchemaViolationError(f"edge {source!r}->{target!r} has no order")
            edges.append(PivotEdge(source=source, target=target, order=attrs["order"]))

    if not nodes:
        raise EmptyDocumentError("graph has no nodes")
    for edge in edges:
        if edge.source not in node_ids or edge.target not in node_ids:
            raise MalformedDocumentError(
                f"edge {edge.source!r} -> {edge.target!r} references a missing node"
            )
    return PivotGraph(kind=kind, nodes=tuple(nodes), edges=tuple(edges), attrs=graph_attrs)
