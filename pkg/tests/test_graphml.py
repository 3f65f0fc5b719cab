"""GraphML pivot: typed-model conversion and document round-trips."""

from __future__ import annotations

import random
import xml.etree.ElementTree as ET

import pytest

from secmodel import (
    ModelKind,
    PivotEdge,
    PivotGraph,
    PivotNode,
    from_pivot,
    parse_sand,
    read_graphml,
    to_pivot,
    write_graphml,
)
from secmodel.corpus import fixtures
from secmodel.errors import (
    CycleDetectedError,
    EmptyDocumentError,
    MalformedDocumentError,
    MultipleRootsError,
    NotATreeError,
    SchemaViolationError,
    UnknownModelKindError,
)

from gen import random_cim, random_dm, random_tree

GRAPHML_NS = "{http://graphml.graphdrawing.org/xmlns}"


def roundtrip(model):
    return from_pivot(read_graphml(write_graphml(to_pivot(model))))


class TestPivotMapping:
    def test_tree_kind_and_attrs(self):
        tree = fixtures.become_root_tree()
        pivot = to_pivot(tree)
        assert pivot.kind is ModelKind.SAND
        assert pivot.nodes[0].attrs == {"label": "Become Root", "operator": "OR"}
        assert len(pivot.edges) == len(pivot.nodes) - 1
        assert from_pivot(pivot) == tree

    def test_edge_order_is_explicit(self):
        tree = fixtures.become_root_tree()
        pivot = to_pivot(tree)
        by_source: dict[str, list[int]] = {}
        for edge in pivot.edges:
            by_source.setdefault(edge.source, []).append(edge.order)
        for orders in by_source.values():
            assert orders == list(range(len(orders)))

    def test_shuffled_edges_still_reconstruct(self):
        tree = fixtures.become_root_tree()
        pivot = to_pivot(tree)
        rng = random.Random(5)
        edges = list(pivot.edges)
        rng.shuffle(edges)
        shuffled = PivotGraph(
            kind=pivot.kind, nodes=pivot.nodes, edges=tuple(edges), attrs=pivot.attrs
        )
        assert from_pivot(shuffled) == tree

    def test_cim_references_ride_on_root_node(self):
        model = fixtures.ukraine_cim()
        pivot = to_pivot(model)
        root_attrs = pivot.nodes[0].attrs
        titles = str(root_attrs["refTitles"]).split("\n")
        assert len(titles) == len(model.references)
        assert pivot.attrs == {"name": model.name, "direction": "right-to-left"}
        assert from_pivot(pivot) == model

    def test_cim_model_ref_column(self):
        model = fixtures.ukraine_cim()
        pivot = to_pivot(model)
        linked = [n for n in pivot.nodes if "modelRef" in n.attrs]
        assert [n.attrs["modelRef"] for n in linked] == ["blackenergy"]

    def test_dm_mapping(self):
        model = fixtures.scada_dm()
        pivot = to_pivot(model)
        assert pivot.kind is ModelKind.DM
        assert pivot.attrs == {"name": model.name}
        states = {n.attrs["state"] for n in pivot.nodes}
        assert states == {1.0}
        assert from_pivot(pivot) == model


class TestShapePolicing:
    def make(self, nodes, edges, kind=ModelKind.SAND):
        return PivotGraph(kind=kind, nodes=tuple(nodes), edges=tuple(edges), attrs={})

    def node(self, node_id, label="x", operator="LEAF"):
        return PivotNode(id=node_id, attrs={"label": label, "operator": operator})

    def test_empty(self):
        with pytest.raises(EmptyDocumentError):
            from_pivot(self.make([], []))

    def test_multiple_roots(self):
        with pytest.raises(MultipleRootsError):
            from_pivot(self.make([self.node("a"), self.node("b")], []))

    def test_cycle(self):
        nodes = [self.node("a", operator="OR"), self.node("b", operator="OR")]
        edges = [PivotEdge("a", "b", 0), PivotEdge("b", "a", 0)]
        with pytest.raises(CycleDetectedError):
            from_pivot(self.make(nodes, edges))

    def test_detached_cycle(self):
        nodes = [self.node("r"), self.node("a", operator="OR"), self.node("b", operator="OR")]
        edges = [PivotEdge("a", "b", 0), PivotEdge("b", "a", 0)]
        with pytest.raises(CycleDetectedError):
            from_pivot(self.make(nodes, edges))

    def test_multi_parent(self):
        nodes = [self.node("r", operator="AND"), self.node("s", operator="AND"), self.node("c")]
        edges = [PivotEdge("r", "c", 0), PivotEdge("s", "c", 0)]
        with pytest.raises(NotATreeError):
            from_pivot(self.make(nodes, edges))

    def test_dangling_edge(self):
        with pytest.raises(NotATreeError):
            from_pivot(self.make([self.node("a")], [PivotEdge("a", "zz", 0)]))


class TestDocumentFormat:
    def test_declared_keys_match_usage(self):
        data = write_graphml(to_pivot(fixtures.ukraine_cim()))
        root = ET.fromstring(data)
        declared = {k.get("id") for k in root.findall(f"{GRAPHML_NS}key")}
        used = {d.get("key") for d in root.iter(f"{GRAPHML_NS}data")}
        assert used <= declared
        # key ids mirror attr.name so generic tools show readable names
        for key in root.findall(f"{GRAPHML_NS}key"):
            assert key.get("id") == key.get("attr.name")

    def test_model_kind_is_first_key(self):
        data = write_graphml(to_pivot(fixtures.example_dm()))
        root = ET.fromstring(data)
        first = root.find(f"{GRAPHML_NS}key")
        assert first.get("id") == "modelKind"
        assert first.get("for") == "graph"

    def test_read_rejects_garbage(self):
        with pytest.raises(MalformedDocumentError):
            read_graphml(b"this is not xml")
        with pytest.raises(MalformedDocumentError):
            read_graphml(b"<?xml version='1.0'?><wrong/>")

    def test_read_requires_model_kind(self):
        data = (
            "<graphml xmlns='http://graphml.graphdrawing.org/xmlns'>"
            "<graph id='G' edgedefault='directed'><node id='a'/></graph></graphml>"
        )
        with pytest.raises(UnknownModelKindError):
            read_graphml(data)

    def test_read_rejects_unknown_kind(self):
        data = (
            "<graphml xmlns='http://graphml.graphdrawing.org/xmlns'>"
            "<key id='modelKind' for='graph' attr.name='modelKind' attr.type='string'/>"
            "<graph id='G' edgedefault='directed'>"
            "<data key='modelKind'>PETRI</data><node id='a'/></graph></graphml>"
        )
        with pytest.raises(UnknownModelKindError):
            read_graphml(data)

    def test_read_rejects_undeclared_data_key(self):
        data = (
            "<graphml xmlns='http://graphml.graphdrawing.org/xmlns'>"
            "<key id='modelKind' for='graph' attr.name='modelKind' attr.type='string'/>"
            "<graph id='G' edgedefault='directed'>"
            "<data key='modelKind'>SAND</data>"
            "<node id='a'><data key='mystery'>1</data></node>"
            "</graph></graphml>"
        )
        with pytest.raises(SchemaViolationError):
            read_graphml(data)

    def test_read_rejects_edge_without_order(self):
        data = (
            "<graphml xmlns='http://graphml.graphdrawing.org/xmlns'>"
            "<key id='modelKind' for='graph' attr.name='modelKind' attr.type='string'/>"
            "<graph id='G' edgedefault='directed'>"
            "<data key='modelKind'>SAND</data>"
            "<node id='a'/><node id='b'/>"
            "<edge source='a' target='b'/>"
            "</graph></graphml>"
        )
        with pytest.raises(SchemaViolationError):
            read_graphml(data)

    def test_read_rejects_bad_typed_value(self):
        data = (
            "<graphml xmlns='http://graphml.graphdrawing.org/xmlns'>"
            "<key id='modelKind' for='graph' attr.name='modelKind' attr.type='string'/>"
            "<key id='state' for='node' attr.name='state' attr.type='double'/>"
            "<graph id='G' edgedefault='directed'>"
            "<data key='modelKind'>DM</data>"
            "<node id='a'><data key='state'>much</data></node>"
            "</graph></graphml>"
        )
        with pytest.raises(SchemaViolationError):
            read_graphml(data)

    def test_read_rejects_duplicate_node_ids(self):
        data = (
            "<graphml xmlns='http://graphml.graphdrawing.org/xmlns'>"
            "<key id='modelKind' for='graph' attr.name='modelKind' attr.type='string'/>"
            "<graph id='G' edgedefault='directed'>"
            "<data key='modelKind'>SAND</data>"
            "<node id='a'/><node id='a'/>"
            "</graph></graphml>"
        )
        with pytest.raises(MalformedDocumentError):
            read_graphml(data)


class TestRoundTrips:
    def test_trees(self):
        rng = random.Random(1001)
        for _ in range(75):
            tree = random_tree(rng)
            assert roundtrip(tree) == tree

    def test_cims(self):
        rng = random.Random(1002)
        for _ in range(75):
            model = random_cim(rng)
            assert roundtrip(model) == model

    def test_dms(self):
        rng = random.Random(1003)
        for _ in range(75):
            model = random_dm(rng)
            assert roundtrip(model) == model

    def test_document_bytes_are_stable(self):
        model = fixtures.blackenergy_cim()
        once = write_graphml(to_pivot(model))
        again = write_graphml(to_pivot(from_pivot(read_graphml(once))))
        assert once == again
