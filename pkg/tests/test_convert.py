"""Attack tree <-> intrusion model conversion."""

from __future__ import annotations

import random

import pytest

from secmodel import (
    Actuator,
    AttackTree,
    AttackTreeNode,
    CimModel,
    CimStep,
    ExternalReference,
    Operator,
    Refinement,
    assign_numbers,
    cim_to_sand,
    lower_sand,
    parse_sand,
    sand_to_cim,
    validate_cim,
)
from secmodel.errors import InvalidTreeError, UnsupportedConversionError

from gen import random_tree

TEXT = (
    "goal ;SAND\n"
    "\tphase one ;OR\n"
    "\t\ta\n"
    "\t\tb\n"
    "\tphase two ;AND\n"
    "\t\tc\n"
    "\t\td\n"
)


def test_lower_sand_operator_mapping():
    node = AttackTreeNode(
        "x", "x", Operator.SAND, (AttackTreeNode("a", "a"), AttackTreeNode("b", "b"))
    )
    refinement, sequenced = lower_sand(node)
    assert refinement is Refinement.AND
    assert sequenced == [True, True]

    node = AttackTreeNode("x", "x", Operator.AND, (AttackTreeNode("a", "a"),))
    assert lower_sand(node) == (Refinement.AND, [False])

    node = AttackTreeNode("x", "x", Operator.OR, (AttackTreeNode("a", "a"),))
    assert lower_sand(node) == (Refinement.OR, [False])

    with pytest.raises(InvalidTreeError):
        lower_sand(AttackTreeNode("x", "x"))


def test_sand_to_cim_shape():
    model = sand_to_cim(parse_sand(TEXT))
    assert model.name == "goal"
    assert validate_cim(model) == []
    root = model.root
    assert root.number is None
    assert root.refinement is Refinement.AND
    assert [c.sequenced for c in root.children] == [True, True]
    phase_one = root.children[0]
    assert phase_one.refinement is Refinement.OR
    assert all(not c.sequenced for c in phase_one.children)
    assert all(s.actuator is Actuator.UNKNOWN for s in model.steps())


def test_numbers_follow_preorder():
    model = sand_to_cim(parse_sand(TEXT))
    assert [s.number for s in model.steps()] == [None, 1, 2, 3, 4, 5, 6]


def test_ids_and_labels_survive():
    tree = parse_sand(TEXT)
    model = sand_to_cim(tree)
    assert [(s.id, s.label) for s in model.steps()] == [
        (n.id, n.label) for n in tree.nodes()
    ]


def test_explicit_name_wins():
    assert sand_to_cim(parse_sand(TEXT), name="Other").name == "Other"


def test_assign_numbers_is_idempotent():
    model = sand_to_cim(parse_sand(TEXT))
    assert assign_numbers(model) == model


def test_roundtrip_tree_cim_tree():
    rng = random.Random(99)
    for _ in range(200):
        tree = random_tree(rng)
        assert cim_to_sand(sand_to_cim(tree)) == tree


def test_cim_to_sand_rejects_enrichment():
    base = sand_to_cim(parse_sand(TEXT))

    marked = CimModel(
        name=base.name,
        root=CimStep(
            id="r", label="r", actuator=Actuator.MANUAL, refinement=Refinement.OR
        ),
    )
    with pytest.raises(UnsupportedConversionError):
        cim_to_sand(assign_numbers(marked))

    with_refs = CimModel(
        name=base.name,
        root=base.root,
        references=(ExternalReference(title="t"),),
    )
    with pytest.raises(UnsupportedConversionError):
        cim_to_sand(with_refs)

    linked = CimModel(
        name=base.name,
        root=CimStep(id="r", label="r", model_ref="other"),
    )
    with pytest.raises(UnsupportedConversionError):
        cim_to_sand(assign_numbers(linked))


def test_cim_to_sand_rejects_invalid_model():
    bad = CimModel(name="m", root=CimStep(id="r", label="r", number=1))
    with pytest.raises(Exception):
        cim_to_sand(bad)


def test_or_with_sequenced_children_has_no_tree_form():
    # constructed directly; validation would flag it too
    root = CimStep(
        id="r",
        label="r",
        refinement=Refinement.AND,
        children=(
            CimStep(id="a", label="a", sequenced=True, number=1),
            CimStep(id="b", label="b", sequenced=False, number=2),
        ),
    )
    with pytest.raises(Exception):
        cim_to_sand(CimModel(name="m", root=root))
