"""Lowering attack trees into intrusion models, and back.

The operator lowering is lossless because sequencing moves onto the
children: OR stays an OR refinement, AND stays AND, and SAND becomes AND
with every child flagged ``sequenced``. Step numbers are assigned in
pre-order over the result, skipping the root goal, which matches how the
drawn models are numbered.
"""

from __future__ import annotations

import itertools
from dataclasses import replace

from .errors import InvalidTreeError, UnsupportedConversionError
from .model import (
    Actuator,
    AttackTree,
    AttackTreeNode,
    CimModel,
    CimStep,
    Operator,
    Refinement,
    require_valid,
    validate_attack_tree,
    validate_cim,
)


def lower_sand(node: AttackTreeNode) -> tuple[Refinement, list[bool]]:
    """Refinement and per-child sequenced flags for one internal node."""
    if node.operator is Operator.LEAF:
        raise InvalidTreeError(f"LEAF node {node.id!r} has no refinement to lower")
    flags = [node.operator is Operator.SAND] * len(node.children)
    refinement = Refinement.OR if node.operator is Operator.OR else Refinement.AND
    return refinement, flags


def sand_to_cim(tree: AttackTree, name: str | None = None) -> CimModel:
    """Convert a validated attack tree into a numbered intrusion model.

    Every step starts with an UNKNOWN actuator; enrichment (who performs
    the step, source references) is a separate, later concern. No helper
    steps are invented: the converted model has exactly one step per tree
    node, with the tree node's id and label.
    """
    require_valid(validate_attack_tree(tree))

    def build(node: AttackTreeNode, sequenced: bool) -> CimStep:
        if node.operator is Operator.LEAF:
            return CimStep(
                id=node.id,
                label=node.label,
                refinement=Refinement.OR,
                actuator=Actuator.UNKNOWN,
                sequenced=sequenced,
            )
        refinement, flags = lower_sand(node)
        children = tuple(
            build(child, flag) for child, flag in zip(node.children, flags)
        )
        return CimStep(
            id=node.id,
            label=node.label,
            refinement=refinement,
            actuator=Actuator.UNKNOWN,
            sequenced=sequenced,
            children=children,
        )

    model = CimModel(name=name or tree.root.label, root=build(tree.root, False))
    return assign_numbers(model)


def assign_numbers(model: CimModel) -> CimModel:
    """Renumber steps 1..N in pre-order, leaving the root unnumbered.

    Idempotent: renumbering an already-numbered model changes nothing.
    """
    counter = itertools.count(1)

    def renumber(step: CimStep, is_root: bool) -> CimStep:
        number = None if is_root else next(counter)
        return replace(
            step,
            number=number,
            children=tuple(renumber(child, False) for child in step.children),
        )

    return replace(model, root=renumber(model.root, True))


def cim_to_sand(model: CimModel) -> AttackTree:
    """Recover the attack tree from a conversion-shaped intrusion model.

    Only models that carry no information the tree grammar cannot hold are
    accepted: every actuator UNKNOWN, no model references, no source
    citations, and each sibling group uniformly sequenced or not.
    """
    require_valid(validate_cim(model))
    if model.references:
        raise UnsupportedConversionError("source references would be lost")

    def raise_step(step: CimStep) -> AttackTreeNode:
        if step.actuator is not Actuator.UNKNOWN:
            raise UnsupportedConversionError(
                f"step {step.id!r} carries an actuator marking"
            )
        if step.model_ref is not None:
            raise UnsupportedConversionError(
                f"step {step.id!r} references another model"
            )
        if not step.children:
            return AttackTreeNode(id=step.id, label=step.label, operator=Operator.LEAF)
        flags = {child.sequenced for child in step.children}
        if len(flags) > 1:
            raise UnsupportedConversionError(
                f"step {step.id!r} mixes sequenced and unsequenced children"
            )
        sequenced = flags.pop()
        if step.refinement is Refinement.OR:
            if sequenced:
                raise UnsupportedConversionError(
                    f"step {step.id!r} sequences children under an OR refinement"
                )
            operator = Operator.OR
        else:
            operator = Operator.SAND if sequenced else Operator.AND
        return AttackTreeNode(
            id=step.id,
            label=step.label,
            operator=operator,
            children=tuple(raise_step(child) for child in step.children),
        )

    return AttackTree(root=raise_step(model.root))
