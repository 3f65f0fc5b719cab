"""Domain type and validation behavior."""

from __future__ import annotations

import random

import pytest

from secmodel import (
    Actuator,
    AttackTree,
    AttackTreeNode,
    CimModel,
    CimStep,
    CombinedModel,
    DependencyModel,
    ExternalReference,
    ImpactLink,
    Operator,
    Paragon,
    Refinement,
    ValidationFailedError,
    display_label,
    format_state,
    number_index,
    numbered_label,
    require_valid,
    state_color,
    step_parents,
    validate_attack_tree,
    validate_cim,
    validate_combined,
    validate_dm,
    validate_reference,
)

from gen import random_cim, random_dm

REF = ExternalReference(title="A report", url="https://example.org/r", publisher="Org")


def codes(violations):
    return {v.code for v in violations}


def cim(root, references=()):
    return CimModel(name="m", root=root, references=references)


def step(step_id, number=None, sequenced=False, refinement=Refinement.OR, children=()):
    return CimStep(
        id=step_id,
        label=step_id,
        refinement=refinement,
        sequenced=sequenced,
        number=number,
        children=children,
    )


class TestDisplayForms:
    def test_sequenced_suffix(self):
        assert display_label(step("a", sequenced=True)) == "a(S)"
        assert display_label(step("a")) == "a"

    def test_numbered_label(self):
        assert numbered_label(step("Foo", number=17, sequenced=True)) == "17. Foo(S)"
        assert numbered_label(step("Root")) == "Root"

    def test_actuator_codes(self):
        assert Actuator.MANUAL.code == "[M]"
        assert Actuator.AUTOMATIC.code == "[A]"
        assert Actuator.DUAL.code == "[A+M]"
        assert Actuator.UNKNOWN.code == "[?]"

    def test_state_color_thresholds(self):
        assert state_color(1.0) == "green"
        assert state_color(0.0) == "red"
        for value in (0.001, 0.5, 0.999):
            assert state_color(value) == "amber"

    def test_format_state(self):
        assert format_state(1.0) == "1"
        assert format_state(0.0) == "0"
        assert format_state(0.2) == "0.2"
        assert format_state(1 / 3) == repr(1 / 3)
        # the form must parse back to the identical float
        for value in (0.0, 1.0, 0.25, 1 / 3, 0.7):
            assert float(format_state(value)) == value


class TestAttackTreeValidation:
    def test_ok(self):
        tree = AttackTree(
            AttackTreeNode(
                "r", "root", Operator.OR, (AttackTreeNode("c", "child"),)
            )
        )
        assert validate_attack_tree(tree) == []

    def test_leaf_with_children(self):
        tree = AttackTree(
            AttackTreeNode("r", "root", Operator.LEAF, (AttackTreeNode("c", "c"),))
        )
        assert "leaf-with-children" in codes(validate_attack_tree(tree))

    def test_internal_without_children(self):
        tree = AttackTree(AttackTreeNode("r", "root", Operator.SAND))
        assert "empty-refinement" in codes(validate_attack_tree(tree))

    def test_duplicate_ids(self):
        tree = AttackTree(
            AttackTreeNode(
                "r",
                "root",
                Operator.OR,
                (AttackTreeNode("x", "a"), AttackTreeNode("x", "b")),
            )
        )
        assert "duplicate-id" in codes(validate_attack_tree(tree))

    def test_shared_subtree_is_not_a_tree(self):
        shared = AttackTreeNode("s", "shared")
        tree = AttackTree(AttackTreeNode("r", "root", Operator.AND, (shared, shared)))
        assert "not-a-tree" in codes(validate_attack_tree(tree))

    def test_label_rules(self):
        empty = AttackTree(AttackTreeNode("r", "   "))
        assert "empty-label" in codes(validate_attack_tree(empty))
        control = AttackTree(AttackTreeNode("r", "a\tb"))
        assert "label-control-chars" in codes(validate_attack_tree(control))


class TestCimValidation:
    def test_random_models_validate(self):
        rng = random.Random(7)
        for _ in range(50):
            assert validate_cim(random_cim(rng)) == []

    def test_root_must_not_be_numbered(self):
        assert "root-numbered" in codes(validate_cim(cim(step("r", number=1))))

    def test_root_must_not_be_sequenced(self):
        assert "root-sequenced" in codes(validate_cim(cim(step("r", sequenced=True))))

    def test_numbering_must_cover_1_to_n(self):
        root = step("r", refinement=Refinement.AND, children=(step("a", 1), step("b", 3)))
        assert "numbering-not-bijective" in codes(validate_cim(cim(root)))

    def test_missing_number(self):
        root = step("r", refinement=Refinement.AND, children=(step("a"),))
        assert "missing-number" in codes(validate_cim(cim(root)))

    def test_sequencing_requires_and(self):
        root = step(
            "r",
            refinement=Refinement.OR,
            children=(step("a", 1, True), step("b", 2, True)),
        )
        assert "sequenced-under-non-and" in codes(validate_cim(cim(root)))

    def test_siblings_must_agree_on_sequencing(self):
        root = step(
            "r",
            refinement=Refinement.AND,
            children=(step("a", 1, True), step("b", 2, False)),
        )
        assert "mixed-sequencing" in codes(validate_cim(cim(root)))

    def test_bad_direction(self):
        model = CimModel(name="m", root=step("r"), direction="left-to-right")
        assert "bad-direction" in codes(validate_cim(model))

    def test_reference_problems_surface(self):
        bad = ExternalReference(title="x", url="ftp://example.org")
        assert "malformed-url" in codes(validate_cim(cim(step("r"), references=(bad,))))


class TestReferenceValidation:
    def test_ok(self):
        assert validate_reference(REF) == []
        assert validate_reference(ExternalReference(title="bare title")) == []

    def test_empty_title(self):
        assert "empty-reference-title" in codes(validate_reference(ExternalReference(title=" ")))

    def test_control_chars(self):
        ref = ExternalReference(title="a\nb")
        assert "reference-control-chars" in codes(validate_reference(ref))

    def test_doi_shape(self):
        good = ExternalReference(title="t", doi="10.6028/NIST.SP.800-61r2")
        assert validate_reference(good) == []
        bad = ExternalReference(title="t", doi="doi:10.1/x")
        assert "malformed-doi" in codes(validate_reference(bad))

    def test_url_scheme(self):
        for url in ("javascript:alert(1)", "file:///etc/passwd", "https://"):
            ref = ExternalReference(title="t", url=url)
            assert "malformed-url" in codes(validate_reference(ref)), url


class TestDmValidation:
    def test_random_models_validate(self):
        rng = random.Random(11)
        for _ in range(50):
            assert validate_dm(random_dm(rng)) == []

    def test_state_out_of_range(self):
        assert "state-out-of-range" in codes(
            validate_dm(DependencyModel("d", Paragon("p", "p", base_state=1.5)))
        )

    def test_definition_may_hold_newlines_but_not_cr(self):
        ok = DependencyModel("d", Paragon("p", "p", definition="line one\n\tline two"))
        assert validate_dm(ok) == []
        bad = DependencyModel("d", Paragon("p", "p", definition="a\rb"))
        assert "definition-control-chars" in codes(validate_dm(bad))

    def test_empty_name(self):
        assert "empty-paragon-name" in codes(
            validate_dm(DependencyModel("d", Paragon("p", "")))
        )


class TestCombinedValidation:
    def make(self, links):
        model = cim(step("r", refinement=Refinement.AND, children=(step("a", 1),)))
        dm = DependencyModel("d", Paragon("pr", "pr", children=(Paragon("px", "px"),)))
        return CombinedModel(cim=model, dm=dm, links=links)

    def test_ok(self):
        assert validate_combined(self.make((ImpactLink("a", "px", 0.0),))) == []

    def test_dangling_step(self):
        assert "dangling-link" in codes(
            validate_combined(self.make((ImpactLink("zz", "px", 0.0),)))
        )

    def test_dangling_paragon(self):
        assert "dangling-link" in codes(
            validate_combined(self.make((ImpactLink("a", "zz", 0.0),)))
        )

    def test_duplicate_link(self):
        links = (ImpactLink("a", "px", 0.0), ImpactLink("a", "px", 1.0))
        assert "duplicate-link" in codes(validate_combined(self.make(links)))

    def test_target_out_of_range(self):
        assert "state-out-of-range" in codes(
            validate_combined(self.make((ImpactLink("a", "px", 2.0),)))
        )


def test_require_valid_raises_with_all_violations():
    root = step("r", number=3, sequenced=True)
    violations = validate_cim(cim(root))
    assert len(violations) >= 2
    with pytest.raises(ValidationFailedError) as info:
        require_valid(violations)
    assert info.value.violations == violations
    assert "validation failed" in str(info.value)


def test_structural_helpers():
    rng = random.Random(3)
    model = random_cim(rng, max_steps=30)
    parents = step_parents(model)
    assert parents[model.root.id] is None
    for parent in model.steps():
        for child in parent.children:
            assert parents[child.id] is parent
    numbers = number_index(model)
    assert model.root.number is None
    assert sorted(numbers) == list(range(1, len(numbers) + 1))
