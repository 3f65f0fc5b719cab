"""Tab-indented attack tree text: parsing, serialization, error cases."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from secmodel import Operator, parse_sand, serialize_sand
from secmodel.errors import (
    DuplicateRootError,
    EmptyDocumentError,
    IndentJumpError,
    InvalidEncodingError,
    InvalidTreeError,
    MixedIndentationError,
    ParseError,
)

from gen import random_tree, tree_st

BECOME_ROOT = (
    "Become Root ;OR\n"
    "\tNo-Auth ;SAND\n"
    "\t\tGain user privileges ;SAND\n"
    "\t\t\tFTP\n"
    "\t\t\tRSH\n"
    "\t\tlocal buffer overflow\n"
    "\tAuth ;AND\n"
    "\t\tssh\n"
    "\t\tRSA key\n"
)


def test_parse_structure():
    tree = parse_sand(BECOME_ROOT)
    root = tree.root
    assert root.label == "Become Root"
    assert root.operator is Operator.OR
    assert [c.label for c in root.children] == ["No-Auth", "Auth"]
    no_auth = root.children[0]
    assert no_auth.operator is Operator.SAND
    assert [c.label for c in no_auth.children[0].children] == ["FTP", "RSH"]
    assert no_auth.children[1].operator is Operator.LEAF


def test_ids_are_preorder():
    tree = parse_sand(BECOME_ROOT)
    assert [n.id for n in tree.nodes()] == [f"n{i}" for i in range(1, 10)]


def test_internal_node_without_token_defaults_to_or():
    tree = parse_sand("root\n\tchild\n")
    assert tree.root.operator is Operator.OR
    assert tree.root.children[0].operator is Operator.LEAF


def test_blank_lines_and_crlf_are_tolerated():
    text = "root ;AND\r\n\n\tleft\r\n\tright\n\n"
    tree = parse_sand(text)
    assert [c.label for c in tree.root.children] == ["left", "right"]


def test_bytes_input():
    tree = parse_sand(BECOME_ROOT.encode("utf-8"))
    assert tree.root.label == "Become Root"


def test_serialize_is_canonical():
    assert serialize_sand(parse_sand(BECOME_ROOT)) == BECOME_ROOT.encode("utf-8")


def test_canonical_form_tokens_on_every_internal_node():
    # 'root\n\tchild' parses with an implicit OR; the canonical form spells it
    out = serialize_sand(parse_sand("root\n\tchild\n")).decode()
    assert out == "root ;OR\n\tchild\n"


class TestParseErrors:
    def test_empty_document(self):
        with pytest.raises(EmptyDocumentError):
            parse_sand("")
        with pytest.raises(EmptyDocumentError):
            parse_sand("\n\n  \n")

    def test_spaces_in_indentation(self):
        with pytest.raises(MixedIndentationError):
            parse_sand("root\n\t  child\n")
        with pytest.raises(MixedIndentationError):
            parse_sand("root\n    child\n")

    def test_indent_jump(self):
        with pytest.raises(IndentJumpError):
            parse_sand("root\n\t\tchild\n")

    def test_document_starting_indented(self):
        with pytest.raises(IndentJumpError):
            parse_sand("\troot\n")

    def test_second_root(self):
        with pytest.raises(DuplicateRootError):
            parse_sand("a\nb\n")

    def test_invalid_utf8(self):
        with pytest.raises(InvalidEncodingError):
            parse_sand(b"\xff\xfe nope")

    def test_empty_label(self):
        with pytest.raises(ParseError):
            parse_sand("root\n\t ;AND\n")


class TestSerializeErrors:
    def test_leaf_with_children_rejected(self):
        from secmodel import AttackTree, AttackTreeNode

        bad = AttackTree(
            AttackTreeNode("r", "r", Operator.LEAF, (AttackTreeNode("c", "c"),))
        )
        with pytest.raises(InvalidTreeError):
            serialize_sand(bad)

    @pytest.mark.parametrize(
        "label",
        ["", "  lead", "line\nbreak", "tail ;OR", "tail ;SAND", "tab\there"],
    )
    def test_unserializable_labels(self, label):
        from secmodel import AttackTree, AttackTreeNode

        with pytest.raises(InvalidTreeError):
            serialize_sand(AttackTree(AttackTreeNode("r", label)))


def test_roundtrip_seeded_sweep():
    rng = random.Random(20240817)
    for _ in range(300):
        tree = random_tree(rng)
        assert parse_sand(serialize_sand(tree)) == tree


@settings(max_examples=200, deadline=None)
@given(tree_st)
def test_roundtrip_property(tree):
    assert parse_sand(serialize_sand(tree)) == tree
