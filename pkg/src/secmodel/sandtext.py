"""Plain-text attack trees: a tab-indented outline, one node per line.

Grammar::

    line     = {TAB} label [" ;" operator]
    operator = "OR" | "AND" | "SAND"

* The number of leading tabs is the node's depth; a line at depth d+1 is a
  child of the nearest preceding line at depth d. The first line is the
  root and must sit at depth 0; a second depth-0 line is an error.
* Indentation is tabs only. A space directly after the tab run is treated
  as indentation and rejected.
* A line with children and no operator token defaults to OR; a line with
  no children and no token is a LEAF. The token is honoured even on a
  childless line (validation flags the empty refinement later).
* Blank lines are skipped; a lone "\\r" before the newline is tolerated.

Canonical form, as produced by :func:`serialize_sand`: every non-LEAF node
carries its token (including " ;OR"), lines are joined with "\\n" and the
text ends with a newline. parse followed by serialize is the identity on
canonical text, and serialize followed by parse is the identity on trees
whose ids are the parser's pre-order ids (n1, n2, ...).

Labels the grammar cannot carry make serialize raise InvalidTreeError:
empty labels, labels starting with a space or tab, labels containing
control characters, and labels ending in something that would be re-read
as an operator token.
"""

from __future__ import annotations

import itertools
import re

from .errors import (
    DuplicateRootError,
    EmptyDocumentError,
    IndentJumpError,
    InvalidEncodingError,
    InvalidTreeError,
    MixedIndentationError,
    ParseError,
)
from .model import AttackTree, AttackTreeNode, Operator

_SUFFIXES = (
    (" ;OR", Operator.OR),
    (" ;AND", Operator.AND),
    (" ;SAND", Operator.SAND),
)

# Labels that would be re-parsed as carrying an operator token.
_TOKEN_TAIL = re.compile(r" ;(OR|AND|SAND)$")


def parse_sand(text: bytes | str) -> AttackTree:
    """Parse tab-indented text into an attack tree.

    Node ids are assigned in pre-order (n1, n2, ...), which coincides with
    line order.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidEncodingError(f"input is not valid UTF-8: {exc}") from exc

    records: list[tuple[int, int, str, Operator | None]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        if not line.strip():
            continue
        depth = len(line) - len(line.lstrip("\t"))
        rest = line[depth:]
        if not rest:
            raise ParseError(f"line {lineno}: empty label")
        if rest[0] == " ":
            raise MixedIndentationError(f"line {lineno}: space used in indentation")
        label, op = rest, None
        for suffix, operator in _SUFFIXES:
            if rest.endswith(suffix):
                label, op = rest[: -len(suffix)], operator
                break
        if not label:
            raise ParseError(f"line {lineno}: empty label")
        records.append((lineno, depth, label, op))

    if not records:
        raise EmptyDocumentError("document contains no nodes")

    # rec = [label, op, children]; build mutable, freeze afterwards.
    root_rec: list | None = None
    stack: list[list] = []
    for lineno, depth, label, op in records:
        rec: list = [label, op, []]
        if depth == 0:
            if root_rec is not None:
                raise DuplicateRootError(f"line {lineno}: second root {label!r}")
            root_rec = rec
            stack = [rec]
            continue
        if root_rec is None:
            raise IndentJumpError(f"line {lineno}: document starts at depth {depth}")
        if depth > len(stack):
            raise IndentJumpError(
                f"line {lineno}: depth jumps from {len(stack) - 1} to {depth}"
            )
        del stack[depth:]
        stack[-1][2].append(rec)
        stack.append(rec)

    counter = itertools.count(1)

    def freeze(rec: list) -> AttackTreeNode:
        label, op, children = rec
        node_id = f"n{next(counter)}"
        if op is None:
            op = Operator.OR if children else Operator.LEAF
        return AttackTreeNode(
            id=node_id,
            label=label,
            operator=op,
            children=tuple(freeze(child) for child in children),
        )

    assert root_rec is not None
    return AttackTree(root=freeze(root_rec))


def _check_label(node: AttackTreeNode) -> None:
    label = node.label
    if not label:
        raise InvalidTreeError(f"node {node.id!r}: empty label cannot be serialized")
    if label[0] in (" ", "\t"):
        raise InvalidTreeError(f"node {node.id!r}: label starts with whitespace")
    if "\n" in label or "\r" in label:
        raise InvalidTreeError(f"node {node.id!r}: label contains a line break")
    if any(ord(ch) < 32 for ch in label):
        raise InvalidTreeError(f"node {node.id!r}: label contains control characters")
    if _TOKEN_TAIL.search(label):
        raise InvalidTreeError(f"node {node.id!r}: label ends with an operator token")


def serialize_sand(tree: AttackTree) -> bytes:
    """Emit canonical tab-indented text (UTF-8, trailing newline)."""
    out: list[str] = []

    def emit(node: AttackTreeNode, depth: int) -> None:
        _check_label(node)
        indent = "\t" * depth
        if node.operator is Operator.LEAF:
            if node.children:
                raise InvalidTreeError(f"LEAF node {node.id!r} has children")
            out.append(indent + node.label)
            return
        out.append(f"{indent}{node.label} ;{node.operator.value}")
        for child in node.children:
            emit(child, depth + 1)

    emit(tree.root, 0)
    return ("\n".join(out) + "\n").encode("utf-8")
