"""Penn Treebank bracketed parses, Collins head finding, and document tree queries.

A document is a sequence of per-sentence constituency trees joined into one
right-branching tree so that path distance is defined across sentence
boundaries.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

#: Label of the synthetic nodes that join sentence trees.
DOCLINK = "DOCLINK"

#: Clause categories used for subject/object detection downstream.
CLAUSE_LABELS = frozenset({"S", "SINV", "SQ"})

#: Parser-variant nominal labels treated as NP during head finding.
_NP_ALIASES = frozenset({"NP", "NML", "NX"})


class PtbParseError(ValueError):
    """Malformed bracketed input; ``offset`` is the UTF-8 byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class SyntaxNode:
    """One constituency tree node.

    Leaves carry a ``token`` and have no children; interior nodes have one or
    more children and no token. ``span`` is a half-open token interval within
    the node's sentence.
    """

    __slots__ = ("label", "token", "children", "parent", "sentence_index",
                 "span", "node_id", "depth", "doc", "_pre", "_post")

    def __init__(self, label: str, token: Optional[str] = None,
                 children: Sequence["SyntaxNode"] = ()):
        self.label = label
        self.token = token
        self.children: list[SyntaxNode] = list(children)
        self.parent: Optional[SyntaxNode] = None
        self.sentence_index = -1
        self.span = (0, 0)
        self.node_id = -1
        self.depth = 0
        self.doc: Optional[DocumentTree] = None
        self._pre = -1
        self._post = -1

    def is_leaf(self) -> bool:
        return not self.children

    def walk(self) -> Iterator["SyntaxNode"]:
        """Preorder traversal of the subtree rooted here (iterative)."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> Iterator["SyntaxNode"]:
        for node in self.walk():
            if node.is_leaf():
                yield node

    def tokens(self) -> list[str]:
        return [leaf.token for leaf in self.leaves()]

    def __repr__(self) -> str:
        if self.is_leaf():
            return f"<{self.label} {self.token!r} s{self.sentence_index}:{self.span[0]}>"
        return (f"<{self.label} s{self.sentence_index}:"
                f"{self.span[0]}-{self.span[1]}>")


class DocumentTree:
    """Sentence trees joined under right-branching DOCLINK nodes.

    Immutable after construction; with k sentences there are max(k-1, 0)
    link nodes. An empty document has ``root is None``.
    """

    def __init__(self, sentence_roots: Sequence[SyntaxNode],
                 link_nodes: Sequence[SyntaxNode],
                 root: Optional[SyntaxNode]):
        self.sentence_roots = tuple(sentence_roots)
        self.link_nodes = tuple(link_nodes)
        self.root = root
        self.nodes: list[SyntaxNode] = []
        if root is not None:
            for i, node in enumerate(root.walk()):
                node.node_id = i
                node.doc = self
                self.nodes.append(node)
            self._index()

    def _index(self) -> None:
        # Depth and preorder intervals drive dominance and path queries.
        order = 0
        stack: list[tuple[SyntaxNode, bool]] = [(self.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                node._post = order
                continue
            node.depth = 0 if node.parent is None else node.parent.depth + 1
            node._pre = order
            order += 1
            stack.append((node, True))
            for child in reversed(node.children):
                stack.append((child, False))

    def contains(self, node: SyntaxNode) -> bool:
        i = node.node_id
        return 0 <= i < len(self.nodes) and self.nodes[i] is node

    def __len__(self) -> int:
        return len(self.nodes)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def read_ptb(text: str) -> list[SyntaxNode]:
    """Parse bracketed trees, one sentence per top-level expression.

    Labels and leaf tokens are preserved verbatim; spans are assigned by
    left-to-right leaf order within each sentence. Raises PtbParseError on
    unbalanced parentheses, an empty label, a node with no content, or
    empty input, naming the byte offset of the problem.
    """
    trees: list[SyntaxNode] = []
    stack: list[SyntaxNode] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "(":
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            k = j
            while k < n and text[k] not in "()" and not text[k].isspace():
                k += 1
            label = text[j:k]
            if not label:
                raise PtbParseError("empty node label", _byte_offset(text, i))
            stack.append(SyntaxNode(label))
            i = k
        elif c == ")":
            if not stack:
                raise PtbParseError("unbalanced ')'", _byte_offset(text, i))
            node = stack.pop()
            if node.token is None and not node.children:
                raise PtbParseError(f"node ({node.label} has neither token nor children",
                                    _byte_offset(text, i))
            if stack:
                parent = stack[-1]
                if parent.token is not None:
                    raise PtbParseError("mixed token and children under one node",
                                        _byte_offset(text, i))
                node.parent = parent
                parent.children.append(node)
            else:
                trees.append(node)
            i += 1
        else:
            k = i
            while k < n and text[k] not in "()" and not text[k].isspace():
                k += 1
            if not stack:
                raise PtbParseError(f"unexpected token {text[i:k]!r} outside brackets",
                                    _byte_offset(text, i))
            node = stack[-1]
            if node.children:
                raise PtbParseError("mixed token and children under one node",
                                    _byte_offset(text, i))
            if node.token is not None:
                raise PtbParseError("multiple tokens under one node",
                                    _byte_offset(text, i))
            node.token = text[i:k]
            i = k
    if stack:
        raise PtbParseError("unbalanced '(' at end of input", _byte_offset(text, n))
    if not trees:
        raise PtbParseError("empty input", 0)
    for tree in trees:
        _assign_spans(tree)
    return trees


def _assign_spans(root: SyntaxNode) -> None:
    # Postorder, iterative: leaves get consecutive indices, parents the hull.
    counter = 0
    stack: list[tuple[SyntaxNode, bool]] = [(root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            node.span = (node.children[0].span[0], node.children[-1].span[1])
            continue
        node.depth = 0 if node.parent is None else node.parent.depth + 1
        if node.is_leaf():
            node.span = (counter, counter + 1)
            counter += 1
        else:
            stack.append((node, True))
            for child in reversed(node.children):
                child.parent = node
                stack.append((child, False))


def to_ptb(node: SyntaxNode) -> str:
    """Serialize to the single-space-separated canonical bracketed form."""
    parts: list[str] = []
    stack: list[tuple[SyntaxNode, bool]] = [(node, False)]
    while stack:
        current, done = stack.pop()
        if done:
            parts.append(")")
            continue
        if current.is_leaf():
            parts.append(f"({current.label} {current.token})")
            continue
        parts.append(f"({current.label}")
        stack.append((current, True))
        for child in reversed(current.children):
            stack.append((child, False))
    out: list[str] = []
    for part in parts:
        if out and part != ")":
            out.append(" ")
        out.append(part)
    return "".join(out)


# ---------------------------------------------------------------------------
# Collins head rules
#
# Priority lists from the standard head-percolation table; "left" scans the
# priority list against children left-to-right, "right" right-to-left. NP has
# its own rule below. Categories not listed fall back to the rightmost child.
# ---------------------------------------------------------------------------

_HEAD_RULES: dict[str, tuple[str, tuple[str, ...]]] = {
    "S": ("left", ("TO", "IN", "VP", "S", "SBAR", "ADJP", "UCP", "NP")),
    "SBAR": ("left", ("WHNP", "WHPP", "WHADVP", "WHADJP", "IN", "DT", "S",
                      "SQ", "SINV", "SBAR", "FRAG")),
    "VP": ("left", ("TO", "VBD", "VBN", "MD", "VBZ", "VB", "VBG", "VBP",
                    "AUX", "AUXG", "VP", "ADJP", "NN", "NNS", "NP")),
    "PP": ("right", ("IN", "TO", "VBG", "VBN", "RP", "FW")),
    "ADJP": ("left", ("NNS", "QP", "NN", "$", "ADVP", "JJ", "VBN", "VBG",
                      "ADJP", "JJR", "NP", "JJS", "DT", "FW", "RBR", "RBS",
                      "SBAR", "RB")),
    "ADVP": ("right", ("RB", "RBR", "RBS", "FW", "ADVP", "TO", "CD", "JJR",
                       "JJ", "IN", "NP", "JJS", "NN")),
    "QP": ("left", ("$", "IN", "NNS", "NN", "JJ", "RB", "DT", "CD", "NCD",
                    "QP", "JJR", "JJS")),
}

_NP_NOMINAL_TAGS = frozenset({"NN", "NNP", "NNPS", "NNS", "NX", "NML", "POS", "JJR"})


def _matches(child_label: str, tag: str) -> bool:
    if tag == "NP":
        return child_label in _NP_ALIASES
    return child_label == tag


def _np_head_index(labels: Sequence[str]) -> int:
    last = len(labels) - 1
    if labels[last] == "POS":
        return last
    for i in range(last, -1, -1):
        if labels[i] in _NP_NOMINAL_TAGS:
            return i
    for i, lab in enumerate(labels):
        if lab in _NP_ALIASES:
            return i
    for i in range(last, -1, -1):
        if labels[i] in ("$", "ADJP", "PRN"):
            return i
    for i in range(last, -1, -1):
        if labels[i] == "CD":
            return i
    for i in range(last, -1, -1):
        if labels[i] in ("JJ", "JJS", "RB", "QP"):
            return i
    return last


def collins_head_child(node: SyntaxNode) -> int:
    """Index of the head child per the Collins head-percolation rules.

    NML/NX parents use the NP rule; categories outside the table default to
    the rightmost child. Raises ValueError on a node without children.
    """
    if node.is_leaf():
        raise ValueError(f"leaf node {node!r} has no head child")
    labels = [child.label for child in node.children]
    category = "NP" if node.label in _NP_ALIASES else node.label
    if category == "NP":
        return _np_head_index(labels)
    rule = _HEAD_RULES.get(category)
    if rule is None:
        return len(labels) - 1
    direction, priority = rule
    positions = range(len(labels)) if direction == "left" else range(len(labels) - 1, -1, -1)
    for tag in priority:
        for i in positions:
            if _matches(labels[i], tag):
                return i
    return len(labels) - 1


def head_leaf(node: SyntaxNode) -> SyntaxNode:
    """Follow head children down to a leaf; a leaf is its own head."""
    while not node.is_leaf():
        node = node.children[collins_head_child(node)]
    return node


def dominates(a: SyntaxNode, b: SyntaxNode) -> bool:
    """True iff ``b`` lies in ``a``'s subtree; a node dominates itself.

    Raises ValueError for nodes from different documents.
    """
    if a.doc is not None and a.doc is b.doc:
        return a._pre <= b._pre < a._post
    node: Optional[SyntaxNode] = b
    while node is not None:
        if node is a:
            return True
        node = node.parent
    root_a = a
    while root_a.parent is not None:
        root_a = root_a.parent
    root_b = b
    while root_b.parent is not None:
        root_b = root_b.parent
    if root_a is not root_b:
        raise ValueError("nodes belong to different documents")
    return False


def link_document(trees: Sequence[SyntaxNode]) -> DocumentTree:
    """Join sentence trees into one right-branching document tree.

    link(S1, link(S2, ... Sk)): each DOCLINK node has a sentence as its left
    child and the linked remainder as its right child.
    """
    trees = list(trees)
    for idx, tree in enumerate(trees):
        for node in tree.walk():
            node.sentence_index = idx
    if not trees:
        return DocumentTree([], [], None)
    if len(trees) == 1:
        return DocumentTree(trees, [], trees[0])
    links: list[SyntaxNode] = []
    spine = trees[-1]
    for tree in reversed(trees[:-1]):
        link = SyntaxNode(DOCLINK, children=[tree, spine])
        tree.parent = link
        spine.parent = link
        links.append(link)
        spine = link
    links.reverse()  # top-down order
    return DocumentTree(trees, links, spine)


def path_distance(a: SyntaxNode, b: SyntaxNode, doc: DocumentTree) -> int:
    """Number of edges on the tree path between two nodes of one document.

    DOCLINK edges count like ordinary edges. Raises ValueError when a node
    is not part of ``doc``.
    """
    for name, node in (("first", a), ("second", b)):
        if not doc.contains(node):
            raise ValueError(f"{name} node {node!r} is not in this document")
    x, y = a, b
    while x.depth > y.depth:
        x = x.parent
    while y.depth > x.depth:
        y = y.parent
    while x is not y:
        x = x.parent
        y = y.parent
    return (a.depth - x.depth) + (b.depth - x.depth)
