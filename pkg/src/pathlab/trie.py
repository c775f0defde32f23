"""In-memory Patricia trie over 40-nibble keys with structural measurement.

Node kinds follow the usual compressed-radix convention: a branch fans
out on one nibble (16 slots plus a value slot), an extension carries a
shared multi-nibble fragment and always points at a branch, and a leaf
holds the unconsumed key remainder. Single-child valueless branches and
extension-to-extension chains are never reachable.

All stored keys are full 40-nibble paths (20-byte addresses), so branch
value slots stay empty; the slot exists only for structural fidelity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .keyspace import ADDRESS_NIBBLES, from_nibbles, to_nibbles


class Leaf:
    __slots__ = ("path", "value")

    def __init__(self, path: bytes, value: bytes):
        self.path = path
        self.value = value

    def __eq__(self, other):
        return (
            type(other) is Leaf
            and self.path == other.path
            and self.value == other.value
        )

    def __repr__(self):
        return f"Leaf({self.path.hex()}, {self.value!r})"


class Extension:
    __slots__ = ("path", "child")

    def __init__(self, path: bytes, child):
        self.path = path
        self.child = child

    def __eq__(self, other):
        return (
            type(other) is Extension
            and self.path == other.path
            and self.child == other.child
        )

    def __repr__(self):
        return f"Extension({self.path.hex()}, {self.child!r})"


class Branch:
    __slots__ = ("children", "value")

    def __init__(self):
        self.children = [None] * 16
        self.value = None

    def __eq__(self, other):
        return (
            type(other) is Branch
            and self.value == other.value
            and self.children == other.children
        )

    def __repr__(self):
        slots = {i: c for i, c in enumerate(self.children) if c is not None}
        return f"Branch({slots!r})"


@dataclass(frozen=True)
class LeafMetrics:
    """Per-key depth measurements.

    divergence_depth: nibbles consumed from the root to the leaf node
        (40 minus the leaf's key remainder); the quantity the analytic
        model describes.
    node_count: nodes on the root-to-leaf path, inclusive of both ends;
        always <= divergence_depth + 1 because extensions compress runs.
    """

    divergence_depth: int
    node_count: int


@dataclass
class LevelCounts:
    """Node-kind census for one nibble depth."""

    branches: int = 0
    extensions: int = 0
    leaves: int = 0

    @property
    def total(self) -> int:
        return self.branches + self.extensions + self.leaves


def _lcp(a: bytes, b: bytes) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


class Trie:
    """Mutable Patricia trie keyed by 20-byte addresses.

    Single-writer; build one trie per trial when parallelising.
    """

    def __init__(self):
        self.root = None
        self.key_count = 0

    def __eq__(self, other):
        return (
            isinstance(other, Trie)
            and self.key_count == other.key_count
            and self.root == other.root
        )

    # -- mutation ---------------------------------------------------------

    def insert(self, key: bytes, value: bytes = b"") -> None:
        path = to_nibbles(key)
        self.root, added = self._insert(self.root, path, value)
        if added:
            self.key_count += 1

    def _insert(self, node, path: bytes, value: bytes):
        if node is None:
            return Leaf(path, value), True
        kind = type(node)
        if kind is Leaf:
            c = _lcp(node.path, path)
            if c == len(path) and c == len(node.path):
                node.value = value
                return node, False
            branch = Branch()
            branch.children[node.path[c]] = Leaf(node.path[c + 1 :], node.value)
            branch.children[path[c]] = Leaf(path[c + 1 :], value)
            if c:
                return Extension(path[:c], branch), True
            return branch, True
        if kind is Extension:
            c = _lcp(node.path, path)
            if c == len(node.path):
                node.child, added = self._insert(node.child, path[c:], value)
                return node, added
            branch = Branch()
            rest = node.path[c + 1 :]
            branch.children[node.path[c]] = (
                Extension(rest, node.child) if rest else node.child
            )
            branch.children[path[c]] = Leaf(path[c + 1 :], value)
            if c:
                return Extension(path[:c], branch), True
            return branch, True
        # Branch; equal-length keys guarantee path is non-empty here.
        slot = path[0]
        node.children[slot], added = self._insert(node.children[slot], path[1:], value)
        return node, added

    def delete(self, key: bytes) -> bool:
        """Remove ``key``; returns False (trie unchanged) when absent."""
        path = to_nibbles(key)
        new_root, found = self._delete(self.root, path)
        if found:
            self.root = new_root
            self.key_count -= 1
        return found

    def _delete(self, node, path: bytes):
        if node is None:
            return None, False
        kind = type(node)
        if kind is Leaf:
            if node.path == path:
                return None, True
            return node, False
        if kind is Extension:
            n = len(node.path)
            if path[:n] != node.path:
                return node, False
            child, found = self._delete(node.child, path[n:])
            if not found:
                return node, False
            return self._attach_extension(node.path, child), True
        slot = path[0]
        child, found = self._delete(node.children[slot], path[1:])
        if not found:
            return node, False
        node.children[slot] = child
        return self._collapse_branch(node), True

    @staticmethod
    def _attach_extension(prefix: bytes, child):
        # Re-glue an extension fragment onto the (possibly collapsed) child.
        if child is None:
            return None
        kind = type(child)
        if kind is Leaf:
            return Leaf(prefix + child.path, child.value)
        if kind is Extension:
            return Extension(prefix + child.path, child.child)
        return Extension(prefix, child)

    @classmethod
    def _collapse_branch(cls, branch):
        live = [(i, c) for i, c in enumerate(branch.children) if c is not None]
        if len(live) >= 2 or branch.value is not None:
            return branch
        if not live:
            return None
        slot, child = live[0]
        return cls._attach_extension(bytes([slot]), child)

    # -- queries ----------------------------------------------------------

    def lookup(self, key: bytes):
        """Return the stored value for ``key``, or None when absent."""
        node = self.root
        path = to_nibbles(key)
        while node is not None:
            kind = type(node)
            if kind is Leaf:
                return node.value if node.path == path else None
            if kind is Extension:
                n = len(node.path)
                if path[:n] != node.path:
                    return None
                path = path[n:]
                node = node.child
                continue
            node = node.children[path[0]]
            path = path[1:]
        return None

    def leaf_metrics(self) -> dict:
        """Map each stored address to its :class:`LeafMetrics`."""
        out = {}
        if self.root is None:
            return out
        stack = [(self.root, b"", 0)]
        while stack:
            node, prefix, nodes = stack.pop()
            kind = type(node)
            if kind is Leaf:
                consumed = ADDRESS_NIBBLES - len(node.path)
                address = from_nibbles(prefix + node.path)
                out[address] = LeafMetrics(consumed, nodes + 1)
            elif kind is Extension:
                stack.append((node.child, prefix + node.path, nodes + 1))
            else:
                for i, child in enumerate(node.children):
                    if child is not None:
                        stack.append((child, prefix + bytes([i]), nodes + 1))
        return out

    def level_census(self) -> dict:
        """Per nibble-depth counts of node kinds.

        Depth of a node is the number of nibbles consumed on the path
        before reaching it (the root sits at depth 0).
        """
        census: dict[int, LevelCounts] = {}
        if self.root is None:
            return census
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            level = census.setdefault(depth, LevelCounts())
            kind = type(node)
            if kind is Leaf:
                level.leaves += 1
            elif kind is Extension:
                level.extensions += 1
                stack.append((node.child, depth + len(node.path)))
            else:
                level.branches += 1
                for child in node.children:
                    if child is not None:
                        stack.append((child, depth + 1))
        return census


def check_invariants(trie: Trie) -> None:
    """Assert every structural invariant; used after mutations in tests."""
    leaves = 0
    stack = [(trie.root, 0)] if trie.root is not None else []
    while stack:
        node, consumed = stack.pop()
        kind = type(node)
        if kind is Leaf:
            leaves += 1
            assert consumed + len(node.path) == ADDRESS_NIBBLES, "key length != 40"
        elif kind is Extension:
            assert len(node.path) >= 1, "empty extension fragment"
            assert type(node.child) is Branch, "extension child must be a branch"
            stack.append((node.child, consumed + len(node.path)))
        elif kind is Branch:
            assert node.value is None, "branch value slot must stay empty"
            live = [c for c in node.children if c is not None]
            assert len(live) >= 2, "degenerate single-child branch"
            for i, child in enumerate(node.children):
                if child is not None:
                    stack.append((child, consumed + 1))
        else:
            raise AssertionError(f"unknown node type {kind}")
    assert leaves == trie.key_count, "key_count out of sync with leaves"
