"""Finite subtrees of the planar complete trivalent tree.

Edges are named by addresses rooted at a fixed base vertex v0.  The three
edges at v0 are ``"0"``, ``"1"``, ``"2"`` (counterclockwise).  An edge with
address ``e`` ends at a vertex whose two descendant edges are ``e + "L"``
and ``e + "R"``.  That far vertex is addressed by ``e`` as well; v0 itself
is written ``"*"``.

A finite subtree containing v0 is determined by its set of internal edges,
which is prefix-closed.  Its leaves (frontier edges) are the edges incident
to an included vertex that are not internal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InvalidInput

EdgeAddress = str

BASE_VERTEX = "*"
ROOT_EDGES = ("0", "1", "2")

_EDGE_RE = re.compile(r"[012][LR]*\Z")


def is_edge(s: str) -> bool:
    return isinstance(s, str) and _EDGE_RE.match(s) is not None


def parse_edge(s: str) -> EdgeAddress:
    """Validate an edge address, returning it unchanged."""
    if not is_edge(s):
        raise InvalidInput(f"malformed edge address {s!r}")
    return s


def parse_vertex(s: str) -> str:
    if s == BASE_VERTEX:
        return s
    if not is_edge(s):
        raise InvalidInput(f"malformed vertex address {s!r}")
    return s


def children(vertex: str) -> tuple[EdgeAddress, ...]:
    """Edges leading away from v0 at the given vertex, in planar order."""
    if vertex == BASE_VERTEX:
        return ROOT_EDGES
    return (vertex + "L", vertex + "R")


def parent(edge: EdgeAddress) -> EdgeAddress | None:
    """The edge above ``edge``, or None for the three edges at v0."""
    return edge[:-1] if len(edge) > 1 else None


def ancestors(edge: EdgeAddress) -> Iterator[EdgeAddress]:
    """Proper prefixes of ``edge`` that are edges, shortest first."""
    for i in range(1, len(edge)):
        yield edge[:i]


def relabel_edge(edge: EdgeAddress, shift: int = 1) -> EdgeAddress:
    """Rotate the labels of the three base directions by ``shift``."""
    return str((int(edge[0]) + shift) % 3) + edge[1:]


def edge_key(edge: EdgeAddress) -> tuple[int, str]:
    return (len(edge), edge)


@dataclass(frozen=True)
class FiniteSubtree:
    """A finite subtree containing v0, stored by its internal edges."""

    internal: frozenset

    def __post_init__(self):
        internal = frozenset(self.internal)
        object.__setattr__(self, "internal", internal)
        for e in internal:
            if not is_edge(e):
                raise InvalidInput(f"malformed edge address {e!r}")
            p = parent(e)
            if p is not None and p not in internal:
                raise InvalidInput(f"edge set not prefix-closed at {e!r}")

    @classmethod
    def _trusted(cls, internal: frozenset) -> "FiniteSubtree":
        """Skip validation for edge sets built from an existing subtree."""
        t = object.__new__(cls)
        object.__setattr__(t, "internal", internal)
        return t

    @classmethod
    def base(cls) -> "FiniteSubtree":
        return cls(frozenset())

    @classmethod
    def closure(cls, edges: Iterable[EdgeAddress]) -> "FiniteSubtree":
        """Smallest subtree in which every given edge is internal."""
        out = set()
        for e in edges:
            parse_edge(e)
            out.add(e)
            out.update(ancestors(e))
        return cls(frozenset(out))

    @classmethod
    def from_leaves(cls, leaves: Iterable[EdgeAddress]) -> "FiniteSubtree":
        """Rebuild a subtree from its frontier; rejects non-frontier sets."""
        leaves = list(leaves)
        internal = set()
        for leaf in leaves:
            parse_edge(leaf)
            internal.update(ancestors(leaf))
        t = cls(frozenset(internal))
        if len(set(leaves)) != len(leaves) or set(leaves) != set(t.leaf_set()):
            raise InvalidInput("leaf list is not the frontier of a subtree")
        return t

    @property
    def vertex_count(self) -> int:
        return len(self.internal) + 1

    @property
    def internal_count(self) -> int:
        return len(self.internal)

    def vertices(self) -> list[str]:
        return [BASE_VERTEX] + sorted(self.internal, key=edge_key)

    def wrists(self) -> list[EdgeAddress]:
        """Internal edges in the canonical basis order (lexicographic)."""
        return sorted(self.internal)

    def leaf_set(self) -> set[EdgeAddress]:
        internal = self.internal
        out = {e for e in ROOT_EDGES if e not in internal}
        for v in internal:
            for c in (v + "L", v + "R"):
                if c not in internal:
                    out.add(c)
        return out

    @property
    def frontier_count(self) -> int:
        return self.vertex_count + 2

    def is_leaf(self, edge: EdgeAddress) -> bool:
        p = parent(edge)
        return edge not in self.internal and (p is None or p in self.internal)

    def contains(self, other: "FiniteSubtree") -> bool:
        return other.internal <= self.internal

    def leaf_above(self, edge: EdgeAddress) -> EdgeAddress | None:
        """The leaf that is a prefix of ``edge``; None if ``edge`` is internal."""
        if edge in self.internal:
            return None
        for i in range(1, len(edge) + 1):
            if edge[:i] not in self.internal:
                return edge[:i]
        raise AssertionError("unreachable")

    def relabel(self, shift: int = 1) -> "FiniteSubtree":
        return FiniteSubtree(frozenset(relabel_edge(e, shift) for e in self.internal))

    def __str__(self):
        return "{" + ",".join(self.wrists()) + "}"


def expand_leaf(t: FiniteSubtree, leaf: EdgeAddress) -> FiniteSubtree:
    """Adjoin the vertex beyond a frontier edge."""
    if not is_edge(leaf) or not t.is_leaf(leaf):
        raise InvalidInput(f"{leaf!r} is not a frontier edge of {t}")
    return FiniteSubtree._trusted(t.internal | {leaf})


def common_refinement(t1: FiniteSubtree, t2: FiniteSubtree) -> FiniteSubtree:
    return FiniteSubtree._trusted(t1.internal | t2.internal)


def leaves_cyclic(t: FiniteSubtree) -> tuple[EdgeAddress, ...]:
    # depth first with L before R; the first leaf is the lexicographic minimum
    out: list[EdgeAddress] = []

    def visit(e):
        if e in t.internal:
            visit(e + "L")
            visit(e + "R")
        else:
            out.append(e)

    for e in ROOT_EDGES:
        visit(e)
    return tuple(out)


def enumerate_subtrees(max_vertices: int) -> Iterator[FiniteSubtree]:
    """Every subtree with at most ``max_vertices`` vertices, each exactly once."""
    level = {FiniteSubtree.base()}
    size = 1
    while size <= max_vertices:
        yield from sorted(level, key=lambda t: sorted(t.internal))
        level = {expand_leaf(t, leaf) for t in level for leaf in t.leaf_set()}
        size += 1


def random_subtree(rng, vertex_count: int) -> FiniteSubtree:
    """Grow from v0 by expanding a uniformly chosen frontier edge each step."""
    internal: set = set()
    frontier = list(ROOT_EDGES)
    while len(internal) + 1 < vertex_count:
        leaf = frontier.pop(rng.randrange(len(frontier)))
        internal.add(leaf)
        frontier += [leaf + "L", leaf + "R"]
    return FiniteSubtree._trusted(frozenset(internal))


def subtree_to_dot(t: FiniteSubtree, name: str = "subtree") -> str:
    lines = [f"graph {name} {{", '  node [shape=point];']
    ids = {v: f"v{i}" for i, v in enumerate(t.vertices())}
    for v, i in ids.items():
        label = "v0" if v == BASE_VERTEX else v
        lines.append(f'  {i} [shape=circle, width=0.2, label="", xlabel="{label}"];')
    for e in sorted(t.internal, key=edge_key):
        src = parent(e) or BASE_VERTEX
        lines.append(f'  {ids[src]} -- {ids[e]} [label="{e}"];')
    for k, leaf in enumerate(leaves_cyclic(t)):
        src = parent(leaf) or BASE_VERTEX
        lines.append(f"  leaf{k};")
        lines.append(f'  {ids[src]} -- leaf{k} [style=dashed, label="{leaf}"];')
    lines.append("}")
    return "\n".join(lines)
