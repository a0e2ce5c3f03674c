"""Admissible subsurfaces and the homology classes of the generating loops.

A subtree with ``V`` vertices stands for the union of its vertex pants, the
edge pants of its internal edges and the wrists glued at their midpoints.
Each internal edge carries one wrist, so the genus is ``V - 1``; each
frontier edge yields one boundary circle, so there are ``V + 2 = g + 3``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput
from .homology import HomClass
from .tree import FiniteSubtree, parse_edge, parse_vertex

# coefficients of (b_j, b_k) for a wrist-connecting loop, and of b_k for a
# vertex-connecting loop; only the one-crossing-per-meridian pattern is forced
WRIST_CONNECTING_SIGNS = (1, -1)
VERTEX_CONNECTING_SIGN = 1

# sides of an edge carrying a decomposition circle: the two circles between
# the edge pants and the vertex pants, and the wrist attaching circle
PANTS_SIDES = ("in", "out", "w")


@dataclass(frozen=True)
class SubtreeSurface:
    subtree: FiniteSubtree
    genus: int
    boundary_count: int

    def __post_init__(self):
        if self.genus != self.subtree.internal_count:
            raise InvalidInput("genus must equal the number of internal edges")
        if self.boundary_count != self.genus + 3:
            raise InvalidInput("an admissible subsurface has n = g + 3")


def admissible_from_subtree(t: FiniteSubtree) -> SubtreeSurface:
    g = t.vertex_count - 1
    return SubtreeSurface(t, g, g + 3)


@dataclass(frozen=True)
class LoopSpec:
    """One of the generating loops.

    kind is ``a`` (meridian), ``b`` (longitude), ``wc`` (wrist connecting,
    args ``(j, k)``), ``vc`` (vertex connecting, args ``(k, v)``) or ``pl``
    (horizontal pants loop, args ``(edge, side)``).
    """

    kind: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        kind, args = self.kind, self.args
        if kind in ("a", "b"):
            if len(args) != 1:
                raise InvalidInput(f"{kind}[k] takes one edge")
            parse_edge(args[0])
        elif kind == "wc":
            if len(args) != 2:
                raise InvalidInput("wc[j,k] takes two edges")
            parse_edge(args[0])
            parse_edge(args[1])
            if args[0] == args[1]:
                raise InvalidInput("a wrist-connecting loop needs two distinct wrists")
        elif kind == "vc":
            if len(args) != 2:
                raise InvalidInput("vc[k;v] takes an edge and a vertex")
            parse_edge(args[0])
            parse_vertex(args[1])
        elif kind == "pl":
            if len(args) == 1:
                object.__setattr__(self, "args", (args[0], "in"))
            elif len(args) != 2:
                raise InvalidInput("pl[c] takes one decomposition curve")
            parse_edge(self.args[0])
            if self.args[1] not in PANTS_SIDES:
                raise InvalidInput(f"unknown pants curve side {self.args[1]!r}")
        else:
            raise InvalidInput(f"unknown loop kind {kind!r}")

    def __str__(self):
        if self.kind in ("a", "b"):
            return f"{self.kind}[{self.args[0]}]"
        if self.kind == "wc":
            return f"wc[{self.args[0]},{self.args[1]}]"
        if self.kind == "vc":
            return f"vc[{self.args[0]};{self.args[1]}]"
        edge, side = self.args
        return f"pl[{edge}]" if side == "in" else f"pl[{edge}:{side}]"


def parse_loop(text: str) -> LoopSpec:
    """Parse ``a[k]``, ``b[k]``, ``wc[j,k]``, ``vc[k;v]`` or ``pl[c]``."""
    s = text.strip()
    if "[" not in s or not s.endswith("]"):
        raise InvalidInput(f"malformed loop spec {text!r}")
    kind, body = s[:-1].split("[", 1)
    if kind == "wc":
        args = tuple(x.strip() for x in body.split(","))
    elif kind == "vc":
        args = tuple(x.strip() for x in body.split(";"))
    elif kind == "pl":
        args = tuple(x.strip() for x in body.split(":"))
    else:
        args = (body.strip(),)
    return LoopSpec(kind, args)


def loop_class(s: LoopSpec) -> HomClass:
    """Image of the loop in the non-separating homology."""
    if s.kind == "a":
        return HomClass.a(s.args[0])
    if s.kind == "b":
        return HomClass.b(s.args[0])
    if s.kind == "wc":
        j, k = s.args
        e1, e2 = WRIST_CONNECTING_SIGNS
        return HomClass.b(j) * e1 + HomClass.b(k) * e2
    if s.kind == "vc":
        return HomClass.b(s.args[0]) * VERTEX_CONNECTING_SIGN
    # separating curves lie in the kernel of the intersection form
    return HomClass.zero()


def pants_curves(t: FiniteSubtree) -> list[LoopSpec]:
    """Decomposition curves meeting the subsurface of ``t``."""
    out = []
    for e in sorted(t.internal):
        for side in PANTS_SIDES:
            out.append(LoopSpec("pl", (e, side)))
    for leaf in sorted(t.leaf_set()):
        out.append(LoopSpec("pl", (leaf, "in")))
    return out

