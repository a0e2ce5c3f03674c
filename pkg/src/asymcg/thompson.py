"""Thompson's groups V and T as planar partial automorphisms of the tree.

An element is a tree pair: a domain subtree, a range subtree with the same
number of leaves, and a bijection between their leaves.  Outside the domain
the element acts rigidly, sending the edge ``leaf + w`` to ``image + w`` for
every word ``w`` in ``{L, R}``.

Products follow function composition: ``compose(g, h)`` applies ``h`` first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InvalidInput
from .tree import (
    EdgeAddress,
    FiniteSubtree,
    common_refinement,
    edge_key,
    is_edge,
    leaves_cyclic,
    parent,
    random_subtree,
    relabel_edge,
)


@dataclass(frozen=True)
class TreePair:
    domain: FiniteSubtree
    range: FiniteSubtree
    # image of each domain leaf, listed in the cyclic order of the domain leaves
    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        dl = leaves_cyclic(self.domain)
        if len(dl) != len(images):
            raise InvalidInput("domain and range have different leaf counts")
        if sorted(images) != sorted(leaves_cyclic(self.range)):
            raise InvalidInput("images are not the leaves of the range tree")

    @classmethod
    def from_mapping(cls, mapping: Mapping[EdgeAddress, EdgeAddress]) -> "TreePair":
        domain = FiniteSubtree.from_leaves(mapping.keys())
        range_ = FiniteSubtree.from_leaves(mapping.values())
        return cls(domain, range_, tuple(mapping[l] for l in leaves_cyclic(domain)))

    @classmethod
    def identity(cls) -> "TreePair":
        t = FiniteSubtree.base()
        return cls(t, t, leaves_cyclic(t))

    @property
    def mapping(self) -> dict[EdgeAddress, EdgeAddress]:
        return dict(zip(leaves_cyclic(self.domain), self.images))

    def is_reduced(self) -> bool:
        return _find_caret(self.mapping) is None

    def __str__(self):
        return serialize(self)


def _find_caret(mapping: Mapping[EdgeAddress, EdgeAddress]) -> EdgeAddress | None:
    for leaf, image in mapping.items():
        if leaf[-1] != "L" or image[-1] != "L" or len(image) < 2:
            continue
        sib = leaf[:-1] + "R"
        if mapping.get(sib) == image[:-1] + "R":
            return leaf[:-1]
    return None


def reduce(e: TreePair) -> TreePair:
    """Collapse carets until none is left; the result is canonical."""
    mapping = e.mapping
    while True:
        top = _find_caret(mapping)
        if top is None:
            break
        image = mapping.pop(top + "L")[:-1]
        del mapping[top + "R"]
        mapping[top] = image
    return TreePair.from_mapping(mapping)


def expand(e: TreePair, leaf: EdgeAddress) -> TreePair:
    """Same element, with the domain grown beyond ``leaf``."""
    mapping = e.mapping
    if leaf not in mapping:
        raise InvalidInput(f"{leaf!r} is not a domain leaf")
    image = mapping.pop(leaf)
    mapping[leaf + "L"] = image + "L"
    mapping[leaf + "R"] = image + "R"
    return TreePair.from_mapping(mapping)


def expand_to(e: TreePair, domain: FiniteSubtree) -> TreePair:
    """Same element, with domain exactly ``domain`` (which must contain it)."""
    if not domain.contains(e.domain):
        raise InvalidInput("target domain does not contain the current one")
    mapping = e.mapping
    for edge in sorted(domain.internal - e.domain.internal, key=edge_key):
        image = mapping.pop(edge)
        mapping[edge + "L"] = image + "L"
        mapping[edge + "R"] = image + "R"
    return TreePair.from_mapping(mapping)


def invert(g: TreePair) -> TreePair:
    return TreePair.from_mapping({v: k for k, v in g.mapping.items()})


def compose(g: TreePair, h: TreePair) -> TreePair:
    """The product g∘h (h acts first), reduced."""
    middle = common_refinement(h.range, g.domain)
    g1 = expand_to(g, middle).mapping
    h1 = invert(expand_to(invert(h), middle)).mapping
    return reduce(TreePair.from_mapping({k: g1[v] for k, v in h1.items()}))


def is_identity(g: TreePair) -> bool:
    return reduce(g) == TreePair.identity()


def power(g: TreePair, k: int) -> TreePair:
    if k < 0:
        g, k = invert(g), -k
    out = TreePair.identity()
    base = g
    while k:
        if k & 1:
            out = compose(out, base)
        base = compose(base, base)
        k >>= 1
    return reduce(out)


def order(g: TreePair, bound: int) -> int | None:
    """Order of ``g`` if it is at most ``bound``, else None."""
    acc = reduce(g)
    for k in range(1, bound + 1):
        if is_identity(acc):
            return k
        acc = compose(g, acc)
    return None


def _is_rotation(seq: tuple, target: tuple) -> bool:
    if len(seq) != len(target):
        return False
    if not seq:
        return True
    try:
        k = target.index(seq[0])
    except ValueError:
        return False
    return target[k:] + target[:k] == seq


def is_circular(g: TreePair) -> bool:
    return _is_rotation(g.images, leaves_cyclic(g.range))


def edge_action(g: TreePair, e: EdgeAddress) -> EdgeAddress:
    """Image of an edge lying outside the domain tree."""
    if not is_edge(e):
        raise InvalidInput(f"malformed edge address {e!r}")
    leaf = g.domain.leaf_above(e)
    if leaf is None:
        raise InvalidInput(f"edge {e!r} lies inside the domain tree; no rigid image")
    return g.mapping[leaf] + e[len(leaf):]


def relabel(g: TreePair, shift: int = 1) -> TreePair:
    return TreePair.from_mapping(
        {relabel_edge(k, shift): relabel_edge(v, shift) for k, v in g.mapping.items()})


# Images in V of the named generators.  The central edge of the surface A is
# edge "1", so alpha rotates the four branches of the subtree {v0, v1}.

BETA_V = TreePair.from_mapping({"0": "1", "1": "2", "2": "0"})
PI_V = TreePair.from_mapping({"0": "1", "1": "0", "2": "2"})
ALPHA_V = TreePair.from_mapping({"0": "1L", "1L": "1R", "1R": "2", "2": "0"})

_V_IMAGES = {"alpha": ALPHA_V, "beta": BETA_V, "pi": PI_V}


def generator_v_image(name: str) -> TreePair:
    """V-image of a generator name; every Dehn twist maps to the identity."""
    return _V_IMAGES.get(name, TreePair.identity())


def project(terms: Iterable) -> TreePair:
    """V-image of a word given as terms with ``name`` and ``exponent``."""
    out = TreePair.identity()
    for term in terms:
        out = compose(out, power(generator_v_image(term.name), term.exponent))
    return out


def random_tree_pair(rng, max_vertices: int) -> TreePair:
    n = rng.randint(1, max_vertices)
    domain = random_subtree(rng, n)
    range_ = random_subtree(rng, n)
    images = list(leaves_cyclic(range_))
    rng.shuffle(images)
    return reduce(TreePair(domain, range_, images))


def serialize(g: TreePair) -> str:
    """``(domain leaves | range leaves | permutation)`` with 0-based indices."""
    dl = leaves_cyclic(g.domain)
    rl = leaves_cyclic(g.range)
    perm = [rl.index(x) for x in g.images]
    return "({} | {} | {})".format(" ".join(dl), " ".join(rl), " ".join(map(str, perm)))


def deserialize(text: str) -> TreePair:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise InvalidInput(f"tree pair must be parenthesized: {text!r}")
    parts = s[1:-1].split("|")
    if len(parts) != 3:
        raise InvalidInput(f"expected three '|'-separated fields: {text!r}")
    dl, rl, perm = (p.split() for p in parts)
    try:
        idx = [int(p) for p in perm]
    except ValueError:
        raise InvalidInput(f"bad permutation in {text!r}") from None
    if sorted(idx) != list(range(len(rl))) or len(dl) != len(rl):
        raise InvalidInput(f"bad permutation in {text!r}")
    domain = FiniteSubtree.from_leaves(dl)
    range_ = FiniteSubtree.from_leaves(rl)
    if tuple(dl) != leaves_cyclic(domain) or tuple(rl) != leaves_cyclic(range_):
        raise InvalidInput("leaves must be listed in canonical cyclic order")
    return TreePair(domain, range_, tuple(rl[i] for i in idx))


def pair_to_dot(g: TreePair, name: str = "treepair") -> str:
    """Both trees side by side; leaf labels carry the matching numbers."""
    lines = [f"graph {name} {{", "  node [shape=point];"]
    rl = leaves_cyclic(g.range)
    labels = {"domain": {l: str(rl.index(im)) for l, im in g.mapping.items()},
              "range": {l: str(i) for i, l in enumerate(rl)}}
    for side, t in (("domain", g.domain), ("range", g.range)):
        lines.append(f"  subgraph cluster_{side} {{")
        lines.append(f'    label="{side}";')
        ids = {v: f"{side}_v{i}" for i, v in enumerate(t.vertices())}
        for e in sorted(t.internal, key=edge_key):
            lines.append(f"    {ids[parent(e) or '*']} -- {ids[e]};")
        for k, leaf in enumerate(leaves_cyclic(t)):
            leaf_id = f"{side}_l{k}"
            lines.append(f'    {leaf_id} [shape=plaintext, label="{labels[side][leaf]}"];')
            lines.append(f"    {ids[parent(leaf) or '*']} -- {leaf_id} [style=dashed];")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines)
