"""The non-separating homology lattice and finitary symplectic operators.

Basis classes are ``a_k`` (meridian) and ``b_k`` (longitude) of the wrist at
edge ``k``, with ``omega(a_k, b_k) = 1``.  Classes are finitely supported
integer vectors.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import InvalidInput, SupportLimitError
from .thompson import (
    ALPHA_V,
    BETA_V,
    PI_V,
    TreePair,
    compose,
    edge_action,
    expand_to,
    invert,
    is_identity,
    relabel as relabel_pair,
    serialize,
)
from .tree import FiniteSubtree, common_refinement, is_edge, relabel_edge

Key = tuple  # ("a" | "b", edge address)

# +1: a right twist acts by x -> x + omega(x, gamma) gamma
TWIST_SIGN = 1


def basis_name(key: Key) -> str:
    return f"{key[0]}[{key[1]}]"


class HomClass:
    """Finitely supported integer combination of the classes a_k, b_k."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[Key, int] | Iterable[tuple[Key, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        out: dict[Key, int] = {}
        for key, c in items:
            letter, edge = key
            if letter not in ("a", "b") or not is_edge(edge):
                raise InvalidInput(f"bad basis symbol {key!r}")
            c = out.get(key, 0) + int(c)
            if c:
                out[key] = c
            else:
                out.pop(key, None)
        self._coeffs = out

    @classmethod
    def a(cls, k: str) -> "HomClass":
        return cls({("a", k): 1})

    @classmethod
    def b(cls, k: str) -> "HomClass":
        return cls({("b", k): 1})

    @classmethod
    def zero(cls) -> "HomClass":
        return cls()

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, key: Key) -> int:
        return self._coeffs.get(key, 0)

    def __iter__(self):
        return iter(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def wrists(self) -> set[str]:
        return {k for _, k in self._coeffs}

    def __add__(self, other: "HomClass") -> "HomClass":
        return HomClass(list(self.items()) + list(other.items()))

    def __sub__(self, other: "HomClass") -> "HomClass":
        return self + (-other)

    def __neg__(self) -> "HomClass":
        return HomClass({k: -c for k, c in self.items()})

    def __mul__(self, n: int) -> "HomClass":
        if n == 0:
            return HomClass()
        return HomClass({k: n * c for k, c in self.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomClass):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def relabel(self, shift: int = 1) -> "HomClass":
        return HomClass({(l, relabel_edge(k, shift)): c for (l, k), c in self.items()})

    def __repr__(self):
        if not self._coeffs:
            return "0"
        terms = sorted(self._coeffs.items(), key=lambda kc: (kc[0][1], kc[0][0]))
        return " + ".join(f"{c}*{basis_name(k)}" for k, c in terms)


def omega(x: HomClass, y: HomClass) -> int:
    total = 0
    for (letter, k), c in x.items():
        if letter == "a":
            total += c * y[("b", k)]
        else:
            total -= c * y[("a", k)]
    return total


def j_apply(x: HomClass) -> HomClass:
    """Complex structure: J b_k = a_k, J a_k = -b_k."""
    return HomClass({(("b" if l == "a" else "a"), k): (-c if l == "a" else c)
                     for (l, k), c in x.items()})


def transvection(gamma: HomClass, x: HomClass, times: int = 1) -> HomClass:
    return x + gamma * (TWIST_SIGN * times * omega(x, gamma))


def _basis(wrists: Iterable[str]) -> list[Key]:
    return [(l, k) for k in wrists for l in ("a", "b")]


class FinSymplectic:
    """A symplectic operator that is a finite block on ``support`` and a
    rigid wrist permutation outside it.

    ``columns`` sends each basis symbol of a support wrist to its image,
    which is supported on the wrists of the range tree (the range of the end
    map once its domain is grown to ``support``).  Outside the support,
    ``a_k -> a_s(k)`` and ``b_k -> b_s(k)`` with ``s`` the edge action of
    ``end_map``.
    """

    __slots__ = ("support", "end_map", "range_tree", "columns")

    def __init__(self, support: FiniteSubtree, columns: Mapping[Key, HomClass],
                 end_map: TreePair | None = None):
        end_map = TreePair.identity() if end_map is None else end_map
        if not support.contains(end_map.domain):
            raise InvalidInput("end map domain is not inside the support")
        self.support = support
        self.end_map = end_map
        self.range_tree = expand_to(end_map, support).range
        expected = set(_basis(support.wrists()))
        if set(columns) != expected:
            raise InvalidInput("columns must cover exactly the support basis")
        self.columns = dict(columns)

    @classmethod
    def identity(cls) -> "FinSymplectic":
        return cls(FiniteSubtree.base(), {})

    @classmethod
    def from_block(cls, support: FiniteSubtree, block, end_map: TreePair | None = None):
        """Build from a dense integer block: rows index the range basis."""
        end_map = TreePair.identity() if end_map is None else end_map
        rows = _basis(expand_to(end_map, support).range.wrists())
        cols = _basis(support.wrists())
        if len(block) != len(rows) or any(len(r) != len(cols) for r in block):
            raise InvalidInput("block has the wrong shape")
        columns = {c: HomClass({rows[i]: block[i][j] for i in range(len(rows))})
                   for j, c in enumerate(cols)}
        return cls(support, columns, end_map)

    @property
    def basis(self) -> list[Key]:
        return _basis(self.support.wrists())

    @property
    def range_basis(self) -> list[Key]:
        return _basis(self.range_tree.wrists())

    @property
    def block(self) -> list[list[int]]:
        rows = self.range_basis
        return [[self.columns[c][r] for c in self.basis] for r in rows]

    def image_of(self, key: Key) -> HomClass:
        if key in self.columns:
            return self.columns[key]
        letter, k = key
        return HomClass({(letter, edge_action(self.end_map, k)): 1})

    def extend(self, support: FiniteSubtree) -> "FinSymplectic":
        """Same operator described on a larger support."""
        if support == self.support:
            return self
        columns = dict(self.columns)
        for k in support.internal - self.support.internal:
            for letter in ("a", "b"):
                columns[(letter, k)] = self.image_of((letter, k))
        return FinSymplectic(support, columns, self.end_map)

    def extend_range(self, range_tree: FiniteSubtree) -> "FinSymplectic":
        """Grow the support until the range tree is ``range_tree``."""
        if not range_tree.contains(self.range_tree):
            raise InvalidInput("target range does not contain the current one")
        pulled = expand_to(invert(self.end_map), range_tree)
        support = common_refinement(self.support, pulled.range)
        return self.extend(support)

    def is_identity(self) -> bool:
        return is_identity(self.end_map) and all(
            col == HomClass({key: 1}) for key, col in self.columns.items())

    def relabel(self, shift: int = 1) -> "FinSymplectic":
        columns = {(l, relabel_edge(k, shift)): col.relabel(shift)
                   for (l, k), col in self.columns.items()}
        return FinSymplectic(self.support.relabel(shift), columns,
                             relabel_pair(self.end_map, shift))

    def __eq__(self, other):
        if not isinstance(other, FinSymplectic):
            return NotImplemented
        if self.end_map != other.end_map:
            return False
        u = common_refinement(self.support, other.support)
        return self.extend(u).columns == other.extend(u).columns

    __hash__ = None

    def __repr__(self):
        return (f"FinSymplectic(support={self.support}, range={self.range_tree}, "
                f"end_map={serialize(self.end_map)})")

    def to_json(self) -> dict:
        return {
            "support": self.support.wrists(),
            "range": self.range_tree.wrists(),
            "basis": [basis_name(k) for k in self.basis],
            "rangeBasis": [basis_name(k) for k in self.range_basis],
            "block": self.block,
            "endMap": serialize(self.end_map),
        }


def apply_op(f: FinSymplectic, x: HomClass) -> HomClass:
    acc: dict[Key, int] = {}
    for key, c in x.items():
        for k2, c2 in f.image_of(key).items():
            acc[k2] = acc.get(k2, 0) + c * c2
    return HomClass(acc)


def compose_ops(f: FinSymplectic, g: FinSymplectic) -> FinSymplectic:
    """f∘g: g acts first."""
    middle = common_refinement(g.range_tree, f.support)
    g1 = g.extend_range(middle)
    f1 = f.extend(middle)
    columns = {key: apply_op(f1, col) for key, col in g1.columns.items()}
    return FinSymplectic(g1.support, columns, compose(f.end_map, g.end_map))


def invert_op(f: FinSymplectic) -> FinSymplectic:
    """Inverse of a symplectic operator, using the symplectic adjoint."""
    columns = {}
    for y in f.range_basis:
        yv = HomClass({y: 1})
        coeffs = {}
        for k in f.support.wrists():
            coeffs[("a", k)] = omega(yv, f.columns[("b", k)])
            coeffs[("b", k)] = omega(f.columns[("a", k)], yv)
        columns[y] = HomClass(coeffs)
    return FinSymplectic(f.range_tree, columns, invert(f.end_map))


def power_op(f: FinSymplectic, k: int) -> FinSymplectic:
    if k < 0:
        f, k = invert_op(f), -k
    out = FinSymplectic.identity()
    base = f
    while k:
        if k & 1:
            out = compose_ops(out, base)
        k >>= 1
        if k:
            base = compose_ops(base, base)
    return out


def is_symplectic(f: FinSymplectic) -> bool:
    """Exact check that the block preserves omega and the ends are rigid."""
    rng = set(f.range_tree.wrists())
    for col in f.columns.values():
        if not col.wrists() <= rng:
            return False
    basis = f.basis
    if len(basis) != len(f.range_basis):
        return False
    for i, x in enumerate(basis):
        for y in basis[i:]:
            target = omega(HomClass({x: 1}), HomClass({y: 1}))
            if omega(f.columns[x], f.columns[y]) != target:
                return False
    return True


def dehn_twist(gamma: HomClass, times: int = 1) -> FinSymplectic:
    support = FiniteSubtree.closure(gamma.wrists())
    columns = {key: transvection(gamma, HomClass({key: 1}), times)
               for key in _basis(support.wrists())}
    return FinSymplectic(support, columns)


def normalize(f: FinSymplectic) -> FinSymplectic:
    """Shrink the support while the operator stays rigid on dropped wrists."""
    changed = True
    while changed:
        changed = False
        for k in sorted(f.support.internal, key=lambda e: -len(e)):
            if k + "L" in f.support.internal or k + "R" in f.support.internal:
                continue
            smaller = FiniteSubtree(f.support.internal - {k})
            if not smaller.contains(f.end_map.domain):
                continue
            try:
                cand = FinSymplectic(
                    smaller, {key: f.columns[key] for key in _basis(smaller.wrists())},
                    f.end_map)
            except InvalidInput:
                continue
            if all(col.wrists() <= set(cand.range_tree.internal)
                   for col in cand.columns.values()) and cand.extend(f.support).columns == f.columns:
                f = cand
                changed = True
                break
    return f


def pure_permutation(end_map: TreePair) -> FinSymplectic:
    """The rigid operator induced by an element of V, with identity block."""
    support = end_map.domain
    rng = expand_to(end_map, support).range
    if set(support.internal) != set(rng.internal):
        raise InvalidInput("identity block needs matching support and range wrists")
    columns = {key: HomClass({key: 1}) for key in _basis(support.wrists())}
    return FinSymplectic(support, columns, end_map)


def check_support(f: FinSymplectic, max_support: int | None) -> FinSymplectic:
    if max_support is not None and f.support.vertex_count > max_support:
        raise SupportLimitError(
            f"support has {f.support.vertex_count} vertices, over the cap of {max_support}")
    return f


# twists along these loops make up the finite generating set together with
# alpha, beta, pi, t, t_a1, t_b1
BASIC_WRIST = "1"
WRIST_CONNECTING = ("wc", ("0", "1"))
VERTEX_CONNECTING = ("vc", ("1", "*"))

GENERATOR_NAMES = ("alpha", "beta", "pi", "t", "t0", "t_a1", "t_b1", "t_wc", "t_vc")


def generator_shadow(name: str) -> FinSymplectic:
    from .surface import LoopSpec, loop_class

    if name == "alpha":
        return pure_permutation(ALPHA_V)
    if name == "beta":
        return pure_permutation(BETA_V)
    if name == "pi":
        return pure_permutation(PI_V)
    if name in ("t", "t0"):
        return dehn_twist(HomClass())
    if name == "t_a1":
        return dehn_twist(loop_class(LoopSpec("a", (BASIC_WRIST,))))
    if name == "t_b1":
        return dehn_twist(loop_class(LoopSpec("b", (BASIC_WRIST,))))
    if name == "t_wc":
        return dehn_twist(loop_class(LoopSpec(*WRIST_CONNECTING)))
    if name == "t_vc":
        return dehn_twist(loop_class(LoopSpec(*VERTEX_CONNECTING)))
    raise InvalidInput(f"unknown generator {name!r}")


def word_shadow(word, max_support: int | None = None) -> FinSymplectic:
    """Image of a word; the rightmost term acts first."""
    from .words import parse, term_shadow

    terms = parse(word) if isinstance(word, str) else word
    out = FinSymplectic.identity()
    for term in terms:
        out = check_support(compose_ops(out, term_shadow(term)), max_support)
    return out
