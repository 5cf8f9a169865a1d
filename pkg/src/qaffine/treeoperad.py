"""Planar trees with numbered tails, gluing, and the operad of spaces G^n.

A tree is either the bare edge ``E`` (one input tail that is also the output)
or a root vertex with an ordered tuple of children. A child equal to ``E`` is
an input tail; any other child is a subtree hanging from an internal edge.
Input tails are numbered 1..n-1 in planar order and the output tail is n.

Text form::

    tree := "e" | "(" k child* ")"

where k is the number of inputs of the vertex and an empty child list means
that all k inputs are tails, so "(2)" is the corolla with two inputs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import DimensionError
from .linalg import intertwiner_space
from .uqsl2 import ModuleRep, StandardDescriptor, module_of, tensor_all, twist

__all__ = [
    "PlanarTree",
    "E",
    "corolla",
    "glue",
    "contract",
    "contract_all",
    "internal_edges",
    "parse_tree",
    "enumerate_trees",
    "GPoint",
    "operad_compose",
    "family_hom",
]


@dataclass(frozen=True)
class PlanarTree:
    children: tuple | None = None

    @property
    def is_unit(self):
        return self.children is None

    @property
    def inputs(self) -> int:
        if self.children is None:
            return 1
        return sum(c.inputs for c in self.children)

    @property
    def arity(self) -> int:
        """Total number of tails n, so that the tree lies in T(n).

        The bare edge is a single tail serving as input and output, so it
        lies in T(1) while still having one input slot for gluing.
        """
        if self.children is None:
            return 1
        return self.inputs + 1

    @property
    def vertices(self) -> int:
        if self.children is None:
            return 0
        return 1 + sum(c.vertices for c in self.children)

    def tails(self):
        """Tail numbers: inputs 1..n-1 in planar order, output n."""
        if self.children is None:
            return {"inputs": [1], "output": 1}
        n = self.arity
        return {"inputs": list(range(1, n)), "output": n}

    def __str__(self):
        if self.children is None:
            return "e"
        k = len(self.children)
        if all(c.is_unit for c in self.children):
            return f"({k})"
        return f"({k} " + " ".join(str(c) for c in self.children) + ")"

    __repr__ = __str__


E = PlanarTree(None)


def corolla(n: int) -> PlanarTree:
    """The one-vertex tree in T(n); corolla(1) is the bare edge."""
    if n < 1:
        raise DimensionError("corolla needs n >= 1")
    if n == 1:
        return E
    return PlanarTree((E,) * (n - 1))


def glue(T: PlanarTree, parts) -> PlanarTree:
    """Graft parts[i] onto the i-th input tail of T."""
    parts = list(parts)
    if len(parts) != T.inputs:
        raise DimensionError(f"tree has {T.inputs} inputs, got {len(parts)} parts")
    it = iter(parts)

    def go(t):
        if t.children is None:
            return next(it)
        return PlanarTree(tuple(go(c) for c in t.children))

    return go(T)


def _node(T, path):
    t = T
    for i in path:
        if t.children is None or not 0 <= i < len(t.children):
            raise DimensionError(f"no edge at path {path}")
        t = t.children[i]
    return t


def internal_edges(T: PlanarTree):
    """Paths (child indices from the root) to the lower end of each internal edge."""
    out = []

    def go(t, path):
        if t.children is None:
            return
        for i, c in enumerate(t.children):
            if c.children is not None:
                out.append(path + (i,))
                go(c, path + (i,))

    go(T, ())
    return out


def contract(T: PlanarTree, edge) -> PlanarTree:
    """Collapse the internal edge above the vertex at ``edge``."""
    edge = tuple(edge)
    if not edge:
        raise DimensionError("the root's outgoing edge is a tail")
    node = _node(T, edge)
    if node.children is None:
        raise DimensionError("edge is a tail")

    def go(t, path):
        if len(path) == 1:
            i = path[0]
            ch = t.children
            return PlanarTree(ch[:i] + node.children + ch[i + 1:])
        i = path[0]
        ch = list(t.children)
        ch[i] = go(ch[i], path[1:])
        return PlanarTree(tuple(ch))

    return go(T, edge)


def contract_all(T: PlanarTree) -> PlanarTree:
    while True:
        edges = internal_edges(T)
        if not edges:
            return T
        T = contract(T, edges[0])


_TOK = re.compile(r"\s*(\(|\)|e|\d+)")


def parse_tree(text: str) -> PlanarTree:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise ValueError(f"bad tree text at {pos}: {text!r}")
        toks.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    k = 0

    def tree():
        nonlocal k
        if k >= len(toks):
            raise ValueError("unexpected end of tree text")
        t = toks[k]
        k += 1
        if t == "e":
            return E
        if t != "(":
            raise ValueError(f"unexpected token {t!r}")
        if k >= len(toks) or not toks[k].isdigit():
            raise ValueError("vertex needs an input count")
        n = int(toks[k])
        k += 1
        kids = []
        while k < len(toks) and toks[k] != ")":
            kids.append(tree())
        if k >= len(toks):
            raise ValueError("unbalanced parentheses")
        k += 1
        if n < 1:
            raise ValueError("a vertex needs at least one input")
        if not kids:
            kids = [E] * n
        if len(kids) != n:
            raise ValueError(f"vertex declares {n} inputs but has {len(kids)} children")
        return PlanarTree(tuple(kids))

    out = tree()
    if k != len(toks):
        raise ValueError("trailing tokens in tree text")
    return out


def enumerate_trees(max_inputs: int, max_vertices: int):
    """All planar trees with at most the given numbers of inputs and vertices."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def trees(v):
        # trees with exactly v vertices
        if v == 0:
            return (E,)
        out = []
        for k in range(1, max_inputs + 1):
            for split in _compositions(v - 1, k):
                for kids in itertools.product(*(trees(s) for s in split)):
                    t = PlanarTree(tuple(kids))
                    if t.inputs <= max_inputs:
                        out.append(t)
        return tuple(out)

    res = []
    for v in range(max_vertices + 1):
        res.extend(trees(v))
    return res


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# -- the operad of spaces G^n ---------------------------------------------------

@dataclass(frozen=True)
class GPoint:
    """The point (q^{k_1}, ..., q^{k_n}) of G^n, one exponent per input tail."""

    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(k) for k in self.exponents))

    def __len__(self):
        return len(self.exponents)

    def shifted(self, s):
        return GPoint(tuple(k + s for k in self.exponents))

    def check(self, T: PlanarTree):
        if len(self) != T.inputs:
            raise DimensionError(f"point of length {len(self)} over a tree with {T.inputs} inputs")
        return self


def _as_point(g):
    return g if isinstance(g, GPoint) else GPoint(tuple(g))


def operad_compose(g, parts, tree=None, part_trees=None) -> GPoint:
    """gamma((g_i) x prod_i (g_ij)) = (g_i g_ij), written additively in exponents."""
    g = _as_point(g)
    parts = [_as_point(p) for p in parts]
    if len(parts) != len(g):
        raise DimensionError(f"{len(g)} components but {len(parts)} parts")
    if tree is not None:
        g.check(tree)
    if part_trees is not None:
        if len(part_trees) != len(parts):
            raise DimensionError("one tree per part expected")
        for p, t in zip(parts, part_trees):
            p.check(t)
    return GPoint(tuple(gi + e for gi, p in zip(g.exponents, parts) for e in p.exponents))


def family_hom(T: PlanarTree, objects, g, target: ModuleRep):
    """Dimension and basis of Hom(X_1(g_1) (x) ... (x) X_n(g_n), target).

    The tensor product is bracketed left to right; the tree contributes only
    its number of inputs.
    """
    g = _as_point(g).check(T)
    objects = [StandardDescriptor.parse(o) if isinstance(o, str) else o for o in objects]
    if len(objects) != T.inputs:
        raise DimensionError(f"tree has {T.inputs} inputs, got {len(objects)} objects")
    mods = [twist(module_of(d), k, check=False) for d, k in zip(objects, g.exponents)]
    src = tensor_all(mods, check=False)
    basis = intertwiner_space(src, target)
    return len(basis), basis
