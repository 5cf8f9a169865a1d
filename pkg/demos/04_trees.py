"""
Planar trees and hom families
=============================

Glue and contract trees, compose points of G^n, and count module maps out
of a tensor product labelled by a tree.
"""

from qaffine.treeoperad import (
    E,
    GPoint,
    contract_all,
    corolla,
    family_hom,
    glue,
    operad_compose,
    parse_tree,
)
from qaffine.uqsl2 import StandardDescriptor, evaluation_module

T = glue(corolla(3), [corolla(3), E])
print("glued:", T, " tails:", T.arity, " vertices:", T.vertices)
print("parsed back:", parse_tree(str(T)) == T)
print("all edges contracted:", contract_all(T))

print("composition of points:", operad_compose((2, 0), [(3, 5), (1,)]).exponents)

objs = [StandardDescriptor.parse("V(1@2)"), StandardDescriptor.parse("V(1@0)")]
for shift in (0, 2, 4):
    g = GPoint((0, 0)).shifted(shift)
    dim, _ = family_hom(corolla(3), objs, g, evaluation_module(2, shift))
    print(f"dim Hom(V(1@{2 + shift}) (x) V(1@{shift}), V(2@{shift})) = {dim}")
