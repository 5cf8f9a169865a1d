import random

import pytest

from qaffine.errors import DimensionError
from qaffine.treeoperad import (
    E,
    GPoint,
    contract,
    contract_all,
    corolla,
    enumerate_trees,
    family_hom,
    glue,
    internal_edges,
    operad_compose,
    parse_tree,
)
from qaffine.uqsl2 import StandardDescriptor, evaluation_module


def D(text):
    return StandardDescriptor.parse(text)


def test_corollas():
    assert corolla(1) is E and E.arity == 1
    c3 = corolla(3)
    assert (c3.arity, c3.inputs, c3.vertices) == (3, 2, 1)
    assert corolla(2).inputs == 1
    assert c3.tails() == {"inputs": [1, 2], "output": 3}
    with pytest.raises(DimensionError):
        corolla(0)


def test_glue_units_and_arity():
    assert glue(corolla(2), [E]) == corolla(2)
    T = glue(corolla(3), [corolla(3), E])
    assert T.arity == 4
    with pytest.raises(DimensionError):
        glue(corolla(3), [E])


def test_glue_associativity_sample():
    rng = random.Random(3)
    trees = [t for t in enumerate_trees(3, 2) if not t.is_unit]
    for _ in range(30):
        T = rng.choice(trees)
        parts = [rng.choice(trees) for _ in range(T.inputs)]
        inner = [[rng.choice(trees) for _ in range(p.inputs)] for p in parts]
        flat = [x for grp in inner for x in grp]
        assert glue(glue(T, parts), flat) == glue(T, [glue(p, g) for p, g in zip(parts, inner)])


def test_contract():
    T = glue(corolla(2), [corolla(2)])
    [edge] = internal_edges(T)
    assert contract(T, edge) == corolla(2)
    with pytest.raises(DimensionError):
        contract(corolla(3), (0,))
    for t in enumerate_trees(4, 3):
        if not t.is_unit:
            assert contract_all(t) == corolla(t.arity)


def test_text_form():
    T = parse_tree("(2 (2) e)")
    assert T == glue(corolla(3), [corolla(3), E])
    assert str(T) == "(2 (2) e)"
    for t in enumerate_trees(4, 3):
        assert parse_tree(str(t)) == t
    with pytest.raises(ValueError):
        parse_tree("(2 e")
    with pytest.raises(ValueError):
        parse_tree("(3 e e)")


def test_operad_composition():
    assert operad_compose((0, 0), [(3,), (5,)]) == GPoint((3, 5))
    assert operad_compose((2,), [(3, 5)]) == GPoint((5, 7))
    with pytest.raises(DimensionError):
        operad_compose((0, 0), [(1,)])


def test_operad_associativity():
    g = (1, -2)
    mid = [(0, 3), (4,)]
    inner = [(1,), (2, 2), (-1, 0, 5)]
    lhs = operad_compose(operad_compose(g, mid), inner)
    regrouped = [operad_compose(mid[0], inner[:2]), operad_compose(mid[1], inner[2:])]
    assert lhs == operad_compose(g, regrouped)


def test_family_hom_identity():
    dim, _ = family_hom(corolla(2), [D("V(1@0)")], (0,), evaluation_module(1, 0))
    assert dim == 1


def test_family_hom_reducible_pair():
    # the map onto V(2@0) exists from V(1@2) (x) V(1@0); the other order has V(2@0) as a submodule
    target = evaluation_module(2, 0)
    assert family_hom(corolla(3), [D("V(1@2)"), D("V(1@0)")], (0, 0), target)[0] == 1
    assert family_hom(corolla(3), [D("V(1@0)"), D("V(1@2)")], (0, 0), target)[0] == 0


def test_family_hom_simple_pair():
    target = evaluation_module(2, 0)
    assert family_hom(corolla(3), [D("V(1@0)"), D("V(1@4)")], (0, 0), target)[0] == 0


def test_family_hom_equivariance():
    objs = [D("V(1@0)"), D("V(1@2)")]
    for s in (-2, 0, 4):
        dim, _ = family_hom(corolla(3), objs, GPoint((0, 0)).shifted(s), evaluation_module(2, s))
        assert dim == 0
        dim, _ = family_hom(corolla(3), objs[::-1], GPoint((0, 0)).shifted(s), evaluation_module(2, s))
        assert dim == 1


def test_point_length_checked():
    with pytest.raises(DimensionError):
        family_hom(corolla(3), [D("V(1@0)")], (0,), evaluation_module(1, 0))
