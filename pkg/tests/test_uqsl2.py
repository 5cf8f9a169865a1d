from collections import Counter

import pytest

from qaffine.errors import RelationError
from qaffine.exactfield import ONE, ZERO, evaluate_z, qint, qpow
from qaffine.linalg import Matrix, intertwiner_space, rref
from qaffine.uqsl2 import (
    ModuleRep,
    StandardDescriptor,
    dual,
    evaluation_module,
    generic_position,
    in_category_C,
    module_of,
    qstring,
    relation_failures,
    tensor,
    trivial_module,
    twist,
    twist_formal,
)


def D(text):
    return StandardDescriptor.parse(text)


def isomorphic(A, B):
    return any(F.nrows == F.ncols and rref(F)[1] == F.nrows for F in intertwiner_space(A, B))


def test_trivial_evaluation_module():
    V = evaluation_module(0, 5)
    assert V.dim == 1 and V.weights == (0,)
    assert all(m.is_zero() for m in V.raising_lowering())


def test_two_dimensional_module():
    V = evaluation_module(1, 0)
    assert V.k1 == Matrix.diag([qpow(1), qpow(-1)])
    assert V.x1p == Matrix([[0, 1], [0, 0]])
    assert V.x1m == Matrix([[0, 0], [1, 0]])
    assert not relation_failures(V)


def test_commutator_eigenvalues_on_three_dimensional_module():
    V = evaluation_module(2, 0)
    c = V.x1p @ V.x1m - V.x1m @ V.x1p
    assert c.is_diagonal()
    assert list(c.diagonal()) == [qint(2), ZERO, qint(-2)]


def test_affine_generators_are_scaled_copies():
    for n, l in [(1, 0), (2, 3), (3, -2)]:
        V = evaluation_module(n, l)
        a = V.x0p.nonzeros()
        b = V.x1m.nonzeros()
        ratios = {x / y for (_, _, x), (_, _, y) in zip(a, b)}
        assert len(ratios) == 1


def test_tensor_weights_add():
    M = tensor(evaluation_module(1, 0), evaluation_module(2, 0))
    assert M.dim == 6
    assert Counter(M.weights) == Counter([3, 1, 1, -1, -1, -3])


def test_tensor_with_trivial_is_identity():
    V = evaluation_module(2, 1)
    maps = intertwiner_space(tensor(trivial_module(), V), V)
    assert len(maps) == 1 and rref(maps[0])[1] == 3


def test_tensor_labels_concatenate():
    M = tensor(module_of(D("V(1@0)")), module_of(D("V(2@4)")))
    assert M.label == D("V(1@0) * V(2@4)")


def test_relation_checker_rejects_bad_action():
    V = evaluation_module(1, 0)
    with pytest.raises(RelationError):
        ModuleRep(V.x0p, V.x0m, V.x1p.scale(qpow(1)), V.x1m, V.k1)


def test_dual_of_trivial():
    assert isomorphic(dual(trivial_module()), trivial_module())


def test_dual_shifts_by_two():
    assert isomorphic(dual(evaluation_module(1, 0)), evaluation_module(1, 2))
    assert not isomorphic(dual(evaluation_module(1, 0)), evaluation_module(1, 0))


def test_double_dual_shifts_by_four():
    assert isomorphic(dual(dual(evaluation_module(1, 0))), evaluation_module(1, 4))


def test_twist_matches_evaluation_parameter():
    assert twist(evaluation_module(1, 0), 2).same_action(evaluation_module(1, 2))
    V = evaluation_module(2, 1)
    assert twist(V, 0) is V


def test_formal_twist_specializes():
    V = evaluation_module(2, 0)
    F = twist_formal(V)
    assert F.has_z()
    for k in (-3, 0, 2):
        S = F.map_entries(lambda s: evaluate_z(s, k))
        assert S.same_action(twist(V, k, check=False))


def test_qstrings():
    assert qstring(1, 0).exponents == {0}
    assert qstring(3, 2).exponents == {2, 4, 6}
    assert qstring(0, 7).exponents == frozenset()
    with pytest.raises(ValueError):
        qstring(-1, 0)


def test_generic_position():
    assert generic_position(qstring(1, 0), qstring(1, 4))
    assert not generic_position(qstring(1, 0), qstring(1, 2))
    assert generic_position(qstring(3, 0), qstring(1, 2))
    assert generic_position(qstring(1, 0), qstring(1, 1))


def test_category_membership():
    assert in_category_C(D("V(1@0) * V(2@4)"))
    assert not in_category_C(D("V(1@1)"))
    assert in_category_C(D("1"))


def test_descriptor_text_round_trip():
    for text in ["1", "V(1@0)", "V(2@-4) * V(1@3)"]:
        assert str(D(text)) == text
    with pytest.raises(ValueError):
        D("V(1,0)")


def test_descriptor_helpers():
    d = D("V(2@0) * V(0@5) * V(1@-2)")
    assert d.dim == 6
    assert d.nontrivial() == D("V(2@0) * V(1@-2)")
    assert d.canonical() == D("V(1@-2) * V(2@0)")
    assert d.shifted(2) == D("V(2@2) * V(0@7) * V(1@0)")
    assert len(D("V(1@0)").padded(3).factors) == 3


def test_module_of_trivial_descriptor():
    M = module_of(D("1"))
    assert M.dim == 1 and M.weights == (0,)
    assert ONE == M.k1.rows[0][0]
