import pytest

from qaffine.qchar import (
    K0_ONE,
    ONE_CHAR,
    QCharacter,
    character_of_descriptor,
    dominant_term,
    in_A2,
    k0_class,
    k0_evaluation,
    k0_generator,
    qchar_evaluation,
    qchar_product,
    specialize,
    weight_generating_function,
)
from qaffine.repdecomp import decompose_descriptor
from qaffine.uqsl2 import StandardDescriptor, evaluation_module, module_of, qstring


def D(text):
    return StandardDescriptor.parse(text)


def test_ladder_values():
    assert qchar_evaluation(0, 7) == ONE_CHAR
    assert str(qchar_evaluation(1, 0)) == "Y0 + Y2^-1"
    assert str(qchar_evaluation(2, 0)) == "Y0*Y2 + Y0*Y4^-1 + Y2^-1*Y4^-1"


def test_ladder_shape():
    for n in range(5):
        chi = qchar_evaluation(n, 1)
        assert len(chi) == n + 1
        assert chi.is_positive()


def test_product_with_unit():
    chi = qchar_evaluation(2, 3)
    assert qchar_product(ONE_CHAR, chi) == chi


def test_product_of_adjacent_strings():
    prod = qchar_product(qchar_evaluation(1, 0), qchar_evaluation(1, 2))
    assert len(prod) == 4
    text = str(prod)
    assert "Y0*Y2" in text and "Y2^-1*Y4^-1" in text


def test_product_matches_composition_factors():
    d = D("V(1@0)*V(1@2)")
    total = QCharacter(())
    for f in decompose_descriptor(d).factors:
        total = total + character_of_descriptor(f)
    assert total == character_of_descriptor(d)


@pytest.mark.parametrize("n,l", [(1, 3), (2, -1), (4, 0)])
def test_specialization_matches_weights(n, l):
    assert specialize(qchar_evaluation(n, l)) == weight_generating_function(evaluation_module(n, l))


def test_specialization_values():
    assert specialize(qchar_evaluation(1, 5)) == {1: 1, -1: 1}
    assert specialize(qchar_evaluation(2, 5)) == {2: 1, 0: 1, -2: 1}


def test_specialization_is_multiplicative():
    a, b = qchar_evaluation(1, 0), qchar_evaluation(2, 4)
    sa, sb = specialize(a), specialize(b)
    prod = {}
    for i, x in sa.items():
        for j, y in sb.items():
            prod[i + j] = prod.get(i + j, 0) + x * y
    assert specialize(qchar_product(a, b)) == prod


def test_dominant_terms():
    assert dominant_term(qchar_evaluation(1, 0)) == ((0, 1),)
    assert dominant_term(ONE_CHAR) == ()
    for n in range(1, 5):
        term = dominant_term(qchar_evaluation(n, 2))
        assert {k for k, _ in term} == qstring(n, 2).exponents
        assert all(p > 0 for _, p in term)


def test_k0_classes():
    assert k0_class(D("V(1@6)")) == k0_generator(6)
    assert str(k0_class(D("V(2@0)"))) == "t0*t2 - 1"
    assert k0_class(D("V(1@0)*V(1@4)")) == k0_generator(0) * k0_generator(4)


def test_k0_of_module_uses_decomposition():
    M = module_of(D("V(1@0)*V(1@2)"))
    assert k0_class(M) == k0_generator(0) * k0_generator(2)


def test_k0_recursion_against_decomposition():
    for n in range(2, 5):
        d = D(f"V(1@0)*V({n - 1}@2)")
        classes = [k0_class(f) for f in decompose_descriptor(d).factors]
        total = classes[0]
        for c in classes[1:]:
            total = total + c
        assert total == k0_generator(0) * k0_evaluation(n - 1, 2)


def test_in_A2():
    assert in_A2(k0_class(D("V(2@0)")))
    assert not in_A2(k0_generator(1))
    assert in_A2(K0_ONE)
