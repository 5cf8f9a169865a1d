import pytest

from qaffine.errors import BoundExceeded
from qaffine.linalg import GENERATORS
from qaffine.repdecomp import (
    composition_series,
    decompose_descriptor,
    identify_simple,
    is_simple,
    minimal_submodules,
    quotient,
    restrict,
    singular_vectors,
    strings_of_monomial,
)
from qaffine.uqsl2 import StandardDescriptor, evaluation_module, in_category_C, module_of


def D(text):
    return StandardDescriptor.parse(text)


def singular_dims(M):
    return {w: s.dim for w, s in singular_vectors(M) if s.dim}


def test_singular_vectors():
    assert singular_dims(evaluation_module(2, 0)) == {2: 1}
    assert singular_dims(module_of(D("V(1@0)*V(1@2)"))) == {2: 1, 0: 1}
    assert singular_dims(module_of(D("1"))) == {0: 1}


def test_minimal_submodules():
    V = evaluation_module(2, 0)
    [S] = minimal_submodules(V)
    assert S.is_full()
    [S] = minimal_submodules(module_of(D("V(1@0)*V(1@2)")))
    assert S.dim == 3
    [S] = minimal_submodules(module_of(D("V(1@0)*V(1@4)")))
    assert S.is_full()


def test_simplicity():
    assert is_simple(module_of(D("V(1@0)*V(1@4)")))
    assert not is_simple(module_of(D("V(1@0)*V(1@2)")))
    assert not is_simple(module_of(D("V(1@2)*V(1@0)")))


def test_bound_is_enforced():
    with pytest.raises(BoundExceeded):
        minimal_submodules(module_of(D("V(2@0)*V(2@2)")), bound=8)


def test_series_of_reducible_pair():
    cs = decompose_descriptor(D("V(1@0)*V(1@2)"))
    assert sorted(map(str, cs.factors)) == ["1", "V(2@0)"]
    assert cs.ranks == [0, 3, 4]
    assert cs.to_json() == {"factors": [str(f) for f in cs.factors], "filtration_ranks": [0, 3, 4]}


def test_series_of_simple_pair():
    cs = decompose_descriptor(D("V(1@0)*V(1@4)"))
    assert [str(f) for f in cs.factors] == ["V(1@0) * V(1@4)"]
    assert cs.ranks == [0, 4]


def test_series_of_string_triple():
    cs = decompose_descriptor(D("V(1@0)*V(1@2)*V(1@4)"))
    assert sum(f.dim for f in cs.factors) == 8
    assert sorted(map(str, cs.factors)) == ["V(1@0)", "V(1@4)", "V(3@0)"]
    assert cs.ranks == [0, 4, 6, 8]


def test_filtration_is_stable():
    M = module_of(D("V(1@0)*V(1@2)*V(1@4)"))
    cs = composition_series(M)
    for sub in cs.filtration:
        for v in sub.sparse_basis():
            for g in GENERATORS:
                assert sub.contains(getattr(M, g).apply(v))


def test_jordan_hoelder_under_reordering():
    a = decompose_descriptor(D("V(1@0)*V(2@3)"))
    b = decompose_descriptor(D("V(2@3)*V(1@0)"))
    assert sorted(f.canonical() for f in a.factors) == sorted(f.canonical() for f in b.factors)


def test_factors_stay_in_category():
    d = D("V(2@0)*V(1@4)")
    assert in_category_C(d)
    for f in decompose_descriptor(d).factors:
        assert in_category_C(f)


def test_identify_factors():
    M = module_of(D("V(1@0)*V(1@2)"))
    [S] = minimal_submodules(M)
    sub = restrict(M, S)
    assert identify_simple(sub) == D("V(2@0)")
    Q, _ = quotient(M, S)
    assert identify_simple(Q) == D("1")
    assert identify_simple(module_of(D("V(1@0)*V(1@4)"))) == D("V(1@0)*V(1@4)")


def test_strings_of_monomial():
    assert strings_of_monomial([0, 2]) == [(2, 0)]
    assert strings_of_monomial([0, 4]) == [(1, 0), (1, 4)]
    assert strings_of_monomial([]) == []
