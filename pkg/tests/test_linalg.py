import pytest

from qaffine.errors import DimensionError
from qaffine.exactfield import ONE, Q, ZERO, Z, qpow
from qaffine.linalg import (
    GENERATORS,
    Matrix,
    closure,
    intertwiner_space,
    kernel,
    rref,
    seeded_intertwiner,
    solve,
    span,
)
from qaffine.uqsl2 import StandardDescriptor, evaluation_module, module_of


def D(text):
    return StandardDescriptor.parse(text)


def test_kernel_of_identity_is_zero():
    assert kernel(Matrix.identity(3)).dim == 0


def test_rref_rank():
    m, r = rref(Matrix([[Q, 0], [0, 0]]))
    assert r == 1
    assert m.rows[0] == (ONE, ZERO)


def test_rref_idempotent():
    m = Matrix([[Q, Z, 1], [qpow(2), Q * Z, Q], [1, 0, Z]])
    once, r = rref(m)
    twice, r2 = rref(once)
    assert once == twice and r == r2


def test_solve_underdetermined():
    x = solve(Matrix([[1, 1], [0, 0]]), (1, 0))
    assert x is not None and x[0] + x[1] == ONE


def test_solve_inconsistent_and_mismatch():
    assert solve(Matrix([[1, 1], [1, 1]]), (1, 0)) is None
    with pytest.raises(DimensionError):
        solve(Matrix([[1, 1]]), (1, 0))


def test_kernel_vectors_are_annihilated():
    m = Matrix([[Q, 1, Z], [qpow(2), Q, Q * Z], [0, 0, 1 - Z]])
    K = kernel(m)
    assert K.dim == 1
    for v in K.sparse_basis():
        assert not m.apply(v)


def _check_intertwiners(M, N):
    maps = intertwiner_space(M, N)
    for F in maps:
        for g in GENERATORS:
            assert F @ getattr(M, g) == getattr(N, g) @ F
    return maps


def test_intertwiners_of_simple_module_are_scalars():
    V = evaluation_module(1, 0)
    maps = _check_intertwiners(V, V)
    assert len(maps) == 1 and maps[0].is_identity()


def test_no_maps_between_distinct_parameters():
    assert _check_intertwiners(evaluation_module(1, 0), evaluation_module(1, 2)) == []


def test_unique_map_at_reducible_point():
    maps = _check_intertwiners(module_of(D("V(1@0)*V(1@2)")), module_of(D("V(1@2)*V(1@0)")))
    assert len(maps) == 1


def test_closure_of_top_vector():
    assert closure(evaluation_module(1, 0), {0: ONE}).dim == 2
    M = module_of(D("V(1@0)*V(1@2)"))
    sub = closure(M, {0: ONE})
    assert sub.dim == 3
    # stable under every generator
    for v in sub.sparse_basis():
        for g in GENERATORS:
            assert sub.contains(getattr(M, g).apply(v))


def test_closure_of_zero_rejected():
    with pytest.raises(ValueError):
        closure(evaluation_module(1, 0), {})


def test_closure_of_generic_vector_in_simple_module():
    M = module_of(D("V(1@0)*V(1@4)"))
    assert closure(M, {1: ONE, 2: Q}).is_full()


def test_seeded_intertwiner_matches_solver():
    A = module_of(D("V(1@0)*V(1@4)"))
    B = module_of(D("V(1@4)*V(1@0)"))
    F = seeded_intertwiner(A, B, {0: ONE}, {0: ONE})
    assert F is not None
    for g in GENERATORS:
        assert F @ getattr(A, g) == getattr(B, g) @ F
    [G] = intertwiner_space(A, B)
    assert G.scale(G.rows[0][0].inv()) == F


def test_seeded_intertwiner_detects_absence():
    A = evaluation_module(1, 0)
    B = evaluation_module(1, 2)
    assert seeded_intertwiner(A, B, {0: ONE}, {0: ONE}) is None


def test_span_is_canonical():
    a = span([{0: ONE, 1: Q}, {1: ONE}], 3)
    b = span([{0: ONE}, {1: Z}], 3)
    assert a == b


def test_matrix_kron_and_transpose():
    a = Matrix([[1, Q], [0, 1]])
    b = Matrix.identity(2)
    k = a.kron(b)
    assert k.shape == (4, 4)
    assert k.rows[0][2] == Q
    assert a.T.T == a
