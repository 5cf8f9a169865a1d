"""Normalized braidings c(z): V(x) (x) W(y) -> W(y) (x) V(x) with z = x/y.

Conventions
-----------
* ``V(x)`` is realized by :func:`twist_formal`, so the left object carries z.
* A braiding is normalized by sending the tensor of top vectors to the tensor
  of top vectors with coefficient 1.
* Poles are the exponents k for which z = q^k kills the least common
  denominator of the normalized matrix; zeros are the q-power roots of its
  determinant, i.e. the poles of the inverse. Their union is the singular set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import flint

from .errors import BoundExceeded, FunctorialityError, PoleError, QAffineError
from .exactfield import CTX, ONE, ZERO, Scalar, evaluate_z, qpower_roots
from .linalg import Matrix, Subspace, intertwiner_space, span
from .uqsl2 import (
    StandardDescriptor,
    evaluation_module,
    module_of,
    tensor,
    twist,
    twist_formal,
)

__all__ = [
    "generically_invertible",
    "PAIR_BOUND",
    "STANDARD_BOUND",
    "BraidingMatrix",
    "braid_pair",
    "braid_standard",
    "braid_direct",
    "braid_subquotient",
    "tensor_subspace",
    "mu_word",
    "mu_sigma",
    "reduced_word",
    "subsequence_compatibility",
    "elliptic_descent_report",
    "intertwines",
    "determinant",
]

PAIR_BOUND = 16
STANDARD_BOUND = 64
DEFAULT_SPACING = 24


@dataclass(frozen=True)
class BraidingMatrix:
    source: tuple  # (V, W) as StandardDescriptors
    matrix: Matrix
    poles: frozenset
    residue: bool
    zeros: frozenset = frozenset()
    zero_residue: bool = False

    normalization = "c(top (x) top) = top (x) top"

    @property
    def singular(self):
        """Exponents where c or its inverse has a pole."""
        return self.poles | self.zeros

    def at(self, k: int) -> Matrix:
        """Specialize z = q^k; raises PoleError on a pole."""
        return self.matrix.map(lambda s: evaluate_z(s, k))

    def to_json(self):
        V, W = self.source
        return {
            "source": [str(V), str(W)],
            "normalization": self.normalization,
            "matrix": [[str(x) for x in r] for r in self.matrix.rows],
            "poles": sorted(self.poles),
            "residue": self.residue,
            "zeros": sorted(self.zeros),
            "zero_residue": self.zero_residue,
        }


def _lcm(a, b):
    return a * b / a.gcd(b)


def _pole_data(m: Matrix, bound: int):
    den = CTX.constant(1)
    for _, _, x in m.nonzeros():
        if x.has_z():
            den = _lcm(den, x.den)
    if den.degrees()[1] == 0:
        return frozenset(), False
    roots, residue = qpower_roots(den, bound)
    return frozenset(roots), residue


def _zero_data(m: Matrix, bound: int):
    """q-power zeros of det(m): the poles of the inverse matrix."""
    det = determinant(m)
    if det.is_zero():
        raise QAffineError("braiding is not generically invertible")
    if det.num.degrees()[1] == 0:
        return frozenset(), False
    roots, residue = qpower_roots(det.num, bound)
    return frozenset(roots), residue


def _make(source, F, bound):
    poles, residue = _pole_data(F, bound)
    zeros, zres = _zero_data(F, bound)
    return BraidingMatrix(source, F, poles, residue, zeros, zres)


def _normalize(F: Matrix) -> Matrix:
    c = F.rows[0][0]
    if c.is_zero():
        raise QAffineError("braiding does not map the top vector to the top vector")
    return F.scale(c.inv())


def _pole_bound(V: StandardDescriptor, W: StandardDescriptor):
    return 2 * (sum(n for n, _ in V.factors) + sum(n for n, _ in W.factors)) + 6


@lru_cache(maxsize=None)
def braid_pair(nV: int, lV: int, nW: int, lW: int, bound: int = PAIR_BOUND) -> BraidingMatrix:
    """Braiding V_nV(q^lV)(z) (x) V_nW(q^lW) -> V_nW(q^lW) (x) V_nV(q^lV)(z)."""
    if (nV + 1) * (nW + 1) > bound:
        raise BoundExceeded(f"pair dimension {(nV + 1) * (nW + 1)} exceeds {bound}")
    V = twist_formal(evaluation_module(nV, lV))
    W = evaluation_module(nW, lW)
    M = tensor(V, W, check=False)
    N = tensor(W, V, check=False)
    maps = intertwiner_space(M, N)
    if len(maps) != 1:
        raise QAffineError(f"expected a one-dimensional intertwiner space, found {len(maps)}")
    F = _normalize(maps[0])
    dV = StandardDescriptor(((nV, lV),))
    dW = StandardDescriptor(((nW, lW),))
    return _make((dV, dW), F, _pole_bound(dV, dW))


def _embed(c: Matrix, left: int, right: int) -> Matrix:
    out = c
    if left > 1:
        out = Matrix.identity(left).kron(out)
    if right > 1:
        out = out.kron(Matrix.identity(right))
    return out


def _shuffle_swaps(a: int, b: int):
    """Adjacent swaps moving b right-hand factors in front of a left-hand ones.

    Yields ``(position, i, j)``: swap the factors at ``position`` and
    ``position + 1``, which are left factor i and right factor j.
    """
    for j in range(b):
        for i in reversed(range(a)):
            yield i + j, i, j


def braid_standard(V: StandardDescriptor, W: StandardDescriptor,
                   bound: int = STANDARD_BOUND) -> BraidingMatrix:
    """Compose pairwise braidings to move every factor of W past every factor of V."""
    if V.dim * W.dim > bound:
        raise BoundExceeded(f"dimension {V.dim * W.dim} exceeds {bound}")
    seq = list(V.factors) + list(W.factors)  # current factor order
    tags = [True] * len(V.factors) + [False] * len(W.factors)
    total = Matrix.identity(V.dim * W.dim)
    for pos, _, _ in _shuffle_swaps(len(V.factors), len(W.factors)):
        (nv, lv), (nw, lw) = seq[pos], seq[pos + 1]
        assert tags[pos] and not tags[pos + 1]
        c = braid_pair(nv, lv, nw, lw, bound=max(PAIR_BOUND, (nv + 1) * (nw + 1))).matrix
        left = 1
        for n, _ in seq[:pos]:
            left *= n + 1
        right = 1
        for n, _ in seq[pos + 2:]:
            right *= n + 1
        total = _embed(c, left, right) @ total
        seq[pos], seq[pos + 1] = seq[pos + 1], seq[pos]
        tags[pos], tags[pos + 1] = tags[pos + 1], tags[pos]
    return _make((V, W), total, _pole_bound(V, W))


def braid_direct(V: StandardDescriptor, W: StandardDescriptor,
                 bound: int = PAIR_BOUND) -> BraidingMatrix:
    """Solve for the braiding on the full tensor modules (requires uniqueness)."""
    if V.dim * W.dim > bound:
        raise BoundExceeded(f"dimension {V.dim * W.dim} exceeds {bound}")
    A = twist_formal(module_of(V))
    B = module_of(W)
    maps = intertwiner_space(tensor(A, B, check=False), tensor(B, A, check=False))
    if len(maps) != 1:
        raise QAffineError(f"expected a one-dimensional intertwiner space, found {len(maps)}")
    F = _normalize(maps[0])
    return _make((V, W), F, _pole_bound(V, W))


def intertwines(F: Matrix, M, N) -> bool:
    """F rho_M(g) == rho_N(g) F for all five generators (full matrices)."""
    return all(F @ getattr(M, g) == getattr(N, g) @ F
               for g in ("x0p", "x0m", "x1p", "x1m", "k1"))


def determinant(m: Matrix) -> Scalar:
    n = m.nrows
    a = [list(r) for r in m.rows]
    det = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det = det * a[c][c]
        inv = a[c][c].inv()
        for r in range(c + 1, n):
            f = a[r][c]
            if not f.is_zero():
                f = f * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


_TEST_POINTS = ((3, 7), (5, 13), (11, 2))


def generically_invertible(m: Matrix) -> bool:
    """Whether det(m) is a nonzero element of Q(q, z).

    A nonzero determinant at one rational point (q, z) already proves it;
    the exact determinant is the fallback when every test point is unlucky.
    """
    if m.nrows != m.ncols:
        return False
    for qv, zv in _TEST_POINTS:
        rows = []
        for r in m.rows:
            row = []
            for x in r:
                den = x.den(qv, zv)
                if den == 0:
                    break
                row.append(flint.fmpq(x.num(qv, zv), den))
            else:
                rows.append(row)
                continue
            break
        else:
            if m.nrows == 0 or flint.fmpq_mat(rows).det() != 0:
                return True
    return not determinant(m).is_zero()


# -- functoriality ----------------------------------------------------------------

def tensor_subspace(A: Subspace, B: Subspace) -> Subspace:
    """A (x) B inside the tensor of the ambient spaces (left index major)."""
    nb = B.ambient_dim
    vecs = []
    for a in A.sparse_basis():
        for b in B.sparse_basis():
            vecs.append({i * nb + j: x * y for i, x in a.items() for j, y in b.items()})
    return span(vecs, A.ambient_dim * nb)


def _full(n):
    return Subspace(n, tuple(tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)))


def _coords(vec, rows):
    """Coordinates of a vector of the subspace in its RREF basis; None if outside."""
    rest = dict(vec)
    out = {}
    for k, (p, row) in enumerate(rows):
        c = rest.get(p)
        if c is None:
            continue
        out[k] = c
        for i, a in row.items():
            t = rest.get(i, ZERO) - c * a
            if t.is_zero():
                rest.pop(i, None)
            else:
                rest[i] = t
    return None if rest else out


def braid_subquotient(c: BraidingMatrix, sub_v: Subspace, sub_w: Subspace | None = None,
                      mode: str = "sub") -> Matrix:
    """The braiding induced on (A (x) B) or on the quotient by it.

    ``sub_v`` and ``sub_w`` are submodules of the z-free covers V and W;
    ``mode`` is "sub" for the restriction to A(z) (x) B -> B (x) A(z), or
    "quotient" for the induced map on the quotients. Raises
    FunctorialityError when c does not carry one side into the other.
    """
    V, W = c.source
    sub_w = sub_w if sub_w is not None else _full(W.dim)
    S = tensor_subspace(sub_v, sub_w)
    T = tensor_subspace(sub_w, sub_v)
    s_rows = list(zip(S.pivots(), S.sparse_basis()))
    t_rows = list(zip(T.pivots(), T.sparse_basis()))
    F = c.matrix
    images = []
    for _, b in s_rows:
        img = F.apply(b)
        co = _coords(img, t_rows)
        if co is None:
            raise FunctorialityError("braiding does not preserve the submodule")
        images.append(co)
    if mode == "sub":
        acc = {(i, j): x for j, co in enumerate(images) for i, x in co.items()}
        out = Matrix.from_sparse(acc, T.dim, S.dim)
    elif mode == "quotient":
        s_piv = set(S.pivots())
        t_piv = set(T.pivots())
        s_comp = [i for i in range(S.ambient_dim) if i not in s_piv]
        t_comp = [i for i in range(T.ambient_dim) if i not in t_piv]
        pos = {i: k for k, i in enumerate(t_comp)}
        acc = {}
        for j, col in enumerate(s_comp):
            img = F.apply({col: ONE})
            for p, row in t_rows:
                x = img.get(p)
                if x is None:
                    continue
                for i, a in row.items():
                    t = img.get(i, ZERO) - x * a
                    if t.is_zero():
                        img.pop(i, None)
                    else:
                        img[i] = t
            for i, x in img.items():
                acc[(pos[i], j)] = x
        out = Matrix.from_sparse(acc, len(t_comp), len(s_comp))
    else:
        raise ValueError("mode must be 'sub' or 'quotient'")
    if not generically_invertible(out):
        raise FunctorialityError("induced braiding is not generically invertible")
    return out


# -- symmetric group action ------------------------------------------------------

def _default_offsets(n, spacing):
    return tuple(spacing * i for i in range(n))


def _adjacent(objects, offsets, i):
    """Braiding swapping positions i, i+1, specialized at the offsets' ratio."""
    V, W = objects[i], objects[i + 1]
    c = braid_standard(V, W)
    left = 1
    for d in objects[:i]:
        left *= d.dim
    right = 1
    for d in objects[i + 2:]:
        right *= d.dim
    return _embed(c.at(offsets[i] - offsets[i + 1]), left, right)


def mu_word(word, objects, offsets=None, spacing=DEFAULT_SPACING) -> Matrix:
    """Compose adjacent braidings s_{i} for i in ``word`` (applied left to right).

    Position p carries ``objects[p]`` twisted by ``offsets[p]``; swaps move the
    (object, offset) pairs along, so every intermediate step is an honest
    module isomorphism.
    """
    objs = list(objects)
    offs = list(offsets if offsets is not None else _default_offsets(len(objs), spacing))
    dim = 1
    for d in objs:
        dim *= d.dim
    total = Matrix.identity(dim)
    for i in word:
        if not 0 <= i < len(objs) - 1:
            raise ValueError(f"generator s_{i} out of range")
        total = _adjacent(objs, offs, i) @ total
        objs[i], objs[i + 1] = objs[i + 1], objs[i]
        offs[i], offs[i + 1] = offs[i + 1], offs[i]
    return total


def reduced_word(sigma):
    """A reduced word for sigma; sigma[p] is the target position of the factor at p."""
    sigma = list(sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError("not a permutation")
    cur = list(sigma)  # cur[p] = target of the factor currently at p
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word.append(i)
                changed = True
    return word


def mu_sigma(sigma, objects, offsets=None, spacing=DEFAULT_SPACING, max_factors=4) -> Matrix:
    """The isomorphism carrying the factor at position p to position sigma[p]."""
    if len(objects) > max_factors:
        raise BoundExceeded(f"{len(objects)} factors exceed {max_factors}")
    if len(sigma) != len(objects):
        raise ValueError("permutation and object list differ in length")
    return mu_word(reduced_word(sigma), objects, offsets, spacing)


def permute(sigma, seq):
    out = [None] * len(seq)
    for p, x in enumerate(seq):
        out[sigma[p]] = x
    return out


def compose_perm(sigma, tau):
    """sigma tau: apply tau first."""
    return tuple(sigma[tau[p]] for p in range(len(tau)))


def subsequence_compatibility(sigma_bar, objects, start=0, offsets=None,
                              spacing=DEFAULT_SPACING) -> bool:
    """c_sigma for sigma_bar acting on a contiguous block equals I (x) c_sigma_bar (x) I."""
    n = len(objects)
    m = len(sigma_bar)
    if start < 0 or start + m > n:
        raise ValueError("block out of range")
    offs = tuple(offsets if offsets is not None else _default_offsets(n, spacing))
    sigma = tuple(range(start)) + tuple(start + s for s in sigma_bar) + tuple(range(start + m, n))
    big = mu_sigma(sigma, objects, offs, max_factors=n)
    small = mu_sigma(sigma_bar, objects[start:start + m], offs[start:start + m], max_factors=n)
    left = 1
    for d in objects[:start]:
        left *= d.dim
    right = 1
    for d in objects[start + m:]:
        right *= d.dim
    return big == _embed(small, left, right)


# -- descent ----------------------------------------------------------------------

def _proportionality(a: Matrix, b: Matrix):
    """The scalar s with b == s * a, or None."""
    s = None
    for (ra, rb) in zip(a.rows, b.rows):
        for x, y in zip(ra, rb):
            if x.is_zero() != y.is_zero():
                return None
            if x.is_zero():
                continue
            r = y / x
            if s is None:
                s = r
            elif r != s:
                return None
    return s


def elliptic_descent_report(nV: int, lV: int, nW: int, lW: int, k: int) -> dict:
    """Compare the braiding at z = q^k and z = q^(k+2).

    The two exponents represent the same point of (C*/q^{2Z})^2. Vectors are
    identified by the identity map and the algebra by the parameter shift, so
    the comparison is between the two matrices themselves.
    """
    c = braid_pair(nV, lV, nW, lW, bound=max(PAIR_BOUND, (nV + 1) * (nW + 1)))
    if k in c.singular or k + 2 in c.singular:
        raise PoleError(f"exponent {k} or {k + 2} lies in the singular set {sorted(c.singular)}")
    V = evaluation_module(nV, lV)
    W = evaluation_module(nW, lW)
    reps = {}
    for e in (k, k + 2):
        F = c.at(e)
        Ve = twist(V, e, check=False)
        ok = (intertwines(F, tensor(Ve, W, check=False), tensor(W, Ve, check=False))
              and not determinant(F).is_zero())
        reps[e] = (F, ok)
    # fibres: V(q^(k+2)) is V(q^k) pulled back along the shift by q^2
    fibre_ok = twist(twist(V, k, check=False), 2, check=False).same_action(
        twist(V, k + 2, check=False))
    a, b = reps[k][0], reps[k + 2][0]
    if a == b:
        verdict, scalar = "equal", ONE
    else:
        scalar = _proportionality(a, b)
        verdict = "proportional" if scalar is not None else "unrelated"
    return {
        "pair": [nV, lV, nW, lW],
        "exponents": [k, k + 2],
        "isomorphisms": [reps[k][1], reps[k + 2][1]],
        "fibre_compatible": fibre_ok,
        "verdict": verdict,
        "scalar": None if scalar is None else str(scalar),
        "matrices": {str(e): [[str(x) for x in r] for r in reps[e][0].rows] for e in reps},
    }
