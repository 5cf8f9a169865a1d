"""Submodules, composition series and identification of simple subquotients.

The core routine is :func:`find_proper_submodule`. With ``T`` the top K_1-weight
space of ``M``:

* if some top basis vector generates a proper submodule, return it;
* otherwise ``M`` is generated by ``T`` and the largest submodule meeting the
  top weight trivially, ``R = (closure of the top covectors)^perp``, is
  computed; if nonzero it is returned;
* if ``dim T == 1`` the module is simple;
* otherwise a common eigenvector of the weight-zero algebra acting on ``T``
  generates a proper submodule.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field


from .errors import BoundExceeded, IdentificationError, QAffineError
from .exactfield import CTX, ONE, ZERO, Scalar
from .linalg import (
    Echelon,
    Matrix,
    Subspace,
    _kernel_from_rows,
    _subspace_from_echelon,
    closure_echelon,
    intertwiner_space,
    seeded_intertwiner,
    span,
)
from .uqsl2 import (
    ModuleRep,
    StandardDescriptor,
    generic_position,
    module_of,
    qstring,
)

__all__ = [
    "DEFAULT_BOUND",
    "CompositionSeries",
    "singular_vectors",
    "find_proper_submodule",
    "is_simple",
    "minimal_submodule",
    "minimal_submodules",
    "restrict",
    "quotient",
    "composition_series",
    "decompose_descriptor",
    "identify_simple",
    "strings_of_monomial",
]

DEFAULT_BOUND = 40


def _check_bound(M, bound):
    if M.dim > bound:
        raise BoundExceeded(f"module of dimension {M.dim} exceeds bound {bound}")


# -- restriction and quotient ------------------------------------------------

def _sparse_rows(sub: Subspace):
    return [(p, v) for p, v in zip(sub.pivots(), sub.sparse_basis())]


def restrict(M: ModuleRep, sub: Subspace, check=True) -> ModuleRep:
    """Action of M on a submodule, in the RREF basis of ``sub``."""
    rows = _sparse_rows(sub)
    pos = {p: k for k, (p, _) in enumerate(rows)}
    mats = []
    for g in (M.x0p, M.x0m, M.x1p, M.x1m, M.k1):
        acc = {}
        for j, (_, b) in enumerate(rows):
            img = g.apply(b)
            for p, k in pos.items():
                c = img.get(p)
                if c is not None:
                    acc[(k, j)] = c
            if check:
                rest = dict(img)
                for p, k in pos.items():
                    c = img.get(p)
                    if c is None:
                        continue
                    for i, a in rows[k][1].items():
                        t = rest.get(i, ZERO) - c * a
                        if t.is_zero():
                            rest.pop(i, None)
                        else:
                            rest[i] = t
                if rest:
                    raise QAffineError("subspace is not a submodule")
        mats.append(Matrix.from_sparse(acc, len(rows), len(rows)))
    return ModuleRep(*mats, check=check)


def _reduce_mod(vec, rows):
    v = dict(vec)
    for p, row in rows:
        c = v.get(p)
        if c is None:
            continue
        for i, a in row.items():
            t = v.get(i, ZERO) - c * a
            if t.is_zero():
                v.pop(i, None)
            else:
                v[i] = t
    return v


def quotient(M: ModuleRep, sub: Subspace, check=True):
    """Action on M/sub in the basis of non-pivot coordinate vectors.

    Returns ``(module, complement_indices)``.
    """
    rows = _sparse_rows(sub)
    piv = {p for p, _ in rows}
    comp = [i for i in range(M.dim) if i not in piv]
    pos = {c: k for k, c in enumerate(comp)}
    mats = []
    for g in (M.x0p, M.x0m, M.x1p, M.x1m, M.k1):
        acc = {}
        for j, c in enumerate(comp):
            img = _reduce_mod(g.apply({c: ONE}), rows)
            for i, a in img.items():
                acc[(pos[i], j)] = a
        mats.append(Matrix.from_sparse(acc, len(comp), len(comp)))
    return ModuleRep(*mats, check=check), comp


def _lift_from(sub_rows, coords):
    """Map a vector in the RREF basis coordinates of a subspace into ambient coordinates."""
    out = {}
    for k, c in coords.items():
        for i, a in sub_rows[k][1].items():
            t = out.get(i, ZERO) + c * a
            if t.is_zero():
                out.pop(i, None)
            else:
                out[i] = t
    return out


# -- singular vectors -----------------------------------------------------------

def singular_vectors(M: ModuleRep):
    """For each K_1-weight w (descending), ker(X_1^+) on the weight-w space."""
    out = []
    cols = M.x1p.columns_sparse()
    for w in sorted(set(M.weights), reverse=True):
        idx = M.weight_indices(w)
        ech = Echelon()
        # rows of X_1^+ restricted to the block's columns
        rows = {}
        for local, j in enumerate(idx):
            for i, a in cols[j]:
                rows.setdefault(i, {})[local] = a
        for r in rows.values():
            ech.add(r)
        kern = _kernel_from_rows(ech.reduced_rows(), len(idx))
        vecs = [{idx[k]: c for k, c in v.items()} for v in kern]
        sub = span(vecs, M.dim)
        if sub.dim:
            out.append((w, sub))
    return out


# -- proper submodule search ----------------------------------------------------

def _cover_closure(M, seeds):
    return closure_echelon(M, seeds)


class _Transposed:
    """Duck-typed module whose generators act by transposes (for covector closures)."""

    def __init__(self, M):
        self.weights = M.weights
        self.dim = M.dim
        self._mats = tuple(g.T for g in M.raising_lowering())

    def raising_lowering(self):
        return self._mats


class _Stacked:
    """M^{(+)d}, used to generate the image of the weight-zero algebra on T."""

    def __init__(self, M, d):
        self.d = d
        self.dim = M.dim * d
        self.weights = tuple(w for w in M.weights for _ in range(d))
        self._mats = tuple(g.kron(Matrix.identity(d)) for g in M.raising_lowering())

    def raising_lowering(self):
        return self._mats


def _annihilator(ech: Echelon, n):
    return span(_kernel_from_rows(ech.reduced_rows(), n), n)


def find_proper_submodule(M: ModuleRep):
    """A proper nonzero submodule of M as a Subspace, or None if M is simple."""
    if M.dim <= 1:
        return None
    top = M.weight_indices(M.top_weight())
    for t in top:
        ech = _cover_closure(M, [{t: ONE}])
        if len(ech) < M.dim:
            return _subspace_from_echelon(ech, M.dim)
    tr = _Transposed(M)
    dual_ech = closure_echelon(tr, [{t: ONE} for t in top], mats=tr.raising_lowering())
    if len(dual_ech) < M.dim:
        return _annihilator(dual_ech, M.dim)
    if len(top) == 1:
        return None
    v = _common_top_eigenvector(M, top)
    ech = _cover_closure(M, [v])
    if len(ech) == M.dim:
        raise QAffineError("eigenvector of the top weight algebra generated everything")
    return _subspace_from_echelon(ech, M.dim)


def _top_algebra(M, top):
    d = len(top)
    S = _Stacked(M, d)
    seed = {t * d + c: ONE for c, t in enumerate(top)}
    ech = closure_echelon(S, [seed], mats=S.raising_lowering())
    pos = {t: r for r, t in enumerate(top)}
    mats = []
    for row in ech.rows.values():
        i0 = next(iter(row)) // d
        if M.weights[i0] != M.top_weight():
            continue
        acc = {}
        for idx, val in row.items():
            i, c = divmod(idx, d)
            acc[(pos[i], c)] = val
        mats.append(Matrix.from_sparse(acc, d, d))
    return mats


def _det(m: Matrix) -> Scalar:
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
            if f.is_zero():
                continue
            f = f * inv
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def _rational_eigenvalues(m: Matrix):
    """Eigenvalues of m lying in Q(q), found by factoring det(z I - m)."""
    n = m.nrows
    zI = Matrix.diag([Scalar(CTX.gens()[1])] * n)
    char = _det(zI - m).num
    _, facs = char.factor()
    out = []
    for f, _ in facs:
        d = f.to_dict()
        if max(b for (_, b) in d) != 1:
            continue
        alpha = CTX.from_dict({(a, 0): c for (a, b), c in d.items() if b == 1})
        beta = CTX.from_dict({(a, 0): c for (a, b), c in d.items() if b == 0}) if any(
            b == 0 for (_, b) in d) else CTX.constant(0)
        out.append(Scalar(-beta, alpha))
    return out


def _common_top_eigenvector(M, top):
    if M.has_z():
        raise QAffineError("top-weight eigenvector search needs a z-free module")
    d = len(top)
    mats = _top_algebra(M, top)
    basis = Matrix.identity(d)  # columns span the current common subspace
    for a in mats:
        k = basis.ncols
        # action of a on the current subspace, in its coordinates
        sub = span([basis.column(j) for j in range(k)], d)
        rows = _sparse_rows(sub)
        img = [a.apply(basis.column(j)) for j in range(k)]
        local = Matrix.from_sparse({(i, j): v.get(p, ZERO) for j, v in enumerate(img)
                                    for i, (p, _) in enumerate(rows)
                                    if not v.get(p, ZERO).is_zero()}, k, k)
        if local == Matrix.diag([local.rows[0][0]] * k):
            continue
        lams = _rational_eigenvalues(local)
        if not lams:
            raise QAffineError("weight-zero algebra has no eigenvalue in Q(q)")
        shifted = local - Matrix.diag([lams[0]] * k)
        ech = Echelon()
        for r in shifted.rows:
            ech.add({j: x for j, x in enumerate(r) if not x.is_zero()})
        kern = _kernel_from_rows(ech.reduced_rows(), k)
        cols = [_lift_from([(None, basis.column(j)) for j in range(k)], v) for v in kern]
        basis = Matrix.from_columns(cols, d)
    v = basis.column(0)
    return {top[i]: c for i, c in v.items()}


def is_simple(M: ModuleRep, bound=DEFAULT_BOUND) -> bool:
    _check_bound(M, bound)
    return find_proper_submodule(M) is None


def minimal_submodule(M: ModuleRep, bound=DEFAULT_BOUND) -> Subspace:
    """Some minimal nonzero submodule of M (M itself when simple)."""
    _check_bound(M, bound)
    cur = M
    chain = []  # successive RREF row lists, innermost last
    while True:
        sub = find_proper_submodule(cur)
        if sub is None:
            break
        chain.append(_sparse_rows(sub))
        cur = restrict(cur, sub, check=False)
    vecs = [{i: ONE} for i in range(cur.dim)]
    for rows in reversed(chain):
        vecs = [_lift_from(rows, v) for v in vecs]
    return span(vecs, M.dim)


def _pencil_exceptional(M, v1, v2):
    """Values t in Q(q) where closure(v1 + t v2) is smaller than generically.

    t is realized by the spare variable z; candidates are the Q(q)-roots of the
    pivots and denominators met while closing the generic line, each then
    re-tested exactly.
    """
    zvar = Scalar(CTX.gens()[1])
    seed = dict(v1)
    for i, c in v2.items():
        seed[i] = seed.get(i, ZERO) + zvar * c
    seed = {i: c for i, c in seed.items() if not c.is_zero()}
    ech = closure_echelon(M, [seed])
    polys = []
    for row in ech.rows.values():
        for x in row.values():
            polys.append(x.den)
            polys.append(x.num)
    cands = set()
    for p in polys:
        if p.degrees()[1] == 0:
            continue
        for f, _ in p.factor()[1]:
            d = f.to_dict()
            if max(b for (_, b) in d) != 1:
                continue
            alpha = CTX.from_dict({(a, 0): c for (a, b), c in d.items() if b == 1})
            beta = CTX.from_dict({(a, 0): c for (a, b), c in d.items() if b == 0}) \
                if any(b == 0 for (_, b) in d) else CTX.constant(0)
            cands.add(Scalar(-beta, alpha))
    generic = len(ech)
    out = []
    for t in sorted(cands, key=str):
        vec = dict(v1)
        for i, c in v2.items():
            vec[i] = vec.get(i, ZERO) + t * c
        vec = {i: c for i, c in vec.items() if not c.is_zero()}
        if vec and len(closure_echelon(M, [vec])) < generic:
            out.append(vec)
    return out


def minimal_submodules(M: ModuleRep, bound=DEFAULT_BOUND):
    """Minimal nonzero submodules reachable from singular lines.

    Lines of each singular space are closed one by one; for a singular space of
    dimension >= 2 the pencils v_i + t v_j are searched for exceptional t.
    Every candidate is refined to a simple submodule, then duplicates and
    non-minimal elements are dropped. When an isotypic component of the socle
    has multiplicity > 1 the true set is infinite and representatives are
    returned.
    """
    _check_bound(M, bound)
    cands = []
    for _, sub in singular_vectors(M):
        vecs = sub.sparse_basis()
        lines = list(vecs)
        if len(vecs) >= 2 and not M.has_z():
            for a, b in itertools.combinations(vecs, 2):
                lines.extend(_pencil_exceptional(M, a, b))
        for v in lines:
            ech = closure_echelon(M, [v])
            cands.append(_subspace_from_echelon(ech, M.dim))
    found = []
    for c in cands:
        if not c.is_full():
            inner = minimal_submodule(restrict(M, c, check=False), bound)
            rows = _sparse_rows(c)
            c = span([_lift_from(rows, v) for v in inner.sparse_basis()], M.dim)
        found.append(c)
    uniq = []
    for c in found:
        if c not in uniq:
            uniq.append(c)
    minimal = [c for c in uniq
               if not any(o != c and o.issubset(c) for o in uniq)]
    return sorted(minimal, key=lambda s: (s.dim, s.pivots()))


# -- composition series -----------------------------------------------------------

@dataclass
class CompositionSeries:
    """Ascending filtration 0 = F_0 < ... < F_r = M with simple quotients.

    ``factors`` lists the simple quotients top to bottom, i.e. ``factors[0]``
    is F_r/F_{r-1}. ``modules`` holds the quotient actions in the same order
    and ``isomorphisms[i]`` a nonzero intertwiner from the standard module of
    ``factors[i]`` onto ``modules[i]``.
    """

    factors: list
    filtration: list
    modules: list = field(default_factory=list)
    isomorphisms: list = field(default_factory=list)

    @property
    def ranks(self):
        return [f.dim for f in self.filtration]

    def to_json(self):
        return {"factors": [str(f) for f in self.factors], "filtration_ranks": self.ranks}


def composition_series(M: ModuleRep, bound=DEFAULT_BOUND, identify=True, hint=None):
    _check_bound(M, bound)
    if hint is None:
        hint = M.label
    n = M.dim
    filt = [Subspace(n, ())]
    pieces = []
    current = filt[0]
    while current.dim < n:
        Q, comp = quotient(M, current, check=False) if current.dim else (M, list(range(n)))
        L = minimal_submodule(Q, bound)
        lifted = [{comp[i]: c for i, c in v.items()} for v in L.sparse_basis()]
        nxt = span(current.sparse_basis() + lifted, n)
        pieces.append(restrict(Q, L, check=True))
        filt.append(nxt)
        current = nxt
    pieces.reverse()
    factors, isos = [], []
    if identify:
        for P in pieces:
            d, iso = identify_simple(P, hint=hint, bound=bound, with_witness=True)
            factors.append(d)
            isos.append(iso)
    return CompositionSeries(factors, filt, pieces, isos)


# -- identification ------------------------------------------------------------------

def strings_of_monomial(indices):
    """Split a multiset of Y-indices into q-strings in pairwise general position.

    Greedy: repeatedly take the longest step-2 run starting from the smallest
    remaining index. Returns a list of (length, base).
    """
    pool = sorted(indices)
    out = []
    while pool:
        start = pool[0]
        run = [start]
        pool.remove(start)
        nxt = start + 2
        while nxt in pool:
            run.append(nxt)
            pool.remove(nxt)
            nxt += 2
        out.append((len(run), start))
    return out


def descriptor_for_strings(strings):
    return StandardDescriptor(tuple(sorted((n, l) for n, l in strings)))


def _is_simple_descriptor(d: StandardDescriptor):
    ss = [qstring(n, l) for n, l in d.factors if n > 0]
    return all(generic_position(a, b) for a, b in itertools.combinations(ss, 2))


def _weight_multiset(M):
    return tuple(sorted(M.weights))


def _descriptor_weights(d: StandardDescriptor):
    ws = [0]
    for n, _ in d.factors:
        ws = [a + (n - 2 * j) for a in ws for j in range(n + 1)]
    return tuple(sorted(ws))


def _candidates_from_hint(hint: StandardDescriptor):
    from .qchar import character_of_descriptor, dominant_monomials

    chi = character_of_descriptor(hint)
    seen = set()
    for mono in dominant_monomials(chi):
        idx = [i for i, p in mono for _ in range(p)]
        d = descriptor_for_strings(strings_of_monomial(idx))
        if d not in seen:
            seen.add(d)
            yield d


def _support_exponents(M):
    exps = set()
    for _, _, x in M.x0p.nonzeros():
        for p, s in ((x.num, 1), (x.den, -1)):
            for (a, _), _c in p.to_dict().items():
                exps.add(s * a)
    return exps or {0}


def _window_candidates(dim, weights, lo, hi):
    """All general-position descriptors of the given dimension and weights."""
    def factorizations(d, minimum):
        if d == 1:
            yield ()
            return
        for f in range(minimum, d + 1):
            if d % f == 0:
                for rest in factorizations(d // f, f):
                    yield (f,) + rest

    for dims in factorizations(dim, 2):
        ns = [f - 1 for f in dims]
        if _descriptor_weights(StandardDescriptor(tuple((n, 0) for n in ns))) != weights:
            continue
        for ls in itertools.product(range(lo, hi + 1), repeat=len(ns)):
            fs = tuple(sorted(zip(ns, ls)))
            if fs != tuple(zip(ns, ls)) and len(set(ns)) == len(ns):
                pass
            d = StandardDescriptor(fs)
            if list(zip(ns, ls)) != sorted(zip(ns, ls)):
                continue
            if _is_simple_descriptor(d):
                yield d


def _map_between_simples(C, M):
    """Some nonzero module map C -> M, or None.

    When both top weight spaces are lines a map is fixed by where it sends the
    top vector, so the graph closure replaces the full linear system.
    """
    tc = C.weight_indices(C.top_weight())
    tm = M.weight_indices(M.top_weight())
    if C.top_weight() != M.top_weight():
        return None
    if len(tc) == 1 and len(tm) == 1:
        return seeded_intertwiner(C, M, {tc[0]: ONE}, {tm[0]: ONE})
    maps = intertwiner_space(C, M)
    return maps[0] if maps else None


def identify_simple(M: ModuleRep, hint=None, window=None, bound=DEFAULT_BOUND,
                    with_witness=False):
    """Standard descriptor of a simple module M, certified by an intertwiner.

    Candidates come first from the dominant monomials of the q-character of
    ``hint`` (a standard module containing M as a subquotient), then from an
    exhaustive window of evaluation exponents around the q-power support of
    M's action. The first candidate admitting a nonzero intertwiner onto M is
    returned; by simplicity that intertwiner is an isomorphism.
    """
    _check_bound(M, bound)
    wts = _weight_multiset(M)
    if M.dim == 1:
        triv = StandardDescriptor(())
        if wts == (0,) and M.x0p.is_zero() and M.x1p.is_zero():
            return (triv, Matrix.identity(1)) if with_witness else triv
    tried = set()

    def attempt(d):
        if d in tried:
            return None
        tried.add(d)
        if d.dim != M.dim or _descriptor_weights(d) != wts:
            return None
        C = module_of(d, check=False)
        return _map_between_simples(C, M)

    if hint is not None:
        for d in _candidates_from_hint(hint):
            f = attempt(d)
            if f is not None:
                return (d, f) if with_witness else d
    exps = _support_exponents(M)
    if hint is not None:
        exps |= {l for _, l in hint.factors}
    w = window if window is not None else 2 * M.dim
    lo, hi = min(exps) - w, max(exps) + w
    for d in _window_candidates(M.dim, wts, lo, hi):
        f = attempt(d)
        if f is not None:
            return (d, f) if with_witness else d
    raise IdentificationError(
        f"no standard module with exponents in [{lo}, {hi}] matches {M!r}")


@lru_cache(maxsize=None)
def decompose_descriptor(d: StandardDescriptor, bound: int = DEFAULT_BOUND) -> CompositionSeries:
    """Composition series of the standard module named by ``d`` (memoized)."""
    return composition_series(module_of(d, check=False), bound=bound, hint=d)
