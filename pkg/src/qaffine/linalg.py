"""Exact linear algebra over the Scalar field.

Matrices are dense grids of canonical Scalars; products skip zero entries,
which keeps the very sparse generator actions of tensor products cheap.
Vectors passed around internally are sparse ``{index: Scalar}`` dicts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, NotTypeOne
from .exactfield import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Matrix",
    "Subspace",
    "Echelon",
    "rref",
    "kernel",
    "solve",
    "span",
    "closure",
    "intertwiner_space",
    "seeded_intertwiner",
    "GENERATORS",
]

GENERATORS = ("x0p", "x0m", "x1p", "x1m", "k1")


class Matrix:
    """Immutable dense matrix of Scalars."""

    __slots__ = ("rows", "nrows", "ncols", "_cols", "_nz")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        self.rows = rows
        self.nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix")
        self.ncols = ncols
        self._cols = None
        self._nz = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, n, m=None):
        m = n if m is None else m
        return cls._raw(tuple((ZERO,) * m for _ in range(n)), n, m)

    @classmethod
    def identity(cls, n):
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, entries):
        entries = [as_scalar(e) for e in entries]
        n = len(entries)
        rows = []
        for i, e in enumerate(entries):
            r = [ZERO] * n
            r[i] = e
            rows.append(tuple(r))
        return cls._raw(tuple(rows), n, n)

    @classmethod
    def from_sparse(cls, entries, n, m):
        grid = [[ZERO] * m for _ in range(n)]
        for (i, j), v in entries.items():
            if not v.is_zero():
                grid[i][j] = v
        return cls._raw(tuple(tuple(r) for r in grid), n, m)

    @classmethod
    def from_columns(cls, cols, n):
        m = len(cols)
        grid = [[ZERO] * m for _ in range(n)]
        for j, c in enumerate(cols):
            for i, v in _items(c):
                grid[i][j] = v
        return cls._raw(tuple(tuple(r) for r in grid), n, m)

    @classmethod
    def _raw(cls, rows, n, m):
        self = object.__new__(cls)
        self.rows = rows
        self.nrows = n
        self.ncols = m
        self._cols = None
        self._nz = None
        return self

    # -- sparse views -----------------------------------------------------
    def nonzeros(self):
        """Row-major list of (i, j, value) for nonzero entries (cached)."""
        if self._nz is None:
            self._nz = [(i, j, v) for i, r in enumerate(self.rows)
                        for j, v in enumerate(r) if not v.is_zero()]
        return self._nz

    def columns_sparse(self):
        """For each column j, the list of (i, value) with nonzero value."""
        if self._cols is None:
            cols = [[] for _ in range(self.ncols)]
            for i, j, v in self.nonzeros():
                cols[j].append((i, v))
            self._cols = cols
        return self._cols

    def apply(self, vec):
        """Matrix times a sparse dict vector, returning a sparse dict."""
        cols = self.columns_sparse()
        out = {}
        for j, x in vec.items():
            for i, a in cols[j]:
                t = a * x
                if i in out:
                    s = out[i] + t
                    if s.is_zero():
                        del out[i]
                    else:
                        out[i] = s
                else:
                    out[i] = t
        return out

    def apply_dense(self, vec):
        out = self.apply({i: as_scalar(x) for i, x in enumerate(vec) if as_scalar(x)})
        return tuple(out.get(i, ZERO) for i in range(self.nrows))

    # -- algebra ----------------------------------------------------------
    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        acc = {}
        ocols = other.nonzeros()
        by_row = {}
        for k, j, b in ocols:
            by_row.setdefault(k, []).append((j, b))
        for i, k, a in self.nonzeros():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                t = a * b
                acc[key] = acc[key] + t if key in acc else t
        return Matrix.from_sparse(acc, self.nrows, other.ncols)

    def __add__(self, other):
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)),
                           self.nrows, self.ncols)

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)),
                           self.nrows, self.ncols)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c):
        c = as_scalar(c)
        return self.map(lambda x: x * c)

    def map(self, f):
        return Matrix._raw(tuple(tuple(ZERO if x.is_zero() else f(x) for x in r)
                                 for r in self.rows), self.nrows, self.ncols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, k):
        if self.nrows != self.ncols:
            raise DimensionError("power of non-square matrix")
        out = Matrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    @property
    def T(self):
        return Matrix._raw(tuple(zip(*self.rows)) if self.nrows else (),
                           self.ncols, self.nrows) if self.nrows else Matrix.zeros(self.ncols, 0)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def kron(self, other):
        n, m = other.shape
        acc = {}
        onz = other.nonzeros()
        for i, j, a in self.nonzeros():
            for k, l, b in onz:
                acc[(i * n + k, j * m + l)] = a * b
        return Matrix.from_sparse(acc, self.nrows * n, self.ncols * m)

    def is_zero(self):
        return not self.nonzeros()

    def is_identity(self):
        return self.nrows == self.ncols and all(
            (x.is_one() if i == j else x.is_zero())
            for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def submatrix(self, rows, cols):
        return Matrix._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows),
                           len(rows), len(cols))

    def column(self, j):
        return {i: v for i, v in self.columns_sparse()[j]}

    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(min(self.shape)))

    def is_diagonal(self):
        return all(i == j for i, j, _ in self.nonzeros())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def to_strings(self):
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        body = ";\n ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix([{body}])"


def _items(vec):
    if isinstance(vec, dict):
        return vec.items()
    return [(i, as_scalar(x)) for i, x in enumerate(vec) if not as_scalar(x).is_zero()]


def _as_sparse(vec):
    return {i: v for i, v in _items(vec)}


class Echelon:
    """Incrementally maintained semi-echelon basis of sparse vectors.

    Each stored row has leading entry 1 at its pivot. ``add`` reduces a new
    vector against the rows (pivots in increasing order) and keeps the
    remainder if nonzero.
    """

    __slots__ = ("rows", "_order")

    def __init__(self):
        self.rows = {}
        self._order = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        v = dict(vec)
        for p in self._order:
            c = v.get(p)
            if c is None:
                continue
            for j, a in self.rows[p].items():
                t = v.get(j, ZERO) - c * a
                if t.is_zero():
                    v.pop(j, None)
                else:
                    v[j] = t
        return v

    def add(self, vec):
        """Insert vec; return the normalized new row or None if dependent."""
        v = self.reduce(vec)
        if not v:
            return None
        p = min(v)
        inv = v[p].inv()
        row = {j: a * inv for j, a in v.items()}
        row[p] = ONE
        self.rows[p] = row
        self._order.append(p)
        self._order.sort()
        return row

    def contains(self, vec):
        return not self.reduce(vec)

    def reduced_rows(self):
        """Fully reduced (RREF) rows, sorted by pivot."""
        order = sorted(self.rows)
        rows = {p: dict(self.rows[p]) for p in order}
        for p in reversed(order):
            rp = rows[p]
            for p2 in order:
                if p2 >= p:
                    break
                r2 = rows[p2]
                c = r2.get(p)
                if c is None:
                    continue
                for j, a in rp.items():
                    t = r2.get(j, ZERO) - c * a
                    if t.is_zero():
                        r2.pop(j, None)
                    else:
                        r2[j] = t
        return [(p, rows[p]) for p in order]


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q(q,z)^n given by an RREF basis (canonical)."""

    ambient_dim: int
    basis: tuple  # tuple of dense tuples of Scalars

    @property
    def dim(self):
        return len(self.basis)

    @property
    def rank(self):
        return len(self.basis)

    def sparse_basis(self):
        return [{i: x for i, x in enumerate(b) if not x.is_zero()} for b in self.basis]

    def pivots(self):
        return tuple(next(i for i, x in enumerate(b) if not x.is_zero()) for b in self.basis)

    def contains(self, vec):
        e = _echelon_of(self)
        return e.contains(_as_sparse(vec))

    def issubset(self, other):
        e = _echelon_of(other)
        return all(e.contains(v) for v in self.sparse_basis())

    def is_full(self):
        return self.dim == self.ambient_dim

    def matrix(self):
        """Basis vectors as columns."""
        return Matrix.from_columns(self.sparse_basis(), self.ambient_dim)


def _echelon_of(sub):
    e = Echelon()
    for v in sub.sparse_basis():
        e.add(v)
    return e


def span(vectors, n):
    e = Echelon()
    for v in vectors:
        e.add(_as_sparse(v))
    return _subspace_from_echelon(e, n)


def _subspace_from_echelon(e, n):
    basis = []
    for _, row in e.reduced_rows():
        basis.append(tuple(row.get(i, ZERO) for i in range(n)))
    return Subspace(n, tuple(basis))


def rref(m: Matrix):
    """Reduced row-echelon form and rank (first nonzero pivot, column order)."""
    e = Echelon()
    for r in m.rows:
        e.add(_as_sparse(r))
    rows = [tuple(row.get(j, ZERO) for j in range(m.ncols)) for _, row in e.reduced_rows()]
    rank = len(rows)
    rows += [(ZERO,) * m.ncols] * (m.nrows - rank)
    return Matrix._raw(tuple(rows), m.nrows, m.ncols), rank


def _kernel_from_rows(red_rows, ncols):
    pivots = {p for p, _ in red_rows}
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = {f: ONE}
        for p, row in red_rows:
            c = row.get(f)
            if c is not None:
                v[p] = -c
        basis.append(v)
    return basis


def kernel(m: Matrix) -> Subspace:
    e = Echelon()
    for r in m.rows:
        e.add(_as_sparse(r))
    vecs = _kernel_from_rows(e.reduced_rows(), m.ncols)
    return span(vecs, m.ncols)


def solve(m: Matrix, rhs):
    """Some x with m x = rhs, or None when inconsistent."""
    rhs = [as_scalar(x) for x in rhs]
    if len(rhs) != m.nrows:
        raise DimensionError("right-hand side length mismatch")
    n = m.ncols
    e = Echelon()
    for r, b in zip(m.rows, rhs):
        v = _as_sparse(r)
        if not b.is_zero():
            v[n] = b
        e.add(v)
    red = e.reduced_rows()
    if any(p == n for p, _ in red):
        return None
    x = [ZERO] * n
    for p, row in red:
        x[p] = row.get(n, ZERO)
    return tuple(x)


# -- module-level helpers (duck-typed on ModuleRep) -------------------------

def _weight_blocks(weights):
    blocks = {}
    for i, w in enumerate(weights):
        blocks.setdefault(w, []).append(i)
    return blocks


def closure(M, seed) -> Subspace:
    """Smallest generator-stable subspace containing seed.

    The seed is split into K_1-weight components first; this is legitimate
    because K_1 is among the generators and acts diagonally.
    """
    vecs = seed if isinstance(seed, list) else [seed]
    ech = closure_echelon(M, [_as_sparse(v) for v in vecs])
    return _subspace_from_echelon(ech, M.dim)


def closure_echelon(M, seeds, mats=None):
    weights = M.weights
    if not any(seeds):
        raise ValueError("closure of the zero vector")
    per_weight = {}
    queue = []

    def push(v):
        w = weights[next(iter(v))]
        e = per_weight.setdefault(w, Echelon())
        row = e.add(v)
        if row is not None:
            queue.append(row)

    for s in seeds:
        comps = {}
        for i, x in s.items():
            comps.setdefault(weights[i], {})[i] = x
        for c in comps.values():
            push(c)
    mats = mats if mats is not None else M.raising_lowering()
    while queue:
        v = queue.pop()
        for g in mats:
            u = g.apply(v)
            if u:
                push(u)
    total = Echelon()
    for e in per_weight.values():
        for row in e.rows.values():
            total.rows[min(row)] = row
            total._order.append(min(row))
    total._order.sort()
    return total


def intertwiner_space(M, N, generators=GENERATORS):
    """Basis of {F : F rho_M(g) = rho_N(g) F for every generator g}.

    F is forced block-diagonal with respect to K_1-weights before elimination.
    """
    for mod in (M, N):
        if not mod.k1.is_diagonal():
            raise NotTypeOne("K_1 must act diagonally")
    bm = _weight_blocks(M.weights)
    bn = _weight_blocks(N.weights)
    unknowns = {}
    for w, cols in bm.items():
        for i in bn.get(w, ()):
            for j in cols:
                unknowns[(i, j)] = len(unknowns)
    if not unknowns:
        return []
    ech = Echelon()
    for g in generators:
        if g == "k1":
            continue
        A = getattr(M, g)
        B = getattr(N, g)
        eqs = {}
        # (F A)_{ik} = sum_j F_ij A_jk
        for j, k, a in A.nonzeros():
            for i in bn.get(M.weights[j], ()):
                u = unknowns[(i, j)]
                row = eqs.setdefault((i, k), {})
                row[u] = row.get(u, ZERO) + a
        # -(B F)_{ik} = -sum_j B_ij F_jk
        for i, j, b in B.nonzeros():
            for k in bm.get(N.weights[j], ()):
                u = unknowns[(j, k)]
                row = eqs.setdefault((i, k), {})
                row[u] = row.get(u, ZERO) - b
        for row in eqs.values():
            row = {u: c for u, c in row.items() if not c.is_zero()}
            if row:
                ech.add(row)
    sols = _kernel_from_rows(ech.reduced_rows(), len(unknowns))
    keys = list(unknowns)
    out = []
    for s in span(sols, len(unknowns)).sparse_basis():
        out.append(Matrix.from_sparse({keys[u]: c for u, c in s.items()}, N.dim, M.dim))
    return out


class _GraphModule:
    """C (+) M with block-diagonal generator action, for graph closures."""

    def __init__(self, C, M):
        self.dim = C.dim + M.dim
        self.weights = tuple(C.weights) + tuple(M.weights)
        self._mats = tuple(
            Matrix.from_sparse(
                {**{(i, j): a for i, j, a in gc.nonzeros()},
                 **{(C.dim + i, C.dim + j): a for i, j, a in gm.nonzeros()}},
                self.dim, self.dim)
            for gc, gm in zip(C.raising_lowering(), M.raising_lowering()))

    def raising_lowering(self):
        return self._mats


def seeded_intertwiner(C, M, seed_c, seed_m):
    """The module map F: C -> M with F(seed_c) = seed_m, or None if none exists.

    Requires seed_c to generate C. The closure of the pair (seed_c, seed_m) in
    C (+) M is the graph of F exactly when it meets 0 (+) M trivially.
    """
    if seed_c and seed_m:
        wc = {C.weights[i] for i in seed_c}
        wm = {M.weights[i] for i in seed_m}
        if len(wc) != 1 or wc != wm:
            return None
    G = _GraphModule(C, M)
    seed = dict(_as_sparse(seed_c))
    seed.update({C.dim + i: x for i, x in _as_sparse(seed_m).items()})
    ech = closure_echelon(G, [seed], mats=G.raising_lowering())
    if any(p >= C.dim for p in ech.rows):
        return None
    if len(ech) != C.dim:
        raise ValueError("seed does not generate the source module")
    acc = {}
    for p, row in ech.reduced_rows():
        for i, x in row.items():
            if i >= C.dim:
                acc[(i - C.dim, p)] = x
    return Matrix.from_sparse(acc, M.dim, C.dim)
