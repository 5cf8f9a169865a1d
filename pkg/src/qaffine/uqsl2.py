"""Finite-dimensional type-1 modules of quantum affine sl(2).

Generators are X_0^+, X_0^-, X_1^+, X_1^-, K_1 with K_0 = K_1^{-1} on every
module (level zero). Coproduct::

    Delta(X_i^+) = X_i^+ (x) 1 + K_i (x) X_i^+
    Delta(X_i^-) = X_i^- (x) K_i^{-1} + 1 (x) X_i^-
    Delta(K_1)   = K_1 (x) K_1

and antipode S(X_i^+) = -K_i^{-1} X_i^+, S(X_i^-) = -X_i^- K_i, S(K) = K^{-1}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import NotTypeOne, RelationError
from .exactfield import ONE, ZERO, Q, Scalar, qbinom, qint, qpow, zpow
from .linalg import Matrix

__all__ = [
    "ModuleRep",
    "StandardDescriptor",
    "QString",
    "evaluation_module",
    "trivial_module",
    "tensor",
    "tensor_all",
    "dual",
    "twist",
    "twist_formal",
    "qstring",
    "generic_position",
    "in_category_C",
    "check_relations",
    "relation_failures",
    "weight_of",
    "DUAL_SIDE",
]

# Offset between the evaluation point a of X_0^+ = a X_1^- and the anchor l
# of the q-string {l, l+2, ..., l+2(n-1)}: a = q^(l + n - 1), i.e. the string
# is centred on a. Fixed by the irreducibility sweep (see tests).
def eval_point_exponent(n: int, l: int) -> int:
    return l + n - 1


# Which antipode realizes V_n(q^m)^* = V_n(q^(m+2)): "left" uses S, "right"
# uses S^{-1}.
DUAL_SIDE = "right"


def weight_of(s: Scalar) -> int:
    """Return w if s == q^w, else raise NotTypeOne."""
    num, den = s.num, s.den
    for p, sign in ((num, 1), (den, -1)):
        d = p.to_dict()
        if len(d) != 1:
            raise NotTypeOne(f"{s} is not a power of q")
    (a, b), c = next(iter(num.to_dict().items()))
    (a2, b2), c2 = next(iter(den.to_dict().items()))
    if b or b2 or c != 1 or c2 != 1:
        raise NotTypeOne(f"{s} is not a power of q")
    return int(a - a2)


class ModuleRep:
    """Matrices of X_0^+, X_0^-, X_1^+, X_1^-, K_1 on a finite-dimensional space."""

    __slots__ = ("dim", "x0p", "x0m", "x1p", "x1m", "k1", "weights", "label", "_k1inv")

    def __init__(self, x0p, x0m, x1p, x1m, k1, label=None, check=True):
        self.dim = k1.nrows
        self.x0p, self.x0m, self.x1p, self.x1m, self.k1 = x0p, x0m, x1p, x1m, k1
        if not k1.is_diagonal():
            raise NotTypeOne("K_1 is not diagonal")
        self.weights = tuple(weight_of(x) for x in k1.diagonal())
        self.label = label
        self._k1inv = None
        if check:
            check_relations(self)

    @property
    def k1inv(self):
        if self._k1inv is None:
            self._k1inv = Matrix.diag([qpow(-w) for w in self.weights])
        return self._k1inv

    @property
    def k0(self):
        return self.k1inv

    def generator(self, name):
        return getattr(self, name)

    def raising_lowering(self):
        return (self.x0p, self.x0m, self.x1p, self.x1m)

    def matrices(self):
        return {"x0p": self.x0p, "x0m": self.x0m, "x1p": self.x1p,
                "x1m": self.x1m, "k1": self.k1}

    def map_entries(self, f, label=None, check=True):
        return ModuleRep(self.x0p.map(f), self.x0m.map(f), self.x1p.map(f),
                         self.x1m.map(f), self.k1, label=label, check=check)

    def same_action(self, other):
        return all(getattr(self, g) == getattr(other, g)
                   for g in ("x0p", "x0m", "x1p", "x1m", "k1"))

    def has_z(self):
        return any(x.has_z() for m in self.raising_lowering() for _, _, x in m.nonzeros())

    def top_weight(self):
        return max(self.weights)

    def weight_indices(self, w):
        return [i for i, x in enumerate(self.weights) if x == w]

    def __repr__(self):
        lab = f" {self.label}" if self.label is not None else ""
        return f"<ModuleRep dim={self.dim}{lab}>"


# -- relations ----------------------------------------------------------------

def _commutator(a, b):
    return a @ b - b @ a


def _serre(xi, xj):
    # sum_{k=0}^{3} (-1)^k [3 k] xi^k xj xi^{3-k}
    p = [Matrix.identity(xi.nrows), xi]
    p.append(xi @ xi)
    p.append(p[2] @ xi)
    total = Matrix.zeros(xi.nrows)
    for k in range(4):
        c = qbinom(3, k) if k % 2 == 0 else -qbinom(3, k)
        total = total + (p[k] @ xj @ p[3 - k]).scale(c)
    return total


def relation_failures(M):
    """Names of the defining relations that fail on M (empty list if none)."""
    fails = []
    wts = M.weights
    # K_i X_j K_i^{-1} = q^{+-a_ij} X_j, read off weights: X_1^+ and X_0^- raise
    # the K_1-weight by 2, X_1^- and X_0^+ lower it by 2.
    for name, shift in (("x1p", 2), ("x1m", -2), ("x0p", -2), ("x0m", 2)):
        if any(wts[i] - wts[j] != shift for i, j, _ in getattr(M, name).nonzeros()):
            fails.append(f"K X_{name} K^-1")
    qq = Q - Q.inv()
    h1 = (M.k1 - M.k1inv).scale(qq.inv())
    if _commutator(M.x1p, M.x1m) != h1:
        fails.append("[X1+,X1-]")
    if _commutator(M.x0p, M.x0m) != -h1:
        fails.append("[X0+,X0-]")
    if not _commutator(M.x0p, M.x1m).is_zero():
        fails.append("[X0+,X1-]")
    if not _commutator(M.x0m, M.x1p).is_zero():
        fails.append("[X0-,X1+]")
    for a, b, name in ((M.x0p, M.x1p, "serre+ (0,1)"), (M.x1p, M.x0p, "serre+ (1,0)"),
                       (M.x0m, M.x1m, "serre- (0,1)"), (M.x1m, M.x0m, "serre- (1,0)")):
        if not _serre(a, b).is_zero():
            fails.append(name)
    return fails


def check_relations(M):
    fails = relation_failures(M)
    if fails:
        raise RelationError(f"relations violated on {M!r}: {', '.join(fails)}")
    return True


# -- descriptors --------------------------------------------------------------

_FACTOR = re.compile(r"\s*V\(\s*(\d+)\s*@\s*(-?\d+)\s*\)\s*")


@dataclass(frozen=True)
class StandardDescriptor:
    """Ordered tensor product of evaluation modules V_{n_i}(q^{l_i})."""

    factors: tuple = ()

    def __post_init__(self):
        fs = tuple((int(n), int(l)) for n, l in self.factors)
        if any(n < 0 for n, _ in fs):
            raise ValueError("evaluation module dimension index must be >= 0")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def parse(cls, text: str):
        text = text.strip()
        if text == "1":
            return cls(())
        parts = text.split("*")
        fs = []
        for p in parts:
            m = _FACTOR.fullmatch(p)
            if not m:
                raise ValueError(f"cannot parse descriptor factor {p!r}")
            fs.append((int(m.group(1)), int(m.group(2))))
        return cls(tuple(fs))

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"V({n}@{l})" for n, l in self.factors)

    def __mul__(self, other):
        return StandardDescriptor(self.factors + other.factors)

    @property
    def dim(self):
        d = 1
        for n, _ in self.factors:
            d *= n + 1
        return d

    def nontrivial(self):
        """Drop V_0 factors (they are the unit object)."""
        return StandardDescriptor(tuple(f for f in self.factors if f[0] > 0))

    def canonical(self):
        """Sorted nontrivial factors; the key used for multiset comparisons."""
        return StandardDescriptor(tuple(sorted(self.nontrivial().factors)))

    def padded(self, k):
        """Pad with V(0@0) up to k factors."""
        fs = self.factors + ((0, 0),) * max(0, k - len(self.factors))
        return StandardDescriptor(fs)

    def strings(self):
        return [qstring(n, l) for n, l in self.factors if n > 0]

    def module(self, check=True):
        return module_of(self, check=check)

    def shifted(self, k):
        return StandardDescriptor(tuple((n, l + k) for n, l in self.factors))


@lru_cache(maxsize=4096)
def module_of(d: StandardDescriptor, check=True):
    if not d.factors:
        return trivial_module(check=check)
    mods = [evaluation_module(n, l) for n, l in d.factors]
    out = tensor_all(mods, check=check)
    out.label = d
    return out


# -- constructions ------------------------------------------------------------

@lru_cache(maxsize=None)
def evaluation_module(n: int, l: int, check: bool = True) -> ModuleRep:
    """V_n(q^l): basis v_0..v_n, K_1 v_j = q^(n-2j) v_j."""
    if n < 0:
        raise ValueError("n must be >= 0")
    d = n + 1
    e, f = {}, {}
    for j in range(1, d):
        e[(j - 1, j)] = qint(n - j + 1)
    for j in range(d - 1):
        f[(j + 1, j)] = qint(j + 1)
    x1p = Matrix.from_sparse(e, d, d)
    x1m = Matrix.from_sparse(f, d, d)
    k1 = Matrix.diag([qpow(n - 2 * j) for j in range(d)])
    a = eval_point_exponent(n, l)
    x0p = x1m.scale(qpow(a))
    x0m = x1p.scale(qpow(-a))
    label = StandardDescriptor(((n, l),))
    return ModuleRep(x0p, x0m, x1p, x1m, k1, label=label, check=check)


def trivial_module(check=True):
    z = Matrix.zeros(1)
    return ModuleRep(z, z, z, z, Matrix.identity(1), label=StandardDescriptor(()), check=check)


def _kron_diag_left(diag, B):
    """diag(d) (x) B for a diagonal left factor given as a list of Scalars."""
    n, m = B.shape
    acc = {}
    bnz = B.nonzeros()
    for i, d in enumerate(diag):
        for k, l, b in bnz:
            acc[(i * n + k, i * m + l)] = d * b
    return Matrix.from_sparse(acc, len(diag) * n, len(diag) * m)


def _kron_diag_right(A, diag):
    m = len(diag)
    acc = {}
    for i, j, a in A.nonzeros():
        for k, d in enumerate(diag):
            acc[(i * m + k, j * m + k)] = a * d
    return Matrix.from_sparse(acc, A.nrows * m, A.ncols * m)


def tensor(M: ModuleRep, N: ModuleRep, check=True) -> ModuleRep:
    """M (x) N through the coproduct."""
    kM = [qpow(w) for w in M.weights]
    kMi = [qpow(-w) for w in M.weights]
    kN = [qpow(w) for w in N.weights]
    kNi = [qpow(-w) for w in N.weights]
    oneM = [ONE] * M.dim
    oneN = [ONE] * N.dim
    # K_0 = K_1^{-1}
    x1p = _kron_diag_right(M.x1p, oneN) + _kron_diag_left(kM, N.x1p)
    x1m = _kron_diag_right(M.x1m, kNi) + _kron_diag_left(oneM, N.x1m)
    x0p = _kron_diag_right(M.x0p, oneN) + _kron_diag_left(kMi, N.x0p)
    x0m = _kron_diag_right(M.x0m, kN) + _kron_diag_left(oneM, N.x0m)
    k1 = Matrix.diag([a * b for a in kM for b in kN])
    label = None
    if M.label is not None and N.label is not None:
        label = M.label * N.label
    return ModuleRep(x0p, x0m, x1p, x1m, k1, label=label, check=check)


def tensor_all(mods, check=True):
    out = mods[0]
    for m in mods[1:]:
        out = tensor(out, m, check=check)
    return out


def dual(M: ModuleRep, side: str | None = None, check=True) -> ModuleRep:
    """Dual module, g acting by the transpose of rho(S(g)) (or S^{-1} on the right side)."""
    side = side or DUAL_SIDE
    k, ki = M.k1, M.k1inv
    if side == "right":
        x1p = -(M.x1p @ ki)
        x1m = -(k @ M.x1m)
        x0p = -(M.x0p @ k)      # K_0^{-1} = K_1
        x0m = -(ki @ M.x0m)     # K_0 = K_1^{-1}
    elif side == "left":
        x1p = -(ki @ M.x1p)
        x1m = -(M.x1m @ k)
        x0p = -(k @ M.x0p)
        x0m = -(M.x0m @ ki)
    else:
        raise ValueError(f"unknown dual side {side!r}")
    return ModuleRep(x0p.T, x0m.T, x1p.T, x1m.T, ki, check=check)


def twist(M: ModuleRep, k: int, check=True) -> ModuleRep:
    """Evaluation-parameter shift: X_0^+ scaled by q^k, X_0^- by q^-k."""
    label = M.label.shifted(k) if M.label is not None else None
    if k == 0:
        return M
    return ModuleRep(M.x0p.scale(qpow(k)), M.x0m.scale(qpow(-k)), M.x1p, M.x1m, M.k1,
                     label=label, check=check)


def twist_formal(M: ModuleRep, check=True) -> ModuleRep:
    """The family M(z): X_0^+ scaled by z, X_0^- by z^{-1}."""
    return ModuleRep(M.x0p.scale(zpow(1)), M.x0m.scale(zpow(-1)), M.x1p, M.x1m, M.k1,
                     label=None, check=check)


# -- q-strings ------------------------------------------------------------------

@dataclass(frozen=True)
class QString:
    base: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("q-string length must be >= 0")

    @property
    def exponents(self):
        return frozenset(range(self.base, self.base + 2 * self.length, 2))

    def __iter__(self):
        return iter(sorted(self.exponents))

    def __len__(self):
        return self.length


def qstring(n: int, l: int) -> QString:
    if n < 0:
        raise ValueError("n must be >= 0")
    return QString(l, n)


def _is_string(s):
    if not s:
        return True
    lo, hi = min(s), max(s)
    return set(range(lo, hi + 1, 2)) == set(s) and (hi - lo) % 2 == 0


def generic_position(s1: QString, s2: QString) -> bool:
    a, b = s1.exponents, s2.exponents
    if not a or not b:
        return True
    if (s1.base - s2.base) % 2:
        return True
    if a <= b or b <= a:
        return True
    return not _is_string(a | b)


def in_category_C(d: StandardDescriptor) -> bool:
    return all(l % 2 == 0 for _, l in d.factors)
