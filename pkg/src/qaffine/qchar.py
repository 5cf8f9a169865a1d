"""q-characters of sl(2) type and classes in the Grothendieck ring.

A monomial in the variables Y_k (k an exponent of q) is stored as a sorted
tuple of ``(k, power)`` pairs with nonzero powers. Characters and K_0 classes
are immutable sparse integer combinations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .uqsl2 import ModuleRep, StandardDescriptor

__all__ = [
    "Monomial",
    "mono_mul",
    "QCharacter",
    "qchar_evaluation",
    "qchar_product",
    "character_of_descriptor",
    "specialize",
    "weight_generating_function",
    "dominant_term",
    "dominant_monomials",
    "K0Class",
    "k0_generator",
    "k0_evaluation",
    "k0_class",
    "in_A2",
]

Monomial = tuple


def _mono(counts) -> Monomial:
    return tuple(sorted((k, p) for k, p in counts.items() if p))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    c = Counter(dict(a))
    for k, p in b:
        c[k] += p
    return _mono(c)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(f"Y{k}" if p == 1 else f"Y{k}^{p}" for k, p in m)


@dataclass(frozen=True)
class QCharacter:
    terms: tuple  # sorted tuple of (Monomial, coefficient)

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted((m, c) for m, c in d.items() if c)))

    def as_dict(self):
        return dict(self.terms)

    def __add__(self, other):
        d = Counter(self.as_dict())
        for m, c in other.terms:
            d[m] += c
        return QCharacter.from_dict(d)

    def __sub__(self, other):
        d = Counter(self.as_dict())
        for m, c in other.terms:
            d[m] -= c
        return QCharacter.from_dict(d)

    def __mul__(self, other):
        return qchar_product(self, other)

    def __len__(self):
        return len(self.terms)

    def is_positive(self):
        return all(c > 0 for _, c in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            s = mono_str(m)
            parts.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(parts)

    def to_json(self):
        return [[[list(p) for p in m], c] for m, c in self.terms]


ONE_CHAR = QCharacter((((), 1),))


@lru_cache(maxsize=None)
def qchar_evaluation(n: int, l: int) -> QCharacter:
    """Ladder formula: the i-th term has n-i raising letters then i lowered ones."""
    if n < 0:
        raise ValueError("n must be >= 0")
    d = {}
    for i in range(n + 1):
        c = Counter()
        for k in range(1, n - i + 1):
            c[l + 2 * (k - 1)] += 1
        for k in range(n - i + 1, n + 1):
            c[l + 2 * k] -= 1
        m = _mono(c)
        d[m] = d.get(m, 0) + 1
    return QCharacter.from_dict(d)


def qchar_product(a: QCharacter, b: QCharacter) -> QCharacter:
    d = Counter()
    for ma, ca in a.terms:
        for mb, cb in b.terms:
            d[mono_mul(ma, mb)] += ca * cb
    return QCharacter.from_dict(d)


def character_of_descriptor(d: StandardDescriptor) -> QCharacter:
    out = ONE_CHAR
    for n, l in d.factors:
        out = qchar_product(out, qchar_evaluation(n, l))
    return out


def specialize(a: QCharacter):
    """Y_k -> y. Returns a Laurent polynomial as {exponent: coefficient}."""
    d = Counter()
    for m, c in a.terms:
        d[sum(p for _, p in m)] += c
    return {e: c for e, c in sorted(d.items()) if c}


def weight_generating_function(M: ModuleRep):
    return dict(sorted(Counter(M.weights).items()))


def _is_dominant(m: Monomial):
    return all(p > 0 for _, p in m)


def dominant_monomials(a: QCharacter):
    return [m for m, _ in a.terms if _is_dominant(m)]


def dominant_term(a: QCharacter) -> Monomial:
    doms = dominant_monomials(a)
    if len(doms) != 1:
        raise ValueError(f"expected one dominant monomial, found {len(doms)}")
    return doms[0]


# -- Grothendieck ring -----------------------------------------------------------

@dataclass(frozen=True)
class K0Class:
    """Integer polynomial in t_k; terms keyed by sorted index tuples."""

    terms: tuple

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted((tuple(sorted(m)), c) for m, c in d.items() if c)))

    def as_dict(self):
        return dict(self.terms)

    def __add__(self, other):
        d = Counter(self.as_dict())
        for m, c in other.terms:
            d[m] += c
        return K0Class.from_dict(d)

    def __sub__(self, other):
        d = Counter(self.as_dict())
        for m, c in other.terms:
            d[m] -= c
        return K0Class.from_dict(d)

    def __mul__(self, other):
        d = Counter()
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                d[tuple(sorted(ma + mb))] += ca * cb
        return K0Class.from_dict(d)

    def indices(self):
        return {k for m, _ in self.terms for k in m}

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in sorted(self.terms, key=lambda t: (-len(t[0]), t[0])):
            mono = "*".join(f"t{k}" for k in m)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            out.append(("- " if c < 0 else "+ ") + s)
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    def to_json(self):
        return [[list(m), c] for m, c in self.terms]


K0_ONE = K0Class((((), 1),))
K0_ZERO = K0Class(())


def k0_generator(k: int) -> K0Class:
    return K0Class((((k,), 1),))


@lru_cache(maxsize=None)
def k0_evaluation(n: int, l: int) -> K0Class:
    """[V_n(q^l)] = t_l [V_{n-1}(q^{l+2})] - [V_{n-2}(q^{l+4})]."""
    if n == 0:
        return K0_ONE
    if n == 1:
        return k0_generator(l)
    return k0_generator(l) * k0_evaluation(n - 1, l + 2) - k0_evaluation(n - 2, l + 4)


def _k0_of_descriptor(d: StandardDescriptor) -> K0Class:
    out = K0_ONE
    for n, l in d.factors:
        out = out * k0_evaluation(n, l)
    return out


def k0_class(obj, bound=None) -> K0Class:
    """Class of a descriptor (multiplicatively) or of a module (via its composition factors)."""
    if isinstance(obj, StandardDescriptor):
        return _k0_of_descriptor(obj)
    if isinstance(obj, ModuleRep):
        from .repdecomp import DEFAULT_BOUND, composition_series

        cs = composition_series(obj, bound=bound or DEFAULT_BOUND)
        out = K0_ZERO
        for f in cs.factors:
            out = out + _k0_of_descriptor(f)
        return out
    raise TypeError("expected a StandardDescriptor or ModuleRep")


def in_A2(c: K0Class) -> bool:
    return all(k % 2 == 0 for k in c.indices())
