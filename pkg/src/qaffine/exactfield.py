"""Exact rational functions in the two commuting variables q and z.

A :class:`Scalar` is a reduced fraction of integer polynomials in ``(q, z)``.
Negative powers of ``q`` or ``z`` live in the denominator, so Laurent
polynomials need no separate type. Every Scalar is kept in canonical form:
numerator and denominator coprime, and the denominator's leading coefficient
(lex order, ``q`` before ``z``) positive. Equal scalars are therefore
structurally identical and render to the same string.
"""

from __future__ import annotations

import re
from functools import lru_cache

import flint

from .errors import PoleError, ScalarZeroDivision

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "Q",
    "Z",
    "qpow",
    "zpow",
    "qint",
    "qbinom",
    "evaluate_z",
    "invert_z",
    "qfactorial",
    "qpower_roots",
    "parse_scalar",
    "as_scalar",
]

CTX = flint.fmpz_mpoly_ctx.get(("q", "z"), "lex")
_Q, _Z = CTX.gens()
_ONE = CTX.constant(1)
_ZERO = CTX.constant(0)


def _poly_key(p):
    return tuple(sorted(p.to_dict().items()))


class Scalar:
    """Element of Q(q, z), immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, reduced=False):
        if isinstance(num, int):
            num = CTX.constant(num)
        if den is None:
            den = _ONE
        elif isinstance(den, int):
            den = CTX.constant(den)
        if den.is_zero():
            raise ScalarZeroDivision("zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    def has_z(self):
        return self.num.degrees()[1] > 0 or self.den.degrees()[1] > 0

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = as_scalar(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            return Scalar(self.num * other.den + other.num * self.den,
                          self.den * other.den, reduced=True)._fix_sign_only()
        a = self.den / g
        b = other.den / g
        return Scalar(self.num * b + other.num * a, a * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        other = as_scalar(other)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num * other.num, _ONE, reduced=True)
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num, other.den) if g1.is_one() else (self.num / g1, other.den / g1)
        n2, d1 = (other.num, self.den) if g2.is_one() else (other.num / g2, self.den / g2)
        return Scalar(n1 * n2, d1 * d2, reduced=True)._fix_sign_only()

    __rmul__ = __mul__

    def inv(self):
        if self.num.is_zero():
            raise ScalarZeroDivision("inverse of zero scalar")
        return Scalar(self.den, self.num, reduced=True)._fix_sign_only()

    def __truediv__(self, other):
        return self * as_scalar(other).inv()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inv()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        return Scalar(self.num ** n, self.den ** n, reduced=True)

    def _fix_sign_only(self):
        if self.den.leading_coefficient() < 0:
            self.num = -self.num
            self.den = -self.den
        return self

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((_poly_key(self.num), _poly_key(self.den)))
        return self._hash

    def normalized(self):
        """Re-run canonicalization (idempotent on every Scalar)."""
        return Scalar(self.num, self.den)

    # -- rendering --------------------------------------------------------
    def __str__(self):
        n = _render_poly(self.num)
        if self.den.is_one():
            return n
        d = _render_poly(self.den)
        if len(self.num.to_dict()) > 1:
            n = f"({n})"
        if len(self.den.to_dict()) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _reduce(num, den):
    if num.is_zero():
        return _ZERO, _ONE
    g = num.gcd(den)
    if not g.is_one():
        num = num / g
        den = den / g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


def _render_monomial(a, b):
    parts = []
    if a:
        parts.append("q" if a == 1 else f"q^{a}")
    if b:
        parts.append("z" if b == 1 else f"z^{b}")
    return "*".join(parts)


def _render_poly(p):
    terms = sorted(p.to_dict().items(), reverse=True)
    if not terms:
        return "0"
    out = []
    for i, ((a, b), c) in enumerate(terms):
        c = int(c)
        mono = _render_monomial(a, b)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(sign + body)
    return "".join(out)


def as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar(CTX.constant(x), _ONE, reduced=True)
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


ZERO = Scalar(_ZERO, _ONE, reduced=True)
ONE = Scalar(_ONE, _ONE, reduced=True)
Q = Scalar(_Q, _ONE, reduced=True)
Z = Scalar(_Z, _ONE, reduced=True)


@lru_cache(maxsize=None)
def qpow(k: int) -> Scalar:
    """q^k for any integer k."""
    if k >= 0:
        return Scalar(_Q ** k, _ONE, reduced=True)
    return Scalar(_ONE, _Q ** (-k), reduced=True)


@lru_cache(maxsize=None)
def zpow(k: int) -> Scalar:
    if k >= 0:
        return Scalar(_Z ** k, _ONE, reduced=True)
    return Scalar(_ONE, _Z ** (-k), reduced=True)


@lru_cache(maxsize=None)
def qint(n: int) -> Scalar:
    """Symmetric q-integer [n] = (q^n - q^-n)/(q - q^-1)."""
    if n == 0:
        return ZERO
    if n < 0:
        return -qint(-n)
    # q^{n-1} + q^{n-3} + ... + q^{1-n}
    num = sum((_Q ** (2 * k) for k in range(n)), _ZERO)
    return Scalar(num, _Q ** (n - 1))


@lru_cache(maxsize=None)
def qfactorial(n: int) -> Scalar:
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> Scalar:
    """Gaussian binomial built from symmetric q-integers."""
    if not 0 <= k <= n:
        raise ValueError(f"qbinom needs 0 <= k <= n, got n={n}, k={k}")
    return qfactorial(n) / (qfactorial(k) * qfactorial(n - k))


def _subs_z_qpow(p, k):
    """p(q, q^k) as a Scalar."""
    if k >= 0:
        return Scalar(p.compose(_Q, _Q ** k), _ONE, reduced=True)
    m = -k
    dz = p.degrees()[1]
    # q^{m*dz} * p(q, q^-m) is a polynomial
    acc = _ZERO
    for (a, b), c in p.to_dict().items():
        acc += int(c) * _Q ** (a + m * (dz - b))
    return Scalar(acc, _Q ** (m * dz))


def evaluate_z(s: Scalar, k: int) -> Scalar:
    """Substitute z := q^k; raise PoleError if the denominator vanishes."""
    s = as_scalar(s)
    if not s.has_z():
        return s
    den = _subs_z_qpow(s.den, k)
    if den.is_zero():
        raise PoleError(f"pole of {s} at z = q^{k}")
    return _subs_z_qpow(s.num, k) / den


def _reverse_z(p, d):
    """z^d p(q, 1/z) for d >= z-degree of p."""
    return CTX.from_dict({(a, d - b): c for (a, b), c in p.to_dict().items()})


def invert_z(s: Scalar) -> Scalar:
    """Substitute z := 1/z."""
    s = as_scalar(s)
    if not s.has_z():
        return s
    dn, dd = s.num.degrees()[1], s.den.degrees()[1]
    d = max(dn, dd)
    return Scalar(_reverse_z(s.num, d), _reverse_z(s.den, d))


def _root_factor(k):
    return _Z - _Q ** k if k >= 0 else _Q ** (-k) * _Z - _ONE


def qpower_roots(p, bound: int):
    """Integers k with |k| <= bound such that z = q^k is a root of p.

    ``p`` is a Scalar whose denominator is free of z (or a raw polynomial).
    Returns ``(roots, residue)``; ``roots`` maps each k to its multiplicity and
    ``residue`` is true when a factor involving z survives after dividing out
    every found ``z - q^k`` (powers of z itself are units and ignored).
    """
    if isinstance(p, Scalar):
        if p.den.degrees()[1] > 0:
            raise ValueError("qpower_roots expects a polynomial in z")
        poly = p.num
    else:
        poly = p
    if poly.is_zero():
        raise ValueError("qpower_roots of the zero polynomial")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    poly = _strip_z_power(poly)
    roots = {}
    residue = False
    if poly.degrees()[1] == 0:
        return roots, residue
    _, factors = poly.factor()
    for f, mult in factors:
        if f.degrees()[1] == 0:
            continue
        k = _qpower_root_of_factor(f)
        if k is None or abs(k) > bound:
            residue = True
        else:
            roots[k] = roots.get(k, 0) + mult
    return roots, residue


def _qpower_root_of_factor(f):
    """k if the irreducible f is a unit multiple of z - q^k, else None."""
    terms = f.to_dict()
    if len(terms) != 2:
        return None
    by_z = {int(b): (int(a), int(c)) for (a, b), c in terms.items()}
    if set(by_z) != {0, 1}:
        return None
    (a1, c1), (a0, c0) = by_z[1], by_z[0]
    if c0 != -c1:
        return None
    return a0 - a1


def _strip_z_power(p):
    d = p.to_dict()
    mz = min(b for (_, b) in d)
    if mz == 0:
        return p
    return CTX.from_dict({(a, b - mz): c for (a, b), c in d.items()})


def poly_z_degree(s: Scalar) -> int:
    return max(s.num.degrees()[1], s.den.degrees()[1])


# -- parsing ----------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(\d+)|([qz])|(.))")


def parse_scalar(text: str) -> Scalar:
    """Parse the plain-text rendering back into a Scalar.

    Accepts integers, ``q``, ``z``, ``+ - * / ^`` and parentheses; exponents
    may be negative integers.
    """
    tokens = []
    for num, var, op in _TOKEN.findall(text):
        if num:
            tokens.append(("n", int(num)))
        elif var:
            tokens.append(("v", var))
        elif op.strip():
            tokens.append(("o", op))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        val = term()
        while peek() in (("o", "+"), ("o", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while peek() in (("o", "*"), ("o", "/")):
            op = take()[1]
            rhs = factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor():
        if peek() == ("o", "-"):
            take()
            return -factor()
        if peek() == ("o", "+"):
            take()
            return factor()
        val = base()
        if peek() == ("o", "^"):
            take()
            sign = 1
            if peek() == ("o", "-"):
                take()
                sign = -1
            kind, e = take()
            if kind != "n":
                raise ValueError(f"bad exponent in {text!r}")
            val = val ** (sign * e)
        return val

    def base():
        kind, v = take()
        if kind == "n":
            return as_scalar(v)
        if kind == "v":
            return Q if v == "q" else Z
        if (kind, v) == ("o", "("):
            val = expr()
            if take() != ("o", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return val
        raise ValueError(f"unexpected token {v!r} in {text!r}")

    out = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out
