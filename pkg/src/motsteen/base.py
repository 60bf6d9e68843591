"""Bigraded coefficient arithmetic over F_l[rho, tau].

The coefficient ring of everything in this package is F_l[rho, tau] where
rho sits in bidegree (1,1) and tau in bidegree (0,1).  For odd primes the
ring degenerates to F_l (rho = tau = 0).  Scalars are kept exact: a scalar
is a finite map from (rho exponent, tau exponent) to a nonzero residue
mod l.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple


class Bidegree(NamedTuple):
    """First degree / weight pair.  Addition is componentwise."""

    d: int
    w: int

    def __add__(self, other):
        return Bidegree(self.d + other.d, self.w + other.w)

    def __sub__(self, other):
        return Bidegree(self.d - other.d, self.w - other.w)

    def __str__(self):
        return "(%d,%d)" % (self.d, self.w)


BIDEG_ZERO = Bidegree(0, 0)
BIDEG_RHO = Bidegree(1, 1)
BIDEG_TAU = Bidegree(0, 1)


def _check_prime(l: int) -> None:
    if l < 2 or any(l % p == 0 for p in range(2, int(l**0.5) + 1)):
        raise ValueError("prime expected, got %r" % (l,))


class PrimeMismatch(ValueError):
    """Raised when operands live over different primes."""


class BaseScalar:
    """Element of F_l[rho, tau], stored sparsely.

    ``terms`` maps (rho_exp, tau_exp) to a coefficient in 1..l-1; zero
    coefficients are never stored.  Instances are immutable; all operations
    return fresh scalars.  For odd l only the (0, 0) key may occur.
    """

    __slots__ = ("prime", "terms", "_hash")

    def __init__(self, prime: int, terms: dict | None = None):
        _check_prime(prime)
        clean = {}
        for (b, a), c in (terms or {}).items():
            c %= prime
            if c == 0:
                continue
            if b < 0 or a < 0:
                raise ValueError("negative exponent in scalar monomial")
            if prime != 2 and (b or a):
                raise ValueError("rho/tau vanish for odd primes")
            clean[(b, a)] = c
        self.prime = prime
        self.terms = clean
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, l: int) -> "BaseScalar":
        return cls(l, {})

    @classmethod
    def one(cls, l: int) -> "BaseScalar":
        return cls(l, {(0, 0): 1})

    @classmethod
    def from_int(cls, l: int, c: int) -> "BaseScalar":
        return cls(l, {(0, 0): c})

    @classmethod
    def rho(cls, l: int) -> "BaseScalar":
        return cls(l, {(1, 0): 1})

    @classmethod
    def tau(cls, l: int) -> "BaseScalar":
        return cls(l, {(0, 1): 1})

    @classmethod
    def monomial(cls, l: int, rho_exp: int, tau_exp: int, c: int = 1) -> "BaseScalar":
        return cls(l, {(rho_exp, tau_exp): c})

    # -- ring structure ---------------------------------------------------

    def __add__(self, other: "BaseScalar") -> "BaseScalar":
        if self.prime != other.prime:
            raise PrimeMismatch("scalar primes differ: %d vs %d" % (self.prime, other.prime))
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return BaseScalar(self.prime, terms)

    def __neg__(self) -> "BaseScalar":
        return BaseScalar(self.prime, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BaseScalar") -> "BaseScalar":
        return self + (-other)

    def __mul__(self, other: "BaseScalar") -> "BaseScalar":
        if self.prime != other.prime:
            raise PrimeMismatch("scalar primes differ: %d vs %d" % (self.prime, other.prime))
        terms: dict = {}
        for (b1, a1), c1 in self.terms.items():
            for (b2, a2), c2 in other.terms.items():
                k = (b1 + b2, a1 + a2)
                terms[k] = terms.get(k, 0) + c1 * c2
        return BaseScalar(self.prime, terms)

    def scale(self, c: int) -> "BaseScalar":
        return BaseScalar(self.prime, {k: v * c for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "BaseScalar":
        out = BaseScalar.one(self.prime)
        for _ in range(n):
            out = out * self
        return out

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0, 0): 1}

    def constant_term(self) -> int:
        return self.terms.get((0, 0), 0)

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def is_homogeneous(self) -> bool:
        return len({(b, a + b) for (b, a) in self.terms}) <= 1

    def bidegree(self) -> Bidegree | None:
        """Bidegree of a homogeneous scalar, None for 0."""
        degs = {Bidegree(b, a + b) for (b, a) in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("scalar is not homogeneous: %s" % self)
        return degs.pop()

    def substitute(self, tau_val: int, rho_val: int) -> "BaseScalar":
        """Evaluate tau and rho at residues mod l, collapsing to a constant."""
        total = 0
        for (b, a), c in self.terms.items():
            total += c * pow(rho_val, b, self.prime) * pow(tau_val, a, self.prime)
        return BaseScalar.from_int(self.prime, total)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BaseScalar)
            and self.prime == other.prime
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.prime, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (b, a), c in self.sorted_terms():
            factors = []
            if c != 1 or (b == 0 and a == 0):
                factors.append(str(c))
            if b == 1:
                factors.append("rho")
            elif b > 1:
                factors.append("rho^%d" % b)
            if a == 1:
                factors.append("tau")
            elif a > 1:
                factors.append("tau^%d" % a)
            parts.append(" ".join(factors))
        return " + ".join(parts)

    __repr__ = __str__


def scalar_add(a: BaseScalar, b: BaseScalar) -> BaseScalar:
    """Exact sum; zero terms dropped."""
    return a + b


def scalar_mul(a: BaseScalar, b: BaseScalar) -> BaseScalar:
    """Exact product; bidegrees of homogeneous parts add."""
    return a * b


def binomial_mod_l(n: int, k: int, l: int) -> int:
    """C(n, k) mod l by base-l digits; 0 when k > n or k < 0."""
    _check_prime(l)
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        nd, n = n % l, n // l
        kd, k = k % l, k // l
        if kd > nd:
            return 0
        out = out * math.comb(nd, kd) % l
    return out


def multinomial_mod_l(parts: Iterable[int], l: int) -> int:
    """(sum parts)! / prod(parts!) mod l, via iterated Lucas binomials."""
    total = 0
    out = 1
    for p in parts:
        total += p
        out = out * binomial_mod_l(total, p, l) % l
        if out == 0:
            return 0
    return out


# -- Steenrod action on the coefficient ring -------------------------------
#
# Generators act on rho and tau by: bockstein(tau) = rho, bockstein(rho) = 0,
# P^0 = id, P^i and B^i (i > 0) kill rho and tau.  The action on monomials
# rho^b tau^a follows from the twisted product rule implemented in
# _cartan_pb below.  For odd l the ring is F_l and only P^0 acts.


def _atom_action(kind: str, i: int, atom: str, l: int) -> BaseScalar:
    """Action of P^i ('P') or B^i ('B') on a single rho or tau factor."""
    if kind == "P":
        if i == 0:
            return BaseScalar.rho(l) if atom == "rho" else BaseScalar.tau(l)
        return BaseScalar.zero(l)
    # B^i = bockstein . P^i
    if i == 0 and atom == "tau":
        return BaseScalar.rho(l)
    return BaseScalar.zero(l)


def _cartan_pb(kind: str, i: int, b: int, a: int, l: int) -> BaseScalar:
    """P^i or B^i applied to rho^b tau^a.

    Splits off one factor and applies the twisted two-variable product rule:
      P^i(xy) = sum_r P^r(x) P^(i-r)(y) + tau * sum_s B^s(x) B^(i-1-s)(y)
      B^i(xy) = sum_r (B^r(x) P^(i-r)(y) + P^r(x) B^(i-r)(y))
                + rho * sum_s B^s(x) B^(i-1-s)(y)
    with the tau/rho correction terms present only at l = 2 (they vanish
    identically for odd l where the ring is F_l anyway).
    """
    if b == 0 and a == 0:
        if kind == "P" and i == 0:
            return BaseScalar.one(l)
        return BaseScalar.zero(l)
    if b + a == 1:
        return _atom_action(kind, i, "rho" if b else "tau", l)
    # peel one atom off the front
    if b:
        hb, ha = 1, 0
        tb, ta = b - 1, a
    else:
        hb, ha = 0, 1
        tb, ta = 0, a - 1

    def head(kd, j):
        return _atom_action(kd, j, "rho" if hb else "tau", l)

    def tail(kd, j):
        return _cartan_pb(kd, j, tb, ta, l)

    out = BaseScalar.zero(l)
    if kind == "P":
        for r in range(i + 1):
            out = out + head("P", r) * tail("P", i - r)
        if l == 2:
            tau = BaseScalar.tau(l)
            for s in range(i):
                out = out + tau * head("B", s) * tail("B", i - 1 - s)
    else:
        for r in range(i + 1):
            out = out + head("B", r) * tail("P", i - r)
            out = out + head("P", r) * tail("B", i - r)
        if l == 2:
            rho = BaseScalar.rho(l)
            for s in range(i):
                out = out + rho * head("B", s) * tail("B", i - 1 - s)
    return out


_PB_CACHE: dict = {}


def scalar_pb_action(kind: str, i: int, a: BaseScalar) -> BaseScalar:
    """P^i (kind 'P') or B^i (kind 'B') applied to a scalar, F_l-linearly."""
    if i < 0:
        return BaseScalar.zero(a.prime)
    out = BaseScalar.zero(a.prime)
    for (b, ta), c in a.terms.items():
        key = (kind, i, b, ta, a.prime)
        val = _PB_CACHE.get(key)
        if val is None:
            val = _cartan_pb(kind, i, b, ta, a.prime)
            _PB_CACHE[key] = val
        out = out + val.scale(c)
    return out


def steenrod_action_on_base(g, a: BaseScalar) -> BaseScalar:
    """Apply a generator tag to a scalar.

    ``g`` is 'b' (the Bockstein) or a pair ('P', i).  The Bockstein is the
    derivation with bockstein(tau) = rho, bockstein(rho) = 0; P^0 is the
    identity and higher P^i act through the twisted product rule.
    """
    if g == "b":
        return scalar_pb_action("B", 0, a)
    if isinstance(g, tuple) and g[0] == "P":
        return scalar_pb_action("P", g[1], a)
    raise ValueError("unknown generator tag %r" % (g,))
