"""Characteristic classes of basis operations on Thom classes of formal
bundles.

A bundle is nothing but a list of Chern roots t_1..t_m in bidegree (2,1).
The class of the operation dual to xi(R) on the Thom class is the
symmetric function obtained by summing, over all functions f assigning
value j to exactly r_j roots, the monomial prod_i t_i^(l^f(i) - 1).  The
sum is enumerated directly; no generating-function shortcut.
"""

from __future__ import annotations

import itertools

from .base import BaseScalar
from .dual import MilnorMonomial
from .steenrod import MILNOR, SteenrodElement, convert_basis


class FormalBundle:
    """Formal sum of line bundles, known only through its rank."""

    __slots__ = ("rank",)

    def __init__(self, rank: int):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        self.rank = rank

    def direct_sum(self, other: "FormalBundle") -> "FormalBundle":
        return FormalBundle(self.rank + other.rank)

    def __repr__(self):
        return "FormalBundle(rank=%d)" % self.rank


class SymmetricPoly:
    """Polynomial in t_1..t_m over F_l, stored by exponent vector."""

    __slots__ = ("prime", "nvars", "terms")

    def __init__(self, prime: int, nvars: int, terms: dict | None = None):
        self.prime = prime
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            c %= prime
            if len(exps) != nvars:
                raise ValueError("exponent arity mismatch")
            if c:
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def zero(cls, l: int, m: int) -> "SymmetricPoly":
        return cls(l, m, {})

    @classmethod
    def one(cls, l: int, m: int) -> "SymmetricPoly":
        return cls(l, m, {(0,) * m: 1})

    def __add__(self, other: "SymmetricPoly") -> "SymmetricPoly":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = (terms.get(k, 0) + c) % self.prime
        return SymmetricPoly(self.prime, self.nvars, terms)

    def __mul__(self, other: "SymmetricPoly") -> "SymmetricPoly":
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(e1, e2))
                terms[k] = (terms.get(k, 0) + c1 * c2) % self.prime
        return SymmetricPoly(self.prime, self.nvars, terms)

    def scale_int(self, c: int) -> "SymmetricPoly":
        return SymmetricPoly(self.prime, self.nvars, {k: v * c for k, v in self.terms.items()})

    def permute(self, perm) -> "SymmetricPoly":
        terms = {}
        for exps, c in self.terms.items():
            terms[tuple(exps[perm[i]] for i in range(self.nvars))] = c
        return SymmetricPoly(self.prime, self.nvars, terms)

    def is_symmetric(self) -> bool:
        for i in range(self.nvars - 1):
            perm = list(range(self.nvars))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.permute(perm) != self:
                return False
        return True

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymmetricPoly)
            and (self.prime, self.nvars) == (other.prime, other.nvars)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.prime, self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            factors = [] if c == 1 and any(exps) else [str(c)]
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append("t%d" % (i + 1))
                elif e > 1:
                    factors.append("t%d^%d" % (i + 1, e))
            parts.append(" ".join(factors) if factors else "1")
        return " + ".join(parts)

    __repr__ = __str__


def s_R(R, m: int, l: int) -> SymmetricPoly:
    """Sum over functions f with |f^-1(j)| = r_j of prod t_i^(l^f(i)-1)."""
    R = tuple(R)
    while R and R[-1] == 0:
        R = R[:-1]
    if sum(R) > m:
        return SymmetricPoly.zero(l, m)
    out: dict = {}
    indices = list(range(m))

    def assign(j: int, free: tuple, exps: tuple):
        if j > len(R):
            out[exps] = (out.get(exps, 0) + 1) % l
            return
        r = R[j - 1]
        for chosen in itertools.combinations(free, r):
            rest = tuple(i for i in free if i not in chosen)
            new = list(exps)
            for i in chosen:
                new[i] = l**j - 1
            assign(j + 1, rest, tuple(new))

    assign(1, tuple(indices), (0,) * m)
    return SymmetricPoly(l, m, out)


def elementary(k: int, m: int, l: int) -> SymmetricPoly:
    """Elementary symmetric polynomial e_k in m variables."""
    out: dict = {}
    for chosen in itertools.combinations(range(m), k):
        exps = tuple(1 if i in chosen else 0 for i in range(m))
        out[exps] = 1
    return SymmetricPoly(l, m, out)


def expand_chern(e_exps, m: int, l: int) -> SymmetricPoly:
    """Expand a monomial in e_1..e_m back into the roots."""
    out = SymmetricPoly.one(l, m)
    for k, power in enumerate(e_exps, start=1):
        for _ in range(power):
            out = out * elementary(k, m, l)
    return out


def to_chern(p: SymmetricPoly) -> dict:
    """Unique expression of a symmetric polynomial in e_1..e_m.

    Returns a map from e-exponent tuples (e_1 power, .., e_m power) to
    coefficients mod l.  Raises ValueError when the input is not symmetric.
    """
    if not p.is_symmetric():
        raise ValueError("polynomial is not symmetric")
    l, m = p.prime, p.nvars
    work = p
    out: dict = {}
    while not work.is_zero():
        lead = max(work.terms, key=lambda e: tuple(sorted(e, reverse=True)))
        lam = tuple(sorted(lead, reverse=True))
        c = work.terms[lead]
        e_exps = tuple(
            lam[i] - (lam[i + 1] if i + 1 < m else 0) for i in range(m)
        )
        out[e_exps] = (out.get(e_exps, 0) + c) % l
        work = work + expand_chern(e_exps, m, l).scale_int(-c)
        if not out[e_exps]:
            del out[e_exps]
    return out


def chern_str(chern: dict) -> str:
    if not chern:
        return "0"
    parts = []
    for exps, c in sorted(chern.items(), key=lambda t: (sum(t[0]), t[0])):
        factors = [] if c == 1 and any(exps) else [str(c)]
        for i, e in enumerate(exps):
            if e == 1:
                factors.append("e%d" % (i + 1))
            elif e > 1:
                factors.append("e%d^%d" % (i + 1, e))
        parts.append(" ".join(factors) if factors else "1")
    return " + ".join(parts)


def thom_class_action(x, V: FormalBundle, l: int | None = None) -> SymmetricPoly:
    """Characteristic class of an operation on the Thom class.

    Basis operations M[E;R] give 0 when E is nonzero and the s_R class
    when E vanishes.  Accepts a basis monomial or an element with constant
    coefficients.
    """
    if isinstance(x, MilnorMonomial):
        if l is None:
            raise ValueError("prime required with a bare monomial")
        if any(x.E):
            return SymmetricPoly.zero(l, V.rank)
        return s_R(x.R, V.rank, l)
    if isinstance(x, SteenrodElement):
        elt = convert_basis(x, MILNOR)
        out = SymmetricPoly.zero(elt.prime, V.rank)
        for m, c in elt.terms.items():
            if any(m.E):
                continue
            if not c.is_constant():
                raise ValueError("class with rho or tau coefficient is not representable here")
            part = thom_class_action(m, V, elt.prime)
            out = out + part.scale_int(c.constant_term())
        return out
    raise TypeError("expected a basis monomial or element")
