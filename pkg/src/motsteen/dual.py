"""The dual motivic Steenrod algebra and its Hopf-algebroid structure.

Monomials tau(E) xi(R) = prod tau_i^{eps_i} prod xi_j^{r_j} form a left
basis over F_l[rho, tau] once the squares of the tau_i are rewritten via

    tau_i^2 = tau xi_{i+1} + rho tau_{i+1} + rho tau_0 xi_{i+1}   (l = 2)
    tau_i^2 = 0                                                   (l odd)

The coproduct lands in a twisted tensor square: coefficients produced in
the right slot are carried across the tensor sign through the right unit,
so normalized tensors always have the shape sum h * (omega(I) (x) omega(J))
with a single global coefficient h on the left.
"""

from __future__ import annotations

import threading
from typing import NamedTuple

from .base import BaseScalar, Bidegree, PrimeMismatch


class MilnorMonomial(NamedTuple):
    """Exponent data (E, R): E indexes tau_0, tau_1, ...; R indexes xi_1, ..."""

    E: tuple
    R: tuple


MONO_ONE = MilnorMonomial((), ())


def _trim(seq) -> tuple:
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


def make_monomial(E=(), R=()) -> MilnorMonomial:
    E = _trim(E)
    R = _trim(R)
    if any(e not in (0, 1) for e in E):
        raise ValueError("tau exponents must be 0 or 1, got E=%r" % (E,))
    if any(r < 0 for r in R):
        raise ValueError("negative xi exponent in R=%r" % (R,))
    return MilnorMonomial(E, R)


def tau_bidegree(i: int, l: int) -> Bidegree:
    return Bidegree(2 * l**i - 1, l**i - 1)


def xi_bidegree(i: int, l: int) -> Bidegree:
    return Bidegree(2 * (l**i - 1), l**i - 1)


def monomial_bidegree(m: MilnorMonomial, l: int) -> Bidegree:
    p = sum(e * (2 * l**i - 1) for i, e in enumerate(m.E))
    q = sum(e * (l**i - 1) for i, e in enumerate(m.E))
    for j, r in enumerate(m.R, start=1):
        p += 2 * r * (l**j - 1)
        q += r * (l**j - 1)
    return Bidegree(p, q)


def monomial_first_degree(m: MilnorMonomial, l: int) -> int:
    return monomial_bidegree(m, l).d


def mono_sort_key(m: MilnorMonomial, l: int):
    """Fixed enumeration order: weight, first degree, E bits, R lex."""
    d = monomial_bidegree(m, l)
    ebits = sum(e << i for i, e in enumerate(m.E))
    return (d.w, d.d, ebits, m.R)


def mono_str(m: MilnorMonomial) -> str:
    if m == MONO_ONE:
        return "1"
    parts = []
    for i, e in enumerate(m.E):
        if e:
            parts.append("t%d" % i)
    for j, r in enumerate(m.R, start=1):
        if r == 1:
            parts.append("x%d" % j)
        elif r > 1:
            parts.append("x%d^%d" % (j, r))
    return " ".join(parts)


class DualElement:
    """Left F_l[rho,tau]-combination of canonical Milnor monomials."""

    __slots__ = ("prime", "terms")

    def __init__(self, prime: int, terms: dict | None = None):
        self.prime = prime
        clean = {}
        for m, c in (terms or {}).items():
            if not isinstance(c, BaseScalar):
                raise TypeError("coefficients must be BaseScalar")
            if c.prime != prime:
                raise PrimeMismatch("coefficient prime %d != %d" % (c.prime, prime))
            if not c.is_zero():
                clean[m] = c
        self.terms = clean

    @classmethod
    def zero(cls, l: int) -> "DualElement":
        return cls(l, {})

    @classmethod
    def one(cls, l: int) -> "DualElement":
        return cls(l, {MONO_ONE: BaseScalar.one(l)})

    @classmethod
    def monomial(cls, l: int, m: MilnorMonomial, coef: BaseScalar | None = None) -> "DualElement":
        return cls(l, {m: coef if coef is not None else BaseScalar.one(l)})

    @classmethod
    def generator_tau(cls, l: int, i: int) -> "DualElement":
        E = [0] * (i + 1)
        E[i] = 1
        return cls.monomial(l, make_monomial(E, ()))

    @classmethod
    def generator_xi(cls, l: int, i: int) -> "DualElement":
        if i == 0:
            return cls.one(l)
        R = [0] * i
        R[i - 1] = 1
        return cls.monomial(l, make_monomial((), R))

    def __add__(self, other: "DualElement") -> "DualElement":
        if self.prime != other.prime:
            raise PrimeMismatch("dual element primes differ")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            prev = terms.get(m)
            terms[m] = c if prev is None else prev + c
        return DualElement(self.prime, terms)

    def scale(self, a: BaseScalar) -> "DualElement":
        return DualElement(self.prime, {m: a * c for m, c in self.terms.items()})

    def __mul__(self, other: "DualElement") -> "DualElement":
        return dual_multiply(self, other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DualElement)
            and self.prime == other.prime
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.prime, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: MilnorMonomial) -> BaseScalar:
        return self.terms.get(m, BaseScalar.zero(self.prime))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: mono_sort_key(t[0], self.prime))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            ms = mono_str(m)
            if c.is_one():
                parts.append(ms)
            elif ms == "1":
                parts.append(str(c))
            elif len(c.terms) > 1:
                parts.append("(%s) %s" % (c, ms))
            else:
                parts.append("%s %s" % (c, ms))
        return " + ".join(parts)

    __repr__ = __str__


def _merge_sign(E1: tuple, E2: tuple, l: int) -> int:
    """Koszul sign for interleaving the odd tau factors of two monomials."""
    if l == 2:
        return 1
    inv = 0
    for i, e in enumerate(E1):
        if not e:
            continue
        inv += sum(1 for j, f in enumerate(E2) if f and j < i)
    return -1 if inv % 2 else 1


def _reduce_tau_squares(coef: BaseScalar, E: list, R: list, l: int, out: dict) -> None:
    """Rewrite tau_i^2 occurrences, lowest index first, accumulating into out."""
    while True:
        idx = next((i for i, e in enumerate(E) if e >= 2), None)
        if idx is None:
            m = make_monomial(E, R)
            prev = out.get(m)
            out[m] = coef if prev is None else prev + coef
            return
        if l != 2:
            return
        E = list(E)
        E[idx] -= 2
        # tau_idx^2 -> tau xi_{idx+1} + rho tau_{idx+1} + rho tau_0 xi_{idx+1}
        while len(R) < idx + 1:
            R.append(0)
        R1 = list(R)
        R1[idx] += 1
        _reduce_tau_squares(coef * BaseScalar.tau(l), list(E), R1, l, out)
        E2 = list(E)
        while len(E2) < idx + 2:
            E2.append(0)
        E2[idx + 1] += 1
        _reduce_tau_squares(coef * BaseScalar.rho(l), E2, list(R), l, out)
        E3 = list(E)
        if not E3:
            E3 = [0]
        E3[0] += 1
        _reduce_tau_squares(coef * BaseScalar.rho(l), E3, R1, l, out)
        return


_MONO_MUL_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def _monomial_product(m1: MilnorMonomial, m2: MilnorMonomial, l: int) -> "DualElement":
    key = (l, m1, m2)
    cached = _MONO_MUL_CACHE.get(key)
    if cached is not None:
        return cached
    sign = _merge_sign(m1.E, m2.E, l)
    n = max(len(m1.E), len(m2.E))
    E = [(m1.E[i] if i < len(m1.E) else 0) + (m2.E[i] if i < len(m2.E) else 0) for i in range(n)]
    k = max(len(m1.R), len(m2.R))
    R = [(m1.R[j] if j < len(m1.R) else 0) + (m2.R[j] if j < len(m2.R) else 0) for j in range(k)]
    if l != 2 and any(e >= 2 for e in E):
        result = DualElement.zero(l)
    else:
        out: dict = {}
        _reduce_tau_squares(BaseScalar.from_int(l, sign), E, R, l, out)
        result = DualElement(l, out)
    with _CACHE_LOCK:
        _MONO_MUL_CACHE[key] = result
    return result


def dual_multiply(x: DualElement, y: DualElement, cap: int | None = None) -> DualElement:
    """Product in canonical relation-reduced form."""
    if x.prime != y.prime:
        raise PrimeMismatch("dual element primes differ")
    l = x.prime
    acc: dict = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            prod = _monomial_product(m1, m2, l)
            c = c1 * c2
            for m, d in prod.terms.items():
                coef = c * d
                prev = acc.get(m)
                acc[m] = coef if prev is None else prev + coef
    out = DualElement(l, acc)
    if cap is not None:
        out = _apply_cap(out, cap)
    return out


def _apply_cap(x: DualElement, cap: int) -> DualElement:
    kept = {m: c for m, c in x.terms.items() if monomial_first_degree(m, x.prime) <= cap}
    return DualElement(x.prime, kept)


def right_unit(a: BaseScalar) -> DualElement:
    """Multiplicative image of a coefficient under the right unit.

    rho maps to rho * 1 and tau to tau * 1 + rho * tau_0; for odd primes the
    map is the scalar inclusion.
    """
    l = a.prime
    out = DualElement.zero(l)
    lam_tau = DualElement(
        l,
        {
            MONO_ONE: BaseScalar.tau(l),
            make_monomial((1,), ()): BaseScalar.rho(l),
        },
    ) if l == 2 else None
    for (b, t), c in a.terms.items():
        term = DualElement.monomial(l, MONO_ONE, BaseScalar.monomial(l, b, 0, c))
        for _ in range(t):
            term = dual_multiply(term, lam_tau)
        out = out + term
    return out


def counit(x: DualElement) -> BaseScalar:
    """Coefficient of the empty monomial."""
    return x.coefficient(MONO_ONE)


class TwistedTensor:
    """Normalized element of the twisted tensor square of the dual algebra.

    Terms map (omega(I), omega(J)) to a global left coefficient.  Any raw
    coefficient attached to the right slot must be pushed through
    normalize_tensor before a TwistedTensor is formed.
    """

    __slots__ = ("prime", "terms")

    def __init__(self, prime: int, terms: dict | None = None):
        self.prime = prime
        clean = {}
        for pair, c in (terms or {}).items():
            if c.prime != prime:
                raise PrimeMismatch("coefficient prime mismatch in tensor")
            if not c.is_zero():
                clean[pair] = c
        self.terms = clean

    @classmethod
    def zero(cls, l: int) -> "TwistedTensor":
        return cls(l, {})

    @classmethod
    def one(cls, l: int) -> "TwistedTensor":
        return cls(l, {(MONO_ONE, MONO_ONE): BaseScalar.one(l)})

    def __add__(self, other: "TwistedTensor") -> "TwistedTensor":
        if self.prime != other.prime:
            raise PrimeMismatch("tensor primes differ")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            prev = terms.get(k)
            terms[k] = c if prev is None else prev + c
        return TwistedTensor(self.prime, terms)

    def scale(self, a: BaseScalar) -> "TwistedTensor":
        return TwistedTensor(self.prime, {k: a * c for k, c in self.terms.items()})

    def __mul__(self, other: "TwistedTensor") -> "TwistedTensor":
        if self.prime != other.prime:
            raise PrimeMismatch("tensor primes differ")
        l = self.prime
        acc = TwistedTensor.zero(l)
        for (i1, j1), c1 in self.terms.items():
            p_j1 = monomial_first_degree(j1, l)
            for (i2, j2), c2 in other.terms.items():
                sign = 1
                if l != 2 and (p_j1 * monomial_first_degree(i2, l)) % 2:
                    sign = -1
                left = _monomial_product(i1, i2, l)
                right = _monomial_product(j1, j2, l)
                coef = (c1 * c2).scale(sign)
                acc = acc + _combine_slots(left, right, coef)
        return acc

    def coefficient(self, mi: MilnorMonomial, mj: MilnorMonomial) -> BaseScalar:
        return self.terms.get((mi, mj), BaseScalar.zero(self.prime))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TwistedTensor)
            and self.prime == other.prime
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.prime, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda t: (mono_sort_key(t[0][0], self.prime), mono_sort_key(t[0][1], self.prime)),
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (mi, mj), c in self.sorted_terms():
            body = "%s (x) %s" % (mono_str(mi), mono_str(mj))
            if c.is_one():
                parts.append(body)
            elif len(c.terms) > 1:
                parts.append("(%s) %s" % (c, body))
            else:
                parts.append("%s %s" % (c, body))
        return " + ".join(parts)

    __repr__ = __str__


def _combine_slots(left: DualElement, right: DualElement, coef: BaseScalar) -> TwistedTensor:
    """Tensor two reduced slot values, transporting right-slot coefficients."""
    l = left.prime
    acc: dict = {}
    for mj, d in right.terms.items():
        moved = dual_multiply(left, right_unit(d))
        for mi, e in moved.terms.items():
            c = coef * e
            prev = acc.get((mi, mj))
            acc[(mi, mj)] = c if prev is None else prev + c
    return TwistedTensor(l, acc)


def normalize_tensor(l: int, raw_terms) -> TwistedTensor:
    """Bring a formal sum of (coef, left DualElement, right DualElement)
    triples into the left-coefficient basis form."""
    acc = TwistedTensor.zero(l)
    for coef, left, right in raw_terms:
        acc = acc + _combine_slots(left, right, coef)
    return acc


_COPROD_GEN_CACHE: dict = {}


def _coproduct_tau(l: int, k: int) -> TwistedTensor:
    key = ("tau", l, k)
    with _CACHE_LOCK:
        cached = _COPROD_GEN_CACHE.get(key)
    if cached is not None:
        return cached
    terms = {}
    E = [0] * (k + 1)
    E[k] = 1
    terms[(make_monomial(E, ()), MONO_ONE)] = BaseScalar.one(l)
    for i in range(k + 1):
        left = _xi_power_monomial(k - i, l**i)
        Ei = [0] * (i + 1)
        Ei[i] = 1
        right = make_monomial(Ei, ())
        pair = (left, right)
        terms[pair] = terms.get(pair, BaseScalar.zero(l)) + BaseScalar.one(l)
    out = TwistedTensor(l, terms)
    with _CACHE_LOCK:
        _COPROD_GEN_CACHE[key] = out
    return out


def _coproduct_xi(l: int, k: int) -> TwistedTensor:
    if k == 0:
        return TwistedTensor.one(l)
    key = ("xi", l, k)
    with _CACHE_LOCK:
        cached = _COPROD_GEN_CACHE.get(key)
    if cached is not None:
        return cached
    terms = {}
    for i in range(k + 1):
        pair = (_xi_power_monomial(k - i, l**i), _xi_power_monomial(i, 1))
        terms[pair] = terms.get(pair, BaseScalar.zero(l)) + BaseScalar.one(l)
    out = TwistedTensor(l, terms)
    with _CACHE_LOCK:
        _COPROD_GEN_CACHE[key] = out
    return out


def _xi_power_monomial(idx: int, exp: int) -> MilnorMonomial:
    if idx == 0 or exp == 0:
        return MONO_ONE
    R = [0] * idx
    R[idx - 1] = exp
    return make_monomial((), R)


_COPROD_MONO_CACHE: dict = {}


def _coproduct_monomial(m: MilnorMonomial, l: int) -> TwistedTensor:
    key = (l, m)
    cached = _COPROD_MONO_CACHE.get(key)
    if cached is not None:
        return cached
    out = TwistedTensor.one(l)
    for i, e in enumerate(m.E):
        if e:
            out = out * _coproduct_tau(l, i)
    for j, r in enumerate(m.R, start=1):
        if r:
            factor = _coproduct_xi(l, j)
            for _ in range(r):
                out = out * factor
    with _CACHE_LOCK:
        _COPROD_MONO_CACHE[key] = out
    return out


def dual_coproduct(x: DualElement, cap: int | None = None) -> TwistedTensor:
    """Coproduct into the twisted tensor square, multiplicatively extended."""
    acc = TwistedTensor.zero(x.prime)
    for m, c in x.terms.items():
        acc = acc + _coproduct_monomial(m, x.prime).scale(c)
    if cap is not None:
        kept = {
            pair: c
            for pair, c in acc.terms.items()
            if monomial_first_degree(pair[0], x.prime)
            + monomial_first_degree(pair[1], x.prime)
            <= cap
        }
        acc = TwistedTensor(x.prime, kept)
    return acc


_ENUM_CACHE: dict = {}


def enumerate_monomials(bidegree: Bidegree, l: int) -> list:
    """All canonical monomials of exactly this bidegree, in the fixed order."""
    key = (l, bidegree)
    cached = _ENUM_CACHE.get(key)
    if cached is not None:
        return cached
    p, q = bidegree
    found: list = []
    if p >= 0 and q >= 0:
        taus = []
        i = 0
        while 2 * l**i - 1 <= p:
            taus.append(i)
            i += 1
        xis = []
        j = 1
        while 2 * (l**j - 1) <= p:
            xis.append(j)
            j += 1

        def scan_xi(idx: int, rp: int, rq: int, R: list):
            if rp == 0 and rq == 0:
                full = R + [0] * (idx + 1)
                found.append(make_monomial((), list(reversed(full))))
                return
            if idx < 0:
                return
            jj = xis[idx]
            dp, dq = 2 * (l**jj - 1), l**jj - 1
            rmax = rp // dp if dp else 0
            for r in range(rmax, -1, -1):
                if rq - r * dq >= 0:
                    scan_xi(idx - 1, rp - r * dp, rq - r * dq, R + [r])

        def scan_tau(idx: int, rp: int, rq: int, E: list):
            if idx < 0:
                if rp >= 0 and rq >= 0:
                    base = list(reversed(E))
                    nfound = len(found)
                    scan_xi(len(xis) - 1, rp, rq, [])
                    for k in range(nfound, len(found)):
                        m = found[k]
                        found[k] = make_monomial(base, m.R)
                return
            ii = taus[idx]
            dp, dq = 2 * l**ii - 1, l**ii - 1
            scan_tau(idx - 1, rp, rq, E + [0])
            if rp >= dp and rq >= dq:
                scan_tau(idx - 1, rp - dp, rq - dq, E + [1])

        scan_tau(len(taus) - 1, p, q, [])
    found = [m for m in found if monomial_bidegree(m, l) == bidegree]
    found.sort(key=lambda m: mono_sort_key(m, l))
    with _CACHE_LOCK:
        _ENUM_CACHE[key] = found
    return found


def tau_count(m: MilnorMonomial) -> int:
    return sum(m.E)


def max_tau_count(p: int, l: int) -> int:
    """Largest number of tau factors a monomial of first degree <= p can carry."""
    total = 0
    count = 0
    i = 0
    while True:
        d = 2 * l**i - 1
        if total + d > p:
            return count
        total += d
        count += 1
        i += 1
