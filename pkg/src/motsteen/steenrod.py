"""The motivic Steenrod algebra over F_l[rho, tau].

Elements are left-coefficient combinations of either Milnor-basis
monomials M[E;R] (dual to tau(E) xi(R)) or admissible words
b^e0 P^s1 b^e1 ... P^sk b^ek with s_i >= l*s_{i+1} + e_i.

The ground truth for the product is the dual algebra: the coefficient of
M[K] in M[I] * M[J] is the (omega(I) (x) omega(J))-coefficient of the
normalized dual coproduct of omega(K).  Adem relations are generated from
this product and only compared against their closed textbook form; the
closed form of the odd-sum case is known to be garbled in print and is
kept as a report, not an authority.
"""

from __future__ import annotations

import threading

from .base import BaseScalar, Bidegree, PrimeMismatch
from .dual import (
    MONO_ONE,
    DualElement,
    MilnorMonomial,
    dual_coproduct,
    enumerate_monomials,
    make_monomial,
    mono_sort_key,
    mono_str,
    monomial_bidegree,
    max_tau_count,
    right_unit,
    tau_count,
    _monomial_product,
)

MILNOR = "milnor"
ADMISSIBLE = "admissible"

_LOCK = threading.Lock()


class TriangularityError(RuntimeError):
    """The basis-change pairing failed its triangularity contract."""


# -- admissible sequences ----------------------------------------------------
#
# A sequence key is the flat tuple (e0, s1, e1, s2, ..., sk, ek).  The unit
# is (0,) and the Bockstein is (1,).  Sequences biject with Milnor
# monomials via s_n = sum_{i>=n} (e_i + r_i) l^(i-n).

SEQ_ONE = (0,)
SEQ_BOCKSTEIN = (1,)


def seq_is_admissible(seq: tuple, l: int) -> bool:
    eps = seq[0::2]
    ess = seq[1::2]
    if any(e not in (0, 1) for e in eps):
        return False
    if any(s < 1 for s in ess):
        return False
    for i in range(len(ess)):
        nxt = ess[i + 1] if i + 1 < len(ess) else 0
        if ess[i] < l * nxt + eps[i + 1]:
            return False
    return True


def seq_bidegree(seq: tuple, l: int) -> Bidegree:
    p = sum(seq[0::2])
    q = 0
    for s in seq[1::2]:
        p += 2 * s * (l - 1)
        q += s * (l - 1)
    return Bidegree(p, q)


def word_from_seq(seq: tuple) -> tuple:
    word = []
    if seq[0]:
        word.append(("b",))
    i = 1
    while i < len(seq):
        word.append(("P", seq[i]))
        if seq[i + 1]:
            word.append(("b",))
        i += 2
    return tuple(word)


def seq_from_monomial(m: MilnorMonomial, l: int) -> tuple:
    n = max(len(m.E) - 1, len(m.R))
    if n <= 0:
        return (m.E[0],) if m.E else SEQ_ONE

    def eps(i):
        return m.E[i] if i < len(m.E) else 0

    def r(i):
        return m.R[i - 1] if 1 <= i <= len(m.R) else 0

    seq = [eps(0)]
    for k in range(1, n + 1):
        seq.append(sum((eps(i) + r(i)) * l ** (i - k) for i in range(k, n + 1)))
        seq.append(eps(k))
    return tuple(seq)


def monomial_from_seq(seq: tuple, l: int) -> MilnorMonomial:
    eps = seq[0::2]
    ess = list(seq[1::2]) + [0]
    R = []
    for i in range(len(ess) - 1):
        r = ess[i] - l * ess[i + 1] - eps[i + 1]
        if r < 0:
            raise ValueError("sequence %r is not admissible over l=%d" % (seq, l))
        R.append(r)
    return make_monomial(eps, R)


def _interleaved(m: MilnorMonomial, length: int) -> tuple:
    out = []
    for i in range(length):
        out.append(m.E[i] if i < len(m.E) else 0)
        out.append(m.R[i] if i < len(m.R) else 0)
    return tuple(out)


def seq_compare(m1: MilnorMonomial, m2: MilnorMonomial) -> int:
    """Order on index sequences used for the triangular basis change.

    Sequences are read as (e0, r1, e1, r2, ...) and compared from the
    right: at the highest position where they differ the larger entry
    marks the larger sequence.  Hence (1,2,0,...) < (0,0,1,...).
    """
    n = max(len(m1.E), len(m2.E), len(m1.R) + 1, len(m2.R) + 1)
    a = _interleaved(m1, n)[::-1]
    b = _interleaved(m2, n)[::-1]
    if a == b:
        return 0
    return -1 if a < b else 1


def seq_sort_key(m: MilnorMonomial):
    return _SeqKey(m)


class _SeqKey:
    __slots__ = ("m",)

    def __init__(self, m):
        self.m = m

    def __lt__(self, other):
        return seq_compare(self.m, other.m) < 0

    def __gt__(self, other):
        return seq_compare(self.m, other.m) > 0

    def __eq__(self, other):
        return seq_compare(self.m, other.m) == 0


# -- elements ----------------------------------------------------------------


class SteenrodElement:
    """Left F_l[rho,tau]-combination of basis monomials, tagged by basis."""

    __slots__ = ("prime", "basis", "terms")

    def __init__(self, prime: int, basis: str, terms: dict | None = None):
        if basis not in (MILNOR, ADMISSIBLE):
            raise ValueError("unknown basis tag %r" % basis)
        self.prime = prime
        self.basis = basis
        clean = {}
        for k, c in (terms or {}).items():
            if c.prime != prime:
                raise PrimeMismatch("coefficient prime mismatch")
            if not c.is_zero():
                clean[k] = c
        self.terms = clean

    @classmethod
    def zero(cls, l: int, basis: str = MILNOR) -> "SteenrodElement":
        return cls(l, basis, {})

    @classmethod
    def one(cls, l: int, basis: str = MILNOR) -> "SteenrodElement":
        if basis == MILNOR:
            return cls(l, MILNOR, {MONO_ONE: BaseScalar.one(l)})
        return cls(l, ADMISSIBLE, {SEQ_ONE: BaseScalar.one(l)})

    @classmethod
    def milnor_monomial(cls, l: int, E=(), R=(), coef: BaseScalar | None = None):
        m = make_monomial(E, R)
        return cls(l, MILNOR, {m: coef if coef is not None else BaseScalar.one(l)})

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        if self.prime != other.prime or self.basis != other.basis:
            raise ValueError("cannot add elements in different bases or primes")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            prev = terms.get(k)
            terms[k] = c if prev is None else prev + c
        return SteenrodElement(self.prime, self.basis, terms)

    def __sub__(self, other: "SteenrodElement") -> "SteenrodElement":
        return self + other.scale_int(-1)

    def scale(self, a: BaseScalar) -> "SteenrodElement":
        return SteenrodElement(self.prime, self.basis, {k: a * c for k, c in self.terms.items()})

    def scale_int(self, c: int) -> "SteenrodElement":
        return SteenrodElement(self.prime, self.basis, {k: v.scale(c) for k, v in self.terms.items()})

    def __mul__(self, other: "SteenrodElement") -> "SteenrodElement":
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SteenrodElement)
            and self.prime == other.prime
            and self.basis == other.basis
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.prime, self.basis, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key) -> BaseScalar:
        return self.terms.get(key, BaseScalar.zero(self.prime))

    def sorted_terms(self):
        if self.basis == MILNOR:
            return sorted(self.terms.items(), key=lambda t: mono_sort_key(t[0], self.prime))
        return sorted(self.terms.items(), key=lambda t: (seq_bidegree(t[0], self.prime), t[0]))

    def __str__(self):
        # one printed term per scalar monomial, so output re-parses exactly
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.sorted_terms():
            body = milnor_str(k) if self.basis == MILNOR else word_str(word_from_seq(k), self.prime)
            for (b, a), cc in c.sorted_terms():
                mono = str(BaseScalar.monomial(self.prime, b, a, cc))
                if body == "1":
                    parts.append(mono)
                elif mono == "1":
                    parts.append(body)
                else:
                    parts.append("%s %s" % (mono, body))
        return " + ".join(parts)

    __repr__ = __str__


def milnor_str(m: MilnorMonomial) -> str:
    if m == MONO_ONE:
        return "1"
    return "M[%s;%s]" % (",".join(map(str, m.E)), ",".join(map(str, m.R)))


def word_str(word: tuple, l: int) -> str:
    """Render a generator word; Sq-notation at l = 2."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        g = word[i]
        if l == 2:
            if g == ("b",) and i + 1 < len(word) and word[i + 1][0] == "P":
                parts.append("Sq%d" % (2 * word[i + 1][1] + 1))
                i += 2
                continue
            parts.append("Sq1" if g == ("b",) else "Sq%d" % (2 * g[1]))
        else:
            parts.append("b" if g == ("b",) else "P%d" % g[1])
        i += 1
    return " ".join(parts)


class OperationTensor:
    """Formal sum of Milnor-basis monomial pairs with left coefficients."""

    __slots__ = ("prime", "terms")

    def __init__(self, prime: int, terms: dict | None = None):
        self.prime = prime
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            prev = terms.get(k)
            terms[k] = c if prev is None else prev + c
        return OperationTensor(self.prime, terms)

    def coefficient(self, m1, m2) -> BaseScalar:
        return self.terms.get((m1, m2), BaseScalar.zero(self.prime))

    def __eq__(self, other):
        return (
            isinstance(other, OperationTensor)
            and self.prime == other.prime
            and self.terms == other.terms
        )

    def is_zero(self):
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
        for (m1, m2), c in self.sorted_terms():
            body = "%s (x) %s" % (mono_str(m1), mono_str(m2))
            parts.append(body if c.is_one() else "%s %s" % (c, body))
        return " + ".join(parts)

    __repr__ = __str__


# -- named operations --------------------------------------------------------


def make_named(l: int, name: str, arg=None) -> SteenrodElement:
    """Build a named operation: b, P, B, Sq, Q, q, QE, PR, M."""
    one = BaseScalar.one(l)
    if name == "b":
        return SteenrodElement.milnor_monomial(l, E=(1,))
    if name == "P":
        if arg < 0:
            raise ValueError("P index must be >= 0")
        if arg == 0:
            return SteenrodElement.one(l)
        return SteenrodElement.milnor_monomial(l, R=(arg,))
    if name == "B":
        if arg < 0:
            raise ValueError("B index must be >= 0")
        return multiply(make_named(l, "b"), make_named(l, "P", arg))
    if name == "Sq":
        if l != 2:
            raise ValueError("Sq notation requires l = 2")
        if arg < 0:
            raise ValueError("Sq index must be >= 0")
        return make_named(l, "P", arg // 2) if arg % 2 == 0 else make_named(l, "B", arg // 2)
    if name == "Q":
        if arg < 0:
            raise ValueError("Q index must be >= 0")
        E = [0] * (arg + 1)
        E[arg] = 1
        return SteenrodElement.milnor_monomial(l, E=E)
    if name == "q":
        if arg < 1:
            raise ValueError("q index must be >= 1")
        R = [0] * arg
        R[arg - 1] = 1
        return SteenrodElement.milnor_monomial(l, R=R)
    if name == "QE":
        return SteenrodElement.milnor_monomial(l, E=arg)
    if name == "PR":
        return SteenrodElement.milnor_monomial(l, R=arg)
    if name == "M":
        if arg < 1:
            raise ValueError("M index must be >= 1")
        seq = []
        for k in range(arg - 1, -1, -1):
            seq.extend([l**k, 0])
        return SteenrodElement(l, ADMISSIBLE, {tuple([0] + seq): one})
    raise ValueError("unknown operation name %r" % name)


# -- product via the dual coproduct ------------------------------------------

_PAIR_PRODUCT_CACHE: dict = {}


def _basis_pair_product(l: int, m1: MilnorMonomial, m2: MilnorMonomial) -> dict:
    """Product of two Milnor basis monomials, as a term dict."""
    key = (l, m1, m2)
    cached = _PAIR_PRODUCT_CACHE.get(key)
    if cached is not None:
        return cached
    d1 = monomial_bidegree(m1, l)
    d2 = monomial_bidegree(m2, l)
    p_sum, q_sum = d1.d + d2.d, d1.w + d2.w
    slack = max_tau_count(p_sum, l) - tau_count(m1) - tau_count(m2)
    out: dict = {}
    for b in range(0, max(slack, 0) + 1):
        for a in range(0, (max(slack, 0) - b) // 2 + 1):
            pk, qk = p_sum - b, q_sum - a - b
            if pk < 0 or qk < 0:
                continue
            for K in enumerate_monomials(Bidegree(pk, qk), l):
                coef = dual_coproduct(DualElement.monomial(l, K)).coefficient(m1, m2)
                if not coef.is_zero():
                    prev = out.get(K)
                    out[K] = coef if prev is None else prev + coef
    out = {k: c for k, c in out.items() if not c.is_zero()}
    with _LOCK:
        _PAIR_PRODUCT_CACHE[key] = out
    return out


def multiply(x: SteenrodElement, y: SteenrodElement) -> SteenrodElement:
    """Product in the Milnor basis, extended H-bilinearly on the left and
    through coefficient commutation on the right."""
    if x.prime != y.prime:
        raise PrimeMismatch("element primes differ")
    l = x.prime
    if x.basis != MILNOR:
        x = convert_basis(x, MILNOR)
    if y.basis != MILNOR:
        y = convert_basis(y, MILNOR)
    acc: dict = {}
    for m2, c2 in y.terms.items():
        if c2.is_constant():
            pieces = [(BaseScalar.from_int(l, c2.constant_term()), None)]
        else:
            pieces = None
        for m1, c1 in x.terms.items():
            if pieces is not None:
                lefts = [(c1.scale(c2.constant_term()), m1)]
            else:
                moved = commute_coefficient(
                    SteenrodElement(l, MILNOR, {m1: BaseScalar.one(l)}), c2
                )
                lefts = [(c1 * cm, mm) for mm, cm in moved.terms.items()]
            for cl, mm in lefts:
                if cl.is_zero():
                    continue
                for K, d in _basis_pair_product(l, mm, m2).items():
                    coef = cl * d
                    prev = acc.get(K)
                    acc[K] = coef if prev is None else prev + coef
    return SteenrodElement(l, MILNOR, acc)


# -- coproduct (dual to the dual product) ------------------------------------

_COPRODUCT_CACHE: dict = {}


def _coproduct_basis(l: int, K: MilnorMonomial) -> OperationTensor:
    key = (l, K)
    cached = _COPRODUCT_CACHE.get(key)
    if cached is not None:
        return cached
    dK = monomial_bidegree(K, l)
    eK = tau_count(K)
    slack = 2 * max_tau_count(dK.d, l) - eK
    terms: dict = {}
    for b in range(0, max(slack, 0) + 1):
        for a in range(0, (max(slack, 0) - b) // 2 + 1):
            P, Q = dK.d - b, dK.w - a - b
            if P < 0 or Q < 0:
                continue
            for p1 in range(P + 1):
                for q1 in range(Q + 1):
                    lhs = enumerate_monomials(Bidegree(p1, q1), l)
                    if not lhs:
                        continue
                    rhs = enumerate_monomials(Bidegree(P - p1, Q - q1), l)
                    if not rhs:
                        continue
                    for mI in lhs:
                        for mJ in rhs:
                            h = _monomial_product(mI, mJ, l).coefficient(K)
                            if not h.is_zero():
                                pair = (mI, mJ)
                                prev = terms.get(pair)
                                terms[pair] = h if prev is None else prev + h
    out = OperationTensor(l, terms)
    with _LOCK:
        _COPRODUCT_CACHE[key] = out
    return out


def coproduct(x: SteenrodElement) -> OperationTensor:
    """Comultiplication of an element in the Milnor basis."""
    if x.basis != MILNOR:
        x = convert_basis(x, MILNOR)
    acc = OperationTensor(x.prime, {})
    for m, c in x.terms.items():
        part = _coproduct_basis(x.prime, m)
        acc = acc + OperationTensor(x.prime, {k: c * v for k, v in part.terms.items()})
    return acc


def milnor_action_on_base(m: MilnorMonomial, a: BaseScalar) -> BaseScalar:
    """Value of the basis operation M[E;R] on a coefficient."""
    return right_unit(a).coefficient(m)


def commute_coefficient(x: SteenrodElement, a: BaseScalar) -> SteenrodElement:
    """Rewrite (x . a) as a left-coefficient element: x(a u) = sum x'(a) x''(u)."""
    if x.basis != MILNOR:
        x = convert_basis(x, MILNOR)
    l = x.prime
    if a.is_constant():
        return x.scale_int(a.constant_term())
    lam = right_unit(a)
    acc: dict = {}
    for m, c in x.terms.items():
        for (mI, mJ), h in _coproduct_basis(l, m).terms.items():
            val = lam.coefficient(mI)
            if val.is_zero():
                continue
            coef = c * h * val
            prev = acc.get(mJ)
            acc[mJ] = coef if prev is None else prev + coef
    return SteenrodElement(l, MILNOR, acc)


# -- pairing and basis change -------------------------------------------------


def pair(f: DualElement, x: SteenrodElement) -> BaseScalar:
    """Evaluate a dual element on a Milnor-basis element."""
    if x.basis != MILNOR:
        x = convert_basis(x, MILNOR)
    if f.prime != x.prime:
        raise PrimeMismatch("primes differ in pairing")
    out = BaseScalar.zero(x.prime)
    for m, a in f.terms.items():
        b = x.terms.get(m)
        if b is not None:
            out = out + a * b
    return out


_THETA_CACHE: dict = {}


def theta_milnor(l: int, m: MilnorMonomial) -> SteenrodElement:
    """Milnor form of the admissible word attached to an index sequence."""
    key = (l, m)
    cached = _THETA_CACHE.get(key)
    if cached is not None:
        return cached
    seq = seq_from_monomial(m, l)
    out = SteenrodElement.one(l)
    for g in word_from_seq(seq):
        out = multiply(out, make_named(l, "b") if g == ("b",) else make_named(l, "P", g[1]))
    with _LOCK:
        _THETA_CACHE[key] = out
    return out


def pairing_matrix(bidegree: Bidegree, l: int):
    """Rows theta(I) against columns omega(J) for one bidegree.

    Returns (sequences, rows) with both axes sorted by the sequence order;
    entries are scalars in H of degree zero.
    """
    monos = sorted(enumerate_monomials(bidegree, l), key=seq_sort_key)
    rows = []
    for mI in monos:
        milnor = theta_milnor(l, mI)
        rows.append([milnor.coefficient(mJ) for mJ in monos])
    return monos, rows


def convert_basis(x: SteenrodElement, to: str) -> SteenrodElement:
    """Change basis; round trips are the identity."""
    if to not in (MILNOR, ADMISSIBLE):
        raise ValueError("unknown basis tag %r" % to)
    l = x.prime
    if x.basis == to:
        return x
    if x.basis == ADMISSIBLE:
        acc = SteenrodElement.zero(l, MILNOR)
        for seq, c in x.terms.items():
            m = monomial_from_seq(seq, l)
            acc = acc + theta_milnor(l, m).scale(c)
        return acc
    # Milnor -> admissible: peel the largest remaining sequence.
    work = dict(x.terms)
    out: dict = {}
    while work:
        m_top = max(work, key=seq_sort_key)
        c_top = work.pop(m_top)
        milnor = theta_milnor(l, m_top)
        diag = milnor.coefficient(m_top)
        dc = diag.constant_term()
        if not diag.is_constant() or dc % l == 0:
            raise TriangularityError(
                "no unit diagonal at sequence %r (pairing %s)" % (m_top, diag)
            )
        for m2 in milnor.terms:
            if m2 != m_top and seq_compare(m2, m_top) > 0:
                raise TriangularityError(
                    "pairing not triangular: %r appears above %r" % (m2, m_top)
                )
        inv = pow(dc, -1, l)
        y = c_top.scale(inv)
        seq = seq_from_monomial(m_top, l)
        prev = out.get(seq)
        out[seq] = y if prev is None else prev + y
        for m2, c2 in milnor.terms.items():
            if m2 == m_top:
                continue
            delta = y * c2
            cur = work.get(m2)
            cur = (-delta) if cur is None else cur - delta
            if cur.is_zero():
                work.pop(m2, None)
            else:
                work[m2] = cur
    return SteenrodElement(l, ADMISSIBLE, out)


# -- specialization -----------------------------------------------------------


def specialize(x: SteenrodElement, tau_val: int, rho_val: int) -> SteenrodElement:
    """Substitute residues for tau and rho in every coefficient."""
    terms = {k: c.substitute(tau_val, rho_val) for k, c in x.terms.items()}
    return SteenrodElement(x.prime, x.basis, terms)


# -- generated Adem tables and word rewriting ----------------------------------


def seq_from_word(word, l: int) -> tuple:
    """Recover the sequence key of an admissible generator word."""
    word = list(word)
    seq = [0]
    if word and word[0] == ("b",):
        seq[0] = 1
        word.pop(0)
    while word:
        g = word.pop(0)
        if g[0] != "P":
            raise ValueError("word is not of admissible shape")
        eps = 0
        if word and word[0] == ("b",):
            eps = 1
            word.pop(0)
        seq.extend([g[1], eps])
    out = tuple(seq)
    if not seq_is_admissible(out, l):
        raise ValueError("word %r is not admissible over l=%d" % (out, l))
    return out


def serialize_admissible(x: SteenrodElement) -> list:
    out = []
    for seq, c in x.sorted_terms():
        coefs = [
            {"rho": b, "tau": a, "c": cc} for (b, a), cc in c.sorted_terms()
        ]
        out.append({"seq": list(seq), "coef": coefs})
    return out


def deserialize_admissible(l: int, data: list) -> SteenrodElement:
    terms: dict = {}
    for rec in data:
        seq = tuple(rec["seq"])
        c = BaseScalar.zero(l)
        for mono in rec["coef"]:
            c = c + BaseScalar.monomial(l, mono["rho"], mono["tau"], mono["c"])
        prev = terms.get(seq)
        terms[seq] = c if prev is None else prev + c
    return SteenrodElement(l, ADMISSIBLE, terms)


def adem_table(l: int, a: int, b: int, beta_middle: bool = False, cache=None) -> SteenrodElement:
    """Admissible expansion of P^a P^b (or P^a B^b when beta_middle is set).

    Generated from the dual product route and cached; valid for
    0 < a < l*b in the plain case and 0 < a <= l*b with the middle
    Bockstein.  At l = 2 plain pairs encode Sq^(2a) Sq^(2b).
    """
    eps = 1 if beta_middle else 0
    if a <= 0 or b <= 0:
        raise ValueError("indices must be positive")
    if (not beta_middle and a >= l * b) or (beta_middle and a > l * b):
        raise ValueError("pair (a=%d, b=%d, eps=%d) is already admissible" % (a, b, eps))
    if cache is not None:
        hit = cache.get(a, b, eps)
        if hit is not None:
            return deserialize_admissible(l, hit)
    x = make_named(l, "P", a)
    y = make_named(l, "B", b) if beta_middle else make_named(l, "P", b)
    res = convert_basis(multiply(x, y), ADMISSIBLE)
    if cache is not None:
        cache.put(a, b, eps, serialize_admissible(res))
    return res


def _scalar_word_terms(c: BaseScalar):
    """Split a scalar into (int coefficient, inline coefficient token) parts."""
    for (b, a), cc in c.terms.items():
        yield cc, None if (b, a) == (0, 0) else ("c", b, a)


def _commute_token_left(l: int, gen, ctok):
    """Rewrite gen . coefficient as sum of coefficient . word pieces.

    Returns a list of (scalar, token list) where the scalar collects what the
    generator produced from the coefficient and the token list is what remains
    to the right.
    """
    from .base import scalar_pb_action

    mono = BaseScalar.monomial(l, ctok[1], ctok[2])
    out = []
    if gen == ("b",):
        acted = scalar_pb_action("B", 0, mono)
        if not acted.is_zero():
            out.append((acted, []))
        out.append((mono, [("b",)]))
        return out
    i = gen[1]
    for r in range(i + 1):
        acted = scalar_pb_action("P", r, mono)
        if not acted.is_zero():
            rest = [] if i - r == 0 else [("P", i - r)]
            out.append((acted, rest))
    if l == 2:
        tau = BaseScalar.tau(l)
        for s in range(i):
            acted = scalar_pb_action("B", s, mono)
            if not acted.is_zero():
                rest = [("b",)] if i - 1 - s == 0 else [("b",), ("P", i - 1 - s)]
                out.append((tau * acted, rest))
    return out


def adem_normalize(l: int, word_terms, cache=None, max_steps: int = 1_000_000) -> SteenrodElement:
    """Rewrite generator words into the admissible basis.

    ``word_terms`` is an iterable of (BaseScalar, word) pairs where a word is
    a tuple of ('b',) / ('P', i) tokens.  The leftmost inadmissible adjacent
    pair is expanded through adem_table; coefficients produced inside a word
    are commuted to the far left one generator at a time.
    """
    queue = [(c, tuple(w)) for c, w in word_terms]
    done: dict = {}
    steps = 0
    while queue:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("adem normalization exceeded %d steps" % max_steps)
        coef, word = queue.pop()
        if coef.is_zero():
            continue
        # absorb or move inline coefficient tokens
        ct = next((i for i, t in enumerate(word) if t[0] == "c"), None)
        if ct is not None:
            if ct == 0:
                mono = BaseScalar.monomial(l, word[0][1], word[0][2])
                queue.append((coef * mono, word[1:]))
                continue
            gen = word[ct - 1]
            pre, post = word[: ct - 1], word[ct + 1 :]
            for acted, mid in _commute_token_left(l, gen, word[ct]):
                for cc, tok in _scalar_word_terms(acted):
                    new = pre + ((tok,) if tok else ()) + tuple(mid) + post
                    queue.append((coef.scale(cc), new))
            continue
        # drop identity generators
        pz = next((i for i, t in enumerate(word) if t == ("P", 0)), None)
        if pz is not None:
            queue.append((coef, word[:pz] + word[pz + 1 :]))
            continue
        # leftmost inadmissible spot
        spliced = False
        for i in range(len(word)):
            if word[i] == ("b",) and i + 1 < len(word) and word[i + 1] == ("b",):
                spliced = True  # Bockstein squares to zero
                break
            if word[i][0] != "P":
                continue
            a = word[i][1]
            if i + 1 < len(word) and word[i + 1][0] == "P" and a < l * word[i + 1][1]:
                expansion = adem_table(l, a, word[i + 1][1], False, cache)
                _splice(queue, coef, word, i, 2, expansion)
                spliced = True
                break
            if (
                i + 2 < len(word)
                and word[i + 1] == ("b",)
                and word[i + 2][0] == "P"
                and a <= l * word[i + 2][1]
            ):
                expansion = adem_table(l, a, word[i + 2][1], True, cache)
                _splice(queue, coef, word, i, 3, expansion)
                spliced = True
                break
        if spliced:
            continue
        seq = seq_from_word(word, l)
        prev = done.get(seq)
        done[seq] = coef if prev is None else prev + coef
    return SteenrodElement(l, ADMISSIBLE, done)


def _splice(queue, coef, word, start, width, expansion: SteenrodElement):
    pre, post = word[:start], word[start + width :]
    for seq, c in expansion.terms.items():
        mid = word_from_seq(seq)
        for cc, tok in _scalar_word_terms(c):
            new = pre + ((tok,) if tok else ()) + mid + post
            queue.append((coef.scale(cc), new))
