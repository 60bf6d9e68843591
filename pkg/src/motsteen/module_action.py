"""Action of the Steenrod algebra on the cohomology of a product of
classifying-space factors.

The module is H[u_1..u_N, v_1..v_N] / (u_j^2 = tau v_j + rho u_j) with
u_j of bidegree (1,1) and v_j of bidegree (2,1) = bockstein(u_j); for odd
primes u_j^2 = 0 and the u_j anticommute.  Generators act by

    bockstein: u_j -> v_j, v_j -> 0        P^i: u_j -> 0 (i > 0)
    P^0 = id                               P^1: v_j -> v_j^l, P^i: v_j -> 0 (i > 1)

extended over products by the twisted two-variable rule and over the
coefficient ring by the base action.  This route never touches the dual
algebra, which is what makes the composition cross-check meaningful.
"""

from __future__ import annotations

import threading

from .base import BaseScalar, Bidegree, PrimeMismatch, binomial_mod_l, scalar_pb_action
from .steenrod import ADMISSIBLE, SteenrodElement, convert_basis, specialize, word_from_seq

_LOCK = threading.Lock()


class ModuleElement:
    """Element of the truncated module over N factors.

    Term keys are (eps, ks) with eps a 0/1 tuple and ks a tuple of
    exponents, standing for u_1^eps_1 .. u_N^eps_N v_1^k_1 .. v_N^k_N in
    that order.  Terms whose total v-exponent exceeds ``cap`` are dropped
    and the element is flagged truncated.
    """

    __slots__ = ("prime", "n", "cap", "terms", "truncated")

    def __init__(self, prime: int, n: int, cap: int, terms: dict | None = None, truncated: bool = False):
        self.prime = prime
        self.n = n
        self.cap = cap
        self.truncated = truncated
        clean = {}
        for (eps, ks), c in (terms or {}).items():
            if len(eps) != n or len(ks) != n:
                raise ValueError("term arity does not match factor count")
            if c.prime != prime:
                raise PrimeMismatch("coefficient prime mismatch")
            if sum(ks) > cap:
                self.truncated = True
                continue
            if not c.is_zero():
                clean[(eps, ks)] = c
        self.terms = clean

    @classmethod
    def zero(cls, l: int, n: int, cap: int) -> "ModuleElement":
        return cls(l, n, cap, {})

    @classmethod
    def one(cls, l: int, n: int, cap: int) -> "ModuleElement":
        key = ((0,) * n, (0,) * n)
        return cls(l, n, cap, {key: BaseScalar.one(l)})

    @classmethod
    def scalar(cls, l: int, n: int, cap: int, a: BaseScalar) -> "ModuleElement":
        key = ((0,) * n, (0,) * n)
        return cls(l, n, cap, {key: a})

    @classmethod
    def gen_u(cls, l: int, n: int, cap: int, j: int) -> "ModuleElement":
        eps = tuple(1 if i == j - 1 else 0 for i in range(n))
        return cls(l, n, cap, {(eps, (0,) * n): BaseScalar.one(l)})

    @classmethod
    def gen_v(cls, l: int, n: int, cap: int, j: int, k: int = 1) -> "ModuleElement":
        ks = tuple(k if i == j - 1 else 0 for i in range(n))
        return cls(l, n, cap, {((0,) * n, ks): BaseScalar.one(l)})

    def _compat(self, other: "ModuleElement") -> None:
        if (self.prime, self.n, self.cap) != (other.prime, other.n, other.cap):
            raise ValueError("module parameters differ")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._compat(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            prev = terms.get(k)
            terms[k] = c if prev is None else prev + c
        return ModuleElement(self.prime, self.n, self.cap, terms, self.truncated or other.truncated)

    def scale(self, a: BaseScalar) -> "ModuleElement":
        return ModuleElement(
            self.prime, self.n, self.cap,
            {k: a * c for k, c in self.terms.items()}, self.truncated,
        )

    def scale_int(self, c: int) -> "ModuleElement":
        return ModuleElement(
            self.prime, self.n, self.cap,
            {k: v.scale(c) for k, v in self.terms.items()}, self.truncated,
        )

    def __mul__(self, other: "ModuleElement") -> "ModuleElement":
        return module_multiply(self, other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModuleElement)
            and (self.prime, self.n, self.cap) == (other.prime, other.n, other.cap)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.prime, self.n, self.cap, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, eps: tuple, ks: tuple) -> BaseScalar:
        return self.terms.get((eps, ks), BaseScalar.zero(self.prime))

    def substitute(self, tau_val: int, rho_val: int) -> "ModuleElement":
        terms = {k: c.substitute(tau_val, rho_val) for k, c in self.terms.items()}
        return ModuleElement(self.prime, self.n, self.cap, terms, self.truncated)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (eps, ks), c in self.sorted_terms():
            factors = []
            for j in range(self.n):
                if eps[j]:
                    factors.append("u%d" % (j + 1))
            for j in range(self.n):
                if ks[j] == 1:
                    factors.append("v%d" % (j + 1))
                elif ks[j] > 1:
                    factors.append("v%d^%d" % (j + 1, ks[j]))
            body = " ".join(factors) if factors else "1"
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


def term_bidegree(l: int, coef_key: tuple, eps: tuple, ks: tuple) -> Bidegree:
    b, a = coef_key
    p = b + sum(eps) + 2 * sum(ks)
    q = a + b + sum(eps) + sum(ks)
    return Bidegree(p, q)


def module_multiply(w1: ModuleElement, w2: ModuleElement) -> ModuleElement:
    """Product with u_j^2 reduced eagerly; dropped terms set the flag."""
    w1._compat(w2)
    l, n, cap = w1.prime, w1.n, w1.cap
    out = ModuleElement.zero(l, n, cap)
    acc: dict = {}
    truncated = w1.truncated or w2.truncated
    for (e1, k1), c1 in w1.terms.items():
        for (e2, k2), c2 in w2.terms.items():
            sign = 1
            if l != 2:
                inv = sum(
                    e2[j] and sum(e1[j2] for j2 in range(j + 1, n))
                    for j in range(n)
                )
                sign = -1 if inv % 2 else 1
            coef = (c1 * c2).scale(sign)
            stack = [(coef, tuple(a + b for a, b in zip(e1, e2)), tuple(a + b for a, b in zip(k1, k2)))]
            while stack:
                c, eps, ks = stack.pop()
                j = next((i for i in range(n) if eps[i] >= 2), None)
                if j is None:
                    if sum(ks) > cap:
                        truncated = True
                        continue
                    key = (eps, ks)
                    prev = acc.get(key)
                    acc[key] = c if prev is None else prev + c
                    continue
                if l != 2:
                    continue
                # u_j^2 = tau v_j + rho u_j
                e0 = tuple(0 if i == j else x for i, x in enumerate(eps))
                kp = tuple(x + 1 if i == j else x for i, x in enumerate(ks))
                stack.append((c * BaseScalar.tau(l), e0, kp))
                e1b = tuple(1 if i == j else x for i, x in enumerate(eps))
                stack.append((c * BaseScalar.rho(l), e1b, ks))
    return ModuleElement(l, n, cap, acc, truncated)


# -- generator action ----------------------------------------------------------
#
# A term is treated as the ordered product of blocks
#   coefficient block, u-blocks, v-blocks
# and P^i / B^i distribute over the product by
#   P^i(xy) = sum P^r(x) P^(i-r)(y) + tau sum B^s(x) B^(i-1-s)(y)
#   B^i(xy) = sum B^r(x) P^(i-r)(y) + (-1)^|x| P^r(x) B^(i-r)(y)
#             + rho sum B^s(x) B^(i-1-s)(y)
# with the tau/rho corrections only at l = 2.


def _block_action(kind: str, i: int, block, l: int, n: int, cap: int) -> ModuleElement:
    tag = block[0]
    if tag == "c":
        acted = scalar_pb_action(kind, i, BaseScalar.monomial(l, block[1], block[2]))
        return ModuleElement.scalar(l, n, cap, acted)
    if tag == "u":
        j = block[1]
        if kind == "P":
            return ModuleElement.gen_u(l, n, cap, j) if i == 0 else ModuleElement.zero(l, n, cap)
        return ModuleElement.gen_v(l, n, cap, j) if i == 0 else ModuleElement.zero(l, n, cap)
    # v-block carries its exponent
    j, k = block[1], block[2]
    if kind == "B":
        return ModuleElement.zero(l, n, cap)
    c = binomial_mod_l(k, i, l)
    if c == 0:
        return ModuleElement.zero(l, n, cap)
    out = ModuleElement.gen_v(l, n, cap, j, k + i * (l - 1))
    return out.scale_int(c)


def _block_parity(block) -> int:
    return 1 if block[0] == "u" else 0


_APPLY_CACHE: dict = {}


def _apply_blocks(kind: str, i: int, blocks: tuple, l: int, n: int, cap: int) -> ModuleElement:
    if i < 0:
        return ModuleElement.zero(l, n, cap)
    if not blocks:
        if kind == "P" and i == 0:
            return ModuleElement.one(l, n, cap)
        return ModuleElement.zero(l, n, cap)
    if len(blocks) == 1:
        return _block_action(kind, i, blocks[0], l, n, cap)
    key = (kind, i, blocks, l, n, cap)
    cached = _APPLY_CACHE.get(key)
    if cached is not None:
        return cached
    head, tail = blocks[:1], blocks[1:]
    out = ModuleElement.zero(l, n, cap)
    if kind == "P":
        for r in range(i + 1):
            hp = _apply_blocks("P", r, head, l, n, cap)
            if hp.is_zero():
                continue
            tp = _apply_blocks("P", i - r, tail, l, n, cap)
            if not tp.is_zero():
                out = out + module_multiply(hp, tp)
        if l == 2:
            tau = BaseScalar.tau(l)
            for s in range(i):
                hb = _apply_blocks("B", s, head, l, n, cap)
                if hb.is_zero():
                    continue
                tb = _apply_blocks("B", i - 1 - s, tail, l, n, cap)
                if not tb.is_zero():
                    out = out + module_multiply(hb, tb).scale(tau)
    else:
        sgn = -1 if (l != 2 and _block_parity(blocks[0]) % 2) else 1
        for r in range(i + 1):
            hb = _apply_blocks("B", r, head, l, n, cap)
            if not hb.is_zero():
                tp = _apply_blocks("P", i - r, tail, l, n, cap)
                if not tp.is_zero():
                    out = out + module_multiply(hb, tp)
            hp = _apply_blocks("P", r, head, l, n, cap)
            if not hp.is_zero():
                tb = _apply_blocks("B", i - r, tail, l, n, cap)
                if not tb.is_zero():
                    out = out + module_multiply(hp, tb).scale_int(sgn)
        if l == 2:
            rho = BaseScalar.rho(l)
            for s in range(i):
                hb = _apply_blocks("B", s, head, l, n, cap)
                if hb.is_zero():
                    continue
                tb = _apply_blocks("B", i - 1 - s, tail, l, n, cap)
                if not tb.is_zero():
                    out = out + module_multiply(hb, tb).scale(rho)
    with _LOCK:
        _APPLY_CACHE[key] = out
    return out


def _term_blocks(coef_key: tuple, eps: tuple, ks: tuple) -> tuple:
    blocks = []
    b, a = coef_key
    if b or a:
        blocks.append(("c", b, a))
    for j, e in enumerate(eps):
        if e:
            blocks.append(("u", j + 1))
    for j, k in enumerate(ks):
        if k:
            blocks.append(("v", j + 1, k))
    return tuple(blocks)


def act_generator(g, w: ModuleElement) -> ModuleElement:
    """Apply a single generator tag, 'b' or ('P', i)."""
    kind, i = ("B", 0) if g in ("b", ("b",)) else ("P", g[1])
    l, n, cap = w.prime, w.n, w.cap
    out = ModuleElement(l, n, cap, {}, w.truncated)
    for (eps, ks), c in w.terms.items():
        for (cb, ca), cc in c.terms.items():
            blocks = _term_blocks((cb, ca), eps, ks)
            res = _apply_blocks(kind, i, blocks, l, n, cap)
            if not res.is_zero() or res.truncated:
                out = out + res.scale_int(cc)
    return out


def act(x: SteenrodElement, w: ModuleElement) -> ModuleElement:
    """Apply an element: admissible words run right to left, left
    coefficients multiply the result."""
    if x.prime != w.prime:
        raise PrimeMismatch("operation prime %d != module prime %d" % (x.prime, w.prime))
    if x.basis != ADMISSIBLE:
        x = convert_basis(x, ADMISSIBLE)
    l, n, cap = w.prime, w.n, w.cap
    out = ModuleElement.zero(l, n, cap)
    for seq, coef in x.terms.items():
        cur = w
        for g in reversed(word_from_seq(seq)):
            cur = act_generator(g, cur)
        out = out + cur.scale(coef)
    return out


def act_rigid(x: SteenrodElement, w: ModuleElement) -> ModuleElement:
    """Action in the quotient with rho = tau = 0, via Lucas binomials."""
    if x.prime != w.prime:
        raise PrimeMismatch("operation prime %d != module prime %d" % (x.prime, w.prime))
    if x.basis != ADMISSIBLE:
        x = convert_basis(x, ADMISSIBLE)
    x = specialize(x, 0, 0)
    l, n, cap = w.prime, w.n, w.cap
    w = w.substitute(0, 0)
    out = ModuleElement.zero(l, n, cap)
    for seq, coef in x.terms.items():
        cur = w
        for g in reversed(word_from_seq(seq)):
            cur = _rigid_generator(g, cur)
        out = out + cur.scale(coef)
    return out


def _rigid_generator(g, w: ModuleElement) -> ModuleElement:
    l, n, cap = w.prime, w.n, w.cap
    acc: dict = {}
    truncated = w.truncated

    def add(key, c):
        if sum(key[1]) > cap:
            nonlocal truncated
            truncated = True
            return
        prev = acc.get(key)
        acc[key] = c if prev is None else prev + c

    if g in ("b", ("b",)):
        for (eps, ks), c in w.terms.items():
            before = 0
            for j in range(n):
                if eps[j]:
                    e2 = tuple(0 if i == j else x for i, x in enumerate(eps))
                    k2 = tuple(x + 1 if i == j else x for i, x in enumerate(ks))
                    sign = -1 if (l != 2 and before % 2) else 1
                    add((e2, k2), c.scale(sign))
                    before += 1
        return ModuleElement(l, n, cap, acc, truncated)
    i = g[1]
    for (eps, ks), c in w.terms.items():
        for split, mult in _compositions(ks, i, l):
            k2 = tuple(k + d * (l - 1) for k, d in zip(ks, split))
            add((eps, k2), c.scale(mult))
    return ModuleElement(l, n, cap, acc, truncated)


def _compositions(ks: tuple, total: int, l: int):
    """Distributions of P-weight over v-blocks with Lucas multiplicities."""
    out = []

    def rec(j: int, left: int, split: list, mult: int):
        if mult == 0:
            return
        if j == len(ks):
            if left == 0:
                out.append((tuple(split), mult))
            return
        for d in range(left + 1):
            rec(j + 1, left - d, split + [d], mult * binomial_mod_l(ks[j], d, l) % l)

    rec(0, total, [], 1)
    return out
