"""Runnable acceptance criteria, shared by the test suite and `check`.

Each criterion function returns (ok, detail).  All comparisons are exact;
the bounds baked in here are the contract, not tunables.
"""

from __future__ import annotations

import itertools
import random

from .base import BaseScalar, Bidegree, binomial_mod_l
from .charclass import FormalBundle, SymmetricPoly, s_R, thom_class_action, to_chern
from .classical import classical_product, monomial_to_classical
from .dual import (
    MONO_ONE,
    DualElement,
    TwistedTensor,
    dual_coproduct,
    dual_multiply,
    enumerate_monomials,
    make_monomial,
    monomial_bidegree,
    right_unit,
)
from .module_action import ModuleElement, act, act_generator, act_rigid, module_multiply
from .ademcheck import discrepancy_report
from .steenrod import (
    ADMISSIBLE,
    MILNOR,
    SteenrodElement,
    convert_basis,
    make_named,
    multiply,
    pairing_matrix,
    seq_from_monomial,
    specialize,
    word_from_seq,
)


def _monomials_up_to(l: int, pmax: int):
    out = []
    for p in range(pmax + 1):
        for q in range(p + 1):
            out.extend(enumerate_monomials(Bidegree(p, q), l))
    return out


def criterion_1_dual_relation():
    """tau_0^2 = tau xi_1 + rho tau_1 + rho tau_0 xi_1 at l = 2."""
    l = 2
    t0 = DualElement.generator_tau(l, 0)
    got = dual_multiply(t0, t0)
    want = DualElement(
        l,
        {
            make_monomial((), (1,)): BaseScalar.tau(l),
            make_monomial((0, 1), ()): BaseScalar.rho(l),
            make_monomial((1,), (1,)): BaseScalar.rho(l),
        },
    )
    return got == want, "tau_0^2 = %s" % got


def criterion_2_coproduct_goldens():
    """Coproducts of xi_k and tau_k match their defining sums, k <= 4."""
    for l in (2, 3):
        for k in range(0, 5):
            want = TwistedTensor(l, {})
            one = BaseScalar.one(l)
            for i in range(k + 1):
                left = _xi_pow(l, k - i, l**i)
                right = _xi_pow(l, i, 1)
                want = want + TwistedTensor(l, {(left, right): one})
            got = dual_coproduct(DualElement.generator_xi(l, k))
            if got != want:
                return False, "xi_%d coproduct mismatch at l=%d" % (k, l)
            want = TwistedTensor(l, {(_tau_mono(k), MONO_ONE): one})
            for i in range(k + 1):
                want = want + TwistedTensor(l, {(_xi_pow(l, k - i, l**i), _tau_mono(i)): one})
            got = dual_coproduct(DualElement.generator_tau(l, k))
            if got != want:
                return False, "tau_%d coproduct mismatch at l=%d" % (k, l)
    return True, "xi_k, tau_k for k <= 4, l in {2,3}"


def _xi_pow(l, idx, e):
    if idx == 0 or e == 0:
        return MONO_ONE
    R = [0] * idx
    R[idx - 1] = e
    return make_monomial((), R)


def _tau_mono(i):
    E = [0] * (i + 1)
    E[i] = 1
    return make_monomial(E, ())


def _triple_from_left(x: DualElement):
    """Normalized (psi (x) id) psi."""
    acc: dict = {}
    for (mI, mJ), h in dual_coproduct(x).terms.items():
        for (mA, mB), g in dual_coproduct(DualElement.monomial(x.prime, mI)).terms.items():
            key = (mA, mB, mJ)
            c = h * g
            prev = acc.get(key)
            acc[key] = c if prev is None else prev + c
    return {k: v for k, v in acc.items() if not v.is_zero()}


def _triple_from_right(x: DualElement):
    """Normalized (id (x) psi) psi, right-slot coefficients transported."""
    l = x.prime
    acc: dict = {}
    for (mI, mJ), h in dual_coproduct(x).terms.items():
        for (mB, mC), g in dual_coproduct(DualElement.monomial(l, mJ)).terms.items():
            moved = dual_multiply(DualElement.monomial(l, mI), right_unit(g))
            for mM, e in moved.terms.items():
                key = (mM, mB, mC)
                c = h * e
                prev = acc.get(key)
                acc[key] = c if prev is None else prev + c
    return {k: v for k, v in acc.items() if not v.is_zero()}


def criterion_3_bialgebra(pmax: int = 16):
    """Coassociativity and multiplicativity of the coproduct at l = 2."""
    l = 2
    monos = _monomials_up_to(l, pmax)
    for m in monos:
        x = DualElement.monomial(l, m)
        if _triple_from_left(x) != _triple_from_right(x):
            return False, "coassociativity fails on %s" % (m,)
    by_degree: dict = {}
    for m in monos:
        by_degree.setdefault(monomial_bidegree(m, l).d, []).append(m)
    checked = 0
    for p1 in sorted(by_degree):
        for p2 in sorted(by_degree):
            if p1 + p2 > pmax:
                break
            for m1 in by_degree[p1]:
                x = DualElement.monomial(l, m1)
                cox = dual_coproduct(x)
                for m2 in by_degree[p2]:
                    y = DualElement.monomial(l, m2)
                    lhs = dual_coproduct(dual_multiply(x, y))
                    rhs = cox * dual_coproduct(y)
                    if lhs != rhs:
                        return False, "bialgebra fails on %s * %s" % (m1, m2)
                    checked += 1
    return True, "%d monomials, %d pairs" % (len(monos), checked)


def criterion_4_triangularity():
    """Unit-diagonal triangular pairing per bidegree, l=2 to 16, l=3 to 24."""
    total = 0
    for l, pmax in ((2, 16), (3, 24)):
        for p in range(pmax + 1):
            for q in range(p + 1):
                monos, rows = pairing_matrix(Bidegree(p, q), l)
                n = len(monos)
                total += n
                for i in range(n):
                    d = rows[i][i]
                    if not (d.is_constant() and d.constant_term() % l != 0):
                        return False, "diagonal not a unit at %s l=%d" % ((p, q), l)
                    for j in range(i + 1, n):
                        if not rows[i][j].is_zero():
                            return False, "entry above diagonal at %s l=%d" % ((p, q), l)
    return True, "%d basis sequences checked" % total


def criterion_5_commutators():
    """q_i Q_0 - Q_0 q_i = Q_i and the Sq4/Q1 commutator correction."""
    l = 2
    Q0 = make_named(l, "Q", 0)
    for i in (1, 2, 3):
        qi = make_named(l, "q", i)
        got = multiply(qi, Q0) - multiply(Q0, qi)
        if got != make_named(l, "Q", i):
            return False, "commutator fails for i=%d" % i
    Sq4 = make_named(l, "Sq", 4)
    Q1 = make_named(l, "Q", 1)
    lhs = multiply(Sq4, Q1) - multiply(Q1, Sq4)
    rhs = make_named(l, "Q", 2) + multiply(Q0, multiply(Q1, make_named(l, "Sq", 2))).scale(
        BaseScalar.rho(l)
    )
    if lhs != rhs:
        return False, "Sq4 Q1 - Q1 Sq4 = %s" % lhs
    return True, "i in {1,2,3} and the rho-corrected commutator"


def criterion_6_exterior():
    """Q_i Q_j + Q_j Q_i = 0 and Q_i^2 = 0 for i, j <= 3."""
    l = 2
    Q = [make_named(l, "Q", i) for i in range(4)]
    for i in range(4):
        if not multiply(Q[i], Q[i]).is_zero():
            return False, "Q_%d^2 != 0" % i
        for j in range(4):
            anti = multiply(Q[i], Q[j]) + multiply(Q[j], Q[i])
            if not anti.is_zero():
                return False, "Q_%d Q_%d + Q_%d Q_%d != 0" % (i, j, j, i)
    return True, "exterior relations for i,j <= 3"


def criterion_7_adem_goldens():
    """P1 P1 = 2 P2 at l = 3 and Sq2 Sq2 = tau Sq3 Sq1 at l = 2."""
    P1 = make_named(3, "P", 1)
    got = multiply(P1, P1)
    want = make_named(3, "P", 2).scale_int(2)
    if got != want:
        return False, "P1 P1 = %s at l=3" % got
    Sq2 = make_named(2, "Sq", 2)
    got2 = convert_basis(multiply(Sq2, Sq2), ADMISSIBLE)
    want2 = SteenrodElement(2, ADMISSIBLE, {(1, 1, 1): BaseScalar.tau(2)})
    if got2 != want2:
        return False, "Sq2 Sq2 = %s at l=2" % got2
    return True, "both goldens exact"


def criterion_8_classical_degeneration():
    """Product table at (tau, rho) = (1, 0) matches the matrix-rule
    product for Sq^a Sq^b, a + b <= 14, plus three named identities."""
    l = 2
    for a in range(1, 14):
        for b in range(1, 14):
            if a + b > 14:
                continue
            x, y = make_named(l, "Sq", a), make_named(l, "Sq", b)
            got = {
                monomial_to_classical(m): c.constant_term()
                for m, c in specialize(multiply(x, y), 1, 0).terms.items()
            }
            m1 = monomial_to_classical(next(iter(x.terms)))
            m2 = monomial_to_classical(next(iter(y.terms)))
            if got != classical_product(m1, m2):
                return False, "mismatch at Sq%d Sq%d" % (a, b)
    # Sq3, Sq3 Sq1, Sq5 + Sq4 Sq1 as sequence keys (e0, s1, e1, ...)
    named = [
        (1, 2, {(1, 1, 0): BaseScalar.one(l)}),
        (2, 2, {(1, 1, 1): BaseScalar.one(l)}),
        (2, 3, {(1, 2, 0): BaseScalar.one(l), (0, 2, 1): BaseScalar.one(l)}),
    ]
    for a, b, want in named:
        got = specialize(
            convert_basis(multiply(make_named(l, "Sq", a), make_named(l, "Sq", b)), ADMISSIBLE),
            1,
            0,
        )
        if got != SteenrodElement(l, ADMISSIBLE, want):
            return False, "named identity Sq%d Sq%d = %s" % (a, b, got)
    return True, "49 products plus named identities"


def _admissible_up_to(l: int, pmax: int):
    seqs = []
    for p in range(pmax + 1):
        for q in range(p + 1):
            for m in enumerate_monomials(Bidegree(p, q), l):
                seqs.append((seq_from_monomial(m, l), p))
    return seqs


def generic_module_witness(l: int = 2, n: int = 3, cap: int = 16) -> ModuleElement:
    w = ModuleElement.gen_u(l, n, cap, 1)
    for j in (2, 3):
        w = module_multiply(w, ModuleElement.gen_u(l, n, cap, j))
    w = w + ModuleElement.gen_v(l, n, cap, 1).scale(BaseScalar.tau(l))
    w = w + module_multiply(
        ModuleElement.gen_u(l, n, cap, 2), ModuleElement.gen_v(l, n, cap, 3)
    ).scale(BaseScalar.rho(l))
    return w


def criterion_9_composition(pmax: int = 12):
    """act(x y) = act(x) . act(y) over all admissible pairs, l = 2."""
    l, n, cap = 2, 3, 16
    w = generic_module_witness(l, n, cap)
    seqs = _admissible_up_to(l, pmax)
    elts = {}
    acted = {}
    for seq, p in seqs:
        e = SteenrodElement(l, ADMISSIBLE, {seq: BaseScalar.one(l)})
        elts[seq] = (e, p)
        acted[seq] = act(e, w)
    checked = 0
    for s1, (x, p1) in elts.items():
        for s2, (y, p2) in elts.items():
            if p1 + p2 > pmax:
                continue
            lhs = act(multiply(x, y), w)
            rhs = act(x, acted[s2])
            if lhs.truncated or rhs.truncated:
                return False, "truncation hit at %s, %s" % (s1, s2)
            if lhs != rhs:
                return False, "composition fails at %s, %s" % (s1, s2)
            checked += 1
    return True, "%d pairs on a 3-factor witness, cap 16" % checked


def criterion_10_module_goldens():
    """Generator goldens and the rigid Lucas table."""
    l, n, cap = 2, 1, 64
    u = ModuleElement.gen_u(l, n, cap, 1)
    v = ModuleElement.gen_v(l, n, cap, 1)
    if act_generator("b", u) != v:
        return False, "bockstein(u) != v"
    if act_generator(("P", 1), v) != ModuleElement.gen_v(l, n, cap, 1, 2):
        return False, "Sq2(v) != v^2"
    for i in range(3):
        want = ModuleElement.gen_v(l, n, cap, 1, 2**i)
        if act(make_named(l, "Q", i), u) != want:
            return False, "Q_%d(u) != v^(2^%d)" % (i, i)
    for l2 in (2, 3):
        for k in range(11):
            for i in range(5):
                vk = ModuleElement.gen_v(l2, 1, 64, 1, k)
                got = act_rigid(make_named(l2, "P", i), vk)
                c = binomial_mod_l(k, i, l2)
                want = ModuleElement.gen_v(l2, 1, 64, 1, k + i * (l2 - 1)).scale_int(c)
                if got != want:
                    return False, "rigid P^%d(v^%d) at l=%d" % (i, k, l2)
    return True, "generator goldens and Lucas table k <= 10, i <= 4"


def criterion_11_characteristic_classes():
    """Rank-one tables, vanishing with Bockstein part, and P1 on 2 roots."""
    l = 2
    L = FormalBundle(1)
    for nn in range(4):
        R = [0] * nn
        if nn:
            R[nn - 1] = 1
        got = thom_class_action(make_monomial((), R), L, l)
        want = SymmetricPoly(l, 1, {(l**nn - 1,): 1})
        if got != want:
            return False, "q_%d on a line bundle" % nn
    for k in range(1, 4):
        got = thom_class_action(make_named(l, "M", k), L)
        want = SymmetricPoly(l, 1, {(l**k - 1,): 1})
        if got != want:
            return False, "M_%d on a line bundle" % k
    # every other admissible word up to the degree of M_3 acts by zero
    for seq, p in _admissible_up_to(l, 2 * (l**3 - 1)):
        if seq == (0,) or _is_mk(seq, l):
            continue
        e = SteenrodElement(l, ADMISSIBLE, {seq: BaseScalar.one(l)})
        if not thom_class_action(e, L).is_zero():
            return False, "admissible %s is nonzero on a line bundle" % (seq,)
    rng = random.Random(11)
    for _ in range(20):
        E = [rng.randint(0, 1) for _ in range(3)]
        if not any(E):
            E[rng.randrange(3)] = 1
        R = [rng.randint(0, 2) for _ in range(2)]
        got = thom_class_action(make_monomial(E, R), FormalBundle(3), l)
        if not got.is_zero():
            return False, "nonzero class with E = %s" % (E,)
    got = thom_class_action(make_named(l, "P", 1), FormalBundle(2))
    want = SymmetricPoly(l, 2, {(1, 0): 1, (0, 1): 1})
    if got != want:
        return False, "P1 on two roots is %s" % got
    if to_chern(got) != {(1, 0): 1}:
        return False, "P1 on two roots does not reduce to e_1"
    return True, "rank-one tables, 20 vanishing samples, P1 = e_1"


def _is_mk(seq, l):
    word = word_from_seq(seq)
    if any(g == ("b",) for g in word):
        return False
    ks = [g[1] for g in word]
    return ks == [l**i for i in range(len(ks) - 1, -1, -1)]


def criterion_12_adem_report(max_total: int = 12, cache=None):
    """The generated-vs-closed-form report builds and even rows agree."""
    rep = discrepancy_report(max_total, cache)
    if not rep["rows"]:
        return False, "report is empty"
    if not rep["all_even_match"]:
        return False, "an even-even row disagrees"
    n_match = sum(1 for r in rep["rows"] if r["match"])
    return True, "%d rows, %d match, every even-even row matches" % (len(rep["rows"]), n_match)


ALL_CRITERIA = [
    ("1 dual relation", criterion_1_dual_relation),
    ("2 coproduct goldens", criterion_2_coproduct_goldens),
    ("3 bialgebra and coassociativity", criterion_3_bialgebra),
    ("4 pairing triangularity", criterion_4_triangularity),
    ("5 commutator identities", criterion_5_commutators),
    ("6 exterior Q relations", criterion_6_exterior),
    ("7 Adem goldens", criterion_7_adem_goldens),
    ("8 classical degeneration", criterion_8_classical_degeneration),
    ("9 action composition", criterion_9_composition),
    ("10 module goldens", criterion_10_module_goldens),
    ("11 characteristic classes", criterion_11_characteristic_classes),
    ("12 Adem discrepancy report", criterion_12_adem_report),
]


def run_all(verbose: bool = True):
    results = []
    for name, fn in ALL_CRITERIA:
        ok, detail = fn()
        results.append((name, ok, detail))
        if verbose:
            print("ACCEPT %-34s %s  (%s)" % (name, "PASS" if ok else "FAIL", detail))
    return results
