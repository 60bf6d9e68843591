import itertools
import random

import pytest

from motsteen.charclass import (
    FormalBundle,
    SymmetricPoly,
    chern_str,
    elementary,
    expand_chern,
    s_R,
    thom_class_action,
    to_chern,
)
from motsteen.dual import make_monomial
from motsteen.steenrod import make_named


def test_s_R_trivial_cases():
    for m in range(4):
        assert s_R((), m, 2) == SymmetricPoly.one(2, m)
        assert s_R((0, 0), m, 3) == SymmetricPoly.one(3, m)


def test_s_R_single_root():
    assert s_R((1,), 1, 2) == SymmetricPoly(2, 1, {(1,): 1})
    assert s_R((0, 1), 1, 2) == SymmetricPoly(2, 1, {(3,): 1})
    assert s_R((1,), 1, 3) == SymmetricPoly(3, 1, {(2,): 1})


def test_s_R_power_sum_shape():
    # one xi_1 over two roots is the first power sum of t^(l-1)
    assert s_R((1,), 2, 2) == SymmetricPoly(2, 2, {(1, 0): 1, (0, 1): 1})
    assert s_R((1,), 2, 3) == SymmetricPoly(3, 2, {(2, 0): 1, (0, 2): 1})


def test_s_R_overflow_is_zero():
    assert s_R((3,), 2, 2).is_zero()


def test_s_R_symmetric():
    rng = random.Random(2)
    for _ in range(12):
        m = rng.randint(1, 5)
        R = [rng.randint(0, 2) for _ in range(2)]
        assert s_R(R, m, 2).is_symmetric()


def test_to_chern_basics():
    l, m = 2, 2
    t1_plus_t2 = SymmetricPoly(l, m, {(1, 0): 1, (0, 1): 1})
    assert to_chern(t1_plus_t2) == {(1, 0): 1}
    t1t2 = SymmetricPoly(l, m, {(1, 1): 1})
    assert to_chern(t1t2) == {(0, 1): 1}
    p2 = SymmetricPoly(l, m, {(2, 0): 1, (0, 2): 1})
    assert to_chern(p2) == {(2, 0): 1}  # e_1^2 mod 2


def test_to_chern_rejects_asymmetric():
    bad = SymmetricPoly(2, 2, {(1, 0): 1})
    with pytest.raises(ValueError):
        to_chern(bad)


def test_to_chern_roundtrip():
    rng = random.Random(9)
    for l in (2, 3):
        for _ in range(15):
            m = rng.randint(1, 4)
            e_exps = tuple(rng.randint(0, 2) for _ in range(m))
            if sum(i * e for i, e in enumerate(e_exps, 1)) > 6:
                continue
            poly = expand_chern(e_exps, m, l)
            back = to_chern(poly)
            assert back == ({e_exps: 1} if any(e_exps) else {e_exps: 1})


def test_whitney_splitting():
    # s_R over concatenated roots equals the split sum over R' + R'' = R
    l = 2
    for m1, m2 in [(1, 1), (2, 1), (2, 2), (1, 3)]:
        m = m1 + m2
        for R in [(1,), (2,), (1, 1), (0, 1), (2, 1)]:
            if sum(R) > 4:
                continue
            total = s_R(R, m, l)
            acc = SymmetricPoly.zero(l, m)
            splits = itertools.product(*(range(r + 1) for r in R))
            for first in splits:
                second = tuple(r - f for r, f in zip(R, first))
                p1 = s_R(first, m1, l)
                p2 = s_R(second, m2, l)
                for e1, c1 in p1.terms.items():
                    for e2, c2 in p2.terms.items():
                        acc = acc + SymmetricPoly(l, m, {e1 + e2: c1 * c2})
            assert total == acc, (m1, m2, R)


def test_thom_action_vanishing_and_tables():
    l = 2
    L = FormalBundle(1)
    assert thom_class_action(make_monomial((1,), ()), L, l).is_zero()
    assert thom_class_action(make_monomial((), (0, 1)), L, l) == SymmetricPoly(
        l, 1, {(3,): 1}
    )
    got = thom_class_action(make_named(l, "P", 1), FormalBundle(2))
    assert to_chern(got) == {(1, 0): 1}
    # M_k words act by t^(l^k - 1) on a line bundle
    for k in (1, 2, 3):
        got = thom_class_action(make_named(l, "M", k), L)
        assert got == SymmetricPoly(l, 1, {(2**k - 1,): 1})


def test_formal_bundle():
    V = FormalBundle(2).direct_sum(FormalBundle(3))
    assert V.rank == 5
    with pytest.raises(ValueError):
        FormalBundle(-1)


def test_chern_str():
    assert chern_str({}) == "0"
    assert chern_str({(1, 0): 1}) == "e1"
    assert chern_str({(0, 2): 1, (1, 0): 1}) == "e1 + e2^2"
