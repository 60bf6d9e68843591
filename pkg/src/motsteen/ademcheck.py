"""Comparison of generated Adem expansions against their closed form.

The closed form of Sq^a Sq^b at l = 2 is transcribed literally from the
standard statement.  Its even-sum cases are reliable; the odd-sum case is
ambiguously printed in the sources (the binding of j in the rho-correction
term), so this module never treats the closed form as ground truth.  It
produces a machine-readable report of agreements and disagreements with
the expansion generated from the dual-algebra product.
"""

from __future__ import annotations

from .base import BaseScalar, binomial_mod_l
from .steenrod import (
    ADMISSIBLE,
    SteenrodElement,
    adem_table,
    seq_from_word,
    serialize_admissible,
)


def _sq_word_tokens(c: int, d: int) -> tuple:
    """Token word for Sq^c Sq^d, dropping zero factors."""
    word = []
    for k in (c, d):
        if k == 0:
            continue
        if k % 2:
            word.append(("b",))
            if k // 2:
                word.append(("P", k // 2))
        else:
            word.append(("P", k // 2))
    return tuple(word)


def _add_sq_pair(terms: dict, coef: BaseScalar, c: int, d: int, l: int = 2) -> None:
    if c < 0 or d < 0 or coef.is_zero():
        return
    seq = seq_from_word(_sq_word_tokens(c, d), l)
    prev = terms.get(seq)
    terms[seq] = coef if prev is None else prev + coef


def adem_closed_form(a: int, b: int) -> SteenrodElement:
    """Literal closed-form expansion of Sq^a Sq^b for 0 < a < 2b, l = 2."""
    l = 2
    if not 0 < a < 2 * b:
        raise ValueError("need 0 < a < 2b")
    terms: dict = {}
    if (a + b) % 2 == 0:
        for j in range(a // 2 + 1):
            c = binomial_mod_l(b - 1 - j, a - 2 * j, l)
            if not c:
                continue
            if a % 2 == 1:
                coef = BaseScalar.one(l)
            else:
                coef = BaseScalar.tau(l) if j % 2 else BaseScalar.one(l)
            _add_sq_pair(terms, coef, a + b - j, j)
    else:
        for j in range(a // 2 + 1):
            c = binomial_mod_l(b - 1 - j, a - 2 * j, l)
            _add_sq_pair(terms, BaseScalar.from_int(l, c), a + b - j, j)
            rho_pow = BaseScalar.rho(l) if (j + 1) % 2 else BaseScalar.one(l)
            if a % 2 == 0:
                cc = binomial_mod_l(b - 1 - j, a - 2 * j, l)
                _add_sq_pair(terms, rho_pow.scale(cc), a + b + j, j - 1)
            else:
                cc = binomial_mod_l(b - 1 - j, a - 1 - 2 * j, l)
                _add_sq_pair(terms, rho_pow.scale(cc), a + b + j - 1, j)
    return SteenrodElement(l, ADMISSIBLE, terms)


def discrepancy_report(max_total: int, cache=None) -> dict:
    """Generated vs closed-form expansions of Sq^a Sq^b for a + b <= bound."""
    from .steenrod import convert_basis, multiply

    rows = []
    for b in range(1, max_total):
        for a in range(1, min(2 * b, max_total - b + 1)):
            if a + b > max_total:
                continue
            if a % 2 == 0 and b % 2 == 0:
                generated = adem_table(2, a // 2, b // 2, False, cache)
            else:
                generated = convert_basis(multiply(_sq_element(a), _sq_element(b)), ADMISSIBLE)
            closed = adem_closed_form(a, b)
            parity = ("odd", "even")[a % 2 == 0] + "-" + ("odd", "even")[b % 2 == 0]
            rows.append(
                {
                    "a": a,
                    "b": b,
                    "parity": parity,
                    "generated": serialize_admissible(generated),
                    "closed_form": serialize_admissible(closed),
                    "match": generated == closed,
                }
            )
    return {
        "prime": 2,
        "max_total": max_total,
        "rows": rows,
        "all_even_match": all(r["match"] for r in rows if r["parity"] == "even-even"),
    }


def _sq_element(k: int) -> SteenrodElement:
    from .steenrod import make_named

    return make_named(2, "Sq", k)
