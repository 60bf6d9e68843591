"""Independent classical mod-2 Steenrod product, by Milnor matrices.

Basis elements Sq(t_1, t_2, ...) multiply by enumerating nonnegative
matrices (x_ij) with weighted row sums r_i = sum_j 2^j x_ij and column
sums s_j = sum_i x_ij; each matrix contributes prod_n multinomial(t_n;
x_ij, i+j=n) mod 2 to Sq(T) with t_n = sum_{i+j=n} x_ij.

This route shares nothing with the dual-algebra product; it exists to
check the rho = 0, tau = 1 degeneration.  The translation from the
two-variable basis is t_i = eps_(i-1) + 2 r_i.
"""

from __future__ import annotations

from .base import multinomial_mod_l
from .dual import MilnorMonomial, make_monomial


def monomial_to_classical(m: MilnorMonomial) -> tuple:
    n = max(len(m.E), len(m.R))
    out = []
    for i in range(n):
        eps = m.E[i] if i < len(m.E) else 0
        r = m.R[i] if i < len(m.R) else 0
        out.append(eps + 2 * r)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def classical_to_monomial(T: tuple) -> MilnorMonomial:
    E = [t % 2 for t in T]
    R = [t // 2 for t in T]
    return make_monomial(E, R)


def _matrices(Rrow: tuple, Scol: tuple):
    """All Milnor matrices for the pair, yielded as {(i, j): x_ij}."""
    rows = len(Rrow)
    cols = len(Scol)

    def rec(i: int, col_left: list, acc: dict):
        if i > rows:
            # leftover column sums become the x_0j entries
            yield dict(acc)
            return
        target = Rrow[i - 1]

        def fill(j: int, left: int):
            if j > cols:
                # leftover is x_i0, always admissible
                yield from rec(i + 1, col_left, acc)
                return
            step = 2**j
            for x in range(0, left // step + 1):
                if x > col_left[j - 1]:
                    break
                acc[(i, j)] = x
                col_left[j - 1] -= x
                yield from fill(j + 1, left - x * step)
                col_left[j - 1] += x
                del acc[(i, j)]

        yield from fill(1, target)

    yield from rec(1, list(Scol), {})


def classical_product(T1: tuple, T2: tuple) -> dict:
    """Product Sq(T1) Sq(T2) as a map from tuples T to coefficients mod 2."""
    out: dict = {}
    rows = len(T1)
    cols = len(T2)
    for X in _matrices(T1, T2):
        full = dict(X)
        for j in range(1, cols + 1):
            full[(0, j)] = T2[j - 1] - sum(X.get((i, j), 0) for i in range(1, rows + 1))
            if full[(0, j)] < 0:
                break
        else:
            for i in range(1, rows + 1):
                full[(i, 0)] = T1[i - 1] - sum(
                    2**j * X.get((i, j), 0) for j in range(1, cols + 1)
                )
            nmax = rows + cols
            coef = 1
            T = []
            for n in range(1, nmax + 1):
                diag = [full.get((i, n - i), 0) for i in range(0, n + 1)]
                T.append(sum(diag))
                coef *= multinomial_mod_l(diag, 2)
                if coef == 0:
                    break
            if coef:
                key = tuple(T)
                while key and key[-1] == 0:
                    key = key[:-1]
                out[key] = (out.get(key, 0) + 1) % 2
    return {k: v for k, v in out.items() if v}


def classical_sq(k: int) -> tuple:
    return (k,) if k else ()
