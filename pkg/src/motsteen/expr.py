"""Element grammar shared by the CLI and the file formats.

Operations:    Sq3 Sq1 + rho Sq2 | b | P2 | B1 | Q1 | q2 | M[0,1;2]
Dual algebra:  t0 t1 x1^2 + rho x2
Module:        u1 v1^3 u2
Scalars:       1, rho, tau, rho^2 tau, 2 rho

Juxtaposition is multiplication; '+'/'-' separate terms; integers are
coefficients mod l.  Errors carry the offset of the offending token.
"""

from __future__ import annotations

import re

from .base import BaseScalar
from .dual import DualElement, make_monomial
from .module_action import ModuleElement, module_multiply
from .steenrod import MILNOR, SteenrodElement, make_named, multiply


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__("%s at offset %d: %r" % (message, pos, text))
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z]+\d*)|(?P<sym>[\^\+\-\[\];,()]))"
)


def tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError("unknown character", text, pos)
        if m.group("num"):
            tokens.append(("num", int(m.group("num")), m.start()))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start()))
        else:
            tokens.append(("sym", m.group("sym"), m.start()))
        pos = m.end()
    return tokens


_GEN = re.compile(r"^(Sq|P|B|Q|q|M|t|x|u|v)(\d*)$")


class _Parser:
    def __init__(self, text: str, l: int):
        self.text = text
        self.l = l
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        self.i += 1
        return tok

    def expect_sym(self, sym: str):
        tok = self.next()
        if tok[0] != "sym" or tok[1] != sym:
            raise ParseError("expected %r" % sym, self.text, tok[2])
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    # term := factor+ ; element := ['-'] term (('+'|'-') term)*
    def parse_terms(self, factor_fn):
        terms = []
        sign = 1
        tok = self.peek()
        if tok and tok[0] == "sym" and tok[1] in "+-":
            self.next()
            sign = -1 if tok[1] == "-" else 1
        while True:
            terms.append(self.parse_term(factor_fn, sign))
            if self.at_end():
                return terms
            tok = self.next()
            if tok[0] != "sym" or tok[1] not in "+-":
                raise ParseError("expected '+' or '-'", self.text, tok[2])
            sign = -1 if tok[1] == "-" else 1

    def parse_term(self, factor_fn, sign: int):
        coef = BaseScalar.from_int(self.l, sign)
        factors = []
        saw = False
        while True:
            tok = self.peek()
            if tok is None or (tok[0] == "sym" and tok[1] in "+-"):
                break
            saw = True
            kind, val, pos = self.next()
            if kind == "num":
                coef = coef.scale(val)
                continue
            if kind == "name" and val in ("rho", "tau"):
                exp = self._maybe_power()
                base = BaseScalar.rho(self.l) if val == "rho" else BaseScalar.tau(self.l)
                for _ in range(exp):
                    coef = coef * base
                continue
            if kind != "name":
                raise ParseError("unexpected symbol", self.text, pos)
            factors.append(factor_fn(self, val, pos))
        if not saw:
            tok = self.peek()
            raise ParseError(
                "empty term", self.text, tok[2] if tok else len(self.text)
            )
        return coef, factors

    def _maybe_power(self) -> int:
        tok = self.peek()
        if tok and tok[0] == "sym" and tok[1] == "^":
            self.next()
            num = self.next()
            if num[0] != "num":
                raise ParseError("expected exponent", self.text, num[2])
            return num[1]
        return 1

    def _int_list(self, closers: str):
        vals = []
        while True:
            tok = self.peek()
            if tok and tok[0] == "sym" and tok[1] in closers:
                return vals
            num = self.next()
            if num[0] != "num":
                raise ParseError("expected integer", self.text, num[2])
            vals.append(num[1])
            tok = self.peek()
            if tok and tok[0] == "sym" and tok[1] == ",":
                self.next()


def _op_factor(p: _Parser, name: str, pos: int):
    if name == "b":
        return make_named(p.l, "b")
    m = _GEN.match(name)
    if m is None:
        raise ParseError("unknown operation %r" % name, p.text, pos)
    head, idx = m.group(1), m.group(2)
    if head == "M":
        if idx:
            raise ParseError("M takes bracket arguments", p.text, pos)
        p.expect_sym("[")
        E = p._int_list(";")
        p.expect_sym(";")
        R = p._int_list("]")
        p.expect_sym("]")
        try:
            mono = make_monomial(E, R)
        except ValueError as exc:
            raise ParseError(str(exc), p.text, pos)
        return SteenrodElement(p.l, MILNOR, {mono: BaseScalar.one(p.l)})
    if not idx:
        raise ParseError("operation %r needs an index" % head, p.text, pos)
    try:
        return make_named(p.l, head, int(idx))
    except ValueError as exc:
        raise ParseError(str(exc), p.text, pos)


def parse_element(text: str, l: int) -> SteenrodElement:
    """Parse an operation expression into a Milnor-basis element."""
    p = _Parser(text, l)
    out = SteenrodElement.zero(l, MILNOR)
    for coef, factors in p.parse_terms(_op_factor):
        acc = SteenrodElement.one(l, MILNOR)
        for f in factors:
            acc = multiply(acc, f)
        out = out + acc.scale(coef)
    return out


def _dual_factor(p: _Parser, name: str, pos: int):
    m = _GEN.match(name)
    if m is None or m.group(1) not in ("t", "x") or not m.group(2):
        raise ParseError("unknown dual generator %r" % name, p.text, pos)
    idx = int(m.group(2))
    exp = p._maybe_power()
    if m.group(1) == "t":
        out = DualElement.one(p.l)
        base = DualElement.generator_tau(p.l, idx)
        for _ in range(exp):
            out = out * base
        return out
    if idx < 1:
        raise ParseError("xi index must be >= 1", p.text, pos)
    R = [0] * idx
    R[idx - 1] = exp
    return DualElement.monomial(p.l, make_monomial((), R))


def parse_dual(text: str, l: int) -> DualElement:
    """Parse a dual-algebra expression like 't0 x1^2 + rho t1'."""
    p = _Parser(text, l)
    out = DualElement.zero(l)
    for coef, factors in p.parse_terms(_dual_factor):
        acc = DualElement.one(l)
        for f in factors:
            acc = acc * f
        out = out + acc.scale(coef)
    return out


def parse_module(text: str, l: int, n: int, cap: int) -> ModuleElement:
    """Parse a module expression like 'u1 v1^3 u2'."""

    def factor(p: _Parser, name: str, pos: int):
        m = _GEN.match(name)
        if m is None or m.group(1) not in ("u", "v") or not m.group(2):
            raise ParseError("unknown module generator %r" % name, p.text, pos)
        j = int(m.group(2))
        if not 1 <= j <= n:
            raise ParseError("factor index out of range 1..%d" % n, p.text, pos)
        exp = p._maybe_power()
        if m.group(1) == "v":
            return ModuleElement.gen_v(l, n, cap, j, exp)
        out = ModuleElement.one(l, n, cap)
        base = ModuleElement.gen_u(l, n, cap, j)
        for _ in range(exp):
            out = module_multiply(out, base)
        return out

    p = _Parser(text, l)
    out = ModuleElement.zero(l, n, cap)
    for coef, factors in p.parse_terms(factor):
        acc = ModuleElement.one(l, n, cap)
        for f in factors:
            acc = module_multiply(acc, f)
        out = out + acc.scale(coef)
    return out


def parse_scalar(text: str, l: int) -> BaseScalar:
    """Parse a coefficient expression like 'rho^2 tau + 1'."""

    def factor(p: _Parser, name: str, pos: int):
        raise ParseError("unknown scalar factor %r" % name, p.text, pos)

    p = _Parser(text, l)
    out = BaseScalar.zero(l)
    for coef, factors in p.parse_terms(factor):
        out = out + coef
    return out


def parse_word_terms(text: str, l: int):
    """Parse an expression into (coefficient, generator word) pairs for
    the rewriting normalizer; factors must be named generators."""
    p = _Parser(text, l)
    out = []
    for coef, factors in p.parse_terms(_word_factor):
        word = []
        for f in factors:
            word.extend(f)
        out.append((coef, tuple(word)))
    return out


def _word_factor(p: _Parser, name: str, pos: int):
    if name == "b":
        return [("b",)]
    m = _GEN.match(name)
    if m is None or not m.group(2):
        raise ParseError("unknown generator %r" % name, p.text, pos)
    head, idx = m.group(1), int(m.group(2))
    if head == "P":
        return [("P", idx)]
    if head == "B":
        return [("b",), ("P", idx)]
    if head == "Sq":
        if p.l != 2:
            raise ParseError("Sq notation requires l = 2", p.text, pos)
        if idx % 2:
            return [("b",)] + ([("P", idx // 2)] if idx // 2 else [])
        return [("P", idx // 2)]
    raise ParseError("cannot use %r in a generator word" % name, p.text, pos)
