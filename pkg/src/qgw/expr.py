"""Tokenizer and recursive-descent parser for the shared expression grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' ['-'] INT | '^' '(' ['-'] INT ')')?
    atom   := INT | NAME ['@' INT] | '(' expr ')' | '[' expr ',' expr ']'

Names resolve either to parameters (commuting, giving Scalars) or to algebra
generators (giving NCPolys).  ``[x, y]`` is the commutator ``x*y - y*x``.
A generator with a declared formal inverse accepts negative powers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DSLSyntaxError, UnknownGenerator
from .ncpoly import NCPoly
from .scalar import Scalar, register

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)(?:@(?P<slot>\d+))?|(?P<op>[-+*/^()\[\],]))"
)


@dataclass
class Token:
    kind: str
    text: str
    col: int
    slot: int | None = None


def tokenize(text: str, line: int = 1, col0: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            stripped = len(text) - len(text[pos:].lstrip())
            raise DSLSyntaxError(f"unexpected character {text[stripped]!r}", line, stripped + col0, text)
        raw = m.group(0)
        start = m.start() + len(raw) - len(raw.lstrip()) + col0
        if m.group("int") is not None:
            tokens.append(Token("int", m.group("int"), start))
        elif m.group("name") is not None:
            slot = int(m.group("slot")) if m.group("slot") else None
            tokens.append(Token("name", m.group("name"), start, slot))
        else:
            tokens.append(Token("op", m.group("op"), start))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + col0))
    return tokens


@dataclass
class Context:
    """Name resolution for the parser.

    With ``generators`` empty every name is a parameter.  Otherwise names must
    be declared generators, inverse letters, or parameters.
    """

    params: tuple = ()
    generators: tuple = ()
    inverses: dict = field(default_factory=dict)  # generator -> inverse letter
    alphabet: tuple | None = None
    strict_params: bool = False

    @property
    def noncommutative(self) -> bool:
        return bool(self.generators)


def _is_scalar(x) -> bool:
    return isinstance(x, Scalar)


class _Parser:
    def __init__(self, text: str, ctx: Context, line: int, col0: int):
        self.text = text
        self.ctx = ctx
        self.line = line
        self.tokens = tokenize(text, line, col0)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise DSLSyntaxError(msg, self.line, tok.col, self.text)

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text or tok.kind == "end":
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def parse(self):
        value = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.next().text
            rhs = self.term()
            value = self.add(value, rhs) if op == "+" else self.add(value, self.neg(rhs))
        return value

    def term(self):
        value = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.next()
            rhs = self.unary()
            if tok.text == "*":
                value = self.mul(value, rhs)
            else:
                if not _is_scalar(rhs):
                    if isinstance(rhs, NCPoly) and set(rhs.terms) <= {()}:
                        rhs = rhs.constant_part()
                    else:
                        self.error("division by a non-scalar", tok)
                if rhs.is_zero():
                    self.error("division by zero", tok)
                value = value / rhs if _is_scalar(value) else value.scale(rhs.inverse())
        return value

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.next()
            value = self.unary()
            return value if tok.text == "+" else self.neg(value)
        return self.power()

    def exponent(self) -> int:
        paren = False
        if self.peek().text == "(":
            self.next()
            paren = True
        sign = 1
        if self.peek().text == "-":
            self.next()
            sign = -1
        tok = self.next()
        if tok.kind != "int":
            self.error("expected an integer exponent", tok)
        if paren:
            self.expect(")")
        return sign * int(tok.text)

    def power(self):
        base_tok = self.peek()
        base = self.atom()
        if self.peek().text == "^":
            tok = self.next()
            n = self.exponent()
            return self.pow(base, n, base_tok, tok)
        return base

    def atom(self):
        tok = self.next()
        if tok.kind == "int":
            return Scalar(int(tok.text))
        if tok.kind == "name":
            return self.resolve(tok)
        if tok.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok.text == "[":
            x = self.expr()
            self.expect(",")
            y = self.expr()
            self.expect("]")
            return self.add(self.mul(x, y), self.neg(self.mul(y, x)))
        self.error(f"unexpected {tok.text or 'end of input'!r}", tok)

    def resolve(self, tok: Token):
        ctx = self.ctx
        name = tok.text
        if ctx.noncommutative:
            letters = set(ctx.generators) | set(ctx.inverses.values())
            if name in letters:
                return NCPoly.gen(name, tok.slot or 1, ctx.alphabet)
            if tok.slot is not None:
                raise UnknownGenerator(f"{name}@{tok.slot} is not a declared generator (line {self.line}, column {tok.col})")
            if name in ctx.params or not ctx.strict_params:
                register(name)
                return Scalar.param(name)
            raise UnknownGenerator(f"undeclared name {name!r} (line {self.line}, column {tok.col})")
        if tok.slot is not None:
            self.error("slot tags are only allowed on generators", tok)
        if ctx.strict_params and name not in ctx.params:
            raise UnknownGenerator(f"undeclared parameter {name!r} (line {self.line}, column {tok.col})")
        return Scalar.param(name)

    # value algebra --------------------------------------------------------

    def neg(self, x):
        return -x

    def add(self, x, y):
        if _is_scalar(x) and _is_scalar(y):
            return x + y
        return self.lift(x) + self.lift(y)

    def mul(self, x, y):
        if _is_scalar(x) and _is_scalar(y):
            return x * y
        if _is_scalar(x):
            return y.scale(x)
        if _is_scalar(y):
            return x.scale(y)
        return x * y

    def lift(self, x):
        return NCPoly.const(x, self.ctx.alphabet) if _is_scalar(x) else x

    def pow(self, base, n: int, base_tok: Token, tok: Token):
        if _is_scalar(base):
            if n < 0 and base.is_zero():
                self.error("negative power of zero", tok)
            return base**n
        if n >= 0:
            return base**n
        if len(base.terms) == 1:
            (word, c), = base.terms.items()
            if len(word) == 1 and c.is_one():
                name, slot = word[0]
                inv = self.ctx.inverses.get(name)
                if inv is not None:
                    return NCPoly.gen(inv, slot, self.ctx.alphabet) ** (-n)
        self.error("negative power of a generator without a declared inverse", base_tok)


def parse_expr(text: str, ctx: Context | None = None, line: int = 1, col0: int = 1):
    return _Parser(text, ctx or Context(), line, col0).parse()


def parse_scalar(text: str, params=None) -> Scalar:
    ctx = Context(params=tuple(params or ()), strict_params=params is not None)
    value = parse_expr(text, ctx)
    if not _is_scalar(value):
        raise DSLSyntaxError("expected a scalar expression", 1, 1, text)
    return value


def parse_ncpoly(text: str, generators, params=(), inverses=None, alphabet=None,
                 line: int = 1, col0: int = 1, strict: bool | None = None) -> NCPoly:
    """Parse a noncommutative polynomial.

    Unknown names are taken as parameters unless ``strict`` (default: true
    when ``params`` is non-empty), in which case they raise UnknownGenerator.
    """
    ctx = Context(params=tuple(params), generators=tuple(generators),
                  inverses=dict(inverses or {}),
                  alphabet=tuple(alphabet) if alphabet is not None else None,
                  strict_params=bool(params) if strict is None else strict)
    value = parse_expr(text, ctx, line, col0)
    if _is_scalar(value):
        value = NCPoly.const(value, ctx.alphabet)
    return value


def parse_rational(text: str) -> Fraction:
    value = parse_scalar(text)
    if not value.is_const():
        raise DSLSyntaxError(f"expected a rational number, got {text!r}", 1, 1, text)
    return value.const_value()
