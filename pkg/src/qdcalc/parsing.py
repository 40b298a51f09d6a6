"""Expression grammar for forms: parser and canonical printer.

Grammar (whitespace insignificant):

    expr    := [ "-" ] term { ("+" | "-") term }
    term    := factor { "*" factor }
    factor  := scalar | atom | "(" expr ")"
    atom    := "x" nat | "d" [ "^" nat ] "(" "x" nat ")"
    scalar  := rational [ "*" "q" [ "^" int ] ] | "q" [ "^" int ]
    rational:= nat [ "/" nat ]

The leading minus is accepted as a convenience so canonical renderings of
expressions with a negative first coefficient can round trip.  Errors
carry line and column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import CycScalar, Mode, root
from .symbolic import SymScalar
from .grassmann import BLOCK_RULE, FormExpression, monomial_degree, _key


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str   # NUMBER, NAME ('q', 'd'), COORD, or a punctuation char
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("NUMBER", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("coordinate needs an index", line, start_col)
            tokens.append(Token("COORD", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in ("d", "q"):
            tokens.append(Token("NAME", ch, line, start_col))
            col += 1
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(Token(ch, ch, line, start_col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], n: int, d: int,
                 rule: str = BLOCK_RULE):
        self.tokens = tokens
        self.pos = 0
        self.n = n
        self.d = d
        self.rule = rule
        self.mode = root(n)

    # -- token plumbing ------------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        idx = self.pos + offset
        return self.tokens[idx] if idx < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else Token("", "", 1, 1)
            raise ParseError("unexpected end of input", last.line,
                             last.column + len(last.text))
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}",
                             tok.line, tok.column)
        return tok

    def _fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek() or Token("", "", 1, 1)
        raise ParseError(message, tok.line, tok.column)

    # -- grammar -------------------------------------------------------------

    def parse(self) -> FormExpression:
        expr = self.expr()
        if self.peek() is not None:
            self._fail(f"trailing input {self.peek().text!r}")
        return expr

    def expr(self) -> FormExpression:
        negate = False
        if self.peek() is not None and self.peek().kind == "-":
            self.next()
            negate = True
        out = self.term()
        if negate:
            out = -out
        while self.peek() is not None and self.peek().kind in "+-":
            op = self.next().kind
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> FormExpression:
        out = self.factor()
        while self.peek() is not None and self.peek().kind == "*":
            self.next()
            out = out * self.factor()
        return out

    def factor(self) -> FormExpression:
        tok = self.peek()
        if tok is None:
            self._fail("expected a factor")
        if tok.kind == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "NUMBER":
            return self.scalar_factor()
        if tok.kind == "NAME" and tok.text == "q":
            return self.scalar_factor()
        if tok.kind == "COORD":
            self.next()
            k = self._coord_index(tok)
            coeff = SymScalar.variable(f"x{k}", self.mode)
            return FormExpression.from_coefficient(coeff, self.n, self.d,
                                                   self.rule)
        if tok.kind == "NAME" and tok.text == "d":
            return self.generator_factor()
        self._fail(f"unexpected token {tok.text!r}", tok)

    def scalar_factor(self) -> FormExpression:
        tok = self.peek()
        coeff = Fraction(1)
        if tok.kind == "NUMBER":
            self.next()
            num = int(tok.text)
            if self.peek() is not None and self.peek().kind == "/":
                self.next()
                den_tok = self.expect("NUMBER")
                if int(den_tok.text) == 0:
                    self._fail("zero denominator", den_tok)
                coeff = Fraction(num, int(den_tok.text))
            else:
                coeff = Fraction(num)
            nxt, after = self.peek(), self.peek(1)
            if not (nxt is not None and nxt.kind == "*"
                    and after is not None and after.kind == "NAME"
                    and after.text == "q"):
                scalar = CycScalar.rational(coeff, self.mode)
                return FormExpression.from_coefficient(
                    SymScalar.constant(scalar), self.n, self.d, self.rule)
            self.next()  # the "*" gluing the rational to q
        q_tok = self.expect("NAME")
        if q_tok.text != "q":
            self._fail("expected q", q_tok)
        exp = 1
        if self.peek() is not None and self.peek().kind == "^":
            self.next()
            neg = False
            if self.peek() is not None and self.peek().kind == "-":
                self.next()
                neg = True
            exp_tok = self.expect("NUMBER")
            exp = -int(exp_tok.text) if neg else int(exp_tok.text)
        scalar = CycScalar.rational(coeff, self.mode) * CycScalar.q(self.mode) ** exp
        return FormExpression.from_coefficient(
            SymScalar.constant(scalar), self.n, self.d, self.rule)

    def generator_factor(self) -> FormExpression:
        d_tok = self.expect("NAME")
        order = 1
        if self.peek() is not None and self.peek().kind == "^":
            self.next()
            order_tok = self.expect("NUMBER")
            order = int(order_tok.text)
            if order >= self.n:
                raise ParseError(
                    f"generator order {order} must stay below {self.n}",
                    order_tok.line, order_tok.column)
            if order < 1:
                self._fail("generator order must be positive", order_tok)
        self.expect("(")
        coord = self.expect("COORD")
        k = self._coord_index(coord)
        self.expect(")")
        one = SymScalar.one(self.mode)
        return FormExpression.from_monomial(one, ((order, k),), self.n,
                                            self.d, self.rule)

    # -- helpers -------------------------------------------------------------

    def _coord_index(self, tok: Token) -> int:
        k = int(tok.text[1:])
        if k < 1:
            self._fail("coordinate indices start at 1", tok)
        if self.d is not None and k > self.d:
            raise ParseError(f"unknown coordinate index {k} (have 1..{self.d})",
                             tok.line, tok.column)
        return k

def parse_expression(text: str, n: int, d: int | None = None,
                     rule: str = BLOCK_RULE) -> FormExpression:
    """Parse the grammar into a canonical form expression.

    When d is None the number of coordinates is inferred as the largest
    index that occurs (at least 1); explicit d makes larger indices an
    error.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression", 1, 1)
    if d is None:
        d = max((int(t.text[1:]) for t in tokens if t.kind == "COORD"),
                default=1)
    parser = _Parser(tokens, n, d, rule)
    return parser.parse()


# ---------------------------------------------------------------------------
# canonical printing
# ---------------------------------------------------------------------------

def _format_q_monomial(exp: int, coeff: Fraction) -> str:
    mag = abs(coeff)
    num = str(mag.numerator) if mag.denominator == 1 else \
        f"{mag.numerator}/{mag.denominator}"
    if exp == 0:
        return num
    qpart = "q" if exp == 1 else f"q^{exp}"
    return qpart if mag == 1 else f"{num}*{qpart}"


def format_form(expr: FormExpression) -> str:
    """Fully expanded canonical rendering: one grammar term per scalar
    monomial, coordinate factor, and generator factor."""
    pieces: list[tuple[list, Fraction]] = []
    for mon in sorted(expr.terms, key=lambda m: (monomial_degree(m), _key(m))):
        coeff = expr.terms[mon]
        gen_factors = [(f"d({'x' + str(k)})" if m == 1 else f"d^{m}(x{k})")
                       for m, k in mon]
        for var_mono in sorted(coeff.terms):
            cyc = coeff.terms[var_mono]
            coord_factors = []
            for name, e in var_mono:
                if not name.startswith("x") or e < 0:
                    raise ValueError(
                        "only coordinate-polynomial coefficients can be printed")
                coord_factors.extend([name] * e)
            for qexp, c in enumerate(cyc.coeffs):
                if not c:
                    continue
                frac = Fraction(c)
                head = _format_q_monomial(qexp, frac)
                factors = ([head] if head != "1" else []) \
                    + coord_factors + gen_factors
                if not factors:
                    factors = ["1"]
                pieces.append((factors, frac))
    if not pieces:
        return "0"
    out = []
    for i, (factors, frac) in enumerate(pieces):
        body = "*".join(factors)
        if i == 0:
            out.append(body if frac > 0 else "-" + body)
        else:
            out.append(("+ " if frac > 0 else "- ") + body)
    return " ".join(out)
