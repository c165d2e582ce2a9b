"""Element expression grammar: parser and canonical printer.

    expr   := ['-'] term (('+'|'-') term)*
    term   := (scalar '*')? factor ('*' factor)*
    factor := atom "'"*
    atom   := identifier | '(' expr ')'
    scalar := integer ['/' positive-integer]

The postfix prime is the involution (on an edge: its ghost edge). Products
of non-composable factors are 0, not an error. A bare ``0`` denotes the
zero element, which is also how the printer spells it. The printer emits
this same grammar, with terms in basis order and explicit signs, so
printing and reparsing round-trips.
"""

from __future__ import annotations

import re

from .algebra import Element
from .errors import ExpressionSyntaxError, UnknownIdentifier
from .fields import QQ

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[-+*/()'])|(?P<bad>\S))"
)


def _tokenize(text):
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        if m.group("bad"):
            raise ExpressionSyntaxError(
                f"unexpected character {m.group('bad')!r} at position {m.start('bad')}"
            )
        if m.group("int"):
            tokens.append(("int", int(m.group("int"))))
        elif m.group("ident"):
            tokens.append(("ident", m.group("ident")))
        else:
            tokens.append(("sym", m.group("sym")))
    return tokens


class _Parser:
    def __init__(self, graph, tokens, field):
        self.graph = graph
        self.tokens = tokens
        self.pos = 0
        self.field = field

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_sym(self, sym):
        kind, value = self.take()
        if kind != "sym" or value != sym:
            raise ExpressionSyntaxError(f"expected {sym!r}, got {value!r}")

    def parse(self):
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ExpressionSyntaxError(f"trailing input at token {self.peek()[1]!r}")
        return result

    def expr(self):
        sign = 1
        if self.peek() == ("sym", "-"):
            self.take()
            sign = -1
        total = self.term().scale(self.field.from_int(sign))
        while self.peek()[0] == "sym" and self.peek()[1] in "+-":
            op = self.take()[1]
            nxt = self.term()
            total = total + nxt if op == "+" else total - nxt
        return total

    def term(self):
        coeff = self.field.one()
        if self.peek()[0] == "int":
            numerator = self.take()[1]
            if self.peek() == ("sym", "/"):
                self.take()
                kind, den = self.take()
                if kind != "int" or den == 0:
                    raise ExpressionSyntaxError("expected positive integer denominator")
                coeff = self.field.from_fraction(numerator, den)
            else:
                coeff = self.field.from_int(numerator)
            if self.peek() == ("sym", "*"):
                self.take()
            elif numerator == 0 and not coeff:
                return Element.zero(self.graph, self.field)
            else:
                raise ExpressionSyntaxError("a scalar must multiply a factor")
        product = self.factor()
        while self.peek() == ("sym", "*"):
            self.take()
            product = product * self.factor()
        return product.scale(coeff)

    def factor(self):
        value = self.atom()
        while self.peek() == ("sym", "'"):
            self.take()
            value = value.star()
        return value

    def atom(self):
        kind, value = self.take()
        if kind == "ident":
            if self.graph.has_vertex(value):
                return Element.vertex(self.graph, value, self.field)
            if self.graph.has_edge(value):
                return Element.edge(self.graph, value, self.field)
            raise UnknownIdentifier(f"unknown identifier {value!r} in graph {self.graph.name!r}")
        if kind == "sym" and value == "(":
            inner = self.expr()
            self.expect_sym(")")
            return inner
        raise ExpressionSyntaxError(f"expected identifier or '(', got {value!r}")


def parse_element(graph, text, field=QQ):
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionSyntaxError("empty expression")
    return _Parser(graph, tokens, field).parse()


# ---------------------------------------------------------------------------
# Canonical printer


def format_monomial(m):
    if m.is_vertex:
        return m.real.source
    parts = list(m.real.edges)
    parts += [name + "'" for name in reversed(m.ghost.edges)]
    return "*".join(parts)


def _coeff_pieces(field, c):
    """(is_negative, magnitude_string or None when the magnitude is 1)."""
    if field.is_ordered():
        negative = c < 0
        mag = -c if negative else c
        return negative, None if mag == field.one() else field.format(mag)
    return False, None if c == field.one() else field.format(c)


def format_element(x):
    """Basis-ordered canonical string; parse_element inverts it."""
    if x.is_zero():
        return "0"
    out = []
    for m, c in x.sorted_terms():
        negative, mag = _coeff_pieces(x.field, c)
        body = format_monomial(m) if mag is None else f"{mag}*{format_monomial(m)}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(out)
