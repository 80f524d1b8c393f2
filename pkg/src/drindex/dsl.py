"""A small expression language over q-expansion objects.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' natural)?
    atom   := rational | name | name '(' expr (',' expr)* ')' | '(' expr ')'

Atoms are Eisenstein names (E2, E4, ...), Delta, integer or rational
literals (7, 3/4), and the function forms D(...), CK(..., lambda?),
natural(...), etaInvPow(m).  Parsing and printing are mutually stable:
printing any tree and reparsing yields an identical tree.
"""

from dataclasses import dataclass
from fractions import Fraction


class ParseError(ValueError):
    def __init__(self, message, position, expected=()):
        super().__init__("%s at offset %d" % (message, position))
        self.position = position
        self.expected = tuple(expected)


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


_SYMBOLS = "+-*^/(),"


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _SYMBOLS:
            tokens.append((c, c, i))
            i += 1
            continue
        if c == "−":  # unicode minus
            tokens.append(("-", "-", i))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        raise ParseError("unexpected character %r" % c, i)
    tokens.append(("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise ParseError("expected %s, found %r" % (kind, tok[1] or "end"),
                             tok[2], expected=(kind,))
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.take("*")
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.take("^")
            tok = self.take("INT")
            node = Power(node, int(tok[1]))
        return node

    def atom(self):
        tok = self.peek()
        if tok[0] == "INT":
            self.take("INT")
            if self.peek()[0] == "/":
                self.take("/")
                denom = self.take("INT")
                if int(denom[1]) == 0:
                    raise ParseError("zero denominator", denom[2])
                return Num(Fraction(int(tok[1]), int(denom[1])))
            return Num(Fraction(int(tok[1])))
        if tok[0] == "NAME":
            self.take("NAME")
            if self.peek()[0] == "(":
                self.take("(")
                args = [self.expr()]
                while self.peek()[0] == ",":
                    self.take(",")
                    args.append(self.expr())
                self.take(")")
                return Call(tok[1], tuple(args))
            return Atom(tok[1])
        if tok[0] == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        raise ParseError("expected a value, found %r" % (tok[1] or "end"),
                         tok[2], expected=("INT", "NAME", "("))


def parse_expression(text):
    """Parse the expression language; raises ParseError with a position."""
    parser = _Parser(text)
    node = parser.expr()
    tok = parser.peek()
    if tok[0] != "EOF":
        raise ParseError("trailing input %r" % tok[1], tok[2], expected=("EOF",))
    return node


def _level(node):
    if isinstance(node, BinOp):
        return 1 if node.op in "+-" else 2
    if isinstance(node, Power):
        return 3
    return 4


def to_text(node):
    """Canonical rendering; reparsing gives back an identical tree."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else "%d/%d" % (
            v.numerator, v.denominator)
    if isinstance(node, Atom):
        return node.name
    if isinstance(node, Call):
        return "%s(%s)" % (node.name, ", ".join(to_text(a) for a in node.args))
    if isinstance(node, Power):
        base = to_text(node.base)
        if _level(node.base) < 4 or isinstance(node.base, Num):
            base = "(%s)" % base
        return "%s^%d" % (base, node.exponent)
    if isinstance(node, BinOp):
        lv = _level(node)
        left = to_text(node.left)
        if _level(node.left) < lv:
            left = "(%s)" % left
        right = to_text(node.right)
        if _level(node.right) <= lv:
            right = "(%s)" % right
        return "%s %s %s" % (left, node.op, right)
    raise TypeError("not an expression node: %r" % (node,))
