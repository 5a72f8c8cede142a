"""
Recursive-descent parser for fixture files.

    field F(p[, k]);
    ring R = F[x, y] [/ (g1, .., gm)];
    ideal I = (f1, ..) in R;
    map f : R -> S sends x -> expr, .. [flat PATTERN];
    check KIND TARGET [with sop (..)] [on IDEAL] [emax N] [tmax N]
                      [adjoin N] [degree N] [primes (p1, ..)];

Expressions use + - * ^ and integer literals; `#` starts a comment. Every
input yields a Document or a FixtureSyntaxError with line:col and the
expected tokens.
"""

from fixtures.lexer import FixtureSyntaxError, tokenize
from fixtures.nodes import (
    BinOp, CheckDecl, Document, FieldDecl, IdealDecl, MapDecl, Neg, Num, Pos, Pow, RingDecl, Var,
)

# Nesting bound for parentheses and unary minus
MAX_DEPTH = 100
MAX_EXPONENT = 4096

FLAT_PATTERNS = ("identity", "monic", "base_change", "composite")
CHECK_OPTIONS = ("with", "on", "emax", "tmax", "adjoin", "degree", "primes")
STATEMENT_KEYWORDS = ("field", "ring", "ideal", "map", "check")


class Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.index = 0
        self.depth = 0

    # --- token helpers ---

    @property
    def current(self):
        return self.tokens[self.index]

    def _pos(self):
        return Pos(self.current.line, self.current.col)

    def error(self, message, expected=()):
        tok = self.current
        raise FixtureSyntaxError(f"{message}, found {tok.describe()}", tok.line, tok.col, expected)

    def at(self, text):
        tok = self.current
        return tok.kind in ("punct", "keyword") and tok.text == text

    def accept(self, text):
        if self.at(text):
            self.index += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.error(f"expected {text!r}", [text])

    def name(self, what="a name"):
        tok = self.current
        if tok.kind != "ident":
            self.error(f"expected {what}", ["<name>"])
        self.index += 1
        return tok.text

    def integer(self, what="an integer"):
        tok = self.current
        if tok.kind != "int":
            self.error(f"expected {what}", ["<integer>"])
        self.index += 1
        return int(tok.text)

    def _nest(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.error(f"expression nested deeper than {MAX_DEPTH}")

    # --- document ---

    def document(self):
        statements = []
        while self.current.kind != "eof":
            statements.append(self.statement())
        return Document(tuple(statements))

    def statement(self):
        pos = self._pos()
        for keyword in STATEMENT_KEYWORDS:
            if self.accept(keyword):
                node = getattr(self, f"_{keyword}")(pos)
                self.expect(";")
                return node
        self.error("expected a statement", STATEMENT_KEYWORDS)

    def _field(self, pos):
        name = self.name("a field name")
        self.expect("(")
        p = self.integer("the characteristic")
        k = self.integer("the extension degree") if self.accept(",") else 1
        self.expect(")")
        return FieldDecl(name, p, k, pos=pos)

    def _ring(self, pos):
        name = self.name("a ring name")
        self.expect("=")
        field = self.name("a field name")
        self.expect("[")
        variables = [self.name("a variable")]
        while self.accept(","):
            variables.append(self.name("a variable"))
        self.expect("]")
        relations = ()
        if self.accept("/"):
            relations = self.expression_list()
        return RingDecl(name, field, tuple(variables), relations, pos=pos)

    def _ideal(self, pos):
        name = self.name("an ideal name")
        self.expect("=")
        gens = self.expression_list()
        self.expect("in")
        ring = self.name("a ring name")
        return IdealDecl(name, gens, ring, pos=pos)

    def _map(self, pos):
        name = self.name("a map name")
        self.expect(":")
        source = self.name("a source ring")
        self.expect("->")
        target = self.name("a target ring")
        self.expect("sends")
        sends = [self.assignment()]
        while self.accept(","):
            sends.append(self.assignment())
        flat = None
        if self.accept("flat"):
            tok = self.current
            if tok.kind != "ident" or tok.text not in FLAT_PATTERNS:
                self.error("expected a flat pattern", FLAT_PATTERNS)
            self.index += 1
            flat = tok.text
        return MapDecl(name, source, target, tuple(sends), flat, pos=pos)

    def assignment(self):
        var = self.name("a source variable")
        self.expect("->")
        return (var, self.expression())

    def _check(self, pos):
        kind = self.name("a check kind")
        target = self.name("a check target")
        options = {}
        while self.current.kind == "keyword" and self.current.text in CHECK_OPTIONS:
            tok = self.current
            key = "sop" if tok.text == "with" else tok.text
            if key in options:
                self.error(f"duplicate {tok.text!r} clause")
            self.index += 1
            if key == "sop":
                self.expect("sop")
                options["sop"] = self.expression_list()
            elif key == "on":
                options["on"] = self.name("an ideal name")
            elif key == "primes":
                self.expect("(")
                primes = [self.integer("a prime")]
                while self.accept(","):
                    primes.append(self.integer("a prime"))
                self.expect(")")
                options["primes"] = tuple(primes)
            else:
                options[key] = self.integer(f"a value for {key}")
        if self.current.kind != "punct" or self.current.text != ";":
            self.error("expected a check clause or ';'", CHECK_OPTIONS + (";",))
        return CheckDecl(kind, target, pos=pos, **options)

    # --- expressions ---

    def expression_list(self):
        self.expect("(")
        items = [self.expression()]
        while self.accept(","):
            items.append(self.expression())
        self.expect(")")
        return tuple(items)

    def expression(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            pos = self._pos()
            op = self.current.text
            self.index += 1
            node = BinOp(op, node, self.term(), pos=pos)
        return node

    def term(self):
        node = self.unary()
        while self.at("*"):
            pos = self._pos()
            self.index += 1
            node = BinOp("*", node, self.unary(), pos=pos)
        return node

    def unary(self):
        if self.at("-"):
            pos = self._pos()
            self.index += 1
            self._nest()
            node = Neg(self.unary(), pos=pos)
            self.depth -= 1
            return node
        return self.power()

    def power(self):
        node = self.atom()
        if self.at("^"):
            pos = self._pos()
            self.index += 1
            exponent = self.integer("an exponent")
            if exponent > MAX_EXPONENT:
                self.index -= 1
                self.error(f"exponent larger than {MAX_EXPONENT}")
            node = Pow(node, exponent, pos=pos)
        return node

    def atom(self):
        tok = self.current
        pos = self._pos()
        if tok.kind == "int":
            self.index += 1
            return Num(int(tok.text), pos=pos)
        if tok.kind == "ident":
            self.index += 1
            return Var(tok.text, pos=pos)
        if self.accept("("):
            self._nest()
            node = self.expression()
            self.depth -= 1
            self.expect(")")
            return node
        self.error("expected an expression", ["<integer>", "<name>", "(", "-"])


def parse_fixture(text):
    """
    Parses fixture text (str or UTF-8 bytes) into a Document.

    Raises:
        FixtureSyntaxError: with line:col and the expected-token set.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = bytes(text)[:exc.start].decode("utf-8", errors="replace")
            line = prefix.count("\n") + 1
            col = len(prefix) - (prefix.rfind("\n") + 1) + 1
            raise FixtureSyntaxError("input is not valid UTF-8", line, col) from exc
    return Parser(text).document()
