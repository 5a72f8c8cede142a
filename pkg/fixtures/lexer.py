"""
Tokenizer for fixture files.
"""

from dataclasses import dataclass

from algebra.errors import AlgebraError

KEYWORDS = frozenset({
    "field", "ring", "ideal", "map", "check", "in", "sends", "flat",
    "with", "sop", "on", "emax", "tmax", "adjoin", "degree", "primes",
})

# Longest first
PUNCTUATION = ("->", ";", "(", ")", "[", "]", ",", "=", "/", ":", "+", "-", "*", "^")

DIGITS = "0123456789"
MAX_LITERAL_DIGITS = 1000


class FixtureSyntaxError(AlgebraError, ValueError):
    """
    A fixture file does not follow the grammar.

    Args:
        message (str): What went wrong.
        line (int): 1-based line.
        col (int): 1-based column.
        expected (iterable[str]): Tokens that would have been accepted here.
    """

    def __init__(self, message, line, col, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{col}: {message}{detail}")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "keyword", "int", "punct" or "eof"
    text: str
    line: int
    col: int

    def describe(self):
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text):
    """
    Splits fixture text into tokens, ending with an "eof" token.

    Raises:
        FixtureSyntaxError: on a character that starts no token.
    """
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch in DIGITS:
            j = i
            while j < n and text[j] in DIGITS:
                j += 1
            if j - i > MAX_LITERAL_DIGITS:
                raise FixtureSyntaxError(f"integer literal longer than {MAX_LITERAL_DIGITS} digits", line, start_col)
            tokens.append(Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalpha() or text[j] in DIGITS or text[j] == "_"):
                j += 1
            word = text[i:j]
            tokens.append(Token("keyword" if word in KEYWORDS else "ident", word, line, start_col))
            col += j - i
            i = j
            continue
        for punct in PUNCTUATION:
            if text.startswith(punct, i):
                tokens.append(Token("punct", punct, line, start_col))
                i += len(punct)
                col += len(punct)
                break
        else:
            raise FixtureSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens
