"""
AST of fixture files. Source positions ride along but never take part in
equality, so a printed-and-reparsed document compares equal to the original.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


def _pos():
    return field(default=None, compare=False, repr=False)


# --- expressions ---

@dataclass(frozen=True)
class Num:
    value: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: Pos = _pos()


# --- statements ---

@dataclass(frozen=True)
class FieldDecl:
    name: str
    p: int
    k: int = 1
    pos: Pos = _pos()


@dataclass(frozen=True)
class RingDecl:
    name: str
    field: str
    variables: tuple
    relations: tuple = ()
    pos: Pos = _pos()


@dataclass(frozen=True)
class IdealDecl:
    name: str
    gens: tuple
    ring: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class MapDecl:
    name: str
    source: str
    target: str
    sends: tuple
    flat: str = None
    pos: Pos = _pos()


@dataclass(frozen=True)
class CheckDecl:
    """`check KIND TARGET` with its optional clauses; None means not given."""
    kind: str
    target: str
    sop: tuple = None
    on: str = None
    emax: int = None
    tmax: int = None
    adjoin: int = None
    degree: int = None
    primes: tuple = None
    pos: Pos = _pos()


@dataclass(frozen=True)
class Document:
    statements: tuple

    def of_type(self, kind):
        return [s for s in self.statements if isinstance(s, kind)]
