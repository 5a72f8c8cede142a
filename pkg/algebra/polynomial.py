"""
Multivariate polynomials over finite fields.

Monomials are exponent tuples, one entry per ambient variable. A Polynomial
is an immutable mapping monomial -> nonzero coefficient bound to a PolyRing;
the monomial order is a separate value passed to whoever needs leading terms.
"""

from dataclasses import dataclass
from itertools import product

from algebra.errors import StructuralError
from algebra.field import FieldSpec


def monomial_degree(m):
    return sum(m)


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(b, a):
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def monomials_of_degree(nvars, degree):
    """All exponent tuples of the given total degree, largest first under lex."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def _grevlex_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


@dataclass(frozen=True)
class MonomialOrder:
    """
    A monomial order. Larger key means larger monomial.

    kind is "grevlex", "lex" or "block"; a block order compares the first
    `block` variables by grevlex, then the rest by grevlex, and is an
    elimination order for the leading block.
    """
    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise ValueError("block orders need at least one eliminated variable")

    def key(self, m):
        if self.kind == "grevlex":
            return _grevlex_key(m)
        if self.kind == "lex":
            return m
        k = self.block
        return (_grevlex_key(m[:k]), _grevlex_key(m[k:]))

    def __str__(self):
        return f"block({self.block})" if self.kind == "block" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(k):
    return MonomialOrder("block", k)


@dataclass(frozen=True)
class PolyRing:
    """The polynomial ring field[variables]."""
    field: FieldSpec
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise StructuralError(f"duplicate variable names in {self.variables}")

    @property
    def nvars(self):
        return len(self.variables)

    def index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise StructuralError(f"{name!r} is not a variable of {self}") from None

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        """Constant polynomial for a field element c (an int in [0, field.order))."""
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name):
        m = [0] * self.nvars
        m[self.index(name)] = 1
        return Polynomial(self, {tuple(m): 1})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def monomial(self, exponents, coeff=1):
        exponents = tuple(exponents)
        if len(exponents) != self.nvars:
            raise StructuralError(f"monomial {exponents} does not fit {self}")
        return Polynomial(self, {exponents: coeff} if coeff else {})

    def from_integer_terms(self, terms):
        """Reduce a dict monomial -> int into this ring's prime subfield."""
        out = {}
        for m, c in terms.items():
            c = c % self.field.p
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def extend(self, names):
        """A ring with extra variables appended."""
        return PolyRing(self.field, self.variables + tuple(names))

    def with_field(self, field):
        return PolyRing(field, self.variables)

    def fresh_names(self, wanted, avoid=()):
        """Names based on `wanted` that clash neither with this ring nor `avoid`."""
        taken = set(self.variables) | set(avoid)
        out = []
        for name in wanted:
            candidate, n = name, 0
            while candidate in taken:
                n += 1
                candidate = f"{name}{n}"
            taken.add(candidate)
            out.append(candidate)
        return out

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"


class Polynomial:
    """
    An immutable polynomial bound to a PolyRing.

    Arithmetic between polynomials of different rings raises StructuralError;
    ints are promoted to constants of the prime subfield.
    """
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    # --- basic queries ---

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def support(self):
        """Indices of the variables that occur."""
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def leading_monomial(self, order):
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order):
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def homogeneous_part(self, degree):
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) == degree})

    def linear_part(self):
        return self.homogeneous_part(1)

    # --- arithmetic ---

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise StructuralError(f"cannot combine polynomials of {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.constant(self.ring.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = f.add(out.get(m, 0), c)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                out[m] = f.add(out.get(m, 0), f.mul(c1, c2))
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponents must be non-negative integers")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        f = self.ring.field
        return Polynomial(self.ring, {m: f.mul(c, v) for m, v in self.terms.items()})

    def shift(self, monomial, coeff=1):
        """Multiply by coeff * monomial."""
        f = self.ring.field
        return Polynomial(self.ring, {monomial_mul(m, monomial): f.mul(coeff, c) for m, c in self.terms.items()})

    def monic(self, order):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def frobenius(self, q):
        """
        The q-th power computed termwise: c*x^m -> c^q * x^(q*m).

        Equals self**q whenever q is a power of the characteristic.
        """
        f = self.ring.field
        return Polynomial(self.ring, {tuple(q * e for e in m): f.pow(c, q) for m, c in self.terms.items()})

    # --- change of ring ---

    def substitute(self, images, target):
        """
        Evaluate at `images` (one polynomial of `target` per variable).

        Returns:
            Polynomial: an element of `target`.
        """
        if len(images) != self.ring.nvars:
            raise StructuralError(f"need {self.ring.nvars} images, got {len(images)}")
        if self.ring.field != target.field and not target.field.contains_subfield(self.ring.field):
            raise StructuralError(f"cannot map {self.ring.field} coefficients into {target.field}")
        result = target.zero()
        power_cache = {}
        for m, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in power_cache:
                        power_cache[key] = images[i] ** e
                    term = term * power_cache[key]
            result = result + term
        return result

    def embed(self, target, positions):
        """
        Move into `target`, sending variable i to target variable positions[i].

        No arithmetic happens; this is a relabelling of exponent vectors.
        """
        n = target.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    e[positions[i]] = k
            out[tuple(e)] = c
        return Polynomial(target, out)

    def rename_into(self, target):
        """Embed by matching variable names; every used variable must exist in target."""
        positions = []
        for i, name in enumerate(self.ring.variables):
            if name in target.variables:
                positions.append(target.variables.index(name))
            else:
                positions.append(None)
        for m in self.terms:
            for i, e in enumerate(m):
                if e and positions[i] is None:
                    raise StructuralError(f"variable {self.ring.variables[i]!r} is missing from {target}")
        positions = [p if p is not None else 0 for p in positions]
        if target.field != self.ring.field:
            if not target.field.contains_subfield(self.ring.field):
                raise StructuralError(f"cannot move {self.ring.field} coefficients into {target.field}")
        return self.embed(target, positions)

    # --- comparison / display ---

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(self.ring.field.from_int(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __getstate__(self):
        return (self.ring, self.terms)

    def __setstate__(self, state):
        self.ring, self.terms = state
        self._hash = None

    def to_string(self, order=GREVLEX):
        if not self.terms:
            return "0"
        f = self.ring.field
        pieces = []
        for m, c in self.sorted_terms(order):
            factors = []
            for name, e in zip(self.ring.variables, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            coeff = f.format(c)
            if f.k > 1 and "+" in coeff:
                coeff = f"({coeff})"
            if not factors:
                pieces.append(coeff)
            elif c == 1:
                pieces.append("*".join(factors))
            else:
                pieces.append(coeff + "*" + "*".join(factors))
        return " + ".join(pieces)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r} in {self.ring})"


def all_monomials_up_to(nvars, degree):
    """Every exponent tuple of total degree <= degree."""
    return [m for m in product(range(degree + 1), repeat=nvars) if sum(m) <= degree]
