"""
Finite fields F_{p^k} with elements encoded as integers.

An element of F_{p^k} is an int in [0, p^k); its base-p digits are the
coefficients (lowest first) of a polynomial in the field generator `a`
modulo the stored irreducible modulus. The prime subfield F_p is embedded
as the ints 0..p-1, so every F_p coefficient is also a valid F_{p^k}
coefficient without conversion.
"""

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from sympy import isprime, primefactors

from algebra.errors import FieldError

# Brute-force irreducibility search stays cheap up to this many elements.
MAX_FIELD_ORDER = 2 ** 20


def _digits(n, p, k):
    """Base-p digits of n, lowest first, padded to length k."""
    out = []
    for _ in range(k):
        n, r = divmod(n, p)
        out.append(r)
    return out


def _from_digits(digits, p):
    n = 0
    for d in reversed(digits):
        n = n * p + d
    return n


def _poly_mod(coeffs, modulus, p):
    """Remainder of a coefficient list (lowest first) by a monic modulus over F_p."""
    coeffs = list(coeffs)
    deg = len(modulus) - 1
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i] % p
        if c:
            for j in range(deg + 1):
                coeffs[i - deg + j] = (coeffs[i - deg + j] - c * modulus[j]) % p
    return [c % p for c in coeffs[:deg]] + [0] * max(0, deg - len(coeffs))


def _divides(divisor, poly, p):
    """True when the monic `divisor` divides `poly` over F_p."""
    return not any(_poly_mod(poly, divisor, p))


def _monic_polys(degree, p):
    """All monic polynomials of the given degree, in integer-encoding order."""
    for low in range(p ** degree):
        yield _digits(low, p, degree) + [1]


def is_irreducible(poly, p):
    """
    Brute-force irreducibility test for a monic polynomial over F_p.

    Args:
        poly (list[int]): Coefficients, lowest first, leading coefficient 1.
        p (int): The characteristic.

    Returns:
        bool: True when no monic factor of degree 1..deg/2 divides poly.
    """
    degree = len(poly) - 1
    if degree < 1:
        return False
    for d in range(1, degree // 2 + 1):
        for candidate in _monic_polys(d, p):
            if _divides(candidate, poly, p):
                return False
    return True


def lowest_irreducible(p, k):
    """The monic irreducible of degree k over F_p with the smallest integer encoding."""
    for candidate in _monic_polys(k, p):
        if is_irreducible(candidate, p):
            return tuple(candidate)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """
    The finite field F_{p^k}.

    Equality and hashing only look at (p, k, modulus); the arithmetic tables
    are derived lazily and never compared.
    """
    p: int
    k: int = 1
    modulus: tuple = field(default=())

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise FieldError(f"field characteristic must be prime, got {self.p!r}")
        if not isinstance(self.k, int) or self.k < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.k!r}")
        if self.p ** self.k > MAX_FIELD_ORDER:
            raise FieldError(f"F_{self.p}^{self.k} is larger than the supported {MAX_FIELD_ORDER} elements")
        if self.k == 1:
            if self.modulus:
                raise FieldError("prime fields carry no modulus")
            return
        if not self.modulus:
            object.__setattr__(self, "modulus", lowest_irreducible(self.p, self.k))
        modulus = tuple(int(c) % self.p for c in self.modulus)
        if len(modulus) != self.k + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {self.k}")
        if not is_irreducible(list(modulus), self.p):
            raise FieldError(f"modulus {modulus} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", modulus)

    @property
    def order(self):
        return self.p ** self.k

    @property
    def characteristic(self):
        return self.p

    def __str__(self):
        return f"F_{self.p}" if self.k == 1 else f"F_{self.p}^{self.k}"

    # --- tables for k > 1 ---

    def _mul_slow(self, a, b):
        da = _digits(a, self.p, self.k)
        db = _digits(b, self.p, self.k)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return _from_digits(_poly_mod(prod, self.modulus, self.p), self.p)

    @cached_property
    def _tables(self):
        """Exp/log tables built from the first primitive element."""
        n = self.order - 1
        exponents = [n // r for r in primefactors(n)]
        for g in range(2, self.order):
            powers = [1]
            for _ in range(n - 1):
                powers.append(self._mul_slow(powers[-1], g))
            if all(powers[e] != 1 for e in exponents if e < n):
                log = [0] * self.order
                for i, v in enumerate(powers):
                    log[v] = i
                return powers, log
        raise FieldError(f"no primitive element found in {self}")

    # --- arithmetic ---

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return _from_digits([(x + y) % self.p for x, y in zip(_digits(a, self.p, self.k), _digits(b, self.p, self.k))], self.p)

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return _from_digits([-x % self.p for x in _digits(a, self.p, self.k)], self.p)

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        exp, log = self._tables
        return exp[(log[a] + log[b]) % (self.order - 1)]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._tables
        return exp[-log[a] % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n == 0:
            return 1
        if self.k == 1:
            return pow(a, n, self.p)
        if not a:
            return 0
        exp, log = self._tables
        return exp[log[a] * n % (self.order - 1)]

    def from_int(self, n):
        """Image of an integer in the prime subfield."""
        return n % self.p

    def elements(self):
        return range(self.order)

    def random_element(self, rng, nonzero=False):
        low = 1 if nonzero else 0
        return rng.randrange(low, self.order)

    def format(self, a):
        """Render an element; extension elements use the generator name `a`."""
        if self.k == 1:
            return str(a)
        terms = []
        for i, d in reversed(list(enumerate(_digits(a, self.p, self.k)))):
            if not d:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if not mono:
                terms.append(str(d))
            else:
                terms.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(terms) if terms else "0"

    def contains_subfield(self, other):
        """True when `other` embeds into this field by the identity on ints."""
        return other.p == self.p and (other.k == 1 or other == self)


@lru_cache(maxsize=None)
def galois_field(p, k=1):
    """Shared FieldSpec instance for F_{p^k}."""
    return FieldSpec(p, k)
