"""
Ideals of a polynomial ring with lazily computed, cached Gröbner bases.
"""

import threading

from algebra.errors import StructuralError
from algebra.groebner import (
    count_standard_monomials as _count,
    groebner_basis,
    krull_dimension as _krull,
    standard_monomials as _standard,
)
from algebra.polynomial import GREVLEX, Polynomial


class Ideal:
    """
    An ideal of `ring` given by generators.

    Zero and repeated generators are dropped on construction. Gröbner bases are
    computed on first use and cached per monomial order; the cache is filled at
    most once even when several threads ask at the same time.

    `note` carries conventions applied while building the ideal (for example
    the t = 0 power), so reports can show them.
    """

    def __init__(self, ring, gens=(), note=None):
        self.ring = ring
        unique = []
        seen = set()
        for g in gens:
            if isinstance(g, int):
                g = ring.constant(ring.field.from_int(g))
            if not isinstance(g, Polynomial):
                raise StructuralError(f"ideal generators must be polynomials, got {type(g).__name__}")
            if g.ring != ring:
                raise StructuralError(f"generator {g} lives in {g.ring}, expected {ring}")
            if g.terms and g not in seen:
                seen.add(g)
                unique.append(g)
        self.gens = tuple(unique)
        self.note = note
        self._gb = {}
        self._lock = threading.Lock()

    # --- constructors ---

    @classmethod
    def zero(cls, ring):
        return cls(ring, ())

    @classmethod
    def unit(cls, ring, note=None):
        return cls(ring, (ring.one(),), note=note)

    @classmethod
    def maximal(cls, ring):
        """The origin maximal ideal (x_1, ..., x_n)."""
        return cls(ring, ring.gens())

    # --- Gröbner data ---

    def groebner(self, order=GREVLEX):
        with self._lock:
            gb = self._gb.get(order)
            if gb is None:
                gb = groebner_basis(self.gens, order, ring=self.ring)
                self._gb[order] = gb
            return gb

    def contains(self, f):
        return self.groebner().contains(f)

    def __contains__(self, f):
        return self.contains(f)

    def reduce(self, f):
        return self.groebner().normal_form(f)

    def is_unit(self):
        return self.groebner().is_unit

    def is_zero(self):
        return not self.gens

    def issubset(self, other):
        return all(other.contains(g) for g in self.gens)

    def standard_monomials(self):
        return _standard(self.groebner())

    def colength(self):
        """dim_K of the quotient ring, or INFINITE."""
        return _count(self.groebner())

    def krull_dimension(self):
        return _krull(self.groebner())

    # --- arithmetic ---

    def _check(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            raise StructuralError(f"cannot combine ideals of {self.ring} and {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner().generators == other.groebner().generators

    def __hash__(self):
        return hash((self.ring, self.groebner().generators))

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")" if self.gens else "(0)"

    def __repr__(self):
        return f"Ideal{self} in {self.ring}"


def standard_monomials(ideal):
    """Monomials outside the leading-term ideal of `ideal`, or INFINITE."""
    return ideal.standard_monomials()


def krull_dimension(ideal):
    """Krull dimension of the quotient by `ideal`; -1 for the unit ideal."""
    return ideal.krull_dimension()
