"""
Quotient rings K[x]/J viewed locally at the origin, and the lengths,
embedding dimensions and generator counts they report.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache

from algebra.errors import InfiniteLengthError, NotLocalError, StructuralError
from algebra.groebner import INFINITE, is_infinite, normal_form
from algebra.polynomial import PolyRing
from ideals.calculus import ideal_power, saturation
from ideals.ideal import Ideal
from utils import activity


@dataclass(frozen=True, eq=True)
class QuotientRing:
    """
    The local ring of K[x]/defining at the origin.

    Every defining generator must vanish at the origin, so the origin is a
    point of V(defining).
    """
    ring: PolyRing
    defining: Ideal

    def __post_init__(self):
        if self.defining.ring != self.ring:
            raise StructuralError(f"defining ideal lives in {self.defining.ring}, expected {self.ring}")
        for g in self.defining.gens:
            if g.constant_term():
                raise NotLocalError(f"relation {g} does not vanish at the origin")

    @classmethod
    def of(cls, ring, relations=()):
        return cls(ring, Ideal(ring, relations))

    @property
    def field(self):
        return self.ring.field

    @property
    def variables(self):
        return self.ring.variables

    @property
    def nvars(self):
        return self.ring.nvars

    @cached_property
    def dim(self):
        return self.defining.krull_dimension()

    @cached_property
    def edim(self):
        return edim(self)

    @property
    def is_regular(self):
        return self.edim == self.dim

    def maximal_ideal(self):
        return Ideal.maximal(self.ring)

    def ideal(self, gens, note=None):
        return Ideal(self.ring, gens, note=note)

    def reduce(self, f):
        return self.defining.reduce(f)

    def with_field(self, field):
        """The same presentation with coefficients read in `field`."""
        ring = self.ring.with_field(field)
        return QuotientRing(ring, Ideal(ring, [g.rename_into(ring) for g in self.defining.gens]))

    def __str__(self):
        if self.defining.is_zero():
            return str(self.ring)
        return f"{self.ring}/{self.defining}"


@dataclass(frozen=True)
class LengthReport:
    """
    Colengths of an ideal: global over all points of V, the part away from the
    origin, and the local length at the origin (global − away).
    """
    global_colength: object
    away_colength: int
    local_length: object

    @property
    def is_finite(self):
        return not is_infinite(self.local_length)


def _nilpotent_mod(var, gb, bound):
    """True when var^N reduces to zero for some N <= 2 * bound."""
    power, exponent = normal_form(var, gb), 1
    while power.terms:
        if exponent > bound:
            return False
        power = normal_form(power * power, gb)
        exponent *= 2
    return True


@lru_cache(maxsize=4096)
def sum_ideal(quotient, gens):
    """defining + (gens) as a shared Ideal, so its Gröbner basis is computed once."""
    return quotient.defining + Ideal(quotient.ring, gens)


@lru_cache(maxsize=4096)
def _local_length(quotient, gens):
    total = sum_ideal(quotient, gens)
    gb = total.groebner()
    global_colength = total.colength()
    if is_infinite(global_colength):
        return LengthReport(INFINITE, 0, INFINITE)
    if all(_nilpotent_mod(x, gb, global_colength) for x in quotient.ring.gens()):
        return LengthReport(global_colength, 0, global_colength)
    away = saturation(total, Ideal.maximal(quotient.ring)).colength()
    activity(f"[LENGTH] {total}: global {global_colength}, away {away}")
    return LengthReport(global_colength, away, global_colength - away)


def local_length(quotient, ideal):
    """
    Length of the localization at the origin of K[x]/(defining + ideal).

    A positive-dimensional J + I reports INFINITE; components away from the
    origin are removed through the saturation by the maximal ideal.

    Returns:
        LengthReport
    """
    if ideal.ring != quotient.ring:
        raise StructuralError(f"ideal lives in {ideal.ring}, ring is {quotient.ring}")
    return _local_length(quotient, ideal.gens)


def length(quotient, ideal):
    """The local length as an int; INFINITE raises."""
    report = local_length(quotient, ideal)
    if not report.is_finite:
        raise InfiniteLengthError(f"{quotient}/{ideal} has infinite length at the origin")
    return report.local_length


def edim(quotient):
    """dim_K m/m², computed as l(Q/m²) − 1."""
    m = quotient.maximal_ideal()
    return length(quotient, ideal_power(m, 2)) - 1


def min_gens(quotient, ideal):
    """
    Minimal number of generators of `ideal` in the local ring: dim_K A/mA
    = l(Q/mA) − l(Q/A).
    """
    m = quotient.maximal_ideal()
    return length(quotient, m * ideal) - length(quotient, ideal)
