"""
Finite-level Hilbert-Kunz estimates l(Q/I^[q]) / q^d and the Frobenius-twisted
multiplicity of a factorization T -> T/J.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from algebra.errors import ResourceCapError
from ideals.calculus import frobenius_power
from ideals.ideal import Ideal
from ideals.quotient import QuotientRing, length
from multiplicity.hilbert_samuel import require_primary, hilbert_samuel, multiplicity_of_sop
from utils import activity, env_int

# Largest Frobenius exponent e; 0 means the per-characteristic default.
E_CAP = env_int("E_CAP", 0)

TWISTED_METHODS = ("rescaled", "direct")


def default_e_max(p):
    """E_CAP when set, else 3 for p in {2, 3} and 2 for larger primes."""
    if E_CAP:
        return E_CAP
    return 3 if p in (2, 3) else 2


@dataclass(frozen=True)
class HKSequence:
    """
    Hilbert-Kunz estimates by Frobenius exponent.

    estimates[e] = lengths[e] / p^(e*d) exactly. `capped` is set when a
    resource cap stopped the sequence before e_max; `cap_note` says which.
    """
    p: int
    d: int
    e_max: int
    estimates: dict = field(default_factory=dict)
    lengths: dict = field(default_factory=dict)
    capped: bool = False
    cap_note: str = ""

    @property
    def last(self):
        if not self.estimates:
            return None
        return self.estimates[max(self.estimates)]

    @property
    def is_constant(self):
        return len(set(self.estimates.values())) <= 1


def hk_sequence(quotient, ideal, e_max=None):
    """
    l(Q/I^[p^e]) / p^(e*d) for 1 <= e <= e_max.

    A resource cap hit returns the partial sequence with `capped` set.
    """
    require_primary(quotient, ideal)
    p = quotient.field.p
    d = quotient.dim
    e_max = default_e_max(p) if e_max is None else e_max
    if e_max < 1:
        raise ValueError(f"e_max must be >= 1, got {e_max}")
    estimates, lengths = {}, {}
    for e in range(1, e_max + 1):
        q = p ** e
        try:
            lengths[e] = length(quotient, frobenius_power(ideal, q))
        except ResourceCapError as exc:
            activity(f"[HK] stopped at e = {e}: {exc}")
            return HKSequence(p, d, e_max, estimates, lengths, True, str(exc))
        estimates[e] = Fraction(lengths[e], q ** d)
    activity(f"[HK] {ideal} in {quotient}: {', '.join(str(v) for v in estimates.values())}")
    return HKSequence(p, d, e_max, estimates, lengths)


def frobenius_quotient(ambient, ideal, q):
    """T/J^[q] as a QuotientRing."""
    twisted = ambient.defining + frobenius_power(ideal, q)
    return QuotientRing(ambient.ring, twisted)


def frobenius_twisted_multiplicity(ambient, ideal, elements, e, method="rescaled"):
    """
    e(x, T^(e) ⊗ T/J) / p^(e*dim T), read from lengths of T-quotients.

    "direct" takes the d-th difference of t -> l(T/(J + (x)^t)^[q]);
    "rescaled" uses e(x^[q], M) = q^d e(x, M) and differences the cheaper
    t -> l(T/(J^[q] + (x)^t)). Both give the same rational. e = 0 is e(x, T/J).

    Args:
        ambient (QuotientRing): T.
        ideal (Ideal): J, contained in the maximal ideal of T.
        elements (list[Polynomial]): x, a system of parameters of T/J.
        e (int): Frobenius exponent.
        method (str): "rescaled" or "direct".

    Returns:
        Fraction
    """
    if method not in TWISTED_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {TWISTED_METHODS}")
    p = ambient.field.p
    q = p ** e
    d = len(elements)
    module = frobenius_quotient(ambient, ideal, q)
    if method == "direct":
        powered = Ideal(ambient.ring, elements)
        powered = frobenius_power(powered, q)
        twisted = hilbert_samuel(module, powered, dim=d).e
    else:
        twisted = q ** d * multiplicity_of_sop(module, elements, dim=d).e
    return Fraction(twisted, q ** ambient.dim)
