"""
Seeded search for minimal reductions of the maximal ideal: d linear forms
generating an ideal of finite colength with the same multiplicity as m.
"""

import random
from dataclasses import dataclass

from algebra.errors import AlgebraError, ResourceCapError
from algebra.field import galois_field
from algebra.polynomial import Polynomial
from multiplicity.hilbert_samuel import NotSystemOfParametersError, multiplicity, multiplicity_of_sop
from utils import activity

# Scalar extension degrees tried in order when the prime field is too small.
EXTENSION_DEGREES = (1, 2, 3, 4)


class ReductionSearchError(AlgebraError):
    """No minimal reduction was found within the allotted tries."""


@dataclass(frozen=True)
class MinimalReduction:
    """
    An accepted reduction x of m.

    `ring` is the ring the forms live in (a scalar extension when
    field_degree > the input's), `attempts` counts candidates tried in total.
    """
    forms: tuple
    ring: object
    e: int
    field_degree: int
    attempts: int
    seed: int


def random_linear_form(ring, rng):
    field = ring.field
    terms = {}
    for i in range(ring.nvars):
        c = field.random_element(rng)
        if c:
            m = [0] * ring.nvars
            m[i] = 1
            terms[tuple(m)] = c
    return Polynomial(ring, terms)


def find_minimal_reduction(quotient, seed=0, max_tries=40):
    """
    Draws d random linear forms until (x) has finite colength and
    e((x), Q) = e(m, Q).

    Forms are drawn over the field of Q first; when Q is over a prime field
    and every try fails, the search repeats over F_{p^2}, F_{p^3}, F_{p^4}.

    Args:
        quotient (QuotientRing): A ring of dimension d >= 1.
        seed (int): Seed of the PRNG; the result is a function of it.
        max_tries (int): Candidates per field.

    Returns:
        MinimalReduction

    Raises:
        ReductionSearchError: every try failed on every field.
    """
    d = quotient.dim
    if d < 1:
        raise ValueError(f"{quotient} has dimension {d}; minimal reductions need d >= 1")
    rng = random.Random(seed)
    base = quotient.field
    degrees = EXTENSION_DEGREES if base.k == 1 else (base.k,)
    attempts = 0
    for k in degrees:
        ring = quotient if k == base.k else quotient.with_field(galois_field(base.p, k))
        target = multiplicity(ring).e
        for _ in range(max_tries):
            attempts += 1
            forms = [random_linear_form(ring.ring, rng) for _ in range(d)]
            if any(f.is_zero() for f in forms):
                continue
            try:
                e = multiplicity_of_sop(ring, forms).e
            except (NotSystemOfParametersError, ResourceCapError):
                continue
            if e == target:
                activity(f"[REDUCTION] {quotient}: accepted {[str(f) for f in forms]} over F_{base.p}^{k}")
                return MinimalReduction(tuple(forms), ring, e, k, attempts, seed)
        activity(f"[REDUCTION] {quotient}: no reduction over F_{base.p}^{k} after {max_tries} tries")
    raise ReductionSearchError(
        f"no minimal reduction of the maximal ideal of {quotient} after {attempts} tries; "
        f"a larger scalar field is advised"
    )
