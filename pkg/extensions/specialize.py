"""
Reduction of integer presentations modulo primes, with a generic reference
prime deciding which primes keep the dimension and fiber data.
"""

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd

from algebra.errors import NotLocalError, StructuralError
from algebra.field import galois_field
from algebra.polynomial import PolyRing
from extensions.local_map import (
    DimensionMismatchError,
    IllDefinedMapError,
    InfiniteFiberError,
    make_local_map,
)
from ideals.quotient import QuotientRing
from utils import env_int

# A large prime standing in for characteristic zero when judging good primes.
REFERENCE_PRIME = env_int("REFERENCE_PRIME", 32003)


def _freeze(terms):
    """dict monomial -> int as a sorted tuple of pairs, dropping zeros."""
    return tuple(sorted((tuple(m), int(c)) for m, c in dict(terms).items() if c))


def _primitive(terms):
    """Divide out the content so the coefficients have gcd 1 (sign kept)."""
    if not terms:
        return terms
    content = reduce(gcd, (abs(c) for _, c in terms))
    return tuple((m, c // content) for m, c in terms)


@dataclass(frozen=True)
class IntegerPresentation:
    """
    A map Z[source_vars]/(source_relations) -> Z[target_vars]/(target_relations)
    with integer images. Terms are tuples of (exponents, coefficient) pairs;
    relations are stored primitive.
    """
    source_vars: tuple
    source_relations: tuple
    target_vars: tuple
    target_relations: tuple
    images: tuple

    @classmethod
    def build(cls, source_vars, source_relations, target_vars, target_relations, images):
        return cls(
            tuple(source_vars),
            tuple(_primitive(_freeze(r)) for r in source_relations),
            tuple(target_vars),
            tuple(_primitive(_freeze(r)) for r in target_relations),
            tuple(_freeze(img) for img in images),
        )


@dataclass(frozen=True)
class BadPrime:
    """A prime at which the presentation loses its structure; `check` names the failed test."""
    p: int
    check: str
    detail: str

    def __str__(self):
        return f"p = {self.p}: {self.check} ({self.detail})"


def _reduce_map(presentation, p):
    field = galois_field(p)
    source_ring = PolyRing(field, presentation.source_vars)
    target_ring = PolyRing(field, presentation.target_vars)
    source = QuotientRing.of(source_ring, [source_ring.from_integer_terms(dict(r)) for r in presentation.source_relations])
    target = QuotientRing.of(target_ring, [target_ring.from_integer_terms(dict(r)) for r in presentation.target_relations])
    images = [target_ring.from_integer_terms(dict(img)) for img in presentation.images]
    return make_local_map(source, target, images)


_FAILED_CHECKS = (
    (NotLocalError, "locality"),
    (IllDefinedMapError, "well-definedness"),
    (DimensionMismatchError, "dimension"),
    (InfiniteFiberError, "fiber-finiteness"),
    (StructuralError, "structure"),
)


def _validate(presentation, p):
    try:
        return _reduce_map(presentation, p)
    except tuple(exc for exc, _ in _FAILED_CHECKS) as exc:
        for kind, check in _FAILED_CHECKS:
            if isinstance(exc, kind):
                return BadPrime(p, check, str(exc))
        raise


@lru_cache(maxsize=64)
def reference_map(presentation):
    """The presentation reduced at REFERENCE_PRIME."""
    return _validate(presentation, REFERENCE_PRIME)


def specialize_mod_p(presentation, p):
    """
    Reduce a presentation mod p.

    Returns:
        LocalMap | BadPrime: the validated map over F_p, or the first check that
        failed. Besides locality, well-definedness and a finite fiber, a good
        prime must reproduce dim R, dim S and the fiber length seen at the
        reference prime.
    """
    reduced = _validate(presentation, p)
    if isinstance(reduced, BadPrime):
        return reduced
    reference = reference_map(presentation)
    if isinstance(reference, BadPrime):
        return BadPrime(p, "reference", f"presentation fails at the reference prime: {reference}")
    ours = (reduced.source.dim, reduced.target.dim, reduced.fiber.length)
    theirs = (reference.source.dim, reference.target.dim, reference.fiber.length)
    if ours != theirs:
        return BadPrime(p, "generic-comparison",
                        f"(dim R, dim S, fiber length) = {ours} mod {p}, {theirs} generically")
    return reduced
