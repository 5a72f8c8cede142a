"""
Presented local maps (R, m) -> (S, n), their closed fibers and the freeness
probe that rejects non-flat maps.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction

from algebra.errors import AlgebraError, NotLocalError, StructuralError
from algebra.field import galois_field
from ideals.calculus import ideal_power
from ideals.ideal import Ideal
from ideals.quotient import QuotientRing, length, local_length, min_gens
from multiplicity.reduction import find_minimal_reduction
from utils import activity

FLAT_TAGS = ("by-construction", "probed", "unknown")
FLAT_PATTERNS = ("identity", "monic", "base_change", "composite")
PROBE_T_MAX = 4


class IllDefinedMapError(AlgebraError, ValueError):
    """A relation of the source does not map into the defining ideal of the target."""


class InfiniteFiberError(AlgebraError, ValueError):
    """The closed fiber S/mS has infinite length at the origin."""


class DimensionMismatchError(AlgebraError, ValueError):
    """dim R and dim S differ."""


@dataclass(frozen=True)
class ClosedFiber:
    """
    S/mS presented inside the ambient ring of S.

    `ideal` is defining(S) + (images); `nu` its minimal number of generators
    in the polynomial ring localized at the origin.
    """
    ideal: Ideal
    length: int
    nu: int
    nvars: int


@dataclass(frozen=True)
class LocalMap:
    """A local map R -> S sending the i-th variable of R to images[i]."""
    source: QuotientRing
    target: QuotientRing
    images: tuple
    flat_tag: str = "unknown"
    pattern: str = ""
    fiber: ClosedFiber = field(default=None, compare=False)

    def apply(self, f):
        """The image of a source polynomial in the target's ambient ring."""
        return f.substitute(list(self.images), self.target.ring)

    def with_flat_tag(self, tag, pattern=""):
        if tag not in FLAT_TAGS:
            raise ValueError(f"unknown flat tag {tag!r}")
        return replace(self, flat_tag=tag, pattern=pattern)

    @property
    def dim(self):
        return self.source.dim

    @property
    def edim_gap(self):
        """edim S − edim R."""
        return self.target.edim - self.source.edim

    def __str__(self):
        sends = ", ".join(f"{v} -> {img}" for v, img in zip(self.source.variables, self.images))
        return f"{self.source} -> {self.target} ({sends})"


def closed_fiber(source, target, images):
    fiber = target.defining + Ideal(target.ring, images)
    report = local_length(target, Ideal(target.ring, images))
    if not report.is_finite:
        raise InfiniteFiberError(f"the closed fiber {fiber} has infinite length")
    ambient = QuotientRing.of(target.ring)
    return ClosedFiber(fiber, report.local_length, min_gens(ambient, fiber), target.nvars)


def make_local_map(source, target, images, flat_tag="unknown", pattern=""):
    """
    Validates and builds a LocalMap.

    Raises:
        StructuralError: wrong image count or images outside the target ring.
        NotLocalError: an image has a constant term.
        IllDefinedMapError: a source relation does not map into the target's relations.
        DimensionMismatchError: dim R != dim S.
        InfiniteFiberError: the closed fiber has infinite length.
    """
    images = tuple(images)
    if len(images) != source.nvars:
        raise StructuralError(f"need {source.nvars} images for {source}, got {len(images)}")
    if not target.field.contains_subfield(source.field):
        raise StructuralError(f"cannot map {source.field} into {target.field}")
    for name, img in zip(source.variables, images):
        if img.ring != target.ring:
            raise StructuralError(f"image of {name} lives in {img.ring}, expected {target.ring}")
        if img.constant_term():
            raise NotLocalError(f"image of {name} is {img}, which does not vanish at the origin")
    for g in source.defining.gens:
        mapped = g.substitute(list(images), target.ring)
        if not target.defining.contains(mapped):
            raise IllDefinedMapError(f"relation {g} maps to {mapped}, which is not zero in {target}")
    if source.dim != target.dim:
        raise DimensionMismatchError(f"dim {source} = {source.dim} but dim {target} = {target.dim}")
    fiber = closed_fiber(source, target, images)
    if flat_tag not in FLAT_TAGS:
        raise ValueError(f"unknown flat tag {flat_tag!r}")
    return LocalMap(source, target, images, flat_tag, pattern, fiber)


def is_ci_fiber(local_map):
    """The closed fiber is a complete intersection: nu(A) equals the number of ambient variables."""
    fiber = local_map.fiber
    return fiber.nu == fiber.nvars


@dataclass(frozen=True)
class ProbeReport:
    """
    Outcome of the freeness probe.

    rows maps t to (l(S/(x)^t S), r * l(R/(x)^t)). flat=True means every
    necessary condition held, not that flatness is proven.
    """
    flat: bool
    rank: Fraction
    sop: tuple
    rows: dict
    failed_at: int = None
    note: str = ""


def extend_map(local_map, k):
    """The same map with both rings read over F_{p^k}."""
    field = galois_field(local_map.source.field.p, k)
    source = local_map.source.with_field(field)
    target = local_map.target.with_field(field)
    images = [img.rename_into(target.ring) for img in local_map.images]
    return make_local_map(source, target, images, local_map.flat_tag, local_map.pattern)


def _source_parameters(local_map, seed):
    """A system of parameters of R and the map it should be pushed through."""
    if local_map.source.dim == 0:
        return (), local_map
    reduction = find_minimal_reduction(local_map.source, seed=seed)
    if reduction.field_degree != local_map.source.field.k:
        local_map = extend_map(local_map, reduction.field_degree)
    return reduction.forms, local_map


def freeness_probe(local_map, t_max=None, seed=0):
    """
    Necessary conditions for S to be free over R.

    With x a system of parameters of R the candidate rank is
    r = l(S/(x)S) / l(R/(x)); a free S must satisfy l(S/(x)^t S) = r l(R/(x)^t)
    for every t. A non-integer r or any mismatch is a sound rejection.
    """
    t_max = PROBE_T_MAX if t_max is None else t_max
    sop, probed = _source_parameters(local_map, seed)
    source, target = probed.source, probed.target
    base = Ideal(source.ring, sop)
    pushed = Ideal(target.ring, [probed.apply(x) for x in sop])
    rank = Fraction(length(target, pushed), length(source, base))
    rows = {}
    if rank.denominator != 1:
        return ProbeReport(False, rank, tuple(str(x) for x in sop), rows, 1, "non-integer candidate rank")
    for t in range(1, t_max + 1):
        lhs = length(target, ideal_power(pushed, t))
        rhs = rank * length(source, ideal_power(base, t))
        rows[t] = (lhs, rhs)
        if lhs != rhs:
            activity(f"[PROBE] {local_map}: rejected at t = {t} ({lhs} != {rhs})")
            return ProbeReport(False, rank, tuple(str(x) for x in sop), rows, t, "length mismatch")
    return ProbeReport(True, rank, tuple(str(x) for x in sop), rows)
