"""
Constructive Cohen factorization R -> T -> S = T/J of a presented local map.

T starts as R with one fresh variable per target variable; the kernel J of
T -> S is computed by elimination, and elements of J with a nonzero linear
part are moved into T (peeled) while they cut the fiber dimension by one,
until J lies in the square of the maximal ideal of T.
"""

import random
from dataclasses import dataclass

from algebra.errors import AlgebraError
from algebra.groebner import normal_form
from algebra.polynomial import PolyRing
from ideals.calculus import ideal_power, kernel_of_map
from ideals.ideal import Ideal
from ideals.quotient import QuotientRing
from utils import activity

PERFECTNESS_NOTE = "J perfect and pd_T S = c: assumed-by-theorem"
PEEL_RANDOM_TRIES = 30


class PeelSearchError(AlgebraError):
    """
    No element of the kernel could be peeled.

    Args:
        message (str): Description of the failure.
        partial (dict): The peeled elements and the kernel at the point of failure.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class CohenFactorization:
    """
    R -> T -> S = T/J.

    T's ring lists R's variables first, then `lifted` variables z_j, one per
    variable of S; T -> S sends z_j to the j-th variable of S.
    """
    local_map: object
    T: QuotientRing
    J: Ideal
    peeled: tuple
    c: int
    lifted: tuple
    fiber_codim: int
    assumptions: tuple = (PERFECTNESS_NOTE,)

    def lift(self, f):
        """Move an element of S's ambient ring into T by s_j -> z_j."""
        positions = [self.T.ring.index(z) for z in self.lifted]
        return f.embed(self.T.ring, positions)

    @property
    def S(self):
        return QuotientRing(self.T.ring, self.T.defining + self.J)

    def j_in_square(self):
        """Every generator of J lies in n_T^2 (modulo the relations of T)."""
        square = self.T.defining + ideal_power(self.T.maximal_ideal(), 2)
        gb = square.groebner()
        return all(normal_form(g, gb).is_zero() for g in self.J.gens)

    def __str__(self):
        return f"{self.local_map.source} -> {self.T} -> {self.T}/{self.J} (c = {self.c})"


def _source_maximal(ring, count):
    return Ideal(ring, ring.gens()[:count])


def _linear_residue_basis(defining, peeled):
    """Gröbner basis of defining + peeled + n^2, for testing linear parts."""
    ring = defining.ring
    square = ideal_power(Ideal.maximal(ring), 2)
    return (defining + Ideal(ring, peeled) + square).groebner()


def _cuts_fiber(base, y, fiber_dim):
    return (base + Ideal(base.ring, [y])).krull_dimension() == fiber_dim - 1


def cohen_factor(local_map, seed=0):
    """
    Factor a validated local map as R -> T -> S = T/J with J in n_T^2.

    Args:
        local_map (LocalMap): A validated map with finite fiber.
        seed (int): Seed for random recombinations, used only when no kernel
            generator can be peeled directly.

    Returns:
        CohenFactorization

    Raises:
        PeelSearchError: no peelable element found, or the result fails
            edim T = edim S.
    """
    source, target = local_map.source, local_map.target
    r = source.nvars
    lifted = tuple(source.ring.fresh_names(target.variables))
    ring = PolyRing(target.field, source.variables + lifted)
    defining = Ideal(ring, [g.rename_into(ring) for g in source.defining.gens])
    kernel = kernel_of_map(ring, target, list(local_map.images) + target.ring.gens())
    activity(f"[COHEN] kernel of {ring} -> {target}: {kernel}")

    rng = random.Random(seed)
    peeled = []
    m_source = _source_maximal(ring, r)
    while True:
        residue = _linear_residue_basis(defining, peeled)
        candidates = [g for g in sorted(kernel.gens, key=lambda g: g.degree())
                      if not normal_form(g, residue).is_zero()]
        if not candidates:
            break
        base = defining + Ideal(ring, peeled) + m_source
        fiber_dim = base.krull_dimension()
        chosen = next((g for g in candidates if _cuts_fiber(base, g, fiber_dim)), None)
        if chosen is None:
            field = ring.field
            for _ in range(PEEL_RANDOM_TRIES):
                combo = ring.zero()
                for g in candidates:
                    combo = combo + g.scale(field.random_element(rng))
                if normal_form(combo, residue).is_zero():
                    continue
                if _cuts_fiber(base, combo, fiber_dim):
                    chosen = combo
                    break
        if chosen is None:
            raise PeelSearchError(
                f"no element of the kernel cuts the fiber of {local_map} by one; "
                f"a larger scalar field is advised",
                partial={"peeled": [str(y) for y in peeled], "kernel": [str(g) for g in kernel.gens]},
            )
        peeled.append(chosen)
        activity(f"[COHEN] peeled {chosen}")

    T = QuotientRing(ring, defining + Ideal(ring, peeled))
    reduced = [T.reduce(g) for g in kernel.gens]
    J = Ideal(ring, [g for g in reduced if not g.is_zero()])
    c = target.edim - source.edim
    if T.edim != target.edim:
        raise PeelSearchError(
            f"edim T = {T.edim} but edim S = {target.edim} after peeling",
            partial={"peeled": [str(y) for y in peeled], "kernel": [str(g) for g in J.gens]},
        )
    fiber_codim = len(lifted) - (Ideal(ring, peeled) + m_source + defining).krull_dimension()
    return CohenFactorization(local_map, T, J, tuple(peeled), c, lifted, fiber_codim)
