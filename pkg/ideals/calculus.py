"""
Ideal operations: powers, Frobenius powers, intersections, colons,
saturations, elimination and kernels of ring maps.
"""

from itertools import combinations_with_replacement

from algebra.errors import NotLocalError, StructuralError
from algebra.groebner import groebner_basis
from algebra.polynomial import (
    GREVLEX,
    PolyRing,
    Polynomial,
    block_order,
    monomial_divides,
    monomial_quotient,
)
from ideals.ideal import Ideal

POWER_ZERO_NOTE = "I^0 = (1) by convention"


def ideal_power(ideal, t):
    """
    The ordinary power I^t.

    Args:
        ideal (Ideal): The base ideal.
        t (int): Exponent; t = 0 returns the unit ideal with a note attached.

    Returns:
        Ideal: generated by all t-fold products of generators, deduplicated.
    """
    if t < 0:
        raise ValueError(f"ideal powers need t >= 0, got {t}")
    if t == 0:
        return Ideal.unit(ideal.ring, note=POWER_ZERO_NOTE)
    if t == 1:
        return ideal
    products = []
    for combo in combinations_with_replacement(ideal.gens, t):
        f = combo[0]
        for g in combo[1:]:
            f = f * g
        products.append(f)
    return Ideal(ideal.ring, products)


def is_power_of(q, p):
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def frobenius_power(ideal, q):
    """
    The Frobenius power I^[q] generated by q-th powers of the generators.

    Raises:
        ValueError: q is not a power of the characteristic.
    """
    p = ideal.ring.field.p
    if not is_power_of(q, p):
        raise ValueError(f"{q} is not a power of the characteristic {p}")
    if q == 1:
        return ideal
    return Ideal(ideal.ring, [g.frobenius(q) for g in ideal.gens])


def _reorder(ring, first):
    """A copy of ring listing `first` before the remaining variables, plus the embedding positions."""
    first = list(first)
    rest = [v for v in ring.variables if v not in first]
    reordered = PolyRing(ring.field, tuple(first + rest))
    positions = [reordered.index(v) for v in ring.variables]
    return reordered, positions


def eliminate(ideal, drop_vars, target=None):
    """
    I ∩ K[remaining variables], via a block order eliminating `drop_vars`.

    Args:
        ideal (Ideal): The ideal to eliminate from.
        drop_vars (iterable[str]): Variables to eliminate.
        target (PolyRing): Optional ring over the remaining variables to move the
            result into; by default the result stays in the ideal's own ring.

    Returns:
        Ideal
    """
    ring = ideal.ring
    drop = [v for v in ring.variables if v in set(drop_vars)]
    missing = set(drop_vars) - set(ring.variables)
    if missing:
        raise StructuralError(f"cannot eliminate {sorted(missing)}: not variables of {ring}")
    if not drop:
        kept = list(ideal.gens)
    else:
        work, positions = _reorder(ring, drop)
        moved = [g.embed(work, positions) for g in ideal.gens]
        gb = groebner_basis(moved, block_order(len(drop)), ring=work)
        inverse = [ring.index(v) for v in work.variables]
        kept = []
        for g in gb.generators:
            if any(m[i] for m in g.terms for i in range(len(drop))):
                continue
            kept.append(g.embed(ring, inverse))
    result = Ideal(ring, kept)
    if target is not None:
        result = Ideal(target, [g.rename_into(target) for g in result.gens])
    return result


def intersection(first, second):
    """I ∩ J via elimination of t from t·I + (1 − t)·J."""
    if first.ring != second.ring:
        raise StructuralError(f"cannot intersect ideals of {first.ring} and {second.ring}")
    ring = first.ring
    if first.is_zero() or second.is_zero():
        return Ideal.zero(ring)
    (t,) = ring.fresh_names(["t"])
    joint = PolyRing(ring.field, (t,) + ring.variables)
    shift = list(range(1, joint.nvars))
    tv = joint.var(t)
    gens = [tv * f.embed(joint, shift) for f in first.gens]
    gens += [(1 - tv) * g.embed(joint, shift) for g in second.gens]
    return eliminate(Ideal(joint, gens), [t], target=ring)


def exact_quotient(h, g, order=GREVLEX):
    """h / g for h in the principal ideal (g)."""
    field = h.ring.field
    lm_g = g.leading_monomial(order)
    lc_inv = field.inv(g.terms[lm_g])
    quotient = {}
    rest = h
    while rest.terms:
        lm = rest.leading_monomial(order)
        if not monomial_divides(lm_g, lm):
            raise ValueError(f"{g} does not divide {h}")
        m = monomial_quotient(lm, lm_g)
        c = field.mul(rest.terms[lm], lc_inv)
        quotient[m] = field.add(quotient.get(m, 0), c)
        rest = rest - g.shift(m, c)
    return Polynomial(h.ring, quotient)


def _colon_element(ideal, g):
    if not g.terms:
        return Ideal.unit(ideal.ring)
    meet = intersection(ideal, Ideal(ideal.ring, [g]))
    return Ideal(ideal.ring, [exact_quotient(h, g) for h in meet.gens])


def colon(first, second):
    """
    The ideal quotient (I : J) = {f : fJ ⊆ I}, as the intersection of (I : g)
    over the generators g of J.
    """
    if first.ring != second.ring:
        raise StructuralError(f"cannot form the colon of ideals of {first.ring} and {second.ring}")
    if second.is_zero():
        return Ideal.unit(first.ring)
    result = None
    for g in second.gens:
        piece = _colon_element(first, g)
        result = piece if result is None else intersection(result, piece)
    return result


def _saturate_element(ideal, g):
    """(I : g^∞) via elimination of u from I + (1 − u·g)."""
    ring = ideal.ring
    (u,) = ring.fresh_names(["u"])
    joint = PolyRing(ring.field, (u,) + ring.variables)
    shift = list(range(1, joint.nvars))
    gens = [f.embed(joint, shift) for f in ideal.gens]
    gens.append(1 - joint.var(u) * g.embed(joint, shift))
    return eliminate(Ideal(joint, gens), [u], target=ring)


def saturation(first, second, verify=False):
    """
    I : J^∞ as the intersection of the single-element saturations I : g^∞.

    With verify=True each piece is checked to be stable, (sat : g) = sat.
    """
    if first.ring != second.ring:
        raise StructuralError(f"cannot saturate ideals of {first.ring} and {second.ring}")
    if second.is_zero():
        return Ideal.unit(first.ring)
    if second.is_unit():
        return first
    result = None
    for g in second.gens:
        piece = _saturate_element(first, g)
        if verify and colon(piece, Ideal(first.ring, [g])) != piece:
            raise ArithmeticError(f"saturation by {g} did not stabilise")
        result = piece if result is None else intersection(result, piece)
    return result


def kernel_of_map(source, target, images):
    """
    Defining ideal of the kernel of K[source] → target, sending the i-th
    source variable to images[i].

    Args:
        source (PolyRing | list[str]): The source polynomial ring or its variable names.
        target (QuotientRing): The target presentation.
        images (list[Polynomial]): One element of target.ring per source variable.

    Returns:
        Ideal: in the source polynomial ring.

    Raises:
        NotLocalError: an image has a nonzero constant term.
    """
    if not isinstance(source, PolyRing):
        source = PolyRing(target.ring.field, tuple(source))
    if len(images) != source.nvars:
        raise StructuralError(f"need {source.nvars} images, got {len(images)}")
    for name, img in zip(source.variables, images):
        if img.ring != target.ring:
            raise StructuralError(f"image of {name} lives in {img.ring}, expected {target.ring}")
        if img.constant_term():
            raise NotLocalError(f"image of {name} has constant term: {img}")
    fresh = target.ring.fresh_names(source.variables)
    joint = target.ring.extend(fresh)
    n = target.ring.nvars
    into_target = list(range(n))
    gens = [g.embed(joint, into_target) for g in target.defining.gens]
    for i, img in enumerate(images):
        gens.append(joint.var(fresh[i]) - img.embed(joint, into_target))
    gb = groebner_basis(gens, block_order(n), ring=joint)
    kernel = []
    for g in gb.generators:
        if any(m[i] for m in g.terms for i in range(n)):
            continue
        kernel.append(Polynomial(source, {m[n:]: c for m, c in g.terms.items()}))
    return Ideal(source, kernel)
