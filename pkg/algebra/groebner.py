"""
Buchberger engine: reduced Gröbner bases, normal forms, standard monomials
and Krull dimension of quotients.

Pairs are chosen by the normal strategy (smallest lcm degree, ties broken by
the pair's index) and pruned with the Gebauer-Möller installation, so the
output is a deterministic function of the input order.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from collections import deque

from algebra.errors import ResourceCapError, StructuralError
from algebra.polynomial import (
    GREVLEX,
    Polynomial,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_quotient,
    monomials_coprime,
)
from utils import activity, env_int

# Largest total degree a basis element may reach before the engine gives up.
DEGREE_CAP = env_int("DEGREE_CAP", 64)


class _Infinite:
    """Marker for an infinite colength; a singleton that survives pickling."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    def __reduce__(self):
        return (_Infinite, ())

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self


INFINITE = _Infinite()


def is_infinite(value):
    return value is INFINITE


class _Entry:
    """A monic basis element with its leading monomial precomputed."""
    __slots__ = ("lm", "terms")

    def __init__(self, lm, terms):
        self.lm = lm
        self.terms = terms


def _reduce(terms, basis, key, field, tail=True):
    """
    Divide `terms` by monic `basis` entries.

    With tail=False only the leading term is reduced (top reduction).
    """
    f = dict(terms)
    remainder = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for g in basis:
            if monomial_divides(g.lm, m):
                shift = monomial_quotient(m, g.lm)
                for gm, gc in g.terms.items():
                    mm = monomial_mul(gm, shift)
                    v = field.sub(f.get(mm, 0), field.mul(c, gc))
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            remainder[m] = c
            del f[m]
            if not tail:
                remainder.update(f)
                break
    return remainder


def _make_entry(terms, key, field):
    lm = max(terms, key=key)
    inv = field.inv(terms[lm])
    if inv != 1:
        terms = {m: field.mul(inv, c) for m, c in terms.items()}
    return _Entry(lm, terms)


def _s_terms(a, b, field):
    lcm = monomial_lcm(a.lm, b.lm)
    sa = monomial_quotient(lcm, a.lm)
    sb = monomial_quotient(lcm, b.lm)
    out = {}
    for m, c in a.terms.items():
        out[monomial_mul(m, sa)] = c
    for m, c in b.terms.items():
        mm = monomial_mul(m, sb)
        v = field.sub(out.get(mm, 0), c)
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """A Gröbner basis of an ideal of `ring` with respect to `order`."""
    ring: object
    order: object
    generators: tuple
    reduced: bool = True

    @cached_property
    def leading_monomials(self):
        return tuple(g.leading_monomial(self.order) for g in self.generators)

    @property
    def is_unit(self):
        return any(g.is_constant() for g in self.generators)

    @property
    def is_zero(self):
        return not self.generators

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def normal_form(self, f):
        return normal_form(f, self)

    def contains(self, f):
        return normal_form(f, self).is_zero()

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.generators) + "}"


def _check_ring(polys, ring):
    for f in polys:
        if f.ring != ring:
            raise StructuralError(f"generator {f} lives in {f.ring}, expected {ring}")


def groebner_basis(gens, order=GREVLEX, ring=None, degree_cap=None):
    """
    Reduced Gröbner basis of the ideal generated by `gens`.

    Args:
        gens (list[Polynomial]): Generators; all must share one ring.
        order (MonomialOrder): The monomial order.
        ring (PolyRing): Needed only when `gens` is empty.
        degree_cap (int): Override for DEGREE_CAP.

    Returns:
        GroebnerBasis: reduced, monic, sorted by increasing leading monomial.

    Raises:
        StructuralError: generators from different rings.
        ResourceCapError: a basis element would exceed the degree cap.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise StructuralError("an empty generator list needs an explicit ring")
        ring = gens[0].ring
    _check_ring(gens, ring)
    cap = DEGREE_CAP if degree_cap is None else degree_cap
    field = ring.field
    key = order.key

    nonzero = [g for g in gens if g.terms]
    if any(g.is_constant() for g in nonzero):
        return GroebnerBasis(ring, order, (ring.one(),))
    for g in nonzero:
        if g.degree() > cap:
            raise ResourceCapError(f"generator of degree {g.degree()} exceeds DEGREE_CAP={cap}", cap="DEGREE_CAP")

    polys = []
    active = []
    pairs = {}

    def update(h):
        nonlocal active, pairs
        lm_h = polys[h].lm
        candidates = list(active)
        kept = []
        while candidates:
            g1 = candidates.pop(0)
            lcm1 = monomial_lcm(polys[g1].lm, lm_h)
            if monomials_coprime(polys[g1].lm, lm_h):
                kept.append(g1)
                continue
            others = candidates + kept
            if not any(monomial_divides(monomial_lcm(polys[g2].lm, lm_h), lcm1) for g2 in others):
                kept.append(g1)
        # S-polynomials of two monomials vanish identically
        h_is_monomial = len(polys[h].terms) == 1
        fresh = {(g, h): monomial_lcm(polys[g].lm, lm_h)
                 for g in kept
                 if not monomials_coprime(polys[g].lm, lm_h)
                 and not (h_is_monomial and len(polys[g].terms) == 1)}
        survivors = {}
        for (g1, g2), lcm in pairs.items():
            if (not monomial_divides(lm_h, lcm)
                    or monomial_lcm(polys[g1].lm, lm_h) == lcm
                    or monomial_lcm(lm_h, polys[g2].lm) == lcm):
                survivors[(g1, g2)] = lcm
        survivors.update(fresh)
        pairs = survivors
        active = [g for g in active if not monomial_divides(lm_h, polys[g].lm)] + [h]

    def insert(terms):
        if not terms:
            return False
        entry = _make_entry(terms, key, field)
        if sum(entry.lm) == 0:
            return True
        degree = max(sum(m) for m in entry.terms)
        if degree > cap:
            raise ResourceCapError(
                f"basis element of degree {degree} exceeds DEGREE_CAP={cap}", cap="DEGREE_CAP")
        polys.append(entry)
        update(len(polys) - 1)
        return False

    for g in nonzero:
        remainder = _reduce(g.terms, [polys[i] for i in active], key, field)
        if insert(remainder):
            return GroebnerBasis(ring, order, (ring.one(),))

    while pairs:
        (i, j) = min(pairs, key=lambda ij: (sum(pairs[ij]), ij))
        del pairs[(i, j)]
        s = _s_terms(polys[i], polys[j], field)
        remainder = _reduce(s, [polys[k] for k in active], key, field)
        if insert(remainder):
            return GroebnerBasis(ring, order, (ring.one(),))

    basis = [polys[k] for k in active]
    minimal = [g for g in basis
               if not any(h is not g and monomial_divides(h.lm, g.lm) for h in basis)]
    reduced = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        tail = _reduce(g.terms, others, key, field)
        reduced.append(Polynomial(ring, tail))
    reduced.sort(key=lambda f: key(f.leading_monomial(order)))
    activity(f"[GB] {len(nonzero)} generators -> {len(reduced)} basis elements ({order})")
    return GroebnerBasis(ring, order, tuple(reduced))


def normal_form(f, gb):
    """
    The unique remainder of f modulo the Gröbner basis gb.

    No term of the result is divisible by a leading monomial of gb.
    """
    if f.ring != gb.ring:
        raise StructuralError(f"{f} lives in {f.ring}, basis lives in {gb.ring}")
    if not f.terms:
        return f
    field = f.ring.field
    key = gb.order.key
    basis = [_make_entry(dict(g.terms), key, field) for g in gb.generators]
    return Polynomial(f.ring, _reduce(f.terms, basis, key, field))


def s_polynomial(f, g, order=GREVLEX):
    field = f.ring.field
    a = _make_entry(dict(f.terms), order.key, field)
    b = _make_entry(dict(g.terms), order.key, field)
    return Polynomial(f.ring, _s_terms(a, b, field))


def satisfies_buchberger_criterion(gb):
    """Post-hoc check: every S-polynomial of basis pairs reduces to zero."""
    for f, g in combinations(gb.generators, 2):
        if not normal_form(s_polynomial(f, g, gb.order), gb).is_zero():
            return False
    return True


def is_zero_dimensional(gb):
    """Finitely many standard monomials iff every variable has a pure power among the leading monomials."""
    if gb.is_unit:
        return True
    n = gb.ring.nvars
    found = [False] * n
    for m in gb.leading_monomials:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            found[support[0]] = True
    return all(found)


def standard_monomials(gb, limit=None):
    """
    All monomials outside the leading-term ideal, smallest first.

    Returns:
        list[tuple] | INFINITE: the staircase, or INFINITE when it is unbounded.
    """
    if gb.is_unit:
        return []
    if not is_zero_dimensional(gb):
        return INFINITE
    lms = gb.leading_monomials
    n = gb.ring.nvars
    start = (0,) * n
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for i in range(n):
            nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
            if nxt in seen or any(monomial_divides(lm, nxt) for lm in lms):
                continue
            seen.add(nxt)
            queue.append(nxt)
            if limit is not None and len(seen) > limit:
                raise ResourceCapError(f"more than {limit} standard monomials", cap="limit")
    return sorted(seen, key=gb.order.key)


def _minimalize(monomials):
    ms = sorted(set(monomials), key=sum)
    out = []
    for m in ms:
        if not any(monomial_divides(g, m) for g in out):
            out.append(m)
    return frozenset(out)


def _count_outside(gens, nvars, memo):
    if nvars == 0:
        return 0 if gens else 1
    key = (gens, nvars)
    if key in memo:
        return memo[key]
    bound = min(g[-1] for g in gens if not any(g[:-1]))
    total = 0
    previous, previous_count = None, 0
    for a in range(bound):
        piece = _minimalize(g[:-1] for g in gens if g[-1] <= a)
        if piece != previous:
            previous = piece
            previous_count = _count_outside(piece, nvars - 1, memo)
        total += previous_count
    memo[key] = total
    return total


def count_standard_monomials(gb):
    """
    dim_K K[x]/I from the leading monomials of a Gröbner basis of I.

    Counts the staircase slice by slice along the last variable instead of
    enumerating it, so large Artinian quotients stay cheap.
    """
    if gb.is_unit:
        return 0
    if not is_zero_dimensional(gb):
        return INFINITE
    return _count_outside(_minimalize(gb.leading_monomials), gb.ring.nvars, {})


def krull_dimension(gb):
    """
    Krull dimension of K[x]/I: the largest set of variables containing the
    support of no leading monomial. The unit ideal gives -1.
    """
    if gb.is_unit:
        return -1
    n = gb.ring.nvars
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0
