"""
Executable checks over presented local rings and maps.

Every check returns a CheckReport carrying the computed lhs and rhs together
with the raw tables they came from. Comparisons are exact on integers and
Fractions; limit statements are checked at finite Frobenius levels against
a recorded tolerance.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import wraps
from math import factorial

from algebra.errors import AlgebraError, InfiniteLengthError, ResourceCapError
from extensions.cohen import cohen_factor
from extensions.local_map import extend_map, freeness_probe, is_ci_fiber
from extensions.scalar import scalar_extend
from extensions.specialize import BadPrime, specialize_mod_p
from ideals.calculus import frobenius_power, ideal_power
from ideals.ideal import Ideal
from ideals.quotient import QuotientRing, length, min_gens
from multiplicity.hilbert_kunz import default_e_max, frobenius_twisted_multiplicity, hk_sequence
from multiplicity.hilbert_samuel import chi1 as chi1_of, hilbert_samuel, multiplicity, multiplicity_of_sop
from multiplicity.reduction import find_minimal_reduction
from utils import activity
from verify.reports import CheckReport

# Absolute tolerance on normalized Hilbert-Kunz estimates
TOLERANCE = Fraction(1, 20)

DOMAIN_ASSUMPTION = "R domain: holds by construction of the fixture"
CM_ASSUMPTION = "T Cohen-Macaulay at minimal primes: holds by construction of the fixture"


class CheckPreconditionError(AlgebraError, ValueError):
    """The inputs do not meet what the check needs (e.g. a map with no flatness evidence)."""


def harness_check(kind):
    """
    Turns cap hits into inconclusive reports and infinite lengths into failures.

    Other exceptions propagate to the runner, which records them as errors.
    """
    def decorate(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except ResourceCapError as exc:
                activity(f"[CHECK] {kind}: cap {exc.cap} hit")
                return CheckReport(kind, "inconclusive", note=str(exc), cap_hit=exc.cap or "unknown",
                                   tables={"partial": exc.partial})
            except InfiniteLengthError as exc:
                return CheckReport(kind, "fail", note=f"an input length is infinite: {exc}")
        wrapper.kind = kind
        return wrapper
    return decorate


def _verdict(ok):
    return "pass" if ok else "fail"


def _require_flat(local_map):
    if local_map.flat_tag == "unknown":
        raise CheckPreconditionError(f"{local_map} carries no flatness evidence")


def lech_bound(d):
    """max(1, d!/2^d), the constant of the proven inequality."""
    return max(Fraction(1), Fraction(factorial(d), 2 ** d))


def lech_ratio(e_source, e_target):
    return Fraction(e_source, e_target)


def hk_ratio(hk_source, hk_target):
    if hk_source.last is None or hk_target.last is None:
        return None
    return hk_source.last / hk_target.last


def _field_aligned_sop(quotient, elements, seed):
    """
    The given parameters, or a minimal reduction of m; the ring comes back
    extended when the reduction needed a larger field.
    """
    if elements is not None:
        return quotient, list(elements)
    reduction = find_minimal_reduction(quotient, seed=seed)
    if reduction.field_degree != quotient.field.k:
        quotient = scalar_extend(quotient, reduction.field_degree)
    return quotient, list(reduction.forms)


@harness_check("lech")
def check_lech(local_map):
    """e(R) <= e(S) and e(R) <= max(1, d!/2^d) e(S) for a flat map."""
    _require_flat(local_map)
    hs_source = multiplicity(local_map.source)
    hs_target = multiplicity(local_map.target)
    e_source, e_target = hs_source.e, hs_target.e
    d = local_map.dim
    bound = lech_bound(d)
    ok = e_source <= e_target and e_source <= bound * e_target
    return CheckReport(
        "lech", _verdict(ok), e_source, e_target,
        tables={
            "d": d,
            "bound": bound,
            "ratio": lech_ratio(e_source, e_target),
            "source_lengths": hs_source.length_table,
            "target_lengths": hs_target.length_table,
        },
        assumptions=(f"flat: {local_map.flat_tag}",),
    )


@harness_check("edim")
def check_edim(local_map):
    """edim R − dim R <= edim S − dim S."""
    source, target = local_map.source, local_map.target
    lhs = source.edim - source.dim
    rhs = target.edim - target.dim
    return CheckReport(
        "edim", _verdict(lhs <= rhs), lhs, rhs,
        tables={"edim_R": source.edim, "dim_R": source.dim, "edim_S": target.edim, "dim_S": target.dim},
    )


@harness_check("hk_chain")
def check_hk_chain(local_map, e_max=None):
    """
    At the last Frobenius level: est_HK(R) <= est_HK(S), e(R) <= d! est_HK(R)
    and d! est_HK(S) <= d! e(S), all within 0.05 d!.
    """
    _require_flat(local_map)
    source, target = local_map.source, local_map.target
    hk_source = hk_sequence(source, source.maximal_ideal(), e_max)
    hk_target = hk_sequence(target, target.maximal_ideal(), e_max)
    tables = {"source_estimates": hk_source.estimates, "target_estimates": hk_target.estimates}
    for hk in (hk_source, hk_target):
        if hk.capped or hk.last is None:
            return CheckReport("hk_chain", "inconclusive", note=hk.cap_note, cap_hit="E_CAP", tables=tables)
    d = local_map.dim
    tol = TOLERANCE * factorial(d)
    e_source = multiplicity(source).e
    e_target = multiplicity(target).e
    est_source, est_target = hk_source.last, hk_target.last
    ok = (est_source <= est_target + tol
          and e_source <= factorial(d) * est_source + tol
          and factorial(d) * est_target <= factorial(d) * e_target + tol)
    tables.update({"e_R": e_source, "e_S": e_target, "d": d, "ratio": hk_ratio(hk_source, hk_target)})
    return CheckReport("hk_chain", _verdict(ok), est_source, est_target, tolerance=tol, tables=tables)


@harness_check("hk_sandwich")
def check_hk_sandwich(quotient, ideal=None, e_max=None):
    """
    e(I)/d! <= est_HK(I) <= e(I) within 0.05.

    For an ideal generated by dim Q parameters on which Q is Cohen-Macaulay
    the estimates must equal e(I) at every level with no tolerance.
    """
    ideal = quotient.maximal_ideal() if ideal is None else ideal
    d = quotient.dim
    e = hilbert_samuel(quotient, ideal).e
    hk = hk_sequence(quotient, ideal, e_max)
    tables = {"estimates": hk.estimates, "lengths": hk.lengths, "e": e, "d": d}
    if hk.capped or hk.last is None:
        return CheckReport("hk_sandwich", "inconclusive", note=hk.cap_note, cap_hit="E_CAP", tables=tables)
    parameter = len(ideal.gens) == d
    if parameter and d > 0 and chi1_of(quotient, ideal.gens).cohen_macaulay:
        ok = hk.is_constant and hk.last == e
        return CheckReport("hk_sandwich", _verdict(ok), hk.last, e, tables=tables,
                           note="parameter ideal: exact at every level")
    lower = Fraction(e, factorial(d))
    ok = lower <= hk.last + TOLERANCE and hk.last <= e + TOLERANCE
    tables["lower"] = lower
    return CheckReport("hk_sandwich", _verdict(ok), hk.last, e, tolerance=TOLERANCE, tables=tables)


def adjoin_variable(quotient, name="z"):
    """Q[z] for a fresh variable z."""
    fresh = quotient.ring.fresh_names([name])
    ring = quotient.ring.extend(fresh)
    return QuotientRing(ring, Ideal(ring, [g.rename_into(ring) for g in quotient.defining.gens]))


def _frobenius_lengths(quotient, q):
    """l(Q/(m^2)^[q]) and l(Q/m^[q])."""
    m = quotient.maximal_ideal()
    return (length(quotient, frobenius_power(ideal_power(m, 2), q)),
            length(quotient, frobenius_power(m, q)))


@harness_check("adjoined_variable")
def check_adjoined_variable_identity(quotient, n_extra=1, e_max=None):
    """
    For T = R[z]: l(T/((m,z)^2)^[q]) = q l(R/(m^2)^[q]) + q l(R/m^[q]) exactly,
    for every level and every adjunction step. Also checks, per level, that the
    Hilbert-Kunz estimate of m is unchanged by adjunction and that the estimate
    of the squared maximal ideal grows by (number of steps) times est_HK(R).
    """
    if n_extra < 0:
        raise ValueError(f"n_extra must be >= 0, got {n_extra}")
    if n_extra == 0:
        return CheckReport("adjoined_variable", "pass", 0, 0, note="no adjoined variable")
    p = quotient.field.p
    e_max = default_e_max(p) if e_max is None else e_max
    d = quotient.dim
    rings = [quotient]
    for _ in range(n_extra):
        rings.append(adjoin_variable(rings[-1]))

    rows, ok = {}, True
    lhs = rhs = None
    for e in range(1, e_max + 1):
        q = p ** e
        table = [_frobenius_lengths(ring, q) for ring in rings]
        base_square, base_max = table[0]
        for step in range(1, n_extra + 1):
            square, maximal = table[step]
            prev_square, prev_max = table[step - 1]
            lhs, rhs = square, q * prev_square + q * prev_max
            same_estimate = maximal == q * prev_max
            rows[f"e={e},step={step}"] = {"lhs": lhs, "rhs": rhs, "l_max": maximal, "q_l_prev_max": q * prev_max}
            ok = ok and lhs == rhs and same_estimate
        top_square = table[-1][0]
        grown = (Fraction(top_square, q ** (d + n_extra))
                 == Fraction(base_square, q ** d) + n_extra * Fraction(base_max, q ** d))
        rows[f"e={e},square_estimate"] = {"T": Fraction(top_square, q ** (d + n_extra)),
                                          "R": Fraction(base_square, q ** d),
                                          "est_HK_R": Fraction(base_max, q ** d)}
        ok = ok and grown
    return CheckReport("adjoined_variable", _verdict(ok), lhs, rhs, tables=rows)


@harness_check("sop_estimate")
def check_sop_estimate(quotient, elements=None, ideal=None, seed=0):
    """
    e(x, N) >= nu(nN) + (1 − d) nu(N) − chi_1(x, N) for N = S/a cyclic,
    with d = dim S and x a system of d parameters.
    """
    ideal = Ideal.zero(quotient.ring) if ideal is None else ideal
    quotient, elements = _field_aligned_sop(quotient, elements, seed)
    ideal = Ideal(quotient.ring, [g.rename_into(quotient.ring) for g in ideal.gens])
    d = quotient.dim
    if len(elements) != d:
        raise CheckPreconditionError(f"need {d} parameters, got {len(elements)}")
    module = QuotientRing(quotient.ring, quotient.defining + ideal)
    x = Ideal(quotient.ring, elements)
    e = hilbert_samuel(module, x, dim=d).e
    h0 = length(module, x)
    chi = h0 - e
    nu_n = min_gens(module, module.maximal_ideal())
    nu = 1
    rhs = nu_n + (1 - d) * nu - chi
    return CheckReport(
        "sop_estimate", _verdict(e >= rhs), e, rhs,
        tables={"d": d, "nu_nN": nu_n, "nu_N": nu, "chi1": chi, "l_N_xN": h0},
        assumptions=("N cyclic",),
    )


@harness_check("generator_growth")
def check_generator_growth(local_map, ideal=None):
    """
    nu_S(nM') >= nu_R(mM) + (edim S − edim R) nu_R(M) for M = R/a and
    M' = S/aS.
    """
    source, target = local_map.source, local_map.target
    ideal = Ideal.zero(source.ring) if ideal is None else ideal
    extended = Ideal(target.ring, [local_map.apply(g) for g in ideal.gens])
    n, m = target.maximal_ideal(), source.maximal_ideal()
    nu_target = length(target, ideal_power(n, 2) + extended) - length(target, n + extended)
    nu_source = length(source, ideal_power(m, 2) + ideal) - length(source, m + ideal)
    nu_module = 1
    c = local_map.edim_gap
    rhs = nu_source + c * nu_module
    return CheckReport(
        "generator_growth", _verdict(nu_target >= rhs), nu_target, rhs,
        tables={"nu_S_nM'": nu_target, "nu_R_mM": nu_source, "nu_R_M": nu_module, "c": c},
    )


@dataclass
class InterchangeTable:
    """
    Finite-level data for a factorization R -> T -> S = T/J and parameters x of S.

    rows[e] = (B_e, C1_e, C2_e): the twisted multiplicity, the estimate of
    e_HK(J + (x), T) and the estimate of e_HK(J, T/(x)T). chi[e] is the
    normalized chi_1 gap C1_e − B_e.
    `regular` says whether x is a regular sequence on S; the fiber estimate
    C2_e only tends to A when it is.
    """
    a: int
    dim_T: int
    exact: bool
    regular: bool = True
    rows: dict = field(default_factory=dict)
    chi: dict = field(default_factory=dict)
    cap_note: str = ""
    factorization: object = None


def interchange_table(fact, elements=None, e_max=None, seed=0):
    """
    Computes A = e(x, S) and the three finite-level sequences for e <= e_max.

    Without `elements` the parameters are a minimal reduction of S; when that
    needs a larger field the map is extended and factored again.
    """
    target = fact.local_map.target
    if elements is None:
        reduction = find_minimal_reduction(target, seed=seed)
        if reduction.field_degree != target.field.k:
            fact = cohen_factor(extend_map(fact.local_map, reduction.field_degree), seed=seed)
        elements = list(reduction.forms)
    T, J = fact.T, fact.J
    p = T.field.p
    e_max = default_e_max(p) if e_max is None else e_max
    a = multiplicity_of_sop(fact.local_map.target, elements).e
    lifted = [fact.lift(x) for x in elements]
    parameters = Ideal(T.ring, list(J.gens) + lifted)
    over_x = QuotientRing(T.ring, T.defining + Ideal(T.ring, lifted))
    exact = T.is_regular and min_gens(T, parameters) == T.dim
    regular = chi1_of(fact.local_map.target, elements).cohen_macaulay
    table = InterchangeTable(a, T.dim, exact, regular, factorization=fact)
    for e in range(1, e_max + 1):
        q = p ** e
        try:
            b = frobenius_twisted_multiplicity(T, J, lifted, e)
            c1 = Fraction(length(T, frobenius_power(parameters, q)), q ** T.dim)
            c2 = Fraction(length(over_x, frobenius_power(J, q)), q ** over_x.dim)
        except ResourceCapError as exc:
            table.cap_note = f"stopped at e = {e}: {exc}"
            break
        table.rows[e] = (b, c1, c2)
        table.chi[e] = c1 - b
    activity(f"[INTERCHANGE] A = {a}, rows = {table.rows}")
    return table


def _non_increasing(values):
    return all(later <= earlier for earlier, later in zip(values, values[1:]))


def _interchange_tables(table):
    return {
        "A": table.a,
        "dim_T": table.dim_T,
        "B": {e: row[0] for e, row in table.rows.items()},
        "C_sum": {e: row[1] for e, row in table.rows.items()},
        "C_fiber": {e: row[2] for e, row in table.rows.items()},
        "chi1_normalized": table.chi,
        "regular_sequence": table.regular,
    }


@harness_check("interchange")
def check_interchange(fact, elements=None, e_max=None, seed=0):
    """
    B_e and both C_e sequences approach A = e(x, S): their gaps to A never
    grow and end within 0.05. With T regular and J + (x) generated by dim T
    elements every gap is zero.
    """
    table = interchange_table(fact, elements, e_max, seed)
    tables = _interchange_tables(table)
    if table.cap_note or not table.rows:
        return CheckReport("interchange", "inconclusive", note=table.cap_note, cap_hit="E_CAP", tables=tables)
    last = table.rows[max(table.rows)]
    if table.exact:
        ok = all(value == table.a for row in table.rows.values() for value in row)
        return CheckReport("interchange", _verdict(ok), last[0], table.a, tables=tables,
                           note="regular T, parameter ideal: exact", assumptions=fact.assumptions)
    ok = True
    columns = range(3) if table.regular else range(2)
    for column in columns:
        gaps = [abs(row[column] - table.a) for _, row in sorted(table.rows.items())]
        ok = ok and _non_increasing(gaps) and gaps[-1] <= TOLERANCE
    note = "" if table.regular else "x is not a regular sequence on S: C_fiber recorded only"
    assumed = (DOMAIN_ASSUMPTION, CM_ASSUMPTION) if table.regular else (CM_ASSUMPTION,)
    return CheckReport("interchange", _verdict(ok), last[0], table.a, tolerance=TOLERANCE, tables=tables,
                       note=note, assumptions=fact.assumptions + assumed)


@harness_check("chi1_vanishing")
def check_chi1_vanishing(fact, elements=None, e_max=None, seed=0):
    """l(T/(J+(x))^[q]) / q^dim T − B_e is non-negative and non-increasing; zero in the exact case."""
    table = interchange_table(fact, elements, e_max, seed)
    tables = _interchange_tables(table)
    if table.cap_note or not table.chi:
        return CheckReport("chi1_vanishing", "inconclusive", note=table.cap_note, cap_hit="E_CAP", tables=tables)
    values = [v for _, v in sorted(table.chi.items())]
    if table.exact:
        ok = all(v == 0 for v in values)
    else:
        ok = all(v >= 0 for v in values) and _non_increasing(values)
    return CheckReport("chi1_vanishing", _verdict(ok), values[-1], 0, tables=tables,
                       assumptions=fact.assumptions)


@harness_check("embdim_bounds")
def check_embdim_bounds(local_map, fact=None):
    """
    e(R) <= (c!/2^c) e(S), and e(R) <= (d!/(2^d + c − d)) e(S) when c >= d,
    with c = edim S − edim R.
    """
    _require_flat(local_map)
    c = fact.c if fact is not None else local_map.edim_gap
    d = local_map.dim
    e_source = multiplicity(local_map.source).e
    e_target = multiplicity(local_map.target).e
    first = Fraction(factorial(c), 2 ** c)
    ok = e_source <= first * e_target
    tables = {"c": c, "d": d, "e_R": e_source, "e_S": e_target, "c_bound": first,
              "combined_bound": lech_bound(d)}
    rhs = first * e_target
    if c >= d:
        second = Fraction(factorial(d), 2 ** d + c - d)
        tables["large_c_bound"] = second
        ok = ok and e_source <= second * e_target
        rhs = min(rhs, second * e_target)
    return CheckReport("embdim_bounds", _verdict(ok), e_source, rhs, tables=tables,
                       assumptions=(DOMAIN_ASSUMPTION,))


@harness_check("ci_fiber")
def check_ci_fiber(local_map):
    """c <= 1 forces a complete-intersection closed fiber."""
    c = local_map.edim_gap
    fiber = local_map.fiber
    tables = {"c": c, "nu": fiber.nu, "nvars": fiber.nvars, "fiber_length": fiber.length}
    if c > 1:
        return CheckReport("ci_fiber", "pass", fiber.nu, fiber.nvars, tables=tables,
                           note="c >= 2: recorded only")
    return CheckReport("ci_fiber", _verdict(is_ci_fiber(local_map)), fiber.nu, fiber.nvars, tables=tables)


@harness_check("cohen_structure")
def check_cohen_structure(fact):
    """J in n_T^2, c >= 0, edim T = edim R + c and a complete-intersection fiber of R -> T."""
    source = fact.local_map.source
    in_square = fact.j_in_square()
    edim_T = fact.T.edim
    ci = fact.fiber_codim == len(fact.peeled)
    ok = in_square and fact.c >= 0 and edim_T == source.edim + fact.c and ci
    return CheckReport(
        "cohen_structure", _verdict(ok), edim_T, source.edim + fact.c,
        tables={
            "J_in_square": in_square,
            "c": fact.c,
            "peeled": [str(y) for y in fact.peeled],
            "J": [str(g) for g in fact.J.gens],
            "fiber_codim": fact.fiber_codim,
        },
        assumptions=fact.assumptions,
    )


@harness_check("flatness")
def check_flatness(local_map, t_max=None, seed=0):
    """
    The freeness probe agrees with the map's flatness evidence: tagged maps
    must pass it, maps left "unknown" must be rejected by it.
    """
    report = freeness_probe(local_map, t_max=t_max, seed=seed)
    expected = local_map.flat_tag != "unknown"
    rows = {t: {"lhs": lhs, "rhs": rhs} for t, (lhs, rhs) in report.rows.items()}
    return CheckReport(
        "flatness", _verdict(report.flat == expected), report.flat, expected,
        tables={"rank": report.rank, "sop": report.sop, "rows": rows, "failed_at": report.failed_at},
        note=report.note or f"flat tag {local_map.flat_tag}",
    )


def _invariants(quotient, e_max):
    hk = hk_sequence(quotient, quotient.maximal_ideal(), e_max)
    return {"dim": quotient.dim, "edim": quotient.edim, "e": multiplicity(quotient).e, "hk": hk.estimates}


@harness_check("scalar_extension")
def check_scalar_extension(quotient, k=2, e_max=None):
    """dim, edim, e(m) and the HK estimates do not change over F_{p^k}."""
    base = _invariants(quotient, e_max)
    extended = _invariants(scalar_extend(quotient, k), e_max)
    return CheckReport("scalar_extension", _verdict(base == extended), base["e"], extended["e"],
                       tables={"base": base, "extended": extended, "k": k})


@harness_check("mod_p")
def check_mod_p(presentation, primes, flat_tag="unknown", pattern=""):
    """
    Specializes an integer presentation at each prime. Good primes must
    satisfy Lech's inequality; BadPrime outcomes are recorded, and at least
    one good prime is required.
    """
    if flat_tag == "unknown":
        raise CheckPreconditionError("mod-p specialization needs a map with flatness evidence")
    per_prime, good, ok = {}, [], True
    for p in primes:
        reduced = specialize_mod_p(presentation, p)
        if isinstance(reduced, BadPrime):
            per_prime[p] = {"bad": reduced.check, "detail": reduced.detail}
            continue
        reduced = reduced.with_flat_tag(flat_tag, pattern)
        e_source = multiplicity(reduced.source).e
        e_target = multiplicity(reduced.target).e
        holds = e_source <= e_target and e_source <= lech_bound(reduced.dim) * e_target
        per_prime[p] = {"e_R": e_source, "e_S": e_target, "lech": holds}
        good.append((e_source, e_target))
        ok = ok and holds
    stable = len(set(good)) <= 1
    if not good:
        return CheckReport("mod_p", "fail", 0, 1, tables={"primes": per_prime},
                           note="no good prime among the requested ones")
    return CheckReport("mod_p", _verdict(ok), len(good), len(primes),
                       tables={"primes": per_prime, "stable": stable})


@harness_check("chi1")
def check_chi1(quotient, elements=None, seed=0):
    """chi_1(x, Q) >= 0; zero exactly on Cohen-Macaulay parameter systems."""
    quotient, elements = _field_aligned_sop(quotient, elements, seed)
    report = chi1_of(quotient, elements)
    return CheckReport("chi1", _verdict(report.chi1 >= 0), report.chi1, 0,
                       tables={"l_Q_x": report.h0, "e": report.e, "cohen_macaulay": report.cohen_macaulay})
