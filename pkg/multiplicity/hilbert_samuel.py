"""
Hilbert-Samuel multiplicities read off stabilized finite differences of the
length function t -> l(Q/I^t), plus the first Euler characteristic chi_1.
"""

from dataclasses import dataclass, field
from math import comb

from algebra.errors import AlgebraError, ResourceCapError
from ideals.ideal import Ideal
from ideals.quotient import length, local_length, sum_ideal
from utils import activity, env_int

# Largest power t tried before giving up on stabilization.
T_CAP = env_int("T_CAP", 24)
# Number of consecutive equal d-th differences that count as stable.
STABLE_WINDOW = 3


class NotPrimaryError(AlgebraError, ValueError):
    """The ideal is not primary to the maximal ideal at the origin."""


class NotSystemOfParametersError(AlgebraError, ValueError):
    """The elements do not form a system of parameters."""


@dataclass(frozen=True)
class MultiplicityReport:
    """
    e together with the raw lengths it came from.

    length_table maps t to l(Q/I^t) (t = 0 gives 0); differences maps t to the
    dim_used-th backward difference at t.
    """
    e: int
    length_table: dict
    stabilization_t: int
    dim_used: int
    differences: dict = field(default_factory=dict)

    def next_difference_vanishes(self):
        """The (d+1)-th difference is zero across the stable window."""
        window = range(self.stabilization_t - STABLE_WINDOW + 2, self.stabilization_t + 1)
        return all(self.differences[t] - self.differences[t - 1] == 0 for t in window)


def finite_difference(table, t, d):
    """Backward d-th difference of the length function at t, with l(s) = 0 for s <= 0."""
    return sum((-1) ** i * comb(d, i) * table.get(t - i, 0) for i in range(d + 1))


def require_primary(quotient, ideal):
    if any(g.constant_term() for g in ideal.gens):
        raise NotPrimaryError(f"{ideal} is not contained in the maximal ideal")
    if not local_length(quotient, ideal).is_finite:
        raise NotPrimaryError(f"{ideal} is not primary to the maximal ideal of {quotient}")


def hilbert_samuel(quotient, ideal, dim=None, t_cap=None):
    """
    e(I, Q) as the stable d-th difference of t -> l(Q/I^t).

    Args:
        quotient (QuotientRing): The local ring.
        ideal (Ideal): An ideal primary to the maximal ideal.
        dim (int): Difference order d; defaults to dim Q. A d larger than the
            dimension of the quotient yields e = 0.
        t_cap (int): Override for T_CAP.

    Returns:
        MultiplicityReport

    Raises:
        NotPrimaryError: I is not m-primary at the origin.
        ResourceCapError: no stable window before the cap; `partial` holds the table.
    """
    require_primary(quotient, ideal)
    d = quotient.dim if dim is None else dim
    cap = T_CAP if t_cap is None else t_cap
    table = {0: 0}
    differences = {}
    generators = ideal.gens
    for t in range(1, cap + 1):
        if t > 1:
            # (J + I^(t-1)) * I + J = J + I^t, with the reduced basis keeping the product small
            basis = sum_ideal(quotient, generators).groebner().generators
            generators = Ideal(quotient.ring, [g * h for g in basis for h in ideal.gens]).gens
        table[t] = length(quotient, Ideal(quotient.ring, generators))
        if t >= d:
            differences[t] = finite_difference(table, t, d)
        window = [differences.get(s) for s in range(t - STABLE_WINDOW + 1, t + 1)]
        if None not in window and len(set(window)) == 1:
            activity(f"[HS] e({ideal}, {quotient}) = {window[-1]} at t = {t}")
            return MultiplicityReport(window[-1], table, t, d, differences)
    raise ResourceCapError(
        f"Hilbert-Samuel differences of {ideal} did not stabilise by T_CAP={cap}",
        cap="T_CAP",
        partial=table,
    )


def multiplicity(quotient):
    """e(Q) = e(m, Q)."""
    return hilbert_samuel(quotient, quotient.maximal_ideal())


def multiplicity_of_sop(quotient, elements, dim=None):
    """
    e((x), Q) for a system of parameters x.

    Raises:
        NotSystemOfParametersError: wrong count, or (x) not of finite colength.
    """
    d = quotient.dim if dim is None else dim
    elements = list(elements)
    if len(elements) != d:
        raise NotSystemOfParametersError(f"need {d} parameters for {quotient}, got {len(elements)}")
    ideal = Ideal(quotient.ring, elements)
    if any(g.constant_term() for g in ideal.gens) or not local_length(quotient, ideal).is_finite:
        raise NotSystemOfParametersError(f"{ideal} is not a system of parameters of {quotient}")
    return hilbert_samuel(quotient, ideal, dim=d)


@dataclass(frozen=True)
class Chi1Report:
    h0: int
    e: int
    chi1: int

    @property
    def cohen_macaulay(self):
        """chi_1 = 0 exactly when the parameters form a regular sequence."""
        return self.chi1 == 0


def chi1(quotient, elements, dim=None):
    """chi_1(x, Q) = l(Q/(x)) − e((x), Q)."""
    report = multiplicity_of_sop(quotient, elements, dim=dim)
    h0 = report.length_table[1]
    return Chi1Report(h0, report.e, h0 - report.e)
